//! Built-in example graphs.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{validate_skeleton, EdgeDecl, GraphError, KGraph, KGraphSkeleton, SquareDecl};
use crate::degree::MultiDegree;

/// Parameters for [`builtin_fixture`].
#[derive(Clone, Debug, Default)]
pub struct FixtureParams {
    pub k: Option<usize>,
    pub cap: Option<MultiDegree>,
    pub edges: Option<Vec<u32>>,
    pub seed: Option<u64>,
}

/// Single vertex with one loop of each of two colors: the commuting square.
pub fn f1() -> KGraph {
    single_vertex_named(&[vec!["e".into()], vec!["f".into()]])
}

/// Two vertices u, v and edges a: u ← v, b: v ← u in one color.
pub fn f2() -> KGraph {
    let sk = KGraphSkeleton {
        k: 1,
        vertices: vec!["u".into(), "v".into()],
        edges: vec![
            EdgeDecl { id: "a".into(), color: 0, range: "u".into(), source: "v".into() },
            EdgeDecl { id: "b".into(), color: 0, range: "v".into(), source: "u".into() },
        ],
        squares: Vec::new(),
    };
    validate_skeleton(&sk).expect("F2 is valid")
}

/// One vertex with `edges[i]` loops of color i and flip squares `(x, y) ↔ (y, x)`.
pub fn single_vertex(edges: &[u32]) -> KGraph {
    let names: Vec<Vec<String>> = edges
        .iter()
        .enumerate()
        .map(|(c, &n)| (0..n).map(|j| format!("x{}_{}", c + 1, j)).collect())
        .collect();
    single_vertex_named(&names)
}

fn single_vertex_named(names: &[Vec<String>]) -> KGraph {
    let k = names.len();
    let mut sk = KGraphSkeleton { k, vertices: vec!["v".into()], ..Default::default() };
    for (c, list) in names.iter().enumerate() {
        for n in list {
            sk.edges.push(EdgeDecl { id: n.clone(), color: c, range: "v".into(), source: "v".into() });
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for x in &names[i] {
                for y in &names[j] {
                    sk.squares.push(SquareDecl {
                        first: [x.clone(), y.clone()],
                        second: [y.clone(), x.clone()],
                    });
                }
            }
        }
    }
    validate_skeleton(&sk).expect("single-vertex graphs are valid")
}

/// The k-graph Ω_k restricted to vertices m ≤ cap: edges m ← m+e_i.
pub fn omega(k: usize, cap: &MultiDegree) -> KGraph {
    assert_eq!(cap.rank(), k);
    let verts = cap.below();
    let name = |m: &MultiDegree| m.to_string();
    let ename = |m: &MultiDegree, i: usize| format!("{}>{}", m, i + 1);
    let mut sk = KGraphSkeleton { k, vertices: verts.iter().map(name).collect(), ..Default::default() };
    for m in &verts {
        for i in 0..k {
            let t = m.add(&MultiDegree::unit(k, i));
            if t.le(cap) {
                sk.edges.push(EdgeDecl { id: ename(m, i), color: i, range: name(m), source: name(&t) });
            }
        }
    }
    for m in &verts {
        for i in 0..k {
            for j in i + 1..k {
                let mi = m.add(&MultiDegree::unit(k, i));
                let mj = m.add(&MultiDegree::unit(k, j));
                let top = mi.add(&MultiDegree::unit(k, j));
                if top.le(cap) {
                    sk.squares.push(SquareDecl {
                        first: [ename(m, i), ename(&mi, j)],
                        second: [ename(m, j), ename(&mj, i)],
                    });
                }
            }
        }
    }
    validate_skeleton(&sk).expect("truncated Ω_k is valid")
}

/// Looks up a fixture by name: `F1`, `F2`, `omega`, `single_vertex` or `random`.
pub fn builtin_fixture(name: &str, params: &FixtureParams) -> Result<KGraph, GraphError> {
    match name {
        "F1" | "f1" => Ok(f1()),
        "F2" | "f2" => Ok(f2()),
        "omega" => {
            let k = params.k.unwrap_or(2);
            let cap = params.cap.clone().unwrap_or_else(|| MultiDegree::splat(k, 2));
            if cap.rank() != k {
                return Err(GraphError::UnknownFixture(format!("omega with cap {cap} for k = {k}")));
            }
            Ok(omega(k, &cap))
        }
        "single_vertex" => {
            let edges = params.edges.clone().unwrap_or_else(|| vec![1; params.k.unwrap_or(2)]);
            Ok(single_vertex(&edges))
        }
        "random" => {
            let bounds = crate::verify::GraphBounds { k: params.k.unwrap_or(2), ..Default::default() };
            crate::verify::random_kgraph(params.seed.unwrap_or(0), &bounds)
                .map_err(|e| GraphError::UnknownFixture(e.to_string()))
        }
        other => Err(GraphError::UnknownFixture(other.into())),
    }
}
