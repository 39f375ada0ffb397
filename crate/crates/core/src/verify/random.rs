//! Seeded random graphs and cocycles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle::{Coboundary, Cocycle};
use crate::degree::MultiDegree;
use crate::kgraph::{validate_skeleton, EdgeDecl, GraphError, KGraph, KGraphSkeleton, SquareDecl};
use crate::phase::Phase;

/// `(first, second)` edge ids of a composable pair.
type EdgePair = (usize, usize);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenerationError {
    #[error("generation exhausted: {0}")]
    GenerationExhausted(String),
}

/// Size limits for [`random_kgraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphBounds {
    pub k: usize,
    pub max_vertices: usize,
    /// Per-color edge limit; must be at least the vertex count.
    pub max_edges_per_color: usize,
    /// Square resamplings before the edge counts are shrunk.
    pub attempts: usize,
}

impl Default for GraphBounds {
    fn default() -> Self {
        GraphBounds { k: 2, max_vertices: 3, max_edges_per_color: 4, attempts: 64 }
    }
}

type Adjacency = Vec<Vec<u32>>;

fn mat_mul(a: &Adjacency, b: &Adjacency) -> Adjacency {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

fn commute(a: &Adjacency, b: &Adjacency) -> bool {
    mat_mul(a, b) == mat_mul(b, a)
}

fn identity(n: usize) -> Adjacency {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

fn edge_total(a: &Adjacency) -> usize {
    a.iter().flatten().map(|&x| x as usize).sum()
}

/// A matrix with every row nonzero and at most `max_edges` entries in total.
fn random_adjacency(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> Adjacency {
    let mut a = vec![vec![0u32; n]; n];
    for row in a.iter_mut() {
        row[rng.random_range(0..n)] += 1;
    }
    let extra = rng.random_range(0..=max_edges - n);
    for _ in 0..extra {
        a[rng.random_range(0..n)][rng.random_range(0..n)] += 1;
    }
    a
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Adjacency {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    (0..n).map(|i| (0..n).map(|j| u32::from(p[i] == j)).collect()).collect()
}

/// Adjacency matrices of `k` commuting colors with nonzero rows.
fn commuting_colors(rng: &mut ChaCha8Rng, k: usize, n: usize, max_edges: usize, attempts: usize) -> Vec<Adjacency> {
    let mut out: Vec<Adjacency> = Vec::new();
    for _ in 0..k {
        let mut chosen = None;
        for _ in 0..attempts {
            let cand = match rng.random_range(0..4) {
                0 => random_permutation(rng, n),
                1 => out.first().cloned().unwrap_or_else(|| random_adjacency(rng, n, max_edges)),
                _ => random_adjacency(rng, n, max_edges),
            };
            if edge_total(&cand) <= max_edges && out.iter().all(|a| commute(a, &cand)) {
                chosen = Some(cand);
                break;
            }
        }
        out.push(chosen.unwrap_or_else(|| identity(n)));
    }
    out
}

fn skeleton_from(rng: &mut ChaCha8Rng, colors: &[Adjacency]) -> KGraphSkeleton {
    let n = colors[0].len();
    let k = colors.len();
    let vname = |v: usize| format!("v{v}");
    let mut sk = KGraphSkeleton { k, vertices: (0..n).map(vname).collect(), ..Default::default() };
    // (color, range, source) for every edge, in id order.
    let mut info = Vec::new();
    for (c, a) in colors.iter().enumerate() {
        let mut j = 0;
        for (r, row) in a.iter().enumerate() {
            for (s, &count) in row.iter().enumerate() {
                for _ in 0..count {
                    sk.edges.push(EdgeDecl { id: format!("e{}_{j}", c + 1), color: c, range: vname(r), source: vname(s) });
                    info.push((c, r, s));
                    j += 1;
                }
            }
        }
    }
    let name = |e: usize| sk.edges[e].id.clone();
    let mut squares = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut blocks: BTreeMap<(usize, usize), (Vec<EdgePair>, Vec<EdgePair>)> = BTreeMap::new();
            for (e, &(ce, re, se)) in info.iter().enumerate() {
                for (f, &(cf, rf, sf)) in info.iter().enumerate() {
                    if se != rf {
                        continue;
                    }
                    if ce == i && cf == j {
                        blocks.entry((re, sf)).or_default().0.push((e, f));
                    } else if ce == j && cf == i {
                        blocks.entry((re, sf)).or_default().1.push((e, f));
                    }
                }
            }
            for (_, (left, mut right)) in blocks {
                right.shuffle(rng);
                for (a, b) in left.into_iter().zip(right) {
                    squares.push(SquareDecl { first: [name(a.0), name(a.1)], second: [name(b.0), name(b.1)] });
                }
            }
        }
    }
    sk.squares = squares;
    sk
}

/// A random source-free k-graph. Every color has nonzero adjacency rows, the
/// colors commute, and squares are random endpoint-compatible bijections; for
/// k ≥ 3 squares are resampled until the hexagon condition holds, shrinking to
/// permutation colors when the budget runs out.
pub fn random_kgraph(seed: u64, bounds: &GraphBounds) -> Result<KGraph, GenerationError> {
    if bounds.k == 0 || bounds.max_vertices == 0 || bounds.max_edges_per_color < bounds.max_vertices {
        return Err(GenerationError::GenerationExhausted(format!("bounds {bounds:?} admit no source-free graph")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=bounds.max_vertices);
    let colors = commuting_colors(&mut rng, bounds.k, n, bounds.max_edges_per_color, bounds.attempts.max(1));
    let mut shrunk = colors.clone();
    for stage in 0..3 {
        for _ in 0..bounds.attempts.max(1) {
            let sk = skeleton_from(&mut rng, &shrunk);
            match validate_skeleton(&sk) {
                Ok(g) => return Ok(g),
                Err(GraphError::HexagonViolation { .. }) => continue,
                Err(e) => return Err(GenerationError::GenerationExhausted(format!("{e}"))),
            }
        }
        // Shrink: first to permutations, then to one loop per vertex and color.
        shrunk = match stage {
            0 => (0..bounds.k).map(|i| if i == 0 { random_permutation(&mut rng, n) } else { identity(n) }).collect(),
            _ => vec![identity(n); bounds.k],
        };
    }
    Err(GenerationError::GenerationExhausted("hexagon-consistent squares not found".into()))
}

fn random_phase(rng: &mut ChaCha8Rng, quarter_only: bool) -> Phase {
    if quarter_only || rng.random_bool(0.5) {
        Phase::turns(rng.random_range(0..4), 4)
    } else if rng.random_bool(0.5) {
        Phase::turns(rng.random_range(0..12), 12)
    } else {
        Phase::radians(rng.random_range(-3..=3), rng.random_range(1..=3))
    }
}

/// A random cocycle on `g`: trivial, a bicharacter of the degrees, a random
/// coboundary on paths of degree ≤ `cap`, or a product of the last two. With
/// `quarter_only` every value is a power of i.
pub fn random_cocycle(seed: u64, g: &Arc<KGraph>, cap: &MultiDegree, quarter_only: bool) -> Cocycle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let k = g.k();
    let bichar = |rng: &mut ChaCha8Rng| {
        let theta = (0..k).map(|_| (0..k).map(|_| random_phase(rng, quarter_only)).collect()).collect();
        Cocycle::sigma(g.clone(), 0, theta).expect("square exponent matrix")
    };
    let cob = |rng: &mut ChaCha8Rng| {
        let mut b = Coboundary::new();
        for d in cap.below() {
            for p in g.paths(&d) {
                b.set(p, random_phase(rng, quarter_only));
            }
        }
        Cocycle::coboundary(g.clone(), b)
    };
    match rng.random_range(0..4) {
        0 => Cocycle::trivial(g.clone()),
        1 => bichar(&mut rng),
        2 => cob(&mut rng),
        _ => {
            let a = bichar(&mut rng);
            let b = cob(&mut rng);
            Cocycle::pointwise(vec![a, b]).expect("same graph")
        }
    }
}

/// One square entry replaced by a different edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareCorruption {
    /// Index of the square declaration.
    pub square: usize,
    /// Position within `[first[0], first[1], second[0], second[1]]`.
    pub slot: usize,
    pub old: String,
    pub new: String,
}

/// Replaces one randomly chosen square entry by another declared edge id.
/// `None` when the skeleton has no squares or a single edge.
pub fn perturb_square(skel: &KGraphSkeleton, seed: u64) -> Option<(KGraphSkeleton, SquareCorruption)> {
    if skel.squares.is_empty() || skel.edges.len() < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let square = rng.random_range(0..skel.squares.len());
    let slot = rng.random_range(0..4);
    let mut out = skel.clone();
    let sq = &mut out.squares[square];
    let entry = if slot < 2 { &mut sq.first[slot] } else { &mut sq.second[slot - 2] };
    let old = entry.clone();
    let others: Vec<&EdgeDecl> = skel.edges.iter().filter(|e| e.id != old).collect();
    let new = others[rng.random_range(0..others.len())].id.clone();
    *entry = new.clone();
    Some((out, SquareCorruption { square, slot, old, new }))
}

/// Whether a validation error points at the corrupted square.
pub fn names_corruption(err: &GraphError, c: &SquareCorruption) -> bool {
    match err {
        GraphError::EndpointMismatch { entries, .. } | GraphError::SquareNotBijective { entries, .. } => {
            entries.contains(&c.square)
        }
        GraphError::MalformedSkeleton(msg) => msg.contains(&format!("square {}", c.square)),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{are_cohomologous, check_cocycle};

    #[test]
    fn deterministic_and_valid() {
        for k in 1..=3 {
            for seed in 0..30 {
                let bounds = GraphBounds { k, ..Default::default() };
                let a = random_kgraph(seed, &bounds).unwrap();
                let b = random_kgraph(seed, &bounds).unwrap();
                assert_eq!(a, b);
                assert_eq!(a.k(), k);
                assert!(a.is_source_free().is_ok());
                assert!(validate_skeleton(&a.skeleton()).is_ok());
                if k == 1 {
                    assert_eq!(a.squares().count(), 0);
                }
            }
        }
    }

    #[test]
    fn corrupted_squares_are_rejected_at_their_index() {
        for seed in 0..200 {
            let g = random_kgraph(seed, &GraphBounds::default()).unwrap();
            let Some((sk, c)) = perturb_square(&g.skeleton(), seed) else { continue };
            let err = validate_skeleton(&sk).expect_err("corruption must be rejected");
            assert!(names_corruption(&err, &c), "{err} does not name {c:?}");
        }
        let f1 = crate::kgraph::f1();
        assert!(perturb_square(&f1.skeleton(), 0).is_some());
        assert!(perturb_square(&crate::kgraph::f2().skeleton(), 0).is_none());
    }

    #[test]
    fn bad_bounds_exhaust() {
        let bounds = GraphBounds { max_edges_per_color: 1, max_vertices: 2, ..Default::default() };
        assert!(random_kgraph(0, &bounds).is_err());
    }

    #[test]
    fn random_cocycles_pass() {
        let cap = MultiDegree::from([2, 2]);
        for seed in 0..12 {
            let g = Arc::new(random_kgraph(seed, &GraphBounds::default()).unwrap());
            let c = random_cocycle(seed, &g, &cap, seed % 2 == 0);
            assert_eq!(c, random_cocycle(seed, &g, &cap, seed % 2 == 0));
            assert!(check_cocycle(&c, &cap, 1e-9).passed());
            if seed % 2 == 0 {
                assert!(c.is_quarter_turn_valued());
            }
        }
    }

    #[test]
    fn random_coboundaries_are_recovered() {
        let cap = MultiDegree::from([2, 2]);
        let mut seen = 0;
        for seed in 0..40 {
            let g = Arc::new(random_kgraph(seed, &GraphBounds::default()).unwrap());
            let c = random_cocycle(seed, &g, &cap, false);
            if matches!(c.kind(), crate::cocycle::CocycleKind::Coboundary(_)) {
                seen += 1;
                let t = Cocycle::trivial(g.clone());
                assert!(are_cohomologous(&c, &t, &cap, 1e-9).is_ok());
            }
        }
        assert!(seen > 0);
    }
}
