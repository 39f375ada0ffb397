//! Finite k-graphs presented by a colored 1-skeleton and factorization squares.

mod fixtures;
mod path;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use fixtures::{builtin_fixture, f1, f2, omega, single_vertex, FixtureParams};
pub use path::Path;

use crate::degree::MultiDegree;

pub type VertexId = usize;
pub type EdgeId = usize;

/// An edge declaration. Colors are 0-based here; documents use 1-based colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDecl {
    pub id: String,
    pub color: usize,
    pub range: String,
    pub source: String,
}

/// Declares that the path `first[0] first[1]` (colors i < j) equals
/// `second[0] second[1]` (colors j, i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareDecl {
    pub first: [String; 2],
    pub second: [String; 2],
}

/// Unvalidated graph data.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KGraphSkeleton {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDecl>,
    pub squares: Vec<SquareDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub color: usize,
    pub range: VertexId,
    pub source: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("malformed skeleton: {0}")]
    MalformedSkeleton(String),
    #[error("square map is not a bijection at ({}, {}): {reason}", pair[0], pair[1])]
    SquareNotBijective {
        pair: [String; 2],
        /// Indices of the square declarations involved.
        entries: Vec<usize>,
        reason: String,
    },
    #[error("square ({}, {}) -> ({}, {}) has mismatched endpoints: {reason}", first[0], first[1], second[0], second[1])]
    EndpointMismatch {
        first: [String; 2],
        second: [String; 2],
        entries: Vec<usize>,
        reason: String,
    },
    #[error("hexagon condition fails on ({}, {}, {})", triple[0], triple[1], triple[2])]
    HexagonViolation { triple: [String; 3] },
    #[error("paths are not composable: source {source_vertex} differs from range {range_vertex}")]
    NotComposable { source_vertex: String, range_vertex: String },
    #[error("degree {requested} out of range for a path of degree {degree}")]
    DegreeOutOfRange { requested: String, degree: String },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("no vertex or edge is named {0:?}")]
    UnknownName(String),
}

/// A validated finite k-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGraph {
    k: usize,
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    /// (e, f) with color(e) < color(f)  ->  (f', e').
    square: BTreeMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    square_inv: BTreeMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// Edges of each color, ascending id.
    by_color: Vec<Vec<EdgeId>>,
    /// `into[v][i]`: edges of color i with range v, ascending id.
    into: Vec<Vec<Vec<EdgeId>>>,
}

fn pair_names(g: &[Edge], p: (EdgeId, EdgeId)) -> [String; 2] {
    [g[p.0].name.clone(), g[p.1].name.clone()]
}

/// Checks ids, colors and square endpoints, and returns the validated graph.
pub fn validate_skeleton(skel: &KGraphSkeleton) -> Result<KGraph, GraphError> {
    let k = skel.k;
    let mut vindex = BTreeMap::new();
    for (i, v) in skel.vertices.iter().enumerate() {
        if vindex.insert(v.as_str(), i).is_some() {
            return Err(GraphError::MalformedSkeleton(format!("duplicate vertex id {v:?}")));
        }
    }
    let mut eindex = BTreeMap::new();
    let mut edges = Vec::with_capacity(skel.edges.len());
    for (i, e) in skel.edges.iter().enumerate() {
        if eindex.insert(e.id.as_str(), i).is_some() {
            return Err(GraphError::MalformedSkeleton(format!("duplicate edge id {:?}", e.id)));
        }
        if vindex.contains_key(e.id.as_str()) {
            return Err(GraphError::MalformedSkeleton(format!(
                "id {:?} names both a vertex and an edge",
                e.id
            )));
        }
        if e.color >= k {
            return Err(GraphError::MalformedSkeleton(format!(
                "edge {:?} has color {} but k = {k}",
                e.id,
                e.color + 1
            )));
        }
        let lookup = |name: &str| {
            vindex.get(name).copied().ok_or_else(|| {
                GraphError::MalformedSkeleton(format!(
                    "edge {:?} refers to undeclared vertex {name:?}",
                    e.id
                ))
            })
        };
        let range = lookup(&e.range)?;
        let source = lookup(&e.source)?;
        edges.push(Edge { name: e.id.clone(), color: e.color, range, source });
    }

    let mut square = BTreeMap::new();
    let mut square_inv = BTreeMap::new();
    let mut key_entry: BTreeMap<(EdgeId, EdgeId), usize> = BTreeMap::new();
    let mut image_entry: BTreeMap<(EdgeId, EdgeId), usize> = BTreeMap::new();
    let mut decls = Vec::with_capacity(skel.squares.len());
    for (idx, sq) in skel.squares.iter().enumerate() {
        let lookup = |name: &String| {
            eindex.get(name.as_str()).copied().ok_or_else(|| {
                GraphError::MalformedSkeleton(format!(
                    "square {idx} refers to undeclared edge {name:?}"
                ))
            })
        };
        let e = lookup(&sq.first[0])?;
        let f = lookup(&sq.first[1])?;
        let f2 = lookup(&sq.second[0])?;
        let e2 = lookup(&sq.second[1])?;
        decls.push(((e, f), (f2, e2)));
    }
    for (idx, &((e, f), (f2, e2))) in decls.iter().enumerate() {
        let (ee, ff, ff2, ee2) = (&edges[e], &edges[f], &edges[f2], &edges[e2]);
        let mismatch = |reason: &str| GraphError::EndpointMismatch {
            first: pair_names(&edges, (e, f)),
            second: pair_names(&edges, (f2, e2)),
            entries: vec![idx],
            reason: reason.into(),
        };
        if ee.color >= ff.color {
            return Err(mismatch("first pair must have colors i < j"));
        }
        if ff2.color != ff.color || ee2.color != ee.color {
            return Err(mismatch("second pair must repeat the colors in swapped order"));
        }
        if ee.source != ff.range {
            return Err(mismatch("first pair is not composable"));
        }
        if ff2.source != ee2.range {
            return Err(mismatch("second pair is not composable"));
        }
        if ee.range != ff2.range {
            return Err(mismatch("ranges differ"));
        }
        if ff.source != ee2.source {
            return Err(mismatch("sources differ"));
        }
    }
    for (idx, &(key, image)) in decls.iter().enumerate() {
        if let Some(&prev) = key_entry.get(&key) {
            return Err(GraphError::SquareNotBijective {
                pair: pair_names(&edges, key),
                entries: vec![prev, idx],
                reason: "pair is assigned two factorizations".into(),
            });
        }
        if let Some(&prev) = image_entry.get(&image) {
            return Err(GraphError::SquareNotBijective {
                pair: pair_names(&edges, key),
                entries: vec![prev, idx],
                reason: format!(
                    "factorization ({}, {}) is the image of two pairs",
                    edges[image.0].name, edges[image.1].name
                ),
            });
        }
        key_entry.insert(key, idx);
        image_entry.insert(image, idx);
        square.insert(key, image);
        square_inv.insert(image, key);
    }

    let mut by_color = vec![Vec::new(); k];
    let mut into = vec![vec![Vec::new(); k]; skel.vertices.len()];
    for (id, e) in edges.iter().enumerate() {
        by_color[e.color].push(id);
        into[e.range][e.color].push(id);
    }
    // Totality and surjectivity over every composable two-colored pair.
    for (x, ex) in edges.iter().enumerate() {
        for c in 0..k {
            if c == ex.color {
                continue;
            }
            for &y in &into[ex.source][c] {
                let p = (x, y);
                if ex.color < c && !square.contains_key(&p) {
                    return Err(GraphError::SquareNotBijective {
                        pair: pair_names(&edges, p),
                        entries: Vec::new(),
                        reason: "composable pair has no factorization square".into(),
                    });
                }
                if ex.color > c && !square_inv.contains_key(&p) {
                    return Err(GraphError::SquareNotBijective {
                        pair: pair_names(&edges, p),
                        entries: Vec::new(),
                        reason: "composable pair is not the image of any square".into(),
                    });
                }
            }
        }
    }

    let g = KGraph { k, vertex_names: skel.vertices.clone(), edges, square, square_inv, by_color, into };
    if k >= 3 {
        g.check_hexagons()?;
    }
    Ok(g)
}

impl KGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn edges_of_color(&self, c: usize) -> &[EdgeId] {
        &self.by_color[c]
    }

    /// Edges of color `c` with range `v`.
    pub fn edges_into(&self, v: VertexId, c: usize) -> &[EdgeId] {
        &self.into[v][c]
    }

    /// The square relation as `((e, f), (f', e'))` with color(e) < color(f).
    pub fn squares(&self) -> impl Iterator<Item = ((EdgeId, EdgeId), (EdgeId, EdgeId))> + '_ {
        self.square.iter().map(|(a, b)| (*a, *b))
    }

    /// Rebuilds a skeleton (squares in key order).
    pub fn skeleton(&self) -> KGraphSkeleton {
        KGraphSkeleton {
            k: self.k,
            vertices: self.vertex_names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDecl {
                    id: e.name.clone(),
                    color: e.color,
                    range: self.vertex_names[e.range].clone(),
                    source: self.vertex_names[e.source].clone(),
                })
                .collect(),
            squares: self
                .square
                .iter()
                .map(|(a, b)| SquareDecl {
                    first: pair_names(&self.edges, *a),
                    second: pair_names(&self.edges, *b),
                })
                .collect(),
        }
    }

    /// Exchanges two adjacent edges of different colors via the squares.
    /// Returns the pair in the opposite color order.
    pub fn swap_pair(&self, x: EdgeId, y: EdgeId) -> (EdgeId, EdgeId) {
        let (cx, cy) = (self.edges[x].color, self.edges[y].color);
        debug_assert_ne!(cx, cy);
        if cx < cy {
            self.square[&(x, y)]
        } else {
            self.square_inv[&(x, y)]
        }
    }

    fn check_hexagons(&self) -> Result<(), GraphError> {
        let swap = |w: &mut [EdgeId; 3], i: usize| {
            let (a, b) = self.swap_pair(w[i], w[i + 1]);
            w[i] = a;
            w[i + 1] = b;
        };
        for (x, ex) in self.edges.iter().enumerate() {
            for cj in ex.color + 1..self.k {
                for &y in &self.into[ex.source][cj] {
                    for cl in cj + 1..self.k {
                        for &z in &self.into[self.edges[y].source][cl] {
                            let mut a = [x, y, z];
                            swap(&mut a, 0);
                            swap(&mut a, 1);
                            swap(&mut a, 0);
                            let mut b = [x, y, z];
                            swap(&mut b, 1);
                            swap(&mut b, 0);
                            swap(&mut b, 1);
                            if a != b {
                                return Err(GraphError::HexagonViolation {
                                    triple: [
                                        ex.name.clone(),
                                        self.edges[y].name.clone(),
                                        self.edges[z].name.clone(),
                                    ],
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `Ok(())` when every vertex receives an edge of every color, otherwise a
    /// failing `(vertex, color)`.
    pub fn is_source_free(&self) -> Result<(), (VertexId, usize)> {
        for v in 0..self.vertex_count() {
            for c in 0..self.k {
                if self.into[v][c].is_empty() {
                    return Err((v, c));
                }
            }
        }
        Ok(())
    }

    /// Properness holds for every finite graph; the table lists `|vΛⁿ|` per vertex.
    pub fn is_proper(&self, n: &MultiDegree) -> (bool, Vec<usize>) {
        let mut counts = vec![0; self.vertex_count()];
        for p in self.paths(n) {
            counts[p.range] += 1;
        }
        (true, counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn two_vertex_2graph() -> KGraphSkeleton {
        // Vertices u, v; color 0 edges a: u<-v, b: v<-u; color 1 edges c: u<-v, d: v<-u.
        KGraphSkeleton {
            k: 2,
            vertices: vec![s("u"), s("v")],
            edges: vec![
                EdgeDecl { id: s("a"), color: 0, range: s("u"), source: s("v") },
                EdgeDecl { id: s("b"), color: 0, range: s("v"), source: s("u") },
                EdgeDecl { id: s("c"), color: 1, range: s("u"), source: s("v") },
                EdgeDecl { id: s("d"), color: 1, range: s("v"), source: s("u") },
            ],
            squares: vec![
                SquareDecl { first: [s("a"), s("d")], second: [s("c"), s("b")] },
                SquareDecl { first: [s("b"), s("c")], second: [s("d"), s("a")] },
            ],
        }
    }

    #[test]
    fn valid_two_vertex_graph() {
        let g = validate_skeleton(&two_vertex_2graph()).unwrap();
        assert_eq!(g.k(), 2);
        assert!(g.is_source_free().is_ok());
    }

    #[test]
    fn swapped_squares_are_endpoint_mismatch() {
        let mut sk = two_vertex_2graph();
        let tmp = sk.squares[0].second.clone();
        sk.squares[0].second = sk.squares[1].second.clone();
        sk.squares[1].second = tmp;
        match validate_skeleton(&sk) {
            Err(GraphError::EndpointMismatch { first, entries, .. }) => {
                assert_eq!(first, [s("a"), s("d")]);
                assert_eq!(entries, vec![0]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dangling_endpoint_is_malformed() {
        let mut sk = two_vertex_2graph();
        sk.edges[0].source = s("w");
        assert!(matches!(validate_skeleton(&sk), Err(GraphError::MalformedSkeleton(_))));
    }

    #[test]
    fn missing_square_is_not_bijective() {
        let mut sk = two_vertex_2graph();
        sk.squares.pop();
        assert!(matches!(validate_skeleton(&sk), Err(GraphError::SquareNotBijective { .. })));
    }

    #[test]
    fn duplicate_image_names_both_entries() {
        // A 1-vertex 2-graph with two loops of color 1 admits non-injective maps.
        let sk = KGraphSkeleton {
            k: 2,
            vertices: vec![s("v")],
            edges: vec![
                EdgeDecl { id: s("e1"), color: 0, range: s("v"), source: s("v") },
                EdgeDecl { id: s("f1"), color: 1, range: s("v"), source: s("v") },
                EdgeDecl { id: s("f2"), color: 1, range: s("v"), source: s("v") },
            ],
            squares: vec![
                SquareDecl { first: [s("e1"), s("f1")], second: [s("f1"), s("e1")] },
                SquareDecl { first: [s("e1"), s("f2")], second: [s("f1"), s("e1")] },
            ],
        };
        match validate_skeleton(&sk) {
            Err(GraphError::SquareNotBijective { entries, .. }) => assert_eq!(entries, vec![0, 1]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn skeleton_round_trip() {
        let g = validate_skeleton(&two_vertex_2graph()).unwrap();
        let g2 = validate_skeleton(&g.skeleton()).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn hexagon_violation_detected() {
        // One vertex, loops a0, a1 of color 0 and one loop each of colors 1, 2.
        let mut edges = vec![
            EdgeDecl { id: s("a0"), color: 0, range: s("v"), source: s("v") },
            EdgeDecl { id: s("a1"), color: 0, range: s("v"), source: s("v") },
            EdgeDecl { id: s("b"), color: 1, range: s("v"), source: s("v") },
            EdgeDecl { id: s("c"), color: 2, range: s("v"), source: s("v") },
        ];
        edges.sort_by(|x, y| x.id.cmp(&y.id));
        let sq = |e: &str, f: &str, f2: &str, e2: &str| SquareDecl {
            first: [s(e), s(f)],
            second: [s(f2), s(e2)],
        };
        let mut sk = KGraphSkeleton {
            k: 3,
            vertices: vec![s("v")],
            edges,
            squares: vec![
                sq("a0", "b", "b", "a0"),
                sq("a1", "b", "b", "a1"),
                sq("a0", "c", "c", "a0"),
                sq("a1", "c", "c", "a1"),
                sq("b", "c", "c", "b"),
            ],
        };
        assert!(validate_skeleton(&sk).is_ok());
        sk.squares[0] = sq("a0", "b", "b", "a1");
        sk.squares[1] = sq("a1", "b", "b", "a0");
        assert!(validate_skeleton(&sk).is_ok(), "twisting one pair of colors is consistent");
        // With three loops of color 0, twisting by non-commuting permutations fails.
        let mut sk3 = sk.clone();
        sk3.edges.push(EdgeDecl { id: s("a2"), color: 0, range: s("v"), source: s("v") });
        sk3.squares = vec![
            sq("a0", "b", "b", "a1"),
            sq("a1", "b", "b", "a2"),
            sq("a2", "b", "b", "a0"),
            sq("a0", "c", "c", "a1"),
            sq("a1", "c", "c", "a0"),
            sq("a2", "c", "c", "a2"),
            sq("b", "c", "c", "b"),
        ];
        assert!(matches!(validate_skeleton(&sk3), Err(GraphError::HexagonViolation { .. })));
    }
}
