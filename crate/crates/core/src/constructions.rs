//! Cartesian products, skew products by finite groups, and degree-truncated
//! crossed products by commuting automorphisms.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::degree::MultiDegree;
use crate::kgraph::{validate_skeleton, EdgeDecl, EdgeId, GraphError, KGraph, KGraphSkeleton, Path, SquareDecl, VertexId};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("labelling is not a functor on the square ({0}, {1}) -> ({2}, {3})")]
    NotAFunctor(String, String, String, String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("degree {requested} exceeds the truncation cap {cap}")]
    CapTooSmallForRequestedDegree { requested: String, cap: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Forgets part of a path in a constructed graph, landing in a factor graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub base: Arc<KGraph>,
    pub vertex_map: Vec<VertexId>,
    /// Image of each edge, or `None` when the edge is forgotten.
    pub edge_map: Vec<Option<EdgeId>>,
}

impl Projection {
    pub fn project(&self, p: &Path) -> Path {
        let edges: Vec<EdgeId> = p.edges.iter().filter_map(|&e| self.edge_map[e]).collect();
        if edges.is_empty() {
            return self.base.vertex_path(self.vertex_map[p.range]);
        }
        let mut degree = vec![0u32; self.base.k()];
        for &e in &edges {
            degree[self.base.edge(e).color] += 1;
        }
        Path {
            degree: MultiDegree::new(degree),
            range: self.base.edge(edges[0]).range,
            source: self.base.edge(*edges.last().unwrap()).source,
            edges,
        }
    }
}

/// `Λ1 × Λ2` with its two coordinate projections.
#[derive(Clone, Debug)]
pub struct CartesianProduct {
    pub graph: Arc<KGraph>,
    pub left: Projection,
    pub right: Projection,
}

/// Cartesian product of a rank-k1 and a rank-k2 graph. Vertex `(v1, v2)` has
/// id `v1·|V2| + v2`; colors below k1 come from the left factor.
pub fn cartesian(g1: &Arc<KGraph>, g2: &Arc<KGraph>) -> CartesianProduct {
    let (k1, k2) = (g1.k(), g2.k());
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let vname = |a: VertexId, b: VertexId| format!("({},{})", g1.vertex_name(a), g2.vertex_name(b));
    let lname = |e: EdgeId, b: VertexId| format!("({},{})", g1.edge(e).name, g2.vertex_name(b));
    let rname = |a: VertexId, f: EdgeId| format!("({},{})", g1.vertex_name(a), g2.edge(f).name);
    let mut sk = KGraphSkeleton { k: k1 + k2, ..Default::default() };
    for a in 0..n1 {
        for b in 0..n2 {
            sk.vertices.push(vname(a, b));
        }
    }
    let mut vmap_l = Vec::new();
    let mut vmap_r = Vec::new();
    for a in 0..n1 {
        for b in 0..n2 {
            vmap_l.push(a);
            vmap_r.push(b);
        }
    }
    let mut emap_l = Vec::new();
    let mut emap_r = Vec::new();
    for e in 0..g1.edge_count() {
        let ed = g1.edge(e);
        for b in 0..n2 {
            sk.edges.push(EdgeDecl {
                id: lname(e, b),
                color: ed.color,
                range: vname(ed.range, b),
                source: vname(ed.source, b),
            });
            emap_l.push(Some(e));
            emap_r.push(None);
        }
    }
    for a in 0..n1 {
        for f in 0..g2.edge_count() {
            let fd = g2.edge(f);
            sk.edges.push(EdgeDecl {
                id: rname(a, f),
                color: k1 + fd.color,
                range: vname(a, fd.range),
                source: vname(a, fd.source),
            });
            emap_l.push(None);
            emap_r.push(Some(f));
        }
    }
    for ((e, f), (f2, e2)) in g1.squares() {
        for b in 0..n2 {
            sk.squares.push(SquareDecl { first: [lname(e, b), lname(f, b)], second: [lname(f2, b), lname(e2, b)] });
        }
    }
    for ((e, f), (f2, e2)) in g2.squares() {
        for a in 0..n1 {
            sk.squares.push(SquareDecl { first: [rname(a, e), rname(a, f)], second: [rname(a, f2), rname(a, e2)] });
        }
    }
    // (e, r f)(s e, f) = (r e, f)(e, s f)
    for e in 0..g1.edge_count() {
        let ed = g1.edge(e);
        for f in 0..g2.edge_count() {
            let fd = g2.edge(f);
            sk.squares.push(SquareDecl {
                first: [lname(e, fd.range), rname(ed.source, f)],
                second: [rname(ed.range, f), lname(e, fd.source)],
            });
        }
    }
    let graph = Arc::new(validate_skeleton(&sk).expect("products of valid graphs are valid"));
    CartesianProduct {
        graph,
        left: Projection { base: g1.clone(), vertex_map: vmap_l, edge_map: emap_l },
        right: Projection { base: g2.clone(), vertex_map: vmap_r, edge_map: emap_r },
    }
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self, ConstructionError> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(ConstructionError::InvalidGroup("table must be square with entries below its order".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(ConstructionError::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| ConstructionError::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| mul[a][b] == identity) {
                return Err(ConstructionError::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        Ok(GroupTable { mul, identity })
    }

    /// The cyclic group Z/n.
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable { mul, identity: 0 }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }
}

/// `Λ ×_f A` with the projection onto Λ.
#[derive(Clone, Debug)]
pub struct SkewProduct {
    pub graph: Arc<KGraph>,
    pub base: Arc<KGraph>,
    pub group: GroupTable,
    /// Group label of each base edge.
    pub functor: Vec<usize>,
    pub projection: Projection,
}

/// Skew product: vertex `(v, a)` has id `v·|A| + a`, edge `(e, a)` has id
/// `e·|A| + a`, with `r(e, a) = (r(e), a)` and `s(e, a) = (s(e), a f(e))`.
pub fn skew_product(g: &Arc<KGraph>, group: &GroupTable, functor: &[usize]) -> Result<SkewProduct, ConstructionError> {
    let n = group.order();
    if functor.len() != g.edge_count() || functor.iter().any(|&x| x >= n) {
        return Err(ConstructionError::InvalidGroup("one group element per edge is required".into()));
    }
    for ((e, f), (f2, e2)) in g.squares() {
        if group.mul(functor[e], functor[f]) != group.mul(functor[f2], functor[e2]) {
            let nm = |x: EdgeId| g.edge(x).name.clone();
            return Err(ConstructionError::NotAFunctor(nm(e), nm(f), nm(f2), nm(e2)));
        }
    }
    let vname = |v: VertexId, a: usize| format!("({},{a})", g.vertex_name(v));
    let ename = |e: EdgeId, a: usize| format!("({},{a})", g.edge(e).name);
    let mut sk = KGraphSkeleton { k: g.k(), ..Default::default() };
    let mut vmap = Vec::new();
    for v in 0..g.vertex_count() {
        for a in 0..n {
            sk.vertices.push(vname(v, a));
            vmap.push(v);
        }
    }
    let mut emap = Vec::new();
    for e in 0..g.edge_count() {
        let ed = g.edge(e);
        for a in 0..n {
            sk.edges.push(EdgeDecl {
                id: ename(e, a),
                color: ed.color,
                range: vname(ed.range, a),
                source: vname(ed.source, group.mul(a, functor[e])),
            });
            emap.push(Some(e));
        }
    }
    for ((e, f), (f2, e2)) in g.squares() {
        for a in 0..n {
            sk.squares.push(SquareDecl {
                first: [ename(e, a), ename(f, group.mul(a, functor[e]))],
                second: [ename(f2, a), ename(e2, group.mul(a, functor[f2]))],
            });
        }
    }
    let graph = Arc::new(validate_skeleton(&sk)?);
    Ok(SkewProduct {
        graph,
        base: g.clone(),
        group: group.clone(),
        functor: functor.to_vec(),
        projection: Projection { base: g.clone(), vertex_map: vmap, edge_map: emap },
    })
}

/// A k-graph automorphism given by vertex and edge permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Automorphism {
    pub fn identity(g: &KGraph) -> Self {
        Automorphism { vertices: (0..g.vertex_count()).collect(), edges: (0..g.edge_count()).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut vertices = vec![0; self.vertices.len()];
        for (i, &j) in self.vertices.iter().enumerate() {
            vertices[j] = i;
        }
        let mut edges = vec![0; self.edges.len()];
        for (i, &j) in self.edges.iter().enumerate() {
            edges[j] = i;
        }
        Automorphism { vertices, edges }
    }

    fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
            edges: other.edges.iter().map(|&e| self.edges[e]).collect(),
        }
    }
}

/// An action of Z^l by commuting automorphisms, one per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZlAction {
    pub generators: Vec<Automorphism>,
}

impl ZlAction {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !core::mem::replace(&mut seen[x], true))
}

/// Checks that each generator is a bijective degree-preserving morphism
/// compatible with the squares and that the generators commute.
pub fn validate_action(g: &KGraph, beta: &ZlAction) -> Result<(), String> {
    for (j, b) in beta.generators.iter().enumerate() {
        if !is_permutation(&b.vertices, g.vertex_count()) {
            return Err(format!("generator {} is not a vertex bijection", j + 1));
        }
        if !is_permutation(&b.edges, g.edge_count()) {
            return Err(format!("generator {} is not an edge bijection", j + 1));
        }
        for (e, ed) in g.edges().iter().enumerate() {
            let im = g.edge(b.edges[e]);
            if im.color != ed.color {
                return Err(format!("generator {} changes the color of edge {}", j + 1, ed.name));
            }
            if im.range != b.vertices[ed.range] || im.source != b.vertices[ed.source] {
                return Err(format!("generator {} does not respect the endpoints of edge {}", j + 1, ed.name));
            }
        }
        for ((e, f), (f2, e2)) in g.squares() {
            let img = g.swap_pair(b.edges[e], b.edges[f]);
            if img != (b.edges[f2], b.edges[e2]) {
                return Err(format!(
                    "generator {} does not preserve the square of ({}, {})",
                    j + 1,
                    g.edge(e).name,
                    g.edge(f).name
                ));
            }
        }
    }
    for i in 0..beta.rank() {
        for j in i + 1..beta.rank() {
            let (a, b) = (&beta.generators[i], &beta.generators[j]);
            if a.compose(b) != b.compose(a) {
                return Err(format!("generators {} and {} do not commute", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// `Γ = Λ ×_β Z^l` with Z^l-degrees bounded by `cap`.
///
/// The skeleton of Γ is finite: old edges `(e, 0)` keep their ids, and the
/// new edge `(v, e_j)` of color `k + j` has id `|E| + j·|V| + v`, range `v` and
/// source `β_j^{-1}(v)`. Paths and composition whose Z^l-degree exceeds the
/// cap are refused.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub graph: Arc<KGraph>,
    pub base: Arc<KGraph>,
    pub action: ZlAction,
    pub cap: MultiDegree,
    /// Forgets the Z^l part.
    pub projection: Projection,
}

pub fn crossed_product(g: &Arc<KGraph>, beta: &ZlAction, cap: &MultiDegree) -> Result<CrossedProduct, ConstructionError> {
    validate_action(g, beta).map_err(ConstructionError::InvalidAction)?;
    let l = beta.rank();
    if cap.rank() != l {
        return Err(ConstructionError::InvalidAction(format!("cap has rank {} but the action has {l} generators", cap.rank())));
    }
    let k = g.k();
    let inv: Vec<Automorphism> = beta.generators.iter().map(Automorphism::inverse).collect();
    let mut sk = g.skeleton();
    sk.k = k + l;
    let taken: Vec<&str> = sk.vertices.iter().chain(sk.edges.iter().map(|e| &e.id)).map(String::as_str).collect();
    let mut tag = String::from("t");
    while taken.iter().any(|x| x.starts_with(tag.as_str())) {
        tag.push('t');
    }
    let nname = |v: VertexId, j: usize| format!("{tag}{}@{}", j + 1, g.vertex_name(v));
    let mut emap: Vec<Option<EdgeId>> = (0..g.edge_count()).map(Some).collect();
    for j in 0..l {
        for v in 0..g.vertex_count() {
            sk.edges.push(EdgeDecl {
                id: nname(v, j),
                color: k + j,
                range: g.vertex_name(v).into(),
                source: g.vertex_name(inv[j].vertices[v]).into(),
            });
            emap.push(None);
        }
    }
    for j in 0..l {
        for e in 0..g.edge_count() {
            let ed = g.edge(e);
            sk.squares.push(SquareDecl {
                first: [ed.name.clone(), nname(ed.source, j)],
                second: [nname(ed.range, j), g.edge(inv[j].edges[e]).name.clone()],
            });
        }
        for i in 0..j {
            for v in 0..g.vertex_count() {
                sk.squares.push(SquareDecl {
                    first: [nname(v, i), nname(inv[i].vertices[v], j)],
                    second: [nname(v, j), nname(inv[j].vertices[v], i)],
                });
            }
        }
    }
    let graph = Arc::new(validate_skeleton(&sk)?);
    Ok(CrossedProduct {
        graph,
        base: g.clone(),
        action: beta.clone(),
        cap: cap.clone(),
        projection: Projection { base: g.clone(), vertex_map: (0..g.vertex_count()).collect(), edge_map: emap },
    })
}

impl CrossedProduct {
    fn check_cap(&self, m: &MultiDegree) -> Result<(), ConstructionError> {
        if m.le(&self.cap) {
            Ok(())
        } else {
            Err(ConstructionError::CapTooSmallForRequestedDegree { requested: format!("{m}"), cap: format!("{}", self.cap) })
        }
    }

    fn new_edge(&self, v: VertexId, j: usize) -> EdgeId {
        self.base.edge_count() + j * self.base.vertex_count() + v
    }

    /// Γ-degree `(p, m)`.
    pub fn degree(&self, p: &MultiDegree, m: &MultiDegree) -> MultiDegree {
        p.concat(m)
    }

    /// The Γ-path `(μ, m)`.
    pub fn embed(&self, mu: &Path, m: &MultiDegree) -> Result<Path, ConstructionError> {
        self.check_cap(m)?;
        let mut word = mu.edges.clone();
        let mut v = mu.source;
        for j in m.color_sequence() {
            word.push(self.new_edge(v, j));
            v = self.graph.edge(self.new_edge(v, j)).source;
        }
        if word.is_empty() {
            return Ok(self.graph.vertex_path(mu.range));
        }
        Ok(self.graph.path_from_word(&word)?)
    }

    /// `(μ, m)` from a Γ-path.
    pub fn split(&self, p: &Path) -> (Path, MultiDegree) {
        let k = self.base.k();
        (self.projection.project(p), p.degree.slice(k, self.graph.k()))
    }

    pub fn paths(&self, d: &MultiDegree) -> Result<Vec<Path>, ConstructionError> {
        self.check_cap(&d.slice(self.base.k(), self.graph.k()))?;
        Ok(self.graph.paths(d))
    }

    pub fn compose(&self, a: &Path, b: &Path) -> Result<Path, ConstructionError> {
        let k = self.base.k();
        let n = self.graph.k();
        self.check_cap(&a.degree.slice(k, n).add(&b.degree.slice(k, n)))?;
        Ok(self.graph.compose(a, b)?)
    }

    /// `β_m` applied to a base path.
    pub fn act(&self, m: &MultiDegree, mu: &Path) -> Path {
        let mut edges = mu.edges.clone();
        let mut range = mu.range;
        let mut source = mu.source;
        for (j, gen) in self.action.generators.iter().enumerate() {
            for _ in 0..m.get(j) {
                edges.iter_mut().for_each(|e| *e = gen.edges[*e]);
                range = gen.vertices[range];
                source = gen.vertices[source];
            }
        }
        Path { degree: mu.degree.clone(), edges, range, source }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::{f1, f2, single_vertex};

    fn arc(g: KGraph) -> Arc<KGraph> {
        Arc::new(g)
    }

    fn f2_swap(g: &KGraph) -> ZlAction {
        let a = ZlAction { generators: vec![Automorphism { vertices: vec![1, 0], edges: vec![1, 0] }] };
        assert!(validate_action(g, &a).is_ok());
        a
    }

    #[test]
    fn cartesian_counts() {
        let g = arc(f2());
        let p = cartesian(&g, &g);
        assert_eq!(p.graph.vertex_count(), 4);
        assert_eq!(p.graph.paths(&MultiDegree::from([1, 1])).len(), 4);
        for (m, n) in [(1, 2), (2, 2), (3, 1)] {
            assert_eq!(
                p.graph.paths(&MultiDegree::from([m, n])).len(),
                g.paths(&MultiDegree::from([m])).len() * g.paths(&MultiDegree::from([n])).len()
            );
        }
        assert!(p.graph.is_source_free().is_ok());
    }

    #[test]
    fn product_of_loops_is_f1() {
        let l = arc(single_vertex(&[1]));
        let p = cartesian(&l, &l);
        assert_eq!(p.graph.vertex_count(), 1);
        assert_eq!(p.graph.edge_count(), 2);
        for d in MultiDegree::from([2, 2]).below() {
            assert_eq!(p.graph.paths(&d).len(), 1);
        }
    }

    #[test]
    fn projections_split_product_paths() {
        let g1 = arc(f2());
        let g2 = arc(f1());
        let p = cartesian(&g1, &g2);
        for path in p.graph.paths(&MultiDegree::from([2, 1, 1])) {
            let a = p.left.project(&path);
            let b = p.right.project(&path);
            assert_eq!(a.degree, MultiDegree::from([2]));
            assert_eq!(b.degree, MultiDegree::from([1, 1]));
            assert!(g1.paths(&a.degree).contains(&a));
        }
    }

    #[test]
    fn skew_product_by_z2() {
        let g = arc(f2());
        let z2 = GroupTable::cyclic(2);
        // f(a) = f(b) = 1 splits the 2-cycle into two 2-cycles.
        let s = skew_product(&g, &z2, &[1, 1]).unwrap();
        assert_eq!(s.graph.vertex_count(), 4);
        let a0 = s.graph.edge(s.graph.edge_by_name("(a,0)").unwrap());
        assert_eq!(s.graph.vertex_name(a0.range), "(u,0)");
        assert_eq!(s.graph.vertex_name(a0.source), "(v,1)");
        let two = s.graph.paths(&MultiDegree::from([2]));
        assert!(two.iter().all(|p| p.range == p.source));
        // f(a) = 1, f(b) = 0 gives one 4-cycle.
        let s = skew_product(&g, &z2, &[1, 0]).unwrap();
        let two = s.graph.paths(&MultiDegree::from([2]));
        assert!(two.iter().all(|p| p.range != p.source));
        let four = s.graph.paths(&MultiDegree::from([4]));
        assert!(four.iter().all(|p| p.range == p.source));
        for n in 0..4 {
            let d = MultiDegree::from([n]);
            assert_eq!(s.graph.paths(&d).len(), 2 * g.paths(&d).len());
        }
    }

    #[test]
    fn trivial_group_skew_is_isomorphic() {
        let g = arc(f1());
        let s = skew_product(&g, &GroupTable::cyclic(1), &[0, 0]).unwrap();
        assert_eq!(s.graph.vertex_count(), 1);
        assert_eq!(s.graph.edge_count(), 2);
    }

    #[test]
    fn skew_functor_is_checked() {
        let g = arc(f1());
        let z2 = GroupTable::cyclic(2);
        assert!(skew_product(&g, &z2, &[1, 0]).is_ok());
        let bad = GroupTable::new(vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(bad, Err(ConstructionError::InvalidGroup(_))));
    }

    #[test]
    fn crossed_product_of_swap() {
        let g = arc(f2());
        let beta = f2_swap(&g);
        let cp = crossed_product(&g, &beta, &MultiDegree::from([2])).unwrap();
        assert_eq!(cp.graph.k(), 2);
        let a = g.edge_path(g.edge_by_name("a").unwrap());
        let b = g.edge_path(g.edge_by_name("b").unwrap());
        let one = MultiDegree::from([1]);
        let a1 = cp.embed(&a, &one).unwrap();
        let prod = cp.compose(&a1, &a1).unwrap();
        let ab = g.compose(&a, &b).unwrap();
        let (mu, m) = cp.split(&prod);
        assert_eq!(mu, ab);
        assert_eq!(m, MultiDegree::from([2]));
        assert_eq!(prod, cp.embed(&ab, &MultiDegree::from([2])).unwrap());
        assert!(matches!(
            cp.compose(&prod, &a1),
            Err(ConstructionError::CapTooSmallForRequestedDegree { .. })
        ));
        for p in 0..3 {
            for m in 0..3 {
                let d = MultiDegree::from([p, m]);
                assert_eq!(cp.paths(&d).unwrap().len(), g.paths(&MultiDegree::from([p])).len());
            }
        }
        assert!(cp.graph.is_source_free().is_ok());
    }

    #[test]
    fn crossed_product_composition_formula() {
        // (μ,m)(ν,n) = (μ β_m(ν), m + n) on every composable pair.
        let g = arc(f2());
        let cp = crossed_product(&g, &f2_swap(&g), &MultiDegree::from([3])).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                for m in 0..2 {
                    for n in 0..2 {
                        let (pm, qm) = (MultiDegree::from([p]), MultiDegree::from([q]));
                        let (mm, nm) = (MultiDegree::from([m]), MultiDegree::from([n]));
                        for mu in g.paths(&pm) {
                            for nu in g.paths(&qm) {
                                let x = cp.embed(&mu, &mm).unwrap();
                                let y = cp.embed(&nu, &nm).unwrap();
                                if x.source != y.range {
                                    continue;
                                }
                                let xy = cp.compose(&x, &y).unwrap();
                                let bn = cp.act(&mm, &nu);
                                let expect = cp.embed(&g.compose(&mu, &bn).unwrap(), &mm.add(&nm)).unwrap();
                                assert_eq!(xy, expect);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_action_matches_cartesian_counts() {
        let g = arc(f2());
        let beta = ZlAction { generators: vec![Automorphism::identity(&g)] };
        let cp = crossed_product(&g, &beta, &MultiDegree::from([2])).unwrap();
        let c = cartesian(&g, &arc(single_vertex(&[1])));
        for d in MultiDegree::from([2, 2]).below() {
            assert_eq!(cp.paths(&d).unwrap().len(), c.graph.paths(&d).len());
        }
    }

    #[test]
    fn bad_actions_are_rejected() {
        let g = f2();
        let ident = ZlAction { generators: vec![Automorphism::identity(&g)] };
        assert!(validate_action(&g, &ident).is_ok());
        // Swapping edges without swapping vertices breaks r.
        let bad = ZlAction { generators: vec![Automorphism { vertices: vec![0, 1], edges: vec![1, 0] }] };
        let err = validate_action(&g, &bad).unwrap_err();
        assert!(err.contains("endpoints of edge a"));
    }
}
