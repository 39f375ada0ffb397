//! Shared context for module computations: the graph, the cocycle converted to
//! a scalar field, and cached path tables and index maps.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::cocycle::Cocycle;
use crate::degree::MultiDegree;
use crate::kgraph::{KGraph, Path, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: MultiDegree, found: MultiDegree },
    #[error("degree {small} is not below {large}")]
    DegreeNotDominated { small: MultiDegree, large: MultiDegree },
    #[error("cocycle values are not powers of i; use floating-point scalars")]
    NotRepresentable,
    #[error("no square root of {0} in the scalar field")]
    NoSquareRoot(String),
    #[error("not section decomposable: {0}")]
    NotSectionDecomposable(String),
    #[error("degree {degree} exceeds truncation {truncation}")]
    DegreeExceedsTruncation { degree: MultiDegree, truncation: MultiDegree },
    #[error("depth {depth} exceeds the available depth {limit}")]
    DepthOverflow { depth: MultiDegree, limit: MultiDegree },
}

/// `Λⁿ` in canonical order with lookup by path, source and range.
#[derive(Debug)]
pub struct PathTable {
    pub degree: MultiDegree,
    pub paths: Vec<Path>,
    index: BTreeMap<Path, usize>,
    by_source: Vec<Vec<usize>>,
    by_range: Vec<Vec<usize>>,
}

impl PathTable {
    fn new(g: &KGraph, n: &MultiDegree) -> Self {
        let paths = g.paths(n);
        let mut by_source = vec![Vec::new(); g.vertex_count()];
        let mut by_range = vec![Vec::new(); g.vertex_count()];
        let mut index = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            by_source[p.source].push(i);
            by_range[p.range].push(i);
            index.insert(p.clone(), i);
        }
        PathTable { degree: n.clone(), paths, index, by_source, by_range }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Indices of `Λⁿv`.
    pub fn with_source(&self, v: VertexId) -> &[usize] {
        &self.by_source[v]
    }

    /// Indices of `vΛⁿ`.
    pub fn with_range(&self, v: VertexId) -> &[usize] {
        &self.by_range[v]
    }
}

type Twist<S> = Box<dyn Fn(&Path, &Path) -> S>;
type SegmentKey = (MultiDegree, MultiDegree, MultiDegree);
type PairMemo<V> = RefCell<BTreeMap<(MultiDegree, MultiDegree), Rc<V>>>;

/// A graph with a twisting function and memoized combinatorics.
pub struct System<S: Scalar> {
    graph: Arc<KGraph>,
    twist: Twist<S>,
    tol: f64,
    tables: RefCell<BTreeMap<MultiDegree, Rc<PathTable>>>,
    segments: RefCell<BTreeMap<SegmentKey, Rc<Vec<usize>>>>,
    products: PairMemo<Vec<usize>>,
    split_twists: PairMemo<Vec<S>>,
}

impl<S: Scalar> System<S> {
    /// Fails in exact mode unless every cocycle value is a power of i.
    pub fn new(c: &Cocycle, tol: f64) -> Result<Self, ModuleError> {
        if S::EXACT && !c.is_quarter_turn_valued() {
            return Err(ModuleError::NotRepresentable);
        }
        let owned = c.clone();
        let twist = move |a: &Path, b: &Path| S::from_phase(&owned.eval(a, b)).expect("representable phase");
        Ok(Self::with_twist(c.graph().clone(), twist, tol))
    }

    /// A system with an arbitrary twisting function, which need not be a
    /// cocycle. Used to show that checks detect broken inputs.
    pub fn with_twist(graph: Arc<KGraph>, twist: impl Fn(&Path, &Path) -> S + 'static, tol: f64) -> Self {
        System {
            graph,
            twist: Box::new(twist),
            tol,
            tables: RefCell::default(),
            segments: RefCell::default(),
            products: RefCell::default(),
            split_twists: RefCell::default(),
        }
    }

    pub fn graph(&self) -> &Arc<KGraph> {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.graph.k()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn zero_degree(&self) -> MultiDegree {
        MultiDegree::zero(self.graph.k())
    }

    pub fn twist(&self, a: &Path, b: &Path) -> S {
        (self.twist)(a, b)
    }

    pub fn approx_eq(&self, a: S, b: S) -> bool {
        a.approx_eq(b, self.tol)
    }

    pub fn table(&self, n: &MultiDegree) -> Rc<PathTable> {
        if let Some(t) = self.tables.borrow().get(n) {
            return t.clone();
        }
        let t = Rc::new(PathTable::new(&self.graph, n));
        self.tables.borrow_mut().insert(n.clone(), t.clone());
        t
    }

    /// For each `λ ∈ Λᵈ`, the index of `λ(a,b)` in `Λ^{b−a}`.
    pub fn segment_index(&self, d: &MultiDegree, a: &MultiDegree, b: &MultiDegree) -> Rc<Vec<usize>> {
        let key = (d.clone(), a.clone(), b.clone());
        if let Some(t) = self.segments.borrow().get(&key) {
            return t.clone();
        }
        let full = self.table(d);
        let part = self.table(&b.checked_sub(a).expect("segment bounds ordered"));
        let v: Vec<usize> = full
            .paths
            .iter()
            .map(|p| part.index_of(&self.graph.segment(p, a, b).expect("segment in range")).expect("segment is a path"))
            .collect();
        let v = Rc::new(v);
        self.segments.borrow_mut().insert(key, v.clone());
        v
    }

    /// Index of `μν` in `Λ^{m+n}` at position `i·|Λⁿ| + j`, or `usize::MAX`
    /// when `s(μ) ≠ r(ν)`.
    pub fn product_index(&self, m: &MultiDegree, n: &MultiDegree) -> Rc<Vec<usize>> {
        let key = (m.clone(), n.clone());
        if let Some(t) = self.products.borrow().get(&key) {
            return t.clone();
        }
        let d = m.add(n);
        let tn = self.table(n).len();
        let mut v = vec![usize::MAX; self.table(m).len() * tn];
        let heads = self.segment_index(&d, &self.zero_degree(), m);
        let tails = self.segment_index(&d, m, &d);
        for (idx, (&h, &t)) in heads.iter().zip(tails.iter()).enumerate() {
            v[h * tn + t] = idx;
        }
        let v = Rc::new(v);
        self.products.borrow_mut().insert(key, v.clone());
        v
    }

    /// `c(λ(0,m), λ(m,d))` for each `λ ∈ Λᵈ`.
    pub fn split_twist(&self, d: &MultiDegree, m: &MultiDegree) -> Rc<Vec<S>> {
        let key = (d.clone(), m.clone());
        if let Some(t) = self.split_twists.borrow().get(&key) {
            return t.clone();
        }
        let v: Vec<S> = self
            .table(d)
            .paths
            .iter()
            .map(|p| {
                let (a, b) = self.graph.factor(p, m).expect("factor in range");
                self.twist(&a, &b)
            })
            .collect();
        let v = Rc::new(v);
        self.split_twists.borrow_mut().insert(key, v.clone());
        v
    }

    pub fn check_degree(&self, expected: &MultiDegree, found: &MultiDegree) -> Result<(), ModuleError> {
        if expected == found {
            Ok(())
        } else {
            Err(ModuleError::DegreeMismatch { expected: expected.clone(), found: found.clone() })
        }
    }

    pub fn check_dominated(&self, small: &MultiDegree, large: &MultiDegree) -> Result<MultiDegree, ModuleError> {
        large
            .checked_sub(small)
            .ok_or_else(|| ModuleError::DegreeNotDominated { small: small.clone(), large: large.clone() })
    }

    pub fn label(&self, n: &MultiDegree, i: usize) -> String {
        self.graph.path_label(&self.table(n).paths[i])
    }
}
