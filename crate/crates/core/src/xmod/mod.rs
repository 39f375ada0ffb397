//! The finite-path product system `X = ⊔ Xₙ`: `Xₙ` is the space of functions
//! on `Λⁿ` with the `C(Λ⁰)`-valued inner product summed over sources, and the
//! twisted multiplication `(fg)(λ) = c(λ(0,m), λ(m,m+n)) f(λ(0,m)) g(λ(m,m+n))`.

pub mod checks;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::degree::MultiDegree;
use crate::kgraph::{Path, VertexId};
use crate::linalg::{spectral_norm, Matrix};
use crate::scalar::Scalar;
use crate::system::{ModuleError, System};

/// An element of `Xₙ`, indexed by the canonical order of `Λⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct XElem<S> {
    pub degree: MultiDegree,
    pub coeffs: Vec<S>,
}

/// A function on `Λ⁰`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFn<S>(pub Vec<S>);

/// An operator on `Xₙ`; block diagonal over the source vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct XOp<S> {
    pub degree: MultiDegree,
    pub matrix: Matrix<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl<S: Scalar> XElem<S> {
    pub fn scale(&self, s: S) -> Self {
        XElem { degree: self.degree.clone(), coeffs: self.coeffs.iter().map(|&x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        XElem {
            degree: self.degree.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        XElem { degree: self.degree.clone(), coeffs: self.coeffs.iter().map(|x| x.conj()).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.degree == other.degree && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.approx_eq(*b, tol))
    }
}

impl<S: Scalar> VertexFn<S> {
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.approx_eq(*b, tol))
    }

    pub fn scale(&self, s: S) -> Self {
        VertexFn(self.0.iter().map(|&x| x * s).collect())
    }
}

impl<S: Scalar> XOp<S> {
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "composing operators of different degrees");
        XOp { degree: self.degree.clone(), matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn add(&self, other: &Self) -> Self {
        XOp { degree: self.degree.clone(), matrix: self.matrix.add(&other.matrix) }
    }

    pub fn adjoint(&self) -> Self {
        XOp { degree: self.degree.clone(), matrix: self.matrix.adjoint() }
    }
}

pub fn x_zero<S: Scalar>(sys: &System<S>, n: &MultiDegree) -> XElem<S> {
    XElem { degree: n.clone(), coeffs: vec![S::zero(); sys.table(n).len()] }
}

/// The point mass `δ_λ`.
pub fn x_delta<S: Scalar>(sys: &System<S>, p: &Path) -> XElem<S> {
    let mut f = x_zero(sys, &p.degree);
    f.coeffs[sys.table(&p.degree).index_of(p).expect("path of the graph")] = S::one();
    f
}

pub fn x_basis<S: Scalar>(sys: &System<S>, n: &MultiDegree) -> Vec<XElem<S>> {
    let len = sys.table(n).len();
    (0..len)
        .map(|i| {
            let mut f = x_zero(sys, n);
            f.coeffs[i] = S::one();
            f
        })
        .collect()
}

pub fn x_zero_op<S: Scalar>(sys: &System<S>, n: &MultiDegree) -> XOp<S> {
    let len = sys.table(n).len();
    XOp { degree: n.clone(), matrix: Matrix::zeros(len, len) }
}

pub fn vertex_indicator<S: Scalar>(sys: &System<S>, v: VertexId) -> VertexFn<S> {
    let mut a = vec![S::zero(); sys.graph().vertex_count()];
    a[v] = S::one();
    VertexFn(a)
}

pub fn vertex_constant<S: Scalar>(sys: &System<S>, s: S) -> VertexFn<S> {
    VertexFn(vec![s; sys.graph().vertex_count()])
}

/// A vertex function viewed as an element of `X₀`.
pub fn vertex_elem<S: Scalar>(sys: &System<S>, a: &VertexFn<S>) -> XElem<S> {
    XElem { degree: sys.zero_degree(), coeffs: a.0.clone() }
}

/// `⟨f,g⟩(v) = Σ_{s(λ)=v} conj f(λ) g(λ)`.
pub fn x_inner<S: Scalar>(sys: &System<S>, f: &XElem<S>, g: &XElem<S>) -> Result<VertexFn<S>, ModuleError> {
    sys.check_degree(&f.degree, &g.degree)?;
    let t = sys.table(&f.degree);
    let mut out = vec![S::zero(); sys.graph().vertex_count()];
    for (i, p) in t.paths.iter().enumerate() {
        out[p.source] = out[p.source] + f.coeffs[i].conj() * g.coeffs[i];
    }
    Ok(VertexFn(out))
}

/// Left action by `a∘r` or right action by `a∘s`.
pub fn x_act<S: Scalar>(sys: &System<S>, a: &VertexFn<S>, f: &XElem<S>, side: Side) -> XElem<S> {
    let t = sys.table(&f.degree);
    let coeffs = t
        .paths
        .iter()
        .zip(&f.coeffs)
        .map(|(p, &x)| {
            let v = if side == Side::Left { p.range } else { p.source };
            a.0[v] * x
        })
        .collect();
    XElem { degree: f.degree.clone(), coeffs }
}

/// The twisted product in `X_{m+n}`.
pub fn x_tmul<S: Scalar>(sys: &System<S>, f: &XElem<S>, g: &XElem<S>) -> XElem<S> {
    let d = f.degree.add(&g.degree);
    let mut out = x_zero(sys, &d);
    let prod = sys.product_index(&f.degree, &g.degree);
    let twist = sys.split_twist(&d, &f.degree);
    let n = g.coeffs.len();
    let gs: Vec<usize> = g.support().collect();
    for i in f.support() {
        for &j in &gs {
            let idx = prod[i * n + j];
            if idx != usize::MAX {
                out.coeffs[idx] = out.coeffs[idx] + twist[idx] * f.coeffs[i] * g.coeffs[j];
            }
        }
    }
    out
}

/// `Θ_{f,g}`: entry `(λ,μ)` is `f(λ) conj g(μ)` when `s(λ) = s(μ)`.
pub fn x_theta<S: Scalar>(sys: &System<S>, f: &XElem<S>, g: &XElem<S>) -> Result<XOp<S>, ModuleError> {
    sys.check_degree(&f.degree, &g.degree)?;
    let t = sys.table(&f.degree);
    let mut m = Matrix::zeros(t.len(), t.len());
    for i in f.support() {
        for &j in t.with_source(t.paths[i].source) {
            let v = f.coeffs[i] * g.coeffs[j].conj();
            if !v.is_zero() {
                m.set(i, j, v);
            }
        }
    }
    Ok(XOp { degree: f.degree.clone(), matrix: m })
}

pub fn x_apply<S: Scalar>(op: &XOp<S>, f: &XElem<S>) -> XElem<S> {
    assert_eq!(op.degree, f.degree, "operator and vector degrees differ");
    XElem { degree: f.degree.clone(), coeffs: op.matrix.apply(&f.coeffs) }
}

/// `ι_m^n(S)`, determined by `ι(S)(xy) = (Sx)y`. On the basis,
/// `ι(S)[μ′ν, μν] = S[μ′,μ]·c(μ′,ν)·conj c(μ,ν)`.
pub fn x_iota<S: Scalar>(sys: &System<S>, op: &XOp<S>, n: &MultiDegree) -> Result<XOp<S>, ModuleError> {
    let m = &op.degree;
    let rest = sys.check_dominated(m, n)?;
    let prod = sys.product_index(m, &rest);
    let twist = sys.split_twist(n, m);
    let tn = sys.table(n);
    let tail_len = sys.table(&rest).len();
    let heads = sys.segment_index(n, &sys.zero_degree(), m);
    let tails = sys.segment_index(n, m, n);
    let mut by_col: Vec<Vec<(usize, S)>> = vec![Vec::new(); op.matrix.cols()];
    for (i, j, v) in op.matrix.entries() {
        by_col[j].push((i, v));
    }
    let mut out = Matrix::zeros(tn.len(), tn.len());
    for col in 0..tn.len() {
        let (mu, nu) = (heads[col], tails[col]);
        let undo = twist[col].conj();
        for &(mu2, s) in &by_col[mu] {
            let row = prod[mu2 * tail_len + nu];
            if row != usize::MAX {
                out.add_at(row, col, s * twist[row] * undo);
            }
        }
    }
    Ok(XOp { degree: n.clone(), matrix: out })
}

/// `φ_{Xₙ}(a)`, the diagonal operator `a(r(λ))`.
pub fn phi_x<S: Scalar>(sys: &System<S>, a: &VertexFn<S>, n: &MultiDegree) -> XOp<S> {
    let t = sys.table(n);
    let diag: Vec<S> = t.paths.iter().map(|p| a.0[p.range]).collect();
    XOp { degree: n.clone(), matrix: Matrix::diagonal(&diag) }
}

/// Weighted terms `(w, g)` with `φ_{Xₙ}(a) = Σ w·Θ_{g, conj g}`. Each `g` is
/// `√p(r(λ))·δ_λ` for a non-negative part `p` of `a`; the weight is the power
/// of i attached to that part.
pub fn phi_x_decompose<S: Scalar>(
    sys: &System<S>,
    a: &VertexFn<S>,
    n: &MultiDegree,
) -> Result<Vec<(S, XElem<S>)>, ModuleError> {
    let t = sys.table(n);
    let weights = [S::one(), -S::one(), S::i(), -S::i()];
    let parts: Vec<[S; 4]> = a.0.iter().map(|x| x.positive_parts()).collect();
    let mut out = Vec::new();
    for (k, &w) in weights.iter().enumerate() {
        for (i, p) in t.paths.iter().enumerate() {
            let v = parts[p.range][k];
            if v.is_zero() {
                continue;
            }
            let root = v.sqrt_real().ok_or_else(|| ModuleError::NoSquareRoot(alloc::format!("{v:?}")))?;
            let mut g = x_zero(sys, n);
            g.coeffs[i] = root;
            out.push((w, g));
        }
    }
    Ok(out)
}

/// `ι_m^{m∨n}(S)·ι_n^{m∨n}(T)`.
pub fn x_compact_align<S: Scalar>(sys: &System<S>, s: &XOp<S>, t: &XOp<S>) -> Result<XOp<S>, ModuleError> {
    let j = s.degree.join(&t.degree);
    Ok(x_iota(sys, s, &j)?.compose(&x_iota(sys, t, &j)?))
}

/// `‖f‖² = max_v Σ_{s(λ)=v} |f(λ)|²`.
pub fn x_module_norm<S: Scalar>(sys: &System<S>, f: &XElem<S>) -> f64 {
    let t = sys.table(&f.degree);
    let mut per_vertex = vec![0.0f64; sys.graph().vertex_count()];
    for (p, x) in t.paths.iter().zip(&f.coeffs) {
        per_vertex[p.source] += x.norm_sqr();
    }
    Float::sqrt(per_vertex.into_iter().fold(0.0, f64::max))
}

/// Operator norm on `Xₙ`: the largest spectral norm of a source block.
pub fn x_op_norm<S: Scalar>(sys: &System<S>, op: &XOp<S>) -> f64 {
    let t = sys.table(&op.degree);
    (0..sys.graph().vertex_count())
        .map(|v| {
            let idx = t.with_source(v);
            let block: Vec<Vec<_>> = op.matrix.block(idx, idx).into_iter().map(|r| r.into_iter().map(S::to_c64).collect()).collect();
            spectral_norm(&block)
        })
        .fold(0.0, f64::max)
}

/// Whether entries between paths with different sources vanish.
pub fn x_is_block_diagonal<S: Scalar>(sys: &System<S>, op: &XOp<S>) -> bool {
    let t = sys.table(&op.degree);
    op.matrix.entries().all(|(i, j, v)| t.paths[i].source == t.paths[j].source || v.approx_eq(S::zero(), sys.tol()))
}

/// `Σ K[λ,μ]·Θ_{δ_λ, δ_μ}`: the basis Θ-decomposition of an operator.
pub fn x_theta_terms<S: Scalar>(sys: &System<S>, op: &XOp<S>) -> Vec<(S, XElem<S>, XElem<S>)> {
    let t = sys.table(&op.degree);
    op.matrix
        .entries()
        .map(|(i, j, v)| (v, x_delta(sys, &t.paths[i]), x_delta(sys, &t.paths[j])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::Cocycle;
    use crate::kgraph::{f1, f2, single_vertex, KGraph};
    use crate::phase::Phase;
    use crate::scalar::GaussRat;
    use alloc::sync::Arc;
    use num_complex::Complex64;

    fn exact(g: KGraph) -> System<GaussRat> {
        System::new(&Cocycle::trivial(Arc::new(g)), 0.0).unwrap()
    }

    fn torus(turns: (i64, i64)) -> System<GaussRat> {
        System::new(&Cocycle::theta(Arc::new(f1()), Phase::turns(turns.0, turns.1)), 0.0).unwrap()
    }

    fn path(sys: &System<GaussRat>, word: &[&str]) -> Path {
        let g = sys.graph();
        let ids: Vec<_> = word.iter().map(|w| g.edge_by_name(w).unwrap()).collect();
        g.path_from_word(&ids).unwrap()
    }

    fn one() -> MultiDegree {
        MultiDegree::from([1])
    }

    #[test]
    fn inner_products_on_f2() {
        let sys = exact(f2());
        let g = sys.graph().clone();
        let (u, v) = (g.vertex_by_name("u").unwrap(), g.vertex_by_name("v").unwrap());
        let da = x_delta(&sys, &path(&sys, &["a"]));
        let db = x_delta(&sys, &path(&sys, &["b"]));
        assert_eq!(x_inner(&sys, &da, &da).unwrap(), vertex_indicator(&sys, v));
        assert_eq!(x_inner(&sys, &da, &db).unwrap(), VertexFn(vec![GaussRat::zero(); 2]));
        assert!(x_inner(&sys, &da, &x_zero(&sys, &sys.zero_degree())).is_err());
        assert_eq!(x_act(&sys, &vertex_indicator(&sys, u), &da, Side::Left), da);
        assert_eq!(x_act(&sys, &vertex_indicator(&sys, u), &da, Side::Right), x_zero(&sys, &one()));
        assert_eq!(x_act(&sys, &vertex_constant(&sys, GaussRat::one()), &db, Side::Left), db);
    }

    #[test]
    fn twisted_products_on_f1() {
        let sys = torus((1, 4));
        let e = x_delta(&sys, &path(&sys, &["e"]));
        let f = x_delta(&sys, &path(&sys, &["f"]));
        let p11 = sys.table(&MultiDegree::from([1, 1])).paths[0].clone();
        assert_eq!(x_tmul(&sys, &f, &e), x_delta(&sys, &p11).scale(GaussRat::i()));
        assert_eq!(x_tmul(&sys, &e, &f), x_delta(&sys, &p11));
        let a = vertex_constant(&sys, GaussRat::from_ints(2, 1));
        assert_eq!(x_tmul(&sys, &vertex_elem(&sys, &a), &f), x_act(&sys, &a, &f, Side::Left));
    }

    #[test]
    fn untwisted_product_is_concatenation() {
        let sys = exact(f2());
        let da = x_delta(&sys, &path(&sys, &["a"]));
        let db = x_delta(&sys, &path(&sys, &["b"]));
        assert_eq!(x_tmul(&sys, &da, &db), x_delta(&sys, &path(&sys, &["a", "b"])));
        assert_eq!(x_tmul(&sys, &da, &da), x_zero(&sys, &MultiDegree::from([2])));
    }

    #[test]
    fn theta_operators() {
        let sys = exact(f2());
        let da = x_delta(&sys, &path(&sys, &["a"]));
        let db = x_delta(&sys, &path(&sys, &["b"]));
        let t = x_theta(&sys, &da, &da).unwrap();
        assert_eq!(t.matrix.nnz(), 1);
        assert_eq!(t.matrix.get(0, 0), GaussRat::one());
        assert!(x_theta(&sys, &da, &db).unwrap().matrix.is_zero());
        assert!(x_theta(&sys, &da, &x_zero(&sys, &one())).unwrap().matrix.is_zero());
    }

    #[test]
    fn iota_on_torus_cancels_phases() {
        let sys = torus((1, 4));
        let e = x_delta(&sys, &path(&sys, &["e"]));
        let t = x_theta(&sys, &e, &e).unwrap();
        let n = MultiDegree::from([1, 1]);
        let i = x_iota(&sys, &t, &n).unwrap();
        assert_eq!(i.matrix, Matrix::identity(1));
        let f = x_delta(&sys, &path(&sys, &["f"]));
        let tf = x_theta(&sys, &f, &f).unwrap();
        assert_eq!(x_compact_align(&sys, &t, &tf).unwrap().matrix, Matrix::identity(1));
        assert!(x_iota(&sys, &i, &MultiDegree::from([1, 0])).is_err());
    }

    #[test]
    fn iota_from_degree_zero_is_left_action() {
        let sys = torus((1, 4));
        let a = VertexFn(vec![GaussRat::from_ints(3, -1)]);
        let op = phi_x(&sys, &a, &sys.zero_degree());
        let n = MultiDegree::from([2, 1]);
        assert_eq!(x_iota(&sys, &op, &n).unwrap(), phi_x(&sys, &a, &n));
    }

    #[test]
    fn iota_satisfies_defining_relation() {
        let sys = System::<Complex64>::new(&Cocycle::theta(Arc::new(single_vertex(&[2, 2])), Phase::radians(1, 1)), 1e-9).unwrap();
        let m = MultiDegree::from([0, 1]);
        let rest = MultiDegree::from([1, 1]);
        let n = m.add(&rest);
        let basis = x_basis(&sys, &m);
        let op = x_theta(&sys, &basis[0].add(&basis[1].scale(Complex64::new(0.5, 2.0))), &basis[1]).unwrap();
        let i = x_iota(&sys, &op, &n).unwrap();
        for x in &basis {
            for y in x_basis(&sys, &rest) {
                let lhs = x_apply(&i, &x_tmul(&sys, x, &y));
                let rhs = x_tmul(&sys, &x_apply(&op, x), &y);
                assert!(lhs.approx_eq(&rhs, 1e-9));
            }
        }
    }

    #[test]
    fn left_action_matrices() {
        let sys = exact(f2());
        let u = sys.graph().vertex_by_name("u").unwrap();
        let p = phi_x(&sys, &vertex_indicator(&sys, u), &one());
        let t = sys.table(&one());
        let a = t.index_of(&path(&sys, &["a"])).unwrap();
        let b = t.index_of(&path(&sys, &["b"])).unwrap();
        assert_eq!(p.matrix.get(a, a), GaussRat::one());
        assert_eq!(p.matrix.get(b, b), GaussRat::zero());
        assert_eq!(phi_x(&sys, &vertex_constant(&sys, GaussRat::one()), &one()).matrix, Matrix::identity(2));
    }

    fn reassemble(sys: &System<GaussRat>, terms: &[(GaussRat, XElem<GaussRat>)], n: &MultiDegree) -> XOp<GaussRat> {
        terms.iter().fold(x_zero_op(sys, n), |acc, (w, g)| {
            let t = x_theta(sys, g, &g.conj()).unwrap();
            acc.add(&XOp { degree: n.clone(), matrix: t.matrix.scale(*w) })
        })
    }

    #[test]
    fn left_action_decompositions() {
        let sys = exact(f2());
        let ones = vertex_constant(&sys, GaussRat::one());
        let terms = phi_x_decompose(&sys, &ones, &one()).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(reassemble(&sys, &terms, &one()), phi_x(&sys, &ones, &one()));
        assert!(phi_x_decompose(&sys, &vertex_constant(&sys, GaussRat::zero()), &one()).unwrap().is_empty());
        let general = VertexFn(vec![GaussRat::from_ints(-4, 9), GaussRat::from_ratio(1, 4)]);
        let terms = phi_x_decompose(&sys, &general, &one()).unwrap();
        assert_eq!(reassemble(&sys, &terms, &one()), phi_x(&sys, &general, &one()));
        assert!(phi_x_decompose(&sys, &VertexFn(vec![GaussRat::from_ints(2, 0); 2]), &one()).is_err());

        let t = torus((1, 4));
        let n = MultiDegree::from([1, 1]);
        let terms = phi_x_decompose(&t, &VertexFn(vec![GaussRat::from_ints(4, 0)]), &n).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].1.coeffs, vec![GaussRat::from_ints(2, 0)]);
    }

    #[test]
    fn norms() {
        let sys = System::<Complex64>::new(&Cocycle::trivial(Arc::new(single_vertex(&[3]))), 1e-9).unwrap();
        let f = XElem { degree: one(), coeffs: vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0), Complex64::new(0.0, 0.0)] };
        assert!((x_module_norm(&sys, &f) - 5.0).abs() < 1e-12);
        let t = x_theta(&sys, &f, &f).unwrap();
        assert!((x_op_norm(&sys, &t) - 25.0).abs() < 1e-9);
        assert!(x_is_block_diagonal(&sys, &t));
    }
}
