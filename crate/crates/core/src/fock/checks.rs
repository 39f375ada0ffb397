//! Relation checks on truncated Fock representations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::*;
use crate::kgraph::Path;
use crate::linalg::rank;
use crate::outcome::{spread_indices, Outcome};
use crate::xmod::{phi_x_decompose, vertex_indicator, x_basis, x_compact_align, x_delta, x_inner, x_theta, VertexFn};
use crate::ymod::checks::y_left_action_check;
use crate::ymod::{
    alpha, alpha_decompose_pointwise, alpha_k, alpha_reassemble, alpha_vertex, f_tilde_compacts, phi_y, y_act_right, y_add,
    y_basis, y_equal, y_inner, y_tmul,
};

/// A product system together with its Fock space, for checks that apply to
/// both `X` and `Y`.
pub trait FockModel<S: Scalar> {
    type Elem: Clone;
    fn sys(&self) -> &System<S>;
    fn space(&self) -> &FockSpace;
    /// Basis of the degree-`d` elements that act on the Fock space.
    fn basis(&self, d: &MultiDegree) -> Vec<Self::Elem>;
    fn label(&self, d: &MultiDegree, i: usize) -> String;
    fn creation(&self, e: &Self::Elem) -> Result<FockOp<S>, ModuleError>;
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `x·a` for `a` of degree zero.
    fn act_right(&self, x: &Self::Elem, a: &Self::Elem) -> Self::Elem;
    /// `⟨x, y⟩` as a degree-zero element.
    fn inner(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// `x + s·y`.
    fn combine(&self, x: &Self::Elem, s: S, y: &Self::Elem) -> Self::Elem;
}

pub struct XFock<'a, S: Scalar> {
    pub sys: &'a System<S>,
    pub space: &'a FockSpace,
}

pub struct YFock<'a, S: Scalar> {
    pub sys: &'a System<S>,
    pub space: &'a FockSpace,
}

impl<S: Scalar> FockModel<S> for XFock<'_, S> {
    type Elem = XElem<S>;
    fn sys(&self) -> &System<S> {
        self.sys
    }
    fn space(&self) -> &FockSpace {
        self.space
    }
    fn basis(&self, d: &MultiDegree) -> Vec<XElem<S>> {
        x_basis(self.sys, d)
    }
    fn label(&self, d: &MultiDegree, i: usize) -> String {
        self.sys.label(d, i)
    }
    fn creation(&self, e: &XElem<S>) -> Result<FockOp<S>, ModuleError> {
        creation_x(self.space, self.sys, e)
    }
    fn product(&self, a: &XElem<S>, b: &XElem<S>) -> XElem<S> {
        crate::xmod::x_tmul(self.sys, a, b)
    }
    fn act_right(&self, x: &XElem<S>, a: &XElem<S>) -> XElem<S> {
        crate::xmod::x_act(self.sys, &VertexFn(a.coeffs.clone()), x, crate::xmod::Side::Right)
    }
    fn inner(&self, x: &XElem<S>, y: &XElem<S>) -> XElem<S> {
        crate::xmod::vertex_elem(self.sys, &x_inner(self.sys, x, y).expect("same degree"))
    }
    fn combine(&self, x: &XElem<S>, s: S, y: &XElem<S>) -> XElem<S> {
        x.add(&y.scale(s))
    }
}

impl<S: Scalar> FockModel<S> for YFock<'_, S> {
    type Elem = CylElem<S>;
    fn sys(&self) -> &System<S> {
        self.sys
    }
    fn space(&self) -> &FockSpace {
        self.space
    }
    fn basis(&self, d: &MultiDegree) -> Vec<CylElem<S>> {
        y_basis(self.sys, d, &d.add(&self.space.slack))
    }
    fn label(&self, d: &MultiDegree, i: usize) -> String {
        self.sys.label(&d.add(&self.space.slack), i)
    }
    fn creation(&self, e: &CylElem<S>) -> Result<FockOp<S>, ModuleError> {
        creation_y(self.space, self.sys, e)
    }
    fn product(&self, a: &CylElem<S>, b: &CylElem<S>) -> CylElem<S> {
        y_tmul(self.sys, a, b)
    }
    fn act_right(&self, x: &CylElem<S>, a: &CylElem<S>) -> CylElem<S> {
        y_act_right(self.sys, x, a)
    }
    fn inner(&self, x: &CylElem<S>, y: &CylElem<S>) -> CylElem<S> {
        y_inner(self.sys, x, y).expect("same degree")
    }
    fn combine(&self, x: &CylElem<S>, s: S, y: &CylElem<S>) -> CylElem<S> {
        y_add(self.sys, x, &y.scale(s)).expect("same degree")
    }
}

fn compare<S: Scalar>(
    out: &mut Outcome,
    space: &FockSpace,
    sys: &System<S>,
    lhs: &FockOp<S>,
    rhs: &FockOp<S>,
    columns: &[usize],
    what: impl FnOnce() -> String,
) {
    let diff = lhs.first_difference_on(rhs, columns, sys.tol());
    out.record(diff.is_none(), || {
        let (i, j) = diff.expect("difference");
        format!(
            "{}: entry ({}, {}) is {:?} vs {:?}",
            what(),
            space.label(sys, i),
            space.label(sys, j),
            lhs.matrix.get(i, j).to_c64(),
            rhs.matrix.get(i, j).to_c64()
        )
    });
}

/// Representation axioms of the creation operators, on basis elements:
/// linearity, `ψ(x·a) = ψ(x)ψ₀(a)`, `ψ(x)*ψ(y) = ψ₀(⟨x,y⟩)` on `interior(d)`,
/// and `ψ(xy) = ψ(x)ψ(y)`.
pub fn rep_axioms_check<S: Scalar, M: FockModel<S>>(model: &M, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let (space, sys) = (model.space(), model.sys());
    let all: Vec<Vec<usize>> = space.blocks.iter().map(|b| (b.offset..b.offset + b.len).collect()).collect();
    let every: Vec<usize> = all.concat();
    let z = sys.zero_degree();
    let scalars = model.basis(&z);
    let scalar_ops: Vec<FockOp<S>> = scalars.iter().map(|a| model.creation(a).expect("degree 0")).collect();
    for b in &space.blocks {
        let d = &b.degree;
        let basis = model.basis(d);
        let ops: Vec<FockOp<S>> = basis.iter().map(|x| model.creation(x).expect("d <= N")).collect();
        let interior = space.interior(d);
        let n = basis.len();
        for idx in spread_indices(n * n, max) {
            let (i, j) = (idx / n, idx % n);
            let lhs = ops[i].adjoint().compose(&ops[j]);
            let rhs = model.creation(&model.inner(&basis[i], &basis[j])).expect("degree 0");
            compare(&mut out, space, sys, &lhs, &rhs, &interior, || {
                format!("ψ(x)*ψ(y) != ψ₀(⟨x,y⟩) at x={}, y={}", model.label(d, i), model.label(d, j))
            });
            let comb = model.creation(&model.combine(&basis[i], S::i(), &basis[j])).expect("d <= N");
            compare(&mut out, space, sys, &comb, &ops[i].add(&ops[j].scale(S::i())), &every, || {
                format!("ψ is not linear at x={}, y={}", model.label(d, i), model.label(d, j))
            });
        }
        for idx in spread_indices(n * scalars.len(), max) {
            let (i, k) = (idx / scalars.len(), idx % scalars.len());
            let lhs = model.creation(&model.act_right(&basis[i], &scalars[k])).expect("d <= N");
            compare(&mut out, space, sys, &lhs, &ops[i].compose(&scalar_ops[k]), &every, || {
                format!("ψ(x·a) != ψ(x)ψ₀(a) at x={}, a={}", model.label(d, i), model.label(&z, k))
            });
        }
        for e in space.truncation.checked_sub(d).expect("d <= N").below() {
            let other = model.basis(&e);
            let m = other.len();
            for idx in spread_indices(n * m, max) {
                let (i, j) = (idx / m, idx % m);
                let lhs = model.creation(&model.product(&basis[i], &other[j])).expect("d + e <= N");
                let rhs = ops[i].compose(&model.creation(&other[j]).expect("e <= N"));
                compare(&mut out, space, sys, &lhs, &rhs, &every, || {
                    format!("ψ(xy) != ψ(x)ψ(y) at x={}, y={}", model.label(d, i), model.label(&e, j))
                });
            }
        }
    }
    out
}

/// `U_z ψ(x) U_z* = z^{d(x)} ψ(x)` for the grading unitary `U_z`.
pub fn gauge_check<S: Scalar, M: FockModel<S>>(model: &M, z: &[S]) -> Outcome {
    let mut out = Outcome::new();
    let space = model.space();
    let u = space.grading(z);
    let ua = u.adjoint();
    for b in &space.blocks {
        let w = b.degree.entries().iter().zip(z).fold(S::one(), |acc, (&e, &zi)| (0..e).fold(acc, |a, _| a * zi));
        for (i, x) in model.basis(&b.degree).iter().enumerate() {
            let c = model.creation(x).expect("d <= N");
            let lhs = u.mul(&c.matrix).mul(&ua);
            out.record(lhs.approx_eq(&c.matrix.scale(w), model.sys().tol()), || {
                format!("gauge action does not scale ψ({}) by z^{}", model.label(&b.degree, i), b.degree)
            });
        }
    }
    out
}

fn x_creation<'a, S: Scalar>(space: &'a FockSpace, sys: &'a System<S>) -> impl Fn(&Path) -> Result<FockOp<S>, ModuleError> + 'a {
    move |p| creation_x(space, sys, &x_delta(sys, p))
}

fn psi_creation<'a, S: Scalar>(space: &'a FockSpace, sys: &'a System<S>) -> impl Fn(&Path) -> Result<FockOp<S>, ModuleError> + 'a {
    move |p| creation_y(space, sys, &alpha(sys, &p.degree, &x_delta(sys, p)).expect("α_{n,n}"))
}

/// Nica covariance `ψ^{(m)}(S)ψ^{(n)}(T) = ψ^{(m∨n)}(ι S · ι T)` with
/// `ψ^{(p)}(K) = Σ K[λ,μ] ψ(δ_λ)ψ(δ_μ)*`, on `interior(m∨n)`. Also checks
/// that `ψ^{(p)}` agrees with the block embedding of `ι_p^q(K)`.
pub fn nica_check<S: Scalar>(space: &FockSpace, sys: &System<S>, s: &XOp<S>, t: &XOp<S>) -> Outcome {
    let mut out = Outcome::new();
    let j = s.degree.join(&t.degree);
    if !j.le(&space.truncation) {
        out.record(false, || format!("m∨n = {j} exceeds the truncation {}", space.truncation));
        return out;
    }
    let c = x_creation(space, sys);
    let ps = compact_via_creation(space, sys, s, &c).expect("m <= N");
    let pt = compact_via_creation(space, sys, t, &c).expect("n <= N");
    let joined = x_compact_align(sys, s, t).expect("join dominates");
    let rhs = compact_via_creation(space, sys, &joined, &c).expect("m∨n <= N");
    let interior = space.interior(&j);
    compare(&mut out, space, sys, &ps.compose(&pt), &rhs, &interior, || "Nica covariance fails".into());
    let every = space.interior(&sys.zero_degree());
    for (k, name) in [(s, "S"), (t, "T"), (&joined, "ιS·ιT")] {
        let emb = compact_x(space, sys, k).expect("degree <= N");
        let via = compact_via_creation(space, sys, k, &c).expect("degree <= N");
        compare(&mut out, space, sys, &via, &emb, &every, || format!("ψ^(p)({name}) differs from the block embedding"));
    }
    out
}

/// `nica_check` over basis `Θ` pairs of degrees `m` and `n`.
pub fn nica_basis_check<S: Scalar>(space: &FockSpace, sys: &System<S>, m: &MultiDegree, n: &MultiDegree, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let (bm, bn) = (x_basis(sys, m), x_basis(sys, n));
    let (p, q) = (bm.len(), bn.len());
    for idx in spread_indices(p * p * q * q, max) {
        let (i1, rest) = (idx / (p * q * q), idx % (p * q * q));
        let (i2, rest) = (rest / (q * q), rest % (q * q));
        let (j1, j2) = (rest / q, rest % q);
        let s = x_theta(sys, &bm[i1], &bm[i2]).expect("same degree");
        let t = x_theta(sys, &bn[j1], &bn[j2]).expect("same degree");
        let o = nica_check(space, sys, &s, &t);
        if let Some(w) = &o.failure {
            let w = w.clone();
            out.record(false, || {
                format!("Θ({},{}), Θ({},{}): {w}", sys.label(m, i1), sys.label(m, i2), sys.label(n, j1), sys.label(n, j2))
            });
        } else {
            out.record(true, String::new);
        }
    }
    out
}

/// Result of the twisted Cuntz–Krieger relation check.
#[derive(Clone, Debug, PartialEq)]
pub struct CkReport {
    pub outcome: Outcome,
    /// Rank of `Σ_v (s_v − Σ_{λ∈vΛⁿ} s_λ s_λ*)`.
    pub defect_rank: usize,
    /// Blocks on which the Cuntz–Krieger sum falls short of `s_v`.
    pub defect_blocks: Vec<MultiDegree>,
}

/// With `s_λ = ψ(δ_λ)`: `s_μ s_ν = c(μ,ν) s_{μν}`, `s_λ* s_λ = s_{s(λ)}` on
/// `interior(d(λ))`, `s_v s_w = δ_{v,w} s_v`, and the Cuntz–Krieger sum at
/// degree `n`. The sum holds on blocks `q ≥ n`; on the remaining blocks it
/// vanishes, and the defect there (the Toeplitz corner) is reported.
pub fn ck_relations_check<S: Scalar>(space: &FockSpace, sys: &System<S>, n: &MultiDegree, max: usize) -> CkReport {
    let mut out = Outcome::new();
    let g = sys.graph().clone();
    let c = x_creation(space, sys);
    let every = space.interior(&sys.zero_degree());
    let vertex_ops: Vec<FockOp<S>> = (0..g.vertex_count()).map(|v| c(&g.vertex_path(v)).expect("degree 0")).collect();
    for (v, sv) in vertex_ops.iter().enumerate() {
        for (w, sw) in vertex_ops.iter().enumerate() {
            let want = if v == w { sv.clone() } else { FockOp::zero(space) };
            compare(&mut out, space, sys, &sv.compose(sw), &want, &every, || format!("s_v s_w relation fails at v={v}, w={w}"));
        }
    }
    for b in &space.blocks {
        let a = &b.degree;
        let ta = sys.table(a);
        for (li, lam) in ta.paths.iter().enumerate() {
            let sl = c(lam).expect("a <= N");
            compare(&mut out, space, sys, &sl.adjoint().compose(&sl), &vertex_ops[lam.source], &space.interior(a), || {
                format!("s_λ* s_λ != s_s(λ) at λ={}", sys.label(a, li))
            });
        }
        for e in space.truncation.checked_sub(a).expect("a <= N").below() {
            let te = sys.table(&e);
            let (p, q) = (ta.len(), te.len());
            for idx in spread_indices(p * q, max) {
                let (mu, nu) = (&ta.paths[idx / q], &te.paths[idx % q]);
                let lhs = c(mu).expect("a <= N").compose(&c(nu).expect("e <= N"));
                let rhs = match g.compose(mu, nu) {
                    Ok(mn) => c(&mn).expect("a + e <= N").scale(sys.twist(mu, nu)),
                    Err(_) => FockOp::zero(space),
                };
                compare(&mut out, space, sys, &lhs, &rhs, &every, || {
                    format!("s_μ s_ν != c(μ,ν) s_μν at μ={}, ν={}", g.path_label(mu), g.path_label(nu))
                });
            }
        }
    }
    let mut defect = FockOp::zero(space);
    let mut defect_blocks = Vec::new();
    if !n.le(&space.truncation) {
        out.record(false, || format!("degree {n} exceeds the truncation {}", space.truncation));
        return CkReport { outcome: out, defect_rank: 0, defect_blocks };
    }
    let tn = sys.table(n);
    let upper = space.columns_where(|q| n.le(q));
    let lower = space.columns_where(|q| !n.le(q));
    for (v, sv) in vertex_ops.iter().enumerate() {
        let mut sum = FockOp::zero(space);
        for &i in tn.with_range(v) {
            let sl = c(&tn.paths[i]).expect("n <= N");
            sum = sum.add(&sl.compose(&sl.adjoint()));
        }
        compare(&mut out, space, sys, &sum, sv, &upper, || format!("Cuntz–Krieger sum fails at v={} above degree {n}", g.vertex_name(v)));
        compare(&mut out, space, sys, &sum, &FockOp::zero(space), &lower, || {
            format!("Cuntz–Krieger sum does not vanish below degree {n} at v={}", g.vertex_name(v))
        });
        defect = defect.add(&sv.sub(&sum));
    }
    let mut corner = FockOp::zero(space);
    for &i in &lower {
        corner.matrix.set(i, i, S::one());
    }
    compare(&mut out, space, sys, &defect, &corner, &every, || "defect is not the projection onto the low-degree corner".into());
    for b in &space.blocks {
        if !n.le(&b.degree) {
            defect_blocks.push(b.degree.clone());
        }
    }
    let defect_rank = rank(&defect.matrix.to_dense(), sys.tol());
    CkReport { outcome: out, defect_rank, defect_blocks }
}

/// The ratio `r` with `s_f s_e = r·s_e s_f` on `interior(d(e) + d(f))`.
pub fn commutation_phase<S: Scalar>(space: &FockSpace, sys: &System<S>, e: &Path, f: &Path) -> Result<S, String> {
    let c = x_creation(space, sys);
    let (se, sf) = (c(e).map_err(|x| format!("{x}"))?, c(f).map_err(|x| format!("{x}"))?);
    let cols = space.interior(&e.degree.add(&f.degree));
    let fe = sf.compose(&se).compress(&cols);
    let ef = se.compose(&sf).compress(&cols);
    let Some((i, j, v)) = ef.matrix.entries().find(|(_, _, v)| !v.is_zero()) else {
        return Err("s_e s_f vanishes on the interior".into());
    };
    let r = fe.matrix.get(i, j) * v.inv().expect("nonzero entry");
    match fe.first_difference_on(&ef.scale(r), &cols, sys.tol()) {
        None => Ok(r),
        Some((a, b)) => Err(format!("s_f s_e is not a multiple of s_e s_f: entry ({}, {})", space.label(sys, a), space.label(sys, b))),
    }
}

/// For every square `ef = f′e′`: `s_e s_f = c(e,f)·conj c(f′,e′)·s_{f′} s_{e′}`
/// on `interior(d(e) + d(f))`, for squares whose degree fits in `N`.
pub fn commutation_check<S: Scalar>(space: &FockSpace, sys: &System<S>, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let g = sys.graph().clone();
    let c = x_creation(space, sys);
    let squares: Vec<_> = g.squares().collect();
    for idx in spread_indices(squares.len(), max) {
        let ((e, f), (f2, e2)) = squares[idx];
        let p = |x: usize| g.edge_path(x);
        let (pe, pf, pf2, pe2) = (p(e), p(f), p(f2), p(e2));
        let d = pe.degree.add(&pf.degree);
        if !d.le(&space.truncation) {
            continue;
        }
        let lhs = c(&pe).expect("fits").compose(&c(&pf).expect("fits"));
        let ratio = sys.twist(&pe, &pf) * sys.twist(&pf2, &pe2).conj();
        let rhs = c(&pf2).expect("fits").compose(&c(&pe2).expect("fits")).scale(ratio);
        let name = |x: usize| g.edge(x).name.clone();
        compare(&mut out, space, sys, &lhs, &rhs, &space.interior(&d), || {
            format!("commutation fails for the square {}{} = {}{}", name(e), name(f), name(f2), name(e2))
        });
    }
    out
}

/// `ψ^{(n)}(φ_X(a)) − ψ₀(a) = i_Y^{(n)}(φ_Y(α₀ a)) − i_{Y,0}(α₀ a)`, where
/// `ψ^{(n)}(φ_X(a))` is assembled from the rank-one decomposition of
/// `φ_X(a)` through `ψ_n = creation ∘ α_n`. Compared on `interior(n)`.
pub fn cp_identity_check<S: Scalar>(space: &FockSpace, sys: &System<S>, a: &VertexFn<S>, n: &MultiDegree) -> Outcome {
    let mut out = Outcome::new();
    let terms = match phi_x_decompose(sys, a, n) {
        Ok(t) => t,
        Err(e) => {
            out.record(false, || format!("decomposition of φ_X(a) failed: {e}"));
            return out;
        }
    };
    let psi = |g: &XElem<S>| creation_y(space, sys, &alpha(sys, n, g).expect("α_{n,n}"));
    let a0 = alpha_vertex(sys, a);
    let psi0 = creation_y(space, sys, &a0).expect("degree 0");
    let mut lhs = FockOp::zero(space);
    for (w, g) in &terms {
        match (psi(g), psi(&g.conj())) {
            (Ok(x), Ok(y)) => lhs = lhs.add(&x.compose(&y.adjoint()).scale(*w)),
            (Err(e), _) | (_, Err(e)) => {
                out.record(false, || format!("ψ_n failed: {e}"));
                return out;
            }
        }
    }
    let lhs = lhs.sub(&psi0);
    let rhs = match (compact_y(space, sys, &phi_y(sys, &a0, n)), compact_y(space, sys, &phi_y(sys, &a0, &sys.zero_degree()))) {
        (Ok(x), Ok(y)) => x.sub(&y),
        (Err(e), _) | (_, Err(e)) => {
            out.record(false, || format!("embedding failed: {e}"));
            return out;
        }
    };
    compare(&mut out, space, sys, &lhs, &rhs, &space.interior(n), || format!("CP identity fails at degree {n}"));
    out
}

/// The ψ model: `ψ_n = creation ∘ α_n` is a representation, `ψ_n(f)ψ_n(g)*`
/// is the embedding of `α^K(Θ_{f,g})`, Nica covariance holds through `α^K`,
/// and `f ↦ ψ_n(f)` is injective for every `n ≤ N`.
pub fn psi_check<S: Scalar>(space: &FockSpace, sys: &System<S>, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let psi = psi_creation(space, sys);
    let every = space.interior(&sys.zero_degree());
    let nv = sys.graph().vertex_count();
    let scalars: Vec<VertexFn<S>> = (0..nv).map(|v| vertex_indicator(sys, v)).collect();
    let psi_elem = |f: &XElem<S>| creation_y(space, sys, &alpha(sys, &f.degree, f).expect("α_{n,n}")).expect("degree <= N");
    let psi0 = |a: &VertexFn<S>| creation_y(space, sys, &alpha_vertex(sys, a)).expect("degree 0");
    for b in &space.blocks {
        let n = &b.degree;
        let basis = x_basis(sys, n);
        let tn = sys.table(n);
        let ops: Vec<FockOp<S>> = tn.paths.iter().map(|p| psi(p).expect("n <= N")).collect();
        let len = basis.len();
        let interior = space.interior(n);
        for idx in spread_indices(len * len, max) {
            let (i, j) = (idx / len, idx % len);
            let ip = x_inner(sys, &basis[i], &basis[j]).expect("same degree");
            compare(&mut out, space, sys, &ops[i].adjoint().compose(&ops[j]), &psi0(&ip), &interior, || {
                format!("ψ(f)*ψ(g) != ψ₀(⟨f,g⟩) at f={}, g={}", sys.label(n, i), sys.label(n, j))
            });
            let th = x_theta(sys, &basis[i], &basis[j]).expect("same degree");
            let emb = compact_y(space, sys, &alpha_k(sys, &th)).expect("depth n");
            compare(&mut out, space, sys, &ops[i].compose(&ops[j].adjoint()), &emb, &every, || {
                format!("ψ(f)ψ(g)* differs from i_Y(α^K(Θ)) at f={}, g={}", sys.label(n, i), sys.label(n, j))
            });
        }
        for (i, f) in basis.iter().enumerate() {
            for (v, a) in scalars.iter().enumerate() {
                let fa = crate::xmod::x_act(sys, a, f, crate::xmod::Side::Right);
                compare(&mut out, space, sys, &psi_elem(&fa), &ops[i].compose(&psi0(a)), &every, || {
                    format!("ψ(f·a) != ψ(f)ψ₀(a) at f={}, v={v}", sys.label(n, i))
                });
            }
        }
        for e in space.truncation.checked_sub(n).expect("n <= N").below() {
            let te = sys.table(&e);
            for idx in spread_indices(len * te.len(), max) {
                let (i, j) = (idx / te.len(), idx % te.len());
                let g = x_delta(sys, &te.paths[j]);
                let lhs = psi_elem(&crate::xmod::x_tmul(sys, &basis[i], &g));
                compare(&mut out, space, sys, &lhs, &ops[i].compose(&psi_elem(&g)), &every, || {
                    format!("ψ(fg) != ψ(f)ψ(g) at f={}, g={}", sys.label(n, i), sys.label(&e, j))
                });
            }
        }
        let mut positions = alloc::collections::BTreeMap::new();
        for o in &ops {
            for (i, j, v) in o.matrix.entries() {
                if !v.is_zero() {
                    let next = positions.len();
                    positions.entry((i, j)).or_insert(next);
                }
            }
        }
        let rows: Vec<Vec<S>> = ops
            .iter()
            .map(|o| {
                let mut row = alloc::vec![S::zero(); positions.len()];
                for (i, j, v) in o.matrix.entries() {
                    if let Some(&k) = positions.get(&(i, j)) {
                        row[k] = v;
                    }
                }
                row
            })
            .collect();
        let r = rank(&rows, sys.tol());
        out.record(r == len, || format!("f ↦ ψ_{n}(f) has rank {r} on a space of dimension {len}"));
    }
    for bm in &space.blocks {
        for bn in &space.blocks {
            let (m, n) = (&bm.degree, &bn.degree);
            let (pm, pn) = (sys.table(m).len(), sys.table(n).len());
            let (xm, xn) = (x_basis(sys, m), x_basis(sys, n));
            for idx in spread_indices(pm * pm * pn * pn, max) {
                let (i1, rest) = (idx / (pm * pn * pn), idx % (pm * pn * pn));
                let (i2, rest) = (rest / (pn * pn), rest % (pn * pn));
                let (j1, j2) = (rest / pn, rest % pn);
                let left = psi_elem(&xm[i1]).compose(&psi_elem(&xm[i2]).adjoint());
                let right = psi_elem(&xn[j1]).compose(&psi_elem(&xn[j2]).adjoint());
                let s = x_theta(sys, &xm[i1], &xm[i2]).expect("same degree");
                let t = x_theta(sys, &xn[j1], &xn[j2]).expect("same degree");
                let k = alpha_k(sys, &x_compact_align(sys, &s, &t).expect("join"));
                let emb = compact_y(space, sys, &k).expect("join <= N");
                compare(&mut out, space, sys, &left.compose(&right), &emb, &every, || {
                    format!(
                        "Nica covariance through α^K fails at Θ({},{}), Θ({},{})",
                        sys.label(m, i1),
                        sys.label(m, i2),
                        sys.label(n, j1),
                        sys.label(n, j2)
                    )
                });
            }
        }
    }
    out
}

/// Every Fock basis vector `α_{n,m}(δ_λ)` (block `n`, depth `m = n + s`)
/// is reproduced from ψ-images: with `α_{n,m}(δ_λ) = Σ α_n(ξ_i)·α₀(f̃)`,
/// `ψ(α_{n,m}(δ_λ)) = Σ ψ_n(ξ_i)[Σ_j ψ(α f̃)ψ(α η_j)* − Δ(f̃)]` where the
/// defect `Δ(f̃) = i^{(m−n)}(φ_Y(α₀ f̃)) − i_{Y,0}(α₀ f̃)` vanishes on blocks
/// `q ≥ m − n`. Also checks the element-level decomposition of every
/// depth-`D` basis vector of each `Yₙ`, and the rank-one decomposition of
/// the left action by vertex indicators.
pub fn surjectivity_check<S: Scalar>(space: &FockSpace, sys: &System<S>) -> Outcome {
    let mut out = Outcome::new();
    let every = space.interior(&sys.zero_degree());
    let s = &space.slack;
    let full_depth = space.depth();
    let upper = space.columns_where(|q| s.le(q));
    let psi = psi_creation(space, sys);
    for b in &space.blocks {
        let n = &b.degree;
        let m = &b.depth;
        let tm = sys.table(m);
        for (li, lam) in tm.paths.iter().enumerate() {
            let f = x_delta(sys, lam);
            let target = creation_y(space, sys, &alpha(sys, n, &f).expect("n <= m")).expect("basis vector acts");
            let pieces = alpha_decompose_pointwise(sys, &f, n).expect("point masses decompose");
            let mut assembled = FockOp::zero(space);
            for (_, dec) in &pieces {
                let ft = CylElem { module_degree: sys.zero_degree(), depth: s.clone(), coeffs: dec.f_tilde.coeffs.clone() };
                let c_ft = creation_y(space, sys, &alpha(sys, s, &dec.f_tilde).expect("same degree")).expect("fits");
                let mut bracket = FockOp::zero(space);
                for eta in &dec.eta {
                    let c_eta = creation_y(space, sys, &alpha(sys, s, eta).expect("same degree")).expect("fits");
                    bracket = bracket.add(&c_ft.compose(&c_eta.adjoint()));
                }
                let defect = compact_y(space, sys, &phi_y(sys, &ft, s))
                    .expect("depth fits")
                    .sub(&creation_y(space, sys, &ft).expect("degree 0"));
                compare(&mut out, space, sys, &defect, &FockOp::zero(space), &upper, || {
                    format!("defect does not vanish above degree {s} for λ={}", sys.label(m, li))
                });
                let bracket = bracket.sub(&defect);
                for xi in &dec.xi {
                    let p = &sys.table(n).paths[xi.support().next().expect("indicator")];
                    assembled = assembled.add(&psi(p).expect("n <= N").compose(&bracket));
                }
            }
            compare(&mut out, space, sys, &assembled, &target, &every, || {
                format!("basis vector {} in block {n} is not reproduced", sys.label(m, li))
            });
        }
        let td = sys.table(&full_depth);
        for (li, lam) in td.paths.iter().enumerate() {
            let f = x_delta(sys, lam);
            let want = alpha(sys, n, &f).expect("n <= D");
            for (_, dec) in alpha_decompose_pointwise(sys, &f, n).expect("point masses decompose") {
                let ok = y_equal(sys, &alpha_reassemble(sys, &dec), &want);
                out.record(ok, || format!("depth-{full_depth} vector {} of Y_{n} is not reassembled", sys.label(&full_depth, li)));
                let ft = CylElem { module_degree: sys.zero_degree(), depth: dec.f_tilde.degree.clone(), coeffs: dec.f_tilde.coeffs.clone() };
                let ok = crate::ymod::yop_equal(sys, &f_tilde_compacts(sys, &dec), &phi_y(sys, &ft, &dec.f_tilde.degree));
                out.record(ok, || format!("left action of f̃ is not Σ Θ for {}", sys.label(&full_depth, li)));
            }
        }
        for v in 0..sys.graph().vertex_count() {
            out.absorb(y_left_action_check(sys, &vertex_indicator(sys, v), n));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::Cocycle;
    use crate::kgraph::{f1, f2};
    use crate::phase::Phase;
    use crate::scalar::GaussRat;
    use crate::xmod::vertex_constant;
    use alloc::sync::Arc;
    use alloc::vec;
    use num_complex::Complex64;

    fn d(x: &[u32]) -> MultiDegree {
        MultiDegree::new(x.to_vec())
    }

    fn torus(t: Phase) -> System<Complex64> {
        System::new(&Cocycle::theta(Arc::new(f1()), t), 1e-9).unwrap()
    }

    fn f2_exact() -> System<GaussRat> {
        System::new(&Cocycle::trivial(Arc::new(f2())), 0.0).unwrap()
    }

    #[test]
    fn representation_axioms_on_fixtures() {
        let sys = f2_exact();
        let space = FockSpace::x(&sys, &d(&[2]));
        assert!(rep_axioms_check(&XFock { sys: &sys, space: &space }, 1000).passed());
        let yspace = FockSpace::y(&sys, &d(&[2]), &d(&[3])).unwrap();
        let o = rep_axioms_check(&YFock { sys: &sys, space: &yspace }, 1000);
        assert!(o.passed(), "{o:?}");
        let sys = torus(Phase::radians(1, 1));
        let space = FockSpace::x(&sys, &d(&[2, 2]));
        assert!(rep_axioms_check(&XFock { sys: &sys, space: &space }, 1000).passed());
        let yspace = FockSpace::y(&sys, &d(&[1, 1]), &d(&[2, 2])).unwrap();
        assert!(rep_axioms_check(&YFock { sys: &sys, space: &yspace }, 1000).passed());
    }

    /// Creation operators from the untwisted product, with products formed in
    /// the twisted system.
    struct DroppedPhase<'a> {
        twisted: XFock<'a, Complex64>,
        flat: XFock<'a, Complex64>,
    }

    impl FockModel<Complex64> for DroppedPhase<'_> {
        type Elem = XElem<Complex64>;
        fn sys(&self) -> &System<Complex64> {
            self.twisted.sys
        }
        fn space(&self) -> &FockSpace {
            self.twisted.space
        }
        fn basis(&self, d: &MultiDegree) -> Vec<XElem<Complex64>> {
            self.twisted.basis(d)
        }
        fn label(&self, d: &MultiDegree, i: usize) -> String {
            self.twisted.label(d, i)
        }
        fn creation(&self, e: &XElem<Complex64>) -> Result<FockOp<Complex64>, ModuleError> {
            self.flat.creation(e)
        }
        fn product(&self, a: &XElem<Complex64>, b: &XElem<Complex64>) -> XElem<Complex64> {
            self.twisted.product(a, b)
        }
        fn act_right(&self, x: &XElem<Complex64>, a: &XElem<Complex64>) -> XElem<Complex64> {
            self.twisted.act_right(x, a)
        }
        fn inner(&self, x: &XElem<Complex64>, y: &XElem<Complex64>) -> XElem<Complex64> {
            self.twisted.inner(x, y)
        }
        fn combine(&self, x: &XElem<Complex64>, s: Complex64, y: &XElem<Complex64>) -> XElem<Complex64> {
            self.twisted.combine(x, s, y)
        }
    }

    #[test]
    fn dropped_phase_is_detected() {
        let twisted = torus(Phase::turns(1, 4));
        let flat = System::with_twist(twisted.graph().clone(), |_, _| Complex64::new(1.0, 0.0), 1e-9);
        let space = FockSpace::x(&twisted, &d(&[1, 1]));
        let model = DroppedPhase { twisted: XFock { sys: &twisted, space: &space }, flat: XFock { sys: &flat, space: &space } };
        let o = rep_axioms_check(&model, 1000);
        let w = o.failure.expect("phase loss is detected");
        assert!(w.contains("ψ(xy) != ψ(x)ψ(y)"), "{w}");
        assert!(w.contains("x=f") && w.contains("y=e"), "{w}");
    }

    #[test]
    fn torus_phase() {
        for (t, want) in [(Phase::one(), 0.0), (Phase::turns(1, 6), core::f64::consts::FRAC_PI_3), (Phase::turns(1, 4), core::f64::consts::FRAC_PI_2)] {
            let sys = torus(t);
            let g = sys.graph().clone();
            let space = FockSpace::x(&sys, &d(&[2, 2]));
            let e = g.path_from_word(&[g.edge_by_name("e").unwrap()]).unwrap();
            let f = g.path_from_word(&[g.edge_by_name("f").unwrap()]).unwrap();
            let r = commutation_phase(&space, &sys, &e, &f).unwrap();
            assert!((r - Complex64::from_polar(1.0, want)).norm() < 1e-12, "{r}");
        }
    }

    #[test]
    fn commutation_on_grid() {
        let sys = System::<Complex64>::new(&Cocycle::theta(Arc::new(crate::kgraph::single_vertex(&[2, 2])), Phase::radians(1, 1)), 1e-9).unwrap();
        let space = FockSpace::x(&sys, &d(&[1, 2]));
        let o = commutation_check(&space, &sys, 100);
        assert!(o.passed() && o.cases > 0, "{o:?}");
        let flat = System::with_twist(sys.graph().clone(), |a: &Path, _: &Path| Complex64::from_polar(1.0, a.degree.get(1) as f64), 1e-9);
        assert!(!commutation_check(&space, &flat, 100).passed());
    }

    #[test]
    fn gauge_on_both_systems() {
        let sys = f2_exact();
        let space = FockSpace::x(&sys, &d(&[2]));
        assert!(gauge_check(&XFock { sys: &sys, space: &space }, &[GaussRat::i()]).passed());
        let sys = torus(Phase::turns(1, 8));
        let yspace = FockSpace::y(&sys, &d(&[1, 1]), &d(&[2, 1])).unwrap();
        let z = [Complex64::from_polar(1.0, 0.7), Complex64::from_polar(1.0, 2.0)];
        assert!(gauge_check(&YFock { sys: &sys, space: &yspace }, &z).passed());
    }

    #[test]
    fn nica_on_torus_and_f2() {
        let sys = torus(Phase::turns(1, 4));
        let space = FockSpace::x(&sys, &d(&[2, 2]));
        let b = |deg: &[u32]| x_basis(&sys, &d(deg))[0].clone();
        let s = x_theta(&sys, &b(&[1, 0]), &b(&[1, 0])).unwrap();
        let t = x_theta(&sys, &b(&[0, 1]), &b(&[0, 1])).unwrap();
        assert!(nica_check(&space, &sys, &s, &t).passed());
        assert!(nica_basis_check(&space, &sys, &d(&[1, 1]), &d(&[0, 1]), 100).passed());
        let sys = f2_exact();
        let space = FockSpace::x(&sys, &d(&[3]));
        let o = nica_basis_check(&space, &sys, &d(&[1]), &d(&[2]), 1000);
        assert!(o.passed(), "{o:?}");
        assert!(!nica_check(&space, &sys, &x_theta(&sys, &x_basis(&sys, &d(&[4]))[0], &x_basis(&sys, &d(&[4]))[0]).unwrap(), &x_theta(&sys, &x_basis(&sys, &d(&[1]))[0], &x_basis(&sys, &d(&[1]))[0]).unwrap()).passed());
    }

    #[test]
    fn cuntz_krieger_on_f2() {
        let sys = f2_exact();
        let space = FockSpace::x(&sys, &d(&[1]));
        let r = ck_relations_check(&space, &sys, &d(&[1]), 100);
        assert!(r.outcome.passed(), "{r:?}");
        assert_eq!(r.defect_rank, 2);
        assert_eq!(r.defect_blocks, vec![d(&[0])]);
        let sys = torus(Phase::turns(1, 6));
        let space = FockSpace::x(&sys, &d(&[2, 2]));
        let r = ck_relations_check(&space, &sys, &d(&[1, 1]), 100);
        assert!(r.outcome.passed(), "{r:?}");
        assert_eq!(r.defect_rank, 5);
    }

    #[test]
    fn cp_identity_and_psi() {
        let sys = f2_exact();
        let space = FockSpace::y(&sys, &d(&[2]), &d(&[4])).unwrap();
        assert!(cp_identity_check(&space, &sys, &vertex_constant(&sys, GaussRat::one()), &d(&[1])).passed());
        assert!(cp_identity_check(&space, &sys, &vertex_constant(&sys, GaussRat::zero()), &d(&[2])).passed());
        let o = psi_check(&space, &sys, 10_000);
        assert!(o.passed(), "{o:?}");
        let sys = torus(Phase::radians(1, 1));
        let space = FockSpace::y(&sys, &d(&[2, 2]), &d(&[4, 4])).unwrap();
        let a = vertex_indicator(&sys, 0);
        for n in d(&[2, 2]).below() {
            assert!(cp_identity_check(&space, &sys, &a, &n).passed());
        }
        let o = psi_check(&space, &sys, 200);
        assert!(o.passed(), "{o:?}");
    }

    #[test]
    fn surjectivity_on_fixtures() {
        let sys = f2_exact();
        let space = FockSpace::y(&sys, &d(&[2]), &d(&[4])).unwrap();
        let o = surjectivity_check(&space, &sys);
        assert!(o.passed(), "{o:?}");
        let sys = torus(Phase::turns(1, 4));
        let space = FockSpace::y(&sys, &d(&[1, 1]), &d(&[2, 2])).unwrap();
        let o = surjectivity_check(&space, &sys);
        assert!(o.passed(), "{o:?}");
    }
}
