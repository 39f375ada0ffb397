//! Checks of the cylinder model of `Y` and of the maps `α` from `X`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::*;
use crate::linalg::rank;
use crate::outcome::{spread_indices, Outcome};
use crate::xmod::{
    vertex_indicator, x_act, x_basis, x_compact_align, x_delta, x_inner, x_module_norm, x_op_norm, x_theta, x_tmul,
    Side,
};

fn coeff_label<S: Scalar>(f: &CylElem<S>) -> String {
    format!("{:?}", f.coeffs.iter().map(|x| x.to_c64()).collect::<Vec<_>>())
}

/// Index quadruples `(a, b, c, d)` with `a, b < p` and `c, d < q`, at most `max`.
fn quadruples(p: usize, q: usize, max: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    let total = p * p * q * q;
    spread_indices(total, max).map(move |mut i| {
        let d = i % q;
        i /= q;
        let c = i % q;
        i /= q;
        let b = i % p;
        (i / p, b, c, d)
    })
}

/// `⟨f₁g₁, f₂g₂⟩ = ⟨g₁, ⟨f₁,f₂⟩·g₂⟩` on cylinder basis quadruples with
/// `f`'s in `Y_m` and `g`'s in `Yₙ`, each of depth degree + `slack`.
pub fn y_tensor_iso_check<S: Scalar>(sys: &System<S>, m: &MultiDegree, n: &MultiDegree, slack: &MultiDegree, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let (dm, dn) = (m.add(slack), n.add(slack));
    let bm = y_basis(sys, m, &dm);
    let bn = y_basis(sys, n, &dn);
    for (i1, i2, j1, j2) in quadruples(bm.len(), bn.len(), max) {
        let (f1, f2, g1, g2) = (&bm[i1], &bm[i2], &bn[j1], &bn[j2]);
        let lhs = y_inner(sys, &y_tmul(sys, f1, g1), &y_tmul(sys, f2, g2)).expect("same degree");
        let a = y_inner(sys, f1, f2).expect("same degree");
        let rhs = y_inner(sys, g1, &y_act_left(sys, &a, g2)).expect("same degree");
        out.record(y_equal(sys, &lhs, &rhs), || {
            format!(
                "inner product of products differs at f1={}, f2={}, g1={}, g2={}: {} vs {}",
                sys.label(&dm, i1),
                sys.label(&dm, i2),
                sys.label(&dn, j1),
                sys.label(&dn, j2),
                coeff_label(&lhs),
                coeff_label(&rhs)
            )
        });
    }
    out
}

/// `(fg)h = f(gh)` on cylinder basis triples of depth degree + `slack`.
pub fn y_associativity_check<S: Scalar>(
    sys: &System<S>,
    degrees: [&MultiDegree; 3],
    slack: &MultiDegree,
    max: usize,
) -> Outcome {
    let mut out = Outcome::new();
    let depths: Vec<MultiDegree> = degrees.iter().map(|d| d.add(slack)).collect();
    let b: Vec<Vec<CylElem<S>>> = degrees.iter().zip(&depths).map(|(d, e)| y_basis(sys, d, e)).collect();
    let (p, q, r) = (b[0].len(), b[1].len(), b[2].len());
    for idx in spread_indices(p * q * r, max) {
        let (i, j, l) = (idx / (q * r), (idx / r) % q, idx % r);
        let lhs = y_tmul(sys, &y_tmul(sys, &b[0][i], &b[1][j]), &b[2][l]);
        let rhs = y_tmul(sys, &b[0][i], &y_tmul(sys, &b[1][j], &b[2][l]));
        out.record(y_equal(sys, &lhs, &rhs), || {
            format!(
                "(fg)h != f(gh) at f={}, g={}, h={}",
                sys.label(&depths[0], i),
                sys.label(&depths[1], j),
                sys.label(&depths[2], l)
            )
        });
    }
    out
}

/// The maps `α_n = α_{n,n}`: compatibility with both actions, the inner
/// product and multiplication, and injectivity.
pub fn alpha_properties_check<S: Scalar>(sys: &System<S>, m: &MultiDegree, n: &MultiDegree, scalars: &[VertexFn<S>]) -> Outcome {
    let mut out = Outcome::new();
    let bm = x_basis(sys, m);
    let bn = x_basis(sys, n);
    let am = |f: &XElem<S>| alpha(sys, &f.degree, f).expect("α_{m,m}");
    for (i, f) in bm.iter().enumerate() {
        for a in scalars {
            let ya = alpha_vertex(sys, a);
            out.record(y_equal(sys, &am(&x_act(sys, a, f, Side::Left)), &y_act_left(sys, &ya, &am(f))), || {
                format!("α(a·f) != α(a)·α(f) at f={}", sys.label(m, i))
            });
            out.record(y_equal(sys, &am(&x_act(sys, a, f, Side::Right)), &y_act_right(sys, &am(f), &ya)), || {
                format!("α(f·a) != α(f)·α(a) at f={}", sys.label(m, i))
            });
        }
        for (j, g) in bm.iter().enumerate() {
            let lhs = y_inner(sys, &am(f), &am(g)).expect("same degree");
            let rhs = alpha_vertex(sys, &x_inner(sys, f, g).expect("same degree"));
            out.record(y_equal(sys, &lhs, &rhs), || {
                format!("⟨α f, α g⟩ != α⟨f,g⟩ at f={}, g={}", sys.label(m, i), sys.label(m, j))
            });
        }
        for (j, g) in bn.iter().enumerate() {
            let lhs = am(&x_tmul(sys, f, g));
            let rhs = y_tmul(sys, &am(f), &am(g));
            out.record(y_equal(sys, &lhs, &rhs), || {
                format!("α(fg) != α(f)α(g) at f={}, g={}", sys.label(m, i), sys.label(n, j))
            });
        }
    }
    let deeper = m.add(&MultiDegree::splat(sys.k(), 1));
    let rows: Vec<Vec<S>> = bm.iter().map(|f| y_lift(sys, &am(f), &deeper).expect("deeper").coeffs).collect();
    let r = rank(&rows, sys.tol());
    out.record(r == bm.len(), || format!("α is not injective on degree {m}: rank {r} of {}", bm.len()));
    out
}

/// `α^K` is multiplicative and `*`-preserving on basis `Θ`s, and does not
/// increase the operator norm at any depth from `n` to `depth_cap`.
pub fn alpha_k_check<S: Scalar>(
    sys: &System<S>,
    n: &MultiDegree,
    depth_cap: &MultiDegree,
    extra: &[XOp<S>],
    max: usize,
) -> Outcome {
    let mut out = Outcome::new();
    let b = x_basis(sys, n);
    let len = b.len();
    for (i1, i2, j1, j2) in quadruples(len, len, max) {
        let k1 = x_theta(sys, &b[i1], &b[i2]).expect("same degree");
        let k2 = x_theta(sys, &b[j1], &b[j2]).expect("same degree");
        let lhs = alpha_k(sys, &k1.compose(&k2));
        let rhs = yop_compose(sys, &alpha_k(sys, &k1), &alpha_k(sys, &k2));
        out.record(yop_equal(sys, &lhs, &rhs), || {
            format!("α^K is not multiplicative on Θ({},{})·Θ({},{})", sys.label(n, i1), sys.label(n, i2), sys.label(n, j1), sys.label(n, j2))
        });
        out.record(yop_equal(sys, &alpha_k(sys, &k1.adjoint()), &alpha_k(sys, &k1).adjoint()), || {
            format!("α^K does not preserve adjoints on Θ({},{})", sys.label(n, i1), sys.label(n, i2))
        });
    }
    let depths: Vec<MultiDegree> = depth_cap.below().into_iter().filter(|d| n.le(d)).collect();
    for (t, k) in extra.iter().enumerate() {
        let bound = x_op_norm(sys, k);
        let ak = alpha_k(sys, k);
        for d in &depths {
            let lifted = yop_lift(sys, &ak, d).expect("d >= n");
            let norm = y_op_norm(sys, &lifted);
            out.record(norm <= bound + 1e-9, || format!("operator #{t}: ‖α^K(K)‖ = {norm} at depth {d} exceeds ‖K‖ = {bound}"));
            out.record(y_is_block_diagonal(sys, &lifted), || format!("operator #{t}: α^K(K) is not suffix-block diagonal"));
        }
    }
    out
}

fn sorted_unique(mut v: Vec<Path>) -> Vec<Path> {
    v.sort();
    v.dedup();
    v
}

/// The set `{λ(p, j) : λ ∈ C}`.
fn tails_of(sys_graph: &crate::kgraph::KGraph, c: &[Path], p: &MultiDegree, j: &MultiDegree) -> Vec<Path> {
    sorted_unique(c.iter().map(|l| sys_graph.segment(l, p, j).expect("p <= j")).collect())
}

fn supp_paths<S: Scalar>(sys: &System<S>, f: &XElem<S>) -> Vec<Path> {
    let t = sys.table(&f.degree);
    f.support().map(|i| t.paths[i].clone()).collect()
}

/// Terms `(a_ij, b_j)` with `ι(Θ_{f₁,f₂})ι(Θ_{g₁,g₂}) = Σ Θ_{a_ij, b_j}` on
/// `X_{m∨n}`, from the indicator partitions of `τ_p(supp f₂ ∨ supp g₁)`.
pub fn x_iota_theta_terms<S: Scalar>(sys: &System<S>, f: [&XElem<S>; 2], g: [&XElem<S>; 2]) -> Vec<(XElem<S>, XElem<S>)> {
    let gr = sys.graph();
    let (m, n) = (&f[0].degree, &g[0].degree);
    let j = m.join(n);
    let c = gr.vee(&supp_paths(sys, f[1]), &supp_paths(sys, g[0]));
    let gm: Vec<XElem<S>> = tails_of(gr, &c, m, &j).iter().map(|p| x_delta(sys, p)).collect();
    let gn: Vec<XElem<S>> = tails_of(gr, &c, n, &j).iter().map(|p| x_delta(sys, p)).collect();
    let mut out = Vec::new();
    for gj in &gn {
        let b = x_tmul(sys, g[1], gj);
        let right = x_tmul(sys, g[0], gj);
        for gi in &gm {
            let inner = x_inner(sys, &x_tmul(sys, f[1], gi), &right).expect("same degree");
            out.push((x_tmul(sys, f[0], &x_act(sys, &inner, gi, Side::Right)), b.clone()));
        }
    }
    out
}

/// The same terms in `Y`: `c_ij = α(f₁)(ξᵢ·⟨α(f₂)ξᵢ, α(g₁)ξⱼ⟩)`,
/// `d_j = α(g₂)ξⱼ` with `ξ = α(γ)`.
pub fn y_iota_theta_terms<S: Scalar>(sys: &System<S>, f: [&XElem<S>; 2], g: [&XElem<S>; 2]) -> Vec<(CylElem<S>, CylElem<S>)> {
    let gr = sys.graph();
    let (m, n) = (&f[0].degree, &g[0].degree);
    let j = m.join(n);
    let c = gr.vee(&supp_paths(sys, f[1]), &supp_paths(sys, g[0]));
    let a = |x: &XElem<S>| alpha(sys, &x.degree, x).expect("α_{n,n}");
    let xm: Vec<CylElem<S>> = tails_of(gr, &c, m, &j).iter().map(|p| a(&x_delta(sys, p))).collect();
    let xn: Vec<CylElem<S>> = tails_of(gr, &c, n, &j).iter().map(|p| a(&x_delta(sys, p))).collect();
    let mut out = Vec::new();
    for xj in &xn {
        let d = y_tmul(sys, &a(g[1]), xj);
        let right = y_tmul(sys, &a(g[0]), xj);
        for xi in &xm {
            let inner = y_inner(sys, &y_tmul(sys, &a(f[1]), xi), &right).expect("same degree");
            out.push((y_tmul(sys, &a(f[0]), &y_act_right(sys, xi, &inner)), d.clone()));
        }
    }
    out
}

/// Both decompositions of `ι(Θ)ι(Θ)` into rank-one terms, on basis
/// quadruples `f₁, f₂ ∈ X_m`, `g₁, g₂ ∈ Xₙ`.
pub fn iota_theta_decomposition_check<S: Scalar>(sys: &System<S>, m: &MultiDegree, n: &MultiDegree, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let (bm, bn) = (x_basis(sys, m), x_basis(sys, n));
    let j = m.join(n);
    for (i1, i2, j1, j2) in quadruples(bm.len(), bn.len(), max) {
        let (f, g) = ([&bm[i1], &bm[i2]], [&bn[j1], &bn[j2]]);
        let name = || format!("f1={}, f2={}, g1={}, g2={}", sys.label(m, i1), sys.label(m, i2), sys.label(n, j1), sys.label(n, j2));
        let s = x_theta(sys, f[0], f[1]).expect("same degree");
        let t = x_theta(sys, g[0], g[1]).expect("same degree");
        let lhs = x_compact_align(sys, &s, &t).expect("join dominates");
        let mut rhs = crate::xmod::x_zero_op(sys, &j);
        for (a, b) in x_iota_theta_terms(sys, f, g) {
            rhs = rhs.add(&x_theta(sys, &a, &b).expect("same degree"));
        }
        out.record(lhs.matrix.approx_eq(&rhs.matrix, sys.tol()), || format!("X decomposition fails at {}", name()));

        let a = |x: &XElem<S>| alpha(sys, &x.degree, x).expect("α_{n,n}");
        let ys = y_theta(sys, &a(f[0]), &a(f[1])).expect("same degree");
        let yt = y_theta(sys, &a(g[0]), &a(g[1])).expect("same degree");
        let ylhs = yop_compose(sys, &y_iota(sys, &ys, &j).expect("m <= j"), &y_iota(sys, &yt, &j).expect("n <= j"));
        let mut yrhs = y_zero_op(sys, &j, &j);
        for (c, d) in y_iota_theta_terms(sys, f, g) {
            yrhs = yop_add(sys, &yrhs, &y_theta(sys, &c, &d).expect("same degree"));
        }
        out.record(yop_equal(sys, &ylhs, &yrhs), || format!("Y decomposition fails at {}", name()));
    }
    out
}

/// `ι_m^{m∨n}(Θ_{α f, α g})(h)(z) = c(z(0,m), z(m,m∨n)) f(z(0,m)) conj g(λ)
/// conj c(λ, z(m,m∨n)) h(λ·T^m z)` with `λ` the path of `supp g` with source
/// `s(z(0,m))`, evaluated pathwise against the matrix of `y_iota`.
pub fn y_iota_formula_check<S: Scalar>(sys: &System<S>, m: &MultiDegree, n: &MultiDegree, slack: &MultiDegree, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let gr = sys.graph().clone();
    let j = m.join(n);
    let depth = j.add(slack);
    let tm = sys.table(m);
    let td = sys.table(&depth);
    let hs = y_basis(sys, &j, &depth);
    for (i1, i2, hi, _) in quadruples(tm.len(), hs.len(), max) {
        let (p, q) = (&tm.paths[i1], &tm.paths[i2]);
        let theta = y_theta(sys, &y_delta(sys, m, p), &y_delta(sys, m, q)).expect("same degree");
        let got = y_apply(sys, &y_iota(sys, &theta, &j).expect("m <= j"), &hs[hi]);
        let got = y_lift(sys, &got, &depth).expect("depth dominates");
        for (zi, zp) in td.paths.iter().enumerate() {
            let (head, mid, _) = gr.split3(zp, m, &j).expect("in range");
            let mut want = S::zero();
            if &head == p && q.source == head.source {
                let rest = gr.segment(zp, m, &depth).expect("in range");
                let moved = gr.compose(q, &rest).expect("s(q) = r(rest)");
                let h = hs[hi].coeffs[td.index_of(&moved).expect("path")];
                want = sys.twist(&head, &mid) * sys.twist(q, &mid).conj() * h;
            }
            out.record(got.coeffs[zi].approx_eq(want, sys.tol()), || {
                format!(
                    "ι(Θ({}, {})) applied to δ({}) differs at {}",
                    gr.path_label(p),
                    gr.path_label(q),
                    sys.label(&depth, hi),
                    gr.path_label(zp)
                )
            });
        }
    }
    out
}

/// `α^K_{m∨n}(ι Θ_{f₁,f₂} ι Θ_{g₁,g₂}) = ι Θ_{α f₁, α f₂} ι Θ_{α g₁, α g₂}`.
pub fn interchange_check<S: Scalar>(sys: &System<S>, m: &MultiDegree, n: &MultiDegree, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let (bm, bn) = (x_basis(sys, m), x_basis(sys, n));
    let j = m.join(n);
    let a = |x: &XElem<S>| alpha(sys, &x.degree, x).expect("α_{n,n}");
    for (i1, i2, j1, j2) in quadruples(bm.len(), bn.len(), max) {
        let s = x_theta(sys, &bm[i1], &bm[i2]).expect("same degree");
        let t = x_theta(sys, &bn[j1], &bn[j2]).expect("same degree");
        let lhs = alpha_k(sys, &x_compact_align(sys, &s, &t).expect("join dominates"));
        let ys = y_theta(sys, &a(&bm[i1]), &a(&bm[i2])).expect("same degree");
        let yt = y_theta(sys, &a(&bn[j1]), &a(&bn[j2])).expect("same degree");
        let rhs = yop_compose(sys, &y_iota(sys, &ys, &j).expect("m <= j"), &y_iota(sys, &yt, &j).expect("n <= j"));
        out.record(yop_equal(sys, &lhs, &rhs), || {
            format!(
                "interchange fails at f1={}, f2={}, g1={}, g2={}",
                sys.label(m, i1),
                sys.label(m, i2),
                sys.label(n, j1),
                sys.label(n, j2)
            )
        });
    }
    out
}

/// `φ_{Yₙ}(α₀(a)) = Σ w·Θ_{α_n(g), α_n(conj g)}`.
pub fn y_left_action_check<S: Scalar>(sys: &System<S>, a: &VertexFn<S>, n: &MultiDegree) -> Outcome {
    let mut out = Outcome::new();
    match phi_y_decompose(sys, a, n) {
        Err(e) => out.record(false, || format!("decomposition failed: {e}")),
        Ok(terms) => {
            let mut sum = y_zero_op(sys, n, n);
            for (w, g) in &terms {
                sum = yop_add(sys, &sum, &y_theta(sys, g, &g.conj()).expect("same degree").scale(*w));
            }
            let phi = phi_y(sys, &alpha_vertex(sys, a), n);
            out.record(yop_equal(sys, &sum, &phi), || format!("Σ Θ differs from φ_Y(α₀(a)) at degree {n}"));
        }
    }
    out
}

/// For each basis `f ∈ X_m` and the supplied extra elements, the pointwise
/// decomposition reassembles `α_{n,m}(f)` and the left action of `f̃` equals
/// its sum of `Θ`s.
pub fn alpha_decomposition_check<S: Scalar>(sys: &System<S>, m: &MultiDegree, n: &MultiDegree, extra: &[XElem<S>]) -> Outcome {
    let mut out = Outcome::new();
    let mut fs = x_basis(sys, m);
    fs.extend(extra.iter().cloned());
    let rest = m.checked_sub(n).expect("n <= m");
    for (k, f) in fs.iter().enumerate() {
        let pieces = match alpha_decompose_pointwise(sys, f, n) {
            Ok(p) => p,
            Err(e) => {
                out.record(false, || format!("element #{k}: {e}"));
                continue;
            }
        };
        let mut total = y_zero(sys, n, m);
        for (piece, dec) in &pieces {
            let re = alpha_reassemble(sys, dec);
            out.record(y_equal(sys, &re, &alpha(sys, n, piece).expect("n <= m")), || {
                format!("element #{k}: Σ α(ξ)·α(f̃) differs from α(f)")
            });
            total = y_add(sys, &total, &re).expect("same degree");
            let ft = CylElem { module_degree: sys.zero_degree(), depth: rest.clone(), coeffs: dec.f_tilde.coeffs.clone() };
            out.record(yop_equal(sys, &f_tilde_compacts(sys, dec), &phi_y(sys, &ft, &rest)), || {
                format!("element #{k}: left action of f̃ differs from Σ Θ(α f̃, α η)")
            });
        }
        out.record(y_equal(sys, &total, &alpha(sys, n, f).expect("n <= m")), || format!("element #{k}: pieces do not sum to α(f)"));
    }
    out
}

/// The functions `x ↦ [x(0,n) = u]·h(Tⁿx)` with `h` of depth `m − n` span
/// all depth-`m` cylinder functions supported on `Z(u)`.
pub fn cylinder_density_check<S: Scalar>(sys: &System<S>, u: &Path, m: &MultiDegree) -> Outcome {
    let mut out = Outcome::new();
    let n = &u.degree;
    let Some(rest) = m.checked_sub(n) else {
        out.record(false, || format!("depth {m} is below the degree of {}", sys.graph().path_label(u)));
        return out;
    };
    let z = sys.zero_degree();
    let ind = y_delta(sys, &z, u);
    let heads = sys.segment_index(m, &z, n);
    let ui = sys.table(n).index_of(u).expect("path");
    let mut rows = Vec::new();
    for h in y_basis(sys, &z, &rest) {
        let f = y_lift(sys, &y_act_left(sys, &ind, &shift_pullback(sys, &h, n)), m).expect("depth m");
        let inside = f.support().all(|i| heads[i] == ui);
        out.record(inside, || "generator not supported on Z(U)".into());
        rows.push(f.coeffs);
    }
    let expected = heads.iter().filter(|&&h| h == ui).count();
    let r = rank(&rows, sys.tol());
    out.record(r == expected, || format!("span has dimension {r}, expected {expected}"));
    out
}

/// `‖f‖_∞ = ‖f‖_{Yₙ}` for `f` supported on `Z(U)` with `U ⊆ Λⁿ` an s-section.
pub fn sup_norm_check<S: Scalar>(sys: &System<S>, f: &CylElem<S>, u: &[Path]) -> Outcome {
    let mut out = Outcome::new();
    let n = &f.module_degree;
    if !sys.graph().is_s_section(u) || u.iter().any(|p| &p.degree != n) {
        out.record(false, || "U is not an s-section of degree n".into());
        return out;
    }
    let heads = sys.segment_index(&f.depth, &sys.zero_degree(), n);
    let tn = sys.table(n);
    let inside = f.support().all(|i| u.contains(&tn.paths[heads[i]]));
    out.record(inside, || "f is not supported on Z(U)".into());
    let (sup, module) = (f.sup_norm(), y_module_norm(sys, f));
    out.record((sup - module).abs() <= 1e-9 * (1.0 + sup), || format!("sup norm {sup} differs from module norm {module}"));
    out
}

/// `‖α_{n,m}(f)‖_{Yₙ} ≤ ‖f‖_{X_m}`.
pub fn alpha_norm_check<S: Scalar>(sys: &System<S>, n: &MultiDegree, fs: &[XElem<S>]) -> Outcome {
    let mut out = Outcome::new();
    for (k, f) in fs.iter().enumerate() {
        match alpha(sys, n, f) {
            Err(e) => out.record(false, || format!("element #{k}: {e}")),
            Ok(y) => {
                let (a, b) = (y_module_norm(sys, &y), x_module_norm(sys, f));
                out.record(a <= b + 1e-9, || format!("element #{k}: ‖α(f)‖ = {a} exceeds ‖f‖ = {b}"));
            }
        }
    }
    out
}

/// Inner products, products, both actions and `Θ`s commute with raising the
/// depth, on basis elements of `Yₙ` at depth `depth`.
pub fn depth_coherence_check<S: Scalar>(sys: &System<S>, n: &MultiDegree, depth: &MultiDegree, extra: &MultiDegree, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let deeper = depth.add(extra);
    let b = y_basis(sys, n, depth);
    let lift = |f: &CylElem<S>| y_lift(sys, f, &deeper).expect("deeper");
    let scalars: Vec<CylElem<S>> = (0..sys.graph().vertex_count()).map(|v| alpha_vertex(sys, &vertex_indicator(sys, v))).collect();
    for idx in spread_indices(b.len() * b.len(), max) {
        let (i, j) = (idx / b.len(), idx % b.len());
        let (f, g) = (&b[i], &b[j]);
        let name = || format!("f={}, g={}", sys.label(depth, i), sys.label(depth, j));
        let ip = y_inner(sys, f, g).expect("same degree");
        out.record(y_equal(sys, &ip, &y_inner(sys, &lift(f), &lift(g)).expect("same degree")), || format!("inner product at {}", name()));
        out.record(y_equal(sys, &y_tmul(sys, f, g), &y_tmul(sys, &lift(f), &lift(g))), || format!("product at {}", name()));
        let th = y_theta(sys, f, g).expect("same degree");
        let th2 = y_theta(sys, &lift(f), &lift(g)).expect("same degree");
        out.record(yop_equal(sys, &th, &th2), || format!("Θ at {}", name()));
        out.record(y_is_block_diagonal(sys, &th2), || format!("Θ at {} is not suffix-block diagonal", name()));
        for a in &scalars {
            out.record(y_equal(sys, &y_act_left(sys, a, f), &y_act_left(sys, a, &lift(f))), || format!("left action at {}", name()));
            out.record(y_equal(sys, &y_act_right(sys, f, a), &y_act_right(sys, &lift(f), a)), || format!("right action at {}", name()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::Cocycle;
    use crate::kgraph::{f1, f2, single_vertex};
    use crate::phase::Phase;
    use crate::scalar::GaussRat;
    use crate::xmod::{vertex_constant, x_zero};
    use alloc::sync::Arc;
    use alloc::vec;
    use num_complex::Complex64;

    fn d(x: &[u32]) -> MultiDegree {
        MultiDegree::new(x.to_vec())
    }

    fn torus(t: Phase) -> System<Complex64> {
        System::new(&Cocycle::theta(Arc::new(f1()), t), 1e-9).unwrap()
    }

    fn grid() -> System<Complex64> {
        System::new(&Cocycle::theta(Arc::new(single_vertex(&[2, 2])), Phase::radians(1, 1)), 1e-9).unwrap()
    }

    #[test]
    fn tensor_iso_and_associativity() {
        let sys = grid();
        let o = y_tensor_iso_check(&sys, &d(&[1, 0]), &d(&[0, 1]), &d(&[1, 0]), 400);
        assert!(o.passed(), "{o:?}");
        assert!(y_associativity_check(&sys, [&d(&[1, 0]), &d(&[0, 1]), &d(&[1, 0])], &d(&[0, 1]), 200).passed());
        let bad = System::with_twist(sys.graph().clone(), |_, _| Complex64::new(0.5, 0.0), 1e-9);
        assert!(!y_tensor_iso_check(&bad, &d(&[1, 0]), &d(&[0, 1]), &d(&[0, 0]), 50).passed());
    }

    #[test]
    fn alpha_suite() {
        let sys = grid();
        let scalars = vec![vertex_constant(&sys, Complex64::new(0.5, -1.0))];
        assert!(alpha_properties_check(&sys, &d(&[1, 0]), &d(&[1, 1]), &scalars).passed());
        let b = x_basis(&sys, &d(&[1, 0]));
        let k = x_theta(&sys, &b[0].add(&b[1].scale(Complex64::new(0.0, 2.0))), &b[1]).unwrap();
        let o = alpha_k_check(&sys, &d(&[1, 0]), &d(&[2, 1]), &[k], 100);
        assert!(o.passed(), "{o:?}");
    }

    #[test]
    fn iota_theta_decompositions() {
        for t in [Phase::one(), Phase::turns(1, 4), Phase::radians(1, 1)] {
            let sys = torus(t);
            let o = iota_theta_decomposition_check(&sys, &d(&[1, 0]), &d(&[0, 1]), 100);
            assert!(o.passed(), "{o:?}");
        }
        let sys = grid();
        let o = iota_theta_decomposition_check(&sys, &d(&[1, 0]), &d(&[1, 1]), 300);
        assert!(o.passed(), "{o:?}");
        let sys = System::<GaussRat>::new(&Cocycle::trivial(Arc::new(f2())), 0.0).unwrap();
        assert!(iota_theta_decomposition_check(&sys, &d(&[1]), &d(&[2]), 1000).passed());
    }

    #[test]
    fn iota_formula_and_interchange() {
        let sys = grid();
        let o = y_iota_formula_check(&sys, &d(&[1, 0]), &d(&[0, 1]), &d(&[1, 0]), 200);
        assert!(o.passed(), "{o:?}");
        assert!(interchange_check(&sys, &d(&[1, 0]), &d(&[0, 1]), 200).passed());
        let sys = torus(Phase::turns(1, 4));
        assert!(y_iota_formula_check(&sys, &d(&[1, 0]), &d(&[0, 1]), &d(&[0, 0]), 10).passed());
    }

    #[test]
    fn non_cocycle_twist_breaks_associativity() {
        let g = Arc::new(single_vertex(&[2, 2]));
        let bad = System::with_twist(g, |a: &Path, b: &Path| if a.degree.get(1) * b.degree.get(0) + a.degree.get(0) > 1 { Complex64::i() } else { Complex64::new(1.0, 0.0) }, 1e-9);
        let o = y_associativity_check(&bad, [&d(&[1, 0]), &d(&[1, 0]), &d(&[0, 1])], &d(&[0, 0]), 200);
        assert!(!o.passed());
        assert!(o.failure.unwrap().contains("(fg)h"));
    }

    #[test]
    fn left_action_and_alpha_decomposition() {
        let sys = System::<GaussRat>::new(&Cocycle::trivial(Arc::new(f2())), 0.0).unwrap();
        assert!(y_left_action_check(&sys, &vertex_constant(&sys, GaussRat::one()), &d(&[2])).passed());
        let mut f = x_zero(&sys, &d(&[2]));
        f.coeffs = vec![GaussRat::from_ints(1, 2), GaussRat::from_ints(-3, 0)];
        assert!(alpha_decomposition_check(&sys, &d(&[2]), &d(&[1]), &[f]).passed());
        let sys = torus(Phase::radians(1, 1));
        let mut f = x_zero(&sys, &d(&[1, 1]));
        f.coeffs[0] = Complex64::new(0.3, 0.4);
        assert!(alpha_decomposition_check(&sys, &d(&[1, 1]), &d(&[0, 1]), &[f]).passed());
    }

    #[test]
    fn density_and_sup_norm() {
        let sys = System::<GaussRat>::new(&Cocycle::trivial(Arc::new(f2())), 0.0).unwrap();
        let g = sys.graph().clone();
        let a = g.path_from_word(&[g.edge_by_name("a").unwrap()]).unwrap();
        let o = cylinder_density_check(&sys, &a, &d(&[2]));
        assert!(o.passed(), "{o:?}");
        let sys_f1 = torus(Phase::one());
        let gf = sys_f1.graph().clone();
        let e = gf.path_from_word(&[gf.edge_by_name("e").unwrap()]).unwrap();
        assert!(cylinder_density_check(&sys_f1, &e, &d(&[2, 1])).passed());

        let f = y_delta(&sys, &d(&[1]), &a).scale(GaussRat::from_ints(3, 0));
        assert!(sup_norm_check(&sys, &f, std::slice::from_ref(&a)).passed());
        let deep = y_lift(&sys, &f, &d(&[3])).unwrap();
        assert!(sup_norm_check(&sys, &deep, std::slice::from_ref(&a)).passed());
        let b = g.path_from_word(&[g.edge_by_name("b").unwrap()]).unwrap();
        assert!(!sup_norm_check(&sys, &f, &[b]).passed());
    }

    #[test]
    fn norms_and_depths() {
        let sys = grid();
        let b = x_basis(&sys, &d(&[1, 1]));
        let f = b[0].scale(Complex64::new(1.0, 1.0)).add(&b[3].scale(Complex64::new(-2.0, 0.0)));
        assert!(alpha_norm_check(&sys, &d(&[1, 0]), &[f.clone(), b[1].clone()]).passed());
        let o = depth_coherence_check(&sys, &d(&[1, 0]), &d(&[1, 1]), &d(&[1, 0]), 100);
        assert!(o.passed(), "{o:?}");
    }
}
