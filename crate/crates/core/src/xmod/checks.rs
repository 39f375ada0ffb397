//! Exhaustive basis checks of the product-system structure on `X`.

use alloc::format;
use alloc::vec::Vec;

use super::*;
use crate::linalg::rank;
use crate::outcome::{spread_indices, Outcome};

fn vf_label<S: Scalar>(a: &VertexFn<S>) -> alloc::string::String {
    format!("{:?}", a.0.iter().map(|x| x.to_c64()).collect::<Vec<_>>())
}

/// `⟨f₁g₁, f₂g₂⟩ = ⟨g₁, ⟨f₁,f₂⟩·g₂⟩` on all basis quadruples, and the products
/// `δ_μ δ_ν` span `X_{m+n}`.
pub fn x_tensor_iso_check<S: Scalar>(sys: &System<S>, m: &MultiDegree, n: &MultiDegree) -> Outcome {
    let mut out = Outcome::new();
    let bm = x_basis(sys, m);
    let bn = x_basis(sys, n);
    let tol = sys.tol();
    for (i1, f1) in bm.iter().enumerate() {
        for (i2, f2) in bm.iter().enumerate() {
            let inner_f = x_inner(sys, f1, f2).expect("same degree");
            for (j1, g1) in bn.iter().enumerate() {
                let left_prod = x_tmul(sys, f1, g1);
                for (j2, g2) in bn.iter().enumerate() {
                    let lhs = x_inner(sys, &left_prod, &x_tmul(sys, f2, g2)).expect("same degree");
                    let rhs = x_inner(sys, g1, &x_act(sys, &inner_f, g2, Side::Left)).expect("same degree");
                    out.record(lhs.approx_eq(&rhs, tol), || {
                        format!(
                            "inner product of products differs at f1={}, f2={}, g1={}, g2={}: {} vs {}",
                            sys.label(m, i1),
                            sys.label(m, i2),
                            sys.label(n, j1),
                            sys.label(n, j2),
                            vf_label(&lhs),
                            vf_label(&rhs)
                        )
                    });
                }
            }
        }
    }
    let rows: Vec<Vec<S>> = bm.iter().flat_map(|f| bn.iter().map(move |g| (f, g))).map(|(f, g)| x_tmul(sys, f, g).coeffs).collect();
    let expected = sys.table(&m.add(n)).len();
    let r = rank(&rows, tol);
    out.record(r == expected, || format!("products span dimension {r}, expected {expected}"));
    out
}

/// `(fg)h = f(gh)` on all basis triples.
pub fn x_associativity_check<S: Scalar>(sys: &System<S>, p: &MultiDegree, q: &MultiDegree, r: &MultiDegree) -> Outcome {
    let mut out = Outcome::new();
    let (bp, bq, br) = (x_basis(sys, p), x_basis(sys, q), x_basis(sys, r));
    for (i, f) in bp.iter().enumerate() {
        for (j, g) in bq.iter().enumerate() {
            let fg = x_tmul(sys, f, g);
            for (l, h) in br.iter().enumerate() {
                let lhs = x_tmul(sys, &fg, h);
                let rhs = x_tmul(sys, f, &x_tmul(sys, g, h));
                out.record(lhs.approx_eq(&rhs, sys.tol()), || {
                    format!("(fg)h != f(gh) at f={}, g={}, h={}", sys.label(p, i), sys.label(q, j), sys.label(r, l))
                });
            }
        }
    }
    out
}

/// Hermitian module axioms on the basis plus the supplied vectors: right
/// linearity over `C(Λ⁰)`, conjugate symmetry, positivity and definiteness.
pub fn x_hermitian_check<S: Scalar>(sys: &System<S>, n: &MultiDegree, extra: &[XElem<S>], scalars: &[VertexFn<S>]) -> Outcome {
    let mut out = Outcome::new();
    let mut vectors = x_basis(sys, n);
    vectors.extend(extra.iter().cloned());
    vectors.push(x_zero(sys, n));
    let tol = sys.tol();
    for (i, f) in vectors.iter().enumerate() {
        let ff = x_inner(sys, f, f).expect("same degree");
        let positive = ff.0.iter().all(|x| {
            let z = x.to_c64();
            z.im.abs() <= tol && z.re >= -tol
        });
        out.record(positive, || format!("⟨f,f⟩ not positive for vector #{i}: {}", vf_label(&ff)));
        let zero_norm = ff.0.iter().all(|x| x.approx_eq(S::zero(), tol));
        let zero_vec = f.coeffs.iter().all(|x| x.approx_eq(S::zero(), tol));
        out.record(zero_norm == zero_vec, || format!("definiteness fails for vector #{i}"));
        for (j, g) in vectors.iter().enumerate() {
            let fg = x_inner(sys, f, g).expect("same degree");
            let gf = x_inner(sys, g, f).expect("same degree");
            out.record(fg.approx_eq(&VertexFn(gf.0.iter().map(|x| x.conj()).collect()), tol), || {
                format!("⟨f,g⟩* != ⟨g,f⟩ for vectors #{i}, #{j}")
            });
            for a in scalars {
                let lhs = x_inner(sys, f, &x_act(sys, a, g, Side::Right)).expect("same degree");
                let rhs = VertexFn(fg.0.iter().zip(&a.0).map(|(&x, &y)| x * y).collect());
                out.record(lhs.approx_eq(&rhs, tol), || format!("⟨f,g·a⟩ != ⟨f,g⟩a for vectors #{i}, #{j}, a={}", vf_label(a)));
            }
        }
    }
    out
}

/// The product with `X₀` on either side is the corresponding action.
pub fn x_unit_action_check<S: Scalar>(sys: &System<S>, n: &MultiDegree, scalars: &[VertexFn<S>]) -> Outcome {
    let mut out = Outcome::new();
    for (i, f) in x_basis(sys, n).iter().enumerate() {
        for a in scalars {
            let e = vertex_elem(sys, a);
            out.record(x_tmul(sys, &e, f).approx_eq(&x_act(sys, a, f, Side::Left), sys.tol()), || {
                format!("a·f differs from the left action at f={}", sys.label(n, i))
            });
            out.record(x_tmul(sys, f, &e).approx_eq(&x_act(sys, a, f, Side::Right), sys.tol()), || {
                format!("f·a differs from the right action at f={}", sys.label(n, i))
            });
        }
    }
    out
}

/// `ι_n^p ∘ ι_m^n = ι_m^p` on all basis `Θ`s of degree m, and `ι_m^n(S)`
/// satisfies `ι(S)(xy) = (Sx)y` on basis vectors.
pub fn x_iota_functoriality_check<S: Scalar>(
    sys: &System<S>,
    m: &MultiDegree,
    n: &MultiDegree,
    p: &MultiDegree,
    max: usize,
) -> Outcome {
    let mut out = Outcome::new();
    let bm = x_basis(sys, m);
    let rest = n.checked_sub(m).expect("m <= n");
    let br = x_basis(sys, &rest);
    let len = bm.len();
    for idx in spread_indices(len * len, max) {
        let (i, j) = (idx / len, idx % len);
        let t = x_theta(sys, &bm[i], &bm[j]).expect("same degree");
        let direct = x_iota(sys, &t, p).expect("m <= p");
        let it = x_iota(sys, &t, n).expect("m <= n");
        let stepwise = x_iota(sys, &it, p).expect("n <= p");
        out.record(direct.matrix.approx_eq(&stepwise.matrix, sys.tol()), || {
            format!("iota is not functorial on Θ({}, {})", sys.label(m, i), sys.label(m, j))
        });
        for k in spread_indices(len * br.len(), max) {
            let (x, y) = (&bm[k / br.len()], &br[k % br.len()]);
            let lhs = x_apply(&it, &x_tmul(sys, x, y));
            let rhs = x_tmul(sys, &x_apply(&t, x), y);
            out.record(lhs.approx_eq(&rhs, sys.tol()), || {
                format!("iota(S)(xy) != (Sx)y for S = Θ({}, {})", sys.label(m, i), sys.label(m, j))
            });
        }
    }
    out
}

/// `⟨Θ_{f,g}h, k⟩ = ⟨h, Θ_{g,f}k⟩` on basis vectors, and the matrix of
/// `Θ_{g,f}` is the conjugate transpose of that of `Θ_{f,g}`.
pub fn x_adjoint_check<S: Scalar>(sys: &System<S>, n: &MultiDegree, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let b = x_basis(sys, n);
    let len = b.len();
    for idx in spread_indices(len * len, max) {
        let (i, j) = (idx / len, idx % len);
        let t = x_theta(sys, &b[i], &b[j]).expect("same degree");
        let ta = x_theta(sys, &b[j], &b[i]).expect("same degree");
        out.record(ta.matrix.approx_eq(&t.matrix.adjoint(), sys.tol()), || {
            format!("Θ({0},{1})* != Θ({1},{0})", sys.label(n, i), sys.label(n, j))
        });
        for k in spread_indices(len * len, max) {
            let (h, l) = (&b[k / len], &b[k % len]);
            let lhs = x_inner(sys, &x_apply(&t, h), l).expect("same degree");
            let rhs = x_inner(sys, h, &x_apply(&ta, l)).expect("same degree");
            out.record(lhs.approx_eq(&rhs, sys.tol()), || {
                format!("adjoint law fails for Θ({}, {})", sys.label(n, i), sys.label(n, j))
            });
        }
    }
    out
}

/// The `Θ`s of point masses span all source-block-diagonal operators:
/// dimension `Σ_v |Λⁿv|²`.
pub fn x_theta_density_check<S: Scalar>(sys: &System<S>, n: &MultiDegree) -> Outcome {
    let mut out = Outcome::new();
    let b = x_basis(sys, n);
    let t = sys.table(n);
    let len = t.len();
    let mut rows = Vec::new();
    for f in &b {
        for g in &b {
            let th = x_theta(sys, f, g).expect("same degree");
            let mut row = alloc::vec![S::zero(); len * len];
            for (i, j, v) in th.matrix.entries() {
                row[i * len + j] = v;
            }
            out.record(x_is_block_diagonal(sys, &th), || "Θ is not source-block diagonal".into());
            rows.push(row);
        }
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let expected: usize = (0..sys.graph().vertex_count()).map(|v| t.with_source(v).len().pow(2)).sum();
    let r = rank(&rows, sys.tol());
    out.record(r == expected, || format!("Θ span has dimension {r}, expected {expected}"));
    out
}

/// `φ_{Xₙ}(a) = Σ w·Θ_{g, conj g}` for the computed decomposition, and the
/// kernel of `φ_{Xₙ}` on vertex indicators is spanned by the vertices that
/// receive no path of degree `n`; `φ_{Xₙ}` is injective when there are none.
pub fn x_left_action_check<S: Scalar>(sys: &System<S>, a: &VertexFn<S>, n: &MultiDegree) -> Outcome {
    let mut out = Outcome::new();
    match phi_x_decompose(sys, a, n) {
        Err(e) => out.record(false, || format!("decomposition failed: {e}")),
        Ok(terms) => {
            let mut sum = x_zero_op(sys, n);
            for (w, g) in &terms {
                let t = x_theta(sys, g, &g.conj()).expect("same degree");
                sum = sum.add(&XOp { degree: n.clone(), matrix: t.matrix.scale(*w) });
            }
            let phi = phi_x(sys, a, n);
            out.record(sum.matrix.approx_eq(&phi.matrix, sys.tol()), || {
                format!("Σ Θ(g, conj g) differs from φ(a) for a={} at degree {n}", vf_label(a))
            });
        }
    }
    let table = sys.table(n);
    for v in 0..sys.graph().vertex_count() {
        let receives = !table.with_range(v).is_empty();
        out.record(phi_x(sys, &vertex_indicator(sys, v), n).matrix.is_zero() != receives, || {
            let why = if receives { "is killed although it receives" } else { "acts although it receives no" };
            format!("φ at degree {n}: vertex {} {why} path of that degree", sys.graph().vertex_name(v))
        });
    }
    out
}

/// `ι_m^{m∨n}(S)ι_n^{m∨n}(T)` is a source-block-diagonal operator for all
/// basis `Θ`s, and equals the plain product when `m = n`.
pub fn x_compact_alignment_check<S: Scalar>(sys: &System<S>, m: &MultiDegree, n: &MultiDegree, max: usize) -> Outcome {
    let mut out = Outcome::new();
    let (bm, bn) = (x_basis(sys, m), x_basis(sys, n));
    let (p, q) = (bm.len(), bn.len());
    for idx in spread_indices(p * p * q * q, max) {
        let (i1, r) = (idx / (p * q * q), idx % (p * q * q));
        let (i2, r) = (r / (q * q), r % (q * q));
        let (j1, j2) = (r / q, r % q);
        let s = x_theta(sys, &bm[i1], &bm[i2]).expect("same degree");
        let t = x_theta(sys, &bn[j1], &bn[j2]).expect("same degree");
        let a = x_compact_align(sys, &s, &t).expect("joins dominate");
        out.record(x_is_block_diagonal(sys, &a), || "aligned product is not source-block diagonal".into());
        if m == n {
            out.record(a.matrix.approx_eq(&s.compose(&t).matrix, sys.tol()), || {
                "aligned product differs from the plain product at equal degrees".into()
            });
        }
    }
    out
}
