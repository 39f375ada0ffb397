//! Truncated Fock representations of `X` and `Y` as explicit matrices.
//!
//! The X-Fock space is `⊕_{n ≤ N} ℂ^{Λⁿ}`. The Y-Fock space with depth `D ≥ N`
//! has blocks `Yₙ` of depth `n + (D − N)`, so every block carries the same
//! number of "base" coordinates beyond its module degree and the ℓ² pairing
//! (weight one per coordinate) is the module inner product summed over the
//! base. Creation operators by elements of degree `d` map block `n` to block
//! `n + d` and vanish on blocks with `n + d ≰ N`.

pub mod checks;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::degree::MultiDegree;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::system::{ModuleError, System};
use crate::xmod::{x_iota, XElem, XOp};
use crate::ymod::{y_iota, yop_lift, CylElem, YOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockKind {
    X,
    Y,
}

/// One degree block: basis indices `offset..offset + len`, coordinates over
/// `Λ^depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub degree: MultiDegree,
    pub depth: MultiDegree,
    pub offset: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockSpace {
    pub kind: FockKind,
    pub truncation: MultiDegree,
    /// `D − N` for Y, zero for X.
    pub slack: MultiDegree,
    pub blocks: Vec<Block>,
    pub dim: usize,
}

impl FockSpace {
    pub fn x<S: Scalar>(sys: &System<S>, truncation: &MultiDegree) -> Self {
        Self::build(sys, FockKind::X, truncation, sys.zero_degree())
    }

    pub fn y<S: Scalar>(sys: &System<S>, truncation: &MultiDegree, depth: &MultiDegree) -> Result<Self, ModuleError> {
        let slack = sys.check_dominated(truncation, depth)?;
        Ok(Self::build(sys, FockKind::Y, truncation, slack))
    }

    fn build<S: Scalar>(sys: &System<S>, kind: FockKind, truncation: &MultiDegree, slack: MultiDegree) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for degree in truncation.below() {
            let depth = degree.add(&slack);
            let len = sys.table(&depth).len();
            blocks.push(Block { degree, depth, offset, len });
            offset += len;
        }
        FockSpace { kind, truncation: truncation.clone(), slack, blocks, dim: offset }
    }

    /// `D` for Y, `N` for X.
    pub fn depth(&self) -> MultiDegree {
        self.truncation.add(&self.slack)
    }

    pub fn block(&self, n: &MultiDegree) -> Option<&Block> {
        self.blocks.iter().find(|b| &b.degree == n)
    }

    pub fn block_range(&self, n: &MultiDegree) -> Option<Range<usize>> {
        self.block(n).map(|b| b.offset..b.offset + b.len)
    }

    /// Basis indices of `interior(d)`: blocks of degree `≤ N − d`.
    pub fn interior(&self, d: &MultiDegree) -> Vec<usize> {
        self.columns_where(|n| n.add(d).le(&self.truncation))
    }

    /// Basis indices in blocks whose degree satisfies `keep`.
    pub fn columns_where(&self, keep: impl Fn(&MultiDegree) -> bool) -> Vec<usize> {
        self.blocks.iter().filter(|b| keep(&b.degree)).flat_map(|b| b.offset..b.offset + b.len).collect()
    }

    fn block_of(&self, idx: usize) -> &Block {
        self.blocks.iter().find(|b| (b.offset..b.offset + b.len).contains(&idx)).expect("index in range")
    }

    /// `(degree, path label, depth)` of a basis vector.
    pub fn legend<S: Scalar>(&self, sys: &System<S>, idx: usize) -> (MultiDegree, String, MultiDegree) {
        let b = self.block_of(idx);
        (b.degree.clone(), sys.label(&b.depth, idx - b.offset), b.depth.clone())
    }

    pub fn label<S: Scalar>(&self, sys: &System<S>, idx: usize) -> String {
        let (n, p, _) = self.legend(sys, idx);
        format!("{p} in block {n}")
    }

    fn check_degree(&self, d: &MultiDegree) -> Result<(), ModuleError> {
        if d.le(&self.truncation) {
            Ok(())
        } else {
            Err(ModuleError::DegreeExceedsTruncation { degree: d.clone(), truncation: self.truncation.clone() })
        }
    }

    /// Conjugation by `diag(z^n)` on block `n`, for `z ∈ 𝕋^k`.
    pub fn grading<S: Scalar>(&self, z: &[S]) -> Matrix<S> {
        let mut diag = Vec::with_capacity(self.dim);
        for b in &self.blocks {
            let w = b.degree.entries().iter().zip(z).fold(S::one(), |acc, (&e, &zi)| (0..e).fold(acc, |a, _| a * zi));
            diag.extend(core::iter::repeat_n(w, b.len));
        }
        Matrix::diagonal(&diag)
    }
}

/// An operator on a Fock space. `shift` is the net degree change when the
/// operator is homogeneous.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOp<S> {
    pub matrix: Matrix<S>,
    pub shift: Option<Vec<i64>>,
}

impl<S: Scalar> FockOp<S> {
    pub fn zero(space: &FockSpace) -> Self {
        FockOp { matrix: Matrix::zeros(space.dim, space.dim), shift: Some(alloc::vec![0; space.truncation.rank()]) }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let shift = match (&self.shift, &other.shift) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            _ => None,
        };
        FockOp { matrix: self.matrix.mul(&other.matrix), shift }
    }

    pub fn add(&self, other: &Self) -> Self {
        let shift = if self.shift == other.shift { self.shift.clone() } else { None };
        FockOp { matrix: self.matrix.add(&other.matrix), shift }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-S::one()))
    }

    pub fn scale(&self, s: S) -> Self {
        FockOp { matrix: self.matrix.scale(s), shift: self.shift.clone() }
    }

    pub fn adjoint(&self) -> Self {
        FockOp { matrix: self.matrix.adjoint(), shift: self.shift.as_ref().map(|v| v.iter().map(|x| -x).collect()) }
    }

    /// First differing entry `(row, column)` with the column in `columns`.
    pub fn first_difference_on(&self, other: &Self, columns: &[usize], tol: f64) -> Option<(usize, usize)> {
        self.matrix.first_difference_on_columns(&other.matrix, columns, tol)
    }

    /// Restriction to the given columns, with the remaining columns zeroed.
    pub fn compress(&self, columns: &[usize]) -> Self {
        let mut keep = alloc::vec![false; self.matrix.cols()];
        for &c in columns {
            keep[c] = true;
        }
        let mut m = Matrix::zeros(self.matrix.rows(), self.matrix.cols());
        for (i, j, v) in self.matrix.entries() {
            if keep[j] {
                m.set(i, j, v);
            }
        }
        FockOp { matrix: m, shift: self.shift.clone() }
    }
}

fn raise(d: &MultiDegree) -> Option<Vec<i64>> {
    Some(d.entries().iter().map(|&x| i64::from(x)).collect())
}

/// Left multiplication by `f ∈ X_d`: block `q` to block `q + d` via the
/// twisted product, zero where `q + d ≰ N`.
pub fn creation_x<S: Scalar>(space: &FockSpace, sys: &System<S>, f: &XElem<S>) -> Result<FockOp<S>, ModuleError> {
    assert_eq!(space.kind, FockKind::X, "creation_x needs an X-Fock space");
    let d = &f.degree;
    space.check_degree(d)?;
    let mut m = Matrix::zeros(space.dim, space.dim);
    let support: Vec<usize> = f.support().collect();
    for b in &space.blocks {
        let target = b.degree.add(d);
        let Some(tb) = space.block(&target) else { continue };
        let prod = sys.product_index(d, &b.degree);
        let twist = sys.split_twist(&target, d);
        for &i in &support {
            for j in 0..b.len {
                let idx = prod[i * b.len + j];
                if idx != usize::MAX {
                    m.add_at(tb.offset + idx, b.offset + j, twist[idx] * f.coeffs[i]);
                }
            }
        }
    }
    Ok(FockOp { matrix: m, shift: raise(d) })
}

/// Left multiplication by `h ∈ Y_d` of depth `≤ d + (D − N)`: block `q`
/// (depth `q + s`) to block `q + d` (depth `q + d + s`) by
/// `(hg)(x) = c(x(0,d), x(d,d+q)) h(x) g(T^d x)`.
pub fn creation_y<S: Scalar>(space: &FockSpace, sys: &System<S>, h: &CylElem<S>) -> Result<FockOp<S>, ModuleError> {
    assert_eq!(space.kind, FockKind::Y, "creation_y needs a Y-Fock space");
    let d = &h.module_degree;
    space.check_degree(d)?;
    let limit = d.add(&space.slack);
    if !h.depth.le(&limit) {
        return Err(ModuleError::DepthOverflow { depth: h.depth.clone(), limit });
    }
    let z = sys.zero_degree();
    let mut m = Matrix::zeros(space.dim, space.dim);
    for b in &space.blocks {
        let target = b.degree.add(d);
        let Some(tb) = space.block(&target) else { continue };
        let head = sys.segment_index(&tb.depth, &z, &h.depth);
        let tail = sys.segment_index(&tb.depth, d, &tb.depth);
        let split = sys.segment_index(&tb.depth, &z, &target);
        let twist = sys.split_twist(&target, d);
        for x in 0..tb.len {
            let v = h.coeffs[head[x]];
            if !v.is_zero() {
                m.add_at(tb.offset + x, b.offset + tail[x], twist[split[x]] * v);
            }
        }
    }
    Ok(FockOp { matrix: m, shift: raise(d) })
}

/// `i_X^{(p)}(K)`: `ι_p^q(K)` on each block `q ≥ p`, zero elsewhere.
pub fn compact_x<S: Scalar>(space: &FockSpace, sys: &System<S>, k: &XOp<S>) -> Result<FockOp<S>, ModuleError> {
    assert_eq!(space.kind, FockKind::X, "compact_x needs an X-Fock space");
    space.check_degree(&k.degree)?;
    let mut m = Matrix::zeros(space.dim, space.dim);
    for b in space.blocks.iter().filter(|b| k.degree.le(&b.degree)) {
        for (i, j, v) in x_iota(sys, k, &b.degree)?.matrix.entries() {
            m.set(b.offset + i, b.offset + j, v);
        }
    }
    Ok(FockOp { matrix: m, shift: raise(&sys.zero_degree()) })
}

/// `i_Y^{(p)}(K)` for `K` on `Y_p` of depth `≤ p + (D − N)`.
pub fn compact_y<S: Scalar>(space: &FockSpace, sys: &System<S>, k: &YOp<S>) -> Result<FockOp<S>, ModuleError> {
    assert_eq!(space.kind, FockKind::Y, "compact_y needs a Y-Fock space");
    let p = &k.module_degree;
    space.check_degree(p)?;
    let limit = p.add(&space.slack);
    if !k.depth.le(&limit) {
        return Err(ModuleError::DepthOverflow { depth: k.depth.clone(), limit });
    }
    let mut m = Matrix::zeros(space.dim, space.dim);
    for b in space.blocks.iter().filter(|b| p.le(&b.degree)) {
        let op = yop_lift(sys, &y_iota(sys, k, &b.degree)?, &b.depth)?;
        for (i, j, v) in op.matrix.entries() {
            m.set(b.offset + i, b.offset + j, v);
        }
    }
    Ok(FockOp { matrix: m, shift: raise(&sys.zero_degree()) })
}

/// `Σ K[λ,μ]·C(δ_λ)C(δ_μ)*`: the image of a compact through creation
/// operators.
pub fn compact_via_creation<S: Scalar>(
    space: &FockSpace,
    sys: &System<S>,
    k: &XOp<S>,
    creation: impl Fn(&crate::kgraph::Path) -> Result<FockOp<S>, ModuleError>,
) -> Result<FockOp<S>, ModuleError> {
    let t = sys.table(&k.degree);
    let mut out = FockOp::zero(space);
    for (i, j, v) in k.matrix.entries() {
        let term = creation(&t.paths[i])?.compose(&creation(&t.paths[j])?.adjoint());
        out = out.add(&term.scale(v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::Cocycle;
    use crate::kgraph::{f1, f2};
    use crate::phase::Phase;
    use crate::scalar::GaussRat;
    use crate::xmod::{x_basis, x_delta, x_tmul, x_zero};
    use crate::ymod::{alpha, y_basis, y_lift, y_one, y_tmul};
    use alloc::sync::Arc;
    use num_complex::Complex64;

    fn d(x: &[u32]) -> MultiDegree {
        MultiDegree::new(x.to_vec())
    }

    #[test]
    fn space_layout() {
        let sys = System::<GaussRat>::new(&Cocycle::trivial(Arc::new(f2())), 0.0).unwrap();
        let fx = FockSpace::x(&sys, &d(&[2]));
        assert_eq!(fx.dim, 6);
        assert_eq!(fx.interior(&d(&[1])), (0..4).collect::<Vec<_>>());
        let fy = FockSpace::y(&sys, &d(&[1]), &d(&[3])).unwrap();
        assert_eq!(fy.slack, d(&[2]));
        assert_eq!(fy.blocks[1].depth, d(&[3]));
        assert!(FockSpace::y(&sys, &d(&[2]), &d(&[1])).is_err());
        assert_eq!(fx.legend(&sys, 4).0, d(&[2]));
    }

    #[test]
    fn creation_x_matches_products() {
        let sys = System::<Complex64>::new(&Cocycle::theta(Arc::new(f1()), Phase::turns(1, 3)), 1e-9).unwrap();
        let space = FockSpace::x(&sys, &d(&[2, 2]));
        for f in x_basis(&sys, &d(&[1, 0])) {
            let c = creation_x(&space, &sys, &f).unwrap();
            for b in &space.blocks {
                for (j, g) in x_basis(&sys, &b.degree).iter().enumerate() {
                    let col: Vec<Complex64> = (0..space.dim).map(|i| c.matrix.get(i, b.offset + j)).collect();
                    let prod = x_tmul(&sys, &f, g);
                    match space.block_range(&prod.degree) {
                        Some(r) => assert_eq!(&col[r.clone()], &prod.coeffs[..]),
                        None => assert!(col.iter().all(|x| *x == Complex64::new(0.0, 0.0))),
                    }
                }
            }
        }
        let zero = creation_x(&space, &sys, &x_zero(&sys, &d(&[1, 1]))).unwrap();
        assert!(zero.matrix.is_zero());
        assert!(creation_x(&space, &sys, &x_zero(&sys, &d(&[3, 0]))).is_err());
    }

    #[test]
    fn vertex_creation_is_range_projection() {
        let sys = System::<GaussRat>::new(&Cocycle::trivial(Arc::new(f2())), 0.0).unwrap();
        let space = FockSpace::x(&sys, &d(&[2]));
        let v = sys.graph().vertex_by_name("v").unwrap();
        let p = sys.graph().vertex_path(v);
        let c = creation_x(&space, &sys, &x_delta(&sys, &p)).unwrap();
        for b in &space.blocks {
            let t = sys.table(&b.degree);
            for (j, q) in t.paths.iter().enumerate() {
                let want = if q.range == v { GaussRat::one() } else { GaussRat::zero() };
                assert_eq!(c.matrix.get(b.offset + j, b.offset + j), want);
            }
        }
        assert_eq!(c.matrix.nnz(), 3);
    }

    #[test]
    fn creation_y_matches_products() {
        let sys = System::<Complex64>::new(&Cocycle::theta(Arc::new(f1()), Phase::radians(1, 1)), 1e-9).unwrap();
        let space = FockSpace::y(&sys, &d(&[1, 1]), &d(&[2, 1])).unwrap();
        let one = creation_y(&space, &sys, &y_one(&sys)).unwrap();
        assert!(one.matrix.approx_eq(&Matrix::identity(space.dim), 0.0));
        for h in y_basis(&sys, &d(&[0, 1]), &d(&[1, 1])) {
            let c = creation_y(&space, &sys, &h).unwrap();
            for b in &space.blocks {
                for (j, g) in y_basis(&sys, &b.degree, &b.depth).iter().enumerate() {
                    let prod = y_tmul(&sys, &h, g);
                    let col: Vec<Complex64> = (0..space.dim).map(|i| c.matrix.get(i, b.offset + j)).collect();
                    match space.block(&prod.module_degree) {
                        Some(tb) => {
                            let lifted = y_lift(&sys, &prod, &tb.depth).unwrap();
                            assert_eq!(&col[tb.offset..tb.offset + tb.len], &lifted.coeffs[..]);
                        }
                        None => assert!(col.iter().all(|x| x.norm() == 0.0)),
                    }
                }
            }
        }
        let deep = alpha(&sys, &d(&[0, 1]), &x_basis(&sys, &d(&[2, 1]))[0]).unwrap();
        assert!(matches!(creation_y(&space, &sys, &deep), Err(ModuleError::DepthOverflow { .. })));
    }

    #[test]
    fn grading_scales_creations() {
        let sys = System::<Complex64>::new(&Cocycle::theta(Arc::new(f1()), Phase::turns(1, 4)), 1e-9).unwrap();
        let space = FockSpace::x(&sys, &d(&[2, 2]));
        let z = [Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, -1.1)];
        let u = space.grading(&z);
        let f = &x_basis(&sys, &d(&[1, 1]))[0];
        let c = creation_x(&space, &sys, f).unwrap();
        let lhs = u.mul(&c.matrix).mul(&u.adjoint());
        assert!(lhs.approx_eq(&c.matrix.scale(z[0] * z[1]), 1e-12));
    }
}
