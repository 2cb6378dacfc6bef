//! Dense complex linear algebra with a single tolerance policy.

mod eigen;
mod matrix;
mod tolerance;

use alloc::vec::Vec;

use num_traits::Zero;

pub use eigen::{
    herm_spectral, hermitian_eigen, polar_unitary, projection_range, SpectralComponent,
};
pub use matrix::{phase, CMatrix, C64};
pub use tolerance::{Config, TolerancePolicy};

use crate::error::Result;

/// Gram–Schmidt (two passes) in the Hilbert–Schmidt inner product.
///
/// Inputs whose residual after projection is numerically zero relative to
/// their own norm are dropped. All inputs must share one shape.
pub fn hs_orthonormalize(vectors: &[CMatrix], tol: &TolerancePolicy) -> Vec<CMatrix> {
    let mut basis: Vec<CMatrix> = Vec::new();
    for v in vectors {
        if let Some(u) = orthonormal_residual(&basis, v, tol) {
            basis.push(u);
        }
    }
    basis
}

/// Extends `basis` (already HS-orthonormal) by the residual of `v`, if any.
pub(crate) fn orthonormal_residual(
    basis: &[CMatrix],
    v: &CMatrix,
    tol: &TolerancePolicy,
) -> Option<CMatrix> {
    let norm0 = v.hs_norm();
    if tol.is_zero(norm0, 0.0) {
        return None;
    }
    let mut r = v.clone();
    for _ in 0..2 {
        for b in basis {
            let c = b.hs_inner(&r);
            r.axpy(-c, b);
        }
    }
    let norm = r.hs_norm();
    if tol.is_zero(norm, norm0) {
        None
    } else {
        Some(r.scale_real(1.0 / norm))
    }
}

/// Coordinates of `x` against an HS-orthonormal basis.
pub fn coordinates(basis: &[CMatrix], x: &CMatrix) -> Vec<C64> {
    basis.iter().map(|b| b.hs_inner(x)).collect()
}

/// Distance from `x` to the span of an HS-orthonormal basis.
pub fn distance_to_span(basis: &[CMatrix], x: &CMatrix) -> f64 {
    let mut r = x.clone();
    for b in basis {
        let c = b.hs_inner(&r);
        r.axpy(-c, b);
    }
    r.hs_norm()
}

pub fn linear_combination(basis: &[CMatrix], coeffs: &[C64], rows: usize, cols: usize) -> CMatrix {
    let mut out = CMatrix::zeros(rows, cols);
    for (b, &c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            out.axpy(c, b);
        }
    }
    out
}

/// Orthonormal basis of `{v : Mv ≈ 0}` as column vectors.
///
/// Candidate directions come from the eigenvectors of `M*M`; each is kept
/// only if `‖Mv‖ <= tol.bound(σ_max)` measured directly on `M`.
pub fn nullspace(m: &CMatrix, tol: &TolerancePolicy) -> Result<Vec<CMatrix>> {
    let gram = &m.adjoint() * m;
    let vecs = kernel_from_gram(&gram, tol, |v| {
        let mv = m * &CMatrix::column(v);
        mv.hs_norm()
    })?;
    Ok(vecs.into_iter().map(|v| CMatrix::column(&v)).collect())
}

/// Null space of a linear operator given its Gram matrix `G = K*K` and a
/// routine that evaluates `‖K v‖` directly.
pub(crate) fn kernel_from_gram(
    gram: &CMatrix,
    tol: &TolerancePolicy,
    residual: impl Fn(&[C64]) -> f64,
) -> Result<Vec<Vec<C64>>> {
    let n = gram.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (values, vecs) = hermitian_eigen(gram)?;
    let sigma_max = values.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    let threshold = tol.bound(sigma_max);
    // Squared singular values carry absolute error ~ n·eps·σ_max², so the
    // prefilter is loose and the decision is made on the direct residual.
    let prefilter =
        (1e3 * threshold).powi(2) + 64.0 * f64::EPSILON * (n as f64) * sigma_max * sigma_max;
    let mut out = Vec::new();
    for (k, &lam) in values.iter().enumerate() {
        if lam > prefilter {
            break;
        }
        let v = vecs.col(k);
        if residual(&v) <= threshold {
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn orthonormalize_identity() {
        let out = hs_orthonormalize(&[CMatrix::identity(2)], &tol());
        assert_eq!(out.len(), 1);
        let expected = CMatrix::identity(2).scale_real(1.0 / 2f64.sqrt());
        assert!((&out[0] - &expected).hs_norm() < 1e-15);
    }

    #[test]
    fn orthonormalize_drops_duplicates() {
        let e11 = CMatrix::unit(2, 2, 0, 0);
        let out = hs_orthonormalize(&[e11.clone(), e11.clone()], &tol());
        assert_eq!(out, [e11]);
    }

    #[test]
    fn orthonormalize_matrix_units() {
        let e11 = CMatrix::unit(2, 2, 0, 0);
        let e12 = CMatrix::unit(2, 2, 0, 1);
        let out = hs_orthonormalize(&[e11.clone(), e12.clone()], &tol());
        assert_eq!(out, [e11, e12]);
        assert!(hs_orthonormalize(&[], &tol()).is_empty());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&CMatrix::zeros(2, 2), &tol()).unwrap().len(), 2);
        assert!(nullspace(&CMatrix::identity(2), &tol()).unwrap().is_empty());

        // [[1,1],[1,1]] has eigenvalues 0 and 2; the kernel is spanned by (1,-1)/sqrt2.
        let ones = CMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        let ns = nullspace(&ones, &tol()).unwrap();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let s = 1.0 / 2f64.sqrt();
        // determined up to a phase
        let overlap = v[(0, 0)].conj() * s - v[(1, 0)].conj() * s;
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }
}
