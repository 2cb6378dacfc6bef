//! Hermitian eigendecomposition: complex Householder reduction to a real
//! symmetric tridiagonal matrix followed by implicit QL iterations.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::matrix::{CMatrix, C64};
use super::TolerancePolicy;
use crate::error::{Error, Result};

/// Eigenvalues (ascending) and the unitary whose columns are eigenvectors.
///
/// Only the Hermitian part of `a` is used.
pub fn hermitian_eigen(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !a.is_square() {
        return Err(Error::Shape(alloc::format!(
            "eigendecomposition of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }
    let mut h = a.hermitian_part().into_vec();
    let mut q = CMatrix::identity(n).into_vec();
    let mut v = vec![C64::zero(); n];
    let mut w = vec![C64::zero(); n];
    let mut qv = vec![C64::zero(); n];

    for k in 0..n.saturating_sub(2) {
        let norm_x = ((k + 1)..n)
            .map(|i| h[i * n + k].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[(k + 1) * n + k];
        let ph = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -ph * norm_x;
        v.iter_mut().for_each(|z| *z = C64::zero());
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = h[i * n + k];
        }
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);

        // w = h v, restricted to the active window k..n
        for i in k..n {
            let mut acc = C64::zero();
            for j in (k + 1)..n {
                acc += h[i * n + j] * v[j];
            }
            w[i] = acc;
        }
        let s: f64 = ((k + 1)..n).map(|i| (v[i].conj() * w[i]).re).sum();
        for i in k..n {
            for j in k..n {
                let upd = v[i] * w[j].conj() * 2.0 + w[i] * v[j].conj() * 2.0
                    - v[i] * v[j].conj() * (4.0 * s);
                h[i * n + j] -= upd;
            }
        }
        // q <- q (I - 2 v v*)
        for i in 0..n {
            let mut acc = C64::zero();
            for j in (k + 1)..n {
                acc += q[i * n + j] * v[j];
            }
            qv[i] = acc;
        }
        for i in 0..n {
            for j in (k + 1)..n {
                q[i * n + j] -= qv[i] * v[j].conj() * 2.0;
            }
        }
    }

    let mut d: Vec<f64> = (0..n).map(|i| h[i * n + i].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![C64::new(1.0, 0.0); n];
    for k in 0..n - 1 {
        let off = h[(k + 1) * n + k];
        let r = off.norm();
        e[k] = r;
        phases[k + 1] = if r > 0.0 {
            phases[k] * (off / r)
        } else {
            phases[k]
        };
    }

    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tridiagonal_ql(&mut d, &mut e, &mut z, n)?;

    // eigenvectors = q · diag(phases) · z
    let mut qd = q;
    for i in 0..n {
        for j in 0..n {
            qd[i * n + j] *= phases[j];
        }
    }
    let mut vecs = vec![C64::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let a = qd[i * n + k];
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                vecs[i * n + j] += a * z[k * n + j];
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let sorted = CMatrix::from_fn(n, n, |i, j| vecs[i * n + order[j]]);
    Ok((values, sorted))
}

fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) -> Result<()> {
    const MAX_ITER: usize = 64;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::Numerical(
                    "tridiagonal QL iteration did not converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zf = z[k * n + i + 1];
                    let zi = z[k * n + i];
                    z[k * n + i + 1] = s * zi + c * zf;
                    z[k * n + i] = c * zi - s * zf;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// One eigenvalue cluster of a self-adjoint matrix.
#[derive(Clone, Debug)]
pub struct SpectralComponent {
    pub eigenvalue: f64,
    /// Orthogonal projection onto the eigenspace.
    pub projection: CMatrix,
    /// Orthonormal basis of the eigenspace, as columns.
    pub basis: CMatrix,
}

impl SpectralComponent {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }
}

/// Spectral decomposition with eigenvalues merged greedily (in ascending
/// order) whenever consecutive gaps fall below `tol.bound(‖M‖)`.
pub fn herm_spectral(m: &CMatrix, tol: &TolerancePolicy) -> Result<Vec<SpectralComponent>> {
    if !m.is_square() {
        return Err(Error::Shape(
            "spectral decomposition needs a square matrix".into(),
        ));
    }
    let scale = m.hs_norm();
    if !tol.is_zero((m - &m.adjoint()).hs_norm(), scale) {
        return Err(Error::NotHermitian);
    }
    let (values, vecs) = hermitian_eigen(m)?;
    let n = values.len();
    let spec_norm = values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let gap = tol.bound(spec_norm);

    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] <= gap {
            end += 1;
        }
        let cols: Vec<usize> = (start..end).collect();
        let basis = CMatrix::from_fn(n, cols.len(), |i, j| vecs[(i, cols[j])]);
        let projection = &basis * &basis.adjoint();
        let eigenvalue = values[start..end].iter().sum::<f64>() / (end - start) as f64;
        out.push(SpectralComponent {
            eigenvalue,
            projection,
            basis,
        });
        start = end;
    }
    Ok(out)
}

/// Orthonormal columns spanning the range of an (approximate) orthogonal projection.
pub fn projection_range(p: &CMatrix) -> Result<CMatrix> {
    let (values, vecs) = hermitian_eigen(p)?;
    let n = values.len();
    let cols: Vec<usize> = (0..n).filter(|&i| values[i] > 0.5).collect();
    Ok(CMatrix::from_fn(n, cols.len(), |i, j| vecs[(i, cols[j])]))
}

/// Unitary polar factor `T (T*T)^{-1/2}` of an invertible square matrix.
///
/// Returns `None` when `T` is numerically singular.
pub fn polar_unitary(t: &CMatrix, tol: &TolerancePolicy) -> Result<Option<CMatrix>> {
    if !t.is_square() {
        return Ok(None);
    }
    let gram = &t.adjoint() * t;
    let (values, vecs) = hermitian_eigen(&gram)?;
    let top = values.last().copied().unwrap_or(0.0).max(0.0);
    let n = values.len();
    let mut inv_sqrt = CMatrix::zeros(n, n);
    for (k, &lam) in values.iter().enumerate() {
        let s = lam.max(0.0).sqrt();
        if tol.is_zero(s, top.sqrt()) {
            return Ok(None);
        }
        for i in 0..n {
            for j in 0..n {
                inv_sqrt[(i, j)] += vecs[(i, k)] * vecs[(j, k)].conj() / s;
            }
        }
    }
    Ok(Some(t * &inv_sqrt))
}
