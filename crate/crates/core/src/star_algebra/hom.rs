use alloc::sync::Arc;
use alloc::vec::Vec;

use super::StarAlgebra;
use crate::error::{Error, Result};
use crate::numkernel::{linear_combination, CMatrix, TolerancePolicy};

/// Linear, multiplicative, adjoint-preserving map between algebras, stored
/// by the images of the source basis.
///
/// A representation is a `StarHom` whose target is the full matrix algebra
/// on its carrier space.
#[derive(Clone, Debug)]
pub struct StarHom {
    source: Arc<StarAlgebra>,
    target: Arc<StarAlgebra>,
    images: Vec<CMatrix>,
}

impl StarHom {
    /// Validated constructor: images must lie in the target, and the linear
    /// extension must preserve adjoints and products of basis pairs.
    pub fn new(
        source: Arc<StarAlgebra>,
        target: Arc<StarAlgebra>,
        images: Vec<CMatrix>,
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::InvalidHom(alloc::format!(
                "{} images for a source of dimension {}",
                images.len(),
                source.dim()
            )));
        }
        let m = target.ambient_dim();
        for (k, img) in images.iter().enumerate() {
            if img.shape() != (m, m) {
                return Err(Error::Shape(alloc::format!(
                    "image {k} is {}x{}, expected {m}x{m}",
                    img.rows(),
                    img.cols()
                )));
            }
            if !target.contains(img, tol) {
                return Err(Error::InvalidHom(alloc::format!(
                    "image {k} lies outside the target algebra"
                )));
            }
        }
        let hom = Self {
            source,
            target,
            images,
        };
        hom.check_star_and_products(tol)?;
        Ok(hom)
    }

    /// Unital representation on `C^m`, `m` taken from the image shapes.
    pub fn representation(
        source: Arc<StarAlgebra>,
        images: Vec<CMatrix>,
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        let m = images
            .first()
            .map(|x| x.rows())
            .ok_or_else(|| Error::InvalidHom("a representation needs at least one image".into()))?;
        let hom = Self::new(source, Arc::new(StarAlgebra::full(m)), images, tol)?;
        if !hom.is_unital(tol) {
            return Err(Error::NonUnital);
        }
        Ok(hom)
    }

    /// Skips validation; for maps that are *-homomorphisms by construction.
    pub(crate) fn new_trusted(
        source: Arc<StarAlgebra>,
        target: Arc<StarAlgebra>,
        images: Vec<CMatrix>,
    ) -> Self {
        debug_assert_eq!(images.len(), source.dim());
        Self {
            source,
            target,
            images,
        }
    }

    pub(crate) fn rep_trusted(source: Arc<StarAlgebra>, images: Vec<CMatrix>) -> Self {
        let m = images.first().map(|x| x.rows()).unwrap_or(1);
        Self::new_trusted(source, Arc::new(StarAlgebra::full(m)), images)
    }

    fn check_star_and_products(&self, tol: &TolerancePolicy) -> Result<()> {
        let basis = self.source.basis();
        for (i, (b, img)) in basis.iter().zip(&self.images).enumerate() {
            let lhs = self.apply(&b.adjoint());
            let rhs = img.adjoint();
            if !lhs.approx_eq(&rhs, tol, img.hs_norm()) {
                return Err(Error::InvalidHom(alloc::format!(
                    "adjoint not preserved on basis element {i}"
                )));
            }
        }
        for (i, (bi, xi)) in basis.iter().zip(&self.images).enumerate() {
            for (j, (bj, xj)) in basis.iter().zip(&self.images).enumerate() {
                let lhs = self.apply(&(bi * bj));
                let rhs = xi * xj;
                if !lhs.approx_eq(&rhs, tol, xi.hs_norm() * xj.hs_norm()) {
                    return Err(Error::InvalidHom(alloc::format!(
                        "not multiplicative on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<StarAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<StarAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[CMatrix] {
        &self.images
    }

    /// Dimension of the space the target acts on.
    pub fn carrier_dim(&self) -> usize {
        self.target.ambient_dim()
    }

    pub fn is_unital(&self, tol: &TolerancePolicy) -> bool {
        let one = self.apply(&self.source.identity());
        let id = CMatrix::identity(self.carrier_dim());
        one.approx_eq(&id, tol, id.hs_norm())
    }

    /// Image of an arbitrary element of the source (projected onto its span).
    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        let coeffs = self.source.coordinates(x);
        let m = self.carrier_dim();
        linear_combination(&self.images, &coeffs, m, m)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &StarHom) -> StarHom {
        let images = inner.images.iter().map(|x| self.apply(x)).collect();
        StarHom::new_trusted(inner.source.clone(), self.target.clone(), images)
    }

    /// `x ↦ u·self(x)·u*` for a unitary `u` (target becomes the full algebra).
    pub fn conjugate(&self, u: &CMatrix) -> StarHom {
        let ua = u.adjoint();
        let images = self.images.iter().map(|x| &(u * x) * &ua).collect();
        StarHom::rep_trusted(self.source.clone(), images)
    }

    /// Restriction to a subalgebra of the source.
    pub fn restrict(&self, sub: Arc<StarAlgebra>) -> StarHom {
        let images = sub.basis().iter().map(|x| self.apply(x)).collect();
        StarHom::new_trusted(sub, self.target.clone(), images)
    }

    /// Block-diagonal direct sum of representations of a common source.
    pub fn direct_sum(reps: &[&StarHom]) -> Result<StarHom> {
        let first = reps
            .first()
            .ok_or_else(|| Error::InvalidInput("empty direct sum".into()))?;
        let n = first.source.dim();
        if reps.iter().any(|r| r.source.dim() != n) {
            return Err(Error::InvalidInput(
                "direct sum of representations of different algebras".into(),
            ));
        }
        let images = (0..n)
            .map(|k| {
                let blocks: Vec<&CMatrix> = reps.iter().map(|r| &r.images[k]).collect();
                CMatrix::block_diag(&blocks)
            })
            .collect();
        Ok(StarHom::rep_trusted(first.source.clone(), images))
    }

    /// Same images viewed as a representation on the target's ambient space.
    pub fn as_representation(&self) -> StarHom {
        StarHom::rep_trusted(self.source.clone(), self.images.clone())
    }

    /// Dimension of the image span; equals the source dimension iff injective.
    pub fn rank(&self, tol: &TolerancePolicy) -> usize {
        crate::numkernel::hs_orthonormalize(&self.images, tol).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::C64;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn diagonal2() -> Arc<StarAlgebra> {
        Arc::new(StarAlgebra::generate(2, &[CMatrix::diag_real(&[1.0, -1.0])], &tol()).unwrap())
    }

    #[test]
    fn characters_of_c2_are_reps() {
        let a = diagonal2();
        for k in 0..2 {
            let images = a
                .basis()
                .iter()
                .map(|b| CMatrix::diag(&[b[(k, k)]]))
                .collect();
            let chi = StarHom::representation(a.clone(), images, &tol()).unwrap();
            assert_eq!(chi.carrier_dim(), 1);
        }
    }

    #[test]
    fn transpose_is_not_multiplicative() {
        let m2 = Arc::new(StarAlgebra::full(2));
        let images = m2.basis().iter().map(|b| b.transpose()).collect();
        assert!(matches!(
            StarHom::representation(m2, images, &tol()),
            Err(Error::InvalidHom(_))
        ));
    }

    #[test]
    fn corner_embedding_is_non_unital() {
        let scalars = Arc::new(StarAlgebra::generate(1, &[], &tol()).unwrap());
        let images = alloc::vec![CMatrix::unit(2, 2, 0, 0)];
        assert_eq!(
            StarHom::representation(scalars.clone(), images.clone(), &tol()).unwrap_err(),
            Error::NonUnital
        );
        let hom = StarHom::new(scalars, Arc::new(StarAlgebra::full(2)), images, &tol()).unwrap();
        assert!(!hom.is_unital(&tol()));
    }

    #[test]
    fn apply_is_linear_extension() {
        let m2 = Arc::new(StarAlgebra::full(2));
        let id = m2.identity_rep();
        let x = CMatrix::from_fn(2, 2, |i, j| C64::new(i as f64, j as f64));
        assert!((&id.apply(&x) - &x).hs_norm() < 1e-14);
    }
}
