//! The dichotomy for irreducible representations of `A ⋊ Z/2`.
//!
//! With `w = π(W)`, either `w = ±1` (Type 1), or `w` has spectrum `{−1, 1}`
//! and `π` splits into corners `[[α, β], [γ, δ]]` along its eigenspaces
//! (Type 2). In Type 2, `α ≄ δ` exactly when `π|_A` stays irreducible;
//! otherwise `π` is induced from some `φ` with `φ ≄ φ∘σ`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::crossed::{
    grading, order_two_intertwiner, CrossedProduct, Grading, OrderTwoAutomorphism,
};
use crate::error::{Error, Result};
use crate::numkernel::{herm_spectral, CMatrix, Config, TolerancePolicy, C64};
use crate::star_algebra::{
    decompose_rep, intertwiner_space, is_irreducible, unitarily_equivalent, StarAlgebra, StarHom,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Type1,
    Type2Split,
    Type2Induced,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Type1 => "Type1",
            Kind::Type2Split => "Type2Split",
            Kind::Type2Induced => "Type2Induced",
        }
    }
}

/// Corners of `π|_A` relative to `H = H₁ ⊕ H₋₁`, the eigenspaces of `π(W)`.
#[derive(Clone, Debug)]
pub struct CornerData {
    /// The fixed-point algebra `A₁`.
    pub fixed: Arc<StarAlgebra>,
    /// `α` on `H₁`, as a representation of `A₁`.
    pub alpha: StarHom,
    /// `δ` on `H₋₁`, as a representation of `A₁`.
    pub delta: StarHom,
    /// Isometries `C^{k} → H` onto `H₁` and `H₋₁`.
    pub e_plus: CMatrix,
    pub e_minus: CMatrix,
    /// `β(b)` and `γ(b)` on the basis of `A`.
    pub beta_images: Vec<CMatrix>,
    pub gamma_images: Vec<CMatrix>,
    /// Restriction of `π` to `A`.
    restricted: StarHom,
}

impl CornerData {
    /// Spectral projections `(P₁, P₋₁)`.
    pub fn eigenprojections(&self) -> (CMatrix, CMatrix) {
        (
            &self.e_plus * &self.e_plus.adjoint(),
            &self.e_minus * &self.e_minus.adjoint(),
        )
    }

    fn corner(&self, x: &CMatrix, left: &CMatrix, right: &CMatrix) -> CMatrix {
        &(&left.adjoint() * &self.restricted.apply(x)) * right
    }

    /// `α(x)` for any `x ∈ A` (the upper-left corner).
    pub fn alpha_of(&self, x: &CMatrix) -> CMatrix {
        self.corner(x, &self.e_plus, &self.e_plus)
    }

    pub fn beta_of(&self, x: &CMatrix) -> CMatrix {
        self.corner(x, &self.e_plus, &self.e_minus)
    }

    pub fn gamma_of(&self, x: &CMatrix) -> CMatrix {
        self.corner(x, &self.e_minus, &self.e_plus)
    }

    pub fn delta_of(&self, x: &CMatrix) -> CMatrix {
        self.corner(x, &self.e_minus, &self.e_minus)
    }

    /// Largest violation of `α(A₋₁) = δ(A₋₁) = 0` and `β(A₁) = γ(A₁) = 0`.
    pub fn vanishing_residual(&self, grading: &Grading) -> f64 {
        let odd = grading
            .odd_basis
            .iter()
            .map(|a| self.alpha_of(a).hs_norm().max(self.delta_of(a).hs_norm()));
        let even = grading
            .fixed_basis
            .iter()
            .map(|a| self.beta_of(a).hs_norm().max(self.gamma_of(a).hs_norm()));
        odd.chain(even).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub enum Classification {
    /// `π(W) = sign · I`.
    Type1 { sign: i8 },
    /// `α ≄ δ`; `π|_A` is irreducible.
    Type2Split { corners: CornerData },
    /// `α ≃ δ`; `π ≃ π_φ` with `π_φ(a) = φ(a) ⊕ φ(σa)` and `π_φ(W)` the flip.
    Type2Induced {
        corners: CornerData,
        phi: StarHom,
        /// The principal square root of the linking scalar `λ` (`γ′ = λβ′`).
        eta: C64,
    },
}

impl Classification {
    pub fn kind(&self) -> Kind {
        match self {
            Classification::Type1 { .. } => Kind::Type1,
            Classification::Type2Split { .. } => Kind::Type2Split,
            Classification::Type2Induced { .. } => Kind::Type2Induced,
        }
    }

    pub fn sign(&self) -> Option<i8> {
        match self {
            Classification::Type1 { sign } => Some(*sign),
            _ => None,
        }
    }

    pub fn corners(&self) -> Option<&CornerData> {
        match self {
            Classification::Type1 { .. } => None,
            Classification::Type2Split { corners }
            | Classification::Type2Induced { corners, .. } => Some(corners),
        }
    }

    pub fn inducing_rep(&self) -> Option<&StarHom> {
        match self {
            Classification::Type2Induced { phi, .. } => Some(phi),
            _ => None,
        }
    }
}

/// Spectral split of `π(W)`; `Err(sign)` when it is scalar.
fn symmetry_spectrum(
    cp: &CrossedProduct,
    pi: &StarHom,
    tol: &TolerancePolicy,
) -> Result<core::result::Result<(CMatrix, CMatrix), i8>> {
    let w = pi.apply(cp.symmetry());
    let comps = herm_spectral(&w, tol)?;
    let scale = (w.rows() as f64).sqrt();
    for c in &comps {
        if !tol.is_zero(c.eigenvalue.abs() - 1.0, scale) {
            return Err(Error::Numerical(alloc::format!(
                "symmetry image has eigenvalue {:.6} off ±1",
                c.eigenvalue
            )));
        }
    }
    match comps.as_slice() {
        [only] => Ok(Err(if only.eigenvalue > 0.0 { 1 } else { -1 })),
        [minus, plus] => Ok(Ok((plus.basis.clone(), minus.basis.clone()))),
        _ => Err(Error::Numerical(
            "symmetry image has more than two eigenvalues".into(),
        )),
    }
}

pub fn corner_maps(cp: &CrossedProduct, pi: &StarHom, tol: &TolerancePolicy) -> Result<CornerData> {
    let (e_plus, e_minus) = match symmetry_spectrum(cp, pi, tol)? {
        Ok(pair) => pair,
        Err(_) => return Err(Error::NoCornerDecomposition),
    };
    let grading = grading(cp.sigma(), tol)?;
    build_corners(cp, pi, &grading, e_plus, e_minus, tol)
}

fn build_corners(
    cp: &CrossedProduct,
    pi: &StarHom,
    grading: &Grading,
    e_plus: CMatrix,
    e_minus: CMatrix,
    tol: &TolerancePolicy,
) -> Result<CornerData> {
    let base = cp.base();
    let fixed = Arc::new(
        StarAlgebra::from_orthonormal(base.ambient_dim(), grading.fixed_basis.clone())
            .with_name("A1"),
    );
    let restricted = cp.restrict_to_base(pi);
    let compress =
        |x: &CMatrix, l: &CMatrix, r: &CMatrix| &(&l.adjoint() * &restricted.apply(x)) * r;
    let alpha_images = fixed
        .basis()
        .iter()
        .map(|a| compress(a, &e_plus, &e_plus))
        .collect();
    let delta_images = fixed
        .basis()
        .iter()
        .map(|a| compress(a, &e_minus, &e_minus))
        .collect();
    let beta_images = base
        .basis()
        .iter()
        .map(|a| compress(a, &e_plus, &e_minus))
        .collect();
    let gamma_images = base
        .basis()
        .iter()
        .map(|a| compress(a, &e_minus, &e_plus))
        .collect();
    let corners = CornerData {
        alpha: StarHom::rep_trusted(fixed.clone(), alpha_images),
        delta: StarHom::rep_trusted(fixed.clone(), delta_images),
        fixed,
        e_plus,
        e_minus,
        beta_images,
        gamma_images,
        restricted,
    };
    let res = corners.vanishing_residual(grading);
    let scale = pi.images().iter().map(|x| x.hs_norm()).fold(1.0, f64::max);
    if !tol.is_zero(res, scale) {
        return Err(Error::Numerical(alloc::format!(
            "corner maps fail the vanishing conditions (residual {res:.3e})"
        )));
    }
    Ok(corners)
}

pub fn classify(cp: &CrossedProduct, pi: &StarHom, cfg: &Config) -> Result<Classification> {
    let tol = &cfg.tol;
    if !is_irreducible(pi, tol) {
        return Err(Error::Reducible);
    }
    let (e_plus, e_minus) = match symmetry_spectrum(cp, pi, tol)? {
        Ok(pair) => pair,
        Err(sign) => return Ok(Classification::Type1 { sign }),
    };
    let grading = grading(cp.sigma(), tol)?;
    let corners = build_corners(cp, pi, &grading, e_plus, e_minus, tol)?;
    let eq = unitarily_equivalent(&corners.alpha, &corners.delta, cfg)?;
    if !eq.equivalent {
        return Ok(Classification::Type2Split { corners });
    }
    let w0 = eq
        .witness
        .ok_or_else(|| Error::Numerical("equivalent corners without a unitary witness".into()))?;
    let (phi, eta) = recover_inducing_rep(cp, &corners, &grading, &w0, tol)?;
    Ok(Classification::Type2Induced { corners, phi, eta })
}

/// With `w0 α w0* = δ`, set `β′ = β·w0`, `γ′ = w0*·γ`. On `A₋₁`, `γ′ = λβ′`
/// for one unimodular `λ`; with `η = √λ`, `φ = α + ηβ′` is a representation
/// of `A` and `π ≃ π_φ` (conjugating by `diag(1, η̄)` then the Hadamard).
fn recover_inducing_rep(
    cp: &CrossedProduct,
    corners: &CornerData,
    grading: &Grading,
    w0: &CMatrix,
    tol: &TolerancePolicy,
) -> Result<(StarHom, C64)> {
    let w0a = w0.adjoint();
    let pairs: Vec<(CMatrix, CMatrix)> = grading
        .odd_basis
        .iter()
        .map(|a| (&corners.beta_of(a) * w0, &w0a * &corners.gamma_of(a)))
        .collect();
    let (bmax, gmax) = pairs
        .iter()
        .max_by(|x, y| x.0.hs_norm().total_cmp(&y.0.hs_norm()))
        .ok_or_else(|| Error::Numerical("odd part is trivial in a Type 2 representation".into()))?;
    let nb = bmax.hs_norm();
    if tol.is_zero(nb, 1.0) {
        return Err(Error::Numerical("β′ vanishes on the odd part".into()));
    }
    let lambda = bmax.hs_inner(gmax) / (nb * nb);
    if !tol.is_zero(lambda.norm() - 1.0, 1.0) {
        return Err(Error::Numerical(alloc::format!(
            "linking scalar has modulus {:.6}",
            lambda.norm()
        )));
    }
    for (b, g) in &pairs {
        if !g.approx_eq(&b.scale(lambda), tol, b.hs_norm().max(g.hs_norm())) {
            return Err(Error::Numerical(
                "γ′ is not a constant multiple of β′".into(),
            ));
        }
    }
    let eta = lambda.sqrt();
    let sigma = cp.sigma();
    let images: Vec<CMatrix> = cp
        .base()
        .basis()
        .iter()
        .map(|x| {
            let (even, odd) = Grading::split(sigma, x);
            let b = &corners.beta_of(&odd) * w0;
            &corners.alpha_of(&even) + &b.scale(eta)
        })
        .collect();
    let phi = StarHom::representation(cp.base().clone(), images, tol).map_err(|e| {
        Error::Numerical(alloc::format!("recovered φ is not a representation: {e}"))
    })?;
    Ok((phi, eta))
}

/// Outcome of the splitting criterion for an irreducible `π` of `A`.
#[derive(Clone, Debug)]
pub struct SplittingCheck {
    /// A non-scalar unitary `u` with `u² = 1` and `uπu* = π∘σ` exists.
    pub lhs: bool,
    /// `π|_{A₁}` is a sum of two inequivalent irreducibles, each once.
    pub rhs: bool,
    pub witness: Option<CMatrix>,
}

impl SplittingCheck {
    pub fn agrees(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn corollary_splitting(
    pi: &StarHom,
    sigma: &OrderTwoAutomorphism,
    cfg: &Config,
) -> Result<SplittingCheck> {
    let tol = &cfg.tol;
    if !is_irreducible(pi, tol) {
        return Err(Error::Reducible);
    }
    let twisted = sigma.twist(pi);
    let witness = order_two_intertwiner(pi, &twisted, tol)?.filter(|u| {
        let m = u.rows();
        let c = u.trace() / (m as f64);
        !u.approx_eq(&CMatrix::identity(m).scale(c), tol, (m as f64).sqrt())
    });
    let g = grading(sigma, tol)?;
    let fixed = Arc::new(StarAlgebra::from_orthonormal(
        sigma.algebra().ambient_dim(),
        g.fixed_basis,
    ));
    let restricted = pi.restrict(fixed).as_representation();
    let d = decompose_rep(&restricted, cfg)?;
    let rhs = d.classes.len() == 2 && d.classes.iter().all(|c| c.multiplicity == 1);
    Ok(SplittingCheck {
        lhs: witness.is_some(),
        rhs,
        witness,
    })
}

/// A representation of the crossed product extended to `A ⋊ Z` by
/// `W_Z ↦ λ·π(W)`.
#[derive(Clone, Debug)]
pub struct ZExtension {
    pub base_rep: StarHom,
    pub lambda: C64,
    pub wz_image: CMatrix,
}

impl ZExtension {
    /// Irreducibility of the family `π(A) ∪ {λπ(W), (λπ(W))*}`.
    pub fn is_irreducible(&self, cp: &CrossedProduct, tol: &TolerancePolicy) -> Result<bool> {
        let mut gens: Vec<CMatrix> = cp
            .base()
            .basis()
            .iter()
            .map(|a| self.base_rep.apply(&cp.embed().apply(a)))
            .collect();
        gens.push(self.wz_image.clone());
        gens.push(self.wz_image.adjoint());
        Ok(intertwiner_space(&gens, &gens, tol)?.len() == 1)
    }
}

pub fn extend_to_z(
    cp: &CrossedProduct,
    pi2: &StarHom,
    lambda: C64,
    tol: &TolerancePolicy,
) -> Result<ZExtension> {
    if !tol.is_zero(lambda.norm() - 1.0, 1.0) {
        return Err(Error::NonUnitLambda(lambda.norm()));
    }
    let wz = pi2.apply(cp.symmetry()).scale(lambda);
    let m = wz.rows();
    let rho = cp.restrict_to_base(pi2);
    let res = crate::crossed::covariance_residual(&rho, &wz, cp.sigma());
    let scale = rho.images().iter().map(|x| x.hs_norm()).fold(1.0, f64::max);
    if !tol.is_zero(res, scale) {
        return Err(Error::Numerical(alloc::format!(
            "extension fails covariance (residual {res:.3e})"
        )));
    }
    let sq = CMatrix::identity(m).scale(lambda * lambda);
    if !(&wz * &wz).approx_eq(&sq, tol, (m as f64).sqrt()) {
        return Err(Error::Numerical("W_Z image does not square to λ²".into()));
    }
    Ok(ZExtension {
        base_rep: pi2.clone(),
        lambda,
        wz_image: wz,
    })
}
