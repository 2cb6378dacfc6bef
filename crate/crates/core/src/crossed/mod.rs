//! Order-two automorphisms, the `A₁ ⊕ A₋₁` grading, the doubled-matrix
//! model of `A ⋊ Z/2` and induced representations.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numkernel::{hs_orthonormalize, polar_unitary, CMatrix, Config, TolerancePolicy, C64};
use crate::star_algebra::{
    intertwiners, is_irreducible, unitarily_equivalent, StarAlgebra, StarHom,
};

/// A *-automorphism `σ` with `σ² = id`, stored by its action on the basis.
#[derive(Clone, Debug)]
pub struct OrderTwoAutomorphism {
    algebra: Arc<StarAlgebra>,
    action: StarHom,
}

/// Builds `σ` from the images of the algebra's generators.
///
/// The candidate map is well defined and a unital *-homomorphism exactly when
/// the *-algebra generated by `diag(g, σ(g))` inside `M_{2d}` has the same
/// dimension as `A`; `σ` is then read off that graph algebra.
pub fn make_automorphism(
    alg: Arc<StarAlgebra>,
    generator_images: &[CMatrix],
    tol: &TolerancePolicy,
) -> Result<OrderTwoAutomorphism> {
    let d = alg.ambient_dim();
    let gens: Vec<CMatrix> = if alg.generators().is_empty() {
        alg.basis().to_vec()
    } else {
        alg.generators().to_vec()
    };
    if gens.len() != generator_images.len() {
        return Err(Error::NotAutomorphism(alloc::format!(
            "{} generator images for {} generators",
            generator_images.len(),
            gens.len()
        )));
    }
    for (k, img) in generator_images.iter().enumerate() {
        if img.shape() != (d, d) {
            return Err(Error::Shape(alloc::format!(
                "generator image {k} is {}x{}, expected {d}x{d}",
                img.rows(),
                img.cols()
            )));
        }
        if !alg.contains(img, tol) {
            return Err(Error::NotAutomorphism(alloc::format!(
                "image of generator {k} lies outside the algebra"
            )));
        }
    }
    let graph_gens: Vec<CMatrix> = gens
        .iter()
        .zip(generator_images)
        .map(|(g, s)| CMatrix::block_diag(&[g, s]))
        .collect();
    let graph = StarAlgebra::generate(2 * d, &graph_gens, tol)?;
    if graph.dim() != alg.dim() {
        return Err(Error::NotAutomorphism(alloc::format!(
            "generator images do not extend to a *-homomorphism (graph has dimension {} against {})",
            graph.dim(),
            alg.dim()
        )));
    }
    // Coordinates of the upper-left blocks in the basis of A; column k
    // belongs to graph element k.
    let n = alg.dim();
    let mut upper = CMatrix::zeros(n, n);
    let mut lower = Vec::with_capacity(n);
    for (k, g) in graph.basis().iter().enumerate() {
        let x = g.submatrix(0, 0, d, d);
        for (i, c) in alg.coordinates(&x).into_iter().enumerate() {
            upper[(i, k)] = c;
        }
        lower.push(g.submatrix(d, d, d, d));
    }
    let inv = upper.inverse(tol).ok_or_else(|| {
        Error::NotAutomorphism("graph algebra does not project onto the algebra".into())
    })?;
    let images = (0..n)
        .map(|i| {
            let mut y = CMatrix::zeros(d, d);
            for (k, l) in lower.iter().enumerate() {
                y.axpy(inv[(k, i)], l);
            }
            y
        })
        .collect();
    let action = StarHom::new_trusted(alg.clone(), alg.clone(), images);
    OrderTwoAutomorphism::finish(alg, action, tol)
}

impl OrderTwoAutomorphism {
    /// `σ` from a linear map on `A` given as a closure, validated as a
    /// unital *-homomorphism of order two.
    pub fn from_map(
        alg: Arc<StarAlgebra>,
        f: impl Fn(&CMatrix) -> CMatrix,
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        let images: Vec<CMatrix> = alg.basis().iter().map(f).collect();
        let action = StarHom::new(alg.clone(), alg.clone(), images, tol).map_err(|e| match e {
            Error::InvalidHom(m) => Error::NotAutomorphism(m),
            other => other,
        })?;
        if !action.is_unital(tol) {
            return Err(Error::NotAutomorphism("map is not unital".into()));
        }
        Self::finish(alg, action, tol)
    }

    /// Conjugation by a self-adjoint unitary `u` normalizing `A`.
    pub fn inner(alg: Arc<StarAlgebra>, u: &CMatrix, tol: &TolerancePolicy) -> Result<Self> {
        let ua = u.adjoint();
        Self::from_map(alg, |x| &(u * x) * &ua, tol)
    }

    pub fn identity(alg: Arc<StarAlgebra>) -> Self {
        let action = StarHom::new_trusted(alg.clone(), alg.clone(), alg.basis().to_vec());
        Self {
            algebra: alg,
            action,
        }
    }

    fn finish(alg: Arc<StarAlgebra>, action: StarHom, tol: &TolerancePolicy) -> Result<Self> {
        for (k, b) in alg.basis().iter().enumerate() {
            let back = action.apply(&action.images()[k]);
            if !back.approx_eq(b, tol, b.hs_norm()) {
                return Err(Error::NotAutomorphism(alloc::format!(
                    "σ∘σ differs from the identity on basis element {k}"
                )));
            }
        }
        Ok(Self {
            algebra: alg,
            action,
        })
    }

    pub fn algebra(&self) -> &Arc<StarAlgebra> {
        &self.algebra
    }

    pub fn action(&self) -> &StarHom {
        &self.action
    }

    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        self.action.apply(x)
    }

    /// `π ∘ σ` for a representation `π` of the algebra.
    pub fn twist(&self, pi: &StarHom) -> StarHom {
        pi.compose(&self.action)
    }

    /// Largest `‖σ(σ(b)) − b‖` over the basis.
    pub fn involution_residual(&self) -> f64 {
        self.algebra
            .basis()
            .iter()
            .zip(self.action.images())
            .map(|(b, s)| (&self.apply(s) - b).hs_norm())
            .fold(0.0, f64::max)
    }
}

/// `A = A₁ ⊕ A₋₁`, the `±1` eigenspaces of `σ`.
#[derive(Clone, Debug)]
pub struct Grading {
    pub fixed_basis: Vec<CMatrix>,
    pub odd_basis: Vec<CMatrix>,
}

impl Grading {
    /// Even and odd parts `(½(a+σa), ½(a−σa))`.
    pub fn split(sigma: &OrderTwoAutomorphism, a: &CMatrix) -> (CMatrix, CMatrix) {
        let s = sigma.apply(a);
        ((a + &s).scale_real(0.5), (a - &s).scale_real(0.5))
    }

    /// Largest reconstruction error `‖a − (even + odd)‖` over the algebra basis.
    pub fn reconstruction_residual(sigma: &OrderTwoAutomorphism) -> f64 {
        sigma
            .algebra()
            .basis()
            .iter()
            .map(|a| {
                let (e, o) = Self::split(sigma, a);
                (&(&e + &o) - a).hs_norm()
            })
            .fold(0.0, f64::max)
    }
}

pub fn grading(sigma: &OrderTwoAutomorphism, tol: &TolerancePolicy) -> Result<Grading> {
    let (even, odd): (Vec<CMatrix>, Vec<CMatrix>) = sigma
        .algebra()
        .basis()
        .iter()
        .map(|a| Grading::split(sigma, a))
        .unzip();
    let fixed_basis = hs_orthonormalize(&even, tol);
    let odd_basis = hs_orthonormalize(&odd, tol);
    if fixed_basis.len() + odd_basis.len() != sigma.algebra().dim() {
        return Err(Error::Numerical(alloc::format!(
            "grading dimensions {} + {} do not add up to {}",
            fixed_basis.len(),
            odd_basis.len(),
            sigma.algebra().dim()
        )));
    }
    Ok(Grading {
        fixed_basis,
        odd_basis,
    })
}

/// The algebra of `[[a, b], [σb, σa]]` acting on `C^d ⊕ C^d`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    algebra: Arc<StarAlgebra>,
    sigma: OrderTwoAutomorphism,
    embed: StarHom,
    symmetry: CMatrix,
}

/// `2d x 2d` block flip `[[0, I], [I, 0]]`.
pub fn block_flip(d: usize) -> CMatrix {
    let z = CMatrix::zeros(d, d);
    let i = CMatrix::identity(d);
    CMatrix::block2(&z, &i, &i, &z)
}

pub fn crossed_product(
    sigma: &OrderTwoAutomorphism,
    tol: &TolerancePolicy,
) -> Result<CrossedProduct> {
    let base = sigma.algebra().clone();
    let d = base.ambient_dim();
    let w = block_flip(d);
    let embedded: Vec<CMatrix> = base
        .basis()
        .iter()
        .zip(sigma.action().images())
        .map(|(a, s)| CMatrix::block_diag(&[a, s]))
        .collect();
    let mut spanning = embedded.clone();
    spanning.extend(embedded.iter().map(|e| e * &w));
    let basis = hs_orthonormalize(&spanning, tol);
    if basis.len() != 2 * base.dim() {
        return Err(Error::Numerical(alloc::format!(
            "crossed product has dimension {} instead of {}",
            basis.len(),
            2 * base.dim()
        )));
    }
    let mut generators: Vec<CMatrix> = base
        .generators()
        .iter()
        .map(|g| CMatrix::block_diag(&[g, &sigma.apply(g)]))
        .collect();
    generators.push(w.clone());
    let name = if base.name().is_empty() {
        String::from("crossed product")
    } else {
        alloc::format!("{} x| Z2", base.name())
    };
    let algebra = Arc::new(
        StarAlgebra::from_orthonormal(2 * d, basis)
            .with_generators(generators)
            .with_name(name),
    );
    let embed = StarHom::new_trusted(base, algebra.clone(), embedded);
    Ok(CrossedProduct {
        algebra,
        sigma: sigma.clone(),
        embed,
        symmetry: w,
    })
}

impl CrossedProduct {
    pub fn algebra(&self) -> &Arc<StarAlgebra> {
        &self.algebra
    }

    pub fn base(&self) -> &Arc<StarAlgebra> {
        self.sigma.algebra()
    }

    pub fn sigma(&self) -> &OrderTwoAutomorphism {
        &self.sigma
    }

    /// `ψ: A → A ⋊ Z/2`.
    pub fn embed(&self) -> &StarHom {
        &self.embed
    }

    /// Image of the implementing unitary `W`.
    pub fn symmetry(&self) -> &CMatrix {
        &self.symmetry
    }

    /// The unique `(a, b)` with `c = ψ(a) + ψ(b)·W`.
    pub fn split(&self, c: &CMatrix) -> (CMatrix, CMatrix) {
        let d = self.base().ambient_dim();
        (c.submatrix(0, 0, d, d), c.submatrix(0, d, d, d))
    }

    /// `ψ(a) + ψ(b)·W`.
    pub fn compose_element(&self, a: &CMatrix, b: &CMatrix) -> CMatrix {
        let sa = self.sigma.apply(a);
        let sb = self.sigma.apply(b);
        CMatrix::block2(a, b, &sb, &sa)
    }

    /// Representation `c ↦ ρ(a) + ρ(b)·w` from a covariant pair `(ρ, w)`,
    /// i.e. `w` a self-adjoint unitary with `w ρ(a) w = ρ(σa)`.
    pub fn rep_from_pair(
        &self,
        rho: &StarHom,
        w: &CMatrix,
        tol: &TolerancePolicy,
    ) -> Result<StarHom> {
        let res = covariance_residual(rho, w, &self.sigma);
        let scale = rho.images().iter().map(|x| x.hs_norm()).fold(1.0, f64::max);
        if !tol.is_zero(res, scale) {
            return Err(Error::InvalidHom(alloc::format!(
                "pair is not covariant (residual {res:.3e})"
            )));
        }
        let m = w.rows();
        if !(w * w).approx_eq(&CMatrix::identity(m), tol, (m as f64).sqrt()) {
            return Err(Error::InvalidHom(
                "implementing operator does not square to the identity".into(),
            ));
        }
        Ok(self.rep_from_pair_trusted(rho, w))
    }

    pub(crate) fn rep_from_pair_trusted(&self, rho: &StarHom, w: &CMatrix) -> StarHom {
        let images = self
            .algebra
            .basis()
            .iter()
            .map(|c| {
                let (a, b) = self.split(c);
                &rho.apply(&a) + &(&rho.apply(&b) * w)
            })
            .collect();
        StarHom::rep_trusted(self.algebra.clone(), images)
    }

    /// Restriction of a representation of the crossed product to `A` via `ψ`.
    pub fn restrict_to_base(&self, pi: &StarHom) -> StarHom {
        pi.compose(&self.embed).as_representation()
    }

    /// Residuals of the structural identities: `‖W² − I‖`, `‖W − W*‖`, and
    /// the worst `‖W ψ(a) W − ψ(σa)‖` over the basis.
    pub fn structure_residuals(&self) -> (f64, f64, f64) {
        let w = &self.symmetry;
        let id = CMatrix::identity(w.rows());
        let sq = (&(w * w) - &id).hs_norm();
        let herm = (w - &w.adjoint()).hs_norm();
        let cov = self
            .base()
            .basis()
            .iter()
            .map(|a| {
                let lhs = &(w * &self.embed.apply(a)) * w;
                (&lhs - &self.embed.apply(&self.sigma.apply(a))).hs_norm()
            })
            .fold(0.0, f64::max);
        (sq, herm, cov)
    }

    /// Rank of `(a, b) ↦ ψ(a) + ψ(b)·W` on `A ⊕ A`; full rank is `2·dim A`.
    pub fn decomposition_rank(&self, tol: &TolerancePolicy) -> usize {
        let base = self.base();
        let z = CMatrix::zeros(base.ambient_dim(), base.ambient_dim());
        let mut images: Vec<CMatrix> = base
            .basis()
            .iter()
            .map(|a| self.compose_element(a, &z))
            .collect();
        images.extend(base.basis().iter().map(|b| self.compose_element(&z, b)));
        hs_orthonormalize(&images, tol).len()
    }

    /// `π̃(a) = π(a) ⊕ π(σa)`, `π̃(W)` = block flip on `H ⊕ H`.
    pub fn induce(&self, pi: &StarHom, tol: &TolerancePolicy) -> Result<StarHom> {
        let m = pi.carrier_dim();
        let twisted = self.sigma.twist(pi);
        let images = self
            .algebra
            .basis()
            .iter()
            .map(|c| {
                let (a, b) = self.split(c);
                CMatrix::block2(
                    &pi.apply(&a),
                    &pi.apply(&b),
                    &twisted.apply(&b),
                    &twisted.apply(&a),
                )
            })
            .collect();
        let induced = StarHom::rep_trusted(self.algebra.clone(), images);
        let w = induced.apply(&self.symmetry);
        let flip = block_flip(m);
        if !w.approx_eq(&flip, tol, flip.hs_norm()) {
            return Err(Error::Numerical(
                "induced symmetry is not the block flip".into(),
            ));
        }
        let rho = self.restrict_to_base(&induced);
        let res = covariance_residual(&rho, &w, &self.sigma);
        let scale = rho.images().iter().map(|x| x.hs_norm()).fold(1.0, f64::max);
        if !tol.is_zero(res, scale) {
            return Err(Error::Numerical(alloc::format!(
                "induced representation fails covariance (residual {res:.3e})"
            )));
        }
        Ok(induced)
    }
}

/// Worst `‖w ρ(a) w* − ρ(σa)‖` over the basis of `A`.
pub fn covariance_residual(rho: &StarHom, w: &CMatrix, sigma: &OrderTwoAutomorphism) -> f64 {
    let wa = w.adjoint();
    sigma
        .algebra()
        .basis()
        .iter()
        .zip(sigma.action().images())
        .map(|(a, sa)| {
            let lhs = &(w * &rho.apply(a)) * &wa;
            (&lhs - &rho.apply(sa)).hs_norm()
        })
        .fold(0.0, f64::max)
}

/// Convenience: `induce` on a freshly built crossed product.
pub fn induce(
    pi: &StarHom,
    sigma: &OrderTwoAutomorphism,
    tol: &TolerancePolicy,
) -> Result<(CrossedProduct, StarHom)> {
    let cp = crossed_product(sigma, tol)?;
    let rep = cp.induce(pi, tol)?;
    Ok((cp, rep))
}

/// Outcome of the third irreducibility criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bullet3 {
    /// `true` when no unitary `u` with `u² = 1` and `uπu* = π∘σ` exists.
    Evaluated(bool),
    /// Only decided for irreducible `π`.
    NotEvaluated,
}

#[derive(Clone, Debug)]
pub struct Rep0Criteria {
    /// `π̃` is irreducible.
    pub bullet1: bool,
    /// `π` is irreducible and `π ≄ π∘σ`.
    pub bullet2: bool,
    pub bullet3: Bullet3,
    /// The order-two unitary found when bullet 3 fails.
    pub order_two_witness: Option<CMatrix>,
}

impl Rep0Criteria {
    /// Bullets 1 and 2 agree, and bullet 3 agrees whenever evaluated.
    pub fn consistent(&self) -> bool {
        self.bullet1 == self.bullet2
            && match self.bullet3 {
                Bullet3::Evaluated(b) => b == self.bullet1,
                Bullet3::NotEvaluated => true,
            }
    }
}

pub fn rep0_criteria(pi: &StarHom, cp: &CrossedProduct, cfg: &Config) -> Result<Rep0Criteria> {
    let tol = &cfg.tol;
    let induced = cp.induce(pi, tol)?;
    let bullet1 = is_irreducible(&induced, tol);
    let twisted = cp.sigma().twist(pi);
    let irreducible = is_irreducible(pi, tol);
    let bullet2 = irreducible && !unitarily_equivalent(pi, &twisted, cfg)?.equivalent;
    let (bullet3, order_two_witness) = if irreducible {
        match order_two_intertwiner(pi, &twisted, tol)? {
            Some(u) => (Bullet3::Evaluated(false), Some(u)),
            None => (Bullet3::Evaluated(true), None),
        }
    } else {
        (Bullet3::NotEvaluated, None)
    };
    Ok(Rep0Criteria {
        bullet1,
        bullet2,
        bullet3,
        order_two_witness,
    })
}

/// For irreducible `π`: a unitary `u` with `u² = 1` and `uπu* = π∘σ`, if any.
///
/// The intertwiner space is at most one-dimensional; a unitary `v` in it has
/// `v² = e^{2πiθ}·1` by Schur, and `e^{−iπθ}v` squares to the identity.
pub fn order_two_intertwiner(
    pi: &StarHom,
    twisted: &StarHom,
    tol: &TolerancePolicy,
) -> Result<Option<CMatrix>> {
    let ints = intertwiners(pi, twisted, tol)?;
    let Some(t) = ints.first() else {
        return Ok(None);
    };
    let v = polar_unitary(t, tol)?
        .ok_or_else(|| Error::Numerical("intertwiner between irreducibles is singular".into()))?;
    let m = v.rows();
    let v2 = &v * &v;
    let c = v2.trace() / (m as f64);
    if !v2.approx_eq(&CMatrix::identity(m).scale(c), tol, (m as f64).sqrt()) {
        return Err(Error::Numerical(
            "square of the intertwiner is not scalar".into(),
        ));
    }
    let u = v.scale(C64::from_polar(1.0, -0.5 * c.arg()));
    let ok = (&u * &u).approx_eq(&CMatrix::identity(m), tol, (m as f64).sqrt())
        && covariance_of(&u, pi, twisted, tol);
    if !ok {
        return Err(Error::Numerical(
            "phase-corrected intertwiner failed verification".into(),
        ));
    }
    Ok(Some(u))
}

fn covariance_of(u: &CMatrix, pi: &StarHom, twisted: &StarHom, tol: &TolerancePolicy) -> bool {
    let ua = u.adjoint();
    pi.images()
        .iter()
        .zip(twisted.images())
        .all(|(x, y)| (&(u * x) * &ua).approx_eq(y, tol, x.hs_norm()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Faithfulness {
    pub pi_faithful: bool,
    pub induced_faithful: bool,
}

impl Faithfulness {
    /// `π` faithful implies `π̃` faithful.
    pub fn implication_holds(&self) -> bool {
        !self.pi_faithful || self.induced_faithful
    }
}

pub fn faithfulness_check(
    pi: &StarHom,
    cp: &CrossedProduct,
    tol: &TolerancePolicy,
) -> Result<Faithfulness> {
    let induced = cp.induce(pi, tol)?;
    Ok(Faithfulness {
        pi_faithful: pi.rank(tol) == pi.source().dim(),
        induced_faithful: induced.rank(tol) == cp.algebra().dim(),
    })
}
