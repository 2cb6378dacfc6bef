//! Built-in examples: `M₂` with `σ = Ad diag(1, −1)`, and functions on the
//! `n`-th roots of unity with the flip `ω ↦ −ω` or conjugation `ω ↦ ω̄`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::classify::{classify, Classification, Kind};
use crate::crossed::{make_automorphism, CrossedProduct, OrderTwoAutomorphism};
use crate::error::{Error, Result};
use crate::numkernel::{phase, CMatrix, Config, TolerancePolicy};
use crate::star_algebra::{decompose_rep, StarAlgebra, StarHom};

/// `M₂` with conjugation by `W = diag(1, −1)`.
pub fn build_m2_demo(tol: &TolerancePolicy) -> Result<(Arc<StarAlgebra>, OrderTwoAutomorphism)> {
    let alg = Arc::new(StarAlgebra::full(2).with_name("M2"));
    let w = CMatrix::diag_real(&[1.0, -1.0]);
    let images: Vec<CMatrix> = alg.generators().iter().map(|g| &(&w * g) * &w).collect();
    let sigma = make_automorphism(alg.clone(), &images, tol)?;
    Ok((alg, sigma))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointMap {
    /// `ω ↦ −ω`, i.e. `k ↦ k + n/2`.
    Flip,
    /// `ω ↦ ω̄`, i.e. `k ↦ −k`.
    Conj,
}

impl PointMap {
    pub fn as_str(self) -> &'static str {
        match self {
            PointMap::Flip => "flip",
            PointMap::Conj => "conj",
        }
    }

    pub fn image(self, n: usize, k: usize) -> usize {
        match self {
            PointMap::Flip => (k + n / 2) % n,
            PointMap::Conj => (n - k) % n,
        }
    }
}

/// Diagonal functions on `μ_n = {ω_k = e^{2πik/n}}` with an involutive
/// point map.
#[derive(Clone, Debug)]
pub struct CircleModel {
    pub n: usize,
    pub point_map: PointMap,
    pub algebra: Arc<StarAlgebra>,
    pub sigma: OrderTwoAutomorphism,
    /// `z = diag(ω_0, …, ω_{n−1})`.
    pub z_element: CMatrix,
}

pub fn build_circle(n: usize, point_map: PointMap, tol: &TolerancePolicy) -> Result<CircleModel> {
    if n < 2 {
        return Err(Error::InvalidInput(alloc::format!(
            "need at least 2 points, got {n}"
        )));
    }
    if point_map == PointMap::Flip && n % 2 == 1 {
        return Err(Error::FlipOddN(n));
    }
    let z = CMatrix::diag(
        &(0..n)
            .map(|k| phase(k as f64 / n as f64))
            .collect::<Vec<_>>(),
    );
    let algebra = Arc::new(
        StarAlgebra::generate(n, core::slice::from_ref(&z), tol)?
            .with_name(alloc::format!("C(mu_{n})")),
    );
    if algebra.dim() != n {
        return Err(Error::Numerical(alloc::format!(
            "coordinate function generated dimension {} instead of {n}",
            algebra.dim()
        )));
    }
    let sigma = OrderTwoAutomorphism::from_map(
        algebra.clone(),
        |f| {
            CMatrix::diag(
                &(0..n)
                    .map(|k| f[(point_map.image(n, k), point_map.image(n, k))])
                    .collect::<Vec<_>>(),
            )
        },
        tol,
    )?;
    Ok(CircleModel {
        n,
        point_map,
        algebra,
        sigma,
        z_element: z,
    })
}

impl CircleModel {
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&k| self.point_map.image(self.n, k) == k)
            .collect()
    }

    /// The character `f ↦ f(ω_k)`.
    pub fn evaluation(&self, k: usize) -> StarHom {
        let images = self
            .algebra
            .basis()
            .iter()
            .map(|b| CMatrix::diag(&[b[(k, k)]]))
            .collect();
        StarHom::rep_trusted(self.algebra.clone(), images)
    }

    /// `Some(k)` when `φ` is the evaluation at `ω_k`.
    pub fn evaluation_point(&self, phi: &StarHom, tol: &TolerancePolicy) -> Option<usize> {
        if phi.carrier_dim() != 1 {
            return None;
        }
        let v = phi.apply(&self.z_element)[(0, 0)];
        let k = (0..self.n).min_by(|&a, &b| {
            let da = (v - phase(a as f64 / self.n as f64)).norm();
            let db = (v - phase(b as f64 / self.n as f64)).norm();
            da.total_cmp(&db)
        })?;
        let ev = self.evaluation(k);
        phi.images()
            .iter()
            .zip(ev.images())
            .all(|(x, y)| x.approx_eq(y, tol, 1.0))
            .then_some(k)
    }
}

/// Counts of irreducible classes by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub type1_count: usize,
    pub type2split_count: usize,
    pub type2induced_count: usize,
    /// Carrier dimension of each class, in decomposition order.
    pub class_dims: Vec<usize>,
}

impl Census {
    pub fn triple(&self) -> (usize, usize, usize) {
        (
            self.type1_count,
            self.type2split_count,
            self.type2induced_count,
        )
    }

    pub fn class_count(&self) -> usize {
        self.class_dims.len()
    }

    /// `Σ dim²`, which equals the dimension of the crossed product.
    pub fn dimension_sum(&self) -> usize {
        self.class_dims.iter().map(|d| d * d).sum()
    }
}

/// One irreducible class of a crossed product with its classification.
#[derive(Clone, Debug)]
pub struct ClassifiedIrrep {
    pub irrep: StarHom,
    pub classification: Classification,
}

/// Decompose the defining representation of the crossed product and
/// classify each irreducible class.
pub fn classified_irreps(cp: &CrossedProduct, cfg: &Config) -> Result<Vec<ClassifiedIrrep>> {
    let d = decompose_rep(&cp.algebra().identity_rep(), cfg)?;
    d.classes
        .into_iter()
        .map(|c| {
            let classification = classify(cp, &c.irrep, cfg)?;
            Ok(ClassifiedIrrep {
                irrep: c.irrep,
                classification,
            })
        })
        .collect()
}

pub fn census(cp: &CrossedProduct, cfg: &Config) -> Result<Census> {
    Ok(tally(&classified_irreps(cp, cfg)?))
}

pub fn tally(irreps: &[ClassifiedIrrep]) -> Census {
    let mut c = Census::default();
    for ci in irreps {
        match ci.classification.kind() {
            Kind::Type1 => c.type1_count += 1,
            Kind::Type2Split => c.type2split_count += 1,
            Kind::Type2Induced => c.type2induced_count += 1,
        }
        c.class_dims.push(ci.irrep.carrier_dim());
    }
    c
}
