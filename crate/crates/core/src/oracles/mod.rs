//! Brute-force checks of the two operator lemmas behind the classification,
//! and a seeded randomized campaign over the irreducibility criteria for
//! induced representations.

mod campaign;
mod random;
mod suite;

pub use campaign::{
    rep0_campaign, run_campaign, CampaignFailure, CampaignMode, CampaignReport, TrialOutcome,
};
pub use random::{
    block_algebra, random_instance, random_matrix, random_unitary, trial_seed, RandomInstance,
};
pub use suite::{lemma_suite, Lemma, LemmaSuiteReport, PairKind};

use core::f64::consts::TAU;

use crate::numkernel::{CMatrix, TolerancePolicy, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct OracleVerdict {
    /// The hypothesis held on every matrix unit and the conclusion verified.
    pub conclusion_holds: bool,
    /// `λ` with `B = λA`, or the phase `e^{2πiθ}`.
    pub dependence_coefficient: Option<C64>,
    /// `θ ∈ [0, 1)` for the second lemma.
    pub theta: Option<f64>,
    /// A matrix unit violating the hypothesis.
    pub witness: Option<CMatrix>,
    /// `‖B − λA‖_HS` for the returned coefficient.
    pub residual: Option<f64>,
}

impl OracleVerdict {
    fn witness(t: CMatrix) -> Self {
        Self {
            conclusion_holds: false,
            dependence_coefficient: None,
            theta: None,
            witness: Some(t),
            residual: None,
        }
    }

    /// Either a hypothesis witness or a verified conclusion.
    pub fn is_decided(&self) -> bool {
        self.witness.is_some() != (self.conclusion_holds && self.dependence_coefficient.is_some())
    }
}

fn check_square_pair(a: &CMatrix, b: &CMatrix) -> Option<usize> {
    (a.is_square() && a.shape() == b.shape()).then_some(a.rows())
}

/// `x_{·i} y_{j·}`, i.e. `X·E_ij·Y`.
fn sandwich_unit(x: &CMatrix, i: usize, j: usize, y: &CMatrix) -> CMatrix {
    CMatrix::from_fn(x.rows(), y.cols(), |r, c| x[(r, i)] * y[(j, c)])
}

/// Residual of `B − λA` with `λ = ⟨A, B⟩/‖A‖²`.
fn best_multiple(a: &CMatrix, b: &CMatrix) -> (C64, f64) {
    let na = a.hs_norm();
    if na == 0.0 {
        return (C64::new(0.0, 0.0), b.hs_norm());
    }
    let lambda = a.hs_inner(b) / (na * na);
    (lambda, (b - &a.scale(lambda)).hs_norm())
}

/// `B·T·A = A·T·B` for all `T` forces `A`, `B` linearly dependent.
///
/// The hypothesis is tested on every matrix unit `E_ij`; on a full pass the
/// coefficient `λ` with `B = λA` is returned after checking the residual.
/// When `A = 0` the pair is trivially dependent and `λ = 0` is reported.
/// Mismatched or non-square shapes yield an undecided verdict.
pub fn lemma_central_check(a: &CMatrix, b: &CMatrix, tol: &TolerancePolicy) -> OracleVerdict {
    let undecided = OracleVerdict {
        conclusion_holds: false,
        dependence_coefficient: None,
        theta: None,
        witness: None,
        residual: None,
    };
    let Some(d) = check_square_pair(a, b) else {
        return undecided;
    };
    let scale = a.hs_norm() * b.hs_norm();
    for i in 0..d {
        for j in 0..d {
            let lhs = sandwich_unit(b, i, j, a);
            let rhs = sandwich_unit(a, i, j, b);
            if !tol.is_zero((&lhs - &rhs).hs_norm(), scale) {
                return OracleVerdict::witness(CMatrix::unit(d, d, i, j));
            }
        }
    }
    let na = a.hs_norm();
    if tol.is_zero(na, 1.0) {
        return OracleVerdict {
            conclusion_holds: true,
            dependence_coefficient: Some(C64::new(0.0, 0.0)),
            residual: Some(na),
            ..undecided
        };
    }
    let (lambda, residual) = best_multiple(a, b);
    OracleVerdict {
        conclusion_holds: residual <= tol.bound(1.0 + na),
        dependence_coefficient: Some(lambda),
        residual: Some(residual),
        ..undecided
    }
}

/// `A·T·A* = B·T·B*` for all `T` forces `B = e^{2πiθ}A`.
pub fn lemma_central2_check(a: &CMatrix, b: &CMatrix, tol: &TolerancePolicy) -> OracleVerdict {
    let undecided = OracleVerdict {
        conclusion_holds: false,
        dependence_coefficient: None,
        theta: None,
        witness: None,
        residual: None,
    };
    let Some(d) = check_square_pair(a, b) else {
        return undecided;
    };
    let (aa, ba) = (a.adjoint(), b.adjoint());
    let scale = a.hs_norm().powi(2).max(b.hs_norm().powi(2));
    for i in 0..d {
        for j in 0..d {
            let lhs = sandwich_unit(a, i, j, &aa);
            let rhs = sandwich_unit(b, i, j, &ba);
            if !tol.is_zero((&lhs - &rhs).hs_norm(), scale) {
                return OracleVerdict::witness(CMatrix::unit(d, d, i, j));
            }
        }
    }
    let na = a.hs_norm();
    let c = if tol.is_zero(na, 1.0) {
        C64::new(1.0, 0.0)
    } else {
        a.hs_inner(b)
    };
    if c.norm() == 0.0 {
        return undecided;
    }
    let theta = (c.arg() / TAU).rem_euclid(1.0);
    let p = C64::from_polar(1.0, TAU * theta);
    let residual = (b - &a.scale(p)).hs_norm();
    OracleVerdict {
        conclusion_holds: residual <= tol.bound(1.0 + na),
        dependence_coefficient: Some(p),
        theta: Some(theta),
        residual: Some(residual),
        witness: None,
    }
}
