use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::{random_matrix, trial_seed};
use super::{lemma_central2_check, lemma_central_check, OracleVerdict};
use crate::error::{Error, Result};
use crate::numkernel::{phase, CMatrix, TolerancePolicy, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    /// `BTA = ATB` for all `T`.
    Central,
    /// `ATA* = BTB*` for all `T`.
    Central2,
}

impl Lemma {
    pub fn as_str(self) -> &'static str {
        match self {
            Lemma::Central => "central",
            Lemma::Central2 => "central2",
        }
    }

    pub fn check(self, a: &CMatrix, b: &CMatrix, tol: &TolerancePolicy) -> OracleVerdict {
        match self {
            Lemma::Central => lemma_central_check(a, b, tol),
            Lemma::Central2 => lemma_central2_check(a, b, tol),
        }
    }
}

/// How a test pair was drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// Independent random `A`, `B`: the hypothesis should fail.
    Independent,
    /// `B = λA` (or `B = e^{2πiθ}A`): the conclusion should hold.
    Dependent,
    /// `B` a rank-one perturbation of a dependent pair: should fail.
    Perturbed,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LemmaSuiteReport {
    pub cases: usize,
    pub witnesses: usize,
    pub conclusions: usize,
    /// Neither a witness nor a verified conclusion.
    pub undecided: usize,
    /// Largest `‖B − λA‖ / (1 + ‖A‖)` over verified conclusions.
    pub max_relative_residual: f64,
    /// Cases whose verdict contradicts how the pair was drawn.
    pub mismatches: Vec<String>,
}

impl LemmaSuiteReport {
    pub fn passed(&self) -> bool {
        self.undecided == 0 && self.mismatches.is_empty()
    }
}

fn draw(lemma: Lemma, kind: PairKind, d: usize, rng: &mut ChaCha8Rng) -> (CMatrix, CMatrix) {
    let a = random_matrix(d, d, rng);
    let coeff = match lemma {
        Lemma::Central => C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        Lemma::Central2 => phase(rng.gen_range(0.0..1.0)),
    };
    let b = match kind {
        PairKind::Independent => random_matrix(d, d, rng),
        PairKind::Dependent => a.scale(coeff),
        PairKind::Perturbed => {
            let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
            let mut b = a.scale(coeff);
            b[(i, j)] += C64::new(0.5, 0.0);
            b
        }
    };
    (a, b)
}

/// `pairs` seeded pairs for each dimension in `dims`, cycling through the
/// three pair kinds. Pair `k` of dimension `d` uses the sub-seed
/// `trial_seed(seed, d·pairs + k)`.
pub fn lemma_suite(
    lemma: Lemma,
    seed: u64,
    pairs: usize,
    dims: &[usize],
    tol: &TolerancePolicy,
) -> Result<LemmaSuiteReport> {
    if dims.contains(&0) {
        return Err(Error::InvalidInput("dimensions must be positive".into()));
    }
    let kinds = [
        PairKind::Independent,
        PairKind::Dependent,
        PairKind::Perturbed,
    ];
    let mut rep = LemmaSuiteReport::default();
    for &d in dims {
        for k in 0..pairs {
            let sub = trial_seed(seed, (d * pairs + k) as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(sub);
            let kind = kinds[k % kinds.len()];
            let (a, b) = draw(lemma, kind, d, &mut rng);
            let v = lemma.check(&a, &b, tol);
            rep.cases += 1;
            if v.witness.is_some() {
                rep.witnesses += 1;
            } else if v.conclusion_holds && v.dependence_coefficient.is_some() {
                rep.conclusions += 1;
                let r = v.residual.unwrap_or(f64::INFINITY) / (1.0 + a.hs_norm());
                rep.max_relative_residual = rep.max_relative_residual.max(r);
            } else {
                rep.undecided += 1;
            }
            let expect_conclusion = kind == PairKind::Dependent;
            if v.is_decided() && (v.witness.is_none()) != expect_conclusion {
                rep.mismatches.push(format!(
                    "{} d={d} pair={k} seed={sub:#018x} kind={kind:?}: conclusion={}",
                    lemma.as_str(),
                    v.witness.is_none()
                ));
            }
        }
    }
    Ok(rep)
}
