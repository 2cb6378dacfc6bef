use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::{block_algebra, random_instance, random_unitary, trial_seed, RandomInstance};
use crate::crossed::{
    crossed_product, faithfulness_check, grading, rep0_criteria, Bullet3, CrossedProduct, Grading,
    OrderTwoAutomorphism,
};
use crate::error::{Error, Result};
use crate::numkernel::{CMatrix, Config, TolerancePolicy};
use crate::star_algebra::{unitarily_equivalent, StarHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CampaignMode {
    /// Random block algebras, automorphisms and representations.
    Random,
    /// As `Random` but with `σ = id`.
    ForcedIdentity,
    /// `C ⊕ C` with the swap and the first character.
    ForcedSwap,
}

impl CampaignMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CampaignMode::Random => "random",
            CampaignMode::ForcedIdentity => "identity",
            CampaignMode::ForcedSwap => "swap",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignFailure {
    pub trial: u64,
    /// Instance data sufficient for replay.
    pub descriptor: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub descriptor: String,
    pub bullet1: bool,
    pub bullet2: bool,
    pub bullet3: Bullet3,
    pub pi_irreducible: bool,
    pub pi_faithful: bool,
    pub induced_faithful: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignReport {
    pub seed: u64,
    pub trials: u64,
    pub mode: CampaignMode,
    pub failures: Vec<CampaignFailure>,
    pub outcomes: Vec<TrialOutcome>,
    /// Wall-clock seconds, filled in by callers that can measure time.
    pub elapsed: Option<f64>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random-mode campaign.
pub fn rep0_campaign(
    seed: u64,
    trials: u64,
    max_block: usize,
    tol: &TolerancePolicy,
) -> Result<CampaignReport> {
    run_campaign(seed, trials, max_block, CampaignMode::Random, tol)
}

/// Runs `trials` independent trials, each seeded by [`trial_seed`].
///
/// Per trial the following are checked: bullets 1 and 2 agree; bullet 3
/// agrees with them when `π` is irreducible; bullet 2 matches the value
/// predicted from the instance; `π` faithful implies `π̃` faithful; the
/// grading reconstructs every basis element; and inducing a unitarily
/// conjugated `π` gives an equivalent representation. Numerical errors are
/// recorded as failures.
pub fn run_campaign(
    seed: u64,
    trials: u64,
    max_block: usize,
    mode: CampaignMode,
    tol: &TolerancePolicy,
) -> Result<CampaignReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    if max_block == 0 {
        return Err(Error::InvalidInput("max_block must be positive".into()));
    }
    let mut report = CampaignReport {
        seed,
        trials,
        mode,
        failures: Vec::new(),
        outcomes: Vec::new(),
        elapsed: None,
    };
    for t in 0..trials {
        let sub = trial_seed(seed, t);
        let inst = match mode {
            CampaignMode::Random => random_instance(sub, max_block, false, tol),
            CampaignMode::ForcedIdentity => random_instance(sub, max_block, true, tol),
            CampaignMode::ForcedSwap => swap_instance(sub, tol),
        };
        let inst = match inst {
            Ok(i) => i,
            Err(e) => {
                report.failures.push(CampaignFailure {
                    trial: t,
                    descriptor: format!("seed={sub:#018x}"),
                    expected: "instance generation".into(),
                    observed: e.to_string(),
                });
                continue;
            }
        };
        let cfg = Config::new(*tol, sub);
        match run_trial(t, &inst, mode, &cfg) {
            Ok((outcome, failures)) => {
                report.outcomes.push(outcome);
                report.failures.extend(failures);
            }
            Err(e) => report.failures.push(CampaignFailure {
                trial: t,
                descriptor: inst.replay_data(),
                expected: "no numerical error".into(),
                observed: e.to_string(),
            }),
        }
    }
    Ok(report)
}

fn swap_instance(seed: u64, tol: &TolerancePolicy) -> Result<RandomInstance> {
    let algebra = Arc::new(block_algebra(&[1, 1]));
    let implementer = CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])?;
    let sigma = OrderTwoAutomorphism::inner(algebra.clone(), &implementer, tol)?;
    let images = algebra
        .basis()
        .iter()
        .map(|b| CMatrix::diag(&[b[(0, 0)]]))
        .collect();
    let pi = StarHom::representation(algebra.clone(), images, tol)?;
    Ok(RandomInstance {
        seed,
        block_sizes: alloc::vec![1, 1],
        swap: Some((0, 1)),
        algebra,
        implementer,
        sigma,
        multiplicities: alloc::vec![1, 0],
        frame: CMatrix::identity(1),
        pi,
    })
}

fn run_trial(
    trial: u64,
    inst: &RandomInstance,
    mode: CampaignMode,
    cfg: &Config,
) -> Result<(TrialOutcome, Vec<CampaignFailure>)> {
    let tol = &cfg.tol;
    let cp: CrossedProduct = crossed_product(&inst.sigma, tol)?;
    let crit = rep0_criteria(&inst.pi, &cp, cfg)?;
    let faith = faithfulness_check(&inst.pi, &cp, tol)?;
    let pi_irreducible = crate::star_algebra::is_irreducible(&inst.pi, tol);

    let mut failures = Vec::new();
    let mut fail = |expected: String, observed: String| {
        failures.push(CampaignFailure {
            trial,
            descriptor: inst.replay_data(),
            expected,
            observed,
        })
    };
    if crit.bullet1 != crit.bullet2 {
        fail(
            "bullet1 == bullet2".into(),
            format!("bullet1={} bullet2={}", crit.bullet1, crit.bullet2),
        );
    }
    match crit.bullet3 {
        Bullet3::Evaluated(b) if b != crit.bullet2 => fail(
            "bullet3 == bullet2 for irreducible pi".into(),
            format!("bullet2={} bullet3={b}", crit.bullet2),
        ),
        Bullet3::NotEvaluated if pi_irreducible => {
            fail("bullet3 evaluated".into(), "not evaluated".into())
        }
        _ => {}
    }
    if pi_irreducible != inst.pi_irreducible() {
        fail(
            format!("pi irreducible = {}", inst.pi_irreducible()),
            format!("{pi_irreducible}"),
        );
    }
    let predicted = match mode {
        CampaignMode::ForcedIdentity => false,
        _ => inst.predicted_bullet2(),
    };
    if crit.bullet2 != predicted {
        fail(
            format!("bullet2={predicted}"),
            format!("bullet2={}", crit.bullet2),
        );
    }
    if !faith.implication_holds() {
        fail(
            "pi faithful implies induced faithful".into(),
            format!(
                "pi_faithful={} induced_faithful={}",
                faith.pi_faithful, faith.induced_faithful
            ),
        );
    }
    let bound = tol.bound(1.0);
    let residual = Grading::reconstruction_residual(&inst.sigma);
    let g = grading(&inst.sigma, tol)?;
    if residual > bound || g.fixed_basis.len() + g.odd_basis.len() != inst.algebra.dim() {
        fail(
            format!(
                "grading reconstructs a {}-dimensional algebra",
                inst.algebra.dim()
            ),
            format!(
                "residual={residual:e} dims=({}, {})",
                g.fixed_basis.len(),
                g.odd_basis.len()
            ),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x1d0c);
    let w = random_unitary(inst.pi.carrier_dim(), &mut rng, tol)?;
    let induced = cp.induce(&inst.pi, tol)?;
    let induced_conj = cp.induce(&inst.pi.conjugate(&w), tol)?;
    if !unitarily_equivalent(&induced, &induced_conj, cfg)?.equivalent {
        fail(
            "induce(u pi u*) equivalent to induce(pi)".into(),
            format!("not equivalent (u={})", super::random::rounded(&w)),
        );
    }
    let outcome = TrialOutcome {
        trial,
        descriptor: inst.descriptor(),
        bullet1: crit.bullet1,
        bullet2: crit.bullet2,
        bullet3: crit.bullet3,
        pi_irreducible,
        pi_faithful: faith.pi_faithful,
        induced_faithful: faith.induced_faithful,
    };
    Ok((outcome, failures))
}
