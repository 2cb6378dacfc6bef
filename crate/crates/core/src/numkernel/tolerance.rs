use crate::error::{Error, Result};

/// Absolute/relative tolerance pair shared by every approximate comparison.
///
/// A quantity `x` is numerically zero relative to a scale `s` iff
/// `|x| <= abs_tol + rel_tol * s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    abs_tol: f64,
    rel_tol: f64,
}

impl TolerancePolicy {
    pub const DEFAULT_ABS: f64 = 1e-10;
    pub const DEFAULT_REL: f64 = 1e-8;

    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite() && rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidInput(alloc::format!(
                "tolerances must be positive and finite (abs_tol = {abs_tol}, rel_tol = {rel_tol})"
            )));
        }
        Ok(Self { abs_tol, rel_tol })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    /// The largest magnitude still treated as zero at scale `scale`.
    #[inline]
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale
    }

    #[inline]
    pub fn is_zero(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.bound(scale)
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            abs_tol: Self::DEFAULT_ABS,
            rel_tol: Self::DEFAULT_REL,
        }
    }
}

/// Tolerance plus the seed for every randomized sampling step.
///
/// Randomized routines derive their own stream from `seed` and a fixed
/// per-routine salt, so results do not depend on call order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Config {
    pub tol: TolerancePolicy,
    pub seed: u64,
}

impl Config {
    pub const DEFAULT_SEED: u64 = 0x5eed_2c0f_fee0_0001;

    pub fn new(tol: TolerancePolicy, seed: u64) -> Self {
        Self { tol, seed }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub(crate) fn rng(&self, salt: u64) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tol: TolerancePolicy::default(),
            seed: Self::DEFAULT_SEED,
        }
    }
}
