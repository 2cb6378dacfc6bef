use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::crossed::OrderTwoAutomorphism;
use crate::error::{Error, Result};
use crate::numkernel::{polar_unitary, CMatrix, TolerancePolicy, C64};
use crate::star_algebra::{StarAlgebra, StarHom};

/// Per-trial sub-seed, a splitmix64 step of the master seed and index.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Entries uniform in the unit square of `C`.
pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Polar factor of a random matrix, resampled in the unlikely singular case.
pub fn random_unitary(n: usize, rng: &mut impl Rng, tol: &TolerancePolicy) -> Result<CMatrix> {
    for _ in 0..8 {
        if let Some(u) = polar_unitary(&random_matrix(n, n, rng), tol)? {
            return Ok(u);
        }
    }
    Err(Error::Numerical("could not sample a unitary".into()))
}

/// A random self-adjoint unitary `V·diag(±1)·V*`.
fn random_symmetry(n: usize, rng: &mut impl Rng, tol: &TolerancePolicy) -> Result<CMatrix> {
    let v = random_unitary(n, rng, tol)?;
    let signs: Vec<f64> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    let s = &(&v * &CMatrix::diag_real(&signs)) * &v.adjoint();
    Ok(s.hermitian_part())
}

/// Block-diagonal `M_{n₁} ⊕ … ⊕ M_{n_k}` acting on `C^{Σnᵢ}`.
pub fn block_algebra(sizes: &[usize]) -> StarAlgebra {
    let d: usize = sizes.iter().sum();
    let mut basis = Vec::new();
    let mut off = 0;
    for &n in sizes {
        for i in 0..n {
            for j in 0..n {
                basis.push(CMatrix::unit(d, d, off + i, off + j));
            }
        }
        off += n;
    }
    let name = format!("blocks{sizes:?}");
    StarAlgebra::from_orthonormal(d, basis).with_name(name)
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            *acc += n;
            Some(o)
        })
        .collect()
}

/// A random block algebra with an order-two automorphism and a representation.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub seed: u64,
    pub block_sizes: Vec<usize>,
    /// Indices of two equal blocks exchanged by `σ`.
    pub swap: Option<(usize, usize)>,
    pub algebra: Arc<StarAlgebra>,
    /// `σ = Ad v` for a self-adjoint unitary `v` normalizing the algebra.
    pub implementer: CMatrix,
    pub sigma: OrderTwoAutomorphism,
    /// Multiplicity of each block representation inside `π`.
    pub multiplicities: Vec<usize>,
    /// Unitary conjugating the block sum into `π`.
    pub frame: CMatrix,
    pub pi: StarHom,
}

impl RandomInstance {
    pub fn pi_irreducible(&self) -> bool {
        self.multiplicities.iter().sum::<usize>() == 1
    }

    pub fn pi_faithful(&self) -> bool {
        self.multiplicities.iter().all(|&m| m > 0)
    }

    /// `π ≄ π∘σ` holds exactly when `π` is a single block moved by the swap.
    pub fn predicted_bullet2(&self) -> bool {
        self.pi_irreducible()
            && match self.swap {
                Some((a, b)) => self.multiplicities[a] == 1 || self.multiplicities[b] == 1,
                None => false,
            }
    }

    pub fn descriptor(&self) -> String {
        format!(
            "seed={:#018x} blocks={:?} swap={:?} multiplicities={:?}",
            self.seed, self.block_sizes, self.swap, self.multiplicities
        )
    }

    /// Descriptor plus the rounded implementer and frame for replay.
    pub fn replay_data(&self) -> String {
        format!(
            "{} implementer={} frame={}",
            self.descriptor(),
            rounded(&self.implementer),
            rounded(&self.frame)
        )
    }
}

pub(crate) fn rounded(m: &CMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = (0..m.cols())
                .map(|j| format!("{:.6}{:+.6}i", m[(i, j)].re, m[(i, j)].im))
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Representation on `C^{n_i}` cutting out block `i`.
fn block_rep(alg: &Arc<StarAlgebra>, off: usize, n: usize) -> StarHom {
    let images = alg
        .basis()
        .iter()
        .map(|b| b.submatrix(off, off, n, n))
        .collect();
    StarHom::rep_trusted(alg.clone(), images)
}

const MAX_CARRIER: usize = 4;

/// Draws one instance from `seed`.
///
/// Block counts are 1 to 3 with sizes up to `max_block`. About half the
/// instances contain a pair of equal blocks swapped by `σ`; `σ` is always
/// composed with an inner twist by a block-diagonal symmetry. `π` is an
/// irreducible block representation in about half the draws, otherwise a
/// small direct sum, conjugated by a random unitary. With `force_identity`
/// the automorphism is the identity.
pub fn random_instance(
    seed: u64,
    max_block: usize,
    force_identity: bool,
    tol: &TolerancePolicy,
) -> Result<RandomInstance> {
    if max_block == 0 {
        return Err(Error::InvalidInput("max_block must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let want_swap = !force_identity && rng.gen_bool(0.5);
    let count = if want_swap {
        rng.gen_range(2..=3)
    } else {
        rng.gen_range(1..=3)
    };
    let mut sizes: Vec<usize> = (0..count).map(|_| rng.gen_range(1..=max_block)).collect();
    let swap = if want_swap {
        let a = rng.gen_range(0..count);
        let b = (a + rng.gen_range(1..count)) % count;
        sizes[b] = sizes[a];
        Some((a.min(b), a.max(b)))
    } else {
        None
    };
    let offs = offsets(&sizes);
    let d: usize = sizes.iter().sum();
    let algebra = Arc::new(block_algebra(&sizes));

    let implementer = if force_identity {
        CMatrix::identity(d)
    } else {
        let mut syms: Vec<CMatrix> = Vec::with_capacity(count);
        for &n in &sizes {
            syms.push(random_symmetry(n, &mut rng, tol)?);
        }
        if let Some((a, b)) = swap {
            syms[b] = syms[a].clone();
        }
        let u = CMatrix::block_diag(&syms.iter().collect::<Vec<_>>());
        match swap {
            Some((a, b)) => {
                let mut perm = CMatrix::identity(d);
                for k in 0..sizes[a] {
                    let (x, y) = (offs[a] + k, offs[b] + k);
                    perm[(x, x)] = C64::new(0.0, 0.0);
                    perm[(y, y)] = C64::new(0.0, 0.0);
                    perm[(x, y)] = C64::new(1.0, 0.0);
                    perm[(y, x)] = C64::new(1.0, 0.0);
                }
                &perm * &u
            }
            None => u,
        }
    };
    let sigma = if force_identity {
        OrderTwoAutomorphism::identity(algebra.clone())
    } else {
        OrderTwoAutomorphism::inner(algebra.clone(), &implementer, tol)?
    };

    let mut multiplicities = alloc::vec![0; count];
    if rng.gen_bool(0.5) {
        multiplicities[rng.gen_range(0..count)] = 1;
    } else {
        loop {
            for m in multiplicities.iter_mut() {
                *m = rng.gen_range(0..=2);
            }
            let carrier: usize = multiplicities.iter().zip(&sizes).map(|(m, n)| m * n).sum();
            if (1..=MAX_CARRIER.max(max_block)).contains(&carrier) {
                break;
            }
        }
    }
    let parts: Vec<StarHom> = multiplicities
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| core::iter::repeat_n(i, m))
        .map(|i| block_rep(&algebra, offs[i], sizes[i]))
        .collect();
    let sum = StarHom::direct_sum(&parts.iter().collect::<Vec<_>>())?;
    let frame = random_unitary(sum.carrier_dim(), &mut rng, tol)?;
    let pi = sum.conjugate(&frame);
    Ok(RandomInstance {
        seed,
        block_sizes: sizes,
        swap,
        algebra,
        implementer,
        sigma,
        multiplicities,
        frame,
        pi,
    })
}
