//! Exact-integer K-theory: Smith normal form, finitely generated abelian
//! groups, K₀ of finite-dimensional algebras and the amalgamated-free-product
//! pushout.

mod int_matrix;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use int_matrix::{smith_normal_form, IntMatrix, SmithForm};

use crate::error::{Error, Result};
use crate::numkernel::{CMatrix, Config};
use crate::star_algebra::{decompose_rep, intertwiners, StarAlgebra, StarHom};

/// `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `2 ≤ d₁ | d₂ | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if invariant_factors.iter().any(|d| d < &two) {
            return Err(Error::InvalidInput(
                "invariant factors must be at least 2".into(),
            ));
        }
        if invariant_factors
            .windows(2)
            .any(|w| !(&w[1] % &w[0]).is_zero())
        {
            return Err(Error::InvalidInput(
                "invariant factors must form a divisibility chain".into(),
            ));
        }
        Ok(Self {
            free_rank,
            invariant_factors,
        })
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.is_free()
    }

    /// Number of generators in the standard presentation.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Relation matrix of the standard presentation: torsion generators come
    /// first, each killed by its factor.
    pub fn relations(&self) -> IntMatrix {
        let g = self.generator_count();
        let k = self.invariant_factors.len();
        let mut m = IntMatrix::zeros(g, k);
        for (i, d) in self.invariant_factors.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(alloc::format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^n / image(M)` for an `n`-row matrix `M`.
pub fn cokernel(m: &IntMatrix, n: usize) -> Result<FgAbelianGroup> {
    if m.rows() != n {
        return Err(Error::Shape(alloc::format!(
            "map has {} rows but the target is Z^{n}",
            m.rows()
        )));
    }
    let s = smith_normal_form(m);
    let divs = s.divisors();
    let torsion: Vec<BigInt> = divs.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(FgAbelianGroup {
        free_rank: n - divs.len(),
        invariant_factors: torsion,
    })
}

/// Rank and elementary divisors of the subgroup of `Z^n` generated by the
/// given vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupInvariants {
    pub rank: usize,
    pub divisors: Vec<BigInt>,
}

pub fn subgroup_invariants(generators: &[Vec<BigInt>], n: usize) -> Result<SubgroupInvariants> {
    if generators.iter().any(|g| g.len() != n) {
        return Err(Error::Shape(alloc::format!("generators must lie in Z^{n}")));
    }
    let mut m = IntMatrix::zeros(n, generators.len());
    for (j, g) in generators.iter().enumerate() {
        for (i, x) in g.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    let divisors = smith_normal_form(&m).divisors();
    Ok(SubgroupInvariants {
        rank: divisors.len(),
        divisors,
    })
}

/// `(G₁ ⊕ G₂) / {(i₁x, −i₂x) : x ∈ G}`, with each group given by its
/// standard presentation and `i_k` acting on generators.
pub fn pushout_k(
    g1: &FgAbelianGroup,
    g2: &FgAbelianGroup,
    g_g: &FgAbelianGroup,
    i1: &IntMatrix,
    i2: &IntMatrix,
) -> Result<FgAbelianGroup> {
    let (n1, n2, ng) = (
        g1.generator_count(),
        g2.generator_count(),
        g_g.generator_count(),
    );
    if i1.shape() != (n1, ng) || i2.shape() != (n2, ng) {
        return Err(Error::Shape(alloc::format!(
            "i1 is {}x{} and i2 is {}x{}, expected {n1}x{ng} and {n2}x{ng}",
            i1.rows(),
            i1.cols(),
            i2.rows(),
            i2.cols()
        )));
    }
    let combined = i1.vstack(&i2.neg())?;
    let r1 = g1
        .relations()
        .vstack(&IntMatrix::zeros(n2, g1.invariant_factors.len()))?;
    let r2 = IntMatrix::zeros(n1, g2.invariant_factors.len()).vstack(&g2.relations())?;
    let presentation = combined.hstack(&r1)?.hstack(&r2)?;
    cokernel(&presentation, n1 + n2)
}

/// One Wedderburn block and a minimal projection inside it.
#[derive(Clone, Debug)]
pub struct K0Block {
    /// Size `k` of the block `M_k`.
    pub irrep_dim: usize,
    /// Multiplicity of the block in the defining representation.
    pub multiplicity: usize,
    /// A minimal projection of the algebra lying in this block.
    pub minimal_projection: CMatrix,
}

#[derive(Clone, Debug)]
pub struct K0 {
    pub group: FgAbelianGroup,
    pub blocks: Vec<K0Block>,
}

/// K₀ of a finite-dimensional algebra: free on its blocks.
pub fn k0(alg: &alloc::sync::Arc<StarAlgebra>, cfg: &Config) -> Result<K0> {
    let tol = &cfg.tol;
    let id = alg.identity_rep();
    let d = decompose_rep(&id, cfg)?;
    let mut blocks = Vec::with_capacity(d.classes.len());
    for class in &d.classes {
        let k = class.irrep.carrier_dim();
        let ints = intertwiners(&class.irrep, &id, tol)?;
        let scale = (k as f64).sqrt();
        let mut p = CMatrix::zeros(alg.ambient_dim(), alg.ambient_dim());
        for t in &ints {
            let v = t.scale_real(scale);
            let col = CMatrix::column(&v.col(0));
            p = &p + &(&col * &col.adjoint());
        }
        if !alg.contains(&p, tol) || !(&p * &p).approx_eq(&p, tol, p.hs_norm()) {
            return Err(Error::Numerical(
                "block projection is not a projection of the algebra".into(),
            ));
        }
        blocks.push(K0Block {
            irrep_dim: k,
            multiplicity: class.multiplicity,
            minimal_projection: p,
        });
    }
    Ok(K0 {
        group: FgAbelianGroup::free(blocks.len()),
        blocks,
    })
}

/// Induced map on K₀ for a unital *-homomorphism: entry `(j, i)` is the
/// multiplicity of source irrep `i` in `(target irrep j) ∘ φ`.
pub fn k0_map(phi: &StarHom, cfg: &Config) -> Result<IntMatrix> {
    let tol = &cfg.tol;
    if !phi.is_unital(tol) {
        return Err(Error::NonUnital);
    }
    let src = decompose_rep(&phi.source().identity_rep(), cfg)?;
    let tgt = decompose_rep(&phi.target().identity_rep(), cfg)?;
    let mut m = IntMatrix::zeros(tgt.classes.len(), src.classes.len());
    for (j, tc) in tgt.classes.iter().enumerate() {
        let pulled = tc.irrep.compose(phi).as_representation();
        let mut total = 0;
        for (i, sc) in src.classes.iter().enumerate() {
            let mult = intertwiners(&sc.irrep, &pulled, tol)?.len();
            total += mult * sc.irrep.carrier_dim();
            m[(j, i)] = BigInt::from(mult);
        }
        if total != tc.irrep.carrier_dim() {
            return Err(Error::Numerical(alloc::format!(
                "pulled-back irrep of dimension {} splits into dimension {total}",
                tc.irrep.carrier_dim()
            )));
        }
    }
    Ok(m)
}

/// Is `m` a permutation matrix?
pub fn is_permutation(m: &IntMatrix) -> bool {
    let one = BigInt::one();
    m.rows() == m.cols()
        && (0..m.rows()).all(|i| {
            let row = m.row(i);
            row.iter().filter(|x| **x == one).count() == 1
                && row.iter().all(|x| x.is_zero() || *x == one)
        })
        && (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| m[(i, j)] == one).count() == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseId {
    Alpha,
    Beta,
}

impl CaseId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(CaseId::Alpha),
            "beta" => Ok(CaseId::Beta),
            other => Err(Error::UnknownCase(other.into())),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::Alpha => "alpha",
            CaseId::Beta => "beta",
        }
    }
}

/// Inputs of one pushout: `G₁`, `G₂`, the amalgam `G`, and `i₁`, `i₂`.
#[derive(Clone, Debug)]
pub struct PushoutInputs {
    pub g1: FgAbelianGroup,
    pub g2: FgAbelianGroup,
    pub g_g: FgAbelianGroup,
    pub i1: IntMatrix,
    pub i2: IntMatrix,
}

impl PushoutInputs {
    pub fn evaluate(&self) -> Result<FgAbelianGroup> {
        pushout_k(&self.g1, &self.g2, &self.g_g, &self.i1, &self.i2)
    }
}

/// K-theory data for a free-group case study: the K₀ and K₁ pushouts, the
/// expected groups, and an optional subgroup side check.
#[derive(Clone, Debug)]
pub struct CaseFixture {
    pub case_id: CaseId,
    pub k0_inputs: PushoutInputs,
    pub k1_inputs: PushoutInputs,
    pub expected_k0: FgAbelianGroup,
    pub expected_k1: FgAbelianGroup,
    pub generator_notes: Vec<String>,
    pub side_check: Option<SideCheck>,
}

#[derive(Clone, Debug)]
pub struct SideCheck {
    pub ambient_rank: usize,
    pub generators: Vec<Vec<BigInt>>,
    pub expected: SubgroupInvariants,
}

#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
    pub k0_matches: bool,
    pub k1_matches: bool,
    pub side_check: Option<(SubgroupInvariants, bool)>,
}

impl CaseOutcome {
    pub fn all_match(&self) -> bool {
        self.k0_matches && self.k1_matches && self.side_check.as_ref().is_none_or(|(_, ok)| *ok)
    }
}

pub fn evaluate_case(fx: &CaseFixture) -> Result<CaseOutcome> {
    let k0 = fx.k0_inputs.evaluate()?;
    let k1 = fx.k1_inputs.evaluate()?;
    let side_check = match &fx.side_check {
        Some(sc) => {
            let got = subgroup_invariants(&sc.generators, sc.ambient_rank)?;
            let ok = got == sc.expected;
            Some((got, ok))
        }
        None => None,
    };
    Ok(CaseOutcome {
        k0_matches: k0 == fx.expected_k0,
        k1_matches: k1 == fx.expected_k1,
        k0,
        k1,
        side_check,
    })
}

/// Rank of an integer matrix over `Q` via its Smith form.
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

#[cfg(test)]
mod tests;
