use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::Rng;

use super::{StarAlgebra, StarHom};
use crate::error::{Error, Result};
use crate::numkernel::{
    herm_spectral, hs_orthonormalize, kernel_from_gram, polar_unitary, projection_range, CMatrix,
    Config, TolerancePolicy, C64,
};

const SALT_MINIMAL: u64 = 0xd1;
const SALT_WITNESS: u64 = 0xe7;

/// Basis of `{T : T·xs[b] = ys[b]·T for all b}` (`T` is `m2 x m1`),
/// HS-orthonormal.
///
/// Solved as the null space of `T ↦ (T X_b − Y_b T)_b`, whose Gram matrix is
/// `I⊗ΣX̄X^T + ΣY*Y⊗I − C − C*` with `C = Σ Y_b ⊗ X̄_b` (row-major `vec`).
pub fn intertwiner_space(
    xs: &[CMatrix],
    ys: &[CMatrix],
    tol: &TolerancePolicy,
) -> Result<Vec<CMatrix>> {
    if xs.len() != ys.len() {
        return Err(Error::Shape(
            "intertwiner systems need paired operators".into(),
        ));
    }
    let m1 = xs.first().map(|x| x.rows()).unwrap_or(0);
    let m2 = ys.first().map(|y| y.rows()).unwrap_or(0);
    if xs.is_empty() {
        return Err(Error::InvalidInput("empty operator family".into()));
    }
    let n = m1 * m2;
    let mut s1 = CMatrix::zeros(m1, m1);
    let mut s4 = CMatrix::zeros(m2, m2);
    let mut cross = CMatrix::zeros(n, n);
    for (x, y) in xs.iter().zip(ys) {
        let xbar = x.conj();
        s1 = &s1 + &(&xbar * &x.transpose());
        s4 = &s4 + &(&y.adjoint() * y);
        for r in 0..m2 {
            for k in 0..m2 {
                let yv = y[(r, k)];
                if yv.is_zero() {
                    continue;
                }
                for c in 0..m1 {
                    for l in 0..m1 {
                        cross[(r * m1 + c, k * m1 + l)] += yv * xbar[(c, l)];
                    }
                }
            }
        }
    }
    let mut gram = CMatrix::kron(&CMatrix::identity(m2), &s1);
    gram = &gram + &CMatrix::kron(&s4, &CMatrix::identity(m1));
    gram = &gram - &cross;
    gram = &gram - &cross.adjoint();

    let kernel = kernel_from_gram(&gram, tol, |v| {
        let t = CMatrix::new(m2, m1, v.to_vec()).expect("shape");
        xs.iter()
            .zip(ys)
            .map(|(x, y)| (&(&t * x) - &(y * &t)).hs_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    })?;
    Ok(kernel
        .into_iter()
        .map(|v| CMatrix::new(m2, m1, v).expect("shape"))
        .collect())
}

fn same_source(a: &StarHom, b: &StarHom) -> Result<()> {
    if Arc::ptr_eq(a.source(), b.source())
        || (a.source().dim() == b.source().dim()
            && a.source().ambient_dim() == b.source().ambient_dim())
    {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "representations of different algebras".into(),
        ))
    }
}

/// Basis of `{T : T·rep1(b) = rep2(b)·T}`.
pub fn intertwiners(rep1: &StarHom, rep2: &StarHom, tol: &TolerancePolicy) -> Result<Vec<CMatrix>> {
    same_source(rep1, rep2)?;
    intertwiner_space(rep1.images(), rep2.images(), tol)
}

/// True iff the image spans all of `M_m`, i.e. the commutant is scalar.
pub fn is_irreducible(rep: &StarHom, tol: &TolerancePolicy) -> bool {
    let m = rep.carrier_dim();
    hs_orthonormalize(rep.images(), tol).len() == m * m
}

#[derive(Clone, Debug)]
pub struct IrrepClass {
    pub irrep: StarHom,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct IrrepDecomposition {
    pub classes: Vec<IrrepClass>,
    /// Rank of each isotypic component (`irrep dim × multiplicity`), in class order.
    pub block_dims: Vec<usize>,
}

impl IrrepDecomposition {
    /// `Σ multiplicity · dim(irrep)`.
    pub fn carrier_dim(&self) -> usize {
        self.classes
            .iter()
            .map(|c| c.multiplicity * c.irrep.carrier_dim())
            .sum()
    }
}

/// Character values on the source basis, rounded; identical for
/// unitarily equivalent representations.
fn character_key(rep: &StarHom) -> Vec<(i64, i64)> {
    rep.images()
        .iter()
        .map(|x| {
            let t = x.trace();
            ((t.re * 1e6).round() as i64, (t.im * 1e6).round() as i64)
        })
        .collect()
}

fn random_selfadjoint(elems: &[CMatrix], rng: &mut impl Rng) -> CMatrix {
    let (r, c) = elems[0].shape();
    let mut h = CMatrix::zeros(r, c);
    for e in elems {
        h.axpy(C64::new(rng.gen_range(-1.0..1.0), 0.0), &e.hermitian_part());
        h.axpy(
            C64::new(rng.gen_range(-1.0..1.0), 0.0),
            &e.hermitian_imag_part(),
        );
    }
    h
}

/// Splits a representation into unitary-equivalence classes of irreducibles.
///
/// Each isotypic block is located by a minimal central projection `P` of the
/// image algebra. Inside `P`, a minimal projection `e` of the image is found
/// by spectral refinement; for a unit vector `v` under `e`, the projection
/// onto the cyclic subspace `π(A)v` is a minimal projection of the commutant
/// and carries one copy of the irreducible class. Multiplicities are
/// `dim Hom(irrep, rep)` and are cross-checked against `rank(e)`.
pub fn decompose_rep(rep: &StarHom, cfg: &Config) -> Result<IrrepDecomposition> {
    let tol = &cfg.tol;
    let m = rep.carrier_dim();
    let image = StarAlgebra::from_orthonormal(m, hs_orthonormalize(rep.images(), tol));
    let central = image.minimal_central_projections(cfg)?;
    let mut rng = cfg.rng(SALT_MINIMAL);

    let mut found: Vec<(IrrepClass, usize)> = Vec::new();
    for p in &central {
        let vp = projection_range(p)?;
        let r = vp.cols();
        let vpa = vp.adjoint();
        let block: Vec<CMatrix> = image.basis().iter().map(|x| &(&vpa * x) * &vp).collect();
        let block = hs_orthonormalize(&block, tol);
        let k = integer_sqrt(block.len()).ok_or_else(|| {
            Error::Numerical(alloc::format!(
                "isotypic block has dimension {} which is not a square",
                block.len()
            ))
        })?;
        if k == 0 || r % k != 0 {
            return Err(Error::Numerical("isotypic block shape mismatch".into()));
        }
        let mult = r / k;

        // Minimal projection inside the block, tracked as an isometry f.
        let mut f = CMatrix::identity(r);
        let mut compressed = block.clone();
        let mut rounds = 0;
        while hs_orthonormalize(&compressed, tol).len() > 1 {
            rounds += 1;
            if rounds > k + 1 {
                return Err(Error::Numerical(
                    "minimal projection search did not terminate".into(),
                ));
            }
            let h = random_selfadjoint(&compressed, &mut rng);
            let comps = herm_spectral(&h, tol)?;
            f = &f * &comps[0].basis;
            let fa = f.adjoint();
            compressed = block.iter().map(|x| &(&fa * x) * &f).collect();
        }
        if f.cols() != mult {
            return Err(Error::Numerical(alloc::format!(
                "minimal projection has rank {} but block multiplicity is {mult}",
                f.cols()
            )));
        }

        let v = &vp * &CMatrix::column(&f.col(0));
        let cyclic: Vec<CMatrix> = rep.images().iter().map(|x| x * &v).collect();
        let cyclic = hs_orthonormalize(&cyclic, tol);
        if cyclic.len() != k {
            return Err(Error::Numerical(alloc::format!(
                "cyclic subspace has dimension {} instead of {k}",
                cyclic.len()
            )));
        }
        let iso = CMatrix::from_columns(m, &cyclic);
        let isoa = iso.adjoint();
        let images = rep.images().iter().map(|x| &(&isoa * x) * &iso).collect();
        let irrep = StarHom::rep_trusted(rep.source().clone(), images);
        let multiplicity = intertwiners(&irrep, rep, tol)?.len();
        if multiplicity != mult {
            return Err(Error::Numerical(alloc::format!(
                "intertwiner count {multiplicity} disagrees with block multiplicity {mult}"
            )));
        }
        found.push((
            IrrepClass {
                irrep,
                multiplicity,
            },
            r,
        ));
    }

    found.sort_by(|(a, _), (b, _)| {
        b.irrep
            .carrier_dim()
            .cmp(&a.irrep.carrier_dim())
            .then_with(|| character_key(&a.irrep).cmp(&character_key(&b.irrep)))
    });
    let block_dims = found.iter().map(|(_, r)| *r).collect();
    let classes = found.into_iter().map(|(c, _)| c).collect();
    Ok(IrrepDecomposition {
        classes,
        block_dims,
    })
}

fn integer_sqrt(n: usize) -> Option<usize> {
    (0..=n).find(|k| k * k >= n).filter(|k| k * k == n)
}

#[derive(Clone, Debug)]
pub struct Equivalence {
    pub equivalent: bool,
    /// Unitary `u` with `u·rep1(b)·u* = rep2(b)`, when one was constructed.
    pub witness: Option<CMatrix>,
}

/// Unitary-equivalence test.
///
/// Irreducible inputs are equivalent iff a nonzero intertwiner exists; in
/// general the two decompositions must match class by class. The witness is
/// the polar part of a generic intertwiner.
pub fn unitarily_equivalent(rep1: &StarHom, rep2: &StarHom, cfg: &Config) -> Result<Equivalence> {
    same_source(rep1, rep2)?;
    let tol = &cfg.tol;
    let not_equiv = Equivalence {
        equivalent: false,
        witness: None,
    };
    if rep1.carrier_dim() != rep2.carrier_dim() {
        return Ok(not_equiv);
    }
    let ints = intertwiners(rep1, rep2, tol)?;
    if ints.is_empty() {
        return Ok(not_equiv);
    }
    let both_irreducible = is_irreducible(rep1, tol) && is_irreducible(rep2, tol);
    if !both_irreducible {
        let d1 = decompose_rep(rep1, cfg)?;
        let d2 = decompose_rep(rep2, cfg)?;
        if !decompositions_match(&d1, &d2, tol)? {
            return Ok(not_equiv);
        }
    }
    let witness = unitary_intertwiner(rep1, rep2, &ints, cfg)?;
    if both_irreducible && witness.is_none() {
        return Err(Error::Numerical(
            "nonzero intertwiner between irreducibles is not a multiple of a unitary".into(),
        ));
    }
    Ok(Equivalence {
        equivalent: true,
        witness,
    })
}

fn decompositions_match(
    d1: &IrrepDecomposition,
    d2: &IrrepDecomposition,
    tol: &TolerancePolicy,
) -> Result<bool> {
    if d1.classes.len() != d2.classes.len() {
        return Ok(false);
    }
    let mut used = alloc::vec![false; d2.classes.len()];
    for c1 in &d1.classes {
        let mut matched = false;
        for (j, c2) in d2.classes.iter().enumerate() {
            if used[j]
                || c1.multiplicity != c2.multiplicity
                || c1.irrep.carrier_dim() != c2.irrep.carrier_dim()
            {
                continue;
            }
            if !intertwiners(&c1.irrep, &c2.irrep, tol)?.is_empty() {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

fn unitary_intertwiner(
    rep1: &StarHom,
    rep2: &StarHom,
    ints: &[CMatrix],
    cfg: &Config,
) -> Result<Option<CMatrix>> {
    let tol = &cfg.tol;
    let mut rng = cfg.rng(SALT_WITNESS);
    for attempt in 0..4 {
        let t = if ints.len() == 1 || attempt == 0 && ints.len() == 1 {
            ints[0].clone()
        } else {
            let mut t = CMatrix::zeros(ints[0].rows(), ints[0].cols());
            for x in ints {
                t.axpy(
                    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    x,
                );
            }
            t
        };
        if let Some(u) = polar_unitary(&t, tol)? {
            if witness_ok(&u, rep1, rep2, tol) {
                return Ok(Some(u));
            }
        }
        if ints.len() == 1 {
            break;
        }
    }
    Ok(None)
}

/// `u u* = I` and `u·rep1(b)·u* = rep2(b)` for every basis element.
pub(crate) fn witness_ok(
    u: &CMatrix,
    rep1: &StarHom,
    rep2: &StarHom,
    tol: &TolerancePolicy,
) -> bool {
    let m = u.rows();
    let id = CMatrix::identity(m);
    if !(u * &u.adjoint()).approx_eq(&id, tol, id.hs_norm()) {
        return false;
    }
    let ua = u.adjoint();
    rep1.images().iter().zip(rep2.images()).all(|(x, y)| {
        let lhs = &(u * x) * &ua;
        lhs.approx_eq(y, tol, x.hs_norm())
    })
}
