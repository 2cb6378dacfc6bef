//! Finite-dimensional *-algebras of matrices.
//!
//! An algebra is a unital, *-closed span of `d x d` complex matrices, stored
//! by an HS-orthonormal basis. Membership and intersection are plain linear
//! algebra against that basis.

mod decompose;
mod hom;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numkernel::{
    coordinates, distance_to_span, herm_spectral, hs_orthonormalize, linear_combination, nullspace,
    orthonormal_residual, CMatrix, Config, TolerancePolicy, C64,
};

pub use decompose::{
    decompose_rep, intertwiner_space, intertwiners, is_irreducible, unitarily_equivalent,
    Equivalence, IrrepClass, IrrepDecomposition,
};
pub use hom::StarHom;

const SALT_CENTRAL: u64 = 0xc3;

#[derive(Clone, Debug)]
pub struct StarAlgebra {
    ambient_dim: usize,
    basis: Vec<CMatrix>,
    generators: Vec<CMatrix>,
    name: String,
}

impl StarAlgebra {
    /// Smallest unital *-closed span containing `generators`.
    ///
    /// Iterates `V <- span(V ∪ S·V)` for the *-closed set `S` of generators
    /// and their adjoints, starting from `V = span{I}`.
    pub fn generate(
        ambient_dim: usize,
        generators: &[CMatrix],
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        let d = ambient_dim;
        if d == 0 {
            return Err(Error::InvalidInput(
                "ambient dimension must be positive".into(),
            ));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.shape() != (d, d) {
                return Err(Error::Shape(alloc::format!(
                    "generator {k} is {}x{}, expected {d}x{d}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let mut star_set: Vec<CMatrix> = Vec::with_capacity(2 * generators.len());
        for g in generators {
            star_set.push(g.clone());
            star_set.push(g.adjoint());
        }
        let mut basis = hs_orthonormalize(&[CMatrix::identity(d)], tol);
        let mut frontier = basis.clone();
        let max_rounds = d * d + 1;
        for _ in 0..max_rounds {
            let mut fresh = Vec::new();
            for s in &star_set {
                for v in &frontier {
                    let p = s * v;
                    if let Some(u) = orthonormal_residual(&basis, &p, tol) {
                        basis.push(u.clone());
                        fresh.push(u);
                    }
                }
            }
            if fresh.is_empty() {
                return Ok(Self {
                    ambient_dim: d,
                    basis,
                    generators: generators.to_vec(),
                    name: String::new(),
                });
            }
            if basis.len() > d * d {
                break;
            }
            frontier = fresh;
        }
        Err(Error::Numerical(alloc::format!(
            "closure did not stabilize within {max_rounds} rounds"
        )))
    }

    /// The full matrix algebra `M_d` with the matrix-unit basis.
    pub fn full(d: usize) -> Self {
        let mut basis = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                basis.push(CMatrix::unit(d, d, i, j));
            }
        }
        let generators = (0..d.saturating_sub(1))
            .map(|i| CMatrix::unit(d, d, i, i + 1))
            .collect();
        Self {
            ambient_dim: d,
            basis,
            generators,
            name: alloc::format!("M{d}"),
        }
    }

    /// Unital *-algebra spanned by `spanning` (plus the identity), checked
    /// for closure under adjoints and products.
    pub fn from_span(
        ambient_dim: usize,
        spanning: &[CMatrix],
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        let mut all = Vec::with_capacity(spanning.len() + 1);
        all.push(CMatrix::identity(ambient_dim));
        all.extend_from_slice(spanning);
        if all.iter().any(|m| m.shape() != (ambient_dim, ambient_dim)) {
            return Err(Error::Shape(
                "spanning matrices must be square of the ambient size".into(),
            ));
        }
        let alg = Self::from_orthonormal(ambient_dim, hs_orthonormalize(&all, tol));
        alg.check_closed(tol)?;
        Ok(alg)
    }

    /// Wraps a basis already known to be HS-orthonormal and closed.
    pub(crate) fn from_orthonormal(ambient_dim: usize, basis: Vec<CMatrix>) -> Self {
        Self {
            ambient_dim,
            generators: basis.clone(),
            basis,
            name: String::new(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_generators(mut self, generators: Vec<CMatrix>) -> Self {
        self.generators = generators;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    /// Matrices the algebra was generated from (the basis if it was given by a span).
    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.ambient_dim)
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim * self.ambient_dim
    }

    pub fn coordinates(&self, x: &CMatrix) -> Vec<C64> {
        coordinates(&self.basis, x)
    }

    pub fn combine(&self, coeffs: &[C64]) -> CMatrix {
        linear_combination(&self.basis, coeffs, self.ambient_dim, self.ambient_dim)
    }

    pub fn contains(&self, x: &CMatrix, tol: &TolerancePolicy) -> bool {
        if x.shape() != (self.ambient_dim, self.ambient_dim) {
            return false;
        }
        if self.is_full() {
            return true;
        }
        tol.is_zero(distance_to_span(&self.basis, x), x.hs_norm())
    }

    /// Checks the stored-basis invariants: orthonormal, unital, *-closed and
    /// closed under products of basis pairs.
    pub fn check_invariants(&self, tol: &TolerancePolicy) -> Result<()> {
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                if !tol.is_zero((a.hs_inner(b) - expect).norm(), 1.0) {
                    return Err(Error::Numerical(alloc::format!(
                        "basis not orthonormal at ({i}, {j})"
                    )));
                }
            }
        }
        if !self.contains(&self.identity(), tol) {
            return Err(Error::Numerical("identity not in span".into()));
        }
        self.check_closed(tol)
    }

    fn check_closed(&self, tol: &TolerancePolicy) -> Result<()> {
        for (i, a) in self.basis.iter().enumerate() {
            if !self.contains(&a.adjoint(), tol) {
                return Err(Error::InvalidInput(alloc::format!(
                    "span is not closed under adjoint (basis element {i})"
                )));
            }
            for (j, b) in self.basis.iter().enumerate() {
                if !self.contains(&(a * b), tol) {
                    return Err(Error::InvalidInput(alloc::format!(
                        "span is not closed under products (basis pair {i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `{X : XB = BX for every basis element B}` inside `M_d`.
    pub fn commutant(&self, tol: &TolerancePolicy) -> Result<Self> {
        let ts = intertwiner_space(&self.basis, &self.basis, tol)?;
        Ok(Self::from_orthonormal(
            self.ambient_dim,
            hs_orthonormalize(&ts, tol),
        ))
    }

    /// Centre `A ∩ A'`, solved directly in the coordinates of `A`.
    pub fn center(&self, tol: &TolerancePolicy) -> Result<Self> {
        let d = self.ambient_dim;
        if self.is_full() {
            return Ok(Self::from_orthonormal(
                d,
                hs_orthonormalize(&[self.identity()], tol),
            ));
        }
        let n = self.dim();
        let block = d * d;
        let mut system = CMatrix::zeros(n * block, n);
        for (j, bj) in self.basis.iter().enumerate() {
            for (k, bk) in self.basis.iter().enumerate() {
                let c = bj.commutator(bk);
                for (e, &z) in c.as_slice().iter().enumerate() {
                    system[(k * block + e, j)] = z;
                }
            }
        }
        let kernel = nullspace(&system, tol)?;
        let elems: Vec<CMatrix> = kernel.iter().map(|c| self.combine(&c.col(0))).collect();
        Ok(Self::from_orthonormal(d, hs_orthonormalize(&elems, tol)))
    }

    /// Pairwise-orthogonal minimal central projections summing to `I`.
    ///
    /// Splits along the spectral projections of seeded random self-adjoint
    /// central elements until every compressed centre is one-dimensional.
    pub fn minimal_central_projections(&self, cfg: &Config) -> Result<Vec<CMatrix>> {
        let tol = &cfg.tol;
        let center = self.center(tol)?;
        let zdim = center.dim();
        let mut done: Vec<CMatrix> = Vec::new();
        let mut pending = alloc::vec![self.identity()];
        let mut rng = cfg.rng(SALT_CENTRAL);
        let mut rounds = 0;
        while !pending.is_empty() {
            if rounds > zdim {
                return Err(Error::Numerical(
                    "central projection refinement did not terminate".into(),
                ));
            }
            rounds += 1;
            let mut next = Vec::new();
            for p in pending {
                let compressed: Vec<CMatrix> = center.basis().iter().map(|z| &p * z).collect();
                let cdim = hs_orthonormalize(&compressed, tol).len();
                if cdim <= 1 {
                    done.push(p);
                    continue;
                }
                let mut h = CMatrix::zeros(self.ambient_dim, self.ambient_dim);
                for z in &compressed {
                    h.axpy(C64::new(rng.gen_range(-1.0..1.0), 0.0), &z.hermitian_part());
                    h.axpy(
                        C64::new(rng.gen_range(-1.0..1.0), 0.0),
                        &z.hermitian_imag_part(),
                    );
                }
                for comp in herm_spectral(&h, tol)? {
                    let piece = &comp.projection * &p;
                    if piece.trace().re > 0.5 {
                        next.push(piece.hermitian_part());
                    }
                }
            }
            pending = next;
        }
        done.sort_by_key(projection_key);
        Ok(done)
    }

    /// Inclusion of the algebra into `M_d`.
    pub fn identity_rep(self: &Arc<Self>) -> StarHom {
        let target = Arc::new(StarAlgebra::full(self.ambient_dim));
        StarHom::new_trusted(self.clone(), target, self.basis.clone())
    }

    /// The subalgebra generated by `generators` inside this one.
    pub fn subalgebra(&self, generators: &[CMatrix], tol: &TolerancePolicy) -> Result<Self> {
        for g in generators {
            if !self.contains(g, tol) {
                return Err(Error::InvalidInput(
                    "generator lies outside the algebra".into(),
                ));
            }
        }
        Self::generate(self.ambient_dim, generators, tol)
    }
}

/// Ordering key for projections: the rounded diagonal, earliest mass first.
fn projection_key(p: &CMatrix) -> Vec<i64> {
    (0..p.rows())
        .map(|i| -(p[(i, i)].re * 1e6).round() as i64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn diag_pm() -> CMatrix {
        CMatrix::diag_real(&[1.0, -1.0])
    }

    fn pauli_x() -> CMatrix {
        CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    /// M2 ⊕ M3 sitting block-diagonally in M5.
    fn m2_plus_m3() -> StarAlgebra {
        let mut gens = Vec::new();
        for (i, j) in [(0, 1), (2, 3), (3, 4)] {
            gens.push(CMatrix::unit(5, 5, i, j));
        }
        StarAlgebra::generate(5, &gens, &tol()).unwrap()
    }

    /// Brute-force closure by repeated multiplication, as an oracle.
    fn brute_closure_dim(d: usize, gens: &[CMatrix]) -> usize {
        let mut span = alloc::vec![CMatrix::identity(d)];
        for g in gens {
            span.push(g.clone());
            span.push(g.adjoint());
        }
        loop {
            let before = hs_orthonormalize(&span, &tol()).len();
            let snapshot = span.clone();
            for a in &snapshot {
                for b in &snapshot {
                    span.push(a * b);
                }
            }
            span = hs_orthonormalize(&span, &tol());
            if span.len() == before {
                return before;
            }
        }
    }

    #[test]
    fn generate_examples() {
        assert_eq!(StarAlgebra::generate(2, &[], &tol()).unwrap().dim(), 1);
        assert_eq!(
            StarAlgebra::generate(2, &[diag_pm()], &tol())
                .unwrap()
                .dim(),
            2
        );
        let full = StarAlgebra::generate(2, &[pauli_x(), diag_pm()], &tol()).unwrap();
        assert_eq!(brute_closure_dim(2, &[pauli_x(), diag_pm()]), 4);
        assert_eq!(full.dim(), 4);
        full.check_invariants(&tol()).unwrap();
    }

    #[test]
    fn generate_rejects_wrong_shape() {
        assert!(StarAlgebra::generate(2, &[CMatrix::identity(3)], &tol()).is_err());
    }

    #[test]
    fn from_span_detects_non_closure() {
        assert!(StarAlgebra::from_span(2, &[CMatrix::unit(2, 2, 0, 1)], &tol()).is_err());
        let diag = StarAlgebra::from_span(2, &[CMatrix::unit(2, 2, 0, 0)], &tol()).unwrap();
        assert_eq!(diag.dim(), 2);
    }

    #[test]
    fn commutant_examples() {
        let m2 = StarAlgebra::full(2);
        assert_eq!(m2.commutant(&tol()).unwrap().dim(), 1);
        let scalars = StarAlgebra::generate(2, &[], &tol()).unwrap();
        assert_eq!(scalars.commutant(&tol()).unwrap().dim(), 4);
        let diag = StarAlgebra::generate(2, &[diag_pm()], &tol()).unwrap();
        let c = diag.commutant(&tol()).unwrap();
        // X commutes with diag(1,-1) iff its off-diagonal entries vanish
        assert_eq!(c.dim(), 2);
        for x in c.basis() {
            assert!(x[(0, 1)].norm() < 1e-12 && x[(1, 0)].norm() < 1e-12);
        }
    }

    #[test]
    fn center_examples() {
        assert_eq!(StarAlgebra::full(2).center(&tol()).unwrap().dim(), 1);
        let diag = StarAlgebra::generate(2, &[diag_pm()], &tol()).unwrap();
        assert_eq!(diag.center(&tol()).unwrap().dim(), 2);
        let a = m2_plus_m3();
        assert_eq!(a.dim(), 13);
        assert_eq!(a.center(&tol()).unwrap().dim(), 2);
    }

    #[test]
    fn center_is_intersection_with_commutant() {
        let a = m2_plus_m3();
        let z = a.center(&tol()).unwrap();
        let comm = a.commutant(&tol()).unwrap();
        for x in z.basis() {
            assert!(a.contains(x, &tol()) && comm.contains(x, &tol()));
        }
        // the commutant of M2 ⊕ M3 in M5 is C ⊕ C as well
        assert_eq!(comm.dim(), 2);
    }

    #[test]
    fn minimal_central_projection_examples() {
        let cfg = Config::default();
        let p = StarAlgebra::full(2)
            .minimal_central_projections(&cfg)
            .unwrap();
        assert_eq!(p.len(), 1);
        assert!((&p[0] - &CMatrix::identity(2)).hs_norm() < 1e-10);

        let diag = StarAlgebra::generate(2, &[diag_pm()], &tol()).unwrap();
        let p = diag.minimal_central_projections(&cfg).unwrap();
        assert_eq!(p.len(), 2);
        assert!((&p[0] - &CMatrix::unit(2, 2, 0, 0)).hs_norm() < 1e-10);
        assert!((&p[1] - &CMatrix::unit(2, 2, 1, 1)).hs_norm() < 1e-10);

        let p = m2_plus_m3().minimal_central_projections(&cfg).unwrap();
        assert_eq!(p.len(), 2);
        let top = CMatrix::diag_real(&[1.0, 1.0, 0.0, 0.0, 0.0]);
        let bottom = CMatrix::diag_real(&[0.0, 0.0, 1.0, 1.0, 1.0]);
        assert!((&p[0] - &top).hs_norm() < 1e-10);
        assert!((&p[1] - &bottom).hs_norm() < 1e-10);
    }

    #[test]
    fn bicommutant_recovers_algebra() {
        for a in [
            m2_plus_m3(),
            StarAlgebra::generate(2, &[diag_pm()], &tol()).unwrap(),
            StarAlgebra::generate(3, &[CMatrix::unit(3, 3, 0, 1)], &tol()).unwrap(),
        ] {
            let cc = a.commutant(&tol()).unwrap().commutant(&tol()).unwrap();
            assert_eq!(cc.dim(), a.dim());
        }
    }
}
