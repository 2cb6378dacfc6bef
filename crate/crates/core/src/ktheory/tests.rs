use alloc::string::ToString;
use alloc::sync::Arc;

use num_traits::Signed;

use super::*;
use crate::crossed::crossed_product;
use crate::models::{build_circle, build_m2_demo, census, PointMap};
use crate::numkernel::TolerancePolicy;

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

#[test]
fn cokernel_examples() {
    assert_eq!(
        cokernel(&IntMatrix::zeros(2, 1), 2).unwrap(),
        FgAbelianGroup::free(2)
    );
    let z2 = cokernel(&IntMatrix::from_i64(1, 1, &[2]).unwrap(), 1).unwrap();
    assert_eq!(z2, FgAbelianGroup::new(0, big(&[2])).unwrap());
    assert_eq!(z2.to_string(), "Z/2");
    let g = cokernel(&IntMatrix::from_i64(2, 1, &[1, -1]).unwrap(), 2).unwrap();
    assert_eq!(g, FgAbelianGroup::free(1));
    assert!(cokernel(&IntMatrix::zeros(3, 1), 2).is_err());
}

#[test]
fn group_validation_and_display() {
    assert!(FgAbelianGroup::new(0, big(&[1])).is_err());
    assert!(FgAbelianGroup::new(0, big(&[2, 3])).is_err());
    let g = FgAbelianGroup::new(2, big(&[2, 4])).unwrap();
    assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/4");
    assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
}

#[test]
fn subgroup_examples() {
    let gens = alloc::vec![big(&[1, 0, 1, 0]), big(&[1, 1, 1, 1]), big(&[1, 0, 0, 1])];
    let s = subgroup_invariants(&gens, 4).unwrap();
    assert_eq!(s.rank, 3);
    assert_eq!(s.divisors, big(&[1, 1, 1]));
    let s = subgroup_invariants(&[big(&[2, 0])], 2).unwrap();
    assert_eq!((s.rank, s.divisors), (1, big(&[2])));
    assert_eq!(subgroup_invariants(&[], 3).unwrap().rank, 0);
}

#[test]
fn side_check_has_a_unit_minor() {
    // rows 0, 1, 3 of the generator matrix: an integral basis certificate
    let m = IntMatrix::from_i64(3, 3, &[1, 1, 1, 0, 1, 0, 0, 1, 1]).unwrap();
    assert_eq!(m.det().unwrap().abs(), BigInt::one());
}

fn beta_inputs() -> (PushoutInputs, PushoutInputs) {
    let k0 = PushoutInputs {
        g1: FgAbelianGroup::free(1),
        g2: FgAbelianGroup::free(1),
        g_g: FgAbelianGroup::free(2),
        i1: IntMatrix::from_i64(1, 2, &[1, 1]).unwrap(),
        i2: IntMatrix::from_i64(1, 2, &[1, 1]).unwrap(),
    };
    let k1 = PushoutInputs {
        g1: FgAbelianGroup::free(1),
        g2: FgAbelianGroup::free(1),
        g_g: FgAbelianGroup::trivial(),
        i1: IntMatrix::zeros(1, 0),
        i2: IntMatrix::zeros(1, 0),
    };
    (k0, k1)
}

fn alpha_inputs() -> (PushoutInputs, PushoutInputs) {
    // basis ([p], [p'], [1]); the spectral projections of w go to [p] and [1] - [p]
    let i = IntMatrix::from_i64(3, 2, &[1, -1, 0, 0, 0, 1]).unwrap();
    let k0 = PushoutInputs {
        g1: FgAbelianGroup::free(3),
        g2: FgAbelianGroup::free(3),
        g_g: FgAbelianGroup::free(2),
        i1: i.clone(),
        i2: i,
    };
    let k1 = PushoutInputs {
        g1: FgAbelianGroup::trivial(),
        g2: FgAbelianGroup::trivial(),
        g_g: FgAbelianGroup::trivial(),
        i1: IntMatrix::zeros(0, 0),
        i2: IntMatrix::zeros(0, 0),
    };
    (k0, k1)
}

#[test]
fn pushout_examples() {
    let (k0, k1) = beta_inputs();
    assert_eq!(k0.evaluate().unwrap(), FgAbelianGroup::free(1));
    assert_eq!(k1.evaluate().unwrap(), FgAbelianGroup::free(2));
    let (k0, k1) = alpha_inputs();
    assert_eq!(k0.evaluate().unwrap(), FgAbelianGroup::free(4));
    assert!(k1.evaluate().unwrap().is_trivial());
}

#[test]
fn pushout_rejects_bad_shapes() {
    let (mut k0, _) = beta_inputs();
    k0.i2 = IntMatrix::zeros(2, 2);
    assert!(matches!(k0.evaluate(), Err(Error::Shape(_))));
}

#[test]
fn pushout_with_torsion() {
    // Z/2 *_Z Z/2 with both maps onto the generator gives Z/2
    let g = FgAbelianGroup::new(0, big(&[2])).unwrap();
    let one = IntMatrix::from_i64(1, 1, &[1]).unwrap();
    let out = pushout_k(&g, &g, &FgAbelianGroup::free(1), &one, &one).unwrap();
    assert_eq!(out, g);
}

#[test]
fn evaluate_case_reports_matches() {
    let (k0_inputs, k1_inputs) = alpha_inputs();
    let fx = CaseFixture {
        case_id: CaseId::Alpha,
        k0_inputs,
        k1_inputs,
        expected_k0: FgAbelianGroup::free(4),
        expected_k1: FgAbelianGroup::trivial(),
        generator_notes: Vec::new(),
        side_check: Some(SideCheck {
            ambient_rank: 4,
            generators: alloc::vec![big(&[1, 0, 1, 0]), big(&[1, 1, 1, 1]), big(&[1, 0, 0, 1])],
            expected: SubgroupInvariants {
                rank: 3,
                divisors: big(&[1, 1, 1]),
            },
        }),
    };
    let out = evaluate_case(&fx).unwrap();
    assert!(out.all_match());
    assert_eq!(
        CaseId::parse("gamma").unwrap_err(),
        Error::UnknownCase("gamma".into())
    );
}

#[test]
fn k0_examples() {
    let cfg = Config::default();
    let m2 = Arc::new(StarAlgebra::full(2));
    let k = k0(&m2, &cfg).unwrap();
    assert_eq!(k.group, FgAbelianGroup::free(1));
    assert_eq!(k.blocks[0].irrep_dim, 2);

    let c4 = build_circle(4, PointMap::Conj, &tol()).unwrap();
    assert_eq!(
        k0(&c4.algebra, &cfg).unwrap().group,
        FgAbelianGroup::free(4)
    );

    let (_, sigma) = build_m2_demo(&tol()).unwrap();
    let cp = crossed_product(&sigma, &tol()).unwrap();
    let k = k0(cp.algebra(), &cfg).unwrap();
    assert_eq!(k.group, FgAbelianGroup::free(2));
    for b in &k.blocks {
        assert!((b.minimal_projection.trace().re - b.multiplicity as f64).abs() < 1e-9);
    }
}

#[test]
fn k0_rank_matches_census() {
    let cfg = Config::default();
    for (n, pm) in [
        (6, PointMap::Flip),
        (5, PointMap::Conj),
        (6, PointMap::Conj),
    ] {
        let m = build_circle(n, pm, &tol()).unwrap();
        let cp = crossed_product(&m.sigma, &tol()).unwrap();
        let c = census(&cp, &cfg).unwrap();
        assert_eq!(
            k0(cp.algebra(), &cfg).unwrap().group.free_rank(),
            c.class_count()
        );
    }
}

#[test]
fn k0_map_examples() {
    let cfg = Config::default();
    let scalars = Arc::new(StarAlgebra::generate(2, &[], &tol()).unwrap());
    let m2 = Arc::new(StarAlgebra::full(2));
    let inc = StarHom::new(
        scalars.clone(),
        m2.clone(),
        scalars.basis().to_vec(),
        &tol(),
    )
    .unwrap();
    assert_eq!(
        k0_map(&inc, &cfg).unwrap(),
        IntMatrix::from_i64(1, 1, &[2]).unwrap()
    );

    let diag =
        Arc::new(StarAlgebra::generate(2, &[CMatrix::diag_real(&[1.0, -1.0])], &tol()).unwrap());
    let inc = StarHom::new(diag.clone(), m2.clone(), diag.basis().to_vec(), &tol()).unwrap();
    assert_eq!(
        k0_map(&inc, &cfg).unwrap(),
        IntMatrix::from_i64(1, 2, &[1, 1]).unwrap()
    );

    // span{1, W} inside the M2 demo crossed product
    let (_, sigma) = build_m2_demo(&tol()).unwrap();
    let cp = crossed_product(&sigma, &tol()).unwrap();
    let sub = Arc::new(
        cp.algebra()
            .subalgebra(&[cp.symmetry().clone()], &tol())
            .unwrap(),
    );
    assert_eq!(sub.dim(), 2);
    let inc = StarHom::new(
        sub.clone(),
        cp.algebra().clone(),
        sub.basis().to_vec(),
        &tol(),
    )
    .unwrap();
    assert_eq!(
        k0_map(&inc, &cfg).unwrap(),
        IntMatrix::from_i64(2, 2, &[1, 1, 1, 1]).unwrap()
    );
}

#[test]
fn k0_map_rejects_non_unital() {
    let cfg = Config::default();
    let scalars = Arc::new(StarAlgebra::generate(1, &[], &tol()).unwrap());
    let m2 = Arc::new(StarAlgebra::full(2));
    let corner = StarHom::new(scalars, m2, alloc::vec![CMatrix::unit(2, 2, 0, 0)], &tol()).unwrap();
    assert_eq!(k0_map(&corner, &cfg).unwrap_err(), Error::NonUnital);
}

#[test]
fn k0_map_of_automorphism_is_permutation() {
    let cfg = Config::default();
    let m = build_circle(6, PointMap::Flip, &tol()).unwrap();
    let m_map = k0_map(m.sigma.action(), &cfg).unwrap();
    assert!(is_permutation(&m_map));
    assert!(!is_permutation(
        &IntMatrix::from_i64(2, 2, &[1, 1, 0, 1]).unwrap()
    ));
}
