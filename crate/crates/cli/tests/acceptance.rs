//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line, and exits non-zero if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use z2cross::crossed::{crossed_product, CrossedProduct};
use z2cross::ktheory::{cokernel, k0, k0_map, smith_normal_form, IntMatrix};
use z2cross::models::{build_circle, build_m2_demo, census, PointMap};
use z2cross::numkernel::{hermitian_eigen, phase};
use z2cross::oracles::{
    block_algebra, lemma_central2_check, lemma_central_check, random_instance, random_matrix,
    random_unitary, trial_seed,
};
use z2cross::{CMatrix, Config, StarAlgebra, StarHom, TolerancePolicy, C64};
use z2cross_cli::report::Report;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str]) -> Result<(Report, i32), String> {
    let argv = std::iter::once("z2cross").chain(args.iter().copied());
    let exec = z2cross_cli::run_with_env(argv, |_| None);
    let report = exec
        .report()
        .ok_or_else(|| format!("`{}` printed no report: {}", args.join(" "), exec.stderr))?;
    Ok((report, exec.exit_code))
}

fn cli_ok(args: &[&str]) -> Result<Value, String> {
    let (r, code) = cli(args)?;
    ensure!(
        code == 0 && r.violations.is_empty(),
        "`{}` exited {code} with violations {:?}: {}",
        args.join(" "),
        r.violations,
        r.results
    );
    Ok(r.results)
}

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn big(v: &Value) -> BigInt {
    v.as_str()
        .and_then(|s| s.parse().ok())
        .expect("integer as decimal string")
}

fn group_is(g: &Value, free_rank: u64) -> bool {
    g["free_rank"].as_u64() == Some(free_rank)
        && g["invariant_factors"]
            .as_array()
            .is_some_and(|f| f.is_empty())
}

fn criterion_1() -> Outcome {
    let r = cli_ok(&["paper", "--case", "beta"])?;
    ensure!(group_is(&r["k0"], 1), "K0 = {}", r["k0"]);
    ensure!(group_is(&r["k1"], 2), "K1 = {}", r["k1"]);
    Ok("K0 = Z, K1 = Z^2".into())
}

fn criterion_2() -> Outcome {
    let r = cli_ok(&["paper", "--case", "alpha"])?;
    ensure!(group_is(&r["k0"], 4), "K0 = {}", r["k0"]);
    ensure!(group_is(&r["k1"], 0), "K1 = {}", r["k1"]);
    let side = &r["side_check"];
    let divisors: Vec<BigInt> = side["divisors"]
        .as_array()
        .ok_or("no side check")?
        .iter()
        .map(big)
        .collect();
    ensure!(side["rank"] == 3, "side-check rank {}", side["rank"]);
    ensure!(
        divisors == vec![BigInt::one(); 3],
        "side-check divisors {divisors:?}"
    );
    Ok("K0 = Z^4, K1 = 0, subgroup rank 3 with divisors (1, 1, 1)".into())
}

fn criterion_3() -> Outcome {
    let r = cli_ok(&["demo", "--model", "m2"])?;
    let cp = &r["crossed_product"];
    ensure!(cp["dim"] == 8, "crossed dim {}", cp["dim"]);
    for key in [
        "symmetry_square_residual",
        "symmetry_selfadjoint_residual",
        "covariance_residual",
    ] {
        let x = cp[key].as_f64().unwrap_or(f64::INFINITY);
        ensure!(x <= 1e-8, "{key} = {x:e}");
    }
    let classes = r["classes"].as_array().ok_or("no classes")?;
    ensure!(classes.len() == 2, "{} classes", classes.len());
    ensure!(
        classes.iter().all(|c| c["kind"] == "Type2Split"),
        "kinds {:?}",
        classes.iter().map(|c| &c["kind"]).collect::<Vec<_>>()
    );
    let eq = &r["model_checks"]["restriction_equivalent_to_identity"];
    ensure!(*eq == serde_json::json!([true, true]), "restrictions {eq}");
    Ok("dim 8, two Type2Split classes, both restrictions equivalent to the identity".into())
}

/// Runs `demo` for one circle model and checks the census plus the point
/// evaluations of every induced class against the point map.
fn circle_demo(
    model: &str,
    n: usize,
    image: impl Fn(usize) -> usize,
    census: (u64, u64, u64),
) -> Result<(), String> {
    let started = Instant::now();
    let ns = n.to_string();
    let r = cli_ok(&["demo", "--model", model, "--n", &ns])?;
    let c = &r["census"];
    let got = (
        c["type1"].as_u64().unwrap_or(u64::MAX),
        c["type2_split"].as_u64().unwrap_or(u64::MAX),
        c["type2_induced"].as_u64().unwrap_or(u64::MAX),
    );
    ensure!(
        got == census,
        "{model} n={n}: census {got:?}, expected {census:?}"
    );
    ensure!(
        c["dimension_sum"] == 2 * n,
        "{model} n={n}: sum of squares {}",
        c["dimension_sum"]
    );
    let mut orbits = BTreeSet::new();
    for class in r["classes"].as_array().ok_or("no classes")? {
        if class["kind"] != "Type2Induced" {
            continue;
        }
        ensure!(
            class["phi_equivalent_to_twist"] == false,
            "{model} n={n}: phi equivalent to phi o sigma"
        );
        let k = class["phi_point"]
            .as_u64()
            .ok_or(format!("{model} n={n}: phi is not a point evaluation"))?
            as usize;
        let k2 = class["phi_sigma_point"].as_u64().ok_or(format!(
            "{model} n={n}: phi o sigma is not a point evaluation"
        ))? as usize;
        ensure!(
            k2 == image(k),
            "{model} n={n}: phi o sigma at {k2}, expected {}",
            image(k)
        );
        ensure!(k != k2, "{model} n={n}: induced class at a fixed point {k}");
        ensure!(
            orbits.insert((k.min(k2), k.max(k2))),
            "{model} n={n}: orbit of {k} appears twice"
        );
    }
    let el = started.elapsed();
    ensure!(el < Duration::from_secs(2), "{model} n={n} took {el:?}");
    Ok(())
}

fn criterion_4() -> Outcome {
    for n in [4usize, 6, 8, 10] {
        circle_demo(
            "circle-flip",
            n,
            |k| (k + n / 2) % n,
            (0, 0, (n / 2) as u64),
        )?;
        let r = cli_ok(&[
            "crossed-product",
            "--model",
            "circle-flip",
            "--n",
            &n.to_string(),
        ])?;
        let blocks = r["crossed_product"]["blocks"]
            .as_array()
            .ok_or("no blocks")?;
        ensure!(
            blocks.len() == n / 2 && blocks.iter().all(|b| b["irrep_dim"] == 2),
            "n={n}: blocks {blocks:?}"
        );
    }
    Ok(
        "n = 4, 6, 8, 10: n/2 classes of dimension 2, all induced from antipodal point pairs"
            .into(),
    )
}

fn criterion_5() -> Outcome {
    for n in [4usize, 6, 8] {
        circle_demo(
            "circle-conj",
            n,
            |k| (n - k) % n,
            (4, 0, ((n - 2) / 2) as u64),
        )?;
    }
    for n in [3usize, 5, 7] {
        circle_demo(
            "circle-conj",
            n,
            |k| (n - k) % n,
            (2, 0, ((n - 1) / 2) as u64),
        )?;
    }
    Ok("n = 3..8 censuses match and sum of squared dimensions is 2n".into())
}

/// Checks a returned witness independently: the hypothesis must fail at it.
fn central_violation(a: &CMatrix, b: &CMatrix, t: &CMatrix) -> f64 {
    (&(&(b * t) * a) - &(&(a * t) * b)).hs_norm()
}

fn central2_violation(a: &CMatrix, b: &CMatrix, t: &CMatrix) -> f64 {
    (&(&(a * t) * &a.adjoint()) - &(&(b * t) * &b.adjoint())).hs_norm()
}

fn criterion_6() -> Outcome {
    for lemma in ["central", "central2"] {
        let r = cli_ok(&[
            "verify",
            "--lemma",
            lemma,
            "--trials",
            "200",
            "--min-dim",
            "2",
            "--max-dim",
            "6",
            "--seed",
            "6",
        ])?;
        ensure!(r["cases"] == 1000, "{lemma}: {} cases", r["cases"]);
        ensure!(r["undecided"] == 0, "{lemma}: {} undecided", r["undecided"]);
        let res = r["max_relative_residual"].as_f64().unwrap_or(f64::INFINITY);
        ensure!(res <= 1e-8, "{lemma}: relative residual {res:e}");
    }
    // Independent pass: fresh pairs, with witnesses and coefficients re-verified here.
    let t = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0006);
    let mut undecided = 0;
    for d in 2..=6 {
        for k in 0..200 {
            let a = random_matrix(d, d, &mut rng);
            let b = match k % 3 {
                0 => random_matrix(d, d, &mut rng),
                1 => a.scale(C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))),
                _ => a.scale(phase(rng.gen_range(0.0..1.0))),
            };
            let na = a.hs_norm();
            let v = lemma_central_check(&a, &b, &t);
            match (&v.witness, v.dependence_coefficient) {
                (Some(w), _) => ensure!(
                    central_violation(&a, &b, w) > 1e-6,
                    "central d={d} k={k}: witness satisfies the hypothesis"
                ),
                (None, Some(l)) if v.conclusion_holds => {
                    let res = (&b - &a.scale(l)).hs_norm();
                    ensure!(
                        res <= 1e-8 * (1.0 + na),
                        "central d={d} k={k}: residual {res:e}"
                    );
                }
                _ => undecided += 1,
            }
            let v = lemma_central2_check(&a, &b, &t);
            match (&v.witness, v.dependence_coefficient) {
                (Some(w), _) => ensure!(
                    central2_violation(&a, &b, w) > 1e-6,
                    "central2 d={d} k={k}: witness satisfies the hypothesis"
                ),
                (None, Some(p)) if v.conclusion_holds => {
                    let res = (&b - &a.scale(p)).hs_norm();
                    ensure!(
                        res <= 1e-8 * (1.0 + na),
                        "central2 d={d} k={k}: residual {res:e}"
                    );
                    ensure!(
                        (p.norm() - 1.0).abs() < 1e-12,
                        "central2 d={d} k={k}: |coefficient| = {}",
                        p.norm()
                    );
                }
                _ => undecided += 1,
            }
        }
    }
    ensure!(
        undecided == 0,
        "{undecided} undecided cases in the independent pass"
    );
    Ok("1000 pairs per lemma decided through the CLI, 2000 more re-verified directly".into())
}

fn criterion_7() -> Outcome {
    let r = cli_ok(&[
        "verify",
        "--lemma",
        "rep0",
        "--seed",
        "42",
        "--trials",
        "200",
        "--max-block",
        "3",
    ])?;
    ensure!(r["trials"] == 200, "{} trials", r["trials"]);
    let failures = r["failures"].as_array().ok_or("no failure list")?;
    ensure!(failures.is_empty(), "failures: {failures:?}");
    ensure!(r["passed"] == true, "campaign did not pass");
    let el = r["elapsed_seconds"].as_f64().unwrap_or(f64::INFINITY);
    Ok(format!(
        "200 trials, 0 failures, {el:.2} s inside the campaign"
    ))
}

/// Every finite-dimensional crossed product from the model criteria.
fn model_crossed_products() -> Result<Vec<(String, CrossedProduct)>, String> {
    let t = tol();
    let mut out = Vec::new();
    let (_, sigma) = build_m2_demo(&t).map_err(|e| e.to_string())?;
    out.push((
        "m2".to_string(),
        crossed_product(&sigma, &t).map_err(|e| e.to_string())?,
    ));
    for n in [4, 6, 8, 10] {
        let m = build_circle(n, PointMap::Flip, &t).map_err(|e| e.to_string())?;
        out.push((
            format!("flip n={n}"),
            crossed_product(&m.sigma, &t).map_err(|e| e.to_string())?,
        ));
    }
    for n in [3, 4, 5, 6, 7, 8] {
        let m = build_circle(n, PointMap::Conj, &t).map_err(|e| e.to_string())?;
        out.push((
            format!("conj n={n}"),
            crossed_product(&m.sigma, &t).map_err(|e| e.to_string())?,
        ));
    }
    Ok(out)
}

/// Smallest eigenvalue of the Gram matrix of `(a, b) ↦ a + bW` on a basis.
fn min_gram_eigenvalue(cp: &CrossedProduct) -> f64 {
    let basis = cp.base().basis();
    let w = cp.symmetry();
    let images: Vec<CMatrix> = basis
        .iter()
        .map(|a| cp.compose_element(a, &CMatrix::zeros(a.rows(), a.cols())))
        .chain(
            basis
                .iter()
                .map(|b| &cp.compose_element(b, &CMatrix::zeros(b.rows(), b.cols())) * w),
        )
        .collect();
    let n = images.len();
    let g = CMatrix::from_fn(n, n, |i, j| images[i].hs_inner(&images[j]));
    let (vals, _) = hermitian_eigen(&g).expect("Gram matrix is Hermitian");
    vals.into_iter().fold(f64::INFINITY, f64::min)
}

fn structural(name: &str, cp: &CrossedProduct) -> Result<(), String> {
    let base = cp.base().dim();
    ensure!(
        cp.algebra().dim() == 2 * base,
        "{name}: dim {} vs 2 * {base}",
        cp.algebra().dim()
    );
    let w = cp.symmetry();
    let sq = (&(w * w) - &CMatrix::identity(w.rows())).hs_norm();
    ensure!(sq <= 1e-8, "{name}: W^2 - I = {sq:e}");
    let (_, _, cov) = cp.structure_residuals();
    ensure!(cov <= 1e-8, "{name}: covariance residual {cov:e}");
    ensure!(
        cp.decomposition_rank(&tol()) == 2 * base,
        "{name}: decomposition map is not of full rank"
    );
    let lam = min_gram_eigenvalue(cp);
    ensure!(
        lam > 1e-6,
        "{name}: Gram matrix of the decomposition map is singular ({lam:e})"
    );
    Ok(())
}

fn criterion_8() -> Outcome {
    let models = model_crossed_products()?;
    for (name, cp) in &models {
        structural(name, cp)?;
    }
    for t in 0..50 {
        let inst =
            random_instance(trial_seed(8, t), 3, false, &tol()).map_err(|e| e.to_string())?;
        let cp = crossed_product(&inst.sigma, &tol()).map_err(|e| e.to_string())?;
        structural(&format!("random {}", inst.descriptor()), &cp)?;
    }
    Ok(format!(
        "{} model crossed products and 50 random instances",
        models.len()
    ))
}

/// Rank over Q by fraction-exact Gaussian elimination.
fn rational_rank(m: &IntMatrix) -> usize {
    let (r, c) = m.shape();
    let mut a: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..r {
            if i != rank && !a[i][col].is_zero() {
                let f = &a[i][col] / &a[rank][col];
                for j in col..c {
                    let d = &f * &a[rank][j];
                    a[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant over Q, for the unimodularity check.
fn rational_det(m: &IntMatrix) -> BigRational {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= a[col][col].clone();
        for i in col + 1..n {
            let f = &a[i][col] / &a[col][col];
            for j in col..n {
                let d = &f * &a[col][j];
                a[i][j] -= d;
            }
        }
    }
    det
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0009);
    for case in 0..500 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let xs: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-20..=20)).collect();
        let m = IntMatrix::from_i64(r, c, &xs).map_err(|e| e.to_string())?;
        let s = smith_normal_form(&m);
        ensure!(
            &(&s.u * &m) * &s.v == s.d,
            "case {case}: U M V != D for {xs:?}"
        );
        ensure!(
            rational_det(&s.u).abs().is_one(),
            "case {case}: U not unimodular"
        );
        ensure!(
            rational_det(&s.v).abs().is_one(),
            "case {case}: V not unimodular"
        );
        ensure!(s.d.is_diagonal(), "case {case}: D not diagonal");
        let divs = s.divisors();
        ensure!(
            divs.iter().all(|d| d.is_positive()),
            "case {case}: non-positive divisor"
        );
        ensure!(
            divs.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
            "case {case}: divisibility chain broken {divs:?}"
        );
        let q = rational_rank(&m);
        ensure!(
            s.rank() == q,
            "case {case}: SNF rank {} vs rational rank {q}",
            s.rank()
        );
        let g = cokernel(&m, r).map_err(|e| e.to_string())?;
        ensure!(
            g.free_rank() == r - q,
            "case {case}: cokernel rank {} vs {}",
            g.free_rank(),
            r - q
        );
    }
    Ok("500 matrices up to 6x6 with entries in [-20, 20]".into())
}

/// Unital embedding of a block algebra with multiplicity matrix `mult`
/// (rows index target blocks), conjugated by a random unitary of the target.
fn multiplicity_hom(
    source: &Arc<StarAlgebra>,
    sizes: &[usize],
    mult: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
) -> Result<(Arc<StarAlgebra>, Vec<usize>, StarHom), String> {
    let t = tol();
    let target_sizes: Vec<usize> = mult
        .iter()
        .map(|row| row.iter().zip(sizes).map(|(m, n)| m * n).sum())
        .collect();
    let target = Arc::new(block_algebra(&target_sizes));
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            *acc += n;
            Some(o)
        })
        .collect();
    let frames: Vec<CMatrix> = target_sizes
        .iter()
        .map(|&n| random_unitary(n, rng, &t))
        .collect::<z2cross::Result<_>>()
        .map_err(|e| e.to_string())?;
    let u = CMatrix::block_diag(&frames.iter().collect::<Vec<_>>());
    let images = source
        .basis()
        .iter()
        .map(|x| {
            let parts: Vec<CMatrix> = (0..sizes.len())
                .map(|i| x.submatrix(offsets[i], offsets[i], sizes[i], sizes[i]))
                .collect();
            let blocks: Vec<&CMatrix> = mult
                .iter()
                .flat_map(|row| {
                    row.iter()
                        .enumerate()
                        .flat_map(|(i, &m)| std::iter::repeat_n(&parts[i], m))
                })
                .collect();
            &(&u * &CMatrix::block_diag(&blocks)) * &u.adjoint()
        })
        .collect();
    let hom =
        StarHom::new(source.clone(), target.clone(), images, &t).map_err(|e| e.to_string())?;
    Ok((target, target_sizes, hom))
}

fn random_multiplicities(rng: &mut ChaCha8Rng, sources: &[usize], cap: usize) -> Vec<Vec<usize>> {
    loop {
        let rows = rng.gen_range(1..=3);
        let m: Vec<Vec<usize>> = (0..rows)
            .map(|_| (0..sources.len()).map(|_| rng.gen_range(0..=2)).collect())
            .collect();
        let sizes: Vec<usize> = m
            .iter()
            .map(|r| r.iter().zip(sources).map(|(a, b)| a * b).sum())
            .collect();
        if sizes.iter().all(|&s| s > 0) && sizes.iter().sum::<usize>() <= cap {
            return m;
        }
    }
}

/// Whether `k` equals `m` after permuting rows and columns.
fn permutation_equivalent(k: &IntMatrix, m: &[Vec<usize>]) -> bool {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        perms(n - 1)
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    q
                })
            })
            .collect()
    }
    let (r, c) = k.shape();
    if r != m.len() || m.iter().any(|row| row.len() != c) {
        return false;
    }
    perms(r).iter().any(|pr| {
        perms(c)
            .iter()
            .any(|pc| (0..r).all(|i| (0..c).all(|j| k.row(pr[i])[pc[j]] == BigInt::from(m[i][j]))))
    })
}

fn criterion_10() -> Outcome {
    let cfg = Config::default();
    let models = model_crossed_products()?;
    for (name, cp) in &models {
        let rank = k0(cp.algebra(), &cfg)
            .map_err(|e| e.to_string())?
            .group
            .free_rank();
        let classes = census(cp, &cfg).map_err(|e| e.to_string())?.class_count();
        ensure!(
            rank == classes,
            "{name}: K0 rank {rank} vs {classes} classes"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0010);
    for pair in 0..50 {
        let a_sizes: Vec<usize> = (0..rng.gen_range(1..=2))
            .map(|_| rng.gen_range(1..=2))
            .collect();
        let a = Arc::new(block_algebra(&a_sizes));
        let m1 = random_multiplicities(&mut rng, &a_sizes, 6);
        let (b, b_sizes, phi) = multiplicity_hom(&a, &a_sizes, &m1, &mut rng)?;
        let m2 = random_multiplicities(&mut rng, &b_sizes, 10);
        let (_, _, psi) = multiplicity_hom(&b, &b_sizes, &m2, &mut rng)?;
        let k_phi = k0_map(&phi, &cfg).map_err(|e| e.to_string())?;
        let k_psi = k0_map(&psi, &cfg).map_err(|e| e.to_string())?;
        let k_comp = k0_map(&psi.compose(&phi), &cfg).map_err(|e| e.to_string())?;
        ensure!(
            k_comp == &k_psi * &k_phi,
            "pair {pair}: K0(psi o phi) != K0(psi) K0(phi)"
        );
        ensure!(
            permutation_equivalent(&k_phi, &m1),
            "pair {pair}: K0(phi) does not match multiplicities {m1:?}"
        );
        ensure!(
            permutation_equivalent(&k_psi, &m2),
            "pair {pair}: K0(psi) does not match multiplicities {m2:?}"
        );
    }
    Ok(format!(
        "{} model crossed products, 50 composable pairs",
        models.len()
    ))
}

struct Criterion {
    id: u8,
    limit: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        limit: Duration::from_secs(1),
        run: criterion_1,
    },
    Criterion {
        id: 2,
        limit: Duration::from_secs(1),
        run: criterion_2,
    },
    Criterion {
        id: 3,
        limit: Duration::from_secs(1),
        run: criterion_3,
    },
    Criterion {
        id: 4,
        limit: Duration::from_secs(8),
        run: criterion_4,
    },
    Criterion {
        id: 5,
        limit: Duration::from_secs(12),
        run: criterion_5,
    },
    Criterion {
        id: 6,
        limit: Duration::from_secs(5),
        run: criterion_6,
    },
    Criterion {
        id: 7,
        limit: Duration::from_secs(30),
        run: criterion_7,
    },
    Criterion {
        id: 8,
        limit: Duration::from_secs(10),
        run: criterion_8,
    },
    Criterion {
        id: 9,
        limit: Duration::from_secs(5),
        run: criterion_9,
    },
    Criterion {
        id: 10,
        limit: Duration::from_secs(10),
        run: criterion_10,
    },
];

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run));
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(Ok(detail)) if elapsed <= c.limit => Ok(detail),
            Ok(Ok(detail)) => Err(format!("{detail}; exceeded the time limit")),
            Ok(Err(e)) => Err(e),
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let (tag, detail) = match verdict {
            Ok(d) => ("PASS", d),
            Err(e) => {
                failed += 1;
                ("FAIL", e)
            }
        };
        println!(
            "{tag} criterion {:>2} ({:.3} s, limit {} s): {detail}",
            c.id,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", CRITERIA.len());
}
