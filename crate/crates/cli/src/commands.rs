use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};
use z2cross::classify::Classification;
use z2cross::crossed::{
    crossed_product, faithfulness_check, grading, rep0_criteria, Bullet3, CrossedProduct, Grading,
    OrderTwoAutomorphism,
};
use z2cross::ktheory::{
    cokernel, evaluate_case, is_permutation, k0, k0_map, rank, smith_normal_form, CaseId,
};
use z2cross::models::{
    build_circle, build_m2_demo, census, classified_irreps, CircleModel, PointMap,
};
use z2cross::oracles::{lemma_suite, run_campaign, CampaignMode, Lemma};
use z2cross::star_algebra::{decompose_rep, unitarily_equivalent};
use z2cross::{Config, StarAlgebra, StarHom};

use crate::algebra_file::AlgebraFile;
use crate::args::{
    CampaignModeArg, CaseName, Command, DemoArgs, K0Args, LemmaName, ModelName, PaperArgs,
    PushoutArgs, SnfArgs, Source, VerifyArgs,
};
use crate::encode::{
    bigint_to_json, complex_to_json, group_to_json, int_matrix_from_json, int_matrix_to_json,
    matrix_to_json,
};
use crate::error::CliError;
use crate::fixtures;

/// What a command produced before it is wrapped into a report.
#[derive(Debug)]
pub struct Outcome {
    pub results: Value,
    pub anchor: String,
    pub violations: Vec<String>,
    pub summary: String,
}

#[derive(Default)]
struct Checks(Vec<String>);

impl Checks {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if !ok {
            self.0.push(what());
        }
        ok
    }
}

struct Resolved {
    label: String,
    algebra: Arc<StarAlgebra>,
    sigma: Option<OrderTwoAutomorphism>,
    circle: Option<CircleModel>,
    model: Option<ModelName>,
}

impl Resolved {
    fn sigma(&self) -> Result<&OrderTwoAutomorphism, CliError> {
        self.sigma.as_ref().ok_or_else(|| {
            CliError::input(format!(
                "{} has no automorphism; add an \"automorphism\" entry to the file",
                self.label
            ))
        })
    }

    /// Census predicted for the built-in models.
    fn expected_census(&self) -> Option<(usize, usize, usize)> {
        let n = self.circle.as_ref().map(|c| c.n).unwrap_or(0);
        match self.model? {
            ModelName::M2 => Some((0, 2, 0)),
            ModelName::CircleFlip => Some((0, 0, n / 2)),
            ModelName::CircleConj if n.is_multiple_of(2) => Some((4, 0, (n - 2) / 2)),
            ModelName::CircleConj => Some((2, 0, (n - 1) / 2)),
        }
    }
}

fn model_name(m: ModelName) -> &'static str {
    match m {
        ModelName::M2 => "m2",
        ModelName::CircleFlip => "circle-flip",
        ModelName::CircleConj => "circle-conj",
    }
}

fn build_model(model: ModelName, n: usize, cfg: &Config) -> Result<Resolved, CliError> {
    let tol = &cfg.tol;
    Ok(match model {
        ModelName::M2 => {
            let (algebra, sigma) = build_m2_demo(tol)?;
            Resolved {
                label: "m2".into(),
                algebra,
                sigma: Some(sigma),
                circle: None,
                model: Some(model),
            }
        }
        ModelName::CircleFlip | ModelName::CircleConj => {
            let pm = if model == ModelName::CircleFlip {
                PointMap::Flip
            } else {
                PointMap::Conj
            };
            let c = build_circle(n, pm, tol)?;
            Resolved {
                label: format!("{}(n={n})", model_name(model)),
                algebra: c.algebra.clone(),
                sigma: Some(c.sigma.clone()),
                circle: Some(c),
                model: Some(model),
            }
        }
    })
}

fn resolve(src: &Source, cfg: &Config) -> Result<Resolved, CliError> {
    match (&src.file, src.model) {
        (Some(path), None) => {
            let loaded = AlgebraFile::read(path)?.load(&cfg.tol)?;
            Ok(Resolved {
                label: path.display().to_string(),
                algebra: loaded.algebra,
                sigma: loaded.sigma,
                circle: None,
                model: None,
            })
        }
        (None, Some(m)) => build_model(m, src.n, cfg),
        (None, None) => Err(CliError::input("one of --file or --model is required")),
        (Some(_), Some(_)) => Err(CliError::input("--file and --model are mutually exclusive")),
    }
}

fn algebra_json(r: &Resolved) -> Value {
    json!({
        "source": r.label,
        "name": r.algebra.name(),
        "ambient_dim": r.algebra.ambient_dim(),
        "dim": r.algebra.dim(),
    })
}

pub fn execute(command: &Command, cfg: &Config) -> Result<Outcome, CliError> {
    match command {
        Command::Grading(src) => cmd_grading(src, cfg),
        Command::CrossedProduct(src) => cmd_crossed_product(src, cfg),
        Command::Classify(src) => cmd_classify(src, cfg),
        Command::Induce(src) => cmd_induce(src, cfg),
        Command::Census(src) => cmd_census(src, cfg),
        Command::Verify(a) => cmd_verify(a, cfg),
        Command::K0(a) => cmd_k0(a, cfg),
        Command::K0Map(src) => cmd_k0_map(src, cfg),
        Command::Snf(a) => cmd_snf(a),
        Command::PushoutK(a) => cmd_pushout(a),
        Command::Paper(a) => cmd_paper(a),
        Command::Demo(a) => cmd_demo(a, cfg),
    }
}

fn grading_json(
    sigma: &OrderTwoAutomorphism,
    cfg: &Config,
    checks: &mut Checks,
    with_bases: bool,
) -> Result<Value, CliError> {
    let g = grading(sigma, &cfg.tol)?;
    let dim = sigma.algebra().dim();
    let residual = Grading::reconstruction_residual(sigma);
    let involution = sigma.involution_residual();
    checks.require(g.fixed_basis.len() + g.odd_basis.len() == dim, || {
        format!(
            "grading dimensions {} + {} differ from dim A = {dim}",
            g.fixed_basis.len(),
            g.odd_basis.len()
        )
    });
    checks.require(residual <= cfg.tol.bound(1.0), || {
        format!("grading reconstruction residual {residual:e}")
    });
    checks.require(involution <= cfg.tol.bound(1.0), || {
        format!("sigma^2 differs from the identity by {involution:e}")
    });
    let mut v = json!({
        "fixed_dim": g.fixed_basis.len(),
        "odd_dim": g.odd_basis.len(),
        "reconstruction_residual": residual,
        "involution_residual": involution,
    });
    if with_bases {
        v["fixed_basis"] = g.fixed_basis.iter().map(matrix_to_json).collect();
        v["odd_basis"] = g.odd_basis.iter().map(matrix_to_json).collect();
    }
    Ok(v)
}

fn cmd_grading(src: &Source, cfg: &Config) -> Result<Outcome, CliError> {
    let r = resolve(src, cfg)?;
    let mut checks = Checks::default();
    let g = grading_json(r.sigma()?, cfg, &mut checks, true)?;
    let summary = format!(
        "{}: dim A = {}, fixed part {}, odd part {}",
        r.label,
        r.algebra.dim(),
        g["fixed_dim"],
        g["odd_dim"]
    );
    Ok(Outcome {
        results: json!({ "algebra": algebra_json(&r), "grading": g }),
        anchor: "A = A_1 + A_-1, with A_1 the fixed-point algebra of an order-two automorphism"
            .into(),
        violations: checks.0,
        summary,
    })
}

fn structure_json(
    cp: &CrossedProduct,
    cfg: &Config,
    checks: &mut Checks,
) -> Result<Value, CliError> {
    let base = cp.base().dim();
    let dim = cp.algebra().dim();
    let (w2, wsa, cov) = cp.structure_residuals();
    let rank = cp.decomposition_rank(&cfg.tol);
    let bound = 1e-8_f64.max(cfg.tol.bound(1.0));
    checks.require(dim == 2 * base, || {
        format!("crossed product has dimension {dim}, expected {}", 2 * base)
    });
    checks.require(w2 <= bound, || format!("W^2 - I residual {w2:e}"));
    checks.require(wsa <= bound, || format!("W - W* residual {wsa:e}"));
    checks.require(cov <= bound, || format!("covariance residual {cov:e}"));
    checks.require(rank == 2 * base, || {
        format!("(a, b) -> a + bW has rank {rank}, expected {}", 2 * base)
    });
    let d = decompose_rep(&cp.algebra().identity_rep(), cfg)?;
    Ok(json!({
        "base_dim": base,
        "dim": dim,
        "symmetry_square_residual": w2,
        "symmetry_selfadjoint_residual": wsa,
        "covariance_residual": cov,
        "decomposition_rank": rank,
        "blocks": d.classes.iter().map(|c| json!({
            "irrep_dim": c.irrep.carrier_dim(),
            "multiplicity": c.multiplicity,
        })).collect::<Vec<_>>(),
    }))
}

fn cmd_crossed_product(src: &Source, cfg: &Config) -> Result<Outcome, CliError> {
    let r = resolve(src, cfg)?;
    let cp = crossed_product(r.sigma()?, &cfg.tol)?;
    let mut checks = Checks::default();
    let s = structure_json(&cp, cfg, &mut checks)?;
    let summary = format!(
        "{}: crossed product of dimension {} over dim A = {}",
        r.label,
        cp.algebra().dim(),
        r.algebra.dim()
    );
    Ok(Outcome {
        results: json!({
            "algebra": algebra_json(&r),
            "crossed_product": s,
            "symmetry": matrix_to_json(cp.symmetry()),
        }),
        anchor: "A x| Z2 as the doubled-matrix algebra {[[a, b], [sigma(b), sigma(a)]]} with W the block flip".into(),
        violations: checks.0,
        summary,
    })
}

/// Classifies every irreducible class and checks the per-kind consequences.
fn classes_json(
    r: &Resolved,
    cp: &CrossedProduct,
    cfg: &Config,
    checks: &mut Checks,
) -> Result<Vec<Value>, CliError> {
    let sigma = cp.sigma();
    let mut out = Vec::new();
    for (idx, ci) in classified_irreps(cp, cfg)?.into_iter().enumerate() {
        let mut v = json!({
            "index": idx,
            "dim": ci.irrep.carrier_dim(),
            "kind": ci.classification.kind().as_str(),
        });
        match &ci.classification {
            Classification::Type1 { sign } => {
                v["sign"] = json!(sign);
            }
            Classification::Type2Split { corners } => {
                v["alpha_dim"] = json!(corners.alpha.carrier_dim());
                v["delta_dim"] = json!(corners.delta.carrier_dim());
                let eq = unitarily_equivalent(&corners.alpha, &corners.delta, cfg)?.equivalent;
                checks.require(!eq, || {
                    format!("class {idx}: split class with alpha equivalent to delta")
                });
                let restricted = cp.restrict_to_base(&ci.irrep);
                let irreducible = z2cross::star_algebra::is_irreducible(&restricted, &cfg.tol);
                v["restriction_irreducible"] = json!(irreducible);
                checks.require(irreducible, || {
                    format!("class {idx}: split class restricts reducibly to A")
                });
            }
            Classification::Type2Induced { corners, phi, eta } => {
                v["alpha_dim"] = json!(corners.alpha.carrier_dim());
                v["delta_dim"] = json!(corners.delta.carrier_dim());
                v["eta"] = complex_to_json(*eta);
                v["phi_dim"] = json!(phi.carrier_dim());
                let twisted = sigma.twist(phi);
                let same = unitarily_equivalent(phi, &twisted, cfg)?.equivalent;
                v["phi_equivalent_to_twist"] = json!(same);
                checks.require(!same, || {
                    format!("class {idx}: inducing phi is equivalent to phi o sigma")
                });
                let again = cp.induce(phi, &cfg.tol)?;
                let back = unitarily_equivalent(&again, &ci.irrep, cfg)?.equivalent;
                v["induced_from_phi"] = json!(back);
                checks.require(back, || {
                    format!("class {idx}: inducing phi does not recover the class")
                });
                if let Some(c) = &r.circle {
                    let k = c.evaluation_point(phi, &cfg.tol);
                    let k2 = c.evaluation_point(&twisted, &cfg.tol);
                    v["phi_point"] = json!(k);
                    v["phi_sigma_point"] = json!(k2);
                    let ok =
                        matches!((k, k2), (Some(a), Some(b)) if c.point_map.image(c.n, a) == b);
                    checks.require(ok, || {
                        format!("class {idx}: phi is not a point evaluation compatible with the point map")
                    });
                }
            }
        }
        out.push(v);
    }
    Ok(out)
}

fn cmd_classify(src: &Source, cfg: &Config) -> Result<Outcome, CliError> {
    let r = resolve(src, cfg)?;
    let cp = crossed_product(r.sigma()?, &cfg.tol)?;
    let mut checks = Checks::default();
    let classes = classes_json(&r, &cp, cfg, &mut checks)?;
    let summary = format!(
        "{}: {} irreducible classes classified",
        r.label,
        classes.len()
    );
    Ok(Outcome {
        results: json!({ "algebra": algebra_json(&r), "crossed_dim": cp.algebra().dim(), "classes": classes }),
        anchor: "Type 1 / Type 2 dichotomy for irreducible representations of A x| Z2".into(),
        violations: checks.0,
        summary,
    })
}

fn cmd_induce(src: &Source, cfg: &Config) -> Result<Outcome, CliError> {
    let r = resolve(src, cfg)?;
    let sigma = r.sigma()?;
    let cp = crossed_product(sigma, &cfg.tol)?;
    let mut checks = Checks::default();
    let base = decompose_rep(&r.algebra.identity_rep(), cfg)?;
    let mut rows = Vec::new();
    for (idx, class) in base.classes.iter().enumerate() {
        let crit = rep0_criteria(&class.irrep, &cp, cfg)?;
        checks.require(crit.consistent(), || {
            format!(
                "irrep {idx}: bullets disagree ({}, {}, {:?})",
                crit.bullet1, crit.bullet2, crit.bullet3
            )
        });
        let mut v = json!({
            "index": idx,
            "dim": class.irrep.carrier_dim(),
            "bullet1_induced_irreducible": crit.bullet1,
            "bullet2_irreducible_and_not_twist_equivalent": crit.bullet2,
            "bullet3_no_order_two_intertwiner": match crit.bullet3 {
                Bullet3::Evaluated(b) => json!(b),
                Bullet3::NotEvaluated => json!("not evaluated"),
            },
        });
        if let Some(c) = &r.circle {
            v["point"] = json!(c.evaluation_point(&class.irrep, &cfg.tol));
        }
        rows.push(v);
    }
    let pi = r.algebra.identity_rep();
    let faith = faithfulness_check(&pi, &cp, &cfg.tol)?;
    checks.require(faith.implication_holds(), || {
        "faithful pi induced a non-faithful representation".into()
    });
    let summary = format!(
        "{}: {} irreducible representations of A induced; {} give irreducible inductions",
        r.label,
        rows.len(),
        rows.iter()
            .filter(|v| v["bullet1_induced_irreducible"] == json!(true))
            .count()
    );
    Ok(Outcome {
        results: json!({
            "algebra": algebra_json(&r),
            "irreps": rows,
            "defining_rep": {
                "pi_faithful": faith.pi_faithful,
                "induced_faithful": faith.induced_faithful,
            },
        }),
        anchor: "irreducibility criteria for the induced representation pi + pi o sigma, and faithfulness of the induction".into(),
        violations: checks.0,
        summary,
    })
}

fn census_json(
    r: &Resolved,
    cp: &CrossedProduct,
    cfg: &Config,
    checks: &mut Checks,
) -> Result<Value, CliError> {
    let c = census(cp, cfg)?;
    let dim = cp.algebra().dim();
    checks.require(c.dimension_sum() == dim, || {
        format!(
            "sum of squared class dimensions {} differs from dim {dim}",
            c.dimension_sum()
        )
    });
    let expected = r.expected_census();
    if let Some(e) = expected {
        checks.require(c.triple() == e, || {
            format!("census {:?}, expected {e:?}", c.triple())
        });
    }
    Ok(json!({
        "type1": c.type1_count,
        "type2_split": c.type2split_count,
        "type2_induced": c.type2induced_count,
        "class_dims": c.class_dims,
        "dimension_sum": c.dimension_sum(),
        "crossed_dim": dim,
        "expected": expected.map(|(a, b, d)| json!([a, b, d])),
    }))
}

fn cmd_census(src: &Source, cfg: &Config) -> Result<Outcome, CliError> {
    let r = resolve(src, cfg)?;
    let cp = crossed_product(r.sigma()?, &cfg.tol)?;
    let mut checks = Checks::default();
    let c = census_json(&r, &cp, cfg, &mut checks)?;
    let summary = format!(
        "{}: census (type1, type2 split, type2 induced) = ({}, {}, {})",
        r.label, c["type1"], c["type2_split"], c["type2_induced"]
    );
    Ok(Outcome {
        results: json!({ "algebra": algebra_json(&r), "census": c }),
        anchor:
            "every irreducible representation of A x| Z2 is Type 1, Type 2 split, or induced from A"
                .into(),
        violations: checks.0,
        summary,
    })
}

fn cmd_verify(a: &VerifyArgs, cfg: &Config) -> Result<Outcome, CliError> {
    if a.trials == 0 {
        return Err(CliError::input("--trials must be at least 1"));
    }
    let start = Instant::now();
    match a.lemma {
        LemmaName::Central | LemmaName::Central2 => {
            if a.min_dim == 0 || a.min_dim > a.max_dim {
                return Err(CliError::input("need 1 <= --min-dim <= --max-dim"));
            }
            let lemma = if a.lemma == LemmaName::Central {
                Lemma::Central
            } else {
                Lemma::Central2
            };
            let dims: Vec<usize> = (a.min_dim..=a.max_dim).collect();
            let rep = lemma_suite(lemma, cfg.seed, a.trials as usize, &dims, &cfg.tol)?;
            let mut violations = rep.mismatches.clone();
            if rep.undecided > 0 {
                violations.push(format!(
                    "{} cases returned neither a witness nor a conclusion",
                    rep.undecided
                ));
            }
            let summary = format!(
                "lemma {}: {} cases, {} witnesses, {} conclusions, {} undecided",
                lemma.as_str(),
                rep.cases,
                rep.witnesses,
                rep.conclusions,
                rep.undecided
            );
            let anchor = match lemma {
                Lemma::Central => {
                    "if BTA = ATB for every operator T then A and B are linearly dependent"
                }
                Lemma::Central2 => {
                    "if ATA* = BTB* for every operator T then B = exp(2 pi i theta) A"
                }
            };
            Ok(Outcome {
                results: json!({
                    "lemma": lemma.as_str(),
                    "pairs_per_dim": a.trials,
                    "dims": dims,
                    "cases": rep.cases,
                    "witnesses": rep.witnesses,
                    "conclusions": rep.conclusions,
                    "undecided": rep.undecided,
                    "max_relative_residual": rep.max_relative_residual,
                    "mismatches": rep.mismatches,
                    "elapsed_seconds": start.elapsed().as_secs_f64(),
                }),
                anchor: anchor.into(),
                violations,
                summary,
            })
        }
        LemmaName::Rep0 => {
            let mode = match a.mode {
                CampaignModeArg::Random => CampaignMode::Random,
                CampaignModeArg::Identity => CampaignMode::ForcedIdentity,
                CampaignModeArg::Swap => CampaignMode::ForcedSwap,
            };
            let mut rep = run_campaign(cfg.seed, a.trials, a.max_block, mode, &cfg.tol)?;
            rep.elapsed = Some(start.elapsed().as_secs_f64());
            let count = |f: &dyn Fn(&z2cross::oracles::TrialOutcome) -> bool| {
                rep.outcomes.iter().filter(|o| f(o)).count()
            };
            let violations: Vec<String> = rep
                .failures
                .iter()
                .map(|f| {
                    format!(
                        "trial {}: expected {}, observed {}",
                        f.trial, f.expected, f.observed
                    )
                })
                .collect();
            let summary = format!(
                "rep0 campaign ({}): {} trials, {} failures",
                mode.as_str(),
                rep.trials,
                rep.failures.len()
            );
            Ok(Outcome {
                results: json!({
                    "lemma": "rep0",
                    "mode": mode.as_str(),
                    "trials": rep.trials,
                    "max_block": a.max_block,
                    "passed": rep.passed(),
                    "counts": {
                        "pi_irreducible": count(&|o| o.pi_irreducible),
                        "induced_irreducible": count(&|o| o.bullet1),
                        "bullet3_evaluated": count(&|o| o.bullet3 != Bullet3::NotEvaluated),
                        "order_two_intertwiner_found": count(&|o| o.bullet3 == Bullet3::Evaluated(false)),
                        "pi_faithful": count(&|o| o.pi_faithful),
                    },
                    "failures": rep.failures.iter().map(|f| json!({
                        "trial": f.trial,
                        "descriptor": f.descriptor,
                        "expected": f.expected,
                        "observed": f.observed,
                    })).collect::<Vec<_>>(),
                    "outcomes": rep.outcomes.iter().map(|o| json!({
                        "trial": o.trial,
                        "instance": o.descriptor,
                        "bullets": [o.bullet1, o.bullet2, match o.bullet3 {
                            Bullet3::Evaluated(b) => json!(b),
                            Bullet3::NotEvaluated => json!("not evaluated"),
                        }],
                    })).collect::<Vec<_>>(),
                    "elapsed_seconds": rep.elapsed,
                }),
                anchor: "the induced representation is irreducible iff pi is irreducible and not equivalent to pi o sigma, iff no order-two unitary implements pi o sigma; faithful pi induces a faithful representation".into(),
                violations,
                summary,
            })
        }
    }
}

fn k0_json(alg: &Arc<StarAlgebra>, cfg: &Config) -> Result<Value, CliError> {
    let k = k0(alg, cfg)?;
    Ok(json!({
        "group": group_to_json(&k.group),
        "blocks": k.blocks.iter().map(|b| json!({
            "irrep_dim": b.irrep_dim,
            "multiplicity": b.multiplicity,
            "minimal_projection_rank": b.minimal_projection.trace().re.round() as i64,
        })).collect::<Vec<_>>(),
    }))
}

fn cmd_k0(a: &K0Args, cfg: &Config) -> Result<Outcome, CliError> {
    let r = resolve(&a.source, cfg)?;
    let mut checks = Checks::default();
    let (target, k) = if a.crossed {
        let cp = crossed_product(r.sigma()?, &cfg.tol)?;
        let k = k0_json(cp.algebra(), cfg)?;
        let classes = census(&cp, cfg)?.class_count();
        let rank = k["group"]["free_rank"].as_u64().unwrap_or(0) as usize;
        checks.require(rank == classes, || {
            format!("K0 rank {rank} differs from the {classes} irreducible classes")
        });
        ("crossed product", k)
    } else {
        ("algebra", k0_json(&r.algebra, cfg)?)
    };
    let summary = format!(
        "{}: K0 of the {target} = {}",
        r.label,
        k["group"]["display"].as_str().unwrap_or("")
    );
    Ok(Outcome {
        results: json!({ "algebra": algebra_json(&r), "target": target, "k0": k }),
        anchor: "K0 of a finite-dimensional C*-algebra is free on its Wedderburn blocks".into(),
        violations: checks.0,
        summary,
    })
}

fn cmd_k0_map(src: &Source, cfg: &Config) -> Result<Outcome, CliError> {
    let r = resolve(src, cfg)?;
    let sigma = r.sigma()?;
    let cp = crossed_product(sigma, &cfg.tol)?;
    let mut checks = Checks::default();
    let m_sigma = k0_map(sigma.action(), cfg)?;
    let m_embed = k0_map(cp.embed(), cfg)?;
    let composed: StarHom = cp.embed().compose(sigma.action());
    let m_comp = k0_map(&composed, cfg)?;
    checks.require(is_permutation(&m_sigma), || {
        "K0(sigma) is not a permutation matrix".into()
    });
    let product = &m_embed * &m_sigma;
    checks.require(m_comp == product, || {
        "K0(i o sigma) differs from K0(i) K0(sigma)".into()
    });
    let summary = format!(
        "{}: K0(sigma) is {}x{}, K0(i) is {}x{}",
        r.label,
        m_sigma.rows(),
        m_sigma.cols(),
        m_embed.rows(),
        m_embed.cols()
    );
    Ok(Outcome {
        results: json!({
            "algebra": algebra_json(&r),
            "sigma": int_matrix_to_json(&m_sigma),
            "embedding": int_matrix_to_json(&m_embed),
            "embedding_after_sigma": int_matrix_to_json(&m_comp),
        }),
        anchor:
            "K0 maps of unital inclusions are multiplicity matrices, functorial under composition"
                .into(),
        violations: checks.0,
        summary,
    })
}

fn cmd_snf(a: &SnfArgs) -> Result<Outcome, CliError> {
    let v: Value = serde_json::from_str(&a.matrix)
        .map_err(|e| CliError::input(format!("--matrix is not valid JSON: {e}")))?;
    let m = int_matrix_from_json(&v, "--matrix")?;
    let s = smith_normal_form(&m);
    let mut checks = Checks::default();
    let reconstructs = &(&s.u * &m) * &s.v == s.d;
    let u_unimodular = s.u.is_unimodular();
    let v_unimodular = s.v.is_unimodular();
    let divs = s.divisors();
    let chain = s.d.is_diagonal()
        && divs
            .windows(2)
            .all(|w| (&w[1] % &w[0]) == num_bigint::BigInt::from(0));
    checks.require(reconstructs, || "U M V differs from D".into());
    checks.require(u_unimodular && v_unimodular, || {
        "U or V is not unimodular".into()
    });
    checks.require(chain, || "D is not a divisibility chain".into());
    let coker = cokernel(&m, m.rows())?;
    let summary = format!(
        "SNF divisors {:?}; cokernel {coker}",
        divs.iter().map(|d| d.to_string()).collect::<Vec<_>>()
    );
    Ok(Outcome {
        results: json!({
            "input": int_matrix_to_json(&m),
            "u": int_matrix_to_json(&s.u),
            "d": int_matrix_to_json(&s.d),
            "v": int_matrix_to_json(&s.v),
            "divisors": divs.iter().map(bigint_to_json).collect::<Vec<_>>(),
            "rank": s.rank(),
            "checks": {
                "umv_equals_d": reconstructs,
                "u_unimodular": u_unimodular,
                "v_unimodular": v_unimodular,
                "divisibility_chain": chain,
            },
            "cokernel": group_to_json(&coker),
        }),
        anchor: "Smith normal form U M V = D over the integers".into(),
        violations: checks.0,
        summary,
    })
}

fn cmd_pushout(a: &PushoutArgs) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(&a.file).map_err(|source| CliError::Io {
        path: a.file.display().to_string(),
        source,
    })?;
    let v: Value = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: a.file.display().to_string(),
        source,
    })?;
    let inputs = fixtures::pushout_inputs(&v, &a.file.display().to_string())?;
    let g = inputs.evaluate()?;
    let mut checks = Checks::default();
    let all_free = inputs.g1.is_free() && inputs.g2.is_free() && inputs.g_g.is_free();
    if all_free {
        let combined = inputs.i1.vstack(&inputs.i2.neg())?;
        let expected = inputs.g1.free_rank() + inputs.g2.free_rank() - rank(&combined);
        checks.require(g.free_rank() == expected, || {
            format!(
                "free rank {} differs from rank accounting {expected}",
                g.free_rank()
            )
        });
    }
    let summary = format!("pushout K-group: {g}");
    Ok(Outcome {
        results: json!({ "group": group_to_json(&g), "inputs_free": all_free }),
        anchor: "K-theory of an amalgamated free product over C*(G) as the cokernel of x -> (i1 x, -i2 x)".into(),
        violations: checks.0,
        summary,
    })
}

fn cmd_paper(a: &PaperArgs) -> Result<Outcome, CliError> {
    let doc = fixtures::read_document(a.fixtures.as_deref())?;
    let case = match a.case {
        CaseName::Alpha => CaseId::Alpha,
        CaseName::Beta => CaseId::Beta,
    };
    let loaded = fixtures::load_case(&doc, case)?;
    let fx = &loaded.fixture;
    let out = evaluate_case(fx)?;
    let mut checks = Checks::default();
    checks.require(out.k0_matches, || {
        format!("K0 = {}, expected {}", out.k0, fx.expected_k0)
    });
    checks.require(out.k1_matches, || {
        format!("K1 = {}, expected {}", out.k1, fx.expected_k1)
    });
    let side = out.side_check.as_ref().map(|(got, ok)| {
        checks.require(*ok, || {
            format!(
                "side check gave rank {} with divisors {:?}",
                got.rank, got.divisors
            )
        });
        json!({
            "rank": got.rank,
            "divisors": got.divisors.iter().map(bigint_to_json).collect::<Vec<_>>(),
            "matches": ok,
        })
    });
    let summary = format!("case {}: K0 = {}, K1 = {}", case.as_str(), out.k0, out.k1);
    Ok(Outcome {
        results: json!({
            "case": case.as_str(),
            "description": loaded.description,
            "k0": group_to_json(&out.k0),
            "k1": group_to_json(&out.k1),
            "expected_k0": group_to_json(&fx.expected_k0),
            "expected_k1": group_to_json(&fx.expected_k1),
            "k0_matches": out.k0_matches,
            "k1_matches": out.k1_matches,
            "side_check": side,
            "generator_notes": fx.generator_notes,
            "notes": fixtures::notes(&doc),
        }),
        anchor: loaded.anchor,
        violations: checks.0,
        summary,
    })
}

fn cmd_demo(a: &DemoArgs, cfg: &Config) -> Result<Outcome, CliError> {
    let r = build_model(a.model, a.n, cfg)?;
    let sigma = r.sigma()?;
    let cp = crossed_product(sigma, &cfg.tol)?;
    let mut checks = Checks::default();
    let g = grading_json(sigma, cfg, &mut checks, false)?;
    let s = structure_json(&cp, cfg, &mut checks)?;
    let c = census_json(&r, &cp, cfg, &mut checks)?;
    let classes = classes_json(&r, &cp, cfg, &mut checks)?;
    let k = k0_json(cp.algebra(), cfg)?;
    let class_count = classes.len();
    let k_rank = k["group"]["free_rank"].as_u64().unwrap_or(0) as usize;
    checks.require(k_rank == class_count, || {
        format!("K0 rank {k_rank} differs from the {class_count} irreducible classes")
    });
    let mut extra = json!({});
    match a.model {
        ModelName::M2 => {
            let id = r.algebra.identity_rep();
            let mut restrictions = Vec::new();
            for ci in classified_irreps(&cp, cfg)? {
                let res = cp.restrict_to_base(&ci.irrep);
                let eq = unitarily_equivalent(&res, &id, cfg)?.equivalent;
                checks.require(eq, || {
                    "a class restricts to M2 inequivalently to the identity".into()
                });
                restrictions.push(eq);
            }
            extra["restriction_equivalent_to_identity"] = json!(restrictions);
        }
        ModelName::CircleFlip => {
            let all_two = classes.iter().all(|v| v["dim"] == json!(2));
            checks.require(all_two && class_count == a.n / 2, || {
                format!("crossed product is not {} copies of M2", a.n / 2)
            });
            extra["copies_of_m2"] = json!(class_count);
        }
        ModelName::CircleConj => {
            if let Some(m) = &r.circle {
                extra["fixed_points"] = json!(m.fixed_points());
            }
        }
    }
    let summary = format!(
        "{}: dim A = {}, crossed dim = {}, census ({}, {}, {}), K0 rank {k_rank}",
        r.label,
        r.algebra.dim(),
        cp.algebra().dim(),
        c["type1"],
        c["type2_split"],
        c["type2_induced"]
    );
    Ok(Outcome {
        results: json!({
            "model": model_name(a.model),
            "n": r.circle.as_ref().map(|m| m.n),
            "algebra": algebra_json(&r),
            "grading": g,
            "crossed_product": s,
            "census": c,
            "classes": classes,
            "k0": k,
            "model_checks": extra,
        }),
        anchor: match a.model {
            ModelName::M2 => "M2 with Ad diag(1, -1): two irreducible classes, each restricting to the identity representation",
            ModelName::CircleFlip => "functions on the circle with w -> -w: the crossed product is C(T, M2) and every irreducible representation is induced from a point evaluation",
            ModelName::CircleConj => "functions on the circle with w -> conj(w): one-dimensional classes at the fixed points 1 and -1, induced classes elsewhere",
        }
        .into(),
        violations: checks.0,
        summary,
    })
}
