use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};
use supervariety_core::budget::Budget;
use supervariety_core::cohomology::{
    annihilator_probe, build_complex, e1_dominance_check, OddPolynomial,
};
use supervariety_core::io::{
    algebra_from_json, algebra_to_json, graded_module_to_json, module_from_json, module_to_json,
    point_json, points_json, vectors_from_json, SCHEMA_VERSION,
};
use supervariety_core::liesuper::{clifford_assoc_graded, make_gl, validate_algebra, LieSuperAlgebra, OddPoint};
use supervariety_core::supermodule::{
    assoc_graded_module, free_test, natural_module, standard_filtration, validate_module,
    verify_certificate, SuperModule,
};
use supervariety_core::varieties::{
    gl_orbit_rep, global_dim_probe, nullcone_ideal, nullcone_points, parse_point, parse_points,
    rank_variety_points, support_zero_probe, tensor_property_check,
};
use supervariety_core::{Error, Result};

use crate::Command;

pub struct Outcome {
    pub report: Value,
    /// False for a failed check (exit status 1).
    pub passed: bool,
}

fn ok(report: Value) -> Result<Outcome> {
    Ok(Outcome {
        report,
        passed: true,
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<Arc<LieSuperAlgebra>> {
    Ok(Arc::new(algebra_from_json(&read(path)?)?))
}

/// The module in `path`, or the trivial module.
fn load_module(g: &Arc<LieSuperAlgebra>, path: Option<&Path>) -> Result<SuperModule> {
    match path {
        Some(p) => module_from_json(g, &read(p)?),
        None => Ok(SuperModule::trivial(g.clone())),
    }
}

fn load_points(g: &LieSuperAlgebra, path: Option<&Path>) -> Result<Option<Vec<OddPoint>>> {
    path.map(|p| parse_points(g, &read(p)?)).transpose()
}

fn load_gens(m: &SuperModule, path: Option<&Path>) -> Result<Vec<Vec<u32>>> {
    match path {
        Some(p) => vectors_from_json(&read(p)?, m.field(), m.dim()),
        None => Ok((0..m.dim())
            .map(|i| {
                let mut v = vec![0; m.dim()];
                v[i] = 1;
                v
            })
            .collect()),
    }
}

fn budget_json(b: &Budget) -> Value {
    json!({"points": b.points, "cochains": b.cochains})
}

fn with_version(mut v: Value) -> Value {
    let obj = v.as_object_mut().expect("report object");
    let mut out = serde_json::Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.append(obj);
    Value::Object(out)
}

pub fn run(cmd: Command) -> Result<Outcome> {
    let budget = Budget::from_env()?;
    let out = match cmd {
        Command::Validate { alg, module } => {
            let g = load_algebra(&alg.algebra)?;
            let ar = validate_algebra(&g);
            let mut passed = ar.is_valid();
            let mut report = json!({
                "algebra": {
                    "dims": [g.dims().0, g.dims().1],
                    "valid": ar.is_valid(),
                    "violations": ar.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }
            });
            if let Some(path) = module {
                let m = load_module(&g, Some(&path))?;
                let mr = validate_module(&m);
                passed &= mr.is_valid();
                report["module"] = json!({
                    "dims": [m.dims().0, m.dims().1],
                    "valid": mr.is_valid(),
                    "violations": mr.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                });
            }
            Outcome {
                report: with_version(report),
                passed,
            }
        }
        Command::MakeGl { m, n, p, natural } => {
            let g = Arc::new(make_gl(m, n, p)?);
            let report = if natural {
                module_to_json(&natural_module(&g)?)
            } else {
                algebra_to_json(&g)
            };
            return ok(report);
        }
        Command::Nullcone { alg, points, ideal } => {
            let g = load_algebra(&alg.algebra)?;
            let (points, ideal) = if points || ideal { (points, ideal) } else { (true, true) };
            let mut report = json!({"odd_dim": g.odd_indices().len()});
            if ideal {
                let forms: Vec<String> =
                    nullcone_ideal(&g).forms.iter().map(ToString::to_string).collect();
                report["ideal"] = json!(forms);
            }
            if points {
                let pts = nullcone_points(&g, &budget)?;
                report["count"] = json!(pts.len());
                report["points"] = points_json(&pts);
            }
            report["budget"] = budget_json(&budget);
            with_version(report).into()
        }
        Command::RankVariety {
            alg,
            module,
            point_file,
        } => {
            let g = load_algebra(&alg.algebra)?;
            let m = load_module(&g, module.as_deref())?;
            let supplied = load_points(&g, point_file.as_deref())?;
            let pts = rank_variety_points(&m, supplied.as_deref(), &budget)?;
            let trivial = pts.iter().all(OddPoint::is_zero);
            with_version(json!({
                "verdict": if trivial { "rank variety is {0}" } else { "rank variety has nonzero points" },
                "witnesses": points_json(&pts.iter().filter(|x| !x.is_zero()).take(1).cloned().collect::<Vec<_>>()),
                "sets": {"rank_variety": points_json(&pts)},
                "count": pts.len(),
                "budget": budget_json(&budget),
            }))
            .into()
        }
        Command::FreeTest { alg, module, point } => {
            let g = load_algebra(&alg.algebra)?;
            let m = load_module(&g, module.as_deref())?;
            let x = parse_point(g.field(), g.odd_indices().len(), &point)?;
            let t = free_test(&m, &x)?;
            let verified = match &t.certificate {
                Some(b) => Some(verify_certificate(&m, &x, b)?),
                None => None,
            };
            with_version(json!({
                "point": point_json(&x),
                "is_free": t.is_free,
                "rank": t.rank,
                "certificate": t.certificate,
                "certificate_verified": verified,
            }))
            .into()
        }
        Command::Cohomology {
            alg,
            max_degree,
            module,
            module2,
        } => {
            let g = load_algebra(&alg.algebra)?;
            let m = load_module(&g, module.as_deref())?;
            let n = match module2 {
                Some(p) => load_module(&g, Some(&p))?,
                None => m.clone(),
            };
            let c = build_complex(&m, &n, max_degree as usize, &budget)?;
            let cochain_dims: Vec<usize> = (0..max_degree as usize).map(|k| c.dim(k)).collect();
            with_version(json!({
                "max_degree": max_degree,
                "dims": c.cohomology_dims(),
                "cochain_dims": cochain_dims,
            }))
            .into()
        }
        Command::PhiProbe {
            alg,
            module,
            poly,
            lmax,
        } => {
            let g = load_algebra(&alg.algebra)?;
            let m = load_module(&g, module.as_deref())?;
            let f = OddPolynomial::parse(&g, &poly)?;
            let r = annihilator_probe(&m, &f, lmax as usize, &budget)?;
            let steps: Vec<Value> = r
                .steps
                .iter()
                .map(|s| json!({"power": s.power, "degree": s.degree, "vanishes": s.vanishes}))
                .collect();
            with_version(json!({
                "poly": f.to_string(),
                "lmax": lmax,
                "first_vanishing_power": r.first,
                "steps": steps,
            }))
            .into()
        }
        Command::E1Check {
            alg,
            module,
            module2,
            gens,
            gens2,
            max_degree,
        } => {
            let g = load_algebra(&alg.algebra)?;
            let m = load_module(&g, module.as_deref())?;
            let n = match module2 {
                Some(p) => load_module(&g, Some(&p))?,
                None => m.clone(),
            };
            let sm = load_gens(&m, gens.as_deref())?;
            let sn = match gens2 {
                Some(p) => load_gens(&n, Some(&p))?,
                None if m == n => sm.clone(),
                None => load_gens(&n, None)?,
            };
            let r = e1_dominance_check(&m, &n, &sm, &sn, max_degree as usize, &budget)?;
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|row| {
                    json!({"n": row.n, "ext_dim": row.ext_dim, "e1_total": row.e1_total, "holds": row.holds})
                })
                .collect();
            let e1: Vec<Value> = r
                .e1
                .iter()
                .map(|d| json!({"n": d.n, "internal": d.internal, "dim": d.dim}))
                .collect();
            Outcome {
                passed: r.holds(),
                report: with_version(json!({"holds": r.holds(), "rows": rows, "e1": e1})),
            }
        }
        Command::SupportProbe {
            alg,
            module,
            window,
            point_file,
        } => {
            let g = load_algebra(&alg.algebra)?;
            let m = load_module(&g, module.as_deref())?;
            let supplied = load_points(&g, point_file.as_deref())?;
            let r = support_zero_probe(
                &m,
                window.window_start as usize,
                window.window_len as usize,
                supplied.as_deref(),
                &budget,
            )?;
            let witnesses = match &r.witness {
                Some(w) => json!([{
                    "point": point_json(&w.point),
                    "form": w.form.to_string(),
                    "steps": w.steps.iter().map(|s| json!({"power": s.power, "degree": s.degree, "vanishes": s.vanishes})).collect::<Vec<_>>(),
                }]),
                None => json!([]),
            };
            with_version(json!({
                "verdict": r.verdict.as_str(),
                "window": r.window.map(|(i0, len)| json!({"start": i0, "len": len})),
                "ext_dims": r.ext_dims,
                "witnesses": witnesses,
                "sets": {"rank_variety": points_json(&r.rank_variety)},
                "budget": budget_json(&budget),
            }))
            .into()
        }
        Command::TensorCheck {
            alg,
            module,
            module2,
            point_file,
        } => {
            let g = load_algebra(&alg.algebra)?;
            let m = load_module(&g, module.as_deref())?;
            let n = load_module(&g, module2.as_deref())?;
            let supplied = load_points(&g, point_file.as_deref())?;
            let r = tensor_property_check(&m, &n, supplied.as_deref(), &budget)?;
            Outcome {
                passed: r.holds,
                report: with_version(json!({
                    "verdict": if r.holds { "X(M ⊗ N) = X(M) ∩ X(N) on F_p-points" } else { "tensor product property fails" },
                    "witnesses": points_json(&r.counterexamples),
                    "sets": {
                        "M": points_json(&r.points_m),
                        "N": points_json(&r.points_n),
                        "tensor": points_json(&r.points_tensor),
                        "intersection": points_json(&r.intersection),
                    },
                    "budget": budget_json(&budget),
                })),
            }
        }
        Command::GlobalDimProbe { alg, window } => {
            let g = load_algebra(&alg.algebra)?;
            let r = global_dim_probe(
                &g,
                window.window_start as usize,
                window.window_len as usize,
                &budget,
            )?;
            let witnesses: Vec<Value> = r.witness.iter().map(point_json).collect();
            with_version(json!({
                "verdict": r.verdict.as_str(),
                "witnesses": witnesses,
                "certificate": r.certificate,
                "window": r.support.as_ref().and_then(|s| s.window).map(|(i0, len)| json!({"start": i0, "len": len})),
                "sets": {"nullcone": points_json(&r.nullcone)},
                "budget": budget_json(&budget),
            }))
            .into()
        }
        Command::OrbitRep { m, n, r, s } => {
            let x = gl_orbit_rep(m, n, r, s)?;
            with_version(json!({"m": m, "n": n, "r": r, "s": s, "point": point_json(&x)})).into()
        }
        Command::AssocGraded { alg, module, gens } => {
            let g = load_algebra(&alg.algebra)?;
            let tilde = Arc::new(clifford_assoc_graded(&g));
            let mut report = json!({"algebra": algebra_to_json(&tilde)});
            if let Some(path) = module {
                let m = load_module(&g, Some(&path))?;
                let s = load_gens(&m, gens.as_deref())?;
                let filt = standard_filtration(&m, &s)?;
                let gm = assoc_graded_module(&tilde, &m, &filt)?;
                report["layer_dims"] = json!(filt.layer_dims());
                report["module"] = graded_module_to_json(&gm);
            }
            with_version(report).into()
        }
    };
    Ok(out)
}

impl From<Value> for Outcome {
    fn from(report: Value) -> Self {
        Self {
            report,
            passed: true,
        }
    }
}
