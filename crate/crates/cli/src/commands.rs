use lplab::constants::{self, precise};
use lplab::criteria::{self, CriterionReport};
use lplab::verify::{self, LemmaCheckResult};
use lplab::{zerocount, EvalResult, SeriesFamily};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::args::{Command, ConstantName, Grid, Lemma, Radius, SignFamily};
use crate::output::{bounds, num, opt, value, Table};

pub struct Outcome {
    pub result: Value,
    pub error_bounds: Value,
    pub table: Option<Table>,
}

impl Outcome {
    fn new(result: Value, error_bounds: Value) -> Self {
        Outcome {
            result,
            error_bounds,
            table: None,
        }
    }

    fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

pub fn default_grid(lemma: Lemma) -> Option<Grid> {
    let (lo, hi, steps) = match lemma {
        Lemma::Two => (3.57, 4.64, 20),
        Lemma::Rouche => (3.17, 6.0, 40),
        Lemma::Three => (3.57, 6.0, 20),
        Lemma::Six => (3.0, 6.0, 12),
        Lemma::Positivity => (1.5, 6.0, 10),
        Lemma::FourAlgebra => return None,
    };
    Some(Grid { lo, hi, steps })
}

const LEMMA3_J: (usize, usize) = (4, 40);
const LEMMA6_K_MAX: usize = 20;
const POSITIVITY_N: std::ops::RangeInclusive<usize> = 2..=12;
const LEMMA4_SAMPLES: usize = 200;

fn point(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// The effective inputs, defaults included.
pub fn inputs(cmd: &Command) -> Value {
    match cmd {
        Command::Eval { family, a, z, tol } => json!({ "family": family, "a": a, "z": point(z.0), "tol": tol }),
        Command::Section { family, a, n, z } => json!({ "family": family, "a": a, "n": n, "z": point(z.0) }),
        Command::Quotients { family, a, n_max } => json!({ "family": family, "a": a, "n_max": n_max }),
        Command::Classify { a, tol } => json!({ "a": a, "tol": tol.unwrap_or(0.0) }),
        Command::SignTest { family, a, n, grid } => json!({ "family": family, "a": a, "n": n, "grid": grid }),
        Command::Zeros { a, radius, samples } => {
            let radius = match radius {
                Radius::Rho(j) => json!(format!("rho:{j}")),
                Radius::Value(r) => json!(r),
            };
            json!({ "a": a, "radius": radius, "samples": samples })
        }
        Command::Constants { name, n, tol } => json!({ "name": name, "n": n, "tol": tol }),
        Command::Verify { lemma, a_grid, seed } => {
            let grid = a_grid.or(default_grid(*lemma));
            let mut v = json!({ "lemma": lemma });
            match grid {
                Some(g) => v["a_grid"] = json!({ "lo": g.lo, "hi": g.hi, "steps": g.steps }),
                None => {
                    v["seed"] = json!(seed);
                    v["samples"] = json!(LEMMA4_SAMPLES);
                }
            }
            v
        }
        Command::ScanConjecture { a_lo, a_hi, steps } => json!({ "a_lo": a_lo, "a_hi": a_hi, "steps": steps }),
    }
}

pub fn run(cmd: &Command) -> lplab::Result<Outcome> {
    match *cmd {
        Command::Eval { family, a, z, tol } => {
            let f = SeriesFamily::new(family.kind(), a)?;
            Ok(eval_outcome(f.evaluate(z.0, tol)?))
        }
        Command::Section { family, a, n, z } => {
            let f = SeriesFamily::new(family.kind(), a)?;
            Ok(eval_outcome(f.section_eval(n, z.0)))
        }
        Command::Quotients { family, a, n_max } => quotients(SeriesFamily::new(family.kind(), a)?, n_max),
        Command::Classify { a, tol } => Ok(report(criteria::classify_fa_with_tol(a, tol.unwrap_or(0.0))?)),
        Command::SignTest { family, a, n, grid } => {
            let r = match family {
                SignFamily::EulerF => criteria::sign_test_fa(a, grid, 0.0)?,
                SignFamily::Theta => criteria::sign_test_theta(a, n, grid, 0.0)?,
            };
            Ok(report(r))
        }
        Command::Zeros { a, radius, samples } => zeros(a, radius, samples),
        Command::Constants { name, n, tol } => constant(name, n, tol),
        Command::Verify { lemma, a_grid, seed } => verify(lemma, a_grid.or(default_grid(lemma)), seed),
        Command::ScanConjecture { a_lo, a_hi, steps } => scan(a_lo, a_hi, steps),
    }
}

fn eval_outcome(r: EvalResult) -> Outcome {
    Outcome::new(
        json!({ "value": r.value.re, "value_im": r.value.im, "terms_used": r.terms_used }),
        bounds(&[("abs_error_bound", r.abs_error_bound)]),
    )
}

fn report(r: CriterionReport) -> Outcome {
    let eb = bounds(&[("error_bound", r.error_bound)]);
    Outcome::new(value(&r), eb)
}

fn quotients(f: SeriesFamily, n_max: usize) -> lplab::Result<Outcome> {
    if n_max < 2 {
        return Err(lplab::Error::Domain(format!("--n-max must be at least 2, got {n_max}")));
    }
    let view = f.quotients()?;
    let mut rows = Vec::with_capacity(n_max);
    let mut table = Table {
        headers: vec!["n", "p_n", "q_n", "q_error_bound"],
        rows: Vec::new(),
    };
    let mut worst = 0.0f64;
    for n in 1..=n_max {
        let p = view.p(n);
        let (q, e) = if n >= 2 {
            let (q, e) = view.q_with_error(n);
            (Some(q), Some(e))
        } else {
            (None, None)
        };
        worst = worst.max(e.unwrap_or(0.0));
        rows.push(json!({ "n": n, "p_n": p, "q_n": q, "q_error_bound": e }));
        table.rows.push(vec![n.to_string(), num(p), opt(q), opt(e)]);
    }
    let result = json!({ "limit": view.limit, "monotonicity": view.monotonicity, "rows": rows });
    Ok(Outcome::new(result, bounds(&[("max_q_error_bound", worst)])).with_table(table))
}

fn zeros(a: f64, radius: Radius, samples: usize) -> lplab::Result<Outcome> {
    let f = SeriesFamily::euler_f(a)?.alternating();
    let (r, j) = match radius {
        Radius::Rho(j) => (zerocount::rho_radius(&f, j)?, Some(j)),
        Radius::Value(r) => (r, None),
    };
    let w = zerocount::count_zeros_in_disk(&f, r, samples)?;
    let result = json!({
        "rho_index": j,
        "radius_u": w.radius,
        "radius_z": w.radius * f.normalizing_scale(),
        "count": w.count,
        "certified": w.certified,
        "samples_used": w.samples_used,
        "min_modulus_seen": w.min_modulus_seen,
    });
    Ok(Outcome::new(
        result,
        bounds(&[("max_error_bound", w.max_error_bound), ("winding_residual", w.residual)]),
    ))
}

fn constant(name: ConstantName, n: Option<usize>, tol: f64) -> lplab::Result<Outcome> {
    match name {
        ConstantName::QInfinity => {
            let b = constants::q_infinity(tol)?;
            let eb = bounds(&[("bracket_width", b.width())]);
            Ok(Outcome::new(
                json!({ "bracket": value(&b), "midpoint": b.midpoint() }),
                eb,
            ))
        }
        ConstantName::CN => {
            let n = n.unwrap_or_default();
            let b = constants::c_n(n, tol)?;
            let p = precise::c_n_precise(n)?;
            let result = json!({
                "n": n,
                "bracket": value(&b),
                "midpoint": b.midpoint(),
                "precise": value(&p),
            });
            let eb = bounds(&[("bracket_width", b.width()), ("precise_radius", p.radius)]);
            Ok(Outcome::new(result, eb))
        }
        ConstantName::CriticalA => {
            let e = constants::critical_a(tol)?;
            let eb = bounds(&[("bracket_width", e.bracket.width())]);
            Ok(Outcome::new(
                json!({ "estimate": value(&e), "midpoint": e.bracket.midpoint() }),
                eb,
            ))
        }
        ConstantName::Thresholds => {
            let rows = constants::thresholds()?;
            let worst = rows.iter().filter_map(|r| r.deviation).fold(0.0, f64::max);
            let table = Table {
                headers: vec![
                    "name",
                    "root",
                    "reference",
                    "deviation",
                    "check",
                    "passes",
                    "polynomial",
                ],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.name.clone(),
                            num(r.root),
                            opt(r.reference),
                            opt(r.deviation),
                            r.check.clone(),
                            r.passes.map(|p| p.to_string()).unwrap_or_default(),
                            r.polynomial.clone(),
                        ]
                    })
                    .collect(),
            };
            let eb = bounds(&[("max_deviation", worst)]);
            Ok(Outcome::new(json!({ "rows": value(&rows) }), eb).with_table(table))
        }
    }
}

fn verify(lemma: Lemma, grid: Option<Grid>, seed: u64) -> lplab::Result<Outcome> {
    let a = grid
        .map(|g| verify::linear_grid(g.lo, g.hi, g.steps))
        .unwrap_or_default();
    let r = match lemma {
        Lemma::Two => verify::check_lemma2(&a)?,
        Lemma::Rouche => verify::check_rouche_gap(&a)?,
        Lemma::Three => verify::check_lemma3_grid(&a, LEMMA3_J)?,
        Lemma::Six => verify::check_lemma6(&a, LEMMA6_K_MAX)?,
        Lemma::Positivity => verify::check_positivity_interval(&a, &POSITIVITY_N.collect::<Vec<_>>())?,
        Lemma::FourAlgebra => verify::check_lemma4_algebra(LEMMA4_SAMPLES, seed)?,
    };
    Ok(check_outcome(r))
}

fn check_outcome(r: LemmaCheckResult) -> Outcome {
    let worst_err = r.points.iter().map(|p| p.error_bound).fold(0.0, f64::max);
    let table = Table {
        headers: vec!["check", "params", "lhs", "rhs", "error_bound", "margin", "passed"],
        rows: r
            .points
            .iter()
            .map(|p| {
                let params: Vec<String> = p.params.iter().map(|(k, v)| format!("{k}={}", param(*v))).collect();
                vec![
                    p.check.clone(),
                    params.join(";"),
                    num(p.lhs),
                    num(p.rhs),
                    num(p.error_bound),
                    num(p.margin),
                    (p.margin >= 0.0).to_string(),
                ]
            })
            .collect(),
    };
    let mut result = value(&r);
    result["passed"] = json!(r.passed());
    let eb = json!({ "max_error_bound": worst_err, "worst_margin": r.worst_margin });
    Outcome::new(result, eb).with_table(table)
}

fn param(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        num(x)
    }
}

fn scan(a_lo: f64, a_hi: f64, steps: usize) -> lplab::Result<Outcome> {
    let s = constants::conjecture_scan(a_lo, a_hi, steps)?;
    let table = Table {
        headers: vec!["a", "min_value", "verdict"],
        rows: s
            .rows
            .iter()
            .map(|r| vec![num(r.a), num(r.min_value), format!("{:?}", r.verdict)])
            .collect(),
    };
    let eb = json!({ "grid_spacing": (a_hi - a_lo) / (steps.max(2) - 1) as f64 });
    Ok(Outcome::new(value(&s), eb).with_table(table))
}
