//! Browser bindings for the interactive demo page in `www/`.
//!
//! Each export returns a JSON string; the plain functions behind them are
//! ordinary Rust and are tested natively.

use lplab::constants;
use lplab::criteria::{self, DEFAULT_GRID};
use lplab::zerocount;
use lplab::SeriesFamily;
use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

pub const MAX_CURVE_POINTS: usize = 4000;
pub const MAX_SCAN_STEPS: usize = 400;

#[derive(Debug, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub value: f64,
    pub error_bound: f64,
}

#[derive(Debug, Serialize)]
pub struct SignCurve {
    pub family: &'static str,
    pub a: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub points: Vec<CurvePoint>,
    pub verdict: criteria::Verdict,
    pub witness_x: Option<f64>,
    pub witness_value: Option<f64>,
    pub error_bound: f64,
}

/// `f(−x)` on the interval where the sign test looks for a non-positive
/// minimum: `(a+1, a²+1)` for `eulerF`, `(a, a³)` for `theta`.
pub fn sign_curve(family: &str, a: f64, points: usize) -> Result<SignCurve, String> {
    if !(2..=MAX_CURVE_POINTS).contains(&points) {
        return Err(format!("points must be in 2..={MAX_CURVE_POINTS}"));
    }
    let (f, lo, hi, report) = match family {
        "eulerF" => (
            SeriesFamily::euler_f(a),
            a + 1.0,
            a * a + 1.0,
            criteria::sign_test_fa(a, DEFAULT_GRID, 0.0),
        ),
        "theta" => (
            SeriesFamily::partial_theta(a),
            a,
            a * a * a,
            criteria::sign_test_theta(a, None, DEFAULT_GRID, 0.0),
        ),
        other => return Err(format!("unknown family `{other}`; use eulerF or theta")),
    };
    let f = f.map_err(|e| e.to_string())?.alternating();
    let report = report.map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(points);
    for i in 0..points {
        let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let r = f.evaluate(Complex64::new(x, 0.0), 1e-15).map_err(|e| e.to_string())?;
        out.push(CurvePoint {
            x,
            value: r.value.re,
            error_bound: r.abs_error_bound,
        });
    }
    Ok(SignCurve {
        family: if family == "eulerF" { "eulerF" } else { "theta" },
        a,
        x_lo: lo,
        x_hi: hi,
        points: out,
        verdict: report.verdict,
        witness_x: report.witness_x,
        witness_value: report.witness_value,
        error_bound: report.error_bound,
    })
}

#[derive(Debug, Serialize)]
pub struct ZeroCount {
    pub a: f64,
    pub j: usize,
    pub radius_u: f64,
    pub radius_z: f64,
    pub count: usize,
    pub certified: bool,
    pub samples_used: usize,
    pub section_count: usize,
}

/// Zeros of `F_a(−z)` inside `|z/(a+1)| < ρ_j`, by winding number and by
/// the degree-`j+8` section.
pub fn zero_count(a: f64, j: usize) -> Result<ZeroCount, String> {
    let f = SeriesFamily::euler_f(a).map_err(|e| e.to_string())?.alternating();
    let r = zerocount::rho_radius(&f, j).map_err(|e| e.to_string())?;
    let w = zerocount::count_zeros_in_disk(&f, r, 256).map_err(|e| e.to_string())?;
    let section_count = zerocount::section_roots_inside(&f, j + 8, w.radius).map_err(|e| e.to_string())?;
    Ok(ZeroCount {
        a,
        j,
        radius_u: w.radius,
        radius_z: w.radius * f.normalizing_scale(),
        count: w.count,
        certified: w.certified,
        samples_used: w.samples_used,
        section_count,
    })
}

pub fn scan(a_lo: f64, a_hi: f64, steps: usize) -> Result<constants::ConjectureScan, String> {
    if steps > MAX_SCAN_STEPS {
        return Err(format!("steps must be at most {MAX_SCAN_STEPS}"));
    }
    constants::conjecture_scan(a_lo, a_hi, steps).map_err(|e| e.to_string())
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = signCurve)]
pub fn sign_curve_js(family: &str, a: f64, points: usize) -> Result<String, JsValue> {
    to_js(sign_curve(family, a, points))
}

#[wasm_bindgen(js_name = zeroCount)]
pub fn zero_count_js(a: f64, j: usize) -> Result<String, JsValue> {
    to_js(zero_count(a, j))
}

#[wasm_bindgen(js_name = conjectureScan)]
pub fn conjecture_scan_js(a_lo: f64, a_hi: f64, steps: usize) -> Result<String, JsValue> {
    to_js(scan(a_lo, a_hi, steps))
}

#[wasm_bindgen]
pub fn version() -> String {
    lplab::VERSION.to_string()
}
