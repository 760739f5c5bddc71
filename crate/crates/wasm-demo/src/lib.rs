//! Browser bindings for the interactive demo page.
//!
//! Three operations back the single-page demo in `www/`: kernel curves,
//! witness panels (curve + alternation points + certified bounds), and
//! bound sweeps over n. Each returns a JSON string so the page stays
//! framework-free. The computation lives in [`ops`] with plain string
//! errors; the exported shims only translate errors into `JsValue` at the
//! boundary (constructing one aborts on non-wasm targets).

use wasm_bindgen::prelude::*;

pub mod ops {
    use std::f64::consts::PI;
    use trigapprox::{
        build_witness, conjugate_exponent, cos_pnorm, verify_point, BetaSequence, KernelSpec,
        PsiSequence, VerifyOptions, WitnessSpec,
    };

    type OpResult<T> = Result<T, String>;

    fn msg(e: impl std::fmt::Display) -> String {
        e.to_string()
    }

    pub fn parse_p(s: &str) -> OpResult<f64> {
        if s.eq_ignore_ascii_case("inf") {
            return Ok(f64::INFINITY);
        }
        let p: f64 = s.parse().map_err(|_| format!("bad p `{s}`"))?;
        if !(p >= 1.0) {
            return Err("p must be in [1, inf]".into());
        }
        Ok(p)
    }

    /// Kernel samples over [0, 2π): `{"t":[...],"v":[...],"terms":N}`.
    pub fn kernel_curve(psi: &str, beta: &str, points: usize, tail_eps: f64) -> OpResult<String> {
        let psi = PsiSequence::parse(psi).map_err(msg)?;
        let beta = BetaSequence::parse(beta).map_err(msg)?;
        let spec = KernelSpec::new(psi, beta, tail_eps).map_err(msg)?;
        let terms = spec.truncation_order().map_err(msg)?;
        let points = points.clamp(16, 8192);
        let mut t = Vec::with_capacity(points);
        let mut v = Vec::with_capacity(points);
        for j in 0..points {
            let x = 2.0 * PI * j as f64 / points as f64;
            t.push(x);
            v.push(spec.eval(x).map_err(msg)?);
        }
        Ok(serde_json::json!({ "t": t, "v": v, "terms": terms }).to_string())
    }

    /// Witness curve, alternation points, and the certified bound sandwich.
    pub fn witness_panel(
        n: usize,
        p: &str,
        psi: &str,
        beta: &str,
        points: usize,
    ) -> OpResult<String> {
        let p = parse_p(p)?;
        let psi = PsiSequence::parse(psi).map_err(msg)?;
        let beta = BetaSequence::parse(beta).map_err(msg)?;

        let spec = WitnessSpec::new(n, p, None, psi.clone(), beta.clone()).map_err(msg)?;
        let witness = build_witness(&spec).map_err(msg)?;
        let report =
            verify_point(n, p, &psi, &beta, None, &VerifyOptions::default()).map_err(msg)?;
        if let trigapprox::ReportStatus::Skipped(reason) = &report.status {
            return Err(reason.clone());
        }

        let points = points.clamp(64, 8192);
        let mut t = Vec::with_capacity(points);
        let mut f = Vec::with_capacity(points);
        for j in 0..points {
            let x = 2.0 * PI * j as f64 / points as f64;
            t.push(x);
            f.push(witness.f.eval(x));
        }
        Ok(serde_json::json!({
            "t": t,
            "f": f,
            "alt_x": witness.points,
            "alt_f": witness.values_at_points(),
            "lower": report.lower,
            "en": report.witness_value,
            "upper": report.upper,
            "certified": report.certified,
            "ratio": report.ratio,
            "tau": report.tau,
            "delta": report.delta,
            "status": report.status.label(),
        })
        .to_string())
    }

    /// Bound sandwich over an n range. With `couple_r` set, a power-law
    /// exponent follows r = n + offset, the offset read from the
    /// descriptor's r value.
    pub fn bounds_sweep(
        psi: &str,
        beta: &str,
        p: &str,
        n_lo: usize,
        n_hi: usize,
        couple_r: bool,
    ) -> OpResult<String> {
        let p = parse_p(p)?;
        let base = PsiSequence::parse(psi).map_err(msg)?;
        let beta = BetaSequence::parse(beta).map_err(msg)?;
        if n_lo < 1 || n_hi < n_lo || n_hi - n_lo > 16 {
            return Err("need 1 <= n_lo <= n_hi with at most 17 points".into());
        }
        let mut rows = Vec::new();
        for n in n_lo..=n_hi {
            let psi_n = match (&base, couple_r) {
                (PsiSequence::PowerLaw { r }, true) => {
                    PsiSequence::power_law(n as f64 + r).map_err(msg)?
                }
                _ => base.clone(),
            };
            let report =
                verify_point(n, p, &psi_n, &beta, None, &VerifyOptions::default()).map_err(msg)?;
            rows.push(serde_json::json!({
                "n": n,
                "psi": report.psi,
                "lower": report.lower,
                "en": report.witness_value,
                "upper": report.upper,
                "tau": report.tau,
                "status": report.status.label(),
                "reason": report.status.reason(),
            }));
        }
        Ok(serde_json::json!({ "rows": rows }).to_string())
    }

    /// The constant ‖cos‖_{p'}/π used by every bound.
    pub fn cos_norm_over_pi(p: &str) -> OpResult<f64> {
        let p = parse_p(p)?;
        let c = cos_pnorm(conjugate_exponent(p).map_err(msg)?).map_err(msg)?;
        Ok(c / PI)
    }
}

fn boundary(e: String) -> JsValue {
    JsValue::from_str(&e)
}

#[wasm_bindgen]
pub fn kernel_curve(psi: &str, beta: &str, points: usize, tail_eps: f64) -> Result<String, JsValue> {
    ops::kernel_curve(psi, beta, points, tail_eps).map_err(boundary)
}

#[wasm_bindgen]
pub fn witness_panel(
    n: usize,
    p: &str,
    psi: &str,
    beta: &str,
    points: usize,
) -> Result<String, JsValue> {
    ops::witness_panel(n, p, psi, beta, points).map_err(boundary)
}

#[wasm_bindgen]
pub fn bounds_sweep(
    psi: &str,
    beta: &str,
    p: &str,
    n_lo: usize,
    n_hi: usize,
    couple_r: bool,
) -> Result<String, JsValue> {
    ops::bounds_sweep(psi, beta, p, n_lo, n_hi, couple_r).map_err(boundary)
}

#[wasm_bindgen]
pub fn cos_norm_over_pi(p: &str) -> Result<f64, JsValue> {
    ops::cos_norm_over_pi(p).map_err(boundary)
}

#[cfg(test)]
mod tests {
    use super::ops;

    #[test]
    fn kernel_curve_json_shape() {
        let out = ops::kernel_curve("exp:alpha=1,r=1", "const:0", 32, 1e-9).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["t"].as_array().unwrap().len(), 32);
        assert_eq!(v["v"].as_array().unwrap().len(), 32);
        // Σ e^{-k} at t = 0
        let first = v["v"][0].as_f64().unwrap();
        assert!((first - 1.0 / (1.0f64.exp() - 1.0)).abs() < 1e-8);
    }

    #[test]
    fn witness_panel_reports_sandwich() {
        let out = ops::witness_panel(2, "2", "power:r=4", "const:0", 64).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let lower = v["lower"].as_f64().unwrap();
        let en = v["en"].as_f64().unwrap();
        let upper = v["upper"].as_f64().unwrap();
        assert!(lower < en && en < upper);
        assert_eq!(v["certified"], serde_json::Value::Bool(true));
        assert_eq!(v["alt_x"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn bounds_sweep_couples_exponent() {
        let out = ops::bounds_sweep("power:r=2", "const:0", "inf", 2, 4, true).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0]["psi"], "power:r=4");
        assert_eq!(rows[2]["psi"], "power:r=6");
        for row in rows {
            assert_eq!(row["status"], "ok");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ops::kernel_curve("power:r=0.5", "const:0", 32, 1e-9).is_err());
        assert!(ops::witness_panel(2, "0.3", "power:r=4", "const:0", 64).is_err());
    }
}
