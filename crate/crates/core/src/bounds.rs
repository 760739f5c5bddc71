//! Two-sided estimates for the best uniform approximation of convolution
//! classes, their explicit family forms, reference asymptotic terms, and
//! an end-to-end verification pipeline producing [`BoundsReport`]s.

use crate::best_approx::{remez_trig_from, DEFAULT_REMEZ_MAX_ITER, DEFAULT_REMEZ_TOL};
use crate::error::{Error, Result};
use crate::extremal::{build_witness, spike_factor, vallee_poussin_lower, WitnessSpec};
use crate::norms::{conjugate_exponent, cos_pnorm};
use crate::series::{hypothesis_check, BetaSequence, Condition, PsiSequence};
pub use crate::special::elliptic_k;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Margin slack used by the in-code sandwich assertions.
pub const SANDWICH_SLACK: f64 = 1e-12;

/// Tail tolerance scaled to the term it will be compared against.
fn tail_eps(psi_n: f64) -> f64 {
    (psi_n * 1e-8).clamp(1e-15, 1e-12)
}

fn checked_tail(psi: &PsiSequence, n: usize) -> Result<f64> {
    let psi_n = psi.value(n)?;
    psi.tail(n, tail_eps(psi_n))
}

fn require_decay(psi: &PsiSequence, n: usize) -> Result<f64> {
    let rep = hypothesis_check(psi, n, Condition::TailBelowTerm)?;
    if !rep.holds {
        return Err(Error::HypothesisViolated {
            condition: Condition::TailBelowTerm.name(),
            lhs: rep.lhs,
            rhs: rep.rhs,
        });
    }
    checked_tail(psi, n)
}

/// Constructive lower bound (‖cos‖_{p'}/π)(ψ(n) − Σ_{k>n}ψ(k)).
/// Requires the decay hypothesis; for p = 1 the constant is 1/π.
pub fn lower_bound(n: usize, p: f64, psi: &PsiSequence) -> Result<f64> {
    let tail = require_decay(psi, n)?;
    let c = cos_pnorm(conjugate_exponent(p)?)?;
    Ok(c / PI * (psi.value(n)? - tail))
}

/// Upper bound (‖cos‖_{p'}/π)·Σ_{k≥n}ψ(k), valid for the Fourier remainder
/// and hence for the best approximation.
pub fn upper_bound(n: usize, p: f64, psi: &PsiSequence) -> Result<f64> {
    let tail = checked_tail(psi, n)?;
    let c = cos_pnorm(conjugate_exponent(p)?)?;
    Ok(c / PI * (psi.value(n)? + tail))
}

/// The p = 1 witness-level lower bound at spike width δ:
/// (1/π)((2/δ)sin(δ/2)·ψ(n) − Σ_{k>n}ψ(k)). Increases to the p = 1 class
/// bound as δ → 0. Requires the spike sign condition.
pub fn p1_delta_lower(psi: &PsiSequence, n: usize, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < PI / 2.0) {
        return Err(Error::Domain(format!("delta must be in (0, pi/2), got {delta}")));
    }
    let tail = checked_tail(psi, n)?;
    let c = spike_factor(delta);
    let psi_n = psi.value(n)?;
    if c * psi_n <= tail {
        return Err(Error::HypothesisViolated {
            condition: "spike-sign",
            lhs: tail,
            rhs: c * psi_n,
        });
    }
    Ok((c * psi_n - tail) / PI)
}

/// Reference leading terms for the power-law family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceFormula {
    /// (4/π)·ln n / n^r, moderate smoothness, uniform-ball classes.
    KolmogorovLog,
    /// (8/π²)·K(e^{−r/n}) / n^r, r ≥ 1.
    StechkinElliptic,
    /// (4/π) / n^r, rapidly growing r.
    StechkinRapid,
    /// (‖cos‖_{p'}/π) / n^r for the L_p ball.
    LpLeading { p: f64 },
}

/// Evaluate a reference leading term. Remainder orders are documented by
/// the sources, not computed here.
pub fn reference_asymptotics(n: usize, r: f64, which: ReferenceFormula) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain("reference formulas need n >= 2".into()));
    }
    if !(r > 0.0) {
        return Err(Error::Domain("reference formulas need r > 0".into()));
    }
    let nf = n as f64;
    let scale = nf.powf(-r);
    match which {
        ReferenceFormula::KolmogorovLog => Ok(4.0 / PI * nf.ln() * scale),
        ReferenceFormula::StechkinElliptic => {
            if r < 1.0 {
                return Err(Error::Domain("elliptic reference needs r >= 1".into()));
            }
            Ok(8.0 / (PI * PI) * elliptic_k((-r / nf).exp())? * scale)
        }
        ReferenceFormula::StechkinRapid => Ok(4.0 / PI * scale),
        ReferenceFormula::LpLeading { p } => {
            Ok(cos_pnorm(conjugate_exponent(p)?)? / PI * scale)
        }
    }
}

/// How a verification point ended.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportStatus {
    Ok,
    /// Hypotheses failed; the bounds are not asserted for this point.
    Skipped(String),
    /// A certified invariant failed numerically.
    Failed(String),
}

impl ReportStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ReportStatus::Ok => "ok",
            ReportStatus::Skipped(_) => "skipped",
            ReportStatus::Failed(_) => "failed",
        }
    }

    pub fn reason(&self) -> &str {
        match self {
            ReportStatus::Ok => "",
            ReportStatus::Skipped(r) | ReportStatus::Failed(r) => r,
        }
    }
}

/// Flat verification record for one parameter point. Fields are `None`
/// when not applicable to the family or not reached before a skip.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub n: usize,
    pub p: f64,
    pub psi: String,
    pub beta: String,
    pub delta: Option<f64>,
    pub hyp_decay: Option<bool>,
    /// ψ(n+1)/ψ(n), the ratio diagnostic for the vanishing-ratio condition.
    pub hyp_ratio: Option<f64>,
    pub hyp_power_margin: Option<bool>,
    pub hyp_exp_margin: Option<bool>,
    pub lower: Option<f64>,
    pub witness_value: Option<f64>,
    pub upper: Option<f64>,
    pub vp_lower: Option<f64>,
    pub delta_lower: Option<f64>,
    /// witness_value · π / (‖cos‖_{p'} ψ(n)).
    pub ratio: Option<f64>,
    /// τ = Σ_{k>n}ψ(k) / ψ(n); the asymptotic-equality residual bracket.
    pub tau: Option<f64>,
    /// |ratio − 1|, reported and compared against τ, never against a
    /// guessed constant.
    pub residual: Option<f64>,
    /// Family-form bracket (power-law or exponential theorem display).
    pub explicit_lower: Option<f64>,
    pub explicit_upper: Option<f64>,
    /// Generic bounds lie inside the explicit family bracket.
    pub enclosure_ok: Option<bool>,
    pub tail_check_lhs: Option<f64>,
    pub tail_check_rhs: Option<f64>,
    pub tail_check_ok: Option<bool>,
    /// The family bracket width factor multiplying the main term.
    pub bracket_factor: Option<f64>,
    pub reference: BTreeMap<&'static str, f64>,
    pub certified: Option<bool>,
    pub alternation_ok: Option<bool>,
    pub sandwich_ok: Option<bool>,
    pub margin_lower: Option<f64>,
    pub margin_upper: Option<f64>,
    pub status: ReportStatus,
}

impl BoundsReport {
    /// An empty report carrying only the parameter point, for callers that
    /// need to record a refusal before any computation ran.
    pub fn for_params(n: usize, p: f64, psi: &PsiSequence, beta: &BetaSequence) -> Self {
        BoundsReport::new(n, p, psi, beta)
    }

    fn new(n: usize, p: f64, psi: &PsiSequence, beta: &BetaSequence) -> Self {
        BoundsReport {
            n,
            p,
            psi: psi.describe(),
            beta: beta.describe(),
            delta: None,
            hyp_decay: None,
            hyp_ratio: None,
            hyp_power_margin: None,
            hyp_exp_margin: None,
            lower: None,
            witness_value: None,
            upper: None,
            vp_lower: None,
            delta_lower: None,
            ratio: None,
            tau: None,
            residual: None,
            explicit_lower: None,
            explicit_upper: None,
            enclosure_ok: None,
            tail_check_lhs: None,
            tail_check_rhs: None,
            tail_check_ok: None,
            bracket_factor: None,
            reference: BTreeMap::new(),
            certified: None,
            alternation_ok: None,
            sandwich_ok: None,
            margin_lower: None,
            margin_upper: None,
            status: ReportStatus::Ok,
        }
    }

    /// Fixed column schema shared by the CSV and JSON-lines emitters.
    pub fn field_names() -> &'static [&'static str] {
        &[
            "n",
            "p",
            "psi",
            "beta",
            "delta",
            "hyp_decay",
            "hyp_ratio",
            "hyp_power_margin",
            "hyp_exp_margin",
            "lower",
            "witness_en",
            "upper",
            "vp_lower",
            "delta_lower",
            "ratio",
            "tau",
            "residual",
            "explicit_lower",
            "explicit_upper",
            "enclosure_ok",
            "tail_check_lhs",
            "tail_check_rhs",
            "tail_check_ok",
            "bracket_factor",
            "ref_kolmogorov_log",
            "ref_stechkin_elliptic",
            "ref_stechkin_rapid",
            "ref_lp_leading",
            "certified",
            "alternation_ok",
            "sandwich_ok",
            "margin_lower",
            "margin_upper",
            "status",
            "reason",
        ]
    }

    /// Flat key-value record; every value finite, refusals carried as a
    /// reason string, empty fields where a quantity is not applicable.
    pub fn to_fields(&self) -> Vec<(&'static str, String)> {
        fn num(x: Option<f64>) -> String {
            match x {
                Some(v) => {
                    debug_assert!(v.is_finite());
                    format!("{v}")
                }
                None => String::new(),
            }
        }
        fn boolean(x: Option<bool>) -> String {
            x.map(|b| b.to_string()).unwrap_or_default()
        }
        let p_str = if self.p.is_infinite() {
            "inf".to_string()
        } else {
            format!("{}", self.p)
        };
        vec![
            ("n", self.n.to_string()),
            ("p", p_str),
            ("psi", self.psi.clone()),
            ("beta", self.beta.clone()),
            ("delta", num(self.delta)),
            ("hyp_decay", boolean(self.hyp_decay)),
            ("hyp_ratio", num(self.hyp_ratio)),
            ("hyp_power_margin", boolean(self.hyp_power_margin)),
            ("hyp_exp_margin", boolean(self.hyp_exp_margin)),
            ("lower", num(self.lower)),
            ("witness_en", num(self.witness_value)),
            ("upper", num(self.upper)),
            ("vp_lower", num(self.vp_lower)),
            ("delta_lower", num(self.delta_lower)),
            ("ratio", num(self.ratio)),
            ("tau", num(self.tau)),
            ("residual", num(self.residual)),
            ("explicit_lower", num(self.explicit_lower)),
            ("explicit_upper", num(self.explicit_upper)),
            ("enclosure_ok", boolean(self.enclosure_ok)),
            ("tail_check_lhs", num(self.tail_check_lhs)),
            ("tail_check_rhs", num(self.tail_check_rhs)),
            ("tail_check_ok", boolean(self.tail_check_ok)),
            ("bracket_factor", num(self.bracket_factor)),
            ("ref_kolmogorov_log", num(self.reference.get("kolmogorov_log").copied())),
            (
                "ref_stechkin_elliptic",
                num(self.reference.get("stechkin_elliptic").copied()),
            ),
            (
                "ref_stechkin_rapid",
                num(self.reference.get("stechkin_rapid").copied()),
            ),
            ("ref_lp_leading", num(self.reference.get("lp_leading").copied())),
            ("certified", boolean(self.certified)),
            ("alternation_ok", boolean(self.alternation_ok)),
            ("sandwich_ok", boolean(self.sandwich_ok)),
            ("margin_lower", num(self.margin_lower)),
            ("margin_upper", num(self.margin_upper)),
            ("status", self.status.label().to_string()),
            ("reason", self.status.reason().to_string()),
        ]
    }
}

/// Explicit power-law bracket: main term (‖cos‖_{p'}/π)n^{−r} with width
/// factor (2 + 1/n)(1 + 1/n)^{−r}, enclosing the generic bounds whenever
/// the order and margin hypotheses hold.
pub fn weyl_nagy_report(n: usize, r: f64, p: f64) -> Result<BoundsReport> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let psi = PsiSequence::power_law(r)?;
    if r < (n + 1) as f64 {
        return Err(Error::HypothesisViolated {
            condition: "power-law-order (r >= n+1)",
            lhs: (n + 1) as f64,
            rhs: r,
        });
    }
    let margin = hypothesis_check(&psi, n, Condition::PowerLawMargin)?;
    if !margin.holds {
        return Err(Error::HypothesisViolated {
            condition: Condition::PowerLawMargin.name(),
            lhs: margin.lhs,
            rhs: margin.rhs,
        });
    }
    let beta = BetaSequence::Constant(0.0);
    let mut report = BoundsReport::new(n, p, &psi, &beta);
    report.beta = String::new();
    report.hyp_power_margin = Some(true);

    let nf = n as f64;
    let c = cos_pnorm(conjugate_exponent(p)?)?;
    let main = c / PI * nf.powf(-r);
    let factor = (2.0 + 1.0 / nf) * (1.0 + 1.0 / nf).powf(-r);
    report.bracket_factor = Some(factor);
    report.explicit_lower = Some(main * (1.0 - factor));
    report.explicit_upper = Some(main * (1.0 + factor));

    let decay = hypothesis_check(&psi, n, Condition::TailBelowTerm)?;
    report.hyp_decay = Some(decay.holds);
    let tail = checked_tail(&psi, n)?;
    report.lower = Some(lower_bound(n, p, &psi)?);
    report.upper = Some(upper_bound(n, p, &psi)?);
    report.tau = Some(tail / psi.value(n)?);

    // tail majorant: Σ_{k>n} k^{−r} < n^{−r}(1+1/n)^{−r}(2+1/n)
    let rhs = nf.powf(-r) * (1.0 + 1.0 / nf).powf(-r) * (2.0 + 1.0 / nf);
    report.tail_check_lhs = Some(tail);
    report.tail_check_rhs = Some(rhs);
    report.tail_check_ok = Some(tail < rhs);
    report.enclosure_ok = Some(
        report.explicit_lower.unwrap() <= report.lower.unwrap() + SANDWICH_SLACK
            && report.upper.unwrap() <= report.explicit_upper.unwrap() + SANDWICH_SLACK,
    );
    report.reference = power_law_references(n, r, p)?;
    if !(report.tail_check_ok.unwrap() && report.enclosure_ok.unwrap()) {
        report.status = ReportStatus::Failed("power-law bracket checks failed".into());
    }
    Ok(report)
}

/// Explicit exponential-family bracket: main term (‖cos‖_{p'}/π)e^{−αn^r}
/// with width factor (1 + 1/(αr n^{r−1}))e^{−αr n^{r−1}}.
pub fn exp_class_report(n: usize, alpha: f64, r: f64, p: f64) -> Result<BoundsReport> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    if !(r > 1.0) {
        return Err(Error::Domain("exponential bracket needs r > 1".into()));
    }
    let psi = PsiSequence::exp_power(alpha, r)?;
    let margin = hypothesis_check(&psi, n, Condition::ExpMargin)?;
    if !margin.holds {
        return Err(Error::HypothesisViolated {
            condition: Condition::ExpMargin.name(),
            lhs: margin.lhs,
            rhs: margin.rhs,
        });
    }
    let beta = BetaSequence::Constant(0.0);
    let mut report = BoundsReport::new(n, p, &psi, &beta);
    report.beta = String::new();
    report.hyp_exp_margin = Some(true);

    let nf = n as f64;
    let c = cos_pnorm(conjugate_exponent(p)?)?;
    let psi_n = psi.value(n)?;
    let main = c / PI * psi_n;
    let factor = margin.lhs; // (1 + 1/(αr n^{r−1})) e^{−αr n^{r−1}}
    report.bracket_factor = Some(factor);
    report.explicit_lower = Some(main * (1.0 - factor));
    report.explicit_upper = Some(main * (1.0 + factor));

    let decay = hypothesis_check(&psi, n, Condition::TailBelowTerm)?;
    report.hyp_decay = Some(decay.holds);
    let tail = checked_tail(&psi, n)?;
    report.lower = Some(lower_bound(n, p, &psi)?);
    report.upper = Some(upper_bound(n, p, &psi)?);
    report.tau = Some(tail / psi_n);

    // tail majorant: Σ_{k>n} e^{−αk^r} < e^{−αn^r}(1 + 1/(αrn^{r−1}))e^{−αrn^{r−1}}
    let e = alpha * r * nf.powf(r - 1.0);
    let rhs = psi_n * (1.0 + 1.0 / e) * (-e).exp();
    report.tail_check_lhs = Some(tail);
    report.tail_check_rhs = Some(rhs);
    report.tail_check_ok = Some(tail < rhs);
    report.enclosure_ok = Some(
        report.explicit_lower.unwrap() <= report.lower.unwrap() + SANDWICH_SLACK
            && report.upper.unwrap() <= report.explicit_upper.unwrap() + SANDWICH_SLACK,
    );
    if !(report.tail_check_ok.unwrap() && report.enclosure_ok.unwrap()) {
        report.status = ReportStatus::Failed("exponential bracket checks failed".into());
    }
    Ok(report)
}

fn power_law_references(
    n: usize,
    r: f64,
    p: f64,
) -> Result<BTreeMap<&'static str, f64>> {
    let mut map = BTreeMap::new();
    if n >= 2 {
        map.insert(
            "kolmogorov_log",
            reference_asymptotics(n, r, ReferenceFormula::KolmogorovLog)?,
        );
        if r >= 1.0 {
            map.insert(
                "stechkin_elliptic",
                reference_asymptotics(n, r, ReferenceFormula::StechkinElliptic)?,
            );
        }
        map.insert(
            "stechkin_rapid",
            reference_asymptotics(n, r, ReferenceFormula::StechkinRapid)?,
        );
        map.insert(
            "lp_leading",
            reference_asymptotics(n, r, ReferenceFormula::LpLeading { p })?,
        );
    }
    Ok(map)
}

/// Solver controls for [`verify_point`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub remez_tol: f64,
    pub remez_max_iter: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            remez_tol: DEFAULT_REMEZ_TOL,
            remez_max_iter: DEFAULT_REMEZ_MAX_ITER,
        }
    }
}

/// Full pipeline for one parameter point: hypothesis checks, generic
/// bounds, witness construction, alternation certificate, certified Remez
/// value, and the sandwich/ratio diagnostics.
///
/// Inadmissible points come back `Skipped` with the reason; certified
/// numeric failures come back `Failed`. Only configuration errors surface
/// as `Err`.
pub fn verify_point(
    n: usize,
    p: f64,
    psi: &PsiSequence,
    beta: &BetaSequence,
    delta: Option<f64>,
    opts: &VerifyOptions,
) -> Result<BoundsReport> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    conjugate_exponent(p)?;
    let mut report = BoundsReport::new(n, p, psi, beta);

    // hypothesis battery
    let decay = match hypothesis_check(psi, n, Condition::TailBelowTerm) {
        Ok(rep) => rep,
        Err(Error::DivergentSeries(msg)) => {
            report.hyp_decay = Some(false);
            report.status = ReportStatus::Skipped(format!("tail sum diverges: {msg}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.hyp_decay = Some(decay.holds);
    if let Ok(ratio) = hypothesis_check(psi, n, Condition::RatioDecay) {
        report.hyp_ratio = Some(ratio.lhs);
    }
    if let PsiSequence::PowerLaw { .. } = psi {
        if let Ok(rep) = hypothesis_check(psi, n, Condition::PowerLawMargin) {
            report.hyp_power_margin = Some(rep.holds);
        }
    }
    if let PsiSequence::ExpPower { r, .. } = psi {
        if *r > 1.0 {
            if let Ok(rep) = hypothesis_check(psi, n, Condition::ExpMargin) {
                report.hyp_exp_margin = Some(rep.holds);
            }
        }
    }
    if !decay.holds {
        report.status = ReportStatus::Skipped(
            "decay hypothesis violated: tail sum >= psi(n)".into(),
        );
        return Ok(report);
    }

    let psi_n = psi.value(n)?;
    if psi_n <= 0.0 {
        report.status = ReportStatus::Skipped("psi(n) = 0; bounds degenerate".into());
        return Ok(report);
    }
    let tail = checked_tail(psi, n)?;
    let p_prime = conjugate_exponent(p)?;
    let c = cos_pnorm(p_prime)?;
    let lower = c / PI * (psi_n - tail);
    let upper = c / PI * (psi_n + tail);
    report.lower = Some(lower);
    report.upper = Some(upper);
    report.tau = Some(tail / psi_n);

    if let PsiSequence::PowerLaw { r } = psi {
        report.reference = power_law_references(n, *r, p)?;
    }

    // witness + certificate
    let spec = WitnessSpec::new(n, p, delta, psi.clone(), beta.clone())?;
    let witness = match build_witness(&spec) {
        Ok(w) => w,
        Err(Error::HypothesisViolated { condition, lhs, rhs }) => {
            report.status = ReportStatus::Skipped(format!(
                "witness hypothesis {condition} violated (lhs={lhs:e}, rhs={rhs:e})"
            ));
            return Ok(report);
        }
        Err(Error::Certification(msg)) => {
            report.status = ReportStatus::Failed(msg);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.delta = witness.delta;
    if let Some(d) = witness.delta {
        report.delta_lower = Some((spike_factor(d) * psi_n - tail) / PI);
    }

    let alternation_ok = vallee_poussin_lower(&witness).is_ok();
    report.alternation_ok = Some(alternation_ok);
    let vp = match vallee_poussin_lower(&witness) {
        Ok(v) => v,
        Err(Error::Certification(msg)) => {
            report.status = ReportStatus::Failed(msg);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.vp_lower = Some(vp);

    let remez = remez_trig_from(
        &witness.f,
        n,
        Some(&witness.points),
        opts.remez_tol,
        opts.remez_max_iter,
    )?;
    report.certified = Some(remez.certified);
    report.witness_value = Some(remez.value);
    report.ratio = Some(remez.value * PI / (c * psi_n));
    report.residual = Some((remez.value * PI / (c * psi_n) - 1.0).abs());
    report.margin_lower = Some(remez.value - lower);
    report.margin_upper = Some(upper - remez.value);

    // certified sandwich: the class lower bound for p > 1, the δ-level
    // bound for the p = 1 witness (its class bound is a δ → 0 limit).
    let certified_lower = report.delta_lower.unwrap_or(lower);
    let sandwich_ok = remez.value + SANDWICH_SLACK >= certified_lower
        && remez.value <= upper + SANDWICH_SLACK;
    report.sandwich_ok = Some(sandwich_ok);

    if !remez.certified {
        report.status = ReportStatus::Failed(format!(
            "exchange not certified after {} iterations",
            remez.iterations
        ));
    } else if !sandwich_ok {
        report.status = ReportStatus::Failed(format!(
            "sandwich violated: lower={certified_lower:e}, value={:e}, upper={upper:e}",
            remez.value
        ));
    } else if !alternation_ok {
        report.status = ReportStatus::Failed("alternation certificate failed".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lower_bound_examples() {
        // p = 1 (p' = ∞), table [1, 0.1], n = 1 → (1/π)(1 − 0.1)
        let psi = PsiSequence::table(vec![1.0, 0.1]).unwrap();
        let got = lower_bound(1, 1.0, &psi).unwrap();
        assert_relative_eq!(got, 0.9 / PI, epsilon = 1e-13);

        // single-term table: zero tail, any p
        let psi = PsiSequence::table(vec![1.0]).unwrap();
        for p in [1.0, 2.0, f64::INFINITY] {
            let c = cos_pnorm(conjugate_exponent(p).unwrap()).unwrap();
            assert_relative_eq!(lower_bound(1, p, &psi).unwrap(), c / PI, epsilon = 1e-13);
        }

        // p = ∞ (p' = 1), power r = 5, n = 4 → (4/π)(4^{−5} − tail)
        let psi = PsiSequence::power_law(5.0).unwrap();
        let tail = psi.tail(4, 1e-14).unwrap();
        let got = lower_bound(4, f64::INFINITY, &psi).unwrap();
        assert_relative_eq!(got, 4.0 / PI * (4.0f64.powi(-5) - tail), epsilon = 1e-12);
    }

    #[test]
    fn lower_bound_refuses_without_decay() {
        let psi = PsiSequence::power_law(1.5).unwrap();
        assert!(matches!(
            lower_bound(1, 2.0, &psi),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn upper_minus_lower_is_twice_scaled_tail() {
        let psi = PsiSequence::power_law(5.0).unwrap();
        for p in [1.0, 2.0, f64::INFINITY] {
            let c = cos_pnorm(conjugate_exponent(p).unwrap()).unwrap();
            let tail = psi.tail(4, 1e-14).unwrap();
            let gap = upper_bound(4, p, &psi).unwrap() - lower_bound(4, p, &psi).unwrap();
            assert_relative_eq!(gap, 2.0 * c / PI * tail, epsilon = 1e-12);
        }
    }

    #[test]
    fn weyl_nagy_bracket_example() {
        // n = 4, r = 5, p = ∞: lower = (4/π)·4^{−5}(1 − 2.25/1.25^5)
        let rep = weyl_nagy_report(4, 5.0, f64::INFINITY).unwrap();
        let main = 4.0 / PI * 4.0f64.powi(-5);
        let factor = 2.25 / 1.25f64.powi(5);
        assert_relative_eq!(rep.explicit_lower.unwrap(), main * (1.0 - factor), epsilon = 1e-12);
        assert_relative_eq!(rep.explicit_upper.unwrap(), main * (1.0 + factor), epsilon = 1e-12);
        assert!(rep.tail_check_ok.unwrap());
        assert!(rep.enclosure_ok.unwrap());
        assert_eq!(rep.status, ReportStatus::Ok);
    }

    #[test]
    fn weyl_nagy_requires_order_and_margin() {
        assert!(weyl_nagy_report(4, 3.0, 2.0).is_err()); // r < n+1
    }

    #[test]
    fn weyl_nagy_bracket_factor_shrinks_for_fast_growth() {
        // r = n²: the width factor (2+1/n)(1+1/n)^{−r} falls toward 0
        let mut prev = f64::INFINITY;
        for n in [2usize, 3, 4, 6] {
            let r = (n * n) as f64;
            let rep = weyl_nagy_report(n, r, 2.0).unwrap();
            let f = rep.bracket_factor.unwrap();
            assert!(f < prev);
            prev = f;
        }
        assert!(prev < 0.02);
    }

    #[test]
    fn exp_class_bracket_example() {
        // α = 1, r = 2, n = 2, p = ∞: main (4/π)e^{−4}, factor 1.25e^{−4}
        let rep = exp_class_report(2, 1.0, 2.0, f64::INFINITY).unwrap();
        let main = 4.0 / PI * (-4.0f64).exp();
        let factor = 1.25 * (-4.0f64).exp();
        assert_relative_eq!(rep.explicit_lower.unwrap(), main * (1.0 - factor), epsilon = 1e-12);
        assert_relative_eq!(rep.explicit_upper.unwrap(), main * (1.0 + factor), epsilon = 1e-12);
        assert!(rep.tail_check_ok.unwrap());
        assert!(rep.enclosure_ok.unwrap());
    }

    #[test]
    fn exp_class_bracket_narrows_with_n() {
        let mut prev = f64::INFINITY;
        for n in 2..=6 {
            let rep = exp_class_report(n, 1.0, 2.0, 2.0).unwrap();
            let f = rep.bracket_factor.unwrap();
            assert!(f < prev);
            prev = f;
        }
    }

    #[test]
    fn reference_terms() {
        // (4/π)·ln 10/10
        let got = reference_asymptotics(10, 1.0, ReferenceFormula::KolmogorovLog).unwrap();
        assert_relative_eq!(got, 4.0 / PI * 10f64.ln() / 10.0, epsilon = 1e-13);
        // (4/π)/8
        let got = reference_asymptotics(2, 3.0, ReferenceFormula::StechkinRapid).unwrap();
        assert_relative_eq!(got, 4.0 / PI / 8.0, epsilon = 1e-13);
        // elliptic term approaches the rapid term as r/n → ∞ (K(q→0) → π/2)
        let elliptic = reference_asymptotics(2, 40.0, ReferenceFormula::StechkinElliptic).unwrap();
        let rapid = reference_asymptotics(2, 40.0, ReferenceFormula::StechkinRapid).unwrap();
        assert_relative_eq!(elliptic, rapid, max_relative = 1e-8);
    }

    #[test]
    fn elliptic_k_agrees_with_quadrature() {
        // independent Simpson oracle on the defining integral
        for i in 0..=9 {
            let q = i as f64 * 0.1;
            let m = 20_000;
            let h = PI / 2.0 / m as f64;
            let f = |t: f64| 1.0 / (1.0 - q * q * t.sin().powi(2)).sqrt();
            let mut acc = f(0.0) + f(PI / 2.0);
            for j in 1..m {
                let t = j as f64 * h;
                acc += if j % 2 == 1 { 4.0 } else { 2.0 } * f(t);
            }
            let oracle = acc * h / 3.0;
            assert!(
                (elliptic_k(q).unwrap() - oracle).abs() < 1e-10,
                "q={q}"
            );
        }
    }

    #[test]
    fn verify_point_power_law() {
        let psi = PsiSequence::power_law(5.0).unwrap();
        let beta = BetaSequence::Constant(0.0);
        let rep = verify_point(4, 2.0, &psi, &beta, None, &VerifyOptions::default()).unwrap();
        assert_eq!(rep.status, ReportStatus::Ok);
        assert!(rep.certified.unwrap());
        assert!(rep.sandwich_ok.unwrap());
        // p = 2 witness is the pure harmonic: E_n = ψ(n)/√π
        let expect = 4.0f64.powi(-5) / PI.sqrt();
        assert_relative_eq!(rep.witness_value.unwrap(), expect, max_relative = 1e-8);
    }

    #[test]
    fn verify_point_skips_inadmissible() {
        let psi = PsiSequence::power_law(1.5).unwrap();
        let beta = BetaSequence::Constant(0.0);
        let rep = verify_point(1, 2.0, &psi, &beta, None, &VerifyOptions::default()).unwrap();
        assert!(matches!(rep.status, ReportStatus::Skipped(_)));
        assert_eq!(rep.hyp_decay, Some(false));
        assert!(rep.witness_value.is_none());
    }

    #[test]
    fn report_fields_align_with_schema() {
        let psi = PsiSequence::table(vec![1.0, 0.2]).unwrap();
        let beta = BetaSequence::Constant(1.0);
        let rep = verify_point(1, f64::INFINITY, &psi, &beta, None, &VerifyOptions::default())
            .unwrap();
        let fields = rep.to_fields();
        assert_eq!(fields.len(), BoundsReport::field_names().len());
        for (f, name) in fields.iter().zip(BoundsReport::field_names()) {
            assert_eq!(f.0, *name);
        }
        // p = ∞ renders as "inf", never as a non-finite number
        assert_eq!(fields[1].1, "inf");
    }
}
