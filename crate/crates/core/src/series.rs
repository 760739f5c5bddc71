//! Coefficient sequences ψ(k), phase sequences β̄, and the generating kernel
//! Ψ(t) = Σ_{k≥1} ψ(k) cos(kt − β_k π/2).
//!
//! Tail sums Σ_{k>n} ψ(k) are certified: every returned value carries a
//! rigorous absolute error bound, and the decay hypotheses used by the
//! bound modules are checked here with both sides reported.

use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// Default absolute tolerance for tail sums and kernel truncation.
pub const DEFAULT_TAIL_EPS: f64 = 1e-12;

/// Term budget for power-law partial sums.
const POWER_LAW_TERM_CAP: usize = 200_000_000;
/// Term budget for kernel evaluation.
const KERNEL_TERM_CAP: usize = 2_000_000;

/// The coefficient sequence ψ(k) ≥ 0, k ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiSequence {
    /// ψ(k) = k^{−r}, r > 0.
    PowerLaw { r: f64 },
    /// ψ(k) = e^{−α k^r}, α > 0, r > 0.
    ExpPower { alpha: f64, r: f64 },
    /// ψ(k) = values[k−1] for k ≤ len, 0 beyond. All entries ≥ 0.
    Table { values: Vec<f64> },
}

impl PsiSequence {
    pub fn power_law(r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("power law requires r > 0, got {r}")));
        }
        Ok(PsiSequence::PowerLaw { r })
    }

    pub fn exp_power(alpha: f64, r: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(r > 0.0) {
            return Err(Error::Domain(format!(
                "exponential family requires alpha > 0 and r > 0, got alpha={alpha}, r={r}"
            )));
        }
        Ok(PsiSequence::ExpPower { alpha, r })
    }

    pub fn table(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Domain(
                "table entries must be finite and nonnegative".into(),
            ));
        }
        Ok(PsiSequence::Table { values })
    }

    /// ψ(k). `k = 0` is a domain error.
    pub fn value(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("psi(k) requires k >= 1".into()));
        }
        Ok(self.value_unchecked(k))
    }

    #[inline]
    fn value_unchecked(&self, k: usize) -> f64 {
        match self {
            PsiSequence::PowerLaw { r } => (k as f64).powf(-r),
            PsiSequence::ExpPower { alpha, r } => (-alpha * (k as f64).powf(*r)).exp(),
            PsiSequence::Table { values } => values.get(k - 1).copied().unwrap_or(0.0),
        }
    }

    /// Whether Σ ψ(k) (and so every tail) is finite.
    pub fn tail_is_finite(&self) -> bool {
        match self {
            PsiSequence::PowerLaw { r } => *r > 1.0,
            _ => true,
        }
    }

    /// Cheap rigorous upper bound for Σ_{k>n} ψ(k). Used to size
    /// truncations without running the summation itself.
    pub fn tail_upper_bound(&self, n: usize) -> Result<f64> {
        match self {
            PsiSequence::PowerLaw { r } => {
                if *r <= 1.0 {
                    return Err(Error::DivergentSeries(format!(
                        "power-law tail diverges for r = {r} <= 1"
                    )));
                }
                // integral test: tail <= ψ(n+1) + ∫_{n+1}^∞ t^{−r} dt
                let m = (n + 1) as f64;
                Ok(m.powf(-r) + m.powf(1.0 - r) / (r - 1.0))
            }
            PsiSequence::ExpPower { alpha, r } => {
                if *r >= 1.0 {
                    // increments k^r − (k−1)^r are nondecreasing, so the
                    // term ratio is nonincreasing: geometric majorant.
                    let t1 = self.value_unchecked(n + 1);
                    let ratio = self.value_unchecked(n + 2) / t1;
                    if t1 == 0.0 {
                        return Ok(0.0);
                    }
                    Ok(t1 / (1.0 - ratio))
                } else {
                    // dyadic blocks: Σ_{j>m} ψ(j) <= Σ_i 2^i m ψ(2^i m)
                    let m = (n.max(1)) as f64;
                    let mut bound = 0.0;
                    let mut block = m;
                    for _ in 0..64 {
                        let contrib = block * (-alpha * block.powf(*r)).exp();
                        bound += contrib;
                        if contrib < 1e-300 {
                            break;
                        }
                        block *= 2.0;
                    }
                    Ok(bound)
                }
            }
            PsiSequence::Table { values } => {
                Ok(values.iter().skip(n).filter(|v| **v > 0.0).sum())
            }
        }
    }

    /// Σ_{k=n+1}^∞ ψ(k) with certified absolute error ≤ `eps`.
    ///
    /// Table sums are exact. Power-law tails use a Kahan partial sum plus
    /// the integral remainder with midpoint correction; the residual is
    /// controlled by the first omitted Euler–Maclaurin term, which bounds
    /// the remainder for completely monotone terms. Exponential tails sum
    /// until the family's remainder majorant drops below `eps`.
    pub fn tail(&self, n: usize, eps: f64) -> Result<f64> {
        if !(eps > 0.0) {
            return Err(Error::Domain("tail tolerance must be positive".into()));
        }
        match self {
            PsiSequence::Table { values } => {
                Ok(values.iter().skip(n).filter(|v| **v > 0.0).sum())
            }
            PsiSequence::PowerLaw { r } => {
                if *r <= 1.0 {
                    return Err(Error::DivergentSeries(format!(
                        "power-law tail diverges for r = {r} <= 1"
                    )));
                }
                self.power_law_tail(n, *r, eps)
            }
            PsiSequence::ExpPower { alpha, r } => self.exp_tail(n, *alpha, *r, eps),
        }
    }

    fn power_law_tail(&self, n: usize, r: f64, eps: f64) -> Result<f64> {
        // Residual after summing through K and adding the integral-remainder
        // midpoint is below r·(K+1)^{−r−1}/12. Pick K accordingly, with the
        // spec floor of max(1e6, 100 n) terms.
        let mut cap = 1_000_000usize.max(100 * n);
        let needed = (r / (12.0 * eps)).powf(1.0 / (r + 1.0)).ceil();
        if needed.is_finite() && needed as usize > cap {
            cap = needed as usize;
        }
        if cap > POWER_LAW_TERM_CAP {
            return Err(Error::ToleranceNotMet {
                requested: eps,
                achieved: r * (POWER_LAW_TERM_CAP as f64).powf(-r - 1.0) / 12.0,
            });
        }
        // Kahan sum, smallest terms first.
        let mut sum = 0.0_f64;
        let mut c = 0.0_f64;
        for k in ((n + 1)..=cap).rev() {
            let y = (k as f64).powf(-r) - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        let m = (cap + 1) as f64;
        // integral remainder ∫_m^∞ + ψ(m)/2 + r m^{−r−1}/12
        let correction = m.powf(1.0 - r) / (r - 1.0) + 0.5 * m.powf(-r) + r * m.powf(-r - 1.0) / 12.0;
        Ok(sum + correction)
    }

    fn exp_tail(&self, n: usize, alpha: f64, r: f64, eps: f64) -> Result<f64> {
        let mut sum = 0.0_f64;
        let mut c = 0.0_f64;
        let mut k = n + 1;
        loop {
            let term = (-alpha * (k as f64).powf(r)).exp();
            let y = term - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
            let shifted = PsiSequence::ExpPower { alpha, r };
            let remainder = shifted.tail_upper_bound(k)?;
            if remainder <= eps {
                return Ok(sum + 0.5 * remainder);
            }
            k += 1;
            if k > n + 10_000_000 {
                return Err(Error::ToleranceNotMet {
                    requested: eps,
                    achieved: remainder,
                });
            }
        }
    }

    /// Short parameter description, e.g. `power:r=5`.
    pub fn describe(&self) -> String {
        match self {
            PsiSequence::PowerLaw { r } => format!("power:r={r}"),
            PsiSequence::ExpPower { alpha, r } => format!("exp:alpha={alpha},r={r}"),
            PsiSequence::Table { values } => {
                let vs: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                format!("table:{}", vs.join(","))
            }
        }
    }

    /// Parse the `family:params` descriptor produced by [`describe`]:
    /// `power:r=5 | exp:alpha=1,r=2 | table:1,0.5,0.25`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Config(msg);
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("psi needs family:params, got `{s}`")))?;
        match family {
            "power" => {
                let r = rest
                    .strip_prefix("r=")
                    .ok_or_else(|| bad(format!("power family needs r=..., got `{rest}`")))?;
                let r: f64 = r
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad exponent `{r}`")))?;
                PsiSequence::power_law(r)
            }
            "exp" => {
                let mut alpha = None;
                let mut r = None;
                for part in rest.split(',') {
                    let (key, value) = part
                        .split_once('=')
                        .ok_or_else(|| bad(format!("exp family needs key=value, got `{part}`")))?;
                    let v: f64 = value
                        .trim()
                        .parse()
                        .map_err(|_| bad(format!("bad number `{value}`")))?;
                    match key.trim() {
                        "alpha" => alpha = Some(v),
                        "r" => r = Some(v),
                        other => return Err(bad(format!("unknown exp parameter `{other}`"))),
                    }
                }
                PsiSequence::exp_power(
                    alpha.ok_or_else(|| bad("exp family needs alpha=".into()))?,
                    r.ok_or_else(|| bad("exp family needs r=".into()))?,
                )
            }
            "table" => {
                let values: std::result::Result<Vec<f64>, _> =
                    rest.split(',').map(|v| v.trim().parse::<f64>()).collect();
                let values = values.map_err(|_| bad(format!("bad table values `{rest}`")))?;
                if values.is_empty() {
                    return Err(bad("table needs at least one value".into()));
                }
                PsiSequence::table(values)
            }
            other => Err(bad(format!("unknown psi family `{other}` (power|exp|table)"))),
        }
    }
}

/// The phase sequence β̄ = {β_k}.
#[derive(Debug, Clone, PartialEq)]
pub enum BetaSequence {
    /// β_k ≡ β.
    Constant(f64),
    /// Explicit leading values; extended by repeating the last entry.
    List(Vec<f64>),
}

impl BetaSequence {
    /// β_k, defined for every k ≥ 1.
    pub fn value(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("beta_k requires k >= 1".into()));
        }
        Ok(match self {
            BetaSequence::Constant(b) => *b,
            BetaSequence::List(vs) => {
                if vs.is_empty() {
                    0.0
                } else {
                    *vs.get(k - 1).unwrap_or_else(|| vs.last().unwrap())
                }
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            BetaSequence::Constant(b) => format!("const:{b}"),
            BetaSequence::List(vs) => {
                let ss: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                format!("list:{}", ss.join(","))
            }
        }
    }

    /// Parse `const:0.5 | list:0,1,2`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Config(msg);
        let (mode, rest) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("beta needs mode:params, got `{s}`")))?;
        match mode {
            "const" => {
                let b: f64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad beta `{rest}`")))?;
                Ok(BetaSequence::Constant(b))
            }
            "list" => {
                let values: std::result::Result<Vec<f64>, _> =
                    rest.split(',').map(|v| v.trim().parse::<f64>()).collect();
                let values = values.map_err(|_| bad(format!("bad beta list `{rest}`")))?;
                if values.is_empty() {
                    return Err(bad("beta list needs at least one value".into()));
                }
                Ok(BetaSequence::List(values))
            }
            other => Err(bad(format!("unknown beta mode `{other}` (const|list)"))),
        }
    }
}

/// Decay conditions checked before any bound is asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// Σ_{k>n} ψ(k) < ψ(n).
    TailBelowTerm,
    /// Ratio diagnostic for the D_0 condition lim ψ(k+1)/ψ(k) = 0;
    /// reports ψ(n+1)/ψ(n) < 1 rather than a limit.
    RatioDecay,
    /// (1 + 1/n)^{−r} < (2 + 1/n)^{−1}, power-law family.
    PowerLawMargin,
    /// (1 + 1/(αr n^{r−1})) e^{−αr n^{r−1}} < 1, exponential family.
    ExpMargin,
}

impl Condition {
    pub fn name(&self) -> &'static str {
        match self {
            Condition::TailBelowTerm => "tail-below-term",
            Condition::RatioDecay => "ratio-decay",
            Condition::PowerLawMargin => "power-law-margin",
            Condition::ExpMargin => "exp-margin",
        }
    }
}

/// Outcome of a hypothesis check: whether `lhs < rhs` holds, with both sides.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HypothesisReport {
    pub condition: Condition,
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
}

impl HypothesisReport {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Check a decay condition for (ψ, n). Conditions that need family
/// parameters (r, α) reject incompatible families.
pub fn hypothesis_check(psi: &PsiSequence, n: usize, which: Condition) -> Result<HypothesisReport> {
    if n == 0 {
        return Err(Error::Domain("hypothesis checks require n >= 1".into()));
    }
    let report = |holds, lhs, rhs| HypothesisReport {
        condition: which,
        holds,
        lhs,
        rhs,
    };
    match which {
        Condition::TailBelowTerm => {
            let rhs = psi.value(n)?;
            // Cheap bracket first: only run the full summation when the
            // closed-form bounds straddle ψ(n).
            let upper = psi.tail_upper_bound(n)?;
            if upper < rhs {
                return Ok(report(true, upper, rhs));
            }
            let lhs = psi.tail(n, tail_eps_for(rhs))?;
            Ok(report(lhs < rhs, lhs, rhs))
        }
        Condition::RatioDecay => {
            let pn = psi.value(n)?;
            if pn == 0.0 {
                return Ok(report(true, 0.0, 1.0));
            }
            let ratio = psi.value(n + 1)? / pn;
            Ok(report(ratio < 1.0, ratio, 1.0))
        }
        Condition::PowerLawMargin => match psi {
            PsiSequence::PowerLaw { r } => {
                let nf = n as f64;
                let lhs = (1.0 + 1.0 / nf).powf(-r);
                let rhs = 1.0 / (2.0 + 1.0 / nf);
                Ok(report(lhs < rhs, lhs, rhs))
            }
            _ => Err(Error::Config(
                "power-law-margin condition needs the power-law family".into(),
            )),
        },
        Condition::ExpMargin => match psi {
            PsiSequence::ExpPower { alpha, r } => {
                if *r <= 1.0 {
                    return Err(Error::Config(
                        "exp-margin condition is stated for r > 1".into(),
                    ));
                }
                let e = alpha * r * (n as f64).powf(r - 1.0);
                let lhs = (1.0 + 1.0 / e) * (-e).exp();
                Ok(report(lhs < 1.0, lhs, 1.0))
            }
            _ => Err(Error::Config(
                "exp-margin condition needs the exponential family".into(),
            )),
        },
    }
}

/// Absolute tail tolerance scaled to the comparison at hand.
fn tail_eps_for(scale: f64) -> f64 {
    (scale * 1e-6).clamp(1e-15, DEFAULT_TAIL_EPS)
}

/// A kernel Ψ(t) = Σ ψ(k) cos(kt − β_k π/2) with a truncation tolerance.
///
/// Evaluation truncates at the smallest N whose certified tail bound is
/// ≤ `tail_eps`, so every evaluation carries a pointwise error at most
/// `tail_eps`. N is resolved on first use: constructing a spec and reading
/// its coefficients stays cheap even when that N would be out of reach.
#[derive(Debug, Clone)]
pub struct KernelSpec {
    pub psi: PsiSequence,
    pub beta: BetaSequence,
    pub tail_eps: f64,
    truncation: std::sync::OnceLock<Result<usize>>,
}

impl KernelSpec {
    pub fn new(psi: PsiSequence, beta: BetaSequence, tail_eps: f64) -> Result<Self> {
        if !(tail_eps > 0.0) {
            return Err(Error::Domain("tail_eps must be positive".into()));
        }
        if !psi.tail_is_finite() {
            return Err(Error::DivergentSeries(
                "kernel series is not absolutely convergent (power law needs r > 1)".into(),
            ));
        }
        Ok(KernelSpec {
            psi,
            beta,
            tail_eps,
            truncation: std::sync::OnceLock::new(),
        })
    }

    pub fn with_default_eps(psi: PsiSequence, beta: BetaSequence) -> Result<Self> {
        KernelSpec::new(psi, beta, DEFAULT_TAIL_EPS)
    }

    /// Number of retained terms N.
    pub fn truncation_order(&self) -> Result<usize> {
        self.truncation
            .get_or_init(|| truncation_order(&self.psi, self.tail_eps))
            .clone()
    }

    /// Ψ(t) truncated at N; dropped tail ≤ tail_eps in absolute value.
    /// Deterministic for a fixed spec.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let n = self.truncation_order()?;
        let mut acc = 0.0;
        for k in 1..=n {
            let psi_k = self.psi.value_unchecked(k);
            if psi_k == 0.0 {
                continue;
            }
            let beta_k = self.beta.value(k).unwrap_or(0.0);
            acc += psi_k * (k as f64 * t - beta_k * PI / 2.0).cos();
        }
        Ok(acc)
    }

    /// (ψ(k), β_k π/2) for k = 1..=k_max.
    pub fn coefficients(&self, k_max: usize) -> Result<Vec<(f64, f64)>> {
        if k_max == 0 {
            return Err(Error::Domain("k_max must be >= 1".into()));
        }
        (1..=k_max)
            .map(|k| Ok((self.psi.value(k)?, self.beta.value(k)? * PI / 2.0)))
            .collect()
    }
}

/// Smallest N with a certified tail bound ≤ eps, by doubling + bisection on
/// the monotone closed-form bound.
fn truncation_order(psi: &PsiSequence, eps: f64) -> Result<usize> {
    if let PsiSequence::Table { values } = psi {
        return Ok(values.len());
    }
    let ok = |n: usize| psi.tail_upper_bound(n).map(|b| b <= eps);
    let mut hi = 1usize;
    while !ok(hi)? {
        hi *= 2;
        if hi > KERNEL_TERM_CAP {
            return Err(Error::ToleranceNotMet {
                requested: eps,
                achieved: psi.tail_upper_bound(KERNEL_TERM_CAP)?,
            });
        }
    }
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn psi_values_per_family() {
        let p = PsiSequence::power_law(2.0).unwrap();
        assert_relative_eq!(p.value(3).unwrap(), 1.0 / 9.0, epsilon = 1e-15);
        let e = PsiSequence::exp_power(1.0, 1.0).unwrap();
        assert_relative_eq!(e.value(2).unwrap(), (-2.0f64).exp(), epsilon = 1e-15);
        let t = PsiSequence::table(vec![1.0, 0.5, 0.25]).unwrap();
        assert_eq!(t.value(5).unwrap(), 0.0);
        assert_eq!(t.value(2).unwrap(), 0.5);
    }

    #[test]
    fn psi_rejects_k_zero() {
        let p = PsiSequence::power_law(2.0).unwrap();
        assert!(p.value(0).is_err());
    }

    #[test]
    fn power_law_tail_matches_brute_force() {
        // Oracle: brute-force summation of 1e7 terms plus integral remainder.
        let p = PsiSequence::power_law(2.0).unwrap();
        let got = p.tail(1, 1e-12).unwrap();
        let mut brute = 0.0f64;
        for k in (2..=10_000_000u64).rev() {
            brute += (k as f64).powi(-2);
        }
        brute += 1.0 / 10_000_000.5; // ∫ midpoint remainder for r = 2
        assert_relative_eq!(got, brute, epsilon = 1e-10);
        // π²/6 − 1
        assert_relative_eq!(got, std::f64::consts::PI.powi(2) / 6.0 - 1.0, epsilon = 1e-12);
    }

    #[test]
    fn exp_tail_matches_geometric_closed_form() {
        // r = 1 is a geometric series: Σ_{k>n} e^{−αk} = e^{−α(n+1)}/(1−e^{−α}).
        let e = PsiSequence::exp_power(1.0, 1.0).unwrap();
        let got = e.tail(3, 1e-12).unwrap();
        let oracle = (-4.0f64).exp() / (1.0 - (-1.0f64).exp());
        assert_relative_eq!(got, oracle, epsilon = 1e-11);
    }

    #[test]
    fn table_tail_is_exact() {
        let t = PsiSequence::table(vec![1.0, 0.5, 0.25]).unwrap();
        assert_eq!(t.tail(1, 1e-12).unwrap(), 0.75);
        assert_eq!(t.tail(3, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn power_law_tail_diverges_for_small_r() {
        let p = PsiSequence::power_law(1.0).unwrap();
        assert!(matches!(
            p.tail(1, 1e-9),
            Err(Error::DivergentSeries(_))
        ));
    }

    #[test]
    fn tail_bracketing_by_integral_test() {
        // tail(n) ∈ [∫_{n+1}^∞ t^{−r} dt, ψ(n+1) + ∫_{n+1}^∞ t^{−r} dt]
        for r in [1.5, 2.0, 5.0] {
            let p = PsiSequence::power_law(r).unwrap();
            for n in 1..6 {
                let tail = p.tail(n, 1e-10).unwrap();
                let integral = ((n + 1) as f64).powf(1.0 - r) / (r - 1.0);
                let upper = integral + ((n + 1) as f64).powf(-r);
                assert!(tail > integral, "r={r} n={n}: {tail} <= {integral}");
                assert!(tail < upper, "r={r} n={n}: {tail} >= {upper}");
            }
        }
    }

    #[test]
    fn tail_is_decreasing_and_nonnegative() {
        let families = [
            PsiSequence::power_law(3.0).unwrap(),
            PsiSequence::exp_power(0.5, 2.0).unwrap(),
            PsiSequence::table(vec![1.0, 0.9, 0.3, 0.1]).unwrap(),
        ];
        for psi in &families {
            let mut prev = f64::INFINITY;
            for n in 1..8 {
                let t = psi.tail(n, 1e-12).unwrap();
                assert!(t >= 0.0);
                assert!(t < prev || (t == 0.0 && prev == 0.0));
                prev = t;
            }
        }
    }

    #[test]
    fn hypothesis_tail_below_term() {
        // r = 5, n = 4: tail ≈ 4.76e-4 < ψ(4) ≈ 9.766e-4
        let p = PsiSequence::power_law(5.0).unwrap();
        let rep = hypothesis_check(&p, 4, Condition::TailBelowTerm).unwrap();
        assert!(rep.holds);
        assert!(rep.rhs > rep.lhs);
        assert_relative_eq!(rep.rhs, 4.0f64.powi(-5), epsilon = 1e-12);
        // r = 1.5, n = 1 fails: tail = ζ(1.5) − 1 ≈ 1.612 > 1
        let p = PsiSequence::power_law(1.5).unwrap();
        let rep = hypothesis_check(&p, 1, Condition::TailBelowTerm).unwrap();
        assert!(!rep.holds);
    }

    #[test]
    fn hypothesis_power_law_margin() {
        // n = 4, r = 5: 1.25^{−5} ≈ 0.32768 < 1/2.25 ≈ 0.44444
        let p = PsiSequence::power_law(5.0).unwrap();
        let rep = hypothesis_check(&p, 4, Condition::PowerLawMargin).unwrap();
        assert!(rep.holds);
        assert_relative_eq!(rep.lhs, 1.25f64.powi(-5), epsilon = 1e-12);
        assert_relative_eq!(rep.rhs, 1.0 / 2.25, epsilon = 1e-12);
        // wrong family is a configuration error
        let t = PsiSequence::table(vec![1.0]).unwrap();
        assert!(matches!(
            hypothesis_check(&t, 4, Condition::PowerLawMargin),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn hypothesis_exp_margin() {
        // α = 1, r = 2, n = 2: (1 + 1/4)e^{−4} ≈ 0.0229 < 1
        let e = PsiSequence::exp_power(1.0, 2.0).unwrap();
        let rep = hypothesis_check(&e, 2, Condition::ExpMargin).unwrap();
        assert!(rep.holds);
        assert_relative_eq!(rep.lhs, 1.25 * (-4.0f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn hypothesis_ratio_decay_reports_ratio() {
        let e = PsiSequence::exp_power(1.0, 2.0).unwrap();
        let rep = hypothesis_check(&e, 3, Condition::RatioDecay).unwrap();
        assert!(rep.holds);
        assert_relative_eq!(rep.lhs, (-(16.0 - 9.0f64)).exp(), epsilon = 1e-12);
    }

    #[test]
    fn kernel_eval_single_term() {
        let spec = KernelSpec::with_default_eps(
            PsiSequence::table(vec![1.0]).unwrap(),
            BetaSequence::Constant(0.0),
        )
        .unwrap();
        assert_relative_eq!(spec.eval(0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(spec.eval(1.0).unwrap(), 1.0f64.cos(), epsilon = 1e-15);
    }

    #[test]
    fn kernel_eval_geometric_sum() {
        // Σ e^{−k} cos(k·0) = 1/(e−1)
        let spec = KernelSpec::with_default_eps(
            PsiSequence::exp_power(1.0, 1.0).unwrap(),
            BetaSequence::Constant(0.0),
        )
        .unwrap();
        let oracle = 1.0 / (1.0f64.exp() - 1.0);
        assert_relative_eq!(spec.eval(0.0).unwrap(), oracle, epsilon = 1e-11);
    }

    #[test]
    fn kernel_eval_rapid_power_law() {
        let spec = KernelSpec::with_default_eps(
            PsiSequence::power_law(20.0).unwrap(),
            BetaSequence::Constant(0.0),
        )
        .unwrap();
        // direct summation oracle
        let oracle: f64 = (1..100).map(|k| (k as f64).powf(-20.0)).sum();
        assert_relative_eq!(spec.eval(0.0).unwrap(), oracle, epsilon = 1e-13);
    }

    #[test]
    fn kernel_halving_eps_moves_result_within_eps() {
        let psi = PsiSequence::exp_power(0.3, 1.0).unwrap();
        let beta = BetaSequence::Constant(1.0);
        let eps = 1e-8;
        let coarse = KernelSpec::new(psi.clone(), beta.clone(), eps).unwrap();
        let fine = KernelSpec::new(psi, beta, eps / 2.0).unwrap();
        for t in [0.0, 0.7, 2.0, 5.5] {
            assert!((coarse.eval(t).unwrap() - fine.eval(t).unwrap()).abs() <= eps);
        }
    }

    #[test]
    fn kernel_rejects_divergent_series() {
        let psi = PsiSequence::power_law(0.9).unwrap();
        assert!(KernelSpec::with_default_eps(psi, BetaSequence::Constant(0.0)).is_err());
    }

    #[test]
    fn kernel_coefficients_pairs() {
        let spec = KernelSpec::with_default_eps(
            PsiSequence::table(vec![1.0, 0.5]).unwrap(),
            BetaSequence::Constant(1.0),
        )
        .unwrap();
        let coeffs = spec.coefficients(2).unwrap();
        assert_eq!(coeffs.len(), 2);
        assert_relative_eq!(coeffs[0].0, 1.0);
        assert_relative_eq!(coeffs[0].1, PI / 2.0);
        assert_relative_eq!(coeffs[1].0, 0.5);
        assert_relative_eq!(coeffs[1].1, PI / 2.0);

        let spec = KernelSpec::with_default_eps(
            PsiSequence::power_law(2.0).unwrap(),
            BetaSequence::List(vec![0.0, 3.0]),
        )
        .unwrap();
        let coeffs = spec.coefficients(2).unwrap();
        assert_relative_eq!(coeffs[0].0, 1.0);
        assert_relative_eq!(coeffs[0].1, 0.0);
        assert_relative_eq!(coeffs[1].0, 0.25);
        assert_relative_eq!(coeffs[1].1, 3.0 * PI / 2.0);
    }

    #[test]
    fn describe_parse_round_trip() {
        let specs = [
            PsiSequence::power_law(3.5).unwrap(),
            PsiSequence::exp_power(0.25, 2.0).unwrap(),
            PsiSequence::table(vec![1.0, 0.5, 0.25]).unwrap(),
        ];
        for psi in &specs {
            assert_eq!(&PsiSequence::parse(&psi.describe()).unwrap(), psi);
        }
        let betas = [
            BetaSequence::Constant(1.5),
            BetaSequence::List(vec![0.0, 1.0, 2.0]),
        ];
        for beta in &betas {
            assert_eq!(&BetaSequence::parse(&beta.describe()).unwrap(), beta);
        }
        assert!(PsiSequence::parse("gauss:sigma=1").is_err());
        assert!(BetaSequence::parse("ramp:1").is_err());
    }

    #[test]
    fn beta_list_repeats_last() {
        let b = BetaSequence::List(vec![0.0, 1.0, 2.0]);
        assert_eq!(b.value(2).unwrap(), 1.0);
        assert_eq!(b.value(3).unwrap(), 2.0);
        assert_eq!(b.value(100).unwrap(), 2.0);
    }
}
