//! Extremal witnesses: the unit-ball derivatives φ_{n,p}, the class
//! elements f = F₁ + F₂ they generate under the kernel, the 2n alternation
//! points, and the alternation-certified lower bound.

use crate::error::{Error, Result};
use crate::norms::{conjugate_exponent, cos_pnorm, PeriodicFunction, Smoothness};
use crate::quad::GaussRule;
use crate::series::{hypothesis_check, BetaSequence, Condition, PsiSequence};
use std::f64::consts::PI;

/// Absolute truncation tolerance for the lacunary F₂ series.
const F2_TAIL_TOL: f64 = 1e-12;
/// Hard cap on retained F₂ harmonics.
const F2_TERM_CAP: usize = 2_000_000;

/// Parameters of a witness construction.
#[derive(Debug, Clone)]
pub struct WitnessSpec {
    pub n: usize,
    /// Exponent of the unit ball, p ∈ [1, ∞].
    pub p: f64,
    /// Spike half-width parameter, used only when p = 1.
    pub delta: Option<f64>,
    pub psi: PsiSequence,
    pub beta: BetaSequence,
}

impl WitnessSpec {
    pub fn new(
        n: usize,
        p: f64,
        delta: Option<f64>,
        psi: PsiSequence,
        beta: BetaSequence,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("witness requires n >= 1".into()));
        }
        conjugate_exponent(p)?;
        if let Some(d) = delta {
            if !(d > 0.0 && d < PI / 2.0) {
                return Err(Error::Domain(format!(
                    "delta must lie in (0, pi/2), got {d}"
                )));
            }
        }
        Ok(WitnessSpec {
            n,
            p,
            delta,
            psi,
            beta,
        })
    }

    pub fn p_conjugate(&self) -> f64 {
        conjugate_exponent(self.p).expect("validated on construction")
    }

    fn is_p_one(&self) -> bool {
        self.p == 1.0
    }
}

/// (2/δ) sin(δ/2): the spike smearing factor; increases to 1 as δ → 0.
pub fn spike_factor(delta: f64) -> f64 {
    2.0 / delta * (delta / 2.0).sin()
}

/// The spike half-width rule for p = 1: the largest δ = π/2^j, j ≥ 2, with
///
///   ψ(n)(1 − (2/δ)sin(δ/2)) ≤ tail/4   and   (2/δ)sin(δ/2)·ψ(n) > tail,
///
/// so the witness both satisfies the sign condition and loses at most a
/// quarter of the tail gap to spike smearing.
pub fn default_delta(psi: &PsiSequence, n: usize, tail: f64) -> Result<f64> {
    let psi_n = psi.value(n)?;
    if psi_n <= 0.0 {
        return Err(Error::Config("psi(n) must be positive for p = 1".into()));
    }
    for j in 2..=48u32 {
        let delta = PI / 2f64.powi(j as i32);
        let c = spike_factor(delta);
        if psi_n * (1.0 - c) <= tail / 4.0 && c * psi_n > tail {
            return Ok(delta);
        }
    }
    Err(Error::Config(
        "no spike width satisfies the sign condition; tail too close to psi(n)".into(),
    ))
}

/// The 2n points x_m = β_n π/(2n) + mπ/n, m = 0..2n−1, spaced π/n.
pub fn alternation_points(n: usize, beta_n: f64) -> Vec<f64> {
    let base = beta_n * PI / (2.0 * n as f64);
    (0..2 * n)
        .map(|m| base + m as f64 * PI / n as f64)
        .collect()
}

/// φ_{n,p}(t) pointwise.
///
/// 1 < p < ∞: ‖cos‖_{p'}^{1−p'} |cos nt|^{p'−1} sign cos nt;
/// p = ∞: sign cos nt; p = 1: the ±1/(2δ) spike train.
pub fn phi_eval(spec: &WitnessSpec, t: f64) -> Result<f64> {
    let n = spec.n as f64;
    if spec.is_p_one() {
        let delta = spec
            .delta
            .ok_or_else(|| Error::Config("p = 1 witness needs delta".into()))?;
        // spike of half-width δ/(2n) around every mπ/n, sign (−1)^m
        let u = n * t / PI; // spikes sit at integer u
        let m = u.round();
        if (u - m).abs() * PI < delta / 2.0 {
            let sign = if (m as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            return Ok(sign / (2.0 * delta));
        }
        return Ok(0.0);
    }
    let c = (n * t).cos();
    if spec.p.is_infinite() {
        return Ok(c.signum());
    }
    let p_prime = spec.p_conjugate();
    let norm = cos_pnorm(p_prime)?;
    Ok(norm.powf(1.0 - p_prime) * c.abs().powf(p_prime - 1.0) * c.signum())
}

/// φ as a [`PeriodicFunction`] with the right smoothness hint.
pub fn phi_function(spec: &WitnessSpec) -> Result<PeriodicFunction> {
    // force the configuration errors out before capturing the closure
    phi_eval(spec, 0.1)?;
    let owned = spec.clone();
    let smoothness = if spec.is_p_one() || spec.p.is_infinite() {
        Smoothness::Discontinuous
    } else {
        let n = spec.n;
        Smoothness::KinkAt(
            (0..2 * n)
                .map(|m| (2 * m + 1) as f64 * PI / (2.0 * n as f64))
                .collect(),
        )
    };
    Ok(
        PeriodicFunction::from_fn(move |t| phi_eval(&owned, t).unwrap_or(0.0))
            .with_smoothness(smoothness),
    )
}

/// Cosine coefficients of φ at the frequencies j·n, j = 1..=j_max:
/// a_{jn} = (1/π)∫ φ(t) cos(jnt) dt. Even j vanish by half-wave
/// antisymmetry; sine coefficients and non-multiples of n vanish by
/// symmetry and periodicity and are not returned.
pub fn phi_harmonics(spec: &WitnessSpec, j_max: usize) -> Result<Vec<f64>> {
    (1..=j_max).map(|j| phi_harmonic(spec, j)).collect()
}

fn phi_harmonic(spec: &WitnessSpec, j: usize) -> Result<f64> {
    if j % 2 == 0 {
        return Ok(0.0);
    }
    if spec.is_p_one() {
        let delta = spec
            .delta
            .ok_or_else(|| Error::Config("p = 1 witness needs delta".into()))?;
        // exact: the spike train integrates trigonometrically
        let jf = j as f64;
        return Ok(2.0 * (jf * delta / 2.0).sin() / (PI * delta * jf));
    }
    if spec.p.is_infinite() {
        // square wave: (4/π)(−1)^{(j−1)/2}/j on odd j
        let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(4.0 / PI * sign / j as f64);
    }
    let p_prime = spec.p_conjugate();
    let gamma = p_prime - 1.0;
    let norm = cos_pnorm(p_prime)?;
    let rule = GaussRule::new(16);
    Ok(norm.powf(1.0 - p_prime) * 4.0 / PI * base_harmonic(gamma, j, &rule))
}

/// ∫_0^{π/2} cos^γ(u) cos(ju) du with panels sized to the oscillation and
/// graded toward the algebraic endpoint at π/2.
fn base_harmonic(gamma: f64, j: usize, rule: &GaussRule) -> f64 {
    let segments = j.max(4);
    let w = PI / 2.0 / segments as f64;
    let g = |u: f64| u.cos().powf(gamma) * (j as f64 * u).cos();
    let mut acc = 0.0;
    for i in 0..segments {
        let (lo, hi) = (i as f64 * w, (i + 1) as f64 * w);
        if i + 1 == segments {
            acc += rule.graded(&g, lo, hi, false, true);
        } else {
            acc += rule.panel(&g, lo, hi);
        }
    }
    acc
}

/// A fully constructed witness: φ ∈ B_p^0 and f = F₁ + F₂ in the class,
/// with its alternation set.
#[derive(Debug, Clone)]
pub struct ExtremalWitness {
    pub spec: WitnessSpec,
    /// The resolved spike width (p = 1 only).
    pub delta: Option<f64>,
    pub phi: PeriodicFunction,
    pub f: PeriodicFunction,
    pub f1: PeriodicFunction,
    pub f2: PeriodicFunction,
    /// x_m = β_n π/(2n) + mπ/n, m = 0..2n−1.
    pub points: Vec<f64>,
    /// Amplitude of F₁; (ψ(n)/π)·‖cos‖_{p'} for p > 1, with the spike
    /// factor replacing ‖cos‖_{p'}... see `build_witness`.
    pub f1_amplitude: f64,
    /// Retained F₂ terms (amplitude, frequency, phase).
    pub f2_terms: Vec<(f64, usize, f64)>,
}

/// Build the witness for (n, p, ψ, β̄). Refuses when the decay hypothesis
/// Σ_{k>n}ψ(k) < ψ(n) fails, and for p = 1 when the spike width violates
/// its sign condition.
pub fn build_witness(spec: &WitnessSpec) -> Result<ExtremalWitness> {
    let n = spec.n;
    let hyp = hypothesis_check(&spec.psi, n, Condition::TailBelowTerm)?;
    if !hyp.holds {
        return Err(Error::HypothesisViolated {
            condition: Condition::TailBelowTerm.name(),
            lhs: hyp.lhs,
            rhs: hyp.rhs,
        });
    }
    let tail = hyp.lhs;
    let psi_n = spec.psi.value(n)?;
    let p_prime = spec.p_conjugate();

    let (delta, f1_amplitude) = if spec.is_p_one() {
        let delta = match spec.delta {
            Some(d) => {
                if spike_factor(d) * psi_n <= tail {
                    return Err(Error::HypothesisViolated {
                        condition: "spike-sign",
                        lhs: tail,
                        rhs: spike_factor(d) * psi_n,
                    });
                }
                d
            }
            None => default_delta(&spec.psi, n, tail)?,
        };
        (Some(delta), psi_n / PI * spike_factor(delta))
    } else {
        (None, psi_n / PI * cos_pnorm(p_prime)?)
    };

    let mut spec = spec.clone();
    spec.delta = delta.or(spec.delta);

    let beta_n = spec.beta.value(n)?;
    let f1 = PeriodicFunction::harmonic(f1_amplitude, n, beta_n * PI / 2.0);
    let f2_terms = f2_series(&spec, tail)?;
    let f2 = PeriodicFunction::cosine_series(f2_terms.clone());

    let bandwidth = f2_terms.iter().map(|t| t.1).max().unwrap_or(n).max(n);
    let f = {
        let f1c = f1.clone();
        let f2c = f2.clone();
        PeriodicFunction::from_fn(move |t| f1c.eval(t) + f2c.eval(t)).with_bandwidth(bandwidth)
    };

    let points = alternation_points(n, beta_n);
    let witness = ExtremalWitness {
        phi: phi_function(&spec)?,
        spec,
        delta,
        f,
        f1,
        f2,
        points,
        f1_amplitude,
        f2_terms,
    };

    // The sign pattern sign f(x_m) = (−1)^m is guaranteed by the decay
    // hypothesis; verify it numerically before handing the witness out.
    if let Some(m) = witness.failed_alternation_index() {
        return Err(Error::Certification(format!(
            "witness sign pattern failed at alternation point m = {m}"
        )));
    }
    Ok(witness)
}

/// The lacunary tail Σ_{j≥2} ψ(jn) a_{jn} cos(jnx − β_{jn}π/2), truncated
/// when the remaining weight is provably below `F2_TAIL_TOL`. The stop rule
/// uses |a_j| ≤ (4/π)/j (variation bound, exact for p = ∞) together with
/// the cheap closed-form ψ-tail majorant.
fn f2_series(spec: &WitnessSpec, _tail: f64) -> Result<Vec<(f64, usize, f64)>> {
    let n = spec.n;
    // Pure second harmonic: for p = 2 the witness is a single harmonic and
    // every j ≥ 2 coefficient vanishes.
    if (spec.p - 2.0).abs() < 1e-14 {
        return Ok(Vec::new());
    }
    let unit = match spec.p {
        p if p == 1.0 => {
            let d = spec.delta.expect("delta resolved by caller");
            (2.0 / (PI * d)).min(4.0 / PI)
        }
        _ => 4.0 / PI,
    };
    let mut terms = Vec::new();
    let mut j = 3usize;
    loop {
        // remaining weight beyond harmonics < j:
        //   Σ_{i≥j} ψ(in)|a_i| ≤ (unit/j) · Σ_{i≥j} ψ(in)
        //                      ≤ (unit/j) · tail_upper((j−1)n) / n
        let remaining =
            unit / j as f64 * spec.psi.tail_upper_bound((j - 1) * n)? / n as f64;
        if remaining <= F2_TAIL_TOL {
            break;
        }
        let amp_psi = spec.psi.value(j * n)?;
        if amp_psi > 0.0 {
            let a_j = phi_harmonic(spec, j)?;
            if a_j != 0.0 {
                let beta_jn = spec.beta.value(j * n)?;
                terms.push((amp_psi * a_j, j * n, beta_jn * PI / 2.0));
            }
        }
        j += 2; // even harmonics vanish
        if j > F2_TERM_CAP {
            return Err(Error::ToleranceNotMet {
                requested: F2_TAIL_TOL,
                achieved: unit / j as f64 * spec.psi.tail_upper_bound((j - 1) * n)? / n as f64,
            });
        }
    }
    Ok(terms)
}

impl ExtremalWitness {
    /// Index of the first alternation point where sign f(x_m) ≠ (−1)^m,
    /// if any.
    fn failed_alternation_index(&self) -> Option<usize> {
        self.points.iter().enumerate().find_map(|(m, &x)| {
            let want = if m % 2 == 0 { 1.0 } else { -1.0 };
            if self.f.eval(x) * want <= 0.0 {
                Some(m)
            } else {
                None
            }
        })
    }

    /// Values f(x_m) at the alternation points.
    pub fn values_at_points(&self) -> Vec<f64> {
        self.points.iter().map(|&x| self.f.eval(x)).collect()
    }
}

/// Certified lower bound for E_n(f)_C: min_m |f(x_m)| after verifying that
/// f alternates in sign at the 2n points (de la Vallée Poussin).
pub fn vallee_poussin_lower(witness: &ExtremalWitness) -> Result<f64> {
    if let Some(m) = witness.failed_alternation_index() {
        return Err(Error::Certification(format!(
            "sign alternation fails at x_{m}; lower bound not valid"
        )));
    }
    Ok(witness
        .values_at_points()
        .iter()
        .map(|v| v.abs())
        .fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{lp_norm, sup_norm, QuadratureSpec};
    use approx::assert_relative_eq;

    fn table_spec(p: f64) -> WitnessSpec {
        WitnessSpec::new(
            2,
            p,
            None,
            PsiSequence::table(vec![1.0, 0.8, 0.3, 0.1, 0.05, 0.02, 0.01, 0.005]).unwrap(),
            BetaSequence::Constant(0.5),
        )
        .unwrap()
    }

    #[test]
    fn phi_eval_known_values() {
        // p = 2, n = 2, t = 0: φ = cos(nt)/√π → 1/√π
        let spec = WitnessSpec::new(
            2,
            2.0,
            None,
            PsiSequence::power_law(3.0).unwrap(),
            BetaSequence::Constant(0.0),
        )
        .unwrap();
        assert_relative_eq!(phi_eval(&spec, 0.0).unwrap(), 1.0 / PI.sqrt(), epsilon = 1e-12);

        // p = ∞, n = 3, t = 0 → sign cos 0 = 1
        let spec = WitnessSpec::new(
            3,
            f64::INFINITY,
            None,
            PsiSequence::power_law(4.0).unwrap(),
            BetaSequence::Constant(0.0),
        )
        .unwrap();
        assert_eq!(phi_eval(&spec, 0.0).unwrap(), 1.0);

        // p = 1, δ = π/4, n = 1, t = 0 → 1/(2δ) = 2/π
        let spec = WitnessSpec::new(
            1,
            1.0,
            Some(PI / 4.0),
            PsiSequence::table(vec![1.0]).unwrap(),
            BetaSequence::Constant(0.0),
        )
        .unwrap();
        assert_relative_eq!(phi_eval(&spec, 0.0).unwrap(), 2.0 / PI, epsilon = 1e-14);
    }

    #[test]
    fn phi_eval_p_one_needs_delta() {
        let spec = WitnessSpec::new(
            1,
            1.0,
            None,
            PsiSequence::table(vec![1.0]).unwrap(),
            BetaSequence::Constant(0.0),
        )
        .unwrap();
        assert!(phi_eval(&spec, 0.0).is_err());
    }

    #[test]
    fn phi_has_unit_norm() {
        // ‖φ‖_p = 1 for p ∈ {1.25, 2, 4, ∞}; p = 1 spike is exact by mass
        let quad = QuadratureSpec {
            panels: 8,
            nodes_per_panel: 24,
            breakpoints: vec![],
        };
        for p in [1.25, 2.0, 4.0, f64::INFINITY] {
            let spec = table_spec(p);
            let phi = phi_function(&spec).unwrap();
            let norm = lp_norm(&phi, p, &quad).unwrap();
            assert_relative_eq!(norm, 1.0, epsilon = 1e-8);
        }
        // spike mass: 2n spikes × (1/(2δ))·(δ/n) = 1
        let mut spec = table_spec(1.0);
        spec.delta = Some(PI / 8.0);
        let phi = phi_function(&spec).unwrap();
        let norm = lp_norm(&phi, 1.0, &QuadratureSpec { panels: 4096, nodes_per_panel: 8, breakpoints: vec![] }).unwrap();
        assert_relative_eq!(norm, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn phi_is_mean_zero_and_orthogonal_to_lower_order() {
        let rule = GaussRule::new(32);
        for p in [1.25, 2.0, 4.0, f64::INFINITY] {
            let spec = table_spec(p);
            let phi = phi_function(&spec).unwrap();
            let n = spec.n;
            let breaks: Vec<f64> = (0..4 * n).map(|m| m as f64 * PI / (2.0 * n as f64)).collect();
            for k in 0..n {
                for trig in [true, false] {
                    if k == 0 && !trig {
                        continue;
                    }
                    let inner = crate::quad::integrate_segmented(
                        &|t: f64| {
                            let w = if trig { (k as f64 * t).cos() } else { (k as f64 * t).sin() };
                            phi.eval(t) * w
                        },
                        0.0,
                        2.0 * PI,
                        &breaks,
                        &rule,
                        2,
                        true,
                    );
                    assert!(
                        inner.abs() < 1e-9,
                        "p={p} k={k} trig={trig}: inner product {inner}"
                    );
                }
            }
        }
    }

    #[test]
    fn phi_harmonics_first_coefficient_is_cos_norm_over_pi() {
        // a_n(φ) = ‖cos‖_{p'}/π for every 1 < p ≤ ∞
        for p in [1.25, 1.5, 2.0, 4.0, f64::INFINITY] {
            let spec = table_spec(p);
            let a = phi_harmonics(&spec, 1).unwrap();
            let expect = cos_pnorm(conjugate_exponent(p).unwrap()).unwrap() / PI;
            assert_relative_eq!(a[0], expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn phi_harmonics_match_direct_quadrature() {
        // closed forms (p = 1, ∞) against a blunt Riemann oracle
        let mut spec = table_spec(1.0);
        spec.delta = Some(PI / 8.0);
        let a = phi_harmonics(&spec, 5).unwrap();
        let m = 4_000_000usize;
        let h = 2.0 * PI / m as f64;
        for j in [1usize, 3, 5] {
            let jn = (j * spec.n) as f64;
            let mut acc = 0.0;
            for i in 0..m {
                let t = i as f64 * h;
                acc += phi_eval(&spec, t).unwrap() * (jn * t).cos();
            }
            let oracle = acc * h / PI;
            assert!(
                (a[j - 1] - oracle).abs() < 2e-5,
                "j={j}: closed {} vs oracle {oracle}",
                a[j - 1]
            );
        }

        let spec = table_spec(f64::INFINITY);
        let a = phi_harmonics(&spec, 4).unwrap();
        assert_relative_eq!(a[0], 4.0 / PI, epsilon = 1e-12);
        assert_eq!(a[1], 0.0);
        assert_relative_eq!(a[2], -4.0 / (3.0 * PI), epsilon = 1e-12);
    }

    #[test]
    fn phi_harmonics_even_vanish_pure_harmonic_for_p2() {
        let spec = table_spec(2.0);
        let a = phi_harmonics(&spec, 4).unwrap();
        assert_relative_eq!(a[0], 1.0 / PI.sqrt(), epsilon = 1e-10);
        for &c in &a[1..] {
            assert!(c.abs() < 1e-10);
        }
    }

    #[test]
    fn alternation_points_spacing() {
        let pts = alternation_points(2, 0.0);
        assert_eq!(pts.len(), 4);
        for (m, x) in pts.iter().enumerate() {
            assert_relative_eq!(*x, m as f64 * PI / 2.0, epsilon = 1e-15);
        }
        let pts = alternation_points(1, 1.0);
        assert_relative_eq!(pts[0], PI / 2.0);
        assert_relative_eq!(pts[1], 3.0 * PI / 2.0);
        let pts = alternation_points(3, 2.0);
        let expect = [
            PI / 3.0,
            2.0 * PI / 3.0,
            PI,
            4.0 * PI / 3.0,
            5.0 * PI / 3.0,
            2.0 * PI,
        ];
        for (x, e) in pts.iter().zip(expect) {
            assert_relative_eq!(*x, e, epsilon = 1e-14);
        }
    }

    #[test]
    fn witness_p2_is_pure_harmonic() {
        let spec = WitnessSpec::new(
            3,
            2.0,
            None,
            PsiSequence::power_law(4.0).unwrap(),
            BetaSequence::Constant(1.0),
        )
        .unwrap();
        let w = build_witness(&spec).unwrap();
        assert!(w.f2_terms.is_empty());
        let amp = spec.psi.value(3).unwrap() / PI.sqrt();
        assert_relative_eq!(w.f1_amplitude, amp, epsilon = 1e-12);
        for t in [0.0, 0.3, 2.0] {
            assert_relative_eq!(
                w.f.eval(t),
                amp * (3.0 * t - PI / 2.0).cos(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn witness_requires_decay_hypothesis() {
        let spec = WitnessSpec::new(
            1,
            2.0,
            None,
            PsiSequence::power_law(1.5).unwrap(),
            BetaSequence::Constant(0.0),
        )
        .unwrap();
        assert!(matches!(
            build_witness(&spec),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn witness_f_equals_f1_plus_f2() {
        let spec = table_spec(f64::INFINITY);
        let w = build_witness(&spec).unwrap();
        for t in [0.0, 0.7, 1.9, 4.4] {
            assert_relative_eq!(
                w.f.eval(t),
                w.f1.eval(t) + w.f2.eval(t),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn witness_p_inf_f1_values_at_points() {
        // F₁(x_m) = (−1)^m (4/π) ψ(n)
        let spec = table_spec(f64::INFINITY);
        let w = build_witness(&spec).unwrap();
        let psi_n = spec.psi.value(spec.n).unwrap();
        for (m, &x) in w.points.iter().enumerate() {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert_relative_eq!(
                w.f1.eval(x),
                sign * 4.0 / PI * psi_n,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn witness_sign_pattern_and_lower_bound() {
        // min_m |f(x_m)| must sit above the certified alternation floor:
        // (‖cos‖_{p'}/π)(ψ(n) − tail) for p > 1, and for p = 1 the same
        // with the spike factor multiplying ψ(n) and ‖cos‖_∞ = 1.
        for p in [1.0, 1.25, 2.0, 4.0, f64::INFINITY] {
            let spec = table_spec(p);
            let w = build_witness(&spec).unwrap();
            let lower = vallee_poussin_lower(&w).unwrap();
            let psi_n = spec.psi.value(spec.n).unwrap();
            let tail = spec.psi.tail(spec.n, 1e-13).unwrap();
            let floor = if p == 1.0 {
                (spike_factor(w.delta.unwrap()) * psi_n - tail) / PI
            } else {
                let c = cos_pnorm(conjugate_exponent(p).unwrap()).unwrap();
                c * (psi_n - tail) / PI
            };
            assert!(
                lower >= floor - 1e-10,
                "p={p}: lower {lower} < floor {floor}"
            );
        }
    }

    #[test]
    fn witness_f2_bounded_by_tail() {
        // ‖F₂‖_C ≤ (‖cos‖_{p'}/π)·Σ_{k>n}ψ(k)
        for p in [1.25, 4.0, f64::INFINITY] {
            let spec = table_spec(p);
            let w = build_witness(&spec).unwrap();
            let tail = spec.psi.tail(spec.n, 1e-13).unwrap();
            let bound = cos_pnorm(conjugate_exponent(p).unwrap()).unwrap() / PI * tail;
            let f2_sup = sup_norm(&w.f2, 16384);
            assert!(
                f2_sup <= bound + 1e-12,
                "p={p}: ‖F2‖ = {f2_sup} > bound {bound}"
            );
        }
    }

    #[test]
    fn witness_f1_closed_form_matches_convolution_quadrature() {
        // F₁(x) = (1/π)∫ φ(x−t)·ψ(n) cos(nt − β_n π/2) dt at pseudo-random x
        let rule = GaussRule::new(32);
        for p in [1.25, 2.0, f64::INFINITY] {
            let spec = table_spec(p);
            let w = build_witness(&spec).unwrap();
            let psi_n = spec.psi.value(spec.n).unwrap();
            let beta_n = spec.beta.value(spec.n).unwrap();
            let n = spec.n;
            // deterministic pseudo-random points
            let mut state = 0x2545F4914F6CDD1Du64;
            for _ in 0..16 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let x = (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 * PI;
                let breaks: Vec<f64> = (0..4 * n)
                    .map(|m| m as f64 * PI / (2.0 * n as f64))
                    .collect();
                let conv = crate::quad::integrate_segmented(
                    &|t: f64| {
                        phi_eval(&spec, x - t).unwrap()
                            * psi_n
                            * (n as f64 * t - beta_n * PI / 2.0).cos()
                    },
                    x - PI,
                    x + PI,
                    &breaks.iter().map(|b| b + x).collect::<Vec<_>>(),
                    &rule,
                    4,
                    true,
                ) / PI;
                assert!(
                    (conv - w.f1.eval(x)).abs() < 1e-9,
                    "p={p}, x={x}: conv {conv} vs F1 {}",
                    w.f1.eval(x)
                );
            }
        }
    }

    #[test]
    fn p1_spike_factor_monotone_to_one() {
        // (2/δ)sin(δ/2) grows toward 1 as δ shrinks
        let mut prev = 0.0;
        for j in 1..=12 {
            let c = spike_factor(PI / 2f64.powi(j));
            assert!(c > prev);
            prev = c;
        }
        assert!((spike_factor(1e-8) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn p1_lower_bounds_increase_as_delta_shrinks() {
        let psi = PsiSequence::power_law(3.0).unwrap();
        let beta = BetaSequence::Constant(0.0);
        let mut prev = 0.0;
        for j in 2..=9 {
            let spec = WitnessSpec::new(2, 1.0, Some(PI / 2f64.powi(j)), psi.clone(), beta.clone())
                .unwrap();
            let w = build_witness(&spec).unwrap();
            let lower = vallee_poussin_lower(&w).unwrap();
            assert!(
                lower > prev - 1e-12,
                "delta=π/2^{j}: lower {lower} below previous {prev}"
            );
            prev = lower;
        }
    }
}
