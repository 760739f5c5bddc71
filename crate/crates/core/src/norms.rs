//! Norms of 2π-periodic functions: L_p by panel quadrature, uniform by
//! grid search with local refinement, and the constant ‖cos t‖_{p'} in
//! closed form.

use crate::error::{Error, Result};
use crate::quad::{integrate_segmented, wrap_into, GaussRule};
use crate::special::ln_gamma;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Smoothness of the evaluator, used to place quadrature panels.
#[derive(Debug, Clone, PartialEq)]
pub enum Smoothness {
    Smooth,
    /// Algebraic kinks at the listed points of [0, 2π); panel boundaries are
    /// pinned there and panels are graded toward them.
    KinkAt(Vec<f64>),
    Discontinuous,
}

/// An evaluable 2π-periodic real function with an optional constant term,
/// evaluated as a0/2 + g(t).
#[derive(Clone)]
pub struct PeriodicFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub a0: f64,
    pub smoothness: Smoothness,
    /// Highest frequency carrying non-negligible energy, when known.
    /// Lets Fourier sampling and extremum grids be sized exactly.
    pub bandwidth: Option<usize>,
}

impl fmt::Debug for PeriodicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicFunction")
            .field("a0", &self.a0)
            .field("smoothness", &self.smoothness)
            .field("bandwidth", &self.bandwidth)
            .finish_non_exhaustive()
    }
}

impl PeriodicFunction {
    pub fn from_fn<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        PeriodicFunction {
            eval: Arc::new(f),
            a0: 0.0,
            smoothness: Smoothness::Smooth,
            bandwidth: None,
        }
    }

    pub fn with_a0(mut self, a0: f64) -> Self {
        self.a0 = a0;
        self
    }

    pub fn with_smoothness(mut self, s: Smoothness) -> Self {
        self.smoothness = s;
        self
    }

    pub fn with_bandwidth(mut self, bw: usize) -> Self {
        self.bandwidth = Some(bw);
        self
    }

    /// A single harmonic c·cos(freq·t − phase).
    pub fn harmonic(c: f64, freq: usize, phase: f64) -> Self {
        PeriodicFunction::from_fn(move |t| c * (freq as f64 * t - phase).cos())
            .with_bandwidth(freq)
    }

    /// A finite cosine series Σ amp_i·cos(freq_i·t − phase_i).
    pub fn cosine_series(terms: Vec<(f64, usize, f64)>) -> Self {
        let bw = terms.iter().map(|t| t.1).max().unwrap_or(0);
        PeriodicFunction::from_fn(move |t| {
            terms
                .iter()
                .map(|&(a, k, ph)| a * (k as f64 * t - ph).cos())
                .sum()
        })
        .with_bandwidth(bw)
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        self.a0 / 2.0 + (self.eval)(t)
    }

    /// Pointwise difference f − g; keeps the coarser smoothness hint.
    pub fn minus(&self, other: &PeriodicFunction) -> PeriodicFunction {
        let a = self.clone();
        let b = other.clone();
        let smoothness = match (&self.smoothness, &other.smoothness) {
            (Smoothness::Smooth, s) | (s, Smoothness::Smooth) => s.clone(),
            (Smoothness::Discontinuous, _) | (_, Smoothness::Discontinuous) => {
                Smoothness::Discontinuous
            }
            (Smoothness::KinkAt(x), Smoothness::KinkAt(y)) => {
                let mut pts = x.clone();
                pts.extend_from_slice(y);
                Smoothness::KinkAt(pts)
            }
        };
        let bandwidth = match (self.bandwidth, other.bandwidth) {
            (Some(p), Some(q)) => Some(p.max(q)),
            _ => None,
        };
        PeriodicFunction {
            eval: Arc::new(move |t| a.eval(t) - b.eval(t)),
            a0: 0.0,
            smoothness,
            bandwidth,
        }
    }

    fn breakpoints_in(&self, lo: f64) -> Vec<f64> {
        match &self.smoothness {
            Smoothness::KinkAt(pts) => pts.iter().map(|&p| wrap_into(p, lo)).collect(),
            _ => Vec::new(),
        }
    }
}

/// Panel layout for the quadrature-based operations.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Extra panel boundaries, in addition to the function's own kinks.
    pub breakpoints: Vec<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panels: 8,
            nodes_per_panel: 16,
            breakpoints: Vec::new(),
        }
    }
}

/// ‖cos t‖_{p'} = (∫_{−π}^{π} |cos t|^{p'} dt)^{1/p'} in closed form:
///
///   ∫_{−π}^{π} |cos t|^q dt = 2√π Γ((q+1)/2) / Γ(q/2 + 1),
///
/// evaluated through log-gamma. `p' = ∞` gives 1.
pub fn cos_pnorm(p_prime: f64) -> Result<f64> {
    if p_prime.is_infinite() && p_prime > 0.0 {
        return Ok(1.0);
    }
    if !(p_prime >= 1.0) {
        return Err(Error::Domain(format!(
            "cos_pnorm requires p' >= 1 or p' = inf, got {p_prime}"
        )));
    }
    let q = p_prime;
    let log_integral =
        (2.0 * PI.sqrt()).ln() + ln_gamma((q + 1.0) / 2.0) - ln_gamma(q / 2.0 + 1.0);
    Ok((log_integral / q).exp())
}

/// The conjugate exponent p' with 1/p + 1/p' = 1; p = 1 ↔ p' = ∞.
pub fn conjugate_exponent(p: f64) -> Result<f64> {
    if p.is_infinite() && p > 0.0 {
        return Ok(1.0);
    }
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("p must be in [1, inf], got {p}")));
    }
    if p == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(p / (p - 1.0))
}

/// (∫_{−π}^{π} |f|^p dt)^{1/p}. `p = ∞` is redirected to [`sup_norm`] with
/// the default grid. Quadrature error is controlled by panel doubling.
pub fn lp_norm(f: &PeriodicFunction, p: f64, quad: &QuadratureSpec) -> Result<f64> {
    Ok(lp_norm_with_error(f, p, quad)?.0)
}

/// As [`lp_norm`], also returning the panel-doubling error estimate on the
/// underlying integral.
pub fn lp_norm_with_error(f: &PeriodicFunction, p: f64, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    if p.is_infinite() && p > 0.0 {
        return Ok((sup_norm(f, default_sup_grid(f)), 0.0));
    }
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("lp_norm requires p >= 1, got {p}")));
    }
    let mut breaks = f.breakpoints_in(-PI);
    for &b in &quad.breakpoints {
        breaks.push(wrap_into(b, -PI));
    }
    let graded = matches!(f.smoothness, Smoothness::KinkAt(_)) || !quad.breakpoints.is_empty();
    let rule = GaussRule::new(quad.nodes_per_panel.max(4));
    let g = |t: f64| f.eval(t).abs().powf(p);
    let coarse = integrate_segmented(&g, -PI, PI, &breaks, &rule, quad.panels.max(1), graded);
    let fine = integrate_segmented(&g, -PI, PI, &breaks, &rule, 2 * quad.panels.max(1), graded);
    let err = (fine - coarse).abs();
    Ok((fine.max(0.0).powf(1.0 / p), err))
}

/// Default uniform-grid size for [`sup_norm`], scaled by the bandwidth hint.
pub fn default_sup_grid(f: &PeriodicFunction) -> usize {
    4096 * f.bandwidth.unwrap_or(1).clamp(1, 64)
}

/// max |f| over [0, 2π): dense uniform grid followed by parabolic
/// refinement around each cyclic local maximum of |f|. Every candidate is
/// re-evaluated through `f`, so the result never exceeds the true sup and
/// is nondecreasing under grid doubling.
pub fn sup_norm(f: &PeriodicFunction, grid_size: usize) -> f64 {
    let m = grid_size.max(4);
    let h = 2.0 * PI / m as f64;
    let vals: Vec<f64> = (0..m).map(|i| f.eval(i as f64 * h).abs()).collect();
    let mut best = 0.0_f64;
    for i in 0..m {
        let prev = vals[(i + m - 1) % m];
        let next = vals[(i + 1) % m];
        let v = vals[i];
        best = best.max(v);
        if v >= prev && v >= next {
            let x = i as f64 * h;
            let refined = refine_abs_max(f, x - h, x, x + h);
            best = best.max(refined);
        }
    }
    best
}

/// Parabolic refinement of |f| around a grid local maximum.
fn refine_abs_max(f: &PeriodicFunction, lo: f64, mid: f64, hi: f64) -> f64 {
    crate::extremum::refine_bracket_max(|t| f.eval(t).abs(), lo, mid, hi).1
}
