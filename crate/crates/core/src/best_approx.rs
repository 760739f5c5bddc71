//! Fourier partial sums and true best uniform approximation by
//! trigonometric polynomials of order n−1, via a Remez exchange with
//! equioscillation certification.

use crate::error::{Error, Result};
use crate::extremum::refine_bracket_max;
use crate::norms::{default_sup_grid, sup_norm, PeriodicFunction, QuadratureSpec};
use std::f64::consts::PI;

pub const DEFAULT_REMEZ_TOL: f64 = 1e-10;
pub const DEFAULT_REMEZ_MAX_ITER: usize = 50;

/// T(x) = a_0/2 + Σ_{k=1}^{order} (a_k cos kx + b_k sin kx).
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    /// Cosine coefficients a_0..=a_order.
    pub a: Vec<f64>,
    /// Sine coefficients b_1..=b_order.
    pub b: Vec<f64>,
}

impl TrigPolynomial {
    pub fn zero(order: usize) -> Self {
        TrigPolynomial {
            a: vec![0.0; order + 1],
            b: vec![0.0; order],
        }
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = self.a[0] / 2.0;
        for k in 1..self.a.len() {
            let (s, c) = (k as f64 * x).sin_cos();
            acc += self.a[k] * c + self.b[k - 1] * s;
        }
        acc
    }

    /// Largest coefficient magnitude, excluding the constant term.
    pub fn oscillating_magnitude(&self) -> f64 {
        self.a[1..]
            .iter()
            .chain(&self.b)
            .fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn to_periodic(&self) -> PeriodicFunction {
        let p = self.clone();
        let order = self.order();
        PeriodicFunction::from_fn(move |t| p.eval(t)).with_bandwidth(order.max(1))
    }
}

/// Coefficients of the partial Fourier sum S_order(f) by uniform sampling.
///
/// The rectangle rule on a uniform grid is the right quadrature here: it is
/// exact for band-limited integrands once the grid resolves the spectrum.
/// `quad.panels * quad.nodes_per_panel` acts as a floor on the sample count;
/// when `f` carries no bandwidth hint the grid is doubled until the
/// coefficients stabilize.
pub fn fourier_partial_sum(
    f: &PeriodicFunction,
    order: usize,
    quad: &QuadratureSpec,
) -> TrigPolynomial {
    let floor = (quad.panels * quad.nodes_per_panel).max(16);
    match f.bandwidth {
        Some(bw) => {
            let m = (2 * (bw + order + 1)).max(floor);
            fourier_by_sampling(f, order, m)
        }
        None => {
            let mut m = floor.max(512).max(16 * (order + 1));
            let mut cur = fourier_by_sampling(f, order, m);
            for _ in 0..8 {
                m *= 2;
                let next = fourier_by_sampling(f, order, m);
                let scale = 1.0 + next.a.iter().chain(&next.b).fold(0.0_f64, |s, c| s.max(c.abs()));
                let diff = cur
                    .a
                    .iter()
                    .zip(&next.a)
                    .chain(cur.b.iter().zip(&next.b))
                    .fold(0.0_f64, |d, (p, q)| d.max((p - q).abs()));
                cur = next;
                if diff <= 1e-13 * scale {
                    break;
                }
            }
            cur
        }
    }
}

fn fourier_by_sampling(f: &PeriodicFunction, order: usize, m: usize) -> TrigPolynomial {
    let h = 2.0 * PI / m as f64;
    let samples: Vec<f64> = (0..m).map(|j| f.eval(j as f64 * h)).collect();
    let mut poly = TrigPolynomial::zero(order);
    for k in 0..=order {
        let (mut sc, mut ss) = (0.0, 0.0);
        for (j, &v) in samples.iter().enumerate() {
            let (s, c) = (k as f64 * j as f64 * h).sin_cos();
            sc += v * c;
            ss += v * s;
        }
        poly.a[k] = 2.0 * sc / m as f64;
        if k >= 1 {
            poly.b[k - 1] = 2.0 * ss / m as f64;
        }
    }
    poly
}

/// ‖f − S_order(f)‖_C.
pub fn remainder_sup(f: &PeriodicFunction, order: usize) -> f64 {
    let s = fourier_partial_sum(f, order, &QuadratureSpec::default());
    let diff = f.minus(&s.to_periodic());
    sup_norm(&diff, default_sup_grid(f).max(4096))
}

/// Outcome of the exchange solve.
#[derive(Debug, Clone)]
pub struct RemezResult {
    pub best: TrigPolynomial,
    /// Certified estimate of E_n(f): max |f − best| over the located extrema.
    pub value: f64,
    /// Final alternation points (2n of them on a certified run).
    pub extrema: Vec<f64>,
    /// The leveled reference error h from the final linear solve.
    pub leveled_error: f64,
    pub iterations: usize,
    pub certified: bool,
    /// |h| per iteration; nondecreasing for a healthy exchange.
    pub level_history: Vec<f64>,
}

/// Best uniform approximation of `f` by trigonometric polynomials of order
/// n−1, starting from 2n equispaced reference points.
pub fn remez_trig(f: &PeriodicFunction, n: usize, tol: f64, max_iter: usize) -> Result<RemezResult> {
    remez_trig_from(f, n, None, tol, max_iter)
}

/// As [`remez_trig`] with an explicit initial reference (2n strictly
/// increasing points spanning less than one period). The alternation set of
/// a class witness is the natural choice.
pub fn remez_trig_from(
    f: &PeriodicFunction,
    n: usize,
    initial_reference: Option<&[f64]>,
    tol: f64,
    max_iter: usize,
) -> Result<RemezResult> {
    if n == 0 {
        return Err(Error::Domain("remez requires n >= 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain("remez tolerance must be positive".into()));
    }
    let mut reference: Vec<f64> = match initial_reference {
        Some(pts) => {
            if pts.len() != 2 * n {
                return Err(Error::Config(format!(
                    "initial reference needs exactly {} points, got {}",
                    2 * n,
                    pts.len()
                )));
            }
            let mut v = pts.to_vec();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if v.windows(2).any(|w| w[1] - w[0] < 1e-12) || v[2 * n - 1] - v[0] >= 2.0 * PI {
                return Err(Error::Config(
                    "initial reference must be strictly increasing within one period".into(),
                ));
            }
            v
        }
        None => (0..2 * n).map(|i| i as f64 * PI / n as f64).collect(),
    };

    let scale = reference_scale(f);
    let mut history = Vec::new();
    let mut last: Option<(TrigPolynomial, f64, Vec<Extremum>, f64)> = None;
    let mut certified = false;
    let mut iterations = 0;

    for iter in 1..=max_iter {
        iterations = iter;
        let (poly, h) = solve_leveled_system(f, n, &reference)?;
        history.push(h.abs());
        let e = |x: f64| f.eval(x) - poly.eval(x);

        let mut extrema = locate_extrema(&e, n, f, 1);
        if extrema.len() < 2 * n {
            extrema = locate_extrema(&e, n, f, 4);
        }
        let gmax = extrema
            .iter()
            .map(|p| p.value.abs())
            .fold(0.0_f64, f64::max);

        // f already in the approximant space: zero error, trivially optimal.
        if gmax <= 1e-13 * scale.max(1e-300) {
            return Ok(RemezResult {
                best: poly,
                value: 0.0,
                extrema: reference,
                leveled_error: h,
                iterations,
                certified: true,
                level_history: history,
            });
        }

        if extrema.len() < 2 * n {
            last = Some((poly, h, extrema, gmax));
            break;
        }
        reduce_to_alternation(&mut extrema, 2 * n);

        let converged = (gmax - h.abs()) <= tol * gmax;
        reference = extrema.iter().map(|p| p.x).collect();
        last = Some((poly, h, extrema, gmax));
        if converged {
            certified = true;
            break;
        }
    }

    let (poly, h, extrema, gmax) = last.ok_or_else(|| {
        Error::Certification("exchange produced no iterations".into())
    })?;
    let alternating = extrema.len() >= 2 * n && signs_alternate(&extrema);
    Ok(RemezResult {
        best: poly,
        value: gmax,
        extrema: extrema.iter().map(|p| p.x).collect(),
        leveled_error: h,
        iterations,
        certified: certified && alternating,
        level_history: history,
    })
}

#[derive(Debug, Clone, Copy)]
struct Extremum {
    x: f64,
    value: f64,
}

fn signs_alternate(pts: &[Extremum]) -> bool {
    if pts.len() < 2 {
        return false;
    }
    pts.iter()
        .zip(pts.iter().cycle().skip(1))
        .take(pts.len())
        .all(|(p, q)| p.value * q.value < 0.0)
}

fn reference_scale(f: &PeriodicFunction) -> f64 {
    (0..64)
        .map(|i| f.eval(i as f64 * PI / 32.0).abs())
        .fold(0.0_f64, f64::max)
}

/// Solve for the 2n−1 coefficients of T and the level h from
/// T(x_i) + (−1)^i h = f(x_i) on the 2n reference points.
fn solve_leveled_system(
    f: &PeriodicFunction,
    n: usize,
    reference: &[f64],
) -> Result<(TrigPolynomial, f64)> {
    let dim = 2 * n;
    let mut matrix = vec![vec![0.0; dim]; dim];
    let mut rhs = vec![0.0; dim];
    for (i, &x) in reference.iter().enumerate() {
        let row = &mut matrix[i];
        row[0] = 0.5;
        for k in 1..n {
            let (s, c) = (k as f64 * x).sin_cos();
            row[k] = c;
            row[n - 1 + k] = s;
        }
        row[dim - 1] = if i % 2 == 0 { 1.0 } else { -1.0 };
        rhs[i] = f.eval(x);
    }
    let sol = solve_partial_pivot(&mut matrix, &mut rhs)?;
    let mut poly = TrigPolynomial::zero(n.saturating_sub(1));
    poly.a[0] = sol[0];
    for k in 1..n {
        poly.a[k] = sol[k];
        poly.b[k - 1] = sol[n - 1 + k];
    }
    Ok((poly, sol[dim - 1]))
}

/// In-place Gaussian elimination with partial pivoting.
fn solve_partial_pivot(a: &mut [Vec<f64>], b: &mut [f64]) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col].abs() < 1e-300 {
            return Err(Error::Certification(
                "singular reference system (coincident points?)".into(),
            ));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}

/// Locate the cyclic local extrema of the error on a dense grid, refining
/// each to convergence, then collapse consecutive same-sign candidates so
/// the survivors alternate in sign cyclically.
fn locate_extrema<F: Fn(f64) -> f64>(
    e: &F,
    n: usize,
    f: &PeriodicFunction,
    densify: usize,
) -> Vec<Extremum> {
    let effective_bw = f.bandwidth.unwrap_or(4 * n).clamp(n, 256);
    let m = (64 * effective_bw * densify).max(64);
    let h = 2.0 * PI / m as f64;
    let vals: Vec<f64> = (0..m).map(|i| e(i as f64 * h)).collect();

    let mut candidates: Vec<Extremum> = Vec::new();
    for i in 0..m {
        let prev = vals[(i + m - 1) % m].abs();
        let next = vals[(i + 1) % m].abs();
        let v = vals[i].abs();
        if v >= prev && v >= next && v > 0.0 {
            let x = i as f64 * h;
            let sign = vals[i].signum();
            let (xr, vr) = refine_bracket_max(|t| sign * e(t), x - h, x, x + h);
            candidates.push(Extremum {
                x: crate::quad::wrap_into(xr, 0.0),
                value: sign * vr,
            });
        }
    }
    if candidates.is_empty() {
        return candidates;
    }
    candidates.sort_by(|p, q| p.x.partial_cmp(&q.x).unwrap());
    candidates.dedup_by(|p, q| (p.x - q.x).abs() < 1e-12);

    // collapse same-sign runs, keeping the largest magnitude
    let mut collapsed: Vec<Extremum> = Vec::with_capacity(candidates.len());
    for cand in candidates {
        match collapsed.last_mut() {
            Some(prev) if prev.value.signum() == cand.value.signum() => {
                if cand.value.abs() > prev.value.abs() {
                    *prev = cand;
                }
            }
            _ => collapsed.push(cand),
        }
    }
    // cyclic wrap: first and last must differ in sign
    while collapsed.len() > 1
        && collapsed[0].value.signum() == collapsed.last().unwrap().value.signum()
    {
        let first = collapsed[0];
        let last = *collapsed.last().unwrap();
        if first.value.abs() >= last.value.abs() {
            collapsed.pop();
        } else {
            collapsed.remove(0);
        }
    }
    collapsed
}

/// Trim an alternating cyclic candidate list down to `target` points,
/// dropping the smallest magnitudes while preserving alternation.
fn reduce_to_alternation(pts: &mut Vec<Extremum>, target: usize) {
    while pts.len() > target {
        let len = pts.len();
        let min_idx = (0..len)
            .min_by(|&i, &j| {
                pts[i]
                    .value
                    .abs()
                    .partial_cmp(&pts[j].value.abs())
                    .unwrap()
            })
            .unwrap();
        // removing one point leaves its neighbors same-signed; drop the
        // smaller of the two to restore alternation
        let left = (min_idx + len - 1) % len;
        let right = (min_idx + 1) % len;
        let drop_second = if pts[left].value.abs() <= pts[right].value.abs() {
            left
        } else {
            right
        };
        let mut order = [min_idx, drop_second];
        order.sort_unstable();
        pts.remove(order[1]);
        pts.remove(order[0]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn partial_sum_orthogonal_to_higher_harmonic() {
        // S_1(cos 3t) = 0
        let f = PeriodicFunction::harmonic(1.0, 3, 0.0);
        let s = fourier_partial_sum(&f, 1, &quad());
        for c in s.a.iter().chain(&s.b) {
            assert!(c.abs() < 1e-12, "coefficient {c} not zero");
        }
    }

    #[test]
    fn partial_sum_reproduces_low_order() {
        // S_1(1 + cos t) = 1 + cos t
        let f = PeriodicFunction::from_fn(|t: f64| 1.0 + t.cos()).with_bandwidth(1);
        let s = fourier_partial_sum(&f, 1, &quad());
        assert_relative_eq!(s.a[0], 2.0, epsilon = 1e-12);
        assert_relative_eq!(s.a[1], 1.0, epsilon = 1e-12);
        assert!(s.b[0].abs() < 1e-12);
        for t in [0.0, 1.0, 2.5] {
            assert_relative_eq!(s.eval(t), f.eval(t), epsilon = 1e-12);
        }
    }

    #[test]
    fn partial_sum_without_bandwidth_hint_stabilizes() {
        let f = PeriodicFunction::from_fn(|t: f64| (2.0 * t).cos() + 0.5 * (7.0 * t).sin());
        let s = fourier_partial_sum(&f, 7, &quad());
        assert_relative_eq!(s.a[2], 1.0, epsilon = 1e-11);
        assert_relative_eq!(s.b[6], 0.5, epsilon = 1e-11);
    }

    #[test]
    fn remainder_sup_of_resolved_function_is_zero() {
        let f = PeriodicFunction::harmonic(1.0, 3, 0.0);
        assert!(remainder_sup(&f, 3) < 1e-11);
    }

    #[test]
    fn remez_pure_harmonic_oracle() {
        // E_n(cos Nt) = 1 for n <= N: the error cos Nt equioscillates.
        let f = PeriodicFunction::harmonic(1.0, 3, 0.0);
        let res = remez_trig(&f, 3, DEFAULT_REMEZ_TOL, DEFAULT_REMEZ_MAX_ITER).unwrap();
        assert!(res.certified);
        assert_relative_eq!(res.value, 1.0, epsilon = 1e-10);
        assert!(res.best.oscillating_magnitude() < 1e-9);
        assert!(res.extrema.len() >= 6);
    }

    #[test]
    fn remez_shift_invariance() {
        // adding any T_{n-1} leaves the value unchanged
        let n = 2;
        let base = PeriodicFunction::harmonic(0.7, 2, 0.4);
        let shifted =
            PeriodicFunction::from_fn(|t: f64| 0.7 * (2.0 * t - 0.4).cos() + 0.3 + 1.2 * t.sin())
                .with_bandwidth(2);
        let v0 = remez_trig(&base, n, DEFAULT_REMEZ_TOL, 50).unwrap().value;
        let v1 = remez_trig(&shifted, n, DEFAULT_REMEZ_TOL, 50).unwrap().value;
        assert_relative_eq!(v0, 0.7, epsilon = 1e-9);
        assert_relative_eq!(v1, v0, epsilon = 1e-9);
    }

    #[test]
    fn remez_scale_invariance() {
        let f = PeriodicFunction::harmonic(1.0, 4, 0.9);
        let g = PeriodicFunction::harmonic(-3.5, 4, 0.9);
        let vf = remez_trig(&f, 4, DEFAULT_REMEZ_TOL, 50).unwrap().value;
        let vg = remez_trig(&g, 4, DEFAULT_REMEZ_TOL, 50).unwrap().value;
        assert_relative_eq!(vg, 3.5 * vf, max_relative = 1e-9);
    }

    #[test]
    fn remez_polynomial_input_is_exact() {
        // f ∈ T_1, approximants of order 1: zero error, certified
        let f = PeriodicFunction::from_fn(|t: f64| 0.3 + 0.2 * t.sin()).with_bandwidth(1);
        let res = remez_trig(&f, 2, DEFAULT_REMEZ_TOL, 50).unwrap();
        assert!(res.certified);
        assert_eq!(res.value, 0.0);
        for t in [0.0, 1.0, 4.0] {
            assert_relative_eq!(res.best.eval(t), f.eval(t), epsilon = 1e-11);
        }
    }

    #[test]
    fn remez_level_history_is_nondecreasing() {
        let f = PeriodicFunction::from_fn(|t: f64| (3.0 * t).cos() + 0.4 * (5.0 * t).sin())
            .with_bandwidth(5);
        let res = remez_trig(&f, 2, DEFAULT_REMEZ_TOL, 50).unwrap();
        assert!(res.certified);
        for w in res.level_history.windows(2) {
            assert!(w[1] >= w[0] - 1e-12 * w[1].abs().max(1.0));
        }
    }

    #[test]
    fn remez_handles_superposed_ripple() {
        // dominant lobe at the target frequency plus a fast small ripple:
        // the reduction step must keep 2n large alternating extrema
        let f = PeriodicFunction::from_fn(|t: f64| (2.0 * t).cos() + 0.012 * (41.0 * t).cos())
            .with_bandwidth(41);
        let res = remez_trig(&f, 2, 1e-9, 80).unwrap();
        assert!(res.certified);
        // alternation sandwich at the main-lobe points: 0.988 ≤ E ≤ 1.012
        assert!(
            res.value >= 0.988 - 1e-9 && res.value <= 1.012 + 1e-9,
            "value {}",
            res.value
        );
        assert!(res.extrema.len() >= 4);
    }

    #[test]
    fn remez_rejects_bad_configs() {
        let f = PeriodicFunction::harmonic(1.0, 1, 0.0);
        assert!(remez_trig(&f, 0, 1e-10, 10).is_err());
        assert!(remez_trig(&f, 1, -1.0, 10).is_err());
        let bad_ref = [0.0, 0.0, 1.0, 2.0];
        assert!(remez_trig_from(&f, 2, Some(&bad_ref), 1e-10, 10).is_err());
    }

    #[test]
    fn tiny_amplitudes_stay_relative() {
        let f = PeriodicFunction::harmonic(4.2e-9, 5, 1.3);
        let res = remez_trig(&f, 5, DEFAULT_REMEZ_TOL, 50).unwrap();
        assert!(res.certified);
        assert_relative_eq!(res.value, 4.2e-9, max_relative = 1e-9);
    }
}
