//! Scalar maximization on a bracket: parabolic steps with a golden-section
//! safeguard. Shared by the norm and exchange-solver extremum searches.

/// Maximize `g` given a bracket a < b < c with g(b) ≥ g(a), g(b) ≥ g(c).
/// Returns (argmax, max) over all evaluated points.
pub(crate) fn refine_bracket_max<F: Fn(f64) -> f64>(g: F, a0: f64, b0: f64, c0: f64) -> (f64, f64) {
    let (mut a, mut b, mut c) = (a0, b0, c0);
    let (mut fa, mut fb, mut fc) = (g(a), g(b), g(c));
    let (mut best_x, mut best_f) = if fa > fb && fa > fc {
        (a, fa)
    } else if fc > fb {
        (c, fc)
    } else {
        (b, fb)
    };
    for _ in 0..80 {
        if c - a < 1e-13 {
            break;
        }
        // stationary point of the parabola through the three points
        let num = (b - a).powi(2) * (fb - fc) - (b - c).powi(2) * (fb - fa);
        let den = (b - a) * (fb - fc) - (b - c) * (fb - fa);
        let mut x = if den.abs() > 1e-300 {
            b - 0.5 * num / den
        } else {
            f64::NAN
        };
        if !(x.is_finite() && x > a && x < c && (x - b).abs() > 1e-15) {
            x = if c - b > b - a {
                b + 0.381_966 * (c - b)
            } else {
                b - 0.381_966 * (b - a)
            };
        }
        let fx = g(x);
        if fx > best_f {
            best_f = fx;
            best_x = x;
        }
        if fx > fb {
            if x > b {
                a = b;
                fa = fb;
            } else {
                c = b;
                fc = fb;
            }
            b = x;
            fb = fx;
        } else if x > b {
            c = x;
            fc = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    (best_x, best_f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_vertex() {
        let (x, f) = refine_bracket_max(|t: f64| 3.0 - (t - 0.7).powi(2), 0.0, 0.5, 2.0);
        assert!((x - 0.7).abs() < 1e-10);
        assert!((f - 3.0).abs() < 1e-14);
    }

    #[test]
    fn finds_cosine_peak() {
        let (x, f) = refine_bracket_max(|t: f64| (5.0 * t).cos(), 1.1, 1.3, 1.4);
        // peak of cos(5t) at t = 2π/5
        assert!((x - 2.0 * std::f64::consts::PI / 5.0).abs() < 1e-9);
        assert!((f - 1.0).abs() < 1e-13);
    }
}
