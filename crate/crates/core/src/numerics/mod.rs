//! Shared numerical kernels: adaptive Runge-Kutta integration, adaptive
//! quadrature, and the Airy functions Ai, Ai'.

pub mod airy;
pub mod ode;
pub mod quad;

pub use airy::{airy_ai, airy_ai_prime};
pub use ode::{integrate, OdeProblem, OdeTrajectory};
pub use quad::adaptive_quad;

/// Piecewise-linear interpolation of `(xs, ys)` at `x`. The abscissas must
/// be monotone (either direction); values outside the range clamp to the
/// nearest endpoint.
pub fn interp_linear(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "interp_linear needs at least two points");
    let ascending = xs[xs.len() - 1] >= xs[0];
    // binary search for the bracketing segment in ascending orientation
    let pos = |i: usize| if ascending { xs[i] } else { -xs[i] };
    let xq = if ascending { x } else { -x };
    if xq <= pos(0) {
        return ys[0];
    }
    if xq >= pos(xs.len() - 1) {
        return ys[ys.len() - 1];
    }
    let (mut lo, mut hi) = (0usize, xs.len() - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if pos(mid) <= xq {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] + t * (ys[hi] - ys[lo])
}

#[cfg(test)]
mod tests {
    use super::interp_linear;

    #[test]
    fn interp_ascending_and_descending() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [0.0, 10.0, 40.0];
        assert_eq!(interp_linear(&xs, &ys, 0.5), 5.0);
        assert_eq!(interp_linear(&xs, &ys, 1.5), 25.0);
        assert_eq!(interp_linear(&xs, &ys, -1.0), 0.0);
        assert_eq!(interp_linear(&xs, &ys, 3.0), 40.0);

        let xsd = [2.0, 1.0, 0.0];
        let ysd = [40.0, 10.0, 0.0];
        assert_eq!(interp_linear(&xsd, &ysd, 0.5), 5.0);
        assert_eq!(interp_linear(&xsd, &ysd, 1.5), 25.0);
    }
}
