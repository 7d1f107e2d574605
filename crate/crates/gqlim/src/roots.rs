//! Bracketing scalar root finder used by the optimum search and the
//! phase-matching solver.

use crate::error::{Error, Result};

/// Find a root of `f` inside `[lo, hi]` to absolute tolerance `tol` on x.
///
/// The endpoints must bracket a sign change. Each iteration proposes a
/// secant step and falls back to bisection whenever the proposal leaves the
/// current bracket or fails to shrink it, so convergence is guaranteed while
/// staying superlinear near simple roots.
pub fn find_root<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::Domain(format!(
            "root bracket requires lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "root tolerance must be > 0, got {tol}"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NumericalFailure(format!(
            "root bracket endpoints are not finite: f({a}) = {fa}, f({b}) = {fb}"
        )));
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NumericalFailure(format!(
            "no sign change on [{a}, {b}]: f(a) = {fa}, f(b) = {fb}"
        )));
    }
    for _ in 0..max_iter {
        if b - a <= tol {
            return Ok(0.5 * (a + b));
        }
        // Secant proposal, clamped away from the endpoints; bisection fallback.
        let mut x = b - fb * (b - a) / (fb - fa);
        let margin = 0.01 * (b - a);
        if !x.is_finite() || x <= a + margin || x >= b - margin {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if !fx.is_finite() {
            return Err(Error::NumericalFailure(format!(
                "root search hit a non-finite value: f({x}) = {fx}"
            )));
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Err(Error::NumericalFailure(format!(
        "root search on [{lo}, {hi}] did not reach tolerance {tol} in {max_iter} iterations"
    )))
}
