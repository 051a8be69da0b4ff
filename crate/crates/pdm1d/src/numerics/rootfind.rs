//! Root finding for strictly monotone functions: bracketed Newton with
//! bisection fallback.

use crate::error::{Error, Result};

/// Solve f(x) = target for a strictly increasing f with known derivative.
///
/// The bracket is grown geometrically from `guess` until it straddles the
/// target, then Newton steps are taken inside the bracket; any step that
/// leaves the bracket (or fails to shrink the residual) falls back to
/// bisection, so convergence is guaranteed for monotone f.
pub fn monotone_solve<F, D>(f: F, df: D, target: f64, guess: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let g = |x: f64| f(x) - target;

    let mut lo = guess;
    let mut hi = guess;
    let mut step = 1.0;
    for _ in 0..200 {
        if g(lo) <= 0.0 {
            break;
        }
        lo -= step;
        step *= 2.0;
    }
    step = 1.0;
    for _ in 0..200 {
        if g(hi) >= 0.0 {
            break;
        }
        hi += step;
        step *= 2.0;
    }
    let (mut glo, mut ghi) = (g(lo), g(hi));
    if glo > 0.0 || ghi < 0.0 {
        return Err(Error::domain(format!(
            "target {target} is not bracketed by a monotone function (f({lo}) - t = {glo}, f({hi}) - t = {ghi})"
        )));
    }
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let gx = g(x);
        if gx.abs() <= tol {
            return Ok(x);
        }
        if gx < 0.0 {
            lo = x;
            glo = gx;
        } else {
            hi = x;
            ghi = gx;
        }
        let d = df(x);
        let newton = if d > 0.0 { x - gx / d } else { f64::NAN };
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    let _ = (glo, ghi);
    let gx = g(x);
    if gx.abs() <= tol {
        Ok(x)
    } else {
        Err(Error::numerical(format!(
            "root iteration stalled at x={x}, |f(x)-target|={:.3e} (tol {tol:.3e})",
            gx.abs()
        )))
    }
}
