use crate::error::{Error, Result};

/// Newton iteration for a monotone residual, safeguarded by bisection.
///
/// `f` returns `(residual, derivative)`. The root must lie in `(lo, hi)`;
/// `increasing` states the monotonicity of the residual so the bracket can be
/// maintained without evaluating at the (possibly singular) endpoints.
pub(crate) fn newton_bracketed<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x0: f64,
    increasing: bool,
    tol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let mut x = if x0 > lo && x0 < hi && x0.is_finite() {
        x0
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..max_iter {
        let (r, d) = f(x);
        if r == 0.0 {
            return Ok(x);
        }
        let delta = r / d;
        if delta.is_finite() && delta.abs() <= tol * x.abs().max(1.0) {
            return Ok(x - delta);
        }
        if (r > 0.0) == increasing {
            hi = x;
        } else {
            lo = x;
        }
        let mut next = x - delta;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= tol * x.abs().max(1.0) || hi - lo <= tol * x.abs().max(1.0) {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        method: "safeguarded Newton",
        iterations: max_iter,
    })
}
