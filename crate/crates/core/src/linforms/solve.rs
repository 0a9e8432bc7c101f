//! Upper bounds for self-referential inequalities.

use super::{num, LinformsError};
use crate::real::Interval;

const CAP: f64 = 1e300;

/// Certified upper bound for the largest `X ≥ e^{2−shift}` with
/// `X ≤ coef·(log X + shift)²`.
///
/// Iterates `X ← coef·(log X + shift)²` from `X = e^shift` (monotone, up or
/// down) until the relative step drops below 0.01%, then nudges up until
/// `coef·(log U + shift)² < U` is certified. Beyond `e^{2−shift}` the ratio
/// `(log X + shift)²/X` is decreasing, so no solution lies above `U`. The
/// returned interval runs from the last iterate to `U`.
pub fn solve_self_referential(coef: &Interval, shift: &Interval) -> Result<Interval, LinformsError> {
    if !coef.is_positive() {
        return Err(LinformsError::Precondition("coef must be positive".into()));
    }
    let prec = coef.prec().max(shift.prec());
    let g = |x: f64| {
        let t = &num(prec, x).ln() + shift;
        coef * &t.powi(2)
    };
    let mut x = shift.hi_f64().exp().max(1.0);
    for _ in 0..200 {
        let next = g(x).hi_f64();
        if !next.is_finite() || next > CAP {
            return Err(LinformsError::Divergence);
        }
        let done = (next - x).abs() <= 1e-4 * x;
        x = next;
        if done {
            break;
        }
    }
    let floor = (2.0 - shift.lo_f64()).exp();
    let mut step = 1e-9;
    loop {
        let u = (x * (1.0 + step)).max(floor * (1.0 + 1e-12));
        if g(u).hi_f64() < u {
            let lo = g(x).lo_f64().min(x).min(u);
            return Ok(Interval::from_bounds(num(prec, lo).lo().clone(), num(prec, u).hi().clone()));
        }
        step *= 2.0;
        if step > 1.0 {
            return Err(LinformsError::Divergence);
        }
    }
}

/// Largest crossing of `f` on `[lo, hi]`, by geometric bisection.
///
/// `f(x) ≥ 0` marks admissible `x`; the caller asserts that `f` stays
/// negative once it has turned negative. Returns `[a, b]` with `f(a)` not
/// certified negative and `f(b)` certified negative, `b/a − 1 < 1e-10`.
pub fn last_crossing(
    prec: u32,
    lo: f64,
    hi: f64,
    f: impl Fn(&Interval) -> Interval,
) -> Result<Interval, LinformsError> {
    let neg = |x: f64| f(&num(prec, x)).hi_f64() < 0.0;
    if !neg(hi) {
        return Err(LinformsError::NoCrossing(format!("still admissible at {hi:e}")));
    }
    if neg(lo) {
        return Ok(num(prec, lo));
    }
    let (mut a, mut b) = (lo, hi);
    while b / a - 1.0 > 1e-10 {
        let m = (a * b).sqrt();
        if m <= a || m >= b {
            break;
        }
        if neg(m) {
            b = m;
        } else {
            a = m;
        }
    }
    Ok(Interval::from_bounds(num(prec, a).lo().clone(), num(prec, b).hi().clone()))
}
