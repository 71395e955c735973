//! Sign-change scanning and bisection.


use crate::error::{Error, Result};

/// Bisection on a bracket with `f(lo)` and `f(hi)` of opposite sign (or zero).
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::NoRoot { lo, hi });
    }
    for _ in 0..200 {
        if (hi - lo).abs() <= xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scans `n` equal sub-intervals of `[lo, hi]` for the first sign change, then
/// bisects it down to `xtol`.
pub fn scan_bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, n: usize, xtol: f64) -> Result<f64> {
    let n = n.max(1);
    let step = (hi - lo) / n as f64;
    let mut a = lo;
    let mut fa = f(a);
    if fa == 0.0 {
        return Ok(a);
    }
    for k in 1..=n {
        let b = if k == n { hi } else { lo + step * k as f64 };
        let fb = f(b);
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.is_finite() && fb.is_finite() && fa.signum() != fb.signum() {
            return bisect(&mut f, a, b, xtol);
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoRoot { lo, hi })
}
