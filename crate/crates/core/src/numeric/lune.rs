//! Areas bounded by a level curve `cos(chi) = x(s)` on a sphere, swept in the
//! height coordinate `s`.
//!
//! The integrand `2 arccos(x)` is clamped to `0` for `x > 1` and `2 pi` for
//! `x < -1`. Breakpoints are the heights where `|x| = 1`; between them the
//! integrand is either constant or has square-root ends, which a cosine
//! substitution smooths out before adaptive quadrature.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use super::quadrature::integrate;

const MAX_PANELS: usize = 400;

/// `2 arccos(clamp(x))`.
pub fn sweep(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    2.0 * x.clamp(-1.0, 1.0).acos()
}

fn sorted_inside(breaks: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&s| s > a && s < b).collect();
    pts.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(pts.len() + 2);
    out.push(a);
    out.extend(pts);
    out.push(b);
    out
}

/// `int_u^v g(s) ds` through `s = (u+v)/2 - (v-u)/2 cos(tau)`.
fn smoothed<F: Fn(f64) -> f64>(g: &F, u: f64, v: f64, tol: f64) -> (f64, f64) {
    let mid = 0.5 * (u + v);
    let half = 0.5 * (v - u);
    let r = integrate(|tau| g(mid - half * tau.cos()) * half * tau.sin(), 0.0, PI, tol, MAX_PANELS);
    (r.value, r.error)
}

/// `int_a^b 2 arccos(clamp(x(s))) ds` with `a <= b`. Returns (value, error).
pub fn lune_area<F: Fn(f64) -> f64>(x: F, a: f64, b: f64, breaks: &[f64], tol: f64) -> (f64, f64) {
    if b <= a {
        return (0.0, 0.0);
    }
    let pts = sorted_inside(breaks, a, b);
    let nseg = (pts.len() - 1) as f64;
    let g = |s: f64| sweep(x(s));
    let mut total = 0.0;
    let mut err = 0.0;
    for w in pts.windows(2) {
        let (u, v) = (w[0], w[1]);
        let xm = x(0.5 * (u + v));
        if xm > 1.0 {
            continue;
        }
        if xm < -1.0 {
            total += 2.0 * PI * (v - u);
            continue;
        }
        let (val, e) = smoothed(&g, u, v, tol / nseg);
        total += val;
        err += e;
    }
    (total, err)
}

/// Imaginary part of the continued area at a base height `c` that lies where
/// `|x(c)| > 1`: `int 2 arccosh|x| ds` from `c` to the nearest breakpoint,
/// taking whichever side gives the smaller action. `None` if `|x(c)| <= 1`
/// or no breakpoint exists.
pub fn lune_imag<F: Fn(f64) -> f64>(x: F, c: f64, breaks: &[f64], tol: f64) -> Option<f64> {
    if x(c).abs() <= 1.0 {
        return None;
    }
    let up = breaks.iter().copied().filter(|&s| s > c).fold(f64::INFINITY, f64::min);
    let down = breaks.iter().copied().filter(|&s| s < c).fold(f64::NEG_INFINITY, f64::max);
    let g = |s: f64| 2.0 * x(s).abs().max(1.0).acosh();
    let mut best: Option<f64> = None;
    for (u, v) in [(c, up), (down, c)] {
        if !u.is_finite() || !v.is_finite() {
            continue;
        }
        let (val, _) = smoothed(&g, u, v, tol);
        best = Some(best.map_or(val, |b: f64| b.min(val)));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_sphere() {
        // x = 0 everywhere: chi = pi / 2 at every height, so half of 4 pi r
        let r: f64 = 3.0;
        let (v, _) = lune_area(|_| 0.0, -r, r, &[], 1e-12);
        assert!((v - 2.0 * PI * r).abs() < 1e-10);
    }

    #[test]
    fn constant_segments() {
        let x = |s: f64| if s < 1.0 { -2.0 } else { 2.0 };
        let (v, _) = lune_area(x, 0.0, 3.0, &[1.0], 1e-12);
        assert!((v - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn sqrt_ends() {
        // x = s on [-1, 1]: int 2 arccos(s) ds = 2 pi
        let (v, _) = lune_area(|s| s, -1.0, 1.0, &[-1.0, 1.0], 1e-12);
        assert!((v - 2.0 * PI).abs() < 1e-11);
        let (v, _) = lune_area(|s| s, -2.0, 2.0, &[-1.0, 1.0], 1e-12);
        assert!((v - 2.0 * PI - 2.0 * PI).abs() < 1e-11);
    }

    #[test]
    fn imaginary_action() {
        // x = s for s > 1: int_1^c 2 arccosh(s) ds
        let c: f64 = 2.5;
        let want = 2.0 * (c * c.acosh() - (c * c - 1.0).sqrt());
        let got = lune_imag(|s| s, c, &[-1.0, 1.0], 1e-12).unwrap();
        assert!((got - want).abs() < 1e-10);
        assert!(lune_imag(|s| s, 0.5, &[-1.0, 1.0], 1e-12).is_none());
    }
}
