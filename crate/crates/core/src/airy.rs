//! Airy-type uniform approximation for a one-dimensional Schrödinger problem
//! `psi'' = (V - E) psi` with a single turning point.
//!
//! The action from the turning point is matched to the Airy comparison
//! equation, `(2/3)|X0|^{3/2} = |∫ p dx|`, and the wavefunction is
//! `|X0|^{1/4} |p|^{-1/2} Ai(X0)`. `X0 > 0` on the classically forbidden
//! side, where `Ai` decays.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::numeric::quadrature::integrate;
use crate::numeric::roots::bisect;

const AI0: f64 = 0.355_028_053_887_817_239_260_063_186;
const AIP0: f64 = -0.258_819_403_792_806_798_405_183_560_189;
const STEP: f64 = 0.25;
const LO_SERIES: f64 = -3.0;
const HI_SERIES: f64 = 5.0;
const ASYMPTOTIC: f64 = 12.0;

/// `(Ai(x), Ai'(x))` from the Maclaurin series.
fn maclaurin(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let (mut f, mut g, mut fp, mut gp) = (1.0, x, 0.0, 1.0);
    let (mut a, mut b, mut ap, mut bp) = (1.0, x, x * x / 2.0, 1.0);
    fp += ap;
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        a *= x3 / ((k3 - 1.0) * k3);
        b *= x3 / (k3 * (k3 + 1.0));
        ap *= x3 / (k3 * (k3 + 2.0));
        bp *= x3 / ((k3 - 2.0) * k3);
        f += a;
        g += b;
        fp += ap;
        gp += bp;
        if a.abs().max(b.abs()).max(ap.abs()).max(bp.abs()) < 1e-18 * (1.0 + f.abs() + g.abs()) {
            break;
        }
    }
    (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp)
}

/// `(Ai(x), Ai'(x))` from the large-argument expansion, `x >= ASYMPTOTIC`.
fn asymptotic(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (mut u, mut su, mut sv) = (1.0, 1.0, 1.0);
    let mut prev = f64::INFINITY;
    for k in 1..100 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf) / zeta;
        let v = -u * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        if u.abs() > prev || u.abs() < 1e-18 {
            break;
        }
        prev = u.abs();
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        su += s * u;
        sv += s * v;
    }
    let e = (-zeta).exp() / (2.0 * core::f64::consts::PI.sqrt());
    let q = x.powf(0.25);
    (e / q * su, -e * q * sv)
}

/// Advances `(y, y')` of `y'' = x y` from `x0` by `h` with a Taylor series.
fn taylor_step(x0: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    let (mut am1, mut a0, mut a1) = (0.0, y, yp);
    let (mut sum, mut dsum) = (y + yp * h, yp);
    // h^(n+1) at the top of iteration n
    let mut hn = h;
    let mut small = 0;
    for n in 0..150 {
        let nf = n as f64;
        let a2 = (x0 * a0 + am1) / ((nf + 2.0) * (nf + 1.0));
        dsum += (nf + 2.0) * a2 * hn;
        hn *= h;
        sum += a2 * hn;
        let tiny = 1e-18 * (sum.abs() + dsum.abs() * h.abs());
        small = if (a2 * hn).abs() <= tiny { small + 1 } else { 0 };
        if small == 3 {
            break;
        }
        am1 = a0;
        a0 = a1;
        a1 = a2;
    }
    (sum, dsum)
}

fn march(from: f64, to: f64, mut y: f64, mut yp: f64) -> (f64, f64) {
    let n = ((to - from).abs() / STEP).ceil().max(1.0);
    let h = (to - from) / n;
    for i in 0..n as usize {
        (y, yp) = taylor_step(from + h * i as f64, y, yp, h);
    }
    (y, yp)
}

/// `(Ai(x), Ai'(x))`.
pub fn airy_ai_pair(x: f64) -> (f64, f64) {
    if x >= ASYMPTOTIC {
        asymptotic(x)
    } else if x >= HI_SERIES {
        let (y, yp) = asymptotic(ASYMPTOTIC);
        march(ASYMPTOTIC, x, y, yp)
    } else if x >= LO_SERIES {
        maclaurin(x)
    } else {
        let (y, yp) = maclaurin(LO_SERIES);
        march(LO_SERIES, x, y, yp)
    }
}

/// Airy function of the first kind, accurate to about 1e-13 on `[-50, 50]`.
pub fn airy_ai(x: f64) -> f64 {
    airy_ai_pair(x).0
}

/// A potential with its energy and the interval of interest.
pub struct Potential1D<F: Fn(f64) -> f64> {
    pub v: F,
    pub energy: f64,
    pub domain: (f64, f64),
}

const SCAN: usize = 2000;

impl<F: Fn(f64) -> f64> Potential1D<F> {
    pub fn new(v: F, energy: f64, domain: (f64, f64)) -> Self {
        Potential1D { v, energy, domain }
    }

    fn excess(&self, x: f64) -> f64 {
        (self.v)(x) - self.energy
    }

    /// The unique point in the domain where `V = E`.
    pub fn turning_point(&self) -> Result<f64> {
        let (lo, hi) = self.domain;
        let step = (hi - lo) / SCAN as f64;
        let mut found = None;
        let mut count = 0;
        let mut a = lo;
        let mut fa = self.excess(a);
        for k in 1..=SCAN {
            let b = if k == SCAN { hi } else { lo + step * k as f64 };
            let fb = self.excess(b);
            if fa != 0.0 && (fb == 0.0 || fa.signum() != fb.signum()) {
                count += 1;
                if found.is_none() {
                    found = Some((a, b));
                }
            }
            if fa == 0.0 && k == 1 {
                count += 1;
                found = Some((a, a));
            }
            a = b;
            fa = fb;
        }
        match (count, found) {
            (0, _) | (_, None) => Err(Error::NoTurningPoint),
            (1, Some((a, b))) if a == b => Ok(a),
            (1, Some((a, b))) => bisect(|x| self.excess(x), a, b, 0.0),
            (n, _) => Err(Error::MultipleTurningPoints(n)),
        }
    }

    fn check(&self, x0: f64) -> Result<()> {
        if x0 < self.domain.0 || x0 > self.domain.1 || !x0.is_finite() {
            return Err(Error::DomainError);
        }
        Ok(())
    }

    /// `|∫_{x0}^{x_t} sqrt|E - V| dx|`, with `x = x_t + d s^2` removing the
    /// square-root endpoint.
    fn action(&self, xt: f64, x0: f64) -> f64 {
        let d = x0 - xt;
        if d == 0.0 {
            return 0.0;
        }
        let f = |s: f64| self.excess(xt + d * s * s).abs().sqrt() * 2.0 * s;
        integrate(f, 0.0, 1.0, 1e-15, 200).value * d.abs()
    }

    /// The Airy variable matched to `x0`.
    pub fn action_map(&self, x0: f64) -> Result<f64> {
        self.check(x0)?;
        let xt = self.turning_point()?;
        Ok(self.map_from(xt, x0))
    }

    fn map_from(&self, xt: f64, x0: f64) -> f64 {
        let s = self.action(xt, x0);
        let mag = (1.5 * s).powf(2.0 / 3.0);
        if self.excess(x0) > 0.0 {
            mag
        } else {
            -mag
        }
    }

    /// `|V'(x_t)|` by central differences.
    fn slope(&self, xt: f64) -> f64 {
        let h = 1e-5 * (1.0 + xt.abs());
        (((self.v)(xt + h) - (self.v)(xt - h)) / (2.0 * h)).abs()
    }

    /// `|X0|^{1/4} |p(x0)|^{-1/2} Ai(X0)`.
    pub fn uniform_wavefunction(&self, x0: f64) -> Result<f64> {
        self.check(x0)?;
        let xt = self.turning_point()?;
        if (x0 - xt).abs() <= 1e-9 * (1.0 + xt.abs()) {
            return Ok(self.slope(xt).powf(-1.0 / 6.0) * airy_ai(0.0));
        }
        let x = self.map_from(xt, x0);
        let pre = (x.abs() / self.excess(x0).abs()).powf(0.25);
        Ok(pre * airy_ai(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use core::f64::consts::PI;
    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};

    const AI0_DIGITS: &str = "35502805388781723926006318600418317639797917419917724058332651030081004245012671295717424605404027168842044873034949583975829";
    const AIP0_DIGITS: &str = "25881940379280679840518356018920396347909113835493458221000181385610277267679028065419640582727538431337119321178913338127504";

    /// Maclaurin series in fixed-point big integers, `x = num / 4`.
    fn fixed_point_ai(num: i64) -> f64 {
        assert_eq!(AI0_DIGITS.len(), AIP0_DIGITS.len());
        let digits = AI0_DIGITS.len() as u32;
        let scale = BigInt::from(10).pow(digits);
        let c1: BigInt = AI0_DIGITS.parse().unwrap();
        let c2: BigInt = AIP0_DIGITS.parse().unwrap();
        let x3n = BigInt::from(num).pow(3);
        let x3d = BigInt::from(64);
        let (mut a, mut b): (BigInt, BigInt) = (scale.clone(), &scale * num / 4);
        let (mut f, mut g) = (a.clone(), b.clone());
        let mut k = 1i64;
        loop {
            let k3 = 3 * k;
            a = &a * &x3n / (&x3d * (k3 - 1) * k3);
            b = &b * &x3n / (&x3d * k3 * (k3 + 1));
            if a.is_zero() && b.is_zero() {
                break;
            }
            f += &a;
            g += &b;
            k += 1;
        }
        let v = (c1 * f - c2 * g) / &scale;
        // two factors of 10^digits remain
        let shift = BigInt::from(10).pow(digits - 30);
        (v / shift).to_f64().unwrap() * 1e-30
    }

    /// `Ai(x)` for `x > 0` by quadrature of `exp(-sqrt(x) s^2) cos(s^3 / 3)`.
    fn quadrature_ai(x: f64) -> f64 {
        let zeta = 2.0 / 3.0 * x.powf(1.5);
        let r = x.sqrt();
        let f = |s: f64| (-r * s * s).exp() * (s * s * s / 3.0).cos();
        let cut = (40.0 / r).sqrt();
        integrate(f, 0.0, cut, 1e-17, 2000).value * (-zeta).exp() / PI
    }

    #[test]
    fn constants() {
        assert!((airy_ai(0.0) - 0.3550280539).abs() < 1e-10);
        let h = 1e-5;
        let d = (airy_ai(h) - airy_ai(-h)) / (2.0 * h);
        assert!((d + 0.2588194038).abs() < 1e-9);
        assert!((airy_ai_pair(0.0).1 - AIP0).abs() < 1e-16);
    }

    #[test]
    fn positive_axis_against_quadrature() {
        for x in [0.5, 1.0, 2.0, 3.7, 5.0, 6.5, 9.0, 11.99, 12.0, 15.0, 25.0] {
            let want = quadrature_ai(x);
            let got = airy_ai(x);
            assert!((got - want).abs() <= 1e-12, "x={x}: {got} {want}");
        }
        assert!((airy_ai(5.0) - 1.083444281e-4).abs() < 1e-12);
    }

    #[test]
    fn whole_range_against_exact_series() {
        for num in [-200i64, -131, -80, -41, -30, -13, -12, -4, 3, 11, 19, 20, 27, 34, 48] {
            let x = num as f64 / 4.0;
            let want = fixed_point_ai(num);
            let got = airy_ai(x);
            assert!((got - want).abs() < 1e-12, "x={x}: {got} {want}");
        }
    }

    #[test]
    fn derivative_consistent() {
        for x in [-40.0, -9.3, -2.0, 1.0, 7.0, 14.0] {
            let h = 1e-4;
            let fd = (airy_ai(x + h) - airy_ai(x - h)) / (2.0 * h);
            assert!((fd - airy_ai_pair(x).1).abs() < 1e-7 * (1.0 + x.abs()), "x={x}");
        }
    }

    #[test]
    fn airy_equation_residual() {
        let h = 0.02;
        let c = [1.0 / 90.0, -3.0 / 20.0, 1.5, -49.0 / 18.0, 1.5, -3.0 / 20.0, 1.0 / 90.0];
        let mut worst = 0.0f64;
        for i in 0..=400 {
            let x = -10.0 + 0.05 * i as f64;
            let d2: f64 = (0..7).map(|k| c[k] * airy_ai(x + h * (k as f64 - 3.0))).sum::<f64>() / (h * h);
            worst = worst.max((d2 - x * airy_ai(x)).abs());
        }
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn linear_ramp_is_exact() {
        let pot = Potential1D::new(|x| x, 0.0, (-10.0, 3.0));
        assert!(pot.turning_point().unwrap().abs() < 1e-15);
        for i in 0..=1300 {
            let x0 = -10.0 + 0.01 * i as f64;
            let x = pot.action_map(x0).unwrap();
            assert!((x - x0).abs() < 1e-12 * (1.0 + x0.abs()));
            let psi = pot.uniform_wavefunction(x0).unwrap();
            assert!((psi - airy_ai(x0)).abs() < 1e-10, "x0={x0}");
        }
    }

    #[test]
    fn harmonic_action_closed_form() {
        // V = x^2/2, E = 1/2: x_t = 1 and the allowed action is
        // (arccos x - x sqrt(1 - x^2)) / (2 sqrt 2).
        let pot = Potential1D::new(|x| x * x / 2.0, 0.5, (0.0, 3.0));
        assert!((pot.turning_point().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(pot.action_map(1.0).unwrap(), 0.0);
        for x0 in [0.0, 0.3, 0.77, 0.999] {
            let s = ((x0 as f64).acos() - x0 * (1.0 - x0 * x0).sqrt()) / (2.0 * 2f64.sqrt());
            let want = -(1.5 * s).powf(2.0 / 3.0);
            assert!((pot.action_map(x0).unwrap() - want).abs() < 1e-12, "x0={x0}");
        }
        // forbidden side: (x sqrt(x^2 - 1) - arccosh x) / (2 sqrt 2)
        for x0 in [1.001, 1.5, 2.9] {
            let s = (x0 * (x0 * x0 - 1.0).sqrt() - (x0 as f64).acosh()) / (2.0 * 2f64.sqrt());
            let want = (1.5 * s).powf(2.0 / 3.0);
            assert!((pot.action_map(x0).unwrap() - want).abs() < 1e-12, "x0={x0}");
        }
    }

    /// RK4 for `psi'' = (x^2 - 1) psi` from `psi(0) = 1`, `psi'(0) = 0`.
    fn rk4_ground_state(xs: &[f64]) -> Vec<f64> {
        let h = 1e-4;
        let f = |x: f64, y: f64, yp: f64| (yp, (x * x - 1.0) * y);
        let (mut x, mut y, mut yp) = (0.0, 1.0, 0.0);
        let mut out = Vec::new();
        for &target in xs {
            while x < target - 1e-12 {
                let step = h.min(target - x);
                let (k1a, k1b) = f(x, y, yp);
                let (k2a, k2b) = f(x + step / 2.0, y + step / 2.0 * k1a, yp + step / 2.0 * k1b);
                let (k3a, k3b) = f(x + step / 2.0, y + step / 2.0 * k2a, yp + step / 2.0 * k2b);
                let (k4a, k4b) = f(x + step, y + step * k3a, yp + step * k3b);
                y += step / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
                yp += step / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
                x += step;
            }
            out.push(y);
        }
        out
    }

    #[test]
    fn ode_oracle_is_the_ground_state() {
        let xs: Vec<f64> = (0..=35).map(|i| 0.1 * i as f64).collect();
        for (x, y) in xs.iter().zip(rk4_ground_state(&xs)) {
            assert!((y / (-x * x / 2.0).exp() - 1.0).abs() < 1e-7, "x={x}: {y}");
        }
    }

    #[test]
    fn harmonic_near_turning_point() {
        let pot = Potential1D::new(|x| x * x, 1.0, (0.0, 4.0));
        let xs: Vec<f64> = (0..=40).map(|i| 0.7 + 0.03 * i as f64).collect();
        let exact = rk4_ground_state(&xs);
        let norm = rk4_ground_state(&[1.0])[0] / pot.uniform_wavefunction(1.0).unwrap();
        for (x, y) in xs.iter().zip(exact) {
            let u = pot.uniform_wavefunction(*x).unwrap() * norm;
            assert!((u / y - 1.0).abs() < 0.01, "x={x}");
        }
    }

    #[test]
    fn continuous_at_turning_point() {
        let pot = Potential1D::new(|x| x * x, 1.0, (0.0, 4.0));
        let at = pot.uniform_wavefunction(1.0).unwrap();
        assert!((at - 2f64.powf(-1.0 / 6.0) * airy_ai(0.0)).abs() < 1e-9);
        for h in [1e-6, -1e-6, 1e-8, -1e-10] {
            let v = pot.uniform_wavefunction(1.0 + h).unwrap();
            assert!(v.is_finite());
            assert!((v - at).abs() < 1e-5, "h={h}: {v} {at}");
        }
    }

    #[test]
    fn turning_point_errors() {
        let none = Potential1D::new(|x| x * x + 2.0, 1.0, (-3.0, 3.0));
        assert_eq!(none.turning_point(), Err(Error::NoTurningPoint));
        let two = Potential1D::new(|x| x * x, 1.0, (-3.0, 3.0));
        assert_eq!(two.turning_point(), Err(Error::MultipleTurningPoints(2)));
        assert_eq!(two.action_map(0.5), Err(Error::MultipleTurningPoints(2)));
        let ramp = Potential1D::new(|x| x, 0.0, (-1.0, 1.0));
        assert_eq!(ramp.action_map(2.0), Err(Error::DomainError));
    }
}
