//! The normal-form sphere: level sets `J_z = m` and `J_n = m'`, where `n` is
//! the `z` axis tilted by `beta` about `y`.
//!
//! The azimuth `chi` about `z` is measured from the plane containing both
//! axes. The lune is `{J_z >= m, J_n <= m'}`, swept as `+-chi(J_z)`, and its
//! area increases with `beta` across the intersection window.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numeric::lune::{lune_area, lune_imag};
use crate::numeric::roots::scan_bisect;
use crate::spin::{SixJArguments, Spin};
use crate::tetra::J23Level;

/// `j`, `m` and `m'` of the normal form, with `m` and `m'` as twice-values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub j: Spin,
    pub two_m: i32,
    pub two_mp: i32,
}

impl QuantumNumbers {
    pub fn m(&self) -> f64 {
        f64::from(self.two_m) / 2.0
    }

    pub fn mp(&self) -> f64 {
        f64::from(self.two_mp) / 2.0
    }

    /// Sphere radius `J = j + 1/2`.
    pub fn radius(&self) -> f64 {
        self.j.shifted()
    }
}

/// `j = (D - 1)/2`, `m = j12 - j12_avg`, `m' = j23_avg - j23`.
pub fn quantum_numbers(args: &SixJArguments) -> QuantumNumbers {
    let b = args.bounds();
    let two_m = args.j12.twice() as i32 - (b.j12_min.twice() + b.j12_max.twice()) as i32 / 2;
    let two_mp = (b.j23_min.twice() + b.j23_max.twice()) as i32 / 2 - args.j23.twice() as i32;
    QuantumNumbers { j: b.j, two_m, two_mp }
}

/// Intersection point of `J_z = m` and `J_n = m'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intersection {
    /// Azimuth of the intersection, in `[-pi/2, pi/2]`.
    pub phi0: f64,
    /// In-plane transverse component `sqrt(J^2 - m^2) sin(phi0)`.
    pub j_inplane: f64,
    /// Out-of-plane component `sqrt(J^2 - m^2) cos(phi0) >= 0`.
    pub j_perp: f64,
}

/// Normal-form parameters with continuous `m`, `m'` (the quantized values are
/// a special case).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DSphereConfig {
    /// Sphere radius `J`.
    pub radius: f64,
    pub m: f64,
    pub mp: f64,
    pub beta: f64,
}

impl DSphereConfig {
    pub fn new(radius: f64, m: f64, mp: f64, beta: f64) -> Self {
        DSphereConfig { radius, m, mp, beta }
    }

    pub fn from_quantum(q: &QuantumNumbers, beta: f64) -> Self {
        DSphereConfig::new(q.radius(), q.m(), q.mp(), beta)
    }

    pub fn intersection(&self) -> Result<Intersection> {
        let (sb, cb) = self.beta.sin_cos();
        let rho = (self.radius * self.radius - self.m * self.m).sqrt();
        let num = self.mp - self.m * cb;
        if sb <= 0.0 || rho == 0.0 {
            return Err(Error::NoIntersection);
        }
        let s = num / (sb * rho);
        if s.abs() > 1.0 + 1e-12 {
            return Err(Error::NoIntersection);
        }
        let s = s.clamp(-1.0, 1.0);
        let phi0 = s.asin();
        Ok(Intersection {
            phi0,
            j_inplane: num / sb,
            j_perp: rho * phi0.cos(),
        })
    }

    /// `(sin(beta) J_perp)^2 = sin^2(beta)(J^2 - m^2) - (m' - m cos(beta))^2`;
    /// negative outside the window.
    pub fn bracket_sq(&self) -> f64 {
        let (sb, cb) = self.beta.sin_cos();
        let r = self.mp - self.m * cb;
        sb * sb * (self.radius * self.radius - self.m * self.m) - r * r
    }

    pub fn window(&self) -> (f64, f64) {
        window(self.radius, self.m, self.mp)
    }

    pub fn level(&self) -> JnLevel {
        JnLevel::new(self.radius, self.mp, self.beta)
    }
}

/// `beta` range on which the two circles meet:
/// `[|th_m - th_m'|, min(th_m + th_m', 2 pi - th_m - th_m')]`.
pub fn window(radius: f64, m: f64, mp: f64) -> (f64, f64) {
    let tm = (m / radius).clamp(-1.0, 1.0).acos();
    let tp = (mp / radius).clamp(-1.0, 1.0).acos();
    ((tm - tp).abs(), (tm + tp).min(2.0 * PI - tm - tp))
}

/// The circle `J_n = m'` seen from the `z` axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JnLevel {
    pub radius: f64,
    pub mp: f64,
    pub beta: f64,
}

impl JnLevel {
    pub fn new(radius: f64, mp: f64, beta: f64) -> Self {
        JnLevel { radius, mp, beta }
    }

    /// `cos(chi)` at height `z`; `|.| > 1` where the circle does not reach.
    pub fn cos_chi(&self, z: f64) -> f64 {
        let (sb, cb) = self.beta.sin_cos();
        let num = z * cb - self.mp;
        let den = (self.radius * self.radius - z * z).max(0.0).sqrt() * sb;
        if den == 0.0 {
            return if num == 0.0 { 0.0 } else { num.signum() * f64::INFINITY };
        }
        num / den
    }

    /// Heights of the two points where the circle touches a meridian plane.
    pub fn breakpoints(&self) -> Vec<f64> {
        let (sb, cb) = self.beta.sin_cos();
        let w = sb.abs() * (self.radius * self.radius - self.mp * self.mp).max(0.0).sqrt();
        alloc::vec![self.mp * cb - w, self.mp * cb + w]
    }

    /// `2 int_c^J chi(z) dz`.
    pub fn area(&self, c: f64, tol: f64) -> f64 {
        lune_area(|z| self.cos_chi(z), c, self.radius, &self.breakpoints(), tol).0
    }

    /// Imaginary part of the continued area above `c`; `None` when the circle
    /// crosses `J_z = c`.
    pub fn imag_area(&self, c: f64, tol: f64) -> Option<f64> {
        lune_imag(|z| self.cos_chi(z), c, &self.breakpoints(), tol)
    }
}

/// The lune area `2 Phi_d(beta)` on the sphere of radius `J = j + 1/2`.
pub fn lune_area_d(j: Spin, m: f64, mp: f64, beta: f64) -> Result<f64> {
    lune_area_d_with(j, m, mp, beta, &Tolerances::default())
}

pub fn lune_area_d_with(j: Spin, m: f64, mp: f64, beta: f64, tol: &Tolerances) -> Result<f64> {
    let radius = j.shifted();
    if m.abs() > j.value() || mp.abs() > j.value() || !(beta > 0.0 && beta < PI) {
        return Err(Error::DomainError);
    }
    let (lo, hi) = window(radius, m, mp);
    let slack = 1e-12;
    if beta < lo - slack || beta > hi + slack {
        return Err(Error::NoIntersection);
    }
    Ok(JnLevel::new(radius, mp, beta).area(m, tol.quad_abs))
}

/// Tilt correction `alpha(c)` of the canonical map at base height `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSolution {
    pub alpha: f64,
    /// Left minus right side of the area equation at the returned `alpha`.
    pub residual: f64,
}

/// Solves `L6(c) - L6(c1) = Ld(beta - alpha, c) - Ld(beta, c1)` for `alpha`,
/// where `L6(c)` is the 6j-sphere lune above `K_z = c`, `Ld(b, c)` the
/// normal-form lune above `J_z = c` at tilt `b`, and `c1 = m`.
pub fn solve_alpha(args: &SixJArguments, beta: f64, c: f64) -> Result<AlphaSolution> {
    solve_alpha_with(args, beta, c, &Tolerances::default())
}

pub fn solve_alpha_with(args: &SixJArguments, beta: f64, c: f64, tol: &Tolerances) -> Result<AlphaSolution> {
    let q = quantum_numbers(args);
    let (radius, c1, mp) = (q.radius(), q.m(), q.mp());
    if c == c1 {
        return Ok(AlphaSolution { alpha: 0.0, residual: 0.0 });
    }
    if !(c > -radius && c < radius) {
        return Err(Error::DomainError);
    }
    let level = J23Level::new(args);
    let qt = 0.1 * tol.quad_abs;
    if level.cos_phi12(c).abs() > 1.0 {
        return Err(Error::NoIntersection);
    }
    let target = level.area(c, qt) - level.area(c1, qt) + JnLevel::new(radius, mp, beta).area(c1, qt);
    let g = |alpha: f64| JnLevel::new(radius, mp, beta - alpha).area(c, qt) - target;
    let (lo, hi) = window(radius, c, mp);
    let (a_lo, a_hi) = (beta - hi, beta - lo);
    let alpha = scan_bisect(g, a_lo, a_hi, 64, tol.root)?;
    Ok(AlphaSolution { alpha, residual: g(alpha) })
}
