//! Uniform approximation of the 6j-symbol by a Wigner d-matrix element.
//!
//! The tilt `beta` is fixed by equating the lune above `K_z = m` on the
//! 6j-sphere with the lune above `J_z = m` on the normal-form sphere. The
//! amplitude is the square root of the ratio of the two Poisson brackets at
//! the intersection points, `sqrt(|sin(beta) J_perp| / (24 V))`.
//!
//! In the forbidden region both lunes pick up an imaginary part from the
//! `arccosh` continuation; `beta` then matches the imaginary parts, on the side
//! of the window whose real area agrees. This branch is experimental.

use core::f64::consts::PI;

use num_traits::Float;

use crate::config::Tolerances;
use crate::dsphere::{quantum_numbers, window, DSphereConfig, JnLevel, QuantumNumbers};
use crate::error::{Error, Result};
use crate::exact::wigner_d;
use crate::numeric::roots::scan_bisect;
use crate::spin::SixJArguments;
use crate::tetra::{volume_sq_144, Classification, J23Level, Tetrahedron, EDGE_J23};

/// Where the argument set sits relative to the caustics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Allowed,
    Caustic,
    Forbidden,
}

impl From<Classification> for Regime {
    fn from(c: Classification) -> Self {
        match c {
            Classification::Allowed => Regime::Allowed,
            Classification::Degenerate => Regime::Caustic,
            Classification::Forbidden => Regime::Forbidden,
        }
    }
}

/// `Phi0 = (J1 + J2 + J3 + J4 + J12 - J12_max) pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phi0 {
    pub value: f64,
    pub integer_multiple: i64,
}

pub fn phi_zero(args: &SixJArguments) -> Phi0 {
    let t = args.twice();
    let b = args.bounds();
    let twice: i64 = t[..4].iter().map(|&x| i64::from(x)).sum::<i64>() + 4 + i64::from(t[4])
        - i64::from(b.j12_max.twice());
    let k = twice / 2;
    Phi0 { value: k as f64 * PI, integer_multiple: k }
}

/// Outcome of the tilt solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaSolution {
    pub beta: f64,
    /// `Ld(beta) - L6` (real parts when allowed, imaginary parts when forbidden).
    pub residual: f64,
    pub regime: Regime,
    /// Real part of the 6j-sphere lune.
    pub lune_6j: f64,
    /// Real part of the normal-form lune at `beta`.
    pub lune_d: f64,
    /// Imaginary part of the 6j-sphere lune (forbidden only).
    pub imag_6j: Option<f64>,
}

/// The continuous problem behind one argument set: `t = J23` and `m'` may be
/// moved off the quantized values together.
#[derive(Debug, Clone, Copy)]
struct Problem {
    level: J23Level,
    edges: [f64; 6],
    m: f64,
    j23_centre: f64,
}

impl Problem {
    fn new(args: &SixJArguments) -> Self {
        let q = quantum_numbers(args);
        Problem {
            level: J23Level::new(args),
            edges: args.edges(),
            m: q.m(),
            j23_centre: J23Level::j23_centre(args),
        }
    }

    fn at(&self, t: f64) -> Self {
        let mut edges = self.edges;
        edges[EDGE_J23] = t;
        Problem { level: self.level.with_t(t), edges, ..*self }
    }

    fn radius(&self) -> f64 {
        self.level.radius
    }

    fn mp(&self) -> f64 {
        self.j23_centre - self.level.t
    }

    fn volume_sq(&self) -> f64 {
        volume_sq_144(&self.edges) / 144.0
    }

    fn regime(&self) -> Result<Regime> {
        Ok(Tetrahedron::new(self.edges)?.classification.into())
    }

    fn d_level(&self, beta: f64) -> JnLevel {
        JnLevel::new(self.radius(), self.mp(), beta)
    }

    fn solve(&self, tol: &Tolerances) -> Result<BetaSolution> {
        let qt = 0.1 * tol.quad_abs;
        let (m, mp) = (self.m, self.mp());
        let (lo, hi) = window(self.radius(), m, mp);
        let lune_6j = self.level.area(m, qt);
        let regime = self.regime()?;
        let ld = |b: f64| self.d_level(b).area(m, qt);
        match regime {
            Regime::Allowed => {
                let f = |b: f64| ld(b) - lune_6j;
                let beta = scan_bisect(f, lo, hi, 64, tol.root)?;
                let lune_d = ld(beta);
                Ok(BetaSolution { beta, residual: lune_d - lune_6j, regime, lune_6j, lune_d, imag_6j: None })
            }
            Regime::Caustic => {
                let (a, b) = (ld(lo), ld(hi));
                let beta = if (a - lune_6j).abs() <= (b - lune_6j).abs() { lo } else { hi };
                let lune_d = ld(beta);
                Ok(BetaSolution { beta, residual: lune_d - lune_6j, regime, lune_6j, lune_d, imag_6j: None })
            }
            Regime::Forbidden => self.solve_forbidden(lo, hi, lune_6j, tol),
        }
    }

    fn solve_forbidden(&self, lo: f64, hi: f64, lune_6j: f64, tol: &Tolerances) -> Result<BetaSolution> {
        let qt = 0.1 * tol.quad_abs;
        let m = self.m;
        let im6 = self.level.imag_area(m, qt).unwrap_or(f64::INFINITY);
        let eps = 1e-9;
        let mut sides = [(eps, lo - eps, lo), (hi + eps, PI - eps, hi)];
        // the side whose real area matches the 6j lune comes first
        let real_at = |b: f64| self.d_level(b).area(m, qt);
        if (real_at(hi) - lune_6j).abs() < (real_at(lo) - lune_6j).abs() {
            sides.swap(0, 1);
        }
        let g = |b: f64| self.d_level(b).imag_area(m, qt).unwrap_or(0.0) - im6;
        let mut last = Error::NoRoot { lo: 0.0, hi: PI };
        for (a, b, _) in sides {
            if b <= a {
                continue;
            }
            match scan_bisect(g, a, b, 64, tol.root) {
                Ok(beta) => {
                    return Ok(BetaSolution {
                        beta,
                        residual: g(beta),
                        regime: Regime::Forbidden,
                        lune_6j,
                        lune_d: real_at(beta),
                        imag_6j: Some(im6),
                    })
                }
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    /// `(|B_d^2| / (576 |V^2|))^(1/4)` with `B_d = sin(beta) J_perp`.
    fn amplitude_at(&self, beta: f64) -> f64 {
        let b2 = DSphereConfig::new(self.radius(), self.m, self.mp(), beta).bracket_sq();
        (b2.abs() / (576.0 * self.volume_sq().abs())).sqrt().sqrt()
    }

    /// Limit of the bracket ratio at a caustic: both vanish linearly in `t`,
    /// so the ratio is extrapolated from the allowed side.
    fn caustic_amplitude(&self, tol: &Tolerances) -> Result<f64> {
        let t0 = self.level.t;
        let h = 1e-3;
        let side = if self.at(t0 + h).volume_sq() > 0.0 { 1.0 } else { -1.0 };
        let ratio = |d: f64| -> Result<f64> {
            let p = self.at(t0 + side * d);
            let s = p.solve(tol)?;
            let b2 = DSphereConfig::new(p.radius(), p.m, p.mp(), s.beta).bracket_sq();
            Ok(b2 / (576.0 * p.volume_sq()))
        };
        let (r1, r2) = (ratio(h)?, ratio(0.5 * h)?);
        Ok((2.0 * r2 - r1).max(0.0).sqrt().sqrt())
    }
}

pub fn solve_beta(args: &SixJArguments) -> Result<BetaSolution> {
    solve_beta_with(args, &Tolerances::default())
}

pub fn solve_beta_with(args: &SixJArguments, tol: &Tolerances) -> Result<BetaSolution> {
    args.validate()?;
    Problem::new(args).solve(tol)
}

/// `sqrt(|{J_z, J_n}| / |{J12, J23}|) / sqrt(4 J12 J23)` at tilt `cfg.beta`,
/// with `{J_z, J_n} = sin(beta) J_perp` and `{J12, J23} = 6V / (J12 J23)`.
/// At a caustic both brackets vanish and the limit along `J23` is returned.
pub fn amplitude(args: &SixJArguments, cfg: &DSphereConfig) -> Result<f64> {
    let t = Tetrahedron::from_args(args)?;
    match t.classification {
        Classification::Allowed => {
            let e = t.edges;
            let jz_jn = cfg.bracket_sq().max(0.0).sqrt();
            Ok((jz_jn / t.bracket_j12_j23()).sqrt() / (4.0 * e[4] * e[5]).sqrt())
        }
        Classification::Degenerate => Problem::new(args).caustic_amplitude(&Tolerances::default()),
        Classification::Forbidden => Ok(Problem::new(args).amplitude_at(cfg.beta)),
    }
}

/// Parity of `gamma` from `Phi0`: `gamma = Phi0/pi + j - m' (mod 2)`, the
/// second part being the sign of `d^j_{m'}` at `beta = pi`.
pub fn gamma_parity_closed(args: &SixJArguments) -> u8 {
    let q = quantum_numbers(args);
    let k = phi_zero(args).integer_multiple + i64::from((q.j.twice() as i32 - q.two_mp) / 2);
    k.rem_euclid(2) as u8
}

/// Parity of `gamma` from the primitive limit. The stationary-phase d-matrix
/// and the Ponzano-Regge cosine agree in sign exactly when
/// `C = L6 + 2 Phi_PR` is a multiple of `2 pi`, and then
/// `gamma = C / 2pi + m - m' (mod 2)`.
pub fn gamma_parity(args: &SixJArguments) -> Result<u8> {
    gamma_parity_with(args, &Tolerances::default())
}

pub fn gamma_parity_with(args: &SixJArguments, tol: &Tolerances) -> Result<u8> {
    args.validate()?;
    let p = Problem::new(args);
    let t = p.level.t;
    for probe in [t - 1.0, t, t + 1.0] {
        if p.at(probe).regime() != Ok(Regime::Allowed) {
            return Err(Error::AmbiguousPhase);
        }
    }
    let c = schlafli_constant_with(args, tol)?;
    let k = (c / (2.0 * PI)).round();
    if (c - 2.0 * PI * k).abs() > 0.05 {
        return Err(Error::AmbiguousPhase);
    }
    let q: QuantumNumbers = quantum_numbers(args);
    Ok((k as i64 + i64::from((q.two_m - q.two_mp) / 2)).rem_euclid(2) as u8)
}

/// `L6 + 2 Phi_PR`, constant along a `j23` sweep by the Schlafli identity.
pub fn schlafli_constant(args: &SixJArguments) -> Result<f64> {
    schlafli_constant_with(args, &Tolerances::default())
}

pub fn schlafli_constant_with(args: &SixJArguments, tol: &Tolerances) -> Result<f64> {
    let t = Tetrahedron::from_args(args)?;
    let pr = t.ponzano_regge_phase()?;
    let p = Problem::new(args);
    Ok(p.level.area(p.m, 0.1 * tol.quad_abs) + 2.0 * pr)
}

/// Result of [`uniform_sixj`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformResult {
    pub value: f64,
    pub beta: f64,
    pub amplitude: f64,
    pub d_value: f64,
    pub gamma_parity: u8,
    pub classification: Regime,
    pub residual: f64,
    pub lune_6j: f64,
    pub lune_d: f64,
    /// Set when the value comes from the forbidden-region continuation.
    pub experimental: bool,
}

pub fn uniform_sixj(args: &SixJArguments) -> Result<UniformResult> {
    uniform_sixj_with(args, &Tolerances::default())
}

pub fn uniform_sixj_with(args: &SixJArguments, tol: &Tolerances) -> Result<UniformResult> {
    args.validate()?;
    let p = Problem::new(args);
    let q = quantum_numbers(args);
    let s = p.solve(tol)?;
    let amplitude = match s.regime {
        Regime::Caustic => p.caustic_amplitude(tol)?,
        _ => p.amplitude_at(s.beta),
    };
    let d_value = wigner_d(q.j, q.two_m, q.two_mp, s.beta)?;
    let gamma = gamma_parity_closed(args);
    let sign = if gamma == 0 { 1.0 } else { -1.0 };
    Ok(UniformResult {
        value: sign * amplitude * d_value,
        beta: s.beta,
        amplitude,
        d_value,
        gamma_parity: gamma,
        classification: s.regime,
        residual: s.residual,
        lune_6j: s.lune_6j,
        lune_d: s.lune_d,
        experimental: s.regime == Regime::Forbidden,
    })
}

/// `cos(Phi_PR + pi/4) / sqrt(12 pi V)`.
pub fn ponzano_regge_estimate(args: &SixJArguments) -> Result<f64> {
    args.validate()?;
    ponzano_regge_edges(args.edges())
}

/// Same as [`ponzano_regge_estimate`] on arbitrary edges `[J1, J2, J3, J4, J12, J23]`.
pub fn ponzano_regge_edges(edges: [f64; 6]) -> Result<f64> {
    let t = Tetrahedron::new(edges)?;
    match t.classification {
        Classification::Allowed => Ok((t.ponzano_regge_phase()? + PI / 4.0).cos() / (12.0 * PI * t.volume).sqrt()),
        Classification::Degenerate => Err(Error::CausticDivergence),
        Classification::Forbidden => Err(Error::NoIntersection),
    }
}
