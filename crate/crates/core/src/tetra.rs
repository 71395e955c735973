//! Euclidean tetrahedron built from the six shifted spins.
//!
//! Vertices `a, b, c, d` carry the edges
//! `ab = J12`, `cd = J23`, `ac = J1`, `bc = J2`, `bd = J3`, `ad = J4`,
//! so opposite pairs are (J12, J23), (J1, J3) and (J2, J4), and the four faces
//! are the four coupling triads.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numeric::lune::{lune_area, lune_imag};
use crate::spin::SixJArguments;

/// Index of each edge in `[J1, J2, J3, J4, J12, J23]`.
pub const EDGE_J1: usize = 0;
pub const EDGE_J2: usize = 1;
pub const EDGE_J3: usize = 2;
pub const EDGE_J4: usize = 3;
pub const EDGE_J12: usize = 4;
pub const EDGE_J23: usize = 5;

/// Vertex pairs of the edges, same order as above.
const EDGE_VERTICES: [(usize, usize); 6] = [(0, 2), (1, 2), (1, 3), (0, 3), (0, 1), (2, 3)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Allowed,
    Degenerate,
    Forbidden,
}

/// Area of the triangle with sides `a, b, c`.
pub fn triangle_area(a: f64, b: f64, c: f64) -> Result<f64> {
    let r = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
    let scale = (a + b + c).powi(4);
    if r < -1e-12 * scale || !r.is_finite() {
        return Err(Error::NotATriangle { a, b, c });
    }
    Ok(0.25 * r.max(0.0).sqrt())
}

/// `144 V^2` from the six edges `[J1, J2, J3, J4, J12, J23]`.
pub fn volume_sq_144(e: &[f64; 6]) -> f64 {
    let (q, r, qq, rr) = (e[0] * e[0], e[1] * e[1], e[2] * e[2], e[3] * e[3]);
    let (p, pp) = (e[4] * e[4], e[5] * e[5]);
    p * pp * (q + qq + r + rr - p - pp) + q * qq * (p + pp + r + rr - q - qq)
        + r * rr * (p + pp + q + qq - r - rr)
        - (p * q * r + p * qq * rr + pp * q * rr + pp * qq * r)
}

/// Coefficients `(a2, a1, a0)` with `144 V^2 = a2 x^2 + a1 x + a0`, `x = J12^2`,
/// at fixed `J1..J4` and `J23`.
pub fn volume_sq_in_j12sq(j1: f64, j2: f64, j3: f64, j4: f64, j23: f64) -> (f64, f64, f64) {
    let (q, r, qq, rr) = (j1 * j1, j2 * j2, j3 * j3, j4 * j4);
    let pp = j23 * j23;
    let a2 = -pp;
    let a1 = pp * (q + qq + r + rr - pp) + q * qq + r * rr - q * r - qq * rr;
    let a0 = q * qq * (pp + r + rr - q - qq) + r * rr * (pp + q + qq - r - rr) - pp * (q * rr + qq * r);
    (a2, a1, a0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tetrahedron {
    /// `[J1, J2, J3, J4, J12, J23]`.
    pub edges: [f64; 6],
    pub volume_squared: f64,
    /// `sqrt(|V^2|)`; imaginary in the forbidden case.
    pub volume: f64,
    pub classification: Classification,
    /// Cosine of the interior dihedral angle at each edge. Real for any edge
    /// set whose faces close, even when `V^2 < 0`.
    pub cos_dihedral: [f64; 6],
    /// Interior dihedral angles in `[0, pi]`; only meaningful when not forbidden.
    pub dihedral: [f64; 6],
}

impl Tetrahedron {
    pub fn new(edges: [f64; 6]) -> Result<Self> {
        let dist = dist_matrix(&edges);
        let mut areas = [0.0; 4];
        for (v, area) in areas.iter_mut().enumerate() {
            let [x, y, z] = others3(v);
            *area = triangle_area(dist[x][y], dist[y][z], dist[x][z])?;
        }
        let volume_squared = volume_sq_144(&edges) / 144.0;
        let max_edge = edges.iter().cloned().fold(0.0, f64::max);
        let tol = 1e-9 * max_edge.powi(3);
        let volume = volume_squared.abs().sqrt();
        let classification = if volume <= tol {
            Classification::Degenerate
        } else if volume_squared > 0.0 {
            Classification::Allowed
        } else {
            Classification::Forbidden
        };

        let mut cos_dihedral = [0.0; 6];
        let mut dihedral = [0.0; 6];
        for (k, &(p, q)) in EDGE_VERTICES.iter().enumerate() {
            let [r, s] = others2(p, q);
            let l = dist[p][q];
            let (pr, ps, qr, qs, rs) = (dist[p][r], dist[p][s], dist[q][r], dist[q][s], dist[r][s]);
            let xr = (l * l + pr * pr - qr * qr) / (2.0 * l);
            let xs = (l * l + ps * ps - qs * qs) / (2.0 * l);
            let fr = areas[opposite_face(p, q, r)];
            let fs = areas[opposite_face(p, q, s)];
            let (hr, hs) = (2.0 * fr / l, 2.0 * fs / l);
            let num = pr * pr + ps * ps - 2.0 * xr * xs - rs * rs;
            if hr == 0.0 || hs == 0.0 {
                cos_dihedral[k] = f64::NAN;
                dihedral[k] = f64::NAN;
                continue;
            }
            cos_dihedral[k] = num / (2.0 * hr * hs);
            dihedral[k] = if classification == Classification::Allowed {
                let sin = 3.0 * volume * l / (2.0 * fr * fs);
                sin.atan2(cos_dihedral[k])
            } else {
                cos_dihedral[k].clamp(-1.0, 1.0).acos()
            };
        }
        Ok(Tetrahedron {
            edges,
            volume_squared,
            volume,
            classification,
            cos_dihedral,
            dihedral,
        })
    }

    pub fn from_args(args: &SixJArguments) -> Result<Self> {
        Tetrahedron::new(args.edges())
    }

    /// Interior and exterior angles, `(phi_i, psi_i)` with `psi = pi - phi`.
    pub fn dihedral_angles(&self) -> Result<[(f64, f64); 6]> {
        if self.classification == Classification::Forbidden {
            return Err(Error::NoIntersection);
        }
        if self.dihedral.iter().any(|a| a.is_nan()) {
            return Err(Error::DegenerateFaces);
        }
        Ok(self.dihedral.map(|phi| (phi, PI - phi)))
    }

    /// `sum_i J_i psi_i` with exterior angles.
    pub fn ponzano_regge_phase(&self) -> Result<f64> {
        let angles = self.dihedral_angles()?;
        Ok(self.edges.iter().zip(angles).map(|(j, (_, psi))| j * psi).sum())
    }

    /// `|{J12, J23}| = 6 V / (J12 J23)`, zero when degenerate.
    pub fn bracket_j12_j23(&self) -> f64 {
        match self.classification {
            Classification::Allowed => 6.0 * self.volume / (self.edges[EDGE_J12] * self.edges[EDGE_J23]),
            _ => 0.0,
        }
    }
}

fn dist_matrix(e: &[f64; 6]) -> [[f64; 4]; 4] {
    let mut d = [[0.0; 4]; 4];
    for (k, &(p, q)) in EDGE_VERTICES.iter().enumerate() {
        d[p][q] = e[k];
        d[q][p] = e[k];
    }
    d
}

fn others3(v: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut i = 0;
    for w in 0..4 {
        if w != v {
            out[i] = w;
            i += 1;
        }
    }
    out
}

fn others2(p: usize, q: usize) -> [usize; 2] {
    let mut out = [0; 2];
    let mut i = 0;
    for w in 0..4 {
        if w != p && w != q {
            out[i] = w;
            i += 1;
        }
    }
    out
}

/// Face `pqr` is labeled by its missing vertex.
fn opposite_face(p: usize, q: usize, r: usize) -> usize {
    6 - p - q - r
}

/// Hinge geometry of edge `J12` with apexes `c` (sides J1, J2) and `d` (J4, J3):
/// offsets along the hinge and heights, `(x_c, h_c, x_d, h_d)`.
pub fn hinge(j1: f64, j2: f64, j3: f64, j4: f64, j12: f64) -> Result<(f64, f64, f64, f64)> {
    let fc = triangle_area(j12, j1, j2)?;
    let fd = triangle_area(j12, j4, j3)?;
    let xc = (j12 * j12 + j1 * j1 - j2 * j2) / (2.0 * j12);
    let xd = (j12 * j12 + j4 * j4 - j3 * j3) / (2.0 * j12);
    Ok((xc, 2.0 * fc / j12, xd, 2.0 * fd / j12))
}

/// `J23^2` as a function of `J12` and the interior dihedral angle `phi12`.
pub fn j23sq_from_phi12(j1: f64, j2: f64, j3: f64, j4: f64, j12: f64, phi12: f64) -> Result<f64> {
    let (xc, hc, xd, hd) = hinge(j1, j2, j3, j4, j12)?;
    Ok(j1 * j1 + j4 * j4 - 2.0 * xc * xd - 2.0 * hc * hd * phi12.cos())
}

/// Sixth edge closing the hinged pair of faces at interior angle `phi12`.
pub fn j23_from_phi12(j1: f64, j2: f64, j3: f64, j4: f64, j12: f64, phi12: f64) -> Result<f64> {
    Ok(j23sq_from_phi12(j1, j2, j3, j4, j12, phi12)?.max(0.0).sqrt())
}

/// Cosine of `phi12` at which the hinge closes with sixth edge `j23`; may lie
/// outside `[-1, 1]` when no such angle exists.
pub fn cos_phi12_for(j1: f64, j2: f64, j3: f64, j4: f64, j12: f64, j23: f64) -> Result<f64> {
    let (xc, hc, xd, hd) = hinge(j1, j2, j3, j4, j12)?;
    Ok((j1 * j1 + j4 * j4 - 2.0 * xc * xd - j23 * j23) / (2.0 * hc * hd))
}

/// The level curve `J23 = t` on the 6j-sphere of radius `J = D/2`, with
/// height `K_z = J12 - J12_avg` and azimuth `pi - phi12`.
///
/// `J12` runs over `[j12_min, j12_max + 1]` as `K_z` runs over `[-J, J]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct J23Level {
    /// Shifted outer spins `J1..J4`.
    pub outer: [f64; 4],
    /// `J12` at `K_z = 0`.
    pub j12_centre: f64,
    pub radius: f64,
    /// Shifted `J23`, not necessarily quantized.
    pub t: f64,
}

impl J23Level {
    pub fn new(args: &SixJArguments) -> Self {
        let b = args.bounds();
        let e = args.edges();
        J23Level {
            outer: [e[0], e[1], e[2], e[3]],
            j12_centre: b.j12_avg() + 0.5,
            radius: b.radius(),
            t: e[EDGE_J23],
        }
    }

    pub fn with_t(&self, t: f64) -> Self {
        J23Level { t, ..*self }
    }

    /// `J23 = J23_avg - m'` on the continuous scale.
    pub fn j23_centre(args: &SixJArguments) -> f64 {
        args.bounds().j23_avg() + 0.5
    }

    /// `(J1^2 + J4^2 - 2 x_c x_d, h_c h_d)` at height `k`.
    pub(crate) fn hinge_at(&self, k: f64) -> (f64, f64) {
        let [j1, j2, j3, j4] = self.outer;
        let l = k + self.j12_centre;
        if l <= 0.0 {
            return (f64::NAN, 0.0);
        }
        let f16 = |a: f64, b: f64, c: f64| ((a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)).max(0.0);
        let xc = (l * l + j1 * j1 - j2 * j2) / (2.0 * l);
        let xd = (l * l + j4 * j4 - j3 * j3) / (2.0 * l);
        let hh = 0.25 * (f16(l, j1, j2) * f16(l, j4, j3)).sqrt() / (l * l);
        (j1 * j1 + j4 * j4 - 2.0 * xc * xd, hh)
    }

    /// `-cos(phi12)` at height `k`; `|.| > 1` where the curve does not reach.
    pub fn cos_phi12(&self, k: f64) -> f64 {
        let (a, hh) = self.hinge_at(k);
        let num = self.t * self.t - a;
        if !(hh > 0.0) {
            return if num == 0.0 { 0.0 } else { num.signum() * f64::INFINITY };
        }
        num / (2.0 * hh)
    }

    /// Heights where the curve touches a meridian plane (`V = 0` at fixed `J23`).
    pub fn breakpoints(&self) -> Vec<f64> {
        let [j1, j2, j3, j4] = self.outer;
        let (a2, a1, a0) = volume_sq_in_j12sq(j1, j2, j3, j4, self.t);
        let disc = a1 * a1 - 4.0 * a2 * a0;
        let mut out = Vec::new();
        if disc < 0.0 || a2 == 0.0 {
            return out;
        }
        let q = -0.5 * (a1 + a1.signum() * disc.sqrt());
        let scale = self.outer.iter().fold(self.t, |m, &x| m.max(x));
        for x in [q / a2, a0 / q] {
            if !(x > 0.0) {
                continue;
            }
            let k = x.sqrt() - self.j12_centre;
            if k > -self.radius && k < self.radius && self.hinge_at(k).1 > 1e-9 * scale * scale {
                out.push(k);
            }
        }
        out
    }

    /// `2 int_c^J (pi - phi12) dK_z` over the part of the sphere with `J23 >= t`.
    pub fn area(&self, c: f64, tol: f64) -> f64 {
        lune_area(|k| self.cos_phi12(k), c, self.radius, &self.breakpoints(), tol).0
    }

    /// Imaginary part of the continued area at base `c`; `None` when the
    /// curve crosses `K_z = c`.
    pub fn imag_area(&self, c: f64, tol: f64) -> Option<f64> {
        lune_imag(|k| self.cos_phi12(k), c, &self.breakpoints(), tol)
    }
}

/// Lune on the 6j-sphere above `K_z = m`.
#[derive(Debug, Clone, PartialEq)]
pub struct LuneArea6j {
    pub value: f64,
    pub error: f64,
    /// `(K_z, pi - phi12)` at 17 equally spaced heights of `[m, J]`.
    pub samples: Vec<(f64, f64)>,
}

pub fn lune_area_6j(args: &SixJArguments) -> Result<LuneArea6j> {
    lune_area_6j_with(args, &Tolerances::default())
}

pub fn lune_area_6j_with(args: &SixJArguments, tol: &Tolerances) -> Result<LuneArea6j> {
    args.validate()?;
    let level = J23Level::new(args);
    let m = args.j12.value() - args.bounds().j12_avg();
    if level.cos_phi12(m).abs() > 1.0 + 1e-9 {
        return Err(Error::NoIntersection);
    }
    let (value, error) = lune_area(|k| level.cos_phi12(k), m, level.radius, &level.breakpoints(), tol.quad_abs);
    let samples = (0..17)
        .map(|i| {
            let k = m + (level.radius - m) * f64::from(i) / 16.0;
            (k, 0.5 * crate::numeric::lune::sweep(level.cos_phi12(k)))
        })
        .collect();
    Ok(LuneArea6j { value, error, samples })
}
