//! Leading symbols of tridiagonal operators on the sphere of radius
//! `J = j + 1/2`, canonical coordinates `(phi, K_z)`, and the
//! commutator/Poisson-bracket correspondence.
//!
//! A Hermitian tridiagonal `H` with `<m|H|m+1> = h_m` has leading symbol
//! `A(K_z) + 2 Re(w) K_x + 2 Im(w) K_y`, where `A` interpolates the diagonal at
//! `K_z = m` and `w` interpolates `h_m / sqrt((j-m)(j+m+1))` at
//! `K_z = m + 1/2`. Since `(j-m)(j+m+1) = J^2 - (m+1/2)^2`, the generators
//! `K_x`, `K_y`, `K_z` map exactly to the coordinate functions.
//! The bracket is `{f, g} = f_phi g_Kz - f_Kz g_phi`, so `{K_x, K_y} = K_z`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::exact::TridiagonalOperator;
use crate::numeric::interp::Barycentric;
use crate::spin::Spin;
use crate::tetra::J23Level;

const BLEND: usize = 3;

/// Square-free part `r` and root `k` with `n = k^2 r`.
fn square_free(mut n: u64) -> (u64, u64) {
    let (mut k, mut r) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= n {
        while n % (p * p) == 0 {
            n /= p * p;
            k *= p;
        }
        if n % p == 0 {
            n /= p;
            r *= p;
        }
        p += 1;
    }
    (k, r * n)
}

/// Finite sum of `(a + i b) sqrt(r)` over square-free `r`, with rational `a, b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Surd {
    terms: BTreeMap<u64, (Rational64, Rational64)>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    /// `(re + i im) sqrt(n)`.
    pub fn new(re: Rational64, im: Rational64, n: u64) -> Self {
        let mut s = Surd::zero();
        if n != 0 {
            let (k, r) = square_free(n);
            let k = Rational64::from_integer(k as i64);
            s.push(r, re * k, im * k);
        }
        s
    }

    pub fn rational(q: Rational64) -> Self {
        Surd::new(q, Rational64::zero(), 1)
    }

    fn push(&mut self, r: u64, re: Rational64, im: Rational64) {
        let e = self.terms.entry(r).or_insert((Rational64::zero(), Rational64::zero()));
        e.0 += re;
        e.1 += im;
        if e.0.is_zero() && e.1.is_zero() {
            self.terms.remove(&r);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        Surd {
            terms: self.terms.iter().map(|(&r, &(a, b))| (r, (-b, a))).collect(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let f = |q: Rational64| *q.numer() as f64 / *q.denom() as f64;
        self.terms
            .iter()
            .map(|(&r, &(a, b))| Complex64::new(f(a), f(b)) * (r as f64).sqrt())
            .sum()
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        let mut s = self.clone();
        for (&r, &(a, b)) in &o.terms {
            s.push(r, a, b);
        }
        s
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(&r, &(a, b))| (r, (-a, -b))).collect(),
        }
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        self + &(-o)
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        let mut s = Surd::zero();
        for (&r1, &(a1, b1)) in &self.terms {
            for (&r2, &(a2, b2)) in &o.terms {
                let (k, r) = square_free(r1 * r2);
                let k = Rational64::from_integer(k as i64);
                s.push(r, (a1 * a2 - b1 * b2) * k, (a1 * b2 + b1 * a2) * k);
            }
        }
        s
    }
}

/// Dense square matrix of [`Surd`] entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub n: usize,
    pub data: Vec<Surd>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix { n, data: vec![Surd::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Surd::rational(Rational64::one());
        }
        m
    }

    pub fn get(&self, i: usize, k: usize) -> &Surd {
        &self.data[i * self.n + k]
    }

    pub fn scale(&self, s: &Surd) -> Self {
        ExactMatrix { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn times_i(&self) -> Self {
        ExactMatrix { n: self.n, data: self.data.iter().map(Surd::times_i).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Surd::is_zero)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.data.iter().map(Surd::to_complex).collect()
    }

    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, o: &ExactMatrix) -> ExactMatrix {
        let n = self.n;
        let mut out = ExactMatrix::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let b = o.get(l, k);
                    if !b.is_zero() {
                        out.data[i * n + k] = &out.data[i * n + k] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, o: &ExactMatrix) -> ExactMatrix {
        ExactMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, o: &ExactMatrix) -> ExactMatrix {
        ExactMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

/// `K_x`, `K_y`, `K_z` in the basis `m = -j..=j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTriple {
    pub j: Spin,
    pub x: ExactMatrix,
    pub y: ExactMatrix,
    pub z: ExactMatrix,
}

pub fn su2_generators(j: Spin) -> GeneratorTriple {
    let tj = j.twice() as i64;
    let n = j.twice() as usize + 1;
    let (mut x, mut y, mut z) = (ExactMatrix::zeros(n), ExactMatrix::zeros(n), ExactMatrix::zeros(n));
    for i in 0..n {
        let tm = 2 * i as i64 - tj;
        z.data[i * n + i] = Surd::rational(Rational64::new(tm, 2));
        if i + 1 < n {
            // <m+1|K_+|m> = sqrt((j-m)(j+m+1)) = sqrt((tj-tm)(tj+tm+2)) / 2
            let r = ((tj - tm) * (tj + tm + 2)) as u64;
            let quarter = Rational64::new(1, 4);
            x.data[(i + 1) * n + i] = Surd::new(quarter, Rational64::zero(), r);
            x.data[i * n + i + 1] = Surd::new(quarter, Rational64::zero(), r);
            y.data[(i + 1) * n + i] = Surd::new(Rational64::zero(), -quarter, r);
            y.data[i * n + i + 1] = Surd::new(Rational64::zero(), quarter, r);
        }
    }
    GeneratorTriple { j, x, y, z }
}

impl GeneratorTriple {
    /// `K_x^2 + K_y^2 + K_z^2`.
    pub fn casimir(&self) -> ExactMatrix {
        &(&(&self.x * &self.x) + &(&self.y * &self.y)) + &(&self.z * &self.z)
    }
}

/// Hermitian tridiagonal matrix on the ladder `m = -j..=j`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianTridiagonal {
    pub diag: Vec<f64>,
    /// `upper[k] = <m_k| H |m_k + 1>`.
    pub upper: Vec<Complex64>,
}

fn ladder(j: Spin, k: usize) -> f64 {
    let (tj, tm) = (f64::from(j.twice()), 2.0 * k as f64 - f64::from(j.twice()));
    ((tj - tm) * (tj + tm + 2.0)).sqrt() / 2.0
}

impl HermitianTridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn kz(j: Spin) -> Self {
        let n = j.twice() as usize + 1;
        HermitianTridiagonal {
            diag: (0..n).map(|k| k as f64 - j.value()).collect(),
            upper: vec![Complex64::zero(); n - 1],
        }
    }

    pub fn kx(j: Spin) -> Self {
        let n = j.twice() as usize + 1;
        HermitianTridiagonal {
            diag: vec![0.0; n],
            upper: (0..n - 1).map(|k| Complex64::new(ladder(j, k) / 2.0, 0.0)).collect(),
        }
    }

    pub fn ky(j: Spin) -> Self {
        let n = j.twice() as usize + 1;
        HermitianTridiagonal {
            diag: vec![0.0; n],
            upper: (0..n - 1).map(|k| Complex64::new(0.0, ladder(j, k) / 2.0)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        HermitianTridiagonal { diag: vec![1.0; n], upper: vec![Complex64::zero(); n.saturating_sub(1)] }
    }

    fn dense(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut d = vec![Complex64::zero(); n * n];
        for i in 0..n {
            d[i * n + i] = Complex64::new(self.diag[i], 0.0);
            if i + 1 < n {
                d[i * n + i + 1] = self.upper[i];
                d[(i + 1) * n + i] = self.upper[i].conj();
            }
        }
        d
    }

    /// `[A, B] / i`, which is again Hermitian; an error if it leaves the band.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self> {
        let n = a.dim();
        if b.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
        }
        let (da, db) = (a.dense(), b.dense());
        let prod = |x: &[Complex64], y: &[Complex64], i: usize, k: usize| -> Complex64 {
            let lo = i.saturating_sub(1).max(k.saturating_sub(1));
            let hi = (i + 1).min(k + 1).min(n - 1);
            (lo..=hi).map(|l| x[i * n + l] * y[l * n + k]).sum()
        };
        let scale = da.iter().chain(&db).fold(0.0f64, |m, z| m.max(z.norm())).max(1.0);
        let mut diag = vec![0.0; n];
        let mut upper = vec![Complex64::zero(); n.saturating_sub(1)];
        let minus_i = Complex64::new(0.0, -1.0);
        for i in 0..n {
            for k in i..(i + 3).min(n) {
                let c = (prod(&da, &db, i, k) - prod(&db, &da, i, k)) * minus_i;
                match k - i {
                    0 => diag[i] = c.re,
                    1 => upper[i] = c,
                    _ => {
                        if c.norm() > 1e-12 * scale * scale {
                            return Err(Error::NotTridiagonal);
                        }
                    }
                }
            }
        }
        Ok(HermitianTridiagonal { diag, upper })
    }
}

impl From<&TridiagonalOperator> for HermitianTridiagonal {
    fn from(op: &TridiagonalOperator) -> Self {
        HermitianTridiagonal {
            diag: op.diag.clone(),
            upper: op.offdiag.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }
}

/// A real function on the sphere, addressed by canonical coordinates.
pub trait SphereFunction {
    fn radius(&self) -> f64;

    fn eval_kz(&self, kz: f64, phi: f64) -> f64;

    fn eval(&self, theta: f64, phi: f64) -> f64 {
        self.eval_kz(self.radius() * theta.cos(), phi)
    }
}

/// Samples on the grid `theta_a = pi (a + 1/2) / n_theta`, `phi_b = 2 pi b / n_phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    pub n_theta: usize,
    pub n_phi: usize,
    pub values: Vec<f64>,
}

impl SphereGrid {
    pub fn theta(&self, a: usize) -> f64 {
        PI * (a as f64 + 0.5) / self.n_theta as f64
    }

    pub fn phi(&self, b: usize) -> f64 {
        2.0 * PI * b as f64 / self.n_phi as f64
    }

    pub fn sample<F: SphereFunction + ?Sized>(f: &F, n_theta: usize, n_phi: usize) -> Self {
        let mut g = SphereGrid { n_theta, n_phi, values: Vec::with_capacity(n_theta * n_phi) };
        for a in 0..n_theta {
            for b in 0..n_phi {
                let v = f.eval(g.theta(a), g.phi(b));
                g.values.push(v);
            }
        }
        g
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.n_phi + b]
    }
}

/// The coordinate functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coordinate {
    X,
    Y,
    Z,
}

/// A coordinate function on a sphere of given radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordinateFunction {
    pub radius: f64,
    pub axis: Coordinate,
}

impl SphereFunction for CoordinateFunction {
    fn radius(&self) -> f64 {
        self.radius
    }

    fn eval_kz(&self, kz: f64, phi: f64) -> f64 {
        let rho = (self.radius * self.radius - kz * kz).max(0.0).sqrt();
        match self.axis {
            Coordinate::X => rho * phi.cos(),
            Coordinate::Y => rho * phi.sin(),
            Coordinate::Z => kz,
        }
    }
}

/// `J23^2(J12, phi12)` of the hinged tetrahedron, with `J12 = K_z + J12_avg`
/// and `phi = pi - phi12`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct J23SquaredFunction {
    level: J23Level,
}

impl J23SquaredFunction {
    pub fn new(level: J23Level) -> Self {
        J23SquaredFunction { level }
    }
}

impl SphereFunction for J23SquaredFunction {
    fn radius(&self) -> f64 {
        self.level.radius
    }

    fn eval_kz(&self, kz: f64, phi: f64) -> f64 {
        let (a, hh) = self.level.hinge_at(kz);
        a + 2.0 * hh * phi.cos()
    }
}

/// Leading symbol of a Hermitian tridiagonal operator.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingSymbol {
    pub radius: f64,
    diag: Barycentric,
    w: Option<(Barycentric, Barycentric)>,
}

impl SphereFunction for LeadingSymbol {
    fn radius(&self) -> f64 {
        self.radius
    }

    fn eval_kz(&self, kz: f64, phi: f64) -> f64 {
        let a = self.diag.eval(kz);
        match &self.w {
            None => a,
            Some((re, im)) => {
                let rho = (self.radius * self.radius - kz * kz).max(0.0).sqrt();
                a + 2.0 * rho * (re.eval(kz) * phi.cos() + im.eval(kz) * phi.sin())
            }
        }
    }
}

pub fn leading_symbol(op: &HermitianTridiagonal, j: Spin) -> Result<LeadingSymbol> {
    let n = j.twice() as usize + 1;
    if op.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: op.dim() });
    }
    let nodes: Vec<f64> = (0..n).map(|k| k as f64 - j.value()).collect();
    let diag = Barycentric::new(nodes.clone(), op.diag.clone(), BLEND);
    let w = if n > 1 {
        let mids: Vec<f64> = nodes[..n - 1].iter().map(|m| m + 0.5).collect();
        let w: Vec<Complex64> = op.upper.iter().enumerate().map(|(k, h)| h / ladder(j, k)).collect();
        Some((
            Barycentric::new(mids.clone(), w.iter().map(|z| z.re).collect(), BLEND),
            Barycentric::new(mids, w.iter().map(|z| z.im).collect(), BLEND),
        ))
    } else {
        None
    };
    Ok(LeadingSymbol { radius: j.shifted(), diag, w })
}

/// A point of the sphere by colatitude and azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
}

/// `{f, g}` at `p` from Richardson-extrapolated central differences with
/// steps `1e-5 J` in `K_z` and `1e-5` in `phi`.
pub fn poisson_bracket<F, G>(f: &F, g: &G, p: SpherePoint) -> Result<f64>
where
    F: SphereFunction + ?Sized,
    G: SphereFunction + ?Sized,
{
    let r = f.radius();
    let h = 1e-5 * r;
    let kz = r * p.theta.cos();
    if p.theta < 1e-6 || p.theta > PI - 1e-6 || kz.abs() + h >= r {
        return Err(Error::PoleProximity);
    }
    let d = |s: &dyn Fn(f64) -> f64, x: f64, h: f64| {
        let c = |h: f64| (s(x + h) - s(x - h)) / (2.0 * h);
        (4.0 * c(0.5 * h) - c(h)) / 3.0
    };
    let f_phi = d(&|x| f.eval_kz(kz, x), p.phi, 1e-5);
    let f_k = d(&|x| f.eval_kz(x, p.phi), kz, h);
    let g_phi = d(&|x| g.eval_kz(kz, x), p.phi, 1e-5);
    let g_k = d(&|x| g.eval_kz(x, p.phi), kz, h);
    Ok(f_phi * g_k - f_k * g_phi)
}

/// Sup-norm comparison of two sphere functions over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationReport {
    pub j: f64,
    /// `sup |lhs - rhs|`.
    pub deviation: f64,
    /// `sup |rhs|`.
    pub scale: f64,
    /// `deviation / scale`.
    pub relative: f64,
    /// `relative * j`, the coefficient of the expected `1/j` law.
    pub coefficient: f64,
}

impl DeviationReport {
    fn new(j: f64, deviation: f64, scale: f64) -> Self {
        let relative = if scale > 0.0 { deviation / scale } else { deviation };
        DeviationReport { j, deviation, scale, relative, coefficient: relative * j }
    }
}

/// Compares `leading_symbol(J23^2)` with the tetrahedron function `J23^2`
/// on an `n x n` grid.
pub fn j23_symbol_deviation(j1: Spin, j2: Spin, j3: Spin, j4: Spin, n: usize) -> Result<DeviationReport> {
    let op = crate::exact::j23sq_operator(j1, j2, j3, j4)?;
    let args = crate::spin::SixJArguments {
        j1,
        j2,
        j3,
        j4,
        j12: op.j12_min,
        j23: crate::spin::intermediate_bounds(j1, j2, j3, j4)?.j23_min,
    };
    let b = args.bounds();
    let sym = leading_symbol(&(&op).into(), b.j)?;
    let classical = J23SquaredFunction::new(J23Level::new(&args));
    let (s, c) = (SphereGrid::sample(&sym, n, n), SphereGrid::sample(&classical, n, n));
    let dev = s.values.iter().zip(&c.values).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let scale = c.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(DeviationReport::new(b.j.value(), dev, scale))
}

/// `sup |symbol([A, B]/i) - {a, b}|` over an `n x n` grid, with `a` and `b`
/// the leading symbols of the operators.
pub fn commutator_bracket_check(a: &HermitianTridiagonal, b: &HermitianTridiagonal, j: Spin) -> Result<DeviationReport> {
    let (sa, sb) = (leading_symbol(a, j)?, leading_symbol(b, j)?);
    commutator_bracket_check_against(a, b, j, &sa, &sb, 50)
}

/// Same comparison with explicit phase-space functions `a` and `b` standing
/// for the two operators.
pub fn commutator_bracket_check_against(
    a: &HermitianTridiagonal,
    b: &HermitianTridiagonal,
    j: Spin,
    fa: &dyn SphereFunction,
    fb: &dyn SphereFunction,
    n: usize,
) -> Result<DeviationReport> {
    let c = HermitianTridiagonal::commutator(a, b)?;
    let sc = leading_symbol(&c, j)?;
    let grid = SphereGrid { n_theta: n, n_phi: n, values: Vec::new() };
    let (mut dev, mut scale) = (0.0f64, 0.0f64);
    for ia in 0..n {
        for ib in 0..n {
            let p = SpherePoint { theta: grid.theta(ia), phi: grid.phi(ib) };
            let br = poisson_bracket(fa, fb, p)?;
            dev = dev.max((sc.eval(p.theta, p.phi) - br).abs());
            scale = scale.max(br.abs());
        }
    }
    Ok(DeviationReport::new(j.value(), dev, scale))
}
