//! Verification reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use sixj_core::airy::{airy_ai, Potential1D};
use sixj_core::dsphere::{quantum_numbers, solve_alpha_with, window};
use sixj_core::exact::j23sq_operator;
use sixj_core::symbol::{
    commutator_bracket_check_against, j23_symbol_deviation, Coordinate, CoordinateFunction, DeviationReport,
    HermitianTridiagonal, J23SquaredFunction,
};
use sixj_core::tetra::{J23Level, EDGE_J12};
use sixj_core::uniform::solve_beta_with;
use sixj_core::{intermediate_bounds, Classification, SixJArguments, Spin, Tetrahedron, Tolerances};

use crate::table::{Cell, Table};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Schlafli,
    Symbol,
    Bracket,
    Alpha,
    Airy,
}

pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Check {
    fn at_most(name: &'static str, value: f64, hi: f64) -> Self {
        Check { name, value, lo: f64::NEG_INFINITY, hi }
    }

    pub fn pass(&self) -> bool {
        self.value >= self.lo && self.value <= self.hi
    }
}

pub struct Request {
    pub kind: Kind,
    pub seed: u64,
    pub samples: usize,
    pub j: u32,
    pub j2x: u32,
    /// Outer spins used as the shape for `symbol`/`bracket` and the argument
    /// set for `alpha`.
    pub args: SixJArguments,
}

fn schlafli(seed: u64, samples: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst, mut count) = (0.0f64, 0);
    while count < samples {
        let e: [f64; 6] = [0.0; 6].map(|_| rng.gen_range(5.0..50.0));
        let Ok(t) = Tetrahedron::new(e) else { continue };
        if t.classification != Classification::Allowed || t.volume < 1.0 {
            continue;
        }
        let h = 1e-4;
        let phase = |d: f64| {
            let mut x = e;
            x[EDGE_J12] += d;
            Tetrahedron::new(x).and_then(|t| t.ponzano_regge_phase()).unwrap_or(f64::NAN)
        };
        let fd = (phase(h) - phase(-h)) / (2.0 * h);
        let psi = t.dihedral_angles().map(|a| a[EDGE_J12].1).unwrap_or(f64::NAN);
        worst = worst.max((fd - psi).abs());
        count += 1;
    }
    vec![Check::at_most("max_abs_deviation", worst, 1e-5)]
}

/// Multiplier taking the shape to half-dimension `j`.
fn scale_for(shape: &SixJArguments, j: u32) -> Result<u32, Failure> {
    let b = intermediate_bounds(shape.j1, shape.j2, shape.j3, shape.j4).map_err(|e| Failure::Validation(e.to_string()))?;
    let base = b.j.twice();
    if base == 0 || (2 * j) % base != 0 {
        return Err(Failure::Validation(format!("j = {j} is not a multiple of the shape's j = {}", b.j)));
    }
    Ok(2 * j / base)
}

fn scaled(shape: &SixJArguments, k: u32) -> [Spin; 4] {
    [shape.j1, shape.j2, shape.j3, shape.j4].map(|s| Spin::from_twice(s.twice() * k))
}

fn two_scale(req: &Request, f: impl Fn([Spin; 4]) -> Result<DeviationReport, Failure>) -> Result<Vec<Check>, Failure> {
    let (a, b) = (f(scaled(&req.args, scale_for(&req.args, req.j)?))?, f(scaled(&req.args, scale_for(&req.args, req.j2x)?))?);
    let expected = f64::from(req.j) / f64::from(req.j2x);
    Ok(vec![
        Check { name: "relative_deviation_j", value: a.relative, lo: 0.0, hi: f64::INFINITY },
        Check { name: "relative_deviation_j2x", value: b.relative, lo: 0.0, hi: f64::INFINITY },
        Check { name: "ratio", value: b.relative / a.relative, lo: 0.6 * expected, hi: 1.4 * expected },
    ])
}

fn solver(e: sixj_core::Error) -> Failure {
    Failure::Solver(e.to_string())
}

fn symbol(req: &Request) -> Result<Vec<Check>, Failure> {
    two_scale(req, |[a, b, c, d]| j23_symbol_deviation(a, b, c, d, 40).map_err(solver))
}

fn bracket(req: &Request) -> Result<Vec<Check>, Failure> {
    two_scale(req, |[a, b, c, d]| {
        let op: HermitianTridiagonal = (&j23sq_operator(a, b, c, d).map_err(solver)?).into();
        let j = Spin::from_twice(op.dim() as u32 - 1);
        let bounds = intermediate_bounds(a, b, c, d).map_err(solver)?;
        let args = SixJArguments::new(a, b, c, d, bounds.j12_min, bounds.j23_min).map_err(solver)?;
        let level = J23Level::new(&args);
        let kz = CoordinateFunction { radius: level.radius, axis: Coordinate::Z };
        commutator_bracket_check_against(&HermitianTridiagonal::kz(j), &op, j, &kz, &J23SquaredFunction::new(level), 40)
            .map_err(solver)
    })
}

fn alpha(args: &SixJArguments, tol: &Tolerances) -> Result<Vec<Check>, Failure> {
    let s = solve_beta_with(args, tol).map_err(solver)?;
    let q = quantum_numbers(args);
    let at_c1 = solve_alpha_with(args, s.beta, q.m(), tol).map_err(solver)?;
    let level = J23Level::new(args);
    let r = q.radius();
    let mut worst = 0.0f64;
    for i in 1..400 {
        let c = -r + 2.0 * r * f64::from(i) / 400.0;
        let (lo, hi) = window(r, c, q.mp());
        if level.cos_phi12(c).abs() > 1.0 || lo >= hi {
            continue;
        }
        let a = solve_alpha_with(args, s.beta, c, tol).map_err(solver)?;
        worst = worst.max(a.residual.abs());
    }
    Ok(vec![
        Check { name: "alpha_at_c1", value: at_c1.alpha, lo: 0.0, hi: 0.0 },
        Check::at_most("max_abs_residual", worst, 1e-9),
    ])
}

/// RK4 for `psi'' = (x^2 - 1) psi` from `psi(0) = 1`, `psi'(0) = 0`.
fn harmonic_ode(xs: &[f64]) -> Vec<f64> {
    let h: f64 = 1e-4;
    let f = |x: f64, y: f64, yp: f64| (yp, (x * x - 1.0) * y);
    let (mut x, mut y, mut yp) = (0.0, 1.0, 0.0);
    xs.iter()
        .map(|&target| {
            while x < target - 1e-12 {
                let s = h.min(target - x);
                let (k1a, k1b) = f(x, y, yp);
                let (k2a, k2b) = f(x + s / 2.0, y + s / 2.0 * k1a, yp + s / 2.0 * k1b);
                let (k3a, k3b) = f(x + s / 2.0, y + s / 2.0 * k2a, yp + s / 2.0 * k2b);
                let (k4a, k4b) = f(x + s, y + s * k3a, yp + s * k3b);
                y += s / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
                yp += s / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
                x += s;
            }
            y
        })
        .collect()
}

fn airy() -> Result<Vec<Check>, Failure> {
    let ramp = Potential1D::new(|x| x, 0.0, (-10.0, 3.0));
    let mut ramp_err = 0.0f64;
    for i in 0..=1300 {
        let x = -10.0 + 0.01 * f64::from(i);
        ramp_err = ramp_err.max((ramp.uniform_wavefunction(x).map_err(solver)? - airy_ai(x)).abs());
    }
    let pot = Potential1D::new(|x| x * x, 1.0, (0.0, 4.0));
    let xs: Vec<f64> = (0..=100).map(|i| 0.5 + 0.01 * f64::from(i)).collect();
    let exact = harmonic_ode(&xs);
    let norm = harmonic_ode(&[1.0])[0] / pot.uniform_wavefunction(1.0).map_err(solver)?;
    let mut worst = 0.0f64;
    for (x, e) in xs.iter().zip(&exact) {
        let u = pot.uniform_wavefunction(*x).map_err(solver)? * norm;
        worst = worst.max((u / e - 1.0).abs());
    }
    Ok(vec![
        Check::at_most("linear_ramp_max_abs_error", ramp_err, 1e-10),
        Check::at_most("harmonic_max_relative_error", worst, 0.01),
    ])
}

/// The report and whether every check passed.
pub fn run(req: &Request, tol: &Tolerances) -> Result<(Table, bool), Failure> {
    let checks = match req.kind {
        Kind::Schlafli => schlafli(req.seed, req.samples),
        Kind::Symbol => symbol(req)?,
        Kind::Bracket => bracket(req)?,
        Kind::Alpha => alpha(&req.args, tol)?,
        Kind::Airy => airy()?,
    };
    let mut t = Table::new(vec!["check", "value", "min", "max", "pass"]);
    let bound = |v: f64| Cell::Num(v.is_finite().then_some(v));
    for c in &checks {
        t.rows.push(vec![
            Cell::Text(c.name.into()),
            Cell::Num(Some(c.value)),
            bound(c.lo),
            bound(c.hi),
            Cell::Bool(c.pass()),
        ]);
    }
    let kind = match req.kind {
        Kind::Schlafli => "schlafli",
        Kind::Symbol => "symbol",
        Kind::Bracket => "bracket",
        Kind::Alpha => "alpha",
        Kind::Airy => "airy",
    };
    t.meta.insert("kind".into(), json!(kind));
    Ok((t, checks.iter().all(Check::pass)))
}
