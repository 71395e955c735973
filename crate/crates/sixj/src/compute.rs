//! Single evaluations and sweeps.

use rayon::prelude::*;
use serde_json::json;
use sixj_core::exact::sixj_f64;
use sixj_core::uniform::uniform_sixj_with;
use sixj_core::{ponzano_regge_estimate, Error, Regime, SixJArguments, Spin, Tetrahedron, Tolerances};

use crate::table::{spin_decimal, Cell, Table};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exact,
    Uniform,
    Pr,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepVar {
    J12,
    J23,
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Allowed => "allowed",
        Regime::Caustic => "caustic",
        Regime::Forbidden => "forbidden",
    }
}

fn pr_flag(e: &Error) -> &'static str {
    match e {
        Error::CausticDivergence => "pr_caustic",
        Error::NoIntersection => "pr_forbidden",
        _ => "pr_error",
    }
}

/// One record per requested mode. Solver failures are recorded and reported
/// through the returned error after the table is complete.
pub fn point(args: &SixJArguments, mode: Mode, tol: &Tolerances) -> (Table, Option<Failure>) {
    let mut t = Table::new(vec!["mode", "value", "beta", "amplitude", "gamma_parity", "classification", "residual", "flags"]);
    let mut failure = None;
    let fail = |f: &mut Option<Failure>, mode: &str, e: &Error| {
        f.get_or_insert(Failure::Solver(format!("{mode}: {e}")));
    };
    let none = || [Cell::Num(None), Cell::Num(None), Cell::Int(None), Cell::Text(String::new()), Cell::Num(None)];
    if matches!(mode, Mode::Exact | Mode::All) {
        let v = sixj_f64(args).ok();
        let mut row = vec![Cell::Text("exact".into()), Cell::Num(v)];
        row.extend(none());
        row.push(Cell::Flags(vec![]));
        t.rows.push(row);
    }
    if matches!(mode, Mode::Uniform | Mode::All) {
        match uniform_sixj_with(args, tol) {
            Ok(u) => t.rows.push(vec![
                Cell::Text("uniform".into()),
                Cell::Num(Some(u.value)),
                Cell::Num(Some(u.beta)),
                Cell::Num(Some(u.amplitude)),
                Cell::Int(Some(i64::from(u.gamma_parity))),
                Cell::Text(regime_name(u.classification).into()),
                Cell::Num(Some(u.residual)),
                Cell::Flags(if u.experimental { vec!["experimental"] } else { vec![] }),
            ]),
            Err(e) => {
                fail(&mut failure, "uniform", &e);
                let mut row = vec![Cell::Text("uniform".into()), Cell::Num(None)];
                row.extend(none());
                row.push(Cell::Flags(vec!["uniform_error"]));
                t.rows.push(row);
            }
        }
    }
    if matches!(mode, Mode::Pr | Mode::All) {
        let r = ponzano_regge_estimate(args);
        let mut row = vec![Cell::Text("pr".into()), Cell::Num(r.as_ref().ok().copied())];
        row.extend(none());
        match r {
            Ok(_) => row.push(Cell::Flags(vec![])),
            Err(e) => {
                fail(&mut failure, "pr", &e);
                row.push(Cell::Flags(vec![pr_flag(&e)]));
            }
        }
        t.rows.push(row);
    }
    let names = ["j1", "j2", "j3", "j4", "j12", "j23"];
    let spins = [args.j1, args.j2, args.j3, args.j4, args.j12, args.j23];
    for (n, s) in names.iter().zip(spins) {
        t.meta.insert((*n).into(), json!(spin_decimal(s)));
    }
    (t, failure)
}

/// Validated sweep over one intermediate spin.
pub struct SweepSpec {
    pub base: SixJArguments,
    pub var: SweepVar,
    pub from: Spin,
    pub to: Spin,
}

impl SweepSpec {
    /// `fixed` is the intermediate spin held constant; `from`/`to` default to
    /// the full coupling range.
    pub fn new(
        outer: [Spin; 4],
        var: SweepVar,
        fixed: Spin,
        from: Option<Spin>,
        to: Option<Spin>,
    ) -> Result<Self, Failure> {
        let [j1, j2, j3, j4] = outer;
        let b = sixj_core::intermediate_bounds(j1, j2, j3, j4).map_err(|e| Failure::Validation(e.to_string()))?;
        let (lo, hi) = match var {
            SweepVar::J23 => (b.j23_min, b.j23_max),
            SweepVar::J12 => (b.j12_min, b.j12_max),
        };
        let base = match var {
            SweepVar::J23 => SixJArguments::new(j1, j2, j3, j4, fixed, b.j23_min),
            SweepVar::J12 => SixJArguments::new(j1, j2, j3, j4, b.j12_min, fixed),
        }
        .map_err(|e| Failure::Validation(e.to_string()))?;
        let (from, to) = (from.unwrap_or(lo), to.unwrap_or(hi));
        let name = match var {
            SweepVar::J23 => "j23",
            SweepVar::J12 => "j12",
        };
        for s in [from, to] {
            if s < lo || s > hi || (s.twice() - lo.twice()) % 2 != 0 {
                return Err(Failure::Validation(format!(
                    "{name} = {s} outside the allowed values {lo}..={hi}"
                )));
            }
        }
        if from > to {
            return Err(Failure::Validation(format!("empty {name} range {from}..={to}")));
        }
        Ok(SweepSpec { base, var, from, to })
    }

    pub fn values(&self) -> Vec<Spin> {
        (self.from.twice()..=self.to.twice()).step_by(2).map(Spin::from_twice).collect()
    }

    fn args_at(&self, s: Spin) -> SixJArguments {
        let a = &self.base;
        let (j12, j23) = match self.var {
            SweepVar::J23 => (a.j12, s),
            SweepVar::J12 => (s, a.j23),
        };
        a.with_intermediate(j12, j23).expect("range validated")
    }
}

fn sweep_row(spec: &SweepSpec, s: Spin, tol: &Tolerances) -> Vec<Cell> {
    let args = spec.args_at(s);
    let exact = sixj_f64(&args).ok();
    let mut flags = Vec::new();
    let (uniform, beta, class) = match uniform_sixj_with(&args, tol) {
        Ok(u) => {
            if u.experimental {
                flags.push("experimental");
            }
            (Some(u.value), Some(u.beta), regime_name(u.classification))
        }
        Err(_) => {
            flags.push("uniform_error");
            let class = Tetrahedron::from_args(&args).map(|t| regime_name(t.classification.into()));
            (None, None, class.unwrap_or("unknown"))
        }
    };
    let pr = match ponzano_regge_estimate(&args) {
        Ok(v) => Some(v),
        Err(e) => {
            flags.push(pr_flag(&e));
            None
        }
    };
    let err = |x: Option<f64>| Some((x? - exact?).abs());
    vec![
        Cell::spin(s),
        Cell::Num(exact),
        Cell::Num(uniform),
        Cell::Num(pr),
        Cell::Num(err(uniform)),
        Cell::Num(err(pr)),
        Cell::Num(beta),
        Cell::Text(class.into()),
        Cell::Flags(flags),
    ]
}

/// Rows in ascending order of the swept spin, whatever the pool size.
pub fn sweep(spec: &SweepSpec, tol: &Tolerances) -> Table {
    let var = match spec.var {
        SweepVar::J23 => "j23",
        SweepVar::J12 => "j12",
    };
    let mut t = Table::new(vec![
        var,
        "exact",
        "uniform",
        "pr",
        "abs_err_uniform",
        "abs_err_pr",
        "beta",
        "classification",
        "flags",
    ]);
    t.rows = spec.values().par_iter().map(|&s| sweep_row(spec, s, tol)).collect();
    let a = &spec.base;
    for (n, s) in [("j1", a.j1), ("j2", a.j2), ("j3", a.j3), ("j4", a.j4)] {
        t.meta.insert(n.into(), json!(spin_decimal(s)));
    }
    let fixed = match spec.var {
        SweepVar::J23 => ("j12", a.j12),
        SweepVar::J12 => ("j23", a.j23),
    };
    t.meta.insert(fixed.0.into(), json!(spin_decimal(fixed.1)));
    t.meta.insert("sweep".into(), json!(var));
    t.meta.insert("from".into(), json!(spin_decimal(spec.from)));
    t.meta.insert("to".into(), json!(spin_decimal(spec.to)));
    t.meta.insert("quad_tol".into(), json!(tol.quad_abs));
    t.meta.insert("root_tol".into(), json!(tol.root));
    t
}
