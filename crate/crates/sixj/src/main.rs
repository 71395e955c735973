//! `sixj`: exact, uniform and Ponzano-Regge 6j-symbols from the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 failed
//! diagnostic.

mod compute;
mod config;
mod diag;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sixj_core::{SixJArguments, Spin};

use compute::{Mode, SweepSpec, SweepVar};
use config::{Overrides, Settings};
use table::{Format, Table};

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Solver(String),
    Diagnostic,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Solver(_) => 3,
            Failure::Diagnostic => 4,
        }
    }
}

fn parse_spin(s: &str) -> Result<Spin, String> {
    s.parse().map_err(|_| format!("{s:?} is not a non-negative multiple of 1/2"))
}

#[derive(Args, Debug)]
struct SpinArgs {
    #[arg(long, global = true, value_parser = parse_spin)]
    j1: Option<Spin>,
    #[arg(long, global = true, value_parser = parse_spin)]
    j2: Option<Spin>,
    #[arg(long, global = true, value_parser = parse_spin)]
    j3: Option<Spin>,
    #[arg(long, global = true, value_parser = parse_spin)]
    j4: Option<Spin>,
    #[arg(long, global = true, value_parser = parse_spin)]
    j12: Option<Spin>,
    #[arg(long, global = true, value_parser = parse_spin)]
    j23: Option<Spin>,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    #[arg(long, global = true)]
    root_tol: Option<f64>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// INI file with `quad_tol`, `root_tol`, `threads`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
}

#[derive(Parser, Debug)]
#[command(name = "sixj", version, about = "Exact and semiclassical Wigner 6j-symbols")]
struct Cli {
    #[command(flatten)]
    spins: SpinArgs,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "all")]
    mode: Mode,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tabulate every value of one intermediate spin.
    Sweep {
        #[arg(long, value_enum, default_value = "j23")]
        sweep: SweepVar,
        #[arg(long, value_parser = parse_spin)]
        from: Option<Spin>,
        #[arg(long, value_parser = parse_spin)]
        to: Option<Spin>,
    },
    /// Run a verification and report measured deviations.
    Diag {
        #[arg(value_enum)]
        kind: diag::Kind,
        /// Half-dimension of the smaller problem (symbol, bracket).
        #[arg(long, default_value_t = 20)]
        j: u32,
        /// Half-dimension of the larger problem (symbol, bracket).
        #[arg(long, default_value_t = 40)]
        j2x: u32,
        /// Random tetrahedra (schlafli).
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

fn need(s: Option<Spin>, name: &str) -> Result<Spin, Failure> {
    s.ok_or_else(|| Failure::Validation(format!("missing --{name}")))
}

fn outer(s: &SpinArgs) -> Result<[Spin; 4], Failure> {
    Ok([need(s.j1, "j1")?, need(s.j2, "j2")?, need(s.j3, "j3")?, need(s.j4, "j4")?])
}

fn emit(t: &Table, c: &Common) -> Result<(), Failure> {
    let io = |e: io::Error| Failure::Validation(format!("cannot write output: {e}"));
    match &c.out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io)?);
            t.write(c.format, &mut w).map_err(io)?;
            w.flush().map_err(io)
        }
        None => t.write(c.format, io::stdout().lock()).map_err(io),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let overrides = Overrides { quad_tol: cli.common.quad_tol, root_tol: cli.common.root_tol, threads: cli.common.threads };
    let settings = Settings::resolve(&overrides, cli.common.config.as_deref(), |k| std::env::var(k).ok())
        .map_err(Failure::Validation)?;
    if let Some(n) = settings.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Validation(e.to_string()))?;
    }
    let tol = settings.tol;
    let s = &cli.spins;
    match cli.cmd {
        None => {
            let [j1, j2, j3, j4] = outer(s)?;
            let args = SixJArguments::new(j1, j2, j3, j4, need(s.j12, "j12")?, need(s.j23, "j23")?)
                .map_err(|e| Failure::Validation(e.to_string()))?;
            let (t, failure) = compute::point(&args, cli.mode, &tol);
            emit(&t, &cli.common)?;
            failure.map_or(Ok(()), Err)
        }
        Some(Cmd::Sweep { sweep, from, to }) => {
            let fixed = match sweep {
                SweepVar::J23 => need(s.j12, "j12")?,
                SweepVar::J12 => need(s.j23, "j23")?,
            };
            let spec = SweepSpec::new(outer(s)?, sweep, fixed, from, to)?;
            emit(&compute::sweep(&spec, &tol), &cli.common)
        }
        Some(Cmd::Diag { kind, j, j2x, samples }) => {
            let sp = |v: Option<Spin>, d: u32| v.unwrap_or(Spin::integer(d));
            let args = SixJArguments::new(sp(s.j1, 2), sp(s.j2, 3), sp(s.j3, 4), sp(s.j4, 5), sp(s.j12, 4), sp(s.j23, 5))
                .map_err(|e| Failure::Validation(e.to_string()))?;
            let req = diag::Request { kind, seed: cli.common.seed, samples, j, j2x, args };
            let (t, ok) = diag::run(&req, &tol)?;
            emit(&t, &cli.common)?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Diagnostic)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Validation(m) => eprintln!("error: {m}"),
                Failure::Solver(m) => eprintln!("solver error: {m}"),
                Failure::Diagnostic => eprintln!("diagnostic failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
