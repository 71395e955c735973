//! Settings layered as flags > environment > config file > defaults.

use std::path::Path;

use ini::Ini;
use sixj_core::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: Tolerances,
    pub threads: Option<usize>,
}

/// Values given on the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub quad_tol: Option<f64>,
    pub root_tol: Option<f64>,
    pub threads: Option<usize>,
}

fn parse<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, String> {
    raw.trim().parse().map_err(|_| format!("invalid value for {key}: {raw:?}"))
}

fn positive(key: &str, v: f64) -> Result<f64, String> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{key} must be a positive number"))
    }
}

impl Settings {
    pub fn resolve(
        flags: &Overrides,
        config: Option<&Path>,
        env: impl Fn(&str) -> Option<String>,
    ) -> Result<Self, String> {
        let mut s = Settings { tol: Tolerances::default(), threads: None };
        if let Some(path) = config {
            let ini = Ini::load_from_file(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            for (_, props) in ini.iter() {
                for (key, value) in props.iter() {
                    match key {
                        "quad_tol" => s.tol.quad_abs = parse(key, value)?,
                        "root_tol" => s.tol.root = parse(key, value)?,
                        "threads" => s.threads = Some(parse(key, value)?),
                        _ => return Err(format!("unknown config key {key:?}")),
                    }
                }
            }
        }
        if let Some(v) = env("SIXJ_QUAD_TOL") {
            s.tol.quad_abs = parse("SIXJ_QUAD_TOL", &v)?;
        }
        if let Some(v) = env("SIXJ_ROOT_TOL") {
            s.tol.root = parse("SIXJ_ROOT_TOL", &v)?;
        }
        if let Some(v) = env("SIXJ_THREADS") {
            s.threads = Some(parse("SIXJ_THREADS", &v)?);
        }
        if let Some(v) = flags.quad_tol {
            s.tol.quad_abs = v;
        }
        if let Some(v) = flags.root_tol {
            s.tol.root = v;
        }
        if flags.threads.is_some() {
            s.threads = flags.threads;
        }
        s.tol.quad_abs = positive("quad_tol", s.tol.quad_abs)?;
        s.tol.root = positive("root_tol", s.tol.root)?;
        if s.threads == Some(0) {
            return Err("threads must be at least 1".into());
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn no_env(_: &str) -> Option<String> {
        None
    }

    #[test]
    fn defaults() {
        let s = Settings::resolve(&Overrides::default(), None, no_env).unwrap();
        assert_eq!(s.tol, Tolerances::default());
        assert_eq!(s.threads, None);
    }

    #[test]
    fn precedence() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "quad_tol = 1e-6\nroot_tol = 1e-7\nthreads = 3").unwrap();
        let env = |k: &str| (k == "SIXJ_ROOT_TOL").then(|| "1e-8".to_string());
        let flags = Overrides { quad_tol: None, root_tol: None, threads: Some(2) };
        let s = Settings::resolve(&flags, Some(f.path()), env).unwrap();
        assert_eq!(s.tol.quad_abs, 1e-6);
        assert_eq!(s.tol.root, 1e-8);
        assert_eq!(s.threads, Some(2));

        let flags = Overrides { root_tol: Some(1e-9), ..Overrides::default() };
        let s = Settings::resolve(&flags, Some(f.path()), env).unwrap();
        assert_eq!(s.tol.root, 1e-9);
        assert_eq!(s.threads, Some(3));
    }

    #[test]
    fn rejects_bad_values() {
        let env = |k: &str| (k == "SIXJ_QUAD_TOL").then(|| "abc".to_string());
        assert!(Settings::resolve(&Overrides::default(), None, env).is_err());
        let flags = Overrides { quad_tol: Some(-1.0), ..Overrides::default() };
        assert!(Settings::resolve(&flags, None, no_env).is_err());
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "colour = blue").unwrap();
        assert!(Settings::resolve(&Overrides::default(), Some(f.path()), no_env).is_err());
    }
}
