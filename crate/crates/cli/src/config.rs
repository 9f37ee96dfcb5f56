//! Run configuration: command-line flags merged over an optional key-value file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use landau_cs::dynamics::ModelProfile;
use num_complex::Complex64;

use crate::table::Format;
use crate::CliError;

/// Inclusive uniform grid `lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Self {
        Self { lo, hi, n }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("expected `lo:hi:n`, got `{text}`"));
        };
        let lo: f64 = lo.parse().map_err(|_| format!("cannot parse `{lo}` as a number"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("cannot parse `{hi}` as a number"))?;
        let n: usize = n.parse().map_err(|_| format!("cannot parse `{n}` as a point count"))?;
        if n == 0 {
            return Err("grid must contain at least one point".into());
        }
        if !lo.is_finite() || !hi.is_finite() || (n > 1 && hi <= lo) {
            return Err(format!("grid range `{text}` is empty"));
        }
        Ok(Self { lo, hi, n })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.lo + step * i as f64).collect()
    }
}

/// `re` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("cannot parse `{}` as a number", s.trim()));
    match text.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(text)?, 0.0)),
    }
}

/// Built-in profile names accepted by `--profile`; anything else is read as a profile file.
pub const PROFILES: [&str; 4] = ["constant", "caldirola-kanai", "modulated-frequency", "modulated-mass"];

pub fn builtin_profile(name: &str) -> Option<ModelProfile> {
    let text = match name {
        "constant" => "kind = constant\nbfield = 1",
        "caldirola-kanai" => "kind = caldirola-kanai\nrate = 0.1\nbfield = 1",
        "modulated-frequency" => "kind = modulated-frequency\neps = 0.2\nfreq = 2\nbfield = 1",
        "modulated-mass" => "kind = modulated-mass\neps = 0.2\nfreq = 1.5\nbfield = 1",
        _ => return None,
    };
    Some(ModelProfile::from_config_str(text).expect("built-in profile is valid"))
}

pub fn resolve_profile(value: &str) -> Result<ModelProfile, CliError> {
    if let Some(p) = builtin_profile(value) {
        return Ok(p);
    }
    let text = std::fs::read_to_string(value)
        .map_err(|e| CliError::Config(format!("profile `{value}` is neither a built-in name nor a readable file: {e}")))?;
    ModelProfile::from_config_str(&text).map_err(|e| CliError::Config(format!("{value}: {e}")))
}

/// Option values as strings, before typing; filled from flags and from a config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawOptions {
    pub values: BTreeMap<&'static str, String>,
}

/// Keys understood in a config file; each matches the long flag of the same name.
pub const KEYS: [&str; 16] = [
    "ell", "m", "z", "z2", "profile", "grid", "pgrid", "out", "format", "tol", "time", "nmax", "rho0", "rho_dot0",
    "quick", "experimental",
];

impl RawOptions {
    pub fn set(&mut self, key: &'static str, value: Option<String>) {
        if let Some(v) = value {
            self.values.insert(key, v);
        }
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn from_config_str(text: &str) -> Result<(Self, BTreeMap<&'static str, usize>), CliError> {
        let mut raw = Self::default();
        let mut lines = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", i + 1)))?;
            let key = KEYS
                .iter()
                .find(|&&known| known == k.trim())
                .ok_or_else(|| CliError::Config(format!("line {}: unknown field `{}`", i + 1, k.trim())))?;
            raw.values.insert(key, v.trim().to_string());
            lines.insert(*key, i + 1);
        }
        Ok((raw, lines))
    }
}

/// Typed options shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub ell: f64,
    pub m: usize,
    pub z: Complex64,
    pub profile: Option<ModelProfile>,
    pub grid: Option<Grid>,
    pub pgrid: Option<Grid>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tol: f64,
    pub time: f64,
    pub nmax: Option<usize>,
    pub rho0: Option<f64>,
    pub rho_dot0: f64,
    pub quick: bool,
    pub experimental: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ell: 1.0,
            m: 0,
            z: Complex64::new(1.0, 0.0),
            profile: None,
            grid: None,
            pgrid: None,
            out: None,
            format: Format::Csv,
            tol: 1e-16,
            time: 0.0,
            nmax: None,
            rho0: None,
            rho_dot0: 0.0,
            quick: false,
            experimental: false,
        }
    }
}

impl RunConfig {
    /// Flags take precedence over the file; errors name the flag or the file line.
    pub fn resolve(flags: &RawOptions, file: Option<&Path>) -> Result<Self, CliError> {
        let (file_raw, file_lines) = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                RawOptions::from_config_str(&text)
                    .map_err(|e| CliError::Config(format!("{}: {}", path.display(), e.detail())))?
            }
            None => Default::default(),
        };
        let lookup = |key: &'static str| -> Option<(String, String)> {
            if let Some(v) = flags.values.get(key) {
                return Some((v.clone(), format!("flag --{}", key.replace('_', "-"))));
            }
            file_raw.values.get(key).map(|v| {
                let where_ = match file {
                    Some(p) => format!("{} line {}: field `{key}`", p.display(), file_lines[key]),
                    None => format!("field `{key}`"),
                };
                (v.clone(), where_)
            })
        };
        fn typed<T>(
            lookup: &dyn Fn(&'static str) -> Option<(String, String)>,
            key: &'static str,
            parse: impl Fn(&str) -> Result<T, String>,
        ) -> Result<Option<T>, CliError> {
            match lookup(key) {
                Some((v, where_)) => parse(&v).map(Some).map_err(|e| CliError::Config(format!("{where_}: {e}"))),
                None => Ok(None),
            }
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("cannot parse `{s}` as a number"));
        let count = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("cannot parse `{s}` as a count"));
        let flag = |s: &str| match s.trim() {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            other => Err(format!("expected true or false, got `{other}`")),
        };
        let positive = |s: &str| {
            let v = num(s)?;
            if v > 0.0 {
                Ok(v)
            } else {
                Err(format!("must be positive, got {v}"))
            }
        };
        let mut cfg = RunConfig::default();
        if let Some(v) = typed(&lookup, "ell", |s| {
            let v = num(s)?;
            if v >= 0.0 {
                Ok(v)
            } else {
                Err(format!("must be >= 0, got {v}"))
            }
        })? {
            cfg.ell = v;
        }
        if let Some(v) = typed(&lookup, "m", count)? {
            cfg.m = v;
        }
        let z = typed(&lookup, "z", parse_complex)?;
        let z2 = typed(&lookup, "z2", |s| {
            let v = num(s)?;
            if v >= 0.0 {
                Ok(v)
            } else {
                Err(format!("|z|² must be >= 0, got {v}"))
            }
        })?;
        cfg.z = match (z, z2) {
            (Some(_), Some(_)) => return Err(CliError::Config("give either --z or --z2, not both".into())),
            (Some(z), None) => z,
            (None, Some(z2)) => Complex64::new(z2.sqrt(), 0.0),
            (None, None) => cfg.z,
        };
        if let Some((v, where_)) = lookup("profile") {
            cfg.profile = Some(resolve_profile(&v).map_err(|e| CliError::Config(format!("{where_}: {}", e.detail())))?);
        }
        cfg.grid = typed(&lookup, "grid", Grid::parse)?;
        cfg.pgrid = typed(&lookup, "pgrid", Grid::parse)?;
        cfg.out = typed(&lookup, "out", |s| Ok(PathBuf::from(s)))?;
        if let Some(v) = typed(&lookup, "format", |s| match s.trim() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (csv or json)")),
        })? {
            cfg.format = v;
        }
        if let Some(v) = typed(&lookup, "tol", positive)? {
            cfg.tol = v;
        }
        if let Some(v) = typed(&lookup, "time", num)? {
            cfg.time = v;
        }
        cfg.nmax = typed(&lookup, "nmax", count)?;
        cfg.rho0 = typed(&lookup, "rho0", positive)?;
        if let Some(v) = typed(&lookup, "rho_dot0", num)? {
            cfg.rho_dot0 = v;
        }
        if let Some(v) = typed(&lookup, "quick", flag)? {
            cfg.quick = v;
        }
        if let Some(v) = typed(&lookup, "experimental", flag)? {
            cfg.experimental = v;
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(Grid::parse("0:1:3").unwrap().points(), vec![0.0, 0.5, 1.0]);
        assert_eq!(Grid::parse("2:2:1").unwrap().points(), vec![2.0]);
        assert!(Grid::parse("1:0:5").is_err());
        assert!(Grid::parse("0:1:0").is_err());
        assert!(Grid::parse("0:1").is_err());
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("1e-3").unwrap(), Complex64::new(1e-3, 0.0));
        assert_eq!(parse_complex("-1, 2.5").unwrap(), Complex64::new(-1.0, 2.5));
        assert!(parse_complex("a,b").is_err());
    }

    #[test]
    fn config_file_errors_name_line_and_field() {
        let err = RawOptions::from_config_str("ell = 1\nbogus = 2\n").unwrap_err();
        assert_eq!(err.detail(), "line 2: unknown field `bogus`");
        let err = RawOptions::from_config_str("ell 1\n").unwrap_err();
        assert_eq!(err.detail(), "line 1: expected `key = value`");
    }
}
