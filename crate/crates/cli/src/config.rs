//! Run configuration: command-line flags over `ZETALAB_PREC_BITS` over an
//! optional `key=value` file over built-in defaults.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::Serialize;

pub const DEFAULT_PRECISION_BITS: u32 = 192;
pub const DEFAULT_MAX_PRECISION_BITS: u32 = 4096;
pub const DEFAULT_N_MAX: u64 = 20;
pub const DEFAULT_MAX_LEVEL: u32 = 10;
pub const MIN_PRECISION_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// `a/b` with positive parts, or a bare positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalArg {
    pub a: u64,
    pub b: u64,
}

impl FromStr for RationalArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let parse = |t: &str| t.parse::<u64>().map_err(|_| format!("`{s}` is not of the form a/b with positive integers"));
        let (a, b) = (parse(a)?, parse(b)?);
        if a == 0 || b == 0 {
            return Err(format!("`{s}`: numerator and denominator must be positive"));
        }
        Ok(RationalArg { a, b })
    }
}

impl fmt::Display for RationalArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

pub fn parse_precision(s: &str) -> Result<u32, String> {
    let v: u32 = s.trim().parse().map_err(|_| format!("`{s}` is not a bit count"))?;
    if v < MIN_PRECISION_BITS {
        return Err(format!("precision must be at least {MIN_PRECISION_BITS} bits, got {v}"));
    }
    Ok(v)
}

pub fn parse_m(s: &str) -> Result<u32, String> {
    let v: u32 = s.trim().parse().map_err(|_| format!("`{s}` is not an integer m"))?;
    if v < 2 {
        return Err(format!("m must be at least 2, got {v}"));
    }
    Ok(v)
}

pub fn parse_n_max(s: &str) -> Result<u64, String> {
    let v: u64 = s.trim().parse().map_err(|_| format!("`{s}` is not a positive integer"))?;
    if v == 0 {
        return Err("n-max must be positive".into());
    }
    Ok(v)
}

fn parse_m_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',').map(parse_m).collect()
}

fn parse_u32(s: &str) -> Result<u32, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn parse_u64(s: &str) -> Result<u64, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a non-negative integer"))
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct RunArgs {
    /// Largest n swept
    #[arg(long, global = true, value_parser = parse_n_max)]
    pub n_max: Option<u64>,
    /// Comma-separated list of m >= 2
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_m)]
    pub m: Option<Vec<u32>>,
    /// Starting working precision in bits (>= 64)
    #[arg(long, global = true, env = "ZETALAB_PREC_BITS", value_parser = parse_precision)]
    pub prec_bits: Option<u32>,
    /// Precision cap for escalation
    #[arg(long, global = true, value_parser = parse_precision)]
    pub max_prec_bits: Option<u32>,
    /// Hypothetical value of zeta(2m+1), as a/b
    #[arg(long, global = true)]
    pub rational: Option<RationalArg>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest tanh-sinh level
    #[arg(long, global = true)]
    pub max_level: Option<u32>,
    /// Seed for sampled sweeps
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// key=value file with defaults for the flags above
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
}

impl RunArgs {
    /// Fills unset fields from a `key=value` file; keys are flag names with
    /// either `-` or `_`.
    fn merge_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| format!("{}:{}: expected key=value", path.display(), i + 1))?;
            let (key, value) = (key.trim().replace('-', "_"), value.trim());
            let at = |e: String| format!("{}:{}: {e}", path.display(), i + 1);
            match key.as_str() {
                "n_max" => fill(&mut self.n_max, parse_n_max(value).map_err(at)?),
                "m" => fill(&mut self.m, parse_m_list(value).map_err(at)?),
                "prec_bits" | "precision_bits" => fill(&mut self.prec_bits, parse_precision(value).map_err(at)?),
                "max_prec_bits" => fill(&mut self.max_prec_bits, parse_precision(value).map_err(at)?),
                "rational" => fill(&mut self.rational, value.parse().map_err(at)?),
                "format" => fill(&mut self.format, value.parse().map_err(at)?),
                "max_level" => fill(&mut self.max_level, parse_u32(value).map_err(at)?),
                "seed" => fill(&mut self.seed, parse_u64(value).map_err(at)?),
                other => return Err(at(format!("unknown key `{other}`"))),
            }
        }
        Ok(())
    }
}

fn fill<T>(slot: &mut Option<T>, value: T) {
    if slot.is_none() {
        *slot = Some(value);
    }
}

/// Fully resolved configuration; echoed in every report header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub max_precision_bits: u32,
    pub n_max: u64,
    /// Empty when the command was given no `--m` and has no default.
    pub m_list: Vec<u32>,
    #[serde(serialize_with = "ser_rational")]
    pub rational: Option<RationalArg>,
    pub output_format: Format,
    pub max_level: u32,
    pub seed: Option<u64>,
}

fn ser_rational<S: serde::Serializer>(r: &Option<RationalArg>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl RunConfig {
    /// `default_m` is used when neither the flags nor the file set `m`.
    pub fn resolve(mut args: RunArgs, default_m: &[u32]) -> Result<Self, String> {
        if let Some(path) = args.config.clone() {
            args.merge_file(&path)?;
        }
        let precision_bits = args.prec_bits.unwrap_or(DEFAULT_PRECISION_BITS);
        let max_precision_bits = args.max_prec_bits.unwrap_or(DEFAULT_MAX_PRECISION_BITS.max(precision_bits));
        if max_precision_bits < precision_bits {
            return Err(format!("max-prec-bits ({max_precision_bits}) is below prec-bits ({precision_bits})"));
        }
        let mut m_list = args.m.unwrap_or_else(|| default_m.to_vec());
        m_list.sort_unstable();
        m_list.dedup();
        Ok(RunConfig {
            precision_bits,
            max_precision_bits,
            n_max: args.n_max.unwrap_or(DEFAULT_N_MAX),
            m_list,
            rational: args.rational,
            output_format: args.format.unwrap_or(Format::Json),
            max_level: args.max_level.unwrap_or(DEFAULT_MAX_LEVEL),
            seed: args.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        assert_eq!("83/80".parse::<RationalArg>().unwrap(), RationalArg { a: 83, b: 80 });
        assert_eq!("3".parse::<RationalArg>().unwrap(), RationalArg { a: 3, b: 1 });
        assert!("3/0".parse::<RationalArg>().is_err());
        assert!("x/2".parse::<RationalArg>().is_err());
    }

    #[test]
    fn file_fills_only_unset_fields() {
        let dir = std::env::temp_dir().join(format!("zetalab-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(&path, "# comment\nn-max = 7\nm=3,4\nprec_bits=256\nformat=csv\n").unwrap();
        let args = RunArgs { n_max: Some(3), config: Some(path.clone()), ..Default::default() };
        let cfg = RunConfig::resolve(args, &[2]).unwrap();
        assert_eq!(cfg.n_max, 3);
        assert_eq!(cfg.m_list, vec![3, 4]);
        assert_eq!(cfg.precision_bits, 256);
        assert_eq!(cfg.output_format, Format::Csv);
        std::fs::write(&path, "colour=blue\n").unwrap();
        let args = RunArgs { config: Some(path), ..Default::default() };
        assert!(RunConfig::resolve(args, &[2]).is_err());
        std::fs::remove_dir_all(dir).ok();
    }

    #[test]
    fn cap_below_start_is_rejected() {
        let args = RunArgs { prec_bits: Some(512), max_prec_bits: Some(256), ..Default::default() };
        assert!(RunConfig::resolve(args, &[]).is_err());
    }
}
