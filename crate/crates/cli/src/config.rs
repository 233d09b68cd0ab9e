//! Command-line arguments, the optional `key = value` config file, and the
//! validated run configuration they resolve to.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hgcong_core::arith::{is_prime, Rational};
use hgcong_core::verify::{JPolicy, RunOptions, SuiteId};

use crate::CliError;

/// Largest point-count bound accepted from the user.
pub const MAX_POINT_BOUND: u64 = 100_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "hgcong",
    version,
    about = "Verify trace/hypergeometric congruences over prime ranges"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Check the congruence for given j-invariants at one prime or a range
    Theorem,
    /// Sweep a prime range with a j-invariant policy
    Scan,
    /// Run one lemma suite, by numeric id or name
    Lemma { id: String },
    /// The informational mod p^2 comparison
    Probe,
    /// Every suite at default parameters plus the theorem sweep to 37
    Selftest,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Flags {
    /// Single prime (theorem, probe)
    #[arg(long, global = true)]
    pub p: Option<u64>,

    /// Comma-separated j-invariants, integers or fractions
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub j: Option<Vec<String>>,

    #[arg(long = "p-min", global = true)]
    pub p_min: Option<u64>,

    #[arg(long = "p-max", global = true)]
    pub p_max: Option<u64>,

    /// Residue-degree cap (1 or 2)
    #[arg(short = 'l', long = "l", global = true)]
    pub l: Option<u32>,

    /// p-adic precision k for the probe (1 or 2)
    #[arg(long, global = true)]
    pub precision: Option<u32>,

    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,

    /// Write reports here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, env = "HGCONG_WORKERS")]
    pub workers: Option<usize>,

    /// Seed for sampled j-invariants
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Sample this many j residues per prime instead of all of them
    #[arg(long, global = true)]
    pub sample: Option<usize>,

    /// Largest field size whose points are counted
    #[arg(long, global = true)]
    pub bound: Option<u64>,

    /// Also run the degree p^4 - 1 factorization when l = 2
    #[arg(long = "factorization-l2", global = true)]
    pub factorization_l2: bool,

    /// Record per-report wall time
    #[arg(long, global = true)]
    pub timing: bool,

    /// `key = value` file; command-line flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Human,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        <OutputFormat as ValueEnum>::from_str(s, true)
            .map_err(|_| CliError::Usage(format!("unknown output format `{s}`")))
    }
}

/// Fully resolved settings of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub p: Option<u64>,
    pub j: Option<Vec<Rational>>,
    pub p_min: u64,
    pub p_max: u64,
    pub l: u32,
    pub precision: u32,
    pub output: OutputFormat,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub seed: u64,
    pub sample: Option<usize>,
    pub bound: u64,
    pub factorization_l2: bool,
    pub timing: bool,
}

impl RunConfig {
    pub fn options(&self) -> RunOptions {
        RunOptions {
            point_bound: self.bound,
            workers: self.workers,
            timing: self.timing,
        }
    }

    pub fn j_policy(&self) -> JPolicy {
        match (&self.j, self.sample) {
            (Some(list), _) => JPolicy::Explicit(list.clone()),
            (None, Some(n)) => JPolicy::Random { n, seed: self.seed },
            (None, None) => JPolicy::AllResidues,
        }
    }

    /// `--p` if given, else every prime in `[p_min, p_max]`.
    pub fn primes(&self) -> Vec<u64> {
        match self.p {
            Some(p) => vec![p],
            None => hgcong_core::arith::primes_in_range(self.p_min, self.p_max),
        }
    }

    pub fn suite(&self) -> Result<Option<SuiteId>, CliError> {
        match &self.command {
            Command::Lemma { id } => id
                .parse()
                .map(Some)
                .map_err(|e: hgcong_core::Error| CliError::Usage(e.to_string())),
            _ => Ok(None),
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment. Keys use flag names
/// with `-` or `_`.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected `key = value`", n + 1))
        })?;
        map.insert(key.trim().replace('_', "-"), value.trim().to_string());
    }
    Ok(map)
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value `{value}` for `{key}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Usage(format!(
            "invalid value `{value}` for `{key}`"
        ))),
    }
}

fn parse_j_list(values: &[String]) -> Result<Vec<Rational>, CliError> {
    values
        .iter()
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Usage(format!("invalid j-invariant `{s}`")))
        })
        .collect()
}

/// Fills unset flags from the config map.
fn merge(flags: &mut Flags, file: &BTreeMap<String, String>) -> Result<(), CliError> {
    for (key, value) in file {
        let k = key.as_str();
        match k {
            "p" => flags.p = flags.p.or(Some(parse(k, value)?)),
            "j" => {
                if flags.j.is_none() {
                    flags.j = Some(value.split(',').map(str::to_string).collect());
                }
            }
            "p-min" => flags.p_min = flags.p_min.or(Some(parse(k, value)?)),
            "p-max" => flags.p_max = flags.p_max.or(Some(parse(k, value)?)),
            "l" => flags.l = flags.l.or(Some(parse(k, value)?)),
            "precision" => flags.precision = flags.precision.or(Some(parse(k, value)?)),
            "output" => flags.output = flags.output.or(Some(parse(k, value)?)),
            "out" => flags.out = flags.out.take().or_else(|| Some(PathBuf::from(value))),
            "workers" => flags.workers = flags.workers.or(Some(parse(k, value)?)),
            "seed" => flags.seed = flags.seed.or(Some(parse(k, value)?)),
            "sample" => flags.sample = flags.sample.or(Some(parse(k, value)?)),
            "bound" => flags.bound = flags.bound.or(Some(parse(k, value)?)),
            "factorization-l2" => flags.factorization_l2 |= parse_bool(k, value)?,
            "timing" => flags.timing |= parse_bool(k, value)?,
            _ => return Err(CliError::Usage(format!("unknown config key `{key}`"))),
        }
    }
    Ok(())
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_file(&text)
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let mut flags = cli.flags;
        if let Some(path) = flags.config.clone() {
            merge(&mut flags, &read_config(&path)?)?;
        }
        let config = RunConfig {
            command: cli.command,
            p: flags.p,
            j: flags.j.as_deref().map(parse_j_list).transpose()?,
            p_min: flags.p_min.unwrap_or(5),
            p_max: flags.p_max.unwrap_or(37),
            l: flags.l.unwrap_or(1),
            precision: flags.precision.unwrap_or(2),
            output: flags.output.unwrap_or_default(),
            out: flags.out,
            workers: flags.workers,
            seed: flags.seed.unwrap_or(0),
            sample: flags.sample,
            bound: flags
                .bound
                .unwrap_or(hgcong_core::curves::DEFAULT_POINT_BOUND),
            factorization_l2: flags.factorization_l2,
            timing: flags.timing,
        };
        config.validate()?;
        Ok(config)
    }
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.p_min < 5 {
            return usage(format!("--p-min must be at least 5, got {}", self.p_min));
        }
        if self.p_min > self.p_max {
            return usage(format!(
                "empty prime range: --p-min {} > --p-max {}",
                self.p_min, self.p_max
            ));
        }
        if let Some(p) = self.p {
            if p < 5 || !is_prime(p) {
                return usage(format!("--p must be a prime >= 5, got {p}"));
            }
        }
        if !(1..=2).contains(&self.l) {
            return usage(format!("-l must be 1 or 2, got {}", self.l));
        }
        if !(1..=2).contains(&self.precision) {
            return usage(format!(
                "--precision must be 1 or 2, got {}",
                self.precision
            ));
        }
        if self.bound > MAX_POINT_BOUND {
            return usage(format!("--bound must not exceed {MAX_POINT_BOUND}"));
        }
        if self.workers == Some(0) {
            return usage("--workers must be positive".into());
        }
        if matches!(self.command, Command::Theorem | Command::Probe) && self.j.is_none() {
            return usage("--j is required for this subcommand".into());
        }
        if matches!(self.command, Command::Probe) && self.precision < 2 {
            return usage("the probe compares residues mod p^2 and needs --precision 2".into());
        }
        self.suite()?;
        Ok(())
    }
}
