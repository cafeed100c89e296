//! `key = value` sweep configuration.
//!
//! ```text
//! # sizes and model
//! n_values = 32, 64, 128
//! p0 = 0.5
//! replicates = 20
//! variants = p, ps
//! solver = greedy
//! output_path = out/sweep.csv
//! ```
//!
//! Lists are comma separated, optionally wrapped in brackets. Unknown or
//! repeated keys are errors.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use trisub::exact::{SolveBudget, Variant};
use trisub::gen::EntryDistribution;
use trisub::matcore::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ConfigError {
    /// 1-based; 0 for problems not tied to a line (missing keys, totals).
    pub line: usize,
    pub msg: String,
}

impl ConfigError {
    fn new(line: usize, msg: impl Into<String>) -> Self {
        ConfigError { line, msg: msg.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverKind {
    Exact,
    Greedy,
    CornerThenExtend,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Exact => "exact",
            SolverKind::Greedy => "greedy",
            SolverKind::CornerThenExtend => "corner-then-extend",
        }
    }

    pub fn supports(self, v: Variant) -> bool {
        self != SolverKind::CornerThenExtend || matches!(v, Variant::Permuted | Variant::PermutedSpecial)
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [SolverKind::Exact, SolverKind::Greedy, SolverKind::CornerThenExtend]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown solver {s:?} (expected exact, greedy or corner-then-extend)"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub p0: f64,
    pub p1: f64,
    pub extra_symbol_probs: Vec<f64>,
    pub replicates: usize,
    pub variants: Vec<Variant>,
    pub solver: SolverKind,
    pub budget: SolveBudget,
    pub master_seed: u64,
    pub output_path: PathBuf,
    /// 0 uses every available thread, 1 runs sequentially.
    pub workers: usize,
    /// Restarts for the randomized solvers.
    pub restarts: usize,
    /// Record wall-clock times in the `millis` column. Off by default so
    /// that reruns are byte-identical.
    pub timing: bool,
}

const KEYS: [&str; 14] = [
    "n_values",
    "p0",
    "p1",
    "extra_symbol_probs",
    "replicates",
    "variants",
    "solver",
    "budget_nodes",
    "budget_ms",
    "master_seed",
    "output_path",
    "workers",
    "restarts",
    "timing",
];

fn list(value: &str) -> Vec<&str> {
    let v = value.trim();
    let v = v.strip_prefix('[').and_then(|v| v.strip_suffix(']')).unwrap_or(v);
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.trim().parse().map_err(|e| ConfigError::new(line, format!("{key}: {e}")))
}

fn probability(line: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    let p: f64 = parse(line, key, value)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(ConfigError::new(line, format!("{key}: {p} is not a probability")));
    }
    Ok(p)
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut seen: Vec<(&str, usize, &str)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::new(line, format!("expected `key = value`, got {content:?}")));
            };
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(ConfigError::new(line, format!("unknown key {key:?}")));
            }
            if let Some((_, first, _)) = seen.iter().find(|s| s.0 == key) {
                return Err(ConfigError::new(line, format!("{key} already set on line {first}")));
            }
            seen.push((key, line, value.trim()));
        }
        let get = |key: &str| seen.iter().find(|s| s.0 == key).map(|s| (s.1, s.2));
        let require = |key: &str| get(key).ok_or_else(|| ConfigError::new(0, format!("missing required key {key}")));

        let (line, v) = require("n_values")?;
        let n_values = list(v).into_iter().map(|s| parse::<usize>(line, "n_values", s)).collect::<Result<Vec<_>, _>>()?;
        if n_values.is_empty() {
            return Err(ConfigError::new(line, "n_values is empty"));
        }
        if let Some(n) = n_values.iter().find(|&&n| n < 2) {
            return Err(ConfigError::new(line, format!("n_values: {n} is below 2 (log_Q n would vanish)")));
        }

        let (p0_line, v) = require("p0")?;
        let p0 = probability(p0_line, "p0", v)?;
        let extra_symbol_probs = match get("extra_symbol_probs") {
            Some((line, v)) => {
                list(v).into_iter().map(|s| probability(line, "extra_symbol_probs", s)).collect::<Result<Vec<_>, _>>()?
            }
            None => Vec::new(),
        };
        let extra_total: f64 = extra_symbol_probs.iter().sum();
        let p1 = match get("p1") {
            Some((line, v)) => probability(line, "p1", v)?,
            None => 1.0 - p0 - extra_total,
        };
        let total = p0 + p1 + extra_total;
        if total > 1.0 + 1e-9 {
            return Err(ConfigError::new(p0_line, format!("probabilities sum to {total}, above 1")));
        }
        if total < 1.0 - 1e-9 {
            return Err(ConfigError::new(p0_line, format!("probabilities sum to {total}; the remainder is unassigned")));
        }
        if p0 <= 0.0 || p1 <= 0.0 {
            return Err(ConfigError::new(p0_line, "p0 and p1 must both be positive"));
        }

        let replicates = match get("replicates") {
            Some((line, v)) => {
                let r: usize = parse(line, "replicates", v)?;
                if r == 0 {
                    return Err(ConfigError::new(line, "replicates must be at least 1"));
                }
                r
            }
            None => 1,
        };
        let solver = match get("solver") {
            Some((line, v)) => v.parse().map_err(|e: String| ConfigError::new(line, e))?,
            None => SolverKind::Exact,
        };
        let variants = match get("variants") {
            Some((line, v)) => {
                let vs = list(v)
                    .into_iter()
                    .map(|s| s.parse::<Variant>().map_err(|e| ConfigError::new(line, e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                if vs.is_empty() {
                    return Err(ConfigError::new(line, "variants is empty"));
                }
                for (i, a) in vs.iter().enumerate() {
                    if vs[..i].contains(a) {
                        return Err(ConfigError::new(line, format!("variant {a} listed twice")));
                    }
                    if !solver.supports(*a) {
                        return Err(ConfigError::new(line, format!("solver {solver} does not support variant {a}")));
                    }
                }
                vs
            }
            None if solver == SolverKind::CornerThenExtend => vec![Variant::Permuted, Variant::PermutedSpecial],
            None => Variant::ALL.to_vec(),
        };
        let opt_u64 = |key: &str| -> Result<Option<u64>, ConfigError> {
            get(key).map(|(line, v)| parse::<u64>(line, key, v)).transpose()
        };
        let budget = SolveBudget { max_nodes: opt_u64("budget_nodes")?, max_millis: opt_u64("budget_ms")? };
        let master_seed = opt_u64("master_seed")?.unwrap_or(0);
        let (_, out) = require("output_path")?;
        let workers = get("workers").map(|(l, v)| parse::<usize>(l, "workers", v)).transpose()?.unwrap_or(0);
        let restarts = match get("restarts") {
            Some((line, v)) => {
                let r: usize = parse(line, "restarts", v)?;
                if r == 0 {
                    return Err(ConfigError::new(line, "restarts must be at least 1"));
                }
                r
            }
            None => 16,
        };
        let timing = get("timing").map(|(l, v)| parse::<bool>(l, "timing", v)).transpose()?.unwrap_or(false);

        Ok(SweepConfig {
            n_values,
            p0,
            p1,
            extra_symbol_probs,
            replicates,
            variants,
            solver,
            budget,
            master_seed,
            output_path: PathBuf::from(out),
            workers,
            restarts,
            timing,
        })
    }

    pub fn distribution(&self) -> EntryDistribution {
        let alphabet = Arc::new(Alphabet::with_extras(self.extra_symbol_probs.len()));
        let mut probs = vec![self.p0, self.p1];
        probs.extend(&self.extra_symbol_probs);
        EntryDistribution::new(alphabet, probs).expect("validated when parsed")
    }

    /// Where the JSON summary goes: the output path with its extension
    /// replaced by `summary.json`.
    pub fn summary_path(&self) -> PathBuf {
        self.output_path.with_extension("summary.json")
    }
}
