//! Flat `key = value` study configuration files.
//!
//! Keys mirror the simulator's config fields. Unknown, duplicate and missing
//! keys are errors naming the key.

use std::collections::BTreeMap;
use std::str::FromStr;

use robust_scan::ld::GeneticModel;
use robust_scan::sim::{ModelSelectionConfig, ScanConfig, TrueSnpSpec};
use robust_scan::DEFAULT_GMS_THRESHOLD;

use crate::error::{CliError, CliResult};
use crate::format::fmt_g;

pub const RANKING_KEYS: [&str; 9] = [
    "total_snps",
    "true_snps",
    "null_maf_range",
    "cases",
    "controls",
    "prevalence",
    "replicates",
    "top_l",
    "seed",
];

pub const MODEL_SELECTION_KEYS: [&str; 10] = [
    "maf_grid",
    "model_grid",
    "d_prime_grid",
    "prevalence",
    "lambda2_star",
    "cases",
    "controls",
    "replicates",
    "seed",
    "threshold",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| CliError::Parse {
                line: idx + 1,
                message: format!("expected key = value, found '{line}'"),
            })?;
            let key = key.trim().to_string();
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::config(&key, "given more than once"));
            }
        }
        Ok(Self { entries })
    }

    fn check_keys(&self, allowed: &[&str]) -> CliResult<()> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::config(k, format!("unknown key (expected one of {})", allowed.join(", ")))),
            None => Ok(()),
        }
    }

    fn raw(&self, key: &str) -> CliResult<&str> {
        self.entries.get(key).map(String::as_str).ok_or_else(|| CliError::config(key, "missing"))
    }

    fn get<T: FromStr>(&self, key: &str) -> CliResult<T> {
        let raw = self.raw(key)?;
        raw.parse().map_err(|_| CliError::config(key, format!("cannot parse '{raw}'")))
    }

    fn get_or<T: FromStr>(&self, key: &str, default: T) -> CliResult<T> {
        if self.entries.contains_key(key) {
            self.get(key)
        } else {
            Ok(default)
        }
    }

    fn list<T: FromStr>(&self, key: &str, sep: char) -> CliResult<Vec<T>> {
        let raw = self.raw(key)?;
        raw.split(sep)
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| CliError::config(key, format!("cannot parse '{s}'"))))
            .collect()
    }
}

fn join<T>(items: &[T], sep: &str, f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(sep)
}

/// Ranking-scan config; `seed` defaults to 0.
pub fn ranking_config(raw: &RawConfig) -> CliResult<ScanConfig> {
    raw.check_keys(&RANKING_KEYS)?;
    let range: Vec<f64> = raw.list("null_maf_range", ',')?;
    let [lo, hi] = range[..] else {
        return Err(CliError::config("null_maf_range", "expected 'low,high'"));
    };
    let true_snps = raw
        .raw("true_snps")?
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<TrueSnpSpec>().map_err(|e| CliError::config("true_snps", e.to_string())))
        .collect::<CliResult<Vec<_>>>()?;
    let cfg = ScanConfig {
        total_snps: raw.get("total_snps")?,
        true_snps,
        null_maf_range: (lo, hi),
        cases: raw.get("cases")?,
        controls: raw.get("controls")?,
        prevalence: raw.get("prevalence")?,
        replicates: raw.get("replicates")?,
        top_l: raw.get("top_l")?,
        seed: raw.get_or("seed", 0)?,
    };
    cfg.validate().map_err(|e| CliError::config(blame_scan_key(&e.to_string()), e.to_string()))?;
    Ok(cfg)
}

// Validation messages name the offending field first; anything else comes
// from a true-SNP spec.
fn blame_scan_key(message: &str) -> &'static str {
    RANKING_KEYS
        .iter()
        .filter_map(|k| message.find(k).map(|pos| (pos, *k)))
        .min()
        .map_or("true_snps", |(_, k)| k)
}

/// Model-selection config; `seed` defaults to 0 and `threshold` to 1.645.
pub fn model_selection_config(raw: &RawConfig) -> CliResult<ModelSelectionConfig> {
    raw.check_keys(&MODEL_SELECTION_KEYS)?;
    let cfg = ModelSelectionConfig {
        maf_grid: raw.list("maf_grid", ',')?,
        model_grid: raw.list::<GeneticModel>("model_grid", ',')?,
        d_prime_grid: raw.list("d_prime_grid", ',')?,
        prevalence: raw.get("prevalence")?,
        lambda2_star: raw.get("lambda2_star")?,
        cases: raw.get("cases")?,
        controls: raw.get("controls")?,
        replicates: raw.get("replicates")?,
        seed: raw.get_or("seed", 0)?,
        threshold: raw.get_or("threshold", DEFAULT_GMS_THRESHOLD)?,
    };
    for key in ["maf_grid", "model_grid", "d_prime_grid"] {
        if raw.raw(key)?.split(',').all(|s| s.trim().is_empty()) {
            return Err(CliError::config(key, "must list at least one value"));
        }
    }
    cfg.validate().map_err(|e| CliError::config("config", e.to_string()))?;
    Ok(cfg)
}

/// Resolved ranking config as `key=value` lines in a fixed order.
pub fn echo_ranking(cfg: &ScanConfig) -> Vec<String> {
    vec![
        format!("total_snps={}", cfg.total_snps),
        format!("true_snps={}", join(&cfg.true_snps, ";", |s| s.to_string())),
        format!("null_maf_range={},{}", fmt_g(cfg.null_maf_range.0), fmt_g(cfg.null_maf_range.1)),
        format!("cases={}", cfg.cases),
        format!("controls={}", cfg.controls),
        format!("prevalence={}", fmt_g(cfg.prevalence)),
        format!("replicates={}", cfg.replicates),
        format!("top_l={}", cfg.top_l),
        format!("seed={}", cfg.seed),
    ]
}

pub fn echo_model_selection(cfg: &ModelSelectionConfig) -> Vec<String> {
    vec![
        format!("maf_grid={}", join(&cfg.maf_grid, ",", |v| fmt_g(*v))),
        format!("model_grid={}", join(&cfg.model_grid, ",", |m| m.to_string())),
        format!("d_prime_grid={}", join(&cfg.d_prime_grid, ",", |v| fmt_g(*v))),
        format!("prevalence={}", fmt_g(cfg.prevalence)),
        format!("lambda2_star={}", fmt_g(cfg.lambda2_star)),
        format!("cases={}", cfg.cases),
        format!("controls={}", cfg.controls),
        format!("replicates={}", cfg.replicates),
        format!("seed={}", cfg.seed),
        format!("threshold={}", fmt_g(cfg.threshold)),
    ]
}
