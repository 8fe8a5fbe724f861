//! `scan`: rank every SNP of a count file under each requested method.

use std::io::{BufRead, Write};

use rayon::prelude::*;
use robust_scan::null::{bootstrap_pvalue, min2_pvalue, BootstrapConfig, BootstrapMethod};
use robust_scan::sim::{key_from_statistic, method_statistic, ranks, ScanMethod};
use robust_scan::stats::{catt, pearson};
use robust_scan::GenotypeCounts;

use crate::error::{CliError, CliResult};
use crate::format::{fmt_g, fmt_opt};
use crate::input::{read_counts, CountRow};

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub methods: Vec<ScanMethod>,
    /// Emit only the best `top` rows under the first method.
    pub top: Option<usize>,
    pub bootstrap: Option<usize>,
    pub seed: u64,
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanSummary {
    pub rows: usize,
    pub skipped: usize,
}

struct Scored {
    statistics: Vec<Option<f64>>,
    p_values: Vec<Option<f64>>,
}

/// P-value columns available for a method; MAX3 and GMS need a bootstrap.
fn has_p_value(method: ScanMethod, bootstrap: bool) -> bool {
    match method {
        ScanMethod::Catt | ScanMethod::Pearson | ScanMethod::Min2 => true,
        ScanMethod::Max3 | ScanMethod::Gms => bootstrap,
    }
}

fn p_value(c: &GenotypeCounts, method: ScanMethod, statistic: f64, boot: Option<BootstrapConfig>) -> Option<f64> {
    match method {
        ScanMethod::Catt => catt(c, 0.5).ok()?.p_value,
        ScanMethod::Pearson => pearson(c).ok()?.p_value,
        ScanMethod::Min2 => min2_pvalue(statistic).ok(),
        ScanMethod::Max3 => bootstrap_pvalue(c, BootstrapMethod::Max3, boot?).ok(),
        ScanMethod::Gms => bootstrap_pvalue(c, BootstrapMethod::gms(), boot?).ok(),
    }
}

// Golden-ratio stride keeps per-row bootstrap seeds distinct.
fn row_seed(seed: u64, row: usize) -> u64 {
    seed.wrapping_add((row as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn score(row: &CountRow, index: usize, opts: &ScanOptions) -> CliResult<Scored> {
    let boot = opts
        .bootstrap
        .map(|n| BootstrapConfig::new(n, row_seed(opts.seed, index)))
        .transpose()?;
    let mut statistics = Vec::with_capacity(opts.methods.len());
    let mut p_values = Vec::new();
    for &m in &opts.methods {
        let stat = method_statistic(&row.counts, m).ok();
        statistics.push(stat);
        if has_p_value(m, boot.is_some()) {
            p_values.push(stat.and_then(|s| p_value(&row.counts, m, s, boot)));
        }
    }
    Ok(Scored { statistics, p_values })
}

pub fn header_columns(methods: &[ScanMethod], bootstrap: bool) -> Vec<String> {
    let mut cols = vec!["snp_id".to_string()];
    for m in methods {
        cols.extend(["stat", "key", "rank"].map(|s| format!("{m}_{s}")));
    }
    cols.extend(methods.iter().filter(|m| has_p_value(**m, bootstrap)).map(|m| format!("{m}_p")));
    cols
}

pub fn run_scan<R: BufRead>(
    input: R,
    opts: &ScanOptions,
    out: &mut dyn Write,
    warn: &mut dyn Write,
) -> CliResult<ScanSummary> {
    if opts.methods.is_empty() {
        return Err(CliError::Usage("at least one method is required".to_string()));
    }
    let file = read_counts(input)?;
    for s in &file.skipped {
        writeln!(warn, "warning: line {}: skipping '{}': {}", s.line, s.snp_id, s.reason)?;
    }
    if !file.skipped.is_empty() {
        writeln!(warn, "warning: skipped {} malformed rows", file.skipped.len())?;
    }

    let scored: Vec<Scored> = file
        .rows
        .par_iter()
        .enumerate()
        .map(|(i, row)| score(row, i, opts))
        .collect::<CliResult<_>>()?;
    let usable = scored.iter().any(|s| s.statistics.iter().any(Option::is_some));
    if !usable {
        return Err(CliError::NoUsableRows);
    }

    let key_columns: Vec<Vec<f64>> = opts
        .methods
        .iter()
        .enumerate()
        .map(|(j, &m)| {
            scored
                .iter()
                .map(|s| s.statistics[j].map_or(f64::NEG_INFINITY, |v| key_from_statistic(v, m)))
                .collect()
        })
        .collect();
    let rank_columns: Vec<Vec<usize>> = key_columns.iter().map(|k| ranks(k)).collect();

    writeln!(out, "# robust-scan scan")?;
    if let Some(ts) = &opts.timestamp {
        writeln!(out, "# generated_unix={ts}")?;
    }
    let methods: Vec<&str> = opts.methods.iter().map(|m| m.as_str()).collect();
    writeln!(out, "# methods={}", methods.join(","))?;
    if let Some(n) = opts.bootstrap {
        writeln!(out, "# bootstrap={n} seed={}", opts.seed)?;
    }
    writeln!(out, "# rows={} skipped={}", file.rows.len(), file.skipped.len())?;
    writeln!(out, "{}", header_columns(&opts.methods, opts.bootstrap.is_some()).join("\t"))?;

    let mut order: Vec<usize> = (0..file.rows.len()).collect();
    order.sort_by_key(|&i| rank_columns[0][i]);
    let limit = opts.top.unwrap_or(order.len()).min(order.len());
    for &i in &order[..limit] {
        let mut fields = vec![file.rows[i].snp_id.clone()];
        for j in 0..opts.methods.len() {
            let stat = scored[i].statistics[j];
            fields.push(fmt_opt(stat));
            fields.push(if stat.is_some() { fmt_g(key_columns[j][i]) } else { "NA".to_string() });
            fields.push(rank_columns[j][i].to_string());
        }
        fields.extend(scored[i].p_values.iter().map(|p| fmt_opt(*p)));
        writeln!(out, "{}", fields.join("\t"))?;
    }
    Ok(ScanSummary { rows: file.rows.len(), skipped: file.skipped.len() })
}
