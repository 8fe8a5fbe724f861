//! Monte Carlo studies: GMS model-selection frequencies under partial LD and
//! genome-wide ranking scans scored by three top-L criteria.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::counts::GenotypeCounts;
use crate::error::{invalid, Error, Result};
use crate::ld::{
    case_control_dists, functional_penetrances, haplotype_table, hwe_genotype_freqs,
    marker_penetrances, AlleleFreqs, GeneticModel,
};
use crate::rng::{multinomial3, substream};
use crate::stats::{catt, gms, max3, min2, pearson, SelectedModel, DEFAULT_GMS_THRESHOLD};

const SCAN_DOMAIN: u64 = 0x5ca7;
const MODEL_SELECTION_DOMAIN: u64 = 0x6e55;

/// Marker MAFs of the six associated SNPs in the reference ranking design.
pub fn true_snp_maf_defaults() -> [f64; 6] {
    [0.1821, 0.2943, 0.1078, 0.4459, 0.1620, 0.1825]
}

/// Functional-locus MAF used by the reference ranking design when LD is
/// incomplete.
pub const PARTIAL_LD_FUNCTIONAL_MAF: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrueSnpSpec {
    /// Genetic model at the functional locus.
    pub model: GeneticModel,
    pub maf_marker: f64,
    pub maf_functional: f64,
    pub lambda2_star: f64,
    pub d_prime: f64,
}

impl TrueSnpSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda2_star >= 1.0) {
            return Err(invalid(format!("lambda2_star = {} must be >= 1", self.lambda2_star)));
        }
        AlleleFreqs::new(self.maf_marker, self.maf_functional)?;
        if !(-1.0..=1.0).contains(&self.d_prime) {
            return Err(invalid(format!("d_prime = {} not in [-1,1]", self.d_prime)));
        }
        Ok(())
    }

    /// Case and control genotype distributions at the marker.
    pub fn marker_dists(&self, k: f64) -> Result<([f64; 3], [f64; 3])> {
        self.validate()?;
        let f_star = functional_penetrances(self.model, self.lambda2_star, self.maf_functional, k)?;
        let h = haplotype_table(AlleleFreqs::new(self.maf_marker, self.maf_functional)?, self.d_prime)?;
        let f = marker_penetrances(&f_star, &h)?;
        case_control_dists(&f, self.maf_marker, k)
    }
}

impl fmt::Display for TrueSnpSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}:{}",
            self.model, self.maf_marker, self.maf_functional, self.lambda2_star, self.d_prime
        )
    }
}

impl FromStr for TrueSnpSpec {
    type Err = Error;

    /// `MODEL:maf_marker:maf_functional:lambda2_star:d_prime`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(invalid(format!(
                "true SNP '{s}' must be MODEL:maf_marker:maf_functional:lambda2_star:d_prime"
            )));
        }
        let num = |i: usize| {
            parts[i]
                .parse::<f64>()
                .map_err(|_| invalid(format!("true SNP '{s}': '{}' is not a number", parts[i])))
        };
        let spec = TrueSnpSpec {
            model: parts[0].parse()?,
            maf_marker: num(1)?,
            maf_functional: num(2)?,
            lambda2_star: num(3)?,
            d_prime: num(4)?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn simulate_true_snp_counts<R: Rng + ?Sized>(
    spec: &TrueSnpSpec,
    k: f64,
    r: u64,
    s: u64,
    rng: &mut R,
) -> Result<GenotypeCounts> {
    let (case_dist, control_dist) = spec.marker_dists(k)?;
    let cases = multinomial3(rng, r, &case_dist);
    let controls = multinomial3(rng, s, &control_dist);
    GenotypeCounts::new(cases, controls)
}

pub fn simulate_null_snp_counts<R: Rng + ?Sized>(
    maf: f64,
    r: u64,
    s: u64,
    rng: &mut R,
) -> Result<GenotypeCounts> {
    if !(maf > 0.0 && maf < 1.0) {
        return Err(invalid(format!("maf = {maf} not in (0,1)")));
    }
    let g = hwe_genotype_freqs(maf);
    let cases = multinomial3(rng, r, &g);
    let controls = multinomial3(rng, s, &g);
    GenotypeCounts::new(cases, controls)
}

/// The five statistics compared when ranking SNPs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanMethod {
    /// `Z_1/2`.
    Catt,
    Pearson,
    Gms,
    Max3,
    Min2,
}

impl ScanMethod {
    pub const ALL: [ScanMethod; 5] =
        [ScanMethod::Catt, ScanMethod::Gms, ScanMethod::Max3, ScanMethod::Min2, ScanMethod::Pearson];

    pub fn as_str(&self) -> &'static str {
        match self {
            ScanMethod::Catt => "CATT",
            ScanMethod::Pearson => "PEARSON",
            ScanMethod::Gms => "GMS",
            ScanMethod::Max3 => "MAX3",
            ScanMethod::Min2 => "MIN2",
        }
    }
}

impl fmt::Display for ScanMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScanMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "CATT" | "CATT_HALF" | "Z_HALF" => Ok(ScanMethod::Catt),
            "PEARSON" => Ok(ScanMethod::Pearson),
            "GMS" => Ok(ScanMethod::Gms),
            "MAX3" => Ok(ScanMethod::Max3),
            "MIN2" => Ok(ScanMethod::Min2),
            other => Err(invalid(format!("unknown method '{other}'"))),
        }
    }
}

/// Raw statistic used for ranking.
pub fn method_statistic(c: &GenotypeCounts, method: ScanMethod) -> Result<f64> {
    match method {
        ScanMethod::Catt => Ok(catt(c, 0.5)?.statistic),
        ScanMethod::Pearson => Ok(pearson(c)?.statistic),
        ScanMethod::Gms => Ok(gms(c, DEFAULT_GMS_THRESHOLD)?.statistic),
        ScanMethod::Max3 => Ok(max3(c)?.statistic),
        ScanMethod::Min2 => Ok(min2(c)?.statistic),
    }
}

/// Ranking key mapped from a raw statistic: larger is more significant.
pub fn key_from_statistic(statistic: f64, method: ScanMethod) -> f64 {
    match method {
        ScanMethod::Catt | ScanMethod::Gms => statistic.abs(),
        ScanMethod::Pearson | ScanMethod::Max3 => statistic,
        ScanMethod::Min2 => -statistic,
    }
}

/// Ranking key; tables on which the method is not computable get the
/// worst possible key.
pub fn rank_key(c: &GenotypeCounts, method: ScanMethod) -> f64 {
    method_statistic(c, method).map_or(f64::NEG_INFINITY, |v| key_from_statistic(v, method))
}

/// Indices ordered from most to least significant; ties keep index order.
pub fn rank_order(keys: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[b].total_cmp(&keys[a]));
    order
}

/// 1-based rank of every index.
pub fn ranks(keys: &[f64]) -> Vec<usize> {
    let mut out = vec![0; keys.len()];
    for (pos, idx) in rank_order(keys).into_iter().enumerate() {
        out[idx] = pos + 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub total_snps: usize,
    pub true_snps: Vec<TrueSnpSpec>,
    pub null_maf_range: (f64, f64),
    pub cases: u64,
    pub controls: u64,
    pub prevalence: f64,
    pub replicates: usize,
    pub top_l: usize,
    pub seed: u64,
}

/// Which mix of functional-locus models the associated SNPs follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrueSnpMix {
    /// 2 REC, 1 ADD, 1 MUL, 2 DOM.
    RecDomHeavy,
    /// 1 REC, 2 ADD, 2 MUL, 1 DOM.
    AddMulHeavy,
}

impl TrueSnpMix {
    pub fn models(&self) -> [GeneticModel; 6] {
        use GeneticModel::*;
        match self {
            TrueSnpMix::RecDomHeavy => [Rec, Rec, Add, Mul, Dom, Dom],
            TrueSnpMix::AddMulHeavy => [Rec, Add, Add, Mul, Mul, Dom],
        }
    }
}

/// Per-group sample size paired with a GRR in the reference ranking design.
pub fn sample_size_for_grr(grr: f64) -> Option<u64> {
    if grr == 1.25 {
        Some(1000)
    } else if grr == 1.5 {
        Some(500)
    } else {
        None
    }
}

impl ScanConfig {
    /// Reference design: 300,000 SNPs, 200 replicates, top 5000, MAFs from
    /// `true_snp_maf_defaults` assigned in order to `mix.models()`.
    /// Under incomplete LD the functional loci have MAF 0.2.
    pub fn reference(mix: TrueSnpMix, grr: f64, d_prime: f64, seed: u64) -> Result<Self> {
        let n = sample_size_for_grr(grr)
            .ok_or_else(|| invalid(format!("no reference sample size for GRR {grr}")))?;
        let true_snps = mix
            .models()
            .iter()
            .zip(true_snp_maf_defaults())
            .map(|(&model, maf)| TrueSnpSpec {
                model,
                maf_marker: maf,
                maf_functional: if d_prime == 1.0 { maf } else { PARTIAL_LD_FUNCTIONAL_MAF },
                lambda2_star: grr,
                d_prime,
            })
            .collect();
        let cfg = ScanConfig {
            total_snps: 300_000,
            true_snps,
            null_maf_range: (0.1, 0.5),
            cases: n,
            controls: n,
            prevalence: 0.1,
            replicates: 200,
            top_l: 5000,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.total_snps == 0 {
            return Err(invalid("total_snps must be positive"));
        }
        if self.true_snps.len() > self.total_snps {
            return Err(invalid("more true SNPs than total_snps"));
        }
        if self.top_l == 0 || self.top_l > self.total_snps {
            return Err(invalid(format!("top_l = {} not in [1, total_snps]", self.top_l)));
        }
        let (lo, hi) = self.null_maf_range;
        if !(lo > 0.0 && hi < 1.0 && lo <= hi) {
            return Err(invalid(format!("null_maf_range ({lo}, {hi}) must satisfy 0 < low <= high < 1")));
        }
        if self.cases == 0 || self.controls == 0 {
            return Err(invalid("cases and controls must be positive"));
        }
        if !(self.prevalence > 0.0 && self.prevalence < 1.0) {
            return Err(invalid(format!("prevalence {} not in (0,1)", self.prevalence)));
        }
        if self.replicates == 0 {
            return Err(invalid("replicates must be positive"));
        }
        for spec in &self.true_snps {
            spec.marker_dists(self.prevalence)?;
        }
        Ok(())
    }

    /// Index of the first associated SNP; associated SNPs occupy the tail.
    pub fn first_true_index(&self) -> usize {
        self.total_snps - self.true_snps.len()
    }
}

/// All tables of one replicate, in SNP-index order.
pub fn simulate_replicate(config: &ScanConfig, replicate: usize) -> Result<Vec<GenotypeCounts>> {
    let first_true = config.first_true_index();
    let dists: Vec<_> = config
        .true_snps
        .iter()
        .map(|spec| spec.marker_dists(config.prevalence))
        .collect::<Result<_>>()?;
    let (lo, hi) = config.null_maf_range;
    (0..config.total_snps)
        .into_par_iter()
        .map(|snp| {
            let mut rng = substream(config.seed, SCAN_DOMAIN, replicate as u64, snp as u64);
            if snp >= first_true {
                let (case_dist, control_dist) = &dists[snp - first_true];
                let cases = multinomial3(&mut rng, config.cases, case_dist);
                let controls = multinomial3(&mut rng, config.controls, control_dist);
                GenotypeCounts::new(cases, controls)
            } else {
                let maf = if lo == hi { lo } else { rng.random_range(lo..hi) };
                simulate_null_snp_counts(maf, config.cases, config.controls, &mut rng)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicateOutcome {
    pub true_in_top: usize,
    /// Smallest rank among associated SNPs, if any exist.
    pub min_rank: Option<usize>,
}

fn replicate_outcomes(config: &ScanConfig, tables: &[GenotypeCounts]) -> Vec<ReplicateOutcome> {
    let first_true = config.first_true_index();
    let keys: Vec<[f64; 5]> = tables
        .par_iter()
        .map(|c| ScanMethod::ALL.map(|m| rank_key(c, m)))
        .collect();
    (0..ScanMethod::ALL.len())
        .map(|m| {
            let column: Vec<f64> = keys.iter().map(|k| k[m]).collect();
            let rank = ranks(&column);
            let true_ranks = &rank[first_true..];
            ReplicateOutcome {
                true_in_top: true_ranks.iter().filter(|&&r| r <= config.top_l).count(),
                min_rank: true_ranks.iter().copied().min(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodCriteria {
    pub method: ScanMethod,
    /// Fraction of replicates with at least one associated SNP in the top L.
    pub prob_at_least_one: f64,
    pub avg_true_in_top: f64,
    /// Mean of the minimum associated-SNP rank over the replicates where
    /// that minimum is within the top L.
    pub mean_min_rank: Option<f64>,
    pub min_rank_replicates: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaReport {
    pub replicates: usize,
    pub true_snps: usize,
    pub top_l: usize,
    pub methods: Vec<MethodCriteria>,
}

impl CriteriaReport {
    pub fn method(&self, method: ScanMethod) -> &MethodCriteria {
        self.methods.iter().find(|m| m.method == method).expect("every method is reported")
    }
}

/// Run every replicate of the scan and aggregate the three criteria.
pub fn run_scan(config: &ScanConfig) -> Result<CriteriaReport> {
    config.validate()?;
    let per_replicate: Vec<Vec<ReplicateOutcome>> = (0..config.replicates)
        .into_par_iter()
        .map(|rep| Ok(replicate_outcomes(config, &simulate_replicate(config, rep)?)))
        .collect::<Result<_>>()?;

    let reps = config.replicates as f64;
    let methods = ScanMethod::ALL
        .iter()
        .enumerate()
        .map(|(m, &method)| {
            let mut hits = 0usize;
            let mut in_top = 0usize;
            let mut min_rank_sum = 0.0;
            let mut min_rank_count = 0usize;
            for outcome in per_replicate.iter().map(|o| o[m]) {
                in_top += outcome.true_in_top;
                if outcome.true_in_top > 0 {
                    hits += 1;
                }
                if let Some(r) = outcome.min_rank.filter(|&r| r <= config.top_l) {
                    min_rank_sum += r as f64;
                    min_rank_count += 1;
                }
            }
            MethodCriteria {
                method,
                prob_at_least_one: hits as f64 / reps,
                avg_true_in_top: in_top as f64 / reps,
                mean_min_rank: (min_rank_count > 0).then(|| min_rank_sum / min_rank_count as f64),
                min_rank_replicates: min_rank_count,
            }
        })
        .collect();
    Ok(CriteriaReport {
        replicates: config.replicates,
        true_snps: config.true_snps.len(),
        top_l: config.top_l,
        methods,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSelectionConfig {
    pub maf_grid: Vec<f64>,
    pub model_grid: Vec<GeneticModel>,
    pub d_prime_grid: Vec<f64>,
    pub prevalence: f64,
    pub lambda2_star: f64,
    pub cases: u64,
    pub controls: u64,
    pub replicates: usize,
    pub seed: u64,
    pub threshold: f64,
}

impl ModelSelectionConfig {
    /// The 36-cell grid with 250 cases, 250 controls, k = 0.1, λ*2 = 2.
    pub fn reference(replicates: usize, seed: u64) -> Self {
        ModelSelectionConfig {
            maf_grid: vec![0.1, 0.3, 0.5],
            model_grid: GeneticModel::ALL.to_vec(),
            d_prime_grid: vec![1.0, 0.8, 0.6],
            prevalence: 0.1,
            lambda2_star: 2.0,
            cases: 250,
            controls: 250,
            replicates,
            seed,
            threshold: DEFAULT_GMS_THRESHOLD,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.maf_grid.is_empty() || self.model_grid.is_empty() || self.d_prime_grid.is_empty() {
            return Err(invalid("model selection grids must be nonempty"));
        }
        if self.replicates == 0 || self.cases == 0 || self.controls == 0 {
            return Err(invalid("replicates, cases and controls must be positive"));
        }
        if !(self.threshold >= 0.0) {
            return Err(invalid(format!("threshold {} must be >= 0", self.threshold)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSelectionCell {
    pub maf: f64,
    pub model: GeneticModel,
    pub d_prime: f64,
    /// Selection counts indexed by `SelectedModel::index`.
    pub counts: [usize; 3],
    /// Replicates on which GMS was not computable.
    pub degenerate: usize,
}

impl ModelSelectionCell {
    /// Selection frequencies over the computable replicates.
    pub fn frequencies(&self) -> [f64; 3] {
        let total: usize = self.counts.iter().sum();
        if total == 0 {
            return [0.0; 3];
        }
        self.counts.map(|c| c as f64 / total as f64)
    }

    pub fn frequency(&self, model: SelectedModel) -> f64 {
        self.frequencies()[model.index()]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSelectionReport {
    pub replicates: usize,
    pub cells: Vec<ModelSelectionCell>,
}

impl ModelSelectionReport {
    pub fn cell(&self, maf: f64, model: GeneticModel, d_prime: f64) -> Option<&ModelSelectionCell> {
        self.cells
            .iter()
            .find(|c| c.maf == maf && c.model == model && c.d_prime == d_prime)
    }
}

// Keyed by the cell's parameters so a cell's draws do not depend on which
// other cells share the grid.
fn cell_key(maf: f64, model: GeneticModel, d_prime: f64) -> u64 {
    maf.to_bits() ^ d_prime.to_bits().rotate_left(21) ^ (model as u64).rotate_left(47)
}

/// Selection frequencies of GMS on marker data simulated from each
/// (MAF, functional model, D′) cell with equal marker and functional MAF.
pub fn run_model_selection_study(config: &ModelSelectionConfig) -> Result<ModelSelectionReport> {
    config.validate()?;
    let mut cells = Vec::new();
    for &maf in &config.maf_grid {
        for &model in &config.model_grid {
            for &d_prime in &config.d_prime_grid {
                let spec = TrueSnpSpec {
                    model,
                    maf_marker: maf,
                    maf_functional: maf,
                    lambda2_star: config.lambda2_star,
                    d_prime,
                };
                let (case_dist, control_dist) = spec.marker_dists(config.prevalence)?;
                let key = cell_key(maf, model, d_prime);
                let picks: Vec<Option<SelectedModel>> = (0..config.replicates)
                    .into_par_iter()
                    .map(|rep| {
                        let mut rng = substream(config.seed, MODEL_SELECTION_DOMAIN, key, rep as u64);
                        let table = GenotypeCounts {
                            cases: multinomial3(&mut rng, config.cases, &case_dist),
                            controls: multinomial3(&mut rng, config.controls, &control_dist),
                        };
                        gms(&table, config.threshold).ok().map(|g| g.selected_model)
                    })
                    .collect();
                let mut counts = [0usize; 3];
                let mut degenerate = 0;
                for pick in picks {
                    match pick {
                        Some(m) => counts[m.index()] += 1,
                        None => degenerate += 1,
                    }
                }
                cells.push(ModelSelectionCell { maf, model, d_prime, counts, degenerate });
            }
        }
    }
    Ok(ModelSelectionReport { replicates: config.replicates, cells })
}
