//! Single-table association statistics: Cochran–Armitage trend tests,
//! Pearson's chi-square, MAX3, MIN2, the HWD trend test and the two-phase
//! genetic model selection (GMS) statistic.

use std::fmt;
use std::str::FromStr;

use crate::counts::GenotypeCounts;
use crate::error::{invalid, Error, Result};
use crate::special::{chi2_sf, normal_two_sided_p};

/// One-sided 5% normal quantile used by the model selection rule.
pub const DEFAULT_GMS_THRESHOLD: f64 = 1.645;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Catt0,
    CattHalf,
    Catt1,
    /// Trend test at a score other than 0, 1/2 or 1.
    Catt,
    Pearson,
    Max3,
    Min2,
    Gms,
    Hwdtt,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Catt0 => "CATT0",
            Method::CattHalf => "CATT_HALF",
            Method::Catt1 => "CATT1",
            Method::Catt => "CATT",
            Method::Pearson => "PEARSON",
            Method::Max3 => "MAX3",
            Method::Min2 => "MIN2",
            Method::Gms => "GMS",
            Method::Hwdtt => "HWDTT",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: Option<f64>,
    pub method: Method,
}

/// Trend test statistic `Z_x` with genotype scores `(0, x, 1)`.
///
/// Positive when cases carry more B alleles than controls.
pub fn trend_z(c: &GenotypeCounts, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(invalid(format!("trend score x = {x} not in [0,1]")));
    }
    let [_, n1, n2] = c.column_totals().map(|v| v as f64);
    let [_, r1, r2] = c.cases.map(|v| v as f64);
    let (r, s, n) = (c.r() as f64, c.s() as f64, c.n() as f64);

    let score_total = x * n1 + n2;
    let numerator = n * (x * r1 + r2) - r * score_total;
    let spread = n * (x * x * n1 + n2) - score_total * score_total;
    // Exact-integer spreads can still come out as tiny rounding residue.
    if spread <= 1e-9 * n * n {
        return Err(Error::ZeroVariance { score: x });
    }
    Ok(n.sqrt() * numerator / (r * s * spread).sqrt())
}

pub fn catt(c: &GenotypeCounts, x: f64) -> Result<TestResult> {
    let z = trend_z(c, x)?;
    let method = if x == 0.0 {
        Method::Catt0
    } else if x == 0.5 {
        Method::CattHalf
    } else if x == 1.0 {
        Method::Catt1
    } else {
        Method::Catt
    };
    Ok(TestResult { statistic: z, p_value: Some(normal_two_sided_p(z)), method })
}

/// Pearson's chi-square on the 2×3 table. Empty genotype columns are
/// dropped and cost one degree of freedom each.
pub fn pearson(c: &GenotypeCounts) -> Result<TestResult> {
    let totals = c.column_totals();
    let occupied = totals.iter().filter(|&&t| t > 0).count();
    if occupied < 2 {
        return Err(Error::DegenerateTable(format!(
            "{c}: fewer than two nonempty genotype columns"
        )));
    }
    let (r, s, n) = (c.r() as f64, c.s() as f64, c.n() as f64);
    let mut stat = 0.0;
    for i in 0..3 {
        if totals[i] == 0 {
            continue;
        }
        let ni = totals[i] as f64;
        for (obs, margin) in [(c.cases[i] as f64, r), (c.controls[i] as f64, s)] {
            let exp = ni * margin / n;
            stat += (obs - exp) * (obs - exp) / exp;
        }
    }
    let df = (occupied - 1) as u32;
    Ok(TestResult { statistic: stat, p_value: Some(chi2_sf(stat, df)), method: Method::Pearson })
}

/// `max(|Z_0|, |Z_1/2|, |Z_1|)` over the computable components.
pub fn max3(c: &GenotypeCounts) -> Result<TestResult> {
    let best = [0.0, 0.5, 1.0]
        .iter()
        .filter_map(|&x| trend_z(c, x).ok())
        .map(f64::abs)
        .fold(None, |acc: Option<f64>, z| Some(acc.map_or(z, |m| m.max(z))));
    match best {
        Some(statistic) => Ok(TestResult { statistic, p_value: None, method: Method::Max3 }),
        None => Err(Error::DegenerateTable(format!("{c}: no trend test is computable"))),
    }
}

/// Minimum of the Pearson and `Z_1/2` p-values. This is a ranking
/// statistic, not a p-value; see `null::min2_pvalue`.
pub fn min2(c: &GenotypeCounts) -> Result<TestResult> {
    let p_pearson = pearson(c)?.p_value.expect("pearson has a p-value");
    let p_trend = catt(c, 0.5)?.p_value.expect("catt has a p-value");
    Ok(TestResult { statistic: p_pearson.min(p_trend), p_value: None, method: Method::Min2 })
}

/// HWD trend test: normalized difference of the case and control HWD
/// coefficients estimated from sample genotype proportions.
pub fn hwdtt(c: &GenotypeCounts) -> Result<TestResult> {
    let [n0, n1, n2] = c.column_totals();
    if n1 + n2 == 0 || n0 + n1 == 0 {
        return Err(Error::DegenerateTable(format!("{c}: monomorphic pooled sample")));
    }
    let (r, s, n) = (c.r() as f64, c.s() as f64, c.n() as f64);
    let delta_case = crate::ld::hwd_coefficient(&c.case_proportions());
    let delta_control = crate::ld::hwd_coefficient(&c.control_proportions());
    let allele = n2 as f64 / n + n1 as f64 / (2.0 * n);
    let z = (r * s / n).sqrt() * (delta_case - delta_control) / ((1.0 - allele) * allele);
    Ok(TestResult { statistic: z, p_value: Some(normal_two_sided_p(z)), method: Method::Hwdtt })
}

/// Swap allele labels when `Z_1/2 < 0` so that B is the risk allele.
/// Ties keep the original orientation.
pub fn orient_risk_allele(c: &GenotypeCounts) -> Result<(GenotypeCounts, bool)> {
    if trend_z(c, 0.5)? < 0.0 {
        Ok((c.reversed(), true))
    } else {
        Ok((*c, false))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelectedModel {
    Rec,
    AddMul,
    Dom,
}

impl SelectedModel {
    pub const ALL: [SelectedModel; 3] = [SelectedModel::Rec, SelectedModel::AddMul, SelectedModel::Dom];

    pub fn as_str(&self) -> &'static str {
        match self {
            SelectedModel::Rec => "REC",
            SelectedModel::AddMul => "ADDMUL",
            SelectedModel::Dom => "DOM",
        }
    }

    /// Trend score optimal for the model.
    pub fn score(&self) -> f64 {
        match self {
            SelectedModel::Rec => 0.0,
            SelectedModel::AddMul => 0.5,
            SelectedModel::Dom => 1.0,
        }
    }

    pub fn index(&self) -> usize {
        match self {
            SelectedModel::Rec => 0,
            SelectedModel::AddMul => 1,
            SelectedModel::Dom => 2,
        }
    }
}

impl fmt::Display for SelectedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SelectedModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "REC" => Ok(SelectedModel::Rec),
            "ADDMUL" | "A/M" => Ok(SelectedModel::AddMul),
            "DOM" => Ok(SelectedModel::Dom),
            other => Err(invalid(format!("unknown selected model '{other}'"))),
        }
    }
}

/// Phase-1 selection rule on the HWDTT statistic.
pub fn select_model(z_hwdtt: f64, threshold: f64) -> SelectedModel {
    if z_hwdtt > threshold {
        SelectedModel::Rec
    } else if z_hwdtt < -threshold {
        SelectedModel::Dom
    } else {
        SelectedModel::AddMul
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmsResult {
    pub selected_model: SelectedModel,
    pub z_hwdtt: f64,
    /// Trend statistic for the selected model on the oriented table.
    pub statistic: f64,
    pub oriented: bool,
}

/// Two-phase GMS: orient the risk allele, select a model with the HWDTT,
/// then apply the matching trend test.
pub fn gms(c: &GenotypeCounts, threshold: f64) -> Result<GmsResult> {
    if !(threshold >= 0.0) {
        return Err(invalid(format!("GMS threshold {threshold} must be >= 0")));
    }
    let (oriented_counts, oriented) = orient_risk_allele(c)?;
    let z_hwdtt = hwdtt(&oriented_counts)?.statistic;
    let selected_model = select_model(z_hwdtt, threshold);
    let statistic = trend_z(&oriented_counts, selected_model.score())?;
    Ok(GmsResult { selected_model, z_hwdtt, statistic, oriented })
}

/// `T_χ² − Z²_1/2 − Z²_HWDTT`, logged as a diagnostic only.
pub fn pearson_decomposition_residual(c: &GenotypeCounts) -> Result<f64> {
    let t = pearson(c)?.statistic;
    let z = trend_z(c, 0.5)?;
    let h = hwdtt(c)?.statistic;
    Ok(t - z * z - h * h)
}
