//! Null distributions: the asymptotic joint law of `(Z²_1/2, T_χ²)` behind
//! the MIN2 p-value, and parametric-bootstrap nulls for MAX3 and GMS.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::counts::GenotypeCounts;
use crate::error::{invalid, Error, Result};
use crate::quadrature::integrate;
use crate::rng::{multinomial3, substream};
use crate::special::chi2_upper_quantile;
use crate::stats::{gms, max3, DEFAULT_GMS_THRESHOLD};

/// Absolute quadrature tolerance for the joint CDF.
pub const CDF_ABS_TOL: f64 = 1e-9;

const BOOTSTRAP_DOMAIN: u64 = 0xb007;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointCdfQuery {
    /// Threshold for `Z²_1/2`.
    pub t1: f64,
    /// Threshold for `T_χ²`.
    pub t2: f64,
}

impl JointCdfQuery {
    pub fn new(t1: f64, t2: f64) -> Result<Self> {
        if !(t1 >= 0.0 && t2 >= 0.0) {
            return Err(invalid(format!("thresholds ({t1}, {t2}) must be nonnegative")));
        }
        Ok(Self { t1, t2 })
    }
}

/// `Pr(Z²_1/2 ≥ t1 or T_χ² ≥ t2)`, the complement of the joint CDF.
///
/// For `t1 < t2` the closed form is rescaled by `exp(−t1/2)` so that small
/// tail probabilities keep their relative accuracy:
/// `S = e^{−t1/2} [½ + ½ e^{−(t2−t1)/2} − (1/2π) ∫_0^{t2−t1} e^{−w/2} asin(2t1/(t1+w) − 1) dw]`.
fn joint_survival(t1: f64, t2: f64) -> f64 {
    if t1 >= t2 {
        return (-t2 / 2.0).exp();
    }
    let width = t2 - t1;
    let integrand = |w: f64| {
        let arg = (2.0 * t1 / (t1 + w) - 1.0).clamp(-1.0, 1.0);
        (-w / 2.0).exp() * arg.asin()
    };
    // Error in S is e^{-t1/2}/(2π) times the integral error.
    let integral = integrate(integrand, 0.0, width, 2.0 * PI * CDF_ABS_TOL * 0.1);
    let bracket = 0.5 + 0.5 * (-width / 2.0).exp() - integral.value / (2.0 * PI);
    ((-t1 / 2.0).exp() * bracket).clamp(0.0, 1.0)
}

/// Asymptotic null `Pr(Z²_1/2 < t1, T_χ² < t2)`.
pub fn min2_joint_cdf(q: JointCdfQuery) -> Result<f64> {
    let JointCdfQuery { t1, t2 } = JointCdfQuery::new(q.t1, q.t2)?;
    if t1 >= t2 {
        return Ok((-(-t2 / 2.0).exp_m1()).clamp(0.0, 1.0));
    }
    Ok((1.0 - joint_survival(t1, t2)).clamp(0.0, 1.0))
}

/// Asymptotic p-value of an observed MIN2 value.
pub fn min2_pvalue(min2: f64) -> Result<f64> {
    if !(min2 > 0.0 && min2 <= 1.0) {
        return Err(invalid(format!("MIN2 = {min2} not in (0,1]")));
    }
    if min2 == 1.0 {
        return Ok(1.0);
    }
    let t1 = chi2_upper_quantile(min2, 1);
    let t2 = chi2_upper_quantile(min2, 2);
    Ok(joint_survival(t1, t2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BootstrapConfig {
    pub replicates: usize,
    pub seed: u64,
}

impl BootstrapConfig {
    pub const MIN_REPLICATES: usize = 100;

    pub fn new(replicates: usize, seed: u64) -> Result<Self> {
        if replicates < Self::MIN_REPLICATES {
            return Err(invalid(format!(
                "bootstrap needs at least {} replicates, got {replicates}",
                Self::MIN_REPLICATES
            )));
        }
        Ok(Self { replicates, seed })
    }
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self { replicates: 10_000, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BootstrapMethod {
    Max3,
    /// GMS with the given selection threshold; the statistic is the
    /// magnitude of the phase-2 trend test.
    Gms(f64),
}

impl BootstrapMethod {
    pub fn gms() -> Self {
        BootstrapMethod::Gms(DEFAULT_GMS_THRESHOLD)
    }

    pub fn statistic(&self, c: &GenotypeCounts) -> Result<f64> {
        match *self {
            BootstrapMethod::Max3 => Ok(max3(c)?.statistic),
            BootstrapMethod::Gms(threshold) => Ok(gms(c, threshold)?.statistic.abs()),
        }
    }
}

/// Statistics of `cfg.replicates` tables drawn with both groups from
/// `Multinomial(·; probs)`. Degenerate draws are redrawn from the same
/// stream; more than `10 × replicates` redraws in total is an error.
pub fn bootstrap_null(
    probs: &[f64; 3],
    r: u64,
    s: u64,
    method: BootstrapMethod,
    cfg: BootstrapConfig,
) -> Result<Vec<f64>> {
    let cfg = BootstrapConfig::new(cfg.replicates, cfg.seed)?;
    let cap = 10 * cfg.replicates;
    let draws: Vec<(f64, usize)> = (0..cfg.replicates)
        .into_par_iter()
        .map(|b| {
            let mut rng = substream(cfg.seed, BOOTSTRAP_DOMAIN, 0, b as u64);
            let mut redraws = 0;
            loop {
                let cases = multinomial3(&mut rng, r, probs);
                let controls = multinomial3(&mut rng, s, probs);
                let table = GenotypeCounts { cases, controls };
                match method.statistic(&table) {
                    Ok(v) => return Ok((v, redraws)),
                    Err(_) if redraws < cap => redraws += 1,
                    Err(_) => return Err(Error::BootstrapExhausted(redraws)),
                }
            }
        })
        .collect::<Result<_>>()?;
    let total: usize = draws.iter().map(|d| d.1).sum();
    if total > cap {
        return Err(Error::BootstrapExhausted(total));
    }
    Ok(draws.into_iter().map(|d| d.0).collect())
}

/// Parametric-bootstrap p-value with pooled genotype proportions
/// `n_i / n`, using the add-one estimator.
pub fn bootstrap_pvalue(c: &GenotypeCounts, method: BootstrapMethod, cfg: BootstrapConfig) -> Result<f64> {
    let observed = method.statistic(c)?;
    let n = c.n() as f64;
    let probs = c.column_totals().map(|v| v as f64 / n);
    let null = bootstrap_null(&probs, c.r(), c.s(), method, cfg)?;
    let exceed = null.iter().filter(|&&v| v >= observed).count();
    Ok((1 + exceed) as f64 / (null.len() + 1) as f64)
}
