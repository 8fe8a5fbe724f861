//! Normal and chi-square tail probabilities and chi-square quantiles.

use libm::erfc;
use statrs::function::erf::erfc_inv;
use statrs::function::gamma::{gamma_ur, ln_gamma};

/// Two-sided standard normal tail probability `Pr(|Z| ≥ |z|)`.
pub fn normal_two_sided_p(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2).clamp(0.0, 1.0)
}

/// Upper standard normal quantile: `Pr(Z > z) = alpha`.
pub fn normal_upper_quantile(alpha: f64) -> f64 {
    let mut z = std::f64::consts::SQRT_2 * erfc_inv(2.0 * alpha);
    // Newton polish against the more accurate erfc.
    for _ in 0..2 {
        let q = 0.5 * erfc(z / std::f64::consts::SQRT_2);
        let pdf = (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
        if !(pdf > 0.0) {
            break;
        }
        z += (q - alpha) / pdf;
    }
    z
}

/// Chi-square survival function `Pr(X ≥ x)` with `df` degrees of freedom.
pub fn chi2_sf(x: f64, df: u32) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    match df {
        1 => erfc((x / 2.0).sqrt()),
        2 => (-x / 2.0).exp(),
        _ => gamma_ur(df as f64 / 2.0, x / 2.0),
    }
    .clamp(0.0, 1.0)
}

fn chi2_ln_pdf(x: f64, df: u32) -> f64 {
    let h = df as f64 / 2.0;
    (h - 1.0) * x.ln() - x / 2.0 - h * std::f64::consts::LN_2 - ln_gamma(h)
}

/// Upper chi-square quantile: the `x` with `Pr(X ≥ x) = alpha`.
///
/// Safeguarded Newton iteration on `ln Q(x) − ln alpha`, so tiny tail
/// probabilities keep full relative accuracy.
pub fn chi2_upper_quantile(alpha: f64, df: u32) -> f64 {
    assert!(df > 0, "chi-square needs df > 0");
    assert!(alpha > 0.0 && alpha <= 1.0, "alpha = {alpha} not in (0,1]");
    if alpha == 1.0 {
        return 0.0;
    }
    let target = alpha.ln();

    // Wilson–Hilferty start.
    let k = df as f64;
    let z = normal_upper_quantile(alpha);
    let c = 2.0 / (9.0 * k);
    let mut x = (k * (1.0 - c + z * c.sqrt()).powi(3)).max(1e-300);

    let (mut lo, mut hi) = (0.0_f64, f64::INFINITY);
    for _ in 0..200 {
        let q = chi2_sf(x, df);
        let h = q.ln() - target;
        if h > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let step = h / (chi2_ln_pdf(x, df) - q.ln()).exp();
        let mut next = x + step;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * x.max(1.0) };
        }
        if (next - x).abs() <= 1e-15 * x.max(1e-300) {
            return next;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_tails() {
        let p = normal_two_sided_p(1.959963984540054);
        assert!((p - 0.05).abs() < 1e-12, "{p}");
        assert_eq!(normal_two_sided_p(0.0), 1.0);
        assert!((normal_upper_quantile(0.05) - 1.6448536269514722).abs() < 1e-12);
    }

    #[test]
    fn chi2_quantile_closed_forms() {
        for &alpha in &[0.9, 0.5, 0.05, 1e-3, 1e-8, 1e-20, 1e-100] {
            let two = chi2_upper_quantile(alpha, 2);
            let want2 = -2.0 * alpha.ln();
            assert!(((two - want2) / want2).abs() < 1e-10, "df=2 alpha={alpha}: {two} vs {want2}");

            let one = chi2_upper_quantile(alpha, 1);
            let z = normal_upper_quantile(alpha / 2.0);
            let want1 = z * z;
            assert!(((one - want1) / want1).abs() < 1e-10, "df=1 alpha={alpha}: {one} vs {want1}");
        }
        assert!((chi2_upper_quantile(0.05, 1) - 3.841458820694124).abs() < 1e-10);
        assert!((chi2_upper_quantile(0.05, 2) - 5.991464547107979).abs() < 1e-10);
    }

    #[test]
    fn chi2_quantile_inverts_sf() {
        for df in [1, 2, 3, 5, 10] {
            for &alpha in &[0.99, 0.3, 0.01, 1e-12] {
                let x = chi2_upper_quantile(alpha, df);
                let back = chi2_sf(x, df);
                assert!(((back - alpha) / alpha).abs() < 1e-10, "df={df} alpha={alpha}");
            }
        }
        assert_eq!(chi2_upper_quantile(1.0, 1), 0.0);
    }
}
