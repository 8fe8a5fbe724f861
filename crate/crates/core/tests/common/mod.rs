#![allow(dead_code)]

use robust_scan::special::normal_two_sided_p;

/// Critical KS coefficient at level 0.01.
pub const KS_C_01: f64 = 1.628;

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn std_normal_cdf(z: f64) -> f64 {
    let tail = 0.5 * normal_two_sided_p(z);
    if z >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// One-sample KS distance against N(0,1).
pub fn ks_normal(sample: &[f64]) -> f64 {
    let v = sorted(sample);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = std_normal_cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Two-sample KS distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let (a, b) = (sorted(a), sorted(b));
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

pub fn ks_two_sample_critical(n: usize, m: usize) -> f64 {
    KS_C_01 * ((n + m) as f64 / (n * m) as f64).sqrt()
}

#[test]
fn ks_helpers() {
    assert_eq!(ks_two_sample(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 0.0);
    assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
    assert!((ks_normal(&[0.0]) - 0.5).abs() < 1e-12);
}
