use proptest::prelude::*;
use robust_scan::null::{min2_joint_cdf, min2_pvalue, JointCdfQuery};
use robust_scan::stats::{catt, gms, hwdtt, max3, min2, pearson, trend_z, DEFAULT_GMS_THRESHOLD};
use robust_scan::GenotypeCounts;

fn table() -> impl Strategy<Value = GenotypeCounts> {
    (prop::array::uniform3(0u64..300), prop::array::uniform3(0u64..300))
        .prop_filter("both groups nonempty", |(r, s)| r.iter().sum::<u64>() > 0 && s.iter().sum::<u64>() > 0)
        .prop_map(|(r, s)| GenotypeCounts::new(r, s).unwrap())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn trend_reversal_covariance(c in table(), x in 0.0f64..=1.0) {
        if let (Ok(a), Ok(b)) = (trend_z(&c.reversed(), x), trend_z(&c, 1.0 - x)) {
            prop_assert!(close(a, -b), "{a} vs {b}");
        }
    }

    #[test]
    fn symmetric_statistics_ignore_allele_labels(c in table()) {
        let rev = c.reversed();
        if let Ok(p) = pearson(&c) {
            prop_assert!(close(p.statistic, pearson(&rev).unwrap().statistic));
        }
        if let Ok(m) = max3(&c) {
            prop_assert!(close(m.statistic, max3(&rev).unwrap().statistic));
        }
        if let Ok(m) = min2(&c) {
            prop_assert!(close(m.statistic, min2(&rev).unwrap().statistic));
        }
        if let Ok(h) = hwdtt(&c) {
            prop_assert!(close(h.statistic, hwdtt(&rev).unwrap().statistic));
        }
    }

    #[test]
    fn gms_is_orientation_free(c in table()) {
        let z = trend_z(&c, 0.5);
        prop_assume!(matches!(z, Ok(v) if v != 0.0));
        if let Ok(a) = gms(&c, DEFAULT_GMS_THRESHOLD) {
            let b = gms(&c.reversed(), DEFAULT_GMS_THRESHOLD).unwrap();
            prop_assert_eq!(a.selected_model, b.selected_model);
            prop_assert!(close(a.statistic.abs(), b.statistic.abs()));
        }
    }

    #[test]
    fn max3_dominates_components(c in table()) {
        if let Ok(m) = max3(&c) {
            for x in [0.0, 0.5, 1.0] {
                if let Ok(z) = catt(&c, x) {
                    prop_assert!(m.statistic >= z.statistic.abs());
                }
            }
        }
    }

    #[test]
    fn min2_is_below_both_pvalues(c in table()) {
        if let Ok(m) = min2(&c) {
            prop_assert!(m.statistic <= pearson(&c).unwrap().p_value.unwrap());
            prop_assert!(m.statistic <= catt(&c, 0.5).unwrap().p_value.unwrap());
        }
    }

    #[test]
    fn joint_cdf_is_monotone(t1 in 0.0f64..20.0, t2 in 0.0f64..20.0, d1 in 0.0f64..3.0, d2 in 0.0f64..3.0) {
        let cdf = |a: f64, b: f64| min2_joint_cdf(JointCdfQuery::new(a, b).unwrap()).unwrap();
        let base = cdf(t1, t2);
        prop_assert!((0.0..=1.0).contains(&base));
        prop_assert!(cdf(t1 + d1, t2) >= base - 1e-9);
        prop_assert!(cdf(t1, t2 + d2) >= base - 1e-9);
    }

    #[test]
    fn min2_pvalue_exceeds_min2(m in 1e-12f64..1.0) {
        prop_assert!(min2_pvalue(m).unwrap() >= m);
    }
}

#[test]
fn joint_cdf_tends_to_one() {
    let v = min2_joint_cdf(JointCdfQuery::new(200.0, 300.0).unwrap()).unwrap();
    assert!(v > 1.0 - 1e-12);
    let v = min2_joint_cdf(JointCdfQuery::new(60.0, 90.0).unwrap()).unwrap();
    assert!(v > 1.0 - 1e-12);
}

#[test]
fn min2_pvalue_approaches_equality_near_one() {
    let gaps: Vec<f64> = [0.5, 0.9, 0.99, 0.999]
        .iter()
        .map(|&m| min2_pvalue(m).unwrap() - m)
        .collect();
    assert!(gaps.iter().all(|&g| g > 0.0));
    assert!(gaps[3] < 0.01, "{gaps:?}");
}
