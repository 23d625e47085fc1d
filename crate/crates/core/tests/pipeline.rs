use chainvol::asymptote::{
    fit_expansion, normalized_quotient, prediction, q_infinity_signed_closed_form, PredictOptions,
};
use chainvol::invariant::{jones_at_root, limit_cross_check, sine_prefix, DEFAULT_CROSS_CHECK_EPS};
use chainvol::lemma_lab::{default_delta, verify_lemma45};
use chainvol::{ChainParams, Error, LogComplex, Precision};
use proptest::prelude::*;

fn p(a: i64, b: i64, c: i64, d: i64) -> ChainParams {
    ChainParams::new(a, b, c, d).unwrap()
}

#[test]
fn quotient_approaches_closed_form_limit() {
    for params in [p(0, 1, 1, 0), p(1, 1, 0, 1), p(0, 1, 2, 0)] {
        let want = q_infinity_signed_closed_form(&params).unwrap();
        let want = LogComplex::from_cartesian(want.re, want.im);
        let dist = |n: usize| {
            let j = jones_at_root(&params, n, Precision::default()).unwrap();
            normalized_quotient(&params, n, &j, &sine_prefix(n).unwrap())
                .unwrap()
                .relative_distance(&want)
        };
        let (coarse, fine) = (dist(301), dist(1201));
        assert!(fine < coarse && fine < 0.02, "{params}: {coarse} -> {fine}");
    }
}

#[test]
fn fit_over_exact_values_recovers_belt_exponent() {
    // |J_N(W_{0,3,0,0})| = N^3 on odd N, so alpha = 0 and beta = 6 pi
    let samples: Vec<(usize, f64)> = (21..=121)
        .step_by(2)
        .map(|n| {
            (
                n,
                *jones_at_root(&p(0, 3, 0, 0), n, Precision::default())
                    .unwrap()
                    .log_mag(),
            )
        })
        .collect();
    let fit = fit_expansion(&samples).unwrap();
    let pred = prediction(&p(0, 3, 0, 0), &PredictOptions::default()).unwrap();
    assert!((fit.alpha - pred.vol).abs() < 1e-10);
    assert!((fit.beta - pred.d_coeff).abs() < 1e-8);
}

#[test]
fn reports_round_trip_through_json() {
    let report = verify_lemma45(&p(0, 2, 0, 0), &[3, 5, 7], &PredictOptions::default()).unwrap();
    let json = serde_json::to_string(&report).unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["lemma_id"], "L5_RATIO");
    assert_eq!(value["passed"], true);
    assert!(!json.contains("NaN"));
    let window = serde_json::to_value(default_delta(&p(0, 1, 1, 0))).unwrap();
    assert_eq!(window["delta"].as_f64().unwrap(), 0.55);
}

#[test]
fn cross_check_rejects_large_colors() {
    assert!(matches!(
        limit_cross_check(&p(0, 1, 1, 0), 500, &DEFAULT_CROSS_CHECK_EPS),
        Err(Error::InvalidParams(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn first_color_is_one(a in -6i64..6, b in 1i64..5, c in 0i64..4, d in 0i64..4) {
        let j = jones_at_root(&p(a, b, c, d), 1, Precision::default()).unwrap();
        prop_assert!(j.relative_distance(&LogComplex::one(Precision::default())) < 1e-14);
    }

    #[test]
    fn mirror_conjugates(a in -4i64..4, b in 1i64..3, c in 0i64..3, d in 0i64..3, n in 2usize..40) {
        let params = p(a, b, c, d);
        let j = jones_at_root(&params, n, Precision::default()).unwrap();
        let m = jones_at_root(&params.mirror(), n, Precision::default()).unwrap();
        prop_assert!(j.relative_distance(&m.conj()) < 1e-11);
    }

    #[test]
    fn extended_precision_agrees(a in -2i64..2, c in 0i64..2, d in 0i64..2, n in 2usize..12) {
        let params = p(a, 1, c, d);
        let native = jones_at_root(&params, n, Precision::default()).unwrap();
        let wide = jones_at_root(&params, n, Precision::new(30).unwrap()).unwrap();
        prop_assert!(native.relative_distance(&wide) < 1e-12);
    }
}
