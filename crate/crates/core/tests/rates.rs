//! Rate checks against the frozen constants in `kpaths_core::calibrated`.

use kpaths_core::arith::is_prime;
use kpaths_core::calibrated;
use kpaths_core::limit_series::{beta, truncation_tail_variance, xp_coefficient, SeriesEvaluator};
use kpaths_core::stats::{
    short_sum_moment, sums_of_products, sums_of_products_main_term, IntervalSpec,
};
use kpaths_core::{FamilyKind, FieldContext, SatoTateSampler, Sequential, SeriesConfig};

fn proximity(p: u64) -> f64 {
    let ctx = FieldContext::new(p).unwrap();
    let half = (p as i64 - 1) / 2;
    let mut worst = 0.0f64;
    for k in 0..50 {
        let t = k as f64 / 49.0;
        for h in -half..=half {
            let d = (xp_coefficient(&ctx, h, t).unwrap() - beta(h, t)).norm();
            worst = worst.max(d * p as f64);
        }
    }
    worst
}

#[test]
fn coefficient_proximity_scan() {
    let scan = (101..=997u64)
        .filter(|&p| is_prime(p))
        .map(proximity)
        .fold(0.0, f64::max);
    assert!(scan <= calibrated::COEFFICIENT_PROXIMITY, "scan max {scan}");
    let held_out = proximity(2003);
    assert!(
        held_out <= calibrated::COEFFICIENT_PROXIMITY,
        "p = 2003: {held_out}"
    );
}

fn tail_sum(t: f64, f: impl Fn(i64, f64) -> f64) -> f64 {
    (1..=kpaths_core::limit_series::TAIL_CUTOFF as i64)
        .map(|h| f(h, t) + f(-h, t))
        .sum()
}

#[test]
fn parseval_identities() {
    for k in 0..=20 {
        let t = k as f64 / 20.0;
        let tail = truncation_tail_variance(1, t).unwrap();
        assert!((t * t + tail.midpoint() - t).abs() < 1e-6, "t={t}");
        assert!(tail.upper - tail.lower < 1e-6);
        let pseudo = t * t + tail_sum(t, |h, t| (beta(h, t) * beta(h, t)).re);
        assert!(
            (pseudo - (2.0 * t - 1.0).max(0.0)).abs() < 1e-6,
            "t={t}: {pseudo}"
        );
    }
}

#[test]
fn series_truncation_rate() {
    // reference K_M with M far beyond every m, sharing the low draws
    let big = 20_000usize;
    let reference = SeriesEvaluator::new(&SeriesConfig::points(big, vec![0.5]).unwrap());
    let ms = [10usize, 100, 1000];
    let evals: Vec<_> = ms
        .iter()
        .map(|&m| SeriesEvaluator::new(&SeriesConfig::points(m, vec![0.5]).unwrap()))
        .collect();
    let samples = 2000;
    let mut mean_gap = [0.0; 3];
    for r in 0..samples {
        let mut sampler = SatoTateSampler::with_stream(11, r);
        let full = reference.simulate(&mut sampler);
        for (i, &m) in ms.iter().enumerate() {
            let lo = big - m;
            let k_m = evals[i].evaluate(&full.draws[lo..lo + 2 * m - 1])[0];
            mean_gap[i] += (full.values[0] - k_m).norm() / samples as f64;
        }
    }
    for (i, &m) in ms.iter().enumerate() {
        let bound = calibrated::SERIES_TRUNCATION / (m as f64).sqrt();
        assert!(mean_gap[i] <= bound, "m={m}: {} > {bound}", mean_gap[i]);
    }
    assert!(mean_gap[0] > mean_gap[1] && mean_gap[1] > mean_gap[2]);
}

#[test]
fn sums_of_products_battery() {
    let mut per_prime = Vec::new();
    for p in [101u64, 199, 499, 1009] {
        let ctx = FieldContext::new(p).unwrap();
        let mut worst = 0.0f64;
        for kind in [FamilyKind::Kloosterman, FamilyKind::Birch] {
            for tuple in calibrated::SUMS_OF_PRODUCTS_BATTERY {
                let s = sums_of_products(&ctx, kind, tuple).unwrap();
                let main = sums_of_products_main_term(p, tuple) as f64;
                worst = worst.max((p as f64).sqrt() * (s - main).norm());
            }
        }
        assert!(worst <= calibrated::SUMS_OF_PRODUCTS, "p={p}: {worst}");
        per_prime.push(worst);
    }
    let early = per_prime[..3].iter().cloned().fold(0.0, f64::max);
    assert!(per_prime[3] <= early, "{per_prime:?}");
}

#[test]
fn birch_eighth_moment_of_short_sums() {
    let p = 1009u64;
    let ctx = FieldContext::new(p).unwrap();
    let len = (p as f64).sqrt().ceil() as u32;
    let m8 = short_sum_moment(
        &Sequential,
        &ctx,
        FamilyKind::Birch,
        IntervalSpec::new(0, len),
        8,
    )
    .unwrap();
    let bound = (p as f64).powf(-0.5 - calibrated::BIRCH_SHORT_SUM_DELTA);
    assert!(m8 <= bound, "{m8} > {bound}");
}
