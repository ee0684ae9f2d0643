use kpaths_core::arith::is_prime;
use kpaths_core::families::{completed_interpolant, family_window_coeffs, interpolate};
use kpaths_core::limit_series::beta;
use kpaths_core::sato_tate::joint_moment;
use kpaths_core::stats::{ks_distance, MomentSpec};
use kpaths_core::{
    mod_inverse, FamilyKind, FieldContext, MultiplicityProfile, Ordering, SumFamily,
};
use proptest::prelude::*;

const PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 101, 211, 499, 1009, 2003];

fn family() -> impl Strategy<Value = FamilyKind> {
    prop::sample::select(FamilyKind::ALL.to_vec())
}

proptest! {
    #[test]
    fn inverse_is_an_involution(p in prop::sample::select(PRIMES.to_vec()), x in 1i64..1_000_000) {
        prop_assume!(x % p as i64 != 0);
        let y = mod_inverse(x, p).unwrap();
        prop_assert_eq!((x as u128 * y as u128) % p as u128, 1);
        prop_assert_eq!(mod_inverse(y as i64, p).unwrap(), x as u64 % p);
    }

    #[test]
    fn composites_are_rejected(a in 2u64..2000, b in 2u64..2000) {
        prop_assert!(FieldContext::new(a * b).is_err());
    }

    #[test]
    fn endpoint_is_the_complete_sum(
        p in prop::sample::select(PRIMES[2..].to_vec()),
        kind in family(),
        seed in 0u64..u64::MAX,
        geometric in any::<bool>(),
    ) {
        let ctx = FieldContext::new(p).unwrap();
        let idx = (seed % kind.parameter_count(ctx.p()) as u64) as usize;
        let ordering = if geometric { Ordering::Geometric } else { Ordering::Natural };
        let fam = SumFamily::at_index(kind, ctx.p(), idx).with_ordering(ordering);
        let path = fam.partial_sum_vector(&ctx).unwrap();
        prop_assert_eq!(path.vertices()[0].norm(), 0.0);
        prop_assert_eq!(path.eval(1.0).unwrap(), fam.complete_sum(&ctx).unwrap());
        // reordering the summands never changes the complete sum
        let natural = SumFamily::at_index(kind, ctx.p(), idx).complete_sum(&ctx).unwrap();
        prop_assert!((path.endpoint() - natural).norm() < 1e-9);
    }

    #[test]
    fn plancherel_matches_direct_truncation(
        p in prop::sample::select(PRIMES[2..8].to_vec()),
        kind in family(),
        seed in 0u64..u64::MAX,
        t in 0.0f64..=1.0,
    ) {
        let ctx = FieldContext::new(p).unwrap();
        let idx = (seed % kind.parameter_count(ctx.p()) as u64) as usize;
        let fam = SumFamily::at_index(kind, ctx.p(), idx);
        let direct = fam.truncated_sum(&ctx, t).unwrap();
        let completed = completed_interpolant(&fam, &ctx, t).unwrap();
        prop_assert!((direct - completed).norm() < 1e-8);
    }

    #[test]
    fn beta_is_bounded(h in -100_000i64..100_000, t in 0.0f64..=1.0) {
        let b = beta(h, t).norm();
        prop_assert!(b <= t + 1e-15);
        if h != 0 {
            prop_assert!(b <= 1.0 / (std::f64::consts::PI * h.unsigned_abs() as f64) + 1e-15);
        }
    }

    #[test]
    fn joint_moment_ignores_shift_labels(
        mults in prop::collection::vec(0u32..5, 1..5),
        offset in -1000i64..1000,
    ) {
        let a: MultiplicityProfile = mults.iter().enumerate().map(|(i, &m)| (i as i64, m)).collect();
        let b: MultiplicityProfile =
            mults.iter().rev().enumerate().map(|(i, &m)| (3 * i as i64 + offset, m)).collect();
        prop_assert_eq!(joint_moment(&a), joint_moment(&b));
    }

    #[test]
    fn ks_is_a_symmetric_distance(
        a in prop::collection::vec(-3.0f64..3.0, 1..60),
        b in prop::collection::vec(-3.0f64..3.0, 1..60),
    ) {
        let d = ks_distance(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d, ks_distance(&b, &a).unwrap());
        prop_assert_eq!(ks_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn interpolation_is_piecewise_linear(
        pts in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..40),
        k in 0usize..1000,
        s in 0.0f64..1.0,
    ) {
        let v: Vec<_> = pts.iter().map(|&(x, y)| kpaths_core::Complex64::new(x, y)).collect();
        let n = v.len() - 1;
        let j = k % n;
        let t = (j as f64 + s) / n as f64;
        let want = v[j] + (v[j + 1] - v[j]) * s;
        prop_assert!((interpolate(&v, t) - want).norm() < 1e-9);
    }

    #[test]
    fn moment_spec_roundtrips_through_text(
        raw in prop::collection::vec((0.0f64..1.0, 0u32..3, 0u32..3), 1..4),
    ) {
        let mut ts: Vec<f64> = raw.iter().map(|r| (r.0 * 1000.0).round() / 1000.0).collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        let text: Vec<String> =
            ts.iter().zip(&raw).map(|(t, r)| format!("{t}:{},{}", r.1, r.2)).collect();
        let spec: MomentSpec = text.join(";").parse().unwrap();
        prop_assert_eq!(spec.ts(), ts);
    }
}

#[test]
fn reality_and_weil_bounds() {
    for p in [101u64, 499, 997, 1009, 10007] {
        let ctx = FieldContext::new(p).unwrap();
        for kind in [FamilyKind::Kloosterman, FamilyKind::Birch] {
            // entry b is the complete sum with linear coefficient b
            let sums = SumFamily::new(kind, kpaths_core::Param { alpha: 1, a: 1 })
                .all_shifted_complete_sums(&ctx)
                .unwrap();
            for (a, s) in sums.iter().enumerate().skip(1) {
                assert!(s.im.abs() <= 1e-8, "{kind} p={p} a={a}");
                assert!(s.norm() <= 2.0 + 1e-8, "{kind} p={p} a={a}: {s}");
            }
        }
    }
}

#[test]
fn completion_bounds_on_grid() {
    for p in [101u64, 211, 499] {
        let ctx = FieldContext::new(p).unwrap();
        let sp = (p as f64).sqrt();
        let bound = sp * (3.0 * p as f64).ln();
        for k in 0..100 {
            let t = k as f64 / 99.0;
            for kind in [FamilyKind::Kloosterman, FamilyKind::Birch] {
                let total: f64 = family_window_coeffs(&ctx, kind, t)
                    .unwrap()
                    .iter()
                    .map(|(_, c)| c.norm())
                    .sum();
                assert!(total <= bound, "p={p} t={t}: {total} > {bound}");
            }
            for a in (1..p as i64).step_by(7) {
                let fam = SumFamily::kloosterman(a);
                let path = fam.partial_sum_vector(&ctx).unwrap();
                let gap =
                    (path.eval(t).unwrap() - completed_interpolant(&fam, &ctx, t).unwrap()).norm();
                assert!(gap <= 1.0 / sp, "p={p} a={a} t={t}: gap {gap}");
            }
        }
    }
}

#[test]
fn primality_agrees_with_context() {
    for n in 0..3000u64 {
        assert_eq!(FieldContext::new(n).is_ok(), n > 2 && is_prime(n), "{n}");
    }
}
