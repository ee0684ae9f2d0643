use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Two-sample Kolmogorov-Smirnov statistic `sup_x |F_a(x) - F_b(x)|`.
pub fn ks_distance(sample_a: &[f64], sample_b: &[f64]) -> Result<f64> {
    if sample_a.is_empty() || sample_b.is_empty() {
        return Err(Error::EmptySample);
    }
    if sample_a.iter().chain(sample_b).any(|x| x.is_nan()) {
        return Err(Error::InvalidArgument("sample contains NaN"));
    }
    let sorted = |s: &[f64]| {
        let mut v: Vec<f64> = s.to_vec();
        v.sort_unstable_by(f64::total_cmp);
        v
    };
    let (a, b) = (sorted(sample_a), sorted(sample_b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}
