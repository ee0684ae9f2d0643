use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arith::FieldContext;
use crate::error::{check_unit, Error, Result};
use crate::exec::{map_chunks, Executor};
use crate::families::{interpolate, sup_norm, FamilyKind, SumFamily};
use crate::limit_series::{SeriesConfig, SeriesEvaluator};
use crate::sato_tate::SatoTateSampler;

/// Empirical `P(||path||_inf >= A)` for each threshold `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailEstimate {
    pub thresholds: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub exceedances: Vec<u64>,
    pub samples: u64,
}

/// Where the sup norms come from.
#[derive(Debug, Clone)]
pub enum TailSource<'a> {
    /// Every parameter of `kind` at the prime of `ctx`.
    Empirical {
        ctx: &'a FieldContext,
        kind: FamilyKind,
    },
    /// Independent realizations of the truncated series; realization `r`
    /// uses stream `r` of `seed`.
    Simulated {
        cfg: &'a SeriesConfig,
        samples: usize,
        seed: u64,
    },
}

/// Sup norm of the path for every parameter, in parameter order.
pub fn empirical_sup_norms<E: Executor>(
    exec: &E,
    ctx: &FieldContext,
    kind: FamilyKind,
) -> Result<Vec<f64>> {
    per_parameter(exec, ctx, kind, sup_norm)
}

/// `K_p(t, omega)` for every parameter, in parameter order.
pub fn empirical_values_at<E: Executor>(
    exec: &E,
    ctx: &FieldContext,
    kind: FamilyKind,
    t: f64,
) -> Result<Vec<Complex64>> {
    check_unit(t)?;
    per_parameter(exec, ctx, kind, |path| interpolate(path, t))
}

fn per_parameter<E, T, F>(exec: &E, ctx: &FieldContext, kind: FamilyKind, f: F) -> Result<Vec<T>>
where
    E: Executor,
    T: Send,
    F: Fn(&[Complex64]) -> T + Sync + Send,
{
    let p = ctx.p();
    let chunks = map_chunks(exec, kind.parameter_count(p), |lo, hi| -> Result<Vec<T>> {
        let mut path = Vec::new();
        let mut out = Vec::with_capacity(hi - lo);
        for idx in lo..hi {
            SumFamily::at_index(kind, p, idx).partial_sums_into(ctx, &mut path)?;
            out.push(f(&path));
        }
        Ok(out)
    });
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// Sup norms of `samples` simulated realizations, in realization order.
pub fn simulated_sup_norms<E: Executor>(
    exec: &E,
    cfg: &SeriesConfig,
    samples: usize,
    seed: u64,
) -> Vec<f64> {
    let eval = SeriesEvaluator::new(cfg);
    simulate_each(exec, samples, seed, &eval, sup_norm)
}

/// `K_m(t)` for `samples` simulated realizations, in realization order.
pub fn simulated_values_at<E: Executor>(
    exec: &E,
    m: usize,
    t: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<Complex64>> {
    let cfg = SeriesConfig::points(m, alloc::vec![t])?;
    let eval = SeriesEvaluator::new(&cfg);
    Ok(simulate_each(exec, samples, seed, &eval, |v| v[0]))
}

fn simulate_each<E, T, F>(
    exec: &E,
    samples: usize,
    seed: u64,
    eval: &SeriesEvaluator,
    f: F,
) -> Vec<T>
where
    E: Executor,
    T: Send,
    F: Fn(&[Complex64]) -> T + Sync + Send,
{
    map_chunks(exec, samples, |lo, hi| {
        (lo..hi)
            .map(|r| {
                let mut sampler = SatoTateSampler::with_stream(seed, r as u64);
                f(&eval.simulate(&mut sampler).values)
            })
            .collect::<Vec<T>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Fraction of `sup_norms` at or above each threshold.
pub fn tail_from_samples(sup_norms: &[f64], thresholds: &[f64]) -> Result<TailEstimate> {
    if sup_norms.is_empty() {
        return Err(Error::EmptySample);
    }
    if thresholds.iter().any(|a| !a.is_finite() || *a < 0.0) {
        return Err(Error::InvalidArgument(
            "thresholds must be finite and nonnegative",
        ));
    }
    if thresholds.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("thresholds must be increasing"));
    }
    let n = sup_norms.len() as u64;
    let exceedances: Vec<u64> = thresholds
        .iter()
        .map(|&a| sup_norms.iter().filter(|&&s| s >= a).count() as u64)
        .collect();
    let probabilities = exceedances.iter().map(|&k| k as f64 / n as f64).collect();
    Ok(TailEstimate {
        thresholds: thresholds.to_vec(),
        probabilities,
        exceedances,
        samples: n,
    })
}

/// Tail of the sup-norm distribution from either source.
pub fn sup_norm_tail<E: Executor>(
    exec: &E,
    source: &TailSource<'_>,
    thresholds: &[f64],
) -> Result<TailEstimate> {
    let norms = match source {
        TailSource::Empirical { ctx, kind } => empirical_sup_norms(exec, ctx, *kind)?,
        TailSource::Simulated { cfg, samples, seed } => {
            simulated_sup_norms(exec, cfg, *samples, *seed)
        }
    };
    tail_from_samples(&norms, thresholds)
}
