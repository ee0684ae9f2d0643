use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::MomentSpec;
use crate::arith::FieldContext;
use crate::error::{Error, Result};
use crate::exec::{map_chunks, Executor};
use crate::families::{interpolate, FamilyKind, SumFamily};
use crate::limit_series::{beta, SeriesConfig, SeriesEvaluator, SeriesVariant};
use crate::sato_tate::{joint_moment, MultiplicityProfile, SatoTateSampler};
use crate::sum::{CompensatedSum, ComplexSum};

/// Shift cutoff `H` used by [`TheoryMethod::Expansion`] by default.
pub const DEFAULT_EXPANSION_CUTOFF: u64 = 100_000;

/// `(1/|Omega|) sum_omega prod_i K_p(t_i, omega)^{n_i} conj(K_p(t_i, omega))^{m_i}`
/// over the whole parameter space of `kind`, using the interpolated paths.
pub fn empirical_mixed_moment<E: Executor>(
    exec: &E,
    ctx: &FieldContext,
    kind: FamilyKind,
    spec: &MomentSpec,
) -> Result<Complex64> {
    let p = ctx.p();
    let count = kind.parameter_count(p);
    let ts = spec.ts();
    let partials = map_chunks(exec, count, |lo, hi| -> Result<ComplexSum> {
        let mut path = Vec::new();
        let mut values = alloc::vec![Complex64::new(0.0, 0.0); ts.len()];
        let mut acc = ComplexSum::new();
        for idx in lo..hi {
            SumFamily::at_index(kind, p, idx).partial_sums_into(ctx, &mut path)?;
            for (v, &t) in values.iter_mut().zip(&ts) {
                *v = interpolate(&path, t);
            }
            acc.add(spec.product(&values));
        }
        Ok(acc)
    });
    let mut total = ComplexSum::new();
    for part in partials {
        total.merge(&part?);
    }
    Ok(total.value() / count as f64)
}

/// How the limit moment is computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TheoryMethod {
    /// Exact expansion over shifts `|h| < cutoff` with a certified tail bound;
    /// total degree at most 4.
    Expansion { cutoff: u64, variant: SeriesVariant },
    /// Sample mean over `samples` realizations of `K_m`, stream `r` of `seed`
    /// driving realization `r`.
    MonteCarlo {
        samples: usize,
        m: usize,
        seed: u64,
        variant: SeriesVariant,
    },
}

/// A value with an error estimate: a certified bound for the expansion,
/// one standard error for Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub value: Complex64,
    pub error: f64,
}

/// `E prod_i K(t_i)^{n_i} conj(K(t_i))^{m_i}` for the limiting series.
pub fn theoretical_mixed_moment<E: Executor>(
    exec: &E,
    spec: &MomentSpec,
    method: TheoryMethod,
) -> Result<MomentEstimate> {
    match method {
        TheoryMethod::Expansion { cutoff, variant } => expansion(spec, cutoff, variant),
        TheoryMethod::MonteCarlo {
            samples,
            m,
            seed,
            variant,
        } => monte_carlo(exec, spec, samples, m, seed, variant),
    }
}

/// Cumulants `kappa_1..kappa_4` of the Sato-Tate law (moments 0, 1, 0, 2).
const ST_CUMULANTS: [f64; 5] = [0.0, 0.0, 1.0, 0.0, -1.0];

/// Expands the product of `d <= 4` linear forms `sum_h c_l(h) ST_h` by the
/// moment-cumulant formula: the expectation is a sum over set partitions
/// of the forms, each block `B` contributing `kappa_|B| sum_h prod_{l in B} c_l(h)`.
fn expansion(spec: &MomentSpec, cutoff: u64, variant: SeriesVariant) -> Result<MomentEstimate> {
    let (n, m) = spec.degrees();
    let degree = (n + m) as usize;
    if degree > 4 {
        return Err(Error::Unsupported(
            "expansion is limited to total degree n + m <= 4",
        ));
    }
    if cutoff < 2 {
        return Err(Error::InvalidArgument(
            "expansion cutoff must be at least 2",
        ));
    }
    if degree == 0 {
        return Ok(MomentEstimate {
            value: Complex64::new(1.0, 0.0),
            error: 0.0,
        });
    }
    // (point index, conjugated) per linear form
    let mut forms = Vec::with_capacity(degree);
    for (i, pt) in spec.points().iter().enumerate() {
        forms.extend(core::iter::repeat_n((i, false), pt.n as usize));
        forms.extend(core::iter::repeat_n((i, true), pt.m as usize));
    }
    let ts = spec.ts();
    let cutoff_i = cutoff as i64;
    let block_sum = |block: &[usize]| -> Complex64 {
        let mut acc = ComplexSum::new();
        for h in (-(cutoff_i - 1)..cutoff_i).filter(|&h| variant.includes(h)) {
            let mut prod = Complex64::new(1.0, 0.0);
            for &l in block {
                let (i, conj) = forms[l];
                let b = beta(h, ts[i]);
                prod *= if conj { b.conj() } else { b };
            }
            acc.add(prod);
        }
        acc.value()
    };
    // 2 sum_{h >= H} (pi h)^{-b} <= 2 / (pi^b (b - 1) (H - 1)^{b - 1})
    let tail_bound = |b: usize| -> f64 {
        let b_f = b as f64;
        2.0 / (PI.powi(b as i32) * (b_f - 1.0) * ((cutoff - 1) as f64).powi(b as i32 - 1))
    };
    let mut value = ComplexSum::new();
    let mut error = CompensatedSum::new();
    let mut cache: Vec<(Vec<usize>, Complex64)> = Vec::new();
    for partition in set_partitions(degree) {
        if partition.iter().any(|b| ST_CUMULANTS[b.len()] == 0.0) {
            continue;
        }
        let mut prod = Complex64::new(1.0, 0.0);
        let mut with_err = 1.0;
        let mut without_err = 1.0;
        for block in &partition {
            let kappa = ST_CUMULANTS[block.len()];
            let s = match cache.iter().find(|(b, _)| b == block) {
                Some((_, s)) => *s,
                None => {
                    let s = block_sum(block);
                    cache.push((block.clone(), s));
                    s
                }
            };
            let x = s * kappa;
            prod *= x;
            without_err *= x.norm();
            with_err *= x.norm() + kappa.abs() * tail_bound(block.len());
        }
        value.add(prod);
        error.add(with_err - without_err);
    }
    Ok(MomentEstimate {
        value: value.value(),
        error: error.value(),
    })
}

/// All set partitions of `{0, ..., d-1}`, blocks listed in increasing order.
fn set_partitions(d: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, d: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == d {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, d, cur, out);
            cur[b].pop();
        }
        cur.push(alloc::vec![i]);
        rec(i + 1, d, cur, out);
        cur.pop();
    }
    rec(0, d, &mut current, &mut out);
    out
}

fn monte_carlo<E: Executor>(
    exec: &E,
    spec: &MomentSpec,
    samples: usize,
    m: usize,
    seed: u64,
    variant: SeriesVariant,
) -> Result<MomentEstimate> {
    if samples < 2 {
        return Err(Error::InvalidArgument(
            "Monte Carlo needs at least two samples",
        ));
    }
    let cfg = SeriesConfig::points(m, spec.ts())?.with_variant(variant);
    let eval = SeriesEvaluator::new(&cfg);
    let partials = map_chunks(exec, samples, |lo, hi| {
        let mut sum = ComplexSum::new();
        let mut sq = CompensatedSum::new();
        for r in lo..hi {
            let mut sampler = SatoTateSampler::with_stream(seed, r as u64);
            let x = spec.product(&eval.simulate(&mut sampler).values);
            sum.add(x);
            sq.add(x.norm_sqr());
        }
        (sum, sq)
    });
    let mut sum = ComplexSum::new();
    let mut sq = CompensatedSum::new();
    for (s, q) in &partials {
        sum.merge(s);
        sq.merge(q);
    }
    let nf = samples as f64;
    let mean = sum.value() / nf;
    let var = ((sq.value() - nf * mean.norm_sqr()) / (nf - 1.0)).max(0.0);
    Ok(MomentEstimate {
        value: mean,
        error: (var / nf).sqrt(),
    })
}

/// `(1/(p-1)) sum_{a in F_p^x} prod_j S(a - h_j)^{e_j}` where `S(b)` is the
/// Kloosterman sum `Kl_p(b)` or the Birch sum `Bi_p(b)`.
pub fn sums_of_products(
    ctx: &FieldContext,
    kind: FamilyKind,
    shifts: &[(i64, u32)],
) -> Result<Complex64> {
    let base = match kind {
        FamilyKind::Kloosterman => SumFamily::kloosterman(1),
        FamilyKind::Birch => SumFamily::birch(1),
        _ => {
            return Err(Error::Unsupported(
                "sums of products need kloosterman or birch",
            ))
        }
    };
    let table = base.all_shifted_complete_sums(ctx)?;
    let reduced: Vec<(u32, u32)> = shifts.iter().map(|&(h, e)| (ctx.reduce(h), e)).collect();
    let mut acc = ComplexSum::new();
    for a in 1..ctx.p() {
        let mut prod = Complex64::new(1.0, 0.0);
        for &(h, e) in &reduced {
            let s = table[ctx.sub(a, h) as usize];
            for _ in 0..e {
                prod *= s;
            }
        }
        acc.add(prod);
    }
    Ok(acc.value() / (ctx.p() - 1) as f64)
}

/// `prod_tau A(mu(tau))` for the multiplicities of the shifts modulo `p`.
pub fn sums_of_products_main_term(p: u64, shifts: &[(i64, u32)]) -> u128 {
    let profile: MultiplicityProfile = shifts
        .iter()
        .map(|&(h, e)| (if p == 0 { h } else { h.rem_euclid(p as i64) }, e))
        .collect();
    joint_moment(&profile)
}
