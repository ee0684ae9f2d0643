use alloc::vec::Vec;

use hashbrown::HashMap;
#[allow(unused_imports)]
use num_traits::Float;

use crate::arith::FieldContext;
use crate::error::{Error, Result};
use crate::exec::{map_chunks, Executor};
use crate::families::{FamilyKind, SumFamily};
use crate::sum::{CompensatedSum, ComplexSum};

/// Consecutive integers `start, start + 1, ..., start + len - 1`, never
/// wrapping modulo `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalSpec {
    pub start: u32,
    pub len: u32,
}

impl IntervalSpec {
    pub fn new(start: u32, len: u32) -> Self {
        Self { start, len }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + Clone {
        self.start..self.start + self.len
    }

    /// Checks that the interval lies in `[lowest, p - 1]`.
    fn check(&self, p: u32, lowest: u32) -> Result<()> {
        let end = self.start as u64 + self.len as u64;
        if self.len > 0 && (self.start < lowest || end > p as u64) {
            return Err(Error::InvalidInterval {
                start: self.start as u64,
                len: self.len as u64,
                p: p as u64,
            });
        }
        Ok(())
    }
}

/// `(1/|Omega|) sum_omega |(1/sqrt p) sum_{x in I} xi_p(x, omega)|^alpha`.
pub fn short_sum_moment<E: Executor>(
    exec: &E,
    ctx: &FieldContext,
    kind: FamilyKind,
    interval: IntervalSpec,
    alpha: u32,
) -> Result<f64> {
    if alpha == 0 || alpha % 2 == 1 {
        return Err(Error::InvalidArgument(
            "moment exponent must be a positive even integer",
        ));
    }
    let lowest = if kind.full_domain() { 0 } else { 1 };
    interval.check(ctx.p(), lowest)?;
    if interval.len == 0 {
        return Ok(0.0);
    }
    let p = ctx.p();
    let count = kind.parameter_count(p);
    let half = (alpha / 2) as i32;
    let parts = map_chunks(exec, count, |lo, hi| -> Result<CompensatedSum> {
        let mut acc = CompensatedSum::new();
        for idx in lo..hi {
            let fam = SumFamily::at_index(kind, p, idx);
            let mut s = ComplexSum::new();
            for x in interval.iter() {
                s.add(ctx.chi(fam.summand_phase(ctx, x)?));
            }
            let z = s.value() / ctx.sqrt_p();
            acc.add(z.norm_sqr().powi(half));
        }
        Ok(acc)
    });
    let mut total = CompensatedSum::new();
    for part in parts {
        total.merge(&part?);
    }
    Ok(total.value() / count as f64)
}

/// Which system of congruences [`fourth_moment_count`] counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairVariant {
    /// `x1 + x2 = x3 + x4` and `1/x1 + 1/x2 = 1/x3 + 1/x4`.
    InversePair,
    /// `1/x1 + 1/x2 = 1/x3 + 1/x4` alone; the additive relation only enters
    /// as a character weight in the fourth moment of `psi(x + a xbar)`.
    AdditivePair,
}

fn check_units_interval(ctx: &FieldContext, interval: IntervalSpec) -> Result<()> {
    if interval.len > 0 && interval.start == 0 {
        return Err(Error::ZeroResidue { p: ctx.p() as u64 });
    }
    interval.check(ctx.p(), 1)
}

/// Ordered quadruples in `I^4` satisfying `variant`, by grouping the
/// `|I|^2` pairs under a hash of their key and summing squared class sizes.
pub fn fourth_moment_count(
    ctx: &FieldContext,
    interval: IntervalSpec,
    variant: PairVariant,
) -> Result<u64> {
    check_units_interval(ctx, interval)?;
    let mut classes: HashMap<(u32, u32), u64> = HashMap::new();
    for x1 in interval.iter() {
        for x2 in interval.iter() {
            let inv_sum = ctx.add(ctx.inv(x1), ctx.inv(x2));
            let key = match variant {
                PairVariant::InversePair => (ctx.add(x1 % ctx.p(), x2 % ctx.p()), inv_sum),
                PairVariant::AdditivePair => (0, inv_sum),
            };
            *classes.entry(key).or_insert(0) += 1;
        }
    }
    Ok(classes.values().map(|&c| c * c).sum())
}

/// `O(|I|^4)` enumeration of the same count.
pub fn fourth_moment_count_exhaustive(
    ctx: &FieldContext,
    interval: IntervalSpec,
    variant: PairVariant,
) -> Result<u64> {
    check_units_interval(ctx, interval)?;
    let xs: Vec<u32> = interval.iter().collect();
    let mut count = 0u64;
    for &x1 in &xs {
        for &x2 in &xs {
            for &x3 in &xs {
                for &x4 in &xs {
                    let inv_ok =
                        ctx.add(ctx.inv(x1), ctx.inv(x2)) == ctx.add(ctx.inv(x3), ctx.inv(x4));
                    let add_ok = ctx.add(x1, x2) == ctx.add(x3, x4);
                    let ok = match variant {
                        PairVariant::InversePair => inv_ok && add_ok,
                        PairVariant::AdditivePair => inv_ok,
                    };
                    count += ok as u64;
                }
            }
        }
    }
    Ok(count)
}

/// Ordered quadruples with `x1 + x2 = x3 + x4 (mod p)`.
pub fn additive_energy(ctx: &FieldContext, interval: IntervalSpec) -> Result<u64> {
    interval.check(ctx.p(), 0)?;
    let mut classes: HashMap<u32, u64> = HashMap::new();
    for x1 in interval.iter() {
        for x2 in interval.iter() {
            *classes.entry(ctx.add(x1, x2)).or_insert(0) += 1;
        }
    }
    Ok(classes.values().map(|&c| c * c).sum())
}

/// The fourth moment of short sums of `psi(alpha (a x + xbar))` over both
/// parameters, rebuilt from solution counts by orthogonality of characters:
/// with `s = x1 + x2 - x3 - x4` and `r = 1/x1 + 1/x2 - 1/x3 - 1/x4`, a
/// quadruple contributes `(p-1)^2` if `s = r = 0`, `-(p-1)` if exactly one
/// vanishes and `1` otherwise, all divided by `p^2 (p-1)^2`.
pub fn kloosterman2_fourth_moment_from_counts(
    ctx: &FieldContext,
    interval: IntervalSpec,
) -> Result<f64> {
    check_units_interval(ctx, interval)?;
    if interval.len == 0 {
        return Ok(0.0);
    }
    let both = fourth_moment_count(ctx, interval, PairVariant::InversePair)? as f64;
    let inverse_only = fourth_moment_count(ctx, interval, PairVariant::AdditivePair)? as f64;
    let additive_only = additive_energy(ctx, interval)? as f64;
    let total = (interval.len as f64).powi(4);
    let q = (ctx.p() - 1) as f64;
    let sum = q * q * both - q * (additive_only - both) - q * (inverse_only - both)
        + (total - additive_only - inverse_only + both);
    let p = ctx.p() as f64;
    Ok(sum / (p * p * q * q))
}
