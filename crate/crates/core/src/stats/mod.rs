//! Comparison of empirical path statistics with the limiting series.

mod ks;
mod moments;
mod short_sums;
mod tails;

use alloc::vec::Vec;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{check_unit, Error, Result};

pub use ks::ks_distance;
pub use moments::{
    empirical_mixed_moment, sums_of_products, sums_of_products_main_term, theoretical_mixed_moment,
    MomentEstimate, TheoryMethod, DEFAULT_EXPANSION_CUTOFF,
};
pub use short_sums::{
    additive_energy, fourth_moment_count, fourth_moment_count_exhaustive,
    kloosterman2_fourth_moment_from_counts, short_sum_moment, IntervalSpec, PairVariant,
};
pub use tails::{
    empirical_sup_norms, empirical_values_at, simulated_sup_norms, simulated_values_at,
    sup_norm_tail, tail_from_samples, TailEstimate, TailSource,
};

/// One factor `K(t)^n conj(K(t))^m` of a mixed moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPoint {
    pub t: f64,
    pub n: u32,
    pub m: u32,
}

/// A mixed moment `E prod_i K(t_i)^{n_i} conj(K(t_i))^{m_i}` with strictly
/// increasing `t_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSpec {
    points: Vec<MomentPoint>,
}

impl MomentSpec {
    pub fn new(points: Vec<MomentPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidMomentSpec("no points"));
        }
        for pt in &points {
            check_unit(pt.t)?;
        }
        if points.windows(2).any(|w| w[1].t <= w[0].t) {
            return Err(Error::InvalidMomentSpec(
                "points must be strictly increasing in t",
            ));
        }
        Ok(Self { points })
    }

    /// Single-point moment `E K(t)^n conj(K(t))^m`.
    pub fn single(t: f64, n: u32, m: u32) -> Result<Self> {
        Self::new(alloc::vec![MomentPoint { t, n, m }])
    }

    pub fn points(&self) -> &[MomentPoint] {
        &self.points
    }

    pub fn ts(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t).collect()
    }

    /// `(n, m)` = total powers of the value and of its conjugate.
    pub fn degrees(&self) -> (u32, u32) {
        self.points
            .iter()
            .fold((0, 0), |(n, m), p| (n + p.n, m + p.m))
    }

    /// The product for path values `values[i] = K(t_i)`; an all-zero
    /// exponent spec gives 1.
    pub fn product(&self, values: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (pt, z) in self.points.iter().zip(values) {
            let zc = z.conj();
            for _ in 0..pt.n {
                acc *= z;
            }
            for _ in 0..pt.m {
                acc *= zc;
            }
        }
        acc
    }
}

impl FromStr for MomentSpec {
    type Err = Error;

    /// Parses `"t:n,m;t:n,m;..."`, e.g. `"0.5:1,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = Error::InvalidMomentSpec("expected `t:n,m` items separated by `;`");
        let mut points = Vec::new();
        for item in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (t, rest) = item.split_once(':').ok_or(bad.clone())?;
            let (n, m) = rest.split_once(',').ok_or(bad.clone())?;
            points.push(MomentPoint {
                t: t.trim().parse().map_err(|_| bad.clone())?,
                n: n.trim().parse().map_err(|_| bad.clone())?,
                m: m.trim().parse().map_err(|_| bad.clone())?,
            });
        }
        Self::new(points)
    }
}
