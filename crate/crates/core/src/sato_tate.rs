//! The Sato-Tate (semicircle) law `(1/pi) sqrt(1 - x^2/4) dx` on `[-2, 2]`:
//! seeded sampling and exact moments.

use alloc::collections::BTreeMap;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Deterministic stream of Sato-Tate draws.
///
/// The underlying generator is ChaCha8 keyed by the master seed, with the
/// stream index selecting an independent 64-bit ChaCha stream. Each draw
/// consumes exactly one 64-bit output.
#[derive(Debug, Clone)]
pub struct SatoTateSampler {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl SatoTateSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Independent stream `stream` under master seed `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    #[inline]
    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One draw `2 cos(theta)` where `theta` has density `(2/pi) sin^2`.
    #[inline]
    pub fn sample(&mut self) -> f64 {
        let u = self.uniform();
        2.0 * angle_from_uniform(u).cos()
    }

    pub fn fill(&mut self, out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = self.sample());
    }
}

/// Inverse of the angle CDF `F(theta) = (theta - sin theta cos theta) / pi`.
///
/// With `phi = 2 theta` this is Kepler's equation `phi - sin phi = 2 pi u`,
/// solved by Newton's method on the half `[0, pi]` (where the map is convex)
/// and reflected for `u > 1/2`.
pub fn angle_from_uniform(u: f64) -> f64 {
    let (m, flip) = if u <= 0.5 {
        (TAU * u, false)
    } else {
        (TAU * (1.0 - u), true)
    };
    let phi = solve_kepler_half(m);
    let theta = 0.5 * phi;
    if flip {
        PI - theta
    } else {
        theta
    }
}

/// Root of `phi - sin(phi) = m` for `m` in `[0, pi]`.
fn solve_kepler_half(m: f64) -> f64 {
    if m <= 0.0 {
        return 0.0;
    }
    // both are lower bounds of the root; Newton overshoots once and then
    // decreases monotonically on the convex branch
    let mut phi = (6.0 * m).cbrt().max(m).min(PI);
    for _ in 0..64 {
        let (s, c) = phi.sin_cos();
        let g = phi - s - m;
        let dg = 1.0 - c;
        if dg <= 0.0 {
            break;
        }
        let step = g / dg;
        let next = (phi - step).clamp(0.0, PI);
        if (next - phi).abs() <= 1e-12 * phi.max(1e-300) {
            return next;
        }
        phi = next;
    }
    phi
}

/// `A(mu) = E(ST^mu)`: zero for odd `mu`, the Catalan number `C(mu/2)` otherwise.
///
/// Exact for `mu <= 130`; larger orders overflow `u128` and panic.
pub fn st_moment(mu: u32) -> u128 {
    if mu % 2 == 1 {
        return 0;
    }
    let k = (mu / 2) as u128;
    // C(j+1) = C(j) * 2(2j+1) / (j+2)
    let mut c: u128 = 1;
    for j in 0..k {
        c = c
            .checked_mul(2 * (2 * j + 1))
            .expect("Sato-Tate moment overflows u128")
            / (j + 2);
    }
    c
}

/// Multiplicities `mu(tau)` of the shifts in a product of shifted sums.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiplicityProfile {
    mu: BTreeMap<i64, u32>,
}

impl MultiplicityProfile {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counts each shift after reduction modulo `p` (or as-is for `p = 0`).
    pub fn from_shifts(shifts: &[i64], p: u64) -> Self {
        let mut prof = Self::new();
        for &h in shifts {
            let key = if p == 0 { h } else { h.rem_euclid(p as i64) };
            prof.add(key, 1);
        }
        prof
    }

    pub fn add(&mut self, shift: i64, count: u32) {
        if count > 0 {
            *self.mu.entry(shift).or_insert(0) += count;
        }
    }

    pub fn get(&self, shift: i64) -> u32 {
        self.mu.get(&shift).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.mu.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.mu.iter().map(|(&k, &v)| (k, v))
    }
}

impl FromIterator<(i64, u32)> for MultiplicityProfile {
    fn from_iter<I: IntoIterator<Item = (i64, u32)>>(iter: I) -> Self {
        let mut prof = Self::new();
        iter.into_iter().for_each(|(k, v)| prof.add(k, v));
        prof
    }
}

/// `prod_tau A(mu(tau))`, the joint moment of independent Sato-Tate variables.
pub fn joint_moment(profile: &MultiplicityProfile) -> u128 {
    profile.iter().map(|(_, m)| st_moment(m)).product()
}
