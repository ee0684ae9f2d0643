//! The limiting random Fourier series
//! `K(t) = t ST_0 + sum_{h != 0} (e(ht) - 1) / (2 pi i h) ST_h`
//! and its symmetric truncations `K_m(t) = sum_{|h| < m}`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::arith::FieldContext;
use crate::dft::{Dft, Direction};
use crate::error::{check_unit, Error, Result};
use crate::families::window_fourier_coeff;
use crate::sato_tate::SatoTateSampler;
use crate::sum::{CompensatedSum, ComplexSum};

/// Cutoff beyond which [`truncation_tail_variance`] bounds the tail analytically.
pub const TAIL_CUTOFF: u64 = 1_000_000;

/// `beta(h; t) = (e(ht) - 1) / (2 pi i h)`, with `beta(0; t) = t`.
pub fn beta(h: i64, t: f64) -> Complex64 {
    if h == 0 {
        return Complex64::new(t, 0.0);
    }
    // reduce h t modulo 1 before scaling by 2 pi
    let x = frac(h as f64 * t);
    let (s, c) = (TAU * x).sin_cos();
    // (c - 1 + i s) / (2 pi i h) = (s - i (c - 1)) / (2 pi h)
    let d = TAU * h as f64;
    Complex64::new(s / d, (1.0 - c) / d)
}

fn frac(x: f64) -> f64 {
    x - x.floor()
}

/// Which limit series is simulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeriesVariant {
    /// All shifts `|h| < m`.
    #[default]
    Standard,
    /// `K(t) + (e(-t) - 1)/(2 pi i) ST_{-1}`, i.e. the shift `h = -1` removed;
    /// the limit of paths of `psi(x + a xbar)`.
    ShiftMinusOne,
}

impl SeriesVariant {
    /// Whether shift `h` contributes to the series.
    #[inline]
    pub fn includes(self, h: i64) -> bool {
        !(self == SeriesVariant::ShiftMinusOne && h == -1)
    }
}

/// Evaluation points of a realization.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesGrid {
    /// `t = j / n` for `j = 0..=n`.
    Uniform(usize),
    /// Arbitrary sorted points in `[0, 1]`.
    Points(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesConfig {
    /// Truncation: shifts `|h| < m`.
    pub m: usize,
    pub grid: SeriesGrid,
    pub variant: SeriesVariant,
}

impl SeriesConfig {
    pub fn new(m: usize, grid: SeriesGrid, variant: SeriesVariant) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("truncation m must be at least 1"));
        }
        match &grid {
            SeriesGrid::Uniform(0) => {
                return Err(Error::InvalidArgument(
                    "uniform grid needs at least one step",
                ))
            }
            SeriesGrid::Uniform(_) => {}
            SeriesGrid::Points(ts) => {
                for &t in ts {
                    check_unit(t)?;
                }
                if ts.windows(2).any(|w| w[1] < w[0]) {
                    return Err(Error::InvalidArgument("grid points must be sorted"));
                }
            }
        }
        Ok(Self { m, grid, variant })
    }

    pub fn uniform(m: usize, steps: usize) -> Result<Self> {
        Self::new(m, SeriesGrid::Uniform(steps), SeriesVariant::Standard)
    }

    pub fn points(m: usize, ts: Vec<f64>) -> Result<Self> {
        Self::new(m, SeriesGrid::Points(ts), SeriesVariant::Standard)
    }

    pub fn with_variant(mut self, variant: SeriesVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn ts(&self) -> Vec<f64> {
        match &self.grid {
            SeriesGrid::Uniform(n) => (0..=*n).map(|j| j as f64 / *n as f64).collect(),
            SeriesGrid::Points(ts) => ts.clone(),
        }
    }

    /// Number of Sato-Tate draws per realization, `2m - 1`.
    pub fn draws(&self) -> usize {
        2 * self.m - 1
    }
}

/// One realization of `K_m` on the configured grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPathSample {
    pub ts: Vec<f64>,
    pub values: Vec<Complex64>,
    /// `ST_h` for `h = -(m-1) ..= m-1`, in that order.
    pub draws: Vec<f64>,
}

impl SeriesPathSample {
    pub fn m(&self) -> usize {
        self.draws.len().div_ceil(2)
    }

    /// Sup norm of the linearly interpolated realization.
    pub fn sup_norm(&self) -> f64 {
        crate::families::sup_norm(&self.values)
    }
}

/// Reusable evaluator for many realizations of the same configuration.
#[derive(Debug, Clone)]
pub struct SeriesEvaluator {
    cfg: SeriesConfig,
    ts: Vec<f64>,
    mode: Mode,
}

#[derive(Debug, Clone)]
enum Mode {
    Fourier(Dft),
    /// `beta(h; t_k)` for `h != 0`, row-major by grid point.
    Table(Vec<Complex64>),
    Direct,
}

const TABLE_LIMIT: usize = 1 << 22;

impl SeriesEvaluator {
    pub fn new(cfg: &SeriesConfig) -> Self {
        let ts = cfg.ts();
        let mode = match cfg.grid {
            SeriesGrid::Uniform(n) => Mode::Fourier(Dft::new(n)),
            SeriesGrid::Points(_) if ts.len() * 2 * cfg.m <= TABLE_LIMIT => {
                let m = cfg.m as i64;
                let mut table = Vec::with_capacity(ts.len() * 2 * cfg.m);
                for &t in &ts {
                    table.extend((-(m - 1)..m).map(|h| beta(h, t)));
                }
                Mode::Table(table)
            }
            SeriesGrid::Points(_) => Mode::Direct,
        };
        Self {
            cfg: cfg.clone(),
            ts,
            mode,
        }
    }

    pub fn config(&self) -> &SeriesConfig {
        &self.cfg
    }

    /// Draws `2m - 1` Sato-Tate variables (ordered `h = -(m-1) ..= m-1`)
    /// and evaluates the realization.
    pub fn simulate(&self, sampler: &mut SatoTateSampler) -> SeriesPathSample {
        let mut draws = alloc::vec![0.0; self.cfg.draws()];
        sampler.fill(&mut draws);
        let values = self.evaluate(&draws);
        SeriesPathSample {
            ts: self.ts.clone(),
            values,
            draws,
        }
    }

    /// Evaluates `K_m` on the grid for given draws `ST_{-(m-1)}, ..., ST_{m-1}`.
    pub fn evaluate(&self, draws: &[f64]) -> Vec<Complex64> {
        assert_eq!(draws.len(), self.cfg.draws());
        let m = self.cfg.m as i64;
        let st = |h: i64| draws[(h + m - 1) as usize];
        let variant = self.cfg.variant;
        let st0 = st(0);
        match &self.mode {
            Mode::Fourier(dft) => {
                let n = dft.len();
                let mut folded = alloc::vec![Complex64::new(0.0, 0.0); n];
                let mut constant = ComplexSum::new();
                for h in (-(m - 1)..m).filter(|&h| h != 0 && variant.includes(h)) {
                    // ST_h / (2 pi i h)
                    let c = Complex64::new(0.0, -st(h) / (TAU * h as f64));
                    folded[h.rem_euclid(n as i64) as usize] += c;
                    constant.add(c);
                }
                dft.process(&mut folded, Direction::Positive);
                let constant = constant.value();
                (0..=n)
                    .map(|j| {
                        let t = j as f64 / n as f64;
                        let osc = if j % n == 0 {
                            Complex64::new(0.0, 0.0)
                        } else {
                            folded[j] - constant
                        };
                        osc + t * st0
                    })
                    .collect()
            }
            Mode::Table(table) => {
                let width = (2 * m - 1) as usize;
                self.ts
                    .iter()
                    .enumerate()
                    .map(|(k, &t)| {
                        let row = &table[k * width..(k + 1) * width];
                        let mut acc = ComplexSum::new();
                        for (idx, b) in row.iter().enumerate() {
                            let h = idx as i64 - (m - 1);
                            if h != 0 && variant.includes(h) {
                                acc.add(b * draws[idx]);
                            }
                        }
                        acc.value() + t * st0
                    })
                    .collect()
            }
            Mode::Direct => self
                .ts
                .iter()
                .map(|&t| {
                    let mut acc = ComplexSum::new();
                    for h in (-(m - 1)..m).filter(|&h| h != 0 && variant.includes(h)) {
                        acc.add(beta(h, t) * st(h));
                    }
                    acc.value() + t * st0
                })
                .collect(),
        }
    }
}

/// One realization of `K_m(t)` on the configured grid.
pub fn simulate_series(cfg: &SeriesConfig, sampler: &mut SatoTateSampler) -> SeriesPathSample {
    SeriesEvaluator::new(cfg).simulate(sampler)
}

/// `alpha_p(h; t) / sqrt(p)`, the coefficient of `ST_h` in `X_p(t)`.
pub fn xp_coefficient(ctx: &FieldContext, h: i64, t: f64) -> Result<Complex64> {
    Ok(window_fourier_coeff(ctx, h, t)? / ctx.sqrt_p())
}

/// A certified enclosure `lower <= sigma_m^2 <= upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailVariance {
    pub lower: f64,
    pub upper: f64,
}

impl TailVariance {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// `sigma_m^2 = sum_{|h| >= m} |beta(h; t)|^2`: explicit sum up to
/// [`TAIL_CUTOFF`] plus the bound `2 / (pi^2 (H - 1))` for the remainder.
pub fn truncation_tail_variance(m: u64, t: f64) -> Result<TailVariance> {
    check_unit(t)?;
    if m == 0 {
        return Err(Error::InvalidArgument("truncation m must be at least 1"));
    }
    let mut acc = CompensatedSum::new();
    for h in m..=TAIL_CUTOFF {
        let s = (PI * frac(h as f64 * t)).sin();
        let hf = h as f64;
        acc.add(2.0 * s * s / (PI * PI * hf * hf));
    }
    let lower = acc.value();
    let tail = if t == 0.0 || t == 1.0 {
        0.0
    } else {
        2.0 / (PI * PI * (TAIL_CUTOFF - 1) as f64)
    };
    Ok(TailVariance {
        lower,
        upper: lower + tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_beta(h: i64, t: f64) -> Complex64 {
        if h == 0 {
            return Complex64::new(t, 0.0);
        }
        let e = Complex64::new(0.0, TAU * h as f64 * t).exp();
        (e - 1.0) / Complex64::new(0.0, TAU * h as f64)
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(0, 0.3), Complex64::new(0.3, 0.0));
        for h in [-7, -1, 1, 2, 50] {
            assert!(beta(h, 0.0).norm() < 1e-15);
            assert!(beta(h, 1.0).norm() < 1e-15);
        }
        let b = beta(1, 0.5);
        assert!(b.re.abs() < 1e-15 && (b.im - 1.0 / PI).abs() < 1e-15);
        for h in -20..=20 {
            for k in 0..=10 {
                let t = k as f64 / 10.0;
                assert!((beta(h, t) - direct_beta(h, t)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn beta_magnitude_bound() {
        for h in 1..200i64 {
            for k in 0..=50 {
                let t = k as f64 / 50.0;
                assert!(beta(h, t).norm() <= 1.0 / (PI * h as f64) + 1e-15);
                assert!(beta(-h, t).norm() <= 1.0 / (PI * h as f64) + 1e-15);
            }
        }
    }

    #[test]
    fn m_one_is_a_straight_segment() {
        let cfg = SeriesConfig::uniform(1, 10).unwrap();
        let mut s = SatoTateSampler::new(3);
        let path = simulate_series(&cfg, &mut s);
        assert_eq!(path.draws.len(), 1);
        for (t, v) in path.ts.iter().zip(&path.values) {
            assert!((v - t * path.draws[0]).norm() < 1e-15);
        }
    }

    #[test]
    fn shift_variant_removes_the_minus_one_term() {
        let ts = alloc::vec![0.0, 0.2, 0.5, 0.9, 1.0];
        let cfg = SeriesConfig::points(2, ts.clone())
            .unwrap()
            .with_variant(SeriesVariant::ShiftMinusOne);
        let std_cfg = SeriesConfig::points(2, ts.clone()).unwrap();
        let draws = [0.7, -1.3, 1.9]; // ST_{-1}, ST_0, ST_1
        let shifted = SeriesEvaluator::new(&cfg).evaluate(&draws);
        let standard = SeriesEvaluator::new(&std_cfg).evaluate(&draws);
        for ((t, a), b) in ts.iter().zip(&shifted).zip(&standard) {
            let t = *t;
            // K(t) + (e(-t) - 1)/(2 pi i) ST_{-1}
            let correction =
                (Complex64::new(0.0, -TAU * t).exp() - 1.0) / Complex64::new(0.0, TAU) * draws[0];
            assert!((a - (b + correction)).norm() < 1e-14);
            let expected = t * draws[1] + beta(1, t) * draws[2];
            assert!((a - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn fourier_and_direct_evaluation_agree() {
        for variant in [SeriesVariant::Standard, SeriesVariant::ShiftMinusOne] {
            let m = 37;
            let n = 50;
            let uniform = SeriesConfig::uniform(m, n).unwrap().with_variant(variant);
            let points = SeriesConfig::points(m, uniform.ts())
                .unwrap()
                .with_variant(variant);
            let mut s = SatoTateSampler::new(11);
            let a = simulate_series(&uniform, &mut s);
            let b = SeriesEvaluator::new(&points).evaluate(&a.draws);
            assert_eq!(a.values[0], Complex64::new(0.0, 0.0));
            for (x, y) in a.values.iter().zip(&b) {
                assert!((x - y).norm() < 1e-12, "{x} {y}");
            }
            // truncation shorter than the grid and longer than the grid
            let wide = SeriesConfig::uniform(300, 64)
                .unwrap()
                .with_variant(variant);
            let wide_pts = SeriesConfig::points(300, wide.ts())
                .unwrap()
                .with_variant(variant);
            let c = simulate_series(&wide, &mut s);
            let d = SeriesEvaluator::new(&wide_pts).evaluate(&c.draws);
            for (x, y) in c.values.iter().zip(&d) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn same_seed_same_realization() {
        let cfg = SeriesConfig::uniform(64, 128).unwrap();
        let a = simulate_series(&cfg, &mut SatoTateSampler::with_stream(9, 4));
        let b = simulate_series(&cfg, &mut SatoTateSampler::with_stream(9, 4));
        assert_eq!(a, b);
        assert_eq!(a.m(), 64);
    }

    #[test]
    fn xp_coefficient_examples() {
        let ctx5 = FieldContext::new(5).unwrap();
        let c = xp_coefficient(&ctx5, 0, 0.5).unwrap();
        assert!((c.re - 0.4).abs() < 1e-15);
        let ctx = FieldContext::new(101).unwrap();
        for k in 0..=20 {
            let t = k as f64 / 20.0;
            let c = xp_coefficient(&ctx, 0, t).unwrap();
            assert!((c.re - (100.0 * t).floor() / 101.0).abs() < 1e-14);
        }
        let d = xp_coefficient(&ctx, 7, 0.3).unwrap() - beta(7, 0.3);
        assert!(d.norm() <= 2.0 / 101.0);
    }

    #[test]
    fn tail_variance_examples() {
        let v = truncation_tail_variance(5, 0.0).unwrap();
        assert_eq!(v.lower, 0.0);
        assert_eq!(v.upper, 0.0);
        // odd h only: (2/pi^2)(pi^2/8 - 1)
        let v = truncation_tail_variance(3, 0.5).unwrap();
        let exact = 0.25 - 2.0 / (PI * PI);
        assert!(v.lower <= exact + 1e-12 && exact <= v.upper + 1e-12);
        assert!((v.midpoint() - 0.04735).abs() < 1e-5);
        for m in [2u64, 3, 10, 100] {
            for k in 0..=10 {
                let v = truncation_tail_variance(m, k as f64 / 10.0).unwrap();
                assert!(v.lower <= 2.0 / (PI * PI * (m - 1) as f64));
            }
        }
    }
}
