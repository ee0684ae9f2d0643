//! Summand families, complete sums, partial-sum paths and the completion
//! of truncated sums by discrete Fourier coefficients of intervals.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::arith::{primitive_root, FieldContext};
use crate::dft::{Dft, Direction};
use crate::error::{check_unit, Error, Result};
use crate::sum::ComplexSum;

/// The shape of the summand `xi_p(x, omega)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `psi(a x + xbar)`, `x` in the units, `omega = a`.
    Kloosterman,
    /// `psi(alpha (a x + xbar))`, `x` in the units, `omega = (alpha, a)`.
    Kloosterman2,
    /// `psi(a x + x^3)`, `x` in the whole field, `omega = a`.
    Birch,
    /// `psi(x + a xbar)`, `x` in the units, `omega = a`.
    KloostermanShift,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Kloosterman,
        FamilyKind::Kloosterman2,
        FamilyKind::Birch,
        FamilyKind::KloostermanShift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Kloosterman => "kloosterman",
            FamilyKind::Kloosterman2 => "kloosterman2",
            FamilyKind::Birch => "birch",
            FamilyKind::KloostermanShift => "kloosterman-shift",
        }
    }

    /// Summation over all of `F_p` (true) or over `F_p^x` (false).
    pub fn full_domain(self) -> bool {
        matches!(self, FamilyKind::Birch)
    }

    /// Number of summands, which is also the number of path segments.
    pub fn domain_size(self, p: u32) -> usize {
        if self.full_domain() {
            p as usize
        } else {
            p as usize - 1
        }
    }

    /// `|Omega_p|`.
    pub fn parameter_count(self, p: u32) -> usize {
        let units = p as usize - 1;
        match self {
            FamilyKind::Kloosterman2 => units * units,
            _ => units,
        }
    }

    /// The `idx`-th parameter in the canonical order (`alpha` major, then `a`).
    pub fn param_at(self, p: u32, idx: usize) -> Param {
        let units = p as usize - 1;
        match self {
            FamilyKind::Kloosterman2 => Param {
                alpha: (idx / units) as i64 + 1,
                a: (idx % units) as i64 + 1,
            },
            _ => Param {
                alpha: 1,
                a: idx as i64 + 1,
            },
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kloosterman" => Ok(FamilyKind::Kloosterman),
            "kloosterman2" => Ok(FamilyKind::Kloosterman2),
            "birch" => Ok(FamilyKind::Birch),
            "kloosterman-shift" | "shift" => Ok(FamilyKind::KloostermanShift),
            _ => Err(Error::InvalidArgument("unknown family")),
        }
    }
}

/// A point of the parameter space. `alpha` is ignored by one-parameter families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Param {
    pub alpha: i64,
    pub a: i64,
}

/// Order in which the summands are accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Ordering {
    /// `x = 1, 2, ..., p-1` (or `0, 1, ..., p-1` for the whole field).
    #[default]
    Natural,
    /// `x = g^0, g^1, ..., g^{p-2}` for the smallest primitive root `g`,
    /// preceded by `x = 0` for whole-field families.
    Geometric,
}

/// One member `x -> xi_p(x, omega)` of a family, with its summation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SumFamily {
    pub kind: FamilyKind,
    pub param: Param,
    pub ordering: Ordering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Nonlinear {
    /// `c * xbar`
    Inverse(u32),
    /// `x^3`
    Cube,
}

/// Summand phase `lin * x + g(x)` with everything reduced modulo `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Phase {
    lin: u32,
    nonlinear: Nonlinear,
}

impl Phase {
    #[inline]
    fn nonlinear_at(&self, ctx: &FieldContext, x: u32) -> u32 {
        match self.nonlinear {
            Nonlinear::Inverse(c) => ctx.mul(c, ctx.inv(x)),
            Nonlinear::Cube => ctx.mul(ctx.mul(x, x), x),
        }
    }

    #[inline]
    fn at(&self, ctx: &FieldContext, x: u32) -> u32 {
        ctx.add(ctx.mul(self.lin, x), self.nonlinear_at(ctx, x))
    }
}

impl SumFamily {
    pub fn new(kind: FamilyKind, param: Param) -> Self {
        Self {
            kind,
            param,
            ordering: Ordering::Natural,
        }
    }

    pub fn kloosterman(a: i64) -> Self {
        Self::new(FamilyKind::Kloosterman, Param { alpha: 1, a })
    }

    pub fn kloosterman2(alpha: i64, a: i64) -> Self {
        Self::new(FamilyKind::Kloosterman2, Param { alpha, a })
    }

    pub fn birch(a: i64) -> Self {
        Self::new(FamilyKind::Birch, Param { alpha: 1, a })
    }

    pub fn kloosterman_shift(a: i64) -> Self {
        Self::new(FamilyKind::KloostermanShift, Param { alpha: 1, a })
    }

    /// The member with index `idx` of `kind`'s parameter space.
    pub fn at_index(kind: FamilyKind, p: u32, idx: usize) -> Self {
        Self::new(kind, kind.param_at(p, idx))
    }

    pub fn with_ordering(mut self, ordering: Ordering) -> Self {
        self.ordering = ordering;
        self
    }

    /// Number of path segments for this family.
    pub fn segments(&self, ctx: &FieldContext) -> usize {
        self.kind.domain_size(ctx.p())
    }

    fn phase(&self, ctx: &FieldContext) -> Result<Phase> {
        let a = ctx.reduce(self.param.a);
        let alpha = ctx.reduce(self.param.alpha);
        match self.kind {
            FamilyKind::Kloosterman => {
                if a == 0 {
                    return Err(Error::ZeroParameter { name: "a" });
                }
                Ok(Phase {
                    lin: a,
                    nonlinear: Nonlinear::Inverse(1),
                })
            }
            FamilyKind::Kloosterman2 => {
                if a == 0 {
                    return Err(Error::ZeroParameter { name: "a" });
                }
                if alpha == 0 {
                    return Err(Error::ZeroParameter { name: "alpha" });
                }
                Ok(Phase {
                    lin: ctx.mul(alpha, a),
                    nonlinear: Nonlinear::Inverse(alpha),
                })
            }
            FamilyKind::Birch => Ok(Phase {
                lin: a,
                nonlinear: Nonlinear::Cube,
            }),
            FamilyKind::KloostermanShift => {
                if a == 0 {
                    return Err(Error::ZeroParameter { name: "a" });
                }
                Ok(Phase {
                    lin: 1,
                    nonlinear: Nonlinear::Inverse(a),
                })
            }
        }
    }

    /// The summation points in accumulation order.
    pub fn points(&self, ctx: &FieldContext) -> Vec<u32> {
        let p = ctx.p();
        let full = self.kind.full_domain();
        match self.ordering {
            Ordering::Natural => {
                let start = if full { 0 } else { 1 };
                (start..p).collect()
            }
            Ordering::Geometric => {
                let g = primitive_root(p as u64).expect("context holds a prime") as u32;
                let mut out = Vec::with_capacity(self.segments(ctx));
                if full {
                    out.push(0);
                }
                let mut x = 1u32;
                for _ in 0..p - 1 {
                    out.push(x);
                    x = ctx.mul(x, g);
                }
                out
            }
        }
    }

    /// Residue `k` with `xi_p(x, omega) = e(k/p)`.
    pub fn summand_phase(&self, ctx: &FieldContext, x: u32) -> Result<u32> {
        if x == 0 && !self.kind.full_domain() {
            return Err(Error::ZeroResidue { p: ctx.p() as u64 });
        }
        Ok(self.phase(ctx)?.at(ctx, x % ctx.p()))
    }

    /// Writes the vertices `z_0 = 0, ..., z_N` of the normalized partial-sum
    /// path into `buf`, reusing its allocation.
    pub fn partial_sums_into(&self, ctx: &FieldContext, buf: &mut Vec<Complex64>) -> Result<()> {
        let phase = self.phase(ctx)?;
        let scale = 1.0 / ctx.sqrt_p();
        buf.clear();
        buf.reserve(self.segments(ctx) + 1);
        buf.push(Complex64::new(0.0, 0.0));
        let mut acc = ComplexSum::new();
        let mut push = |x: u32| {
            acc.add(ctx.chi(phase.at(ctx, x)));
            buf.push(acc.value() * scale);
        };
        match self.ordering {
            Ordering::Natural => {
                let start = if self.kind.full_domain() { 0 } else { 1 };
                (start..ctx.p()).for_each(&mut push);
            }
            Ordering::Geometric => self.points(ctx).into_iter().for_each(&mut push),
        }
        Ok(())
    }

    /// The polygonal path of normalized partial sums.
    pub fn partial_sum_vector(&self, ctx: &FieldContext) -> Result<PathSample> {
        let mut vertices = Vec::new();
        self.partial_sums_into(ctx, &mut vertices)?;
        Ok(PathSample { vertices })
    }

    /// `(1/sqrt p) sum_x xi_p(x, omega)`, accumulated exactly as the final
    /// vertex of [`SumFamily::partial_sum_vector`].
    pub fn complete_sum(&self, ctx: &FieldContext) -> Result<Complex64> {
        let phase = self.phase(ctx)?;
        let mut acc = ComplexSum::new();
        match self.ordering {
            Ordering::Natural => {
                let start = if self.kind.full_domain() { 0 } else { 1 };
                (start..ctx.p()).for_each(|x| acc.add(ctx.chi(phase.at(ctx, x))));
            }
            Ordering::Geometric => self
                .points(ctx)
                .into_iter()
                .for_each(|x| acc.add(ctx.chi(phase.at(ctx, x)))),
        }
        Ok(acc.value() * (1.0 / ctx.sqrt_p()))
    }

    /// Number of summands in the discontinuous truncation at `t`:
    /// `1 <= x <= floor((p-1) t)` for unit domains, `0 <= x <= floor(p t)`
    /// (capped at `p - 1`) for the whole field.
    pub fn truncation_count(&self, ctx: &FieldContext, t: f64) -> Result<usize> {
        let t = check_unit(t)?;
        let p = ctx.p() as usize;
        Ok(if self.kind.full_domain() {
            ((p as f64 * t).floor() as usize + 1).min(p)
        } else {
            ((p - 1) as f64 * t).floor() as usize
        })
    }

    /// The truncated sum `(1/sqrt p) sum_{x <= X(t)} xi_p(x, omega)` by direct
    /// summation in natural order.
    pub fn truncated_sum(&self, ctx: &FieldContext, t: f64) -> Result<Complex64> {
        let phase = self.phase(ctx)?;
        let count = self.truncation_count(ctx, t)?;
        let start = if self.kind.full_domain() { 0 } else { 1 };
        let mut acc = ComplexSum::new();
        (start..start + count as u32).for_each(|x| acc.add(ctx.chi(phase.at(ctx, x))));
        Ok(acc.value() / ctx.sqrt_p())
    }

    /// Complete sum with the linear coefficient shifted to `b`:
    /// `(1/sqrt p) sum_x psi(b x + g(x))`, direct `O(p)` evaluation.
    pub fn shifted_complete_sum(&self, ctx: &FieldContext, b: i64) -> Result<Complex64> {
        let phase = self.phase(ctx)?;
        let b = ctx.reduce(b);
        let start = if self.kind.full_domain() { 0 } else { 1 };
        let mut acc = ComplexSum::new();
        for x in start..ctx.p() {
            acc.add(ctx.chi(ctx.add(ctx.mul(b, x), phase.nonlinear_at(ctx, x))));
        }
        Ok(acc.value() / ctx.sqrt_p())
    }

    /// Complete sums for every linear coefficient `b` in `0..p` at once, by a
    /// single length-`p` transform of `x -> psi(g(x))`.
    pub fn all_shifted_complete_sums(&self, ctx: &FieldContext) -> Result<Vec<Complex64>> {
        let phase = self.phase(ctx)?;
        let p = ctx.p();
        let mut data: Vec<Complex64> = (0..p)
            .map(|x| {
                if x == 0 && !self.kind.full_domain() {
                    Complex64::new(0.0, 0.0)
                } else {
                    ctx.chi(phase.nonlinear_at(ctx, x))
                }
            })
            .collect();
        Dft::new(p as usize).process(&mut data, Direction::Positive);
        let scale = 1.0 / ctx.sqrt_p();
        data.iter_mut().for_each(|z| *z *= scale);
        Ok(data)
    }

    /// Linear coefficient of the summand phase, reduced modulo `p`.
    pub fn linear_coefficient(&self, ctx: &FieldContext) -> Result<u32> {
        Ok(self.phase(ctx)?.lin)
    }
}

/// Ordered vertices of a polygonal path, parameterized uniformly over
/// `[0, 1]` with linear interpolation between consecutive vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    vertices: Vec<Complex64>,
}

impl PathSample {
    pub fn from_vertices(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Complex64> {
        self.vertices
    }

    pub fn segments(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn endpoint(&self) -> Complex64 {
        *self.vertices.last().expect("nonempty path")
    }

    /// Value at parameter `t`.
    pub fn eval(&self, t: f64) -> Result<Complex64> {
        check_unit(t)?;
        Ok(interpolate(&self.vertices, t))
    }

    /// `max_j |z_j|`, which is the sup norm of the polygon.
    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.vertices)
    }
}

/// Linear interpolation of the vertex list at `t` in `[0, 1]`.
#[inline]
pub fn interpolate(vertices: &[Complex64], t: f64) -> Complex64 {
    let n = vertices.len() - 1;
    if n == 0 {
        return vertices[0];
    }
    let s = t * n as f64;
    let j = (s.floor() as usize).min(n - 1);
    let frac = s - j as f64;
    if frac == 0.0 {
        return vertices[j];
    }
    if frac == 1.0 {
        return vertices[j + 1];
    }
    vertices[j] + (vertices[j + 1] - vertices[j]) * frac
}

#[inline]
pub fn sup_norm(vertices: &[Complex64]) -> f64 {
    vertices.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `(1/sqrt p) sum_{x = lo}^{hi} psi(h x)` in closed form; zero for `hi < lo`.
pub fn interval_fourier_coeff(ctx: &FieldContext, h: i64, lo: i64, hi: i64) -> Complex64 {
    let count = hi - lo + 1;
    if count <= 0 {
        return Complex64::new(0.0, 0.0);
    }
    let hr = ctx.reduce(h);
    let value = if hr == 0 {
        Complex64::new(count as f64, 0.0)
    } else {
        let num = Complex64::new(1.0, 0.0) - ctx.psi(h * count);
        let den = Complex64::new(1.0, 0.0) - ctx.chi(hr);
        ctx.psi(h * lo) * num / den
    };
    value / ctx.sqrt_p()
}

/// `alpha_p(h; t) = (1/sqrt p) sum_{1 <= x <= (p-1) t} psi(h x)`.
pub fn window_fourier_coeff(ctx: &FieldContext, h: i64, t: f64) -> Result<Complex64> {
    let t = check_unit(t)?;
    let hi = ((ctx.p() - 1) as f64 * t).floor() as i64;
    Ok(interval_fourier_coeff(ctx, h, 1, hi))
}

/// The window coefficients `alpha_p(h; t)` over `h = -(p-1)/2 ..= (p-1)/2`,
/// using the truncation convention of `family`.
pub fn family_window_coeffs(
    ctx: &FieldContext,
    kind: FamilyKind,
    t: f64,
) -> Result<Vec<(i64, Complex64)>> {
    let t = check_unit(t)?;
    let p = ctx.p() as i64;
    let (lo, hi) = if kind.full_domain() {
        (0, ((p as f64 * t).floor() as i64).min(p - 1))
    } else {
        (1, ((p - 1) as f64 * t).floor() as i64)
    };
    let half = (p - 1) / 2;
    Ok((-half..=half)
        .map(|h| (h, interval_fourier_coeff(ctx, h, lo, hi)))
        .collect())
}

/// Completed form of truncated sums: the shifted complete sums of one family
/// member, from which `K~_p(t, omega)` is rebuilt for any `t`.
#[derive(Debug, Clone)]
pub struct CompletionTable {
    kind: FamilyKind,
    lin: u32,
    sums: Vec<Complex64>,
}

impl CompletionTable {
    pub fn new(family: &SumFamily, ctx: &FieldContext) -> Result<Self> {
        if family.ordering != Ordering::Natural {
            return Err(Error::Unsupported(
                "completion requires natural summation order",
            ));
        }
        let sums = family.all_shifted_complete_sums(ctx)?;
        Ok(Self {
            kind: family.kind,
            lin: family.linear_coefficient(ctx)?,
            sums,
        })
    }

    /// Complete sum at linear coefficient `b`.
    pub fn shifted(&self, b: u32) -> Complex64 {
        self.sums[b as usize]
    }

    /// `(1/sqrt p) sum_{|h| < p/2} alpha_p(h; t) S(lin - h)`.
    pub fn interpolant(&self, ctx: &FieldContext, t: f64) -> Result<Complex64> {
        let coeffs = family_window_coeffs(ctx, self.kind, t)?;
        let mut acc = ComplexSum::new();
        for (h, alpha) in coeffs {
            let b = ctx.sub(self.lin, ctx.reduce(h));
            acc.add(alpha * self.sums[b as usize]);
        }
        Ok(acc.value() / ctx.sqrt_p())
    }
}

/// `K~_p(t, omega)` rebuilt from complete sums of shifted parameters.
pub fn completed_interpolant(family: &SumFamily, ctx: &FieldContext, t: f64) -> Result<Complex64> {
    check_unit(t)?;
    CompletionTable::new(family, ctx)?.interpolant(ctx, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::TAU;

    fn e(x: f64) -> Complex64 {
        Complex64::new((TAU * x).cos(), (TAU * x).sin())
    }

    /// Direct evaluation without tables.
    fn oracle_sum(p: u64, xs: impl Iterator<Item = u64>, phase: impl Fn(u64) -> u64) -> Complex64 {
        let s: Complex64 = xs.map(|x| e((phase(x) % p) as f64 / p as f64)).sum();
        s / (p as f64).sqrt()
    }

    fn inv(x: u64, p: u64) -> u64 {
        (1..p).find(|y| x * y % p == 1).unwrap()
    }

    #[test]
    fn kloosterman_p5_example() {
        let ctx = FieldContext::new(5).unwrap();
        let got = SumFamily::kloosterman(1).complete_sum(&ctx).unwrap();
        let want = oracle_sum(5, 1..5, |x| x + inv(x, 5));
        assert!((got - want).norm() < 1e-12);
        assert!((got.re - 0.170_820).abs() < 1e-6 && got.im.abs() < 1e-12);
    }

    #[test]
    fn birch_p7_example() {
        let ctx = FieldContext::new(7).unwrap();
        let got = SumFamily::birch(1).complete_sum(&ctx).unwrap();
        let want = oracle_sum(7, 0..7, |x| x + x * x * x);
        assert!((got - want).norm() < 1e-12);
        assert!((got.re + 0.639_524).abs() < 1e-6 && got.im.abs() < 1e-12);
    }

    #[test]
    fn two_parameter_family_reduces_at_alpha_one() {
        let ctx = FieldContext::new(101).unwrap();
        for a in 1..101 {
            let k1 = SumFamily::kloosterman(a).complete_sum(&ctx).unwrap();
            let k2 = SumFamily::kloosterman2(1, a).complete_sum(&ctx).unwrap();
            assert_eq!(k1, k2);
        }
    }

    #[test]
    fn zero_parameters_rejected() {
        let ctx = FieldContext::new(7).unwrap();
        assert!(SumFamily::kloosterman(0).complete_sum(&ctx).is_err());
        assert!(SumFamily::kloosterman(14).complete_sum(&ctx).is_err());
        assert!(SumFamily::kloosterman2(0, 1).complete_sum(&ctx).is_err());
        assert!(SumFamily::kloosterman_shift(7)
            .partial_sum_vector(&ctx)
            .is_err());
        assert!(SumFamily::birch(0).complete_sum(&ctx).is_ok());
    }

    #[test]
    fn path_endpoint_and_origin() {
        let ctx = FieldContext::new(5).unwrap();
        let fam = SumFamily::kloosterman(1);
        let path = fam.partial_sum_vector(&ctx).unwrap();
        assert_eq!(path.segments(), 4);
        assert_eq!(path.vertices()[0], Complex64::new(0.0, 0.0));
        assert_eq!(path.endpoint(), fam.complete_sum(&ctx).unwrap());
        assert!((path.endpoint().re - 0.170_820).abs() < 1e-6);
        let geo = fam
            .with_ordering(Ordering::Geometric)
            .partial_sum_vector(&ctx)
            .unwrap();
        assert_eq!(
            fam.with_ordering(Ordering::Geometric).points(&ctx),
            [1, 2, 4, 3]
        );
        assert!((geo.endpoint() - path.endpoint()).norm() < 1e-12);
    }

    #[test]
    fn geometric_order_covers_whole_field_for_birch() {
        let ctx = FieldContext::new(7).unwrap();
        let fam = SumFamily::birch(2).with_ordering(Ordering::Geometric);
        let mut pts = fam.points(&ctx);
        assert_eq!(pts[0], 0);
        pts.sort_unstable();
        assert_eq!(pts, (0..7).collect::<Vec<_>>());
        let natural = SumFamily::birch(2).complete_sum(&ctx).unwrap();
        assert!((fam.complete_sum(&ctx).unwrap() - natural).norm() < 1e-12);
    }

    #[test]
    fn steps_have_unit_normalized_length() {
        let ctx = FieldContext::new(211).unwrap();
        for fam in [
            SumFamily::kloosterman(5),
            SumFamily::kloosterman2(3, 7),
            SumFamily::birch(9),
            SumFamily::kloosterman_shift(2),
        ] {
            let path = fam.partial_sum_vector(&ctx).unwrap();
            assert_eq!(path.segments(), fam.segments(&ctx));
            for w in path.vertices().windows(2) {
                assert!(((w[1] - w[0]).norm() - 1.0 / ctx.sqrt_p()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn path_eval_examples() {
        let path = PathSample::from_vertices(alloc::vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 1.0)
        ])
        .unwrap();
        assert_eq!(path.eval(0.5).unwrap(), Complex64::new(0.5, 0.5));
        assert_eq!(path.eval(0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(path.eval(1.0).unwrap(), Complex64::new(1.0, 1.0));
        assert!(path.eval(1.5).is_err());
        assert!(path.eval(-0.1).is_err());
        assert!(path.eval(f64::NAN).is_err());
        assert!(PathSample::from_vertices(Vec::new()).is_err());
    }

    #[test]
    fn sup_norm_examples() {
        let path = PathSample::from_vertices(alloc::vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(0.5, 0.0),
        ])
        .unwrap();
        assert!((path.sup_norm() - 2f64.sqrt()).abs() < 1e-15);
        let single = PathSample::from_vertices(alloc::vec![Complex64::new(0.0, 0.0)]).unwrap();
        assert_eq!(single.sup_norm(), 0.0);
        // the polygon maximum sits on a vertex
        let fine = (0..=10_000)
            .map(|k| path.eval(k as f64 / 10_000.0).unwrap().norm())
            .fold(0.0, f64::max);
        assert!(fine <= path.sup_norm() + 1e-15);
    }

    #[test]
    fn window_coefficient_examples() {
        let ctx5 = FieldContext::new(5).unwrap();
        let c = window_fourier_coeff(&ctx5, 0, 0.5).unwrap();
        assert!((c.re - 2.0 / 5f64.sqrt()).abs() < 1e-12 && c.im == 0.0);
        for h in -2..=2 {
            assert_eq!(
                window_fourier_coeff(&ctx5, h, 0.0).unwrap(),
                Complex64::new(0.0, 0.0)
            );
        }
        let ctx7 = FieldContext::new(7).unwrap();
        let c = window_fourier_coeff(&ctx7, 1, 1.0).unwrap();
        assert!((c.re + 1.0 / 7f64.sqrt()).abs() < 1e-12 && c.im.abs() < 1e-12);
        assert!(window_fourier_coeff(&ctx7, 1, 1.01).is_err());
    }

    #[test]
    fn window_coefficients_match_direct_sum() {
        let ctx = FieldContext::new(101).unwrap();
        for h in -50i64..=50 {
            for k in 0..=20 {
                let t = k as f64 / 20.0;
                let hi = (100.0 * t).floor() as u64;
                let direct = oracle_sum(101, 1..=hi, |x| (h.rem_euclid(101) as u64) * x);
                let closed = window_fourier_coeff(&ctx, h, t).unwrap();
                assert!((direct - closed).norm() < 1e-11, "h={h} t={t}");
            }
        }
    }

    #[test]
    fn transform_matches_direct_shifted_sums() {
        let ctx = FieldContext::new(103).unwrap();
        for fam in [
            SumFamily::kloosterman(1),
            SumFamily::birch(1),
            SumFamily::kloosterman_shift(4),
        ] {
            let fast = fam.all_shifted_complete_sums(&ctx).unwrap();
            for (b, f) in fast.iter().enumerate() {
                let direct = fam.shifted_complete_sum(&ctx, b as i64).unwrap();
                assert!((f - direct).norm() < 1e-11);
            }
        }
        // Kl_p(0) = -1/sqrt(p)
        let fast = SumFamily::kloosterman(1)
            .all_shifted_complete_sums(&ctx)
            .unwrap();
        assert!((fast[0].re + 1.0 / ctx.sqrt_p()).abs() < 1e-12);
    }

    #[test]
    fn completed_interpolant_examples() {
        let ctx = FieldContext::new(101).unwrap();
        let fam = SumFamily::kloosterman(3);
        let at_one = completed_interpolant(&fam, &ctx, 1.0).unwrap();
        assert!((at_one - fam.complete_sum(&ctx).unwrap()).norm() < 1e-10);
        assert!(completed_interpolant(&fam, &ctx, 0.0).unwrap().norm() < 1e-12);
        let hi = (100.0f64 * 0.37).floor() as u64;
        let direct = oracle_sum(101, 1..=hi, |x| 3 * x + inv(x, 101));
        let completed = completed_interpolant(&fam, &ctx, 0.37).unwrap();
        assert!((completed - direct).norm() < 1e-8);
        assert!(completed_interpolant(&fam.with_ordering(Ordering::Geometric), &ctx, 0.5).is_err());
    }

    #[test]
    fn completion_holds_for_every_family() {
        let ctx = FieldContext::new(31).unwrap();
        for kind in FamilyKind::ALL {
            for idx in (0..kind.parameter_count(31)).step_by(7) {
                let fam = SumFamily::at_index(kind, 31, idx);
                let table = CompletionTable::new(&fam, &ctx).unwrap();
                for k in 0..=40 {
                    let t = k as f64 / 40.0;
                    let direct = fam.truncated_sum(&ctx, t).unwrap();
                    let completed = table.interpolant(&ctx, t).unwrap();
                    assert!((direct - completed).norm() < 1e-10, "{kind} {idx} t={t}");
                }
            }
        }
    }

    #[test]
    fn parameter_indexing_covers_the_space() {
        let p = 7;
        assert_eq!(FamilyKind::Kloosterman2.parameter_count(p), 36);
        assert_eq!(
            FamilyKind::Kloosterman2.param_at(p, 0),
            Param { alpha: 1, a: 1 }
        );
        assert_eq!(
            FamilyKind::Kloosterman2.param_at(p, 35),
            Param { alpha: 6, a: 6 }
        );
        assert_eq!(FamilyKind::Birch.param_at(p, 5), Param { alpha: 1, a: 6 });
    }
}
