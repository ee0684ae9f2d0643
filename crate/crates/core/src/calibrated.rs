//! Empirical constants for bounds whose implied constants are not known.
//!
//! Each value was measured once by an exhaustive scan on small primes,
//! rounded up with margin and frozen. They are measurements, not theorems.

/// `max |alpha_p(h;t)/sqrt p - beta(h;t)| * p` over `|h| < p/2` and a
/// 50-point grid of `t`, scanned over every prime in `101..=997`. The
/// observed maximum was 1.959.
pub const COEFFICIENT_PROXIMITY: f64 = 2.0;

/// `max sqrt(p) |S(h; p) - prod A(mu)|` over [`SUMS_OF_PRODUCTS_BATTERY`]
/// for Kloosterman and Birch sums at `p` in 101, 199, 499, 1009. The
/// observed maximum was 1.645.
pub const SUMS_OF_PRODUCTS: f64 = 4.0;

/// Shift tuples `(h, multiplicity)` with total degree at most 4.
pub const SUMS_OF_PRODUCTS_BATTERY: [&[(i64, u32)]; 6] = [
    &[(0, 2)],
    &[(0, 1), (1, 1)],
    &[(0, 4)],
    &[(0, 2), (3, 2)],
    &[(1, 1), (2, 1), (5, 2)],
    &[(0, 3), (7, 1)],
];

/// Exponent `delta` with `E|Bi short sum|^8 <= p^(-1/2 - delta)` for
/// intervals `[0, ceil(sqrt p))`. Observed 1.097 at `p = 499` and 1.141
/// at `p = 211`.
pub const BIRCH_SHORT_SUM_DELTA: f64 = 1.0;

/// `c` in `E|K(1/2) - K_m(1/2)| <= c m^(-1/2)`. At `t = 1/2` the
/// difference is real up to sign with variance close to `1/(pi^2 m)`, so a
/// Gaussian surrogate predicts `c` near 0.25.
pub const SERIES_TRUNCATION: f64 = 1.0;
