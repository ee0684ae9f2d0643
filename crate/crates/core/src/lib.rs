//! Partial-sum paths of complete exponential sums over prime fields.
//!
//! The crate computes Kloosterman, Birch and related character-sum paths,
//! simulates their limiting random Fourier series driven by independent
//! Sato-Tate variables, and provides the statistics needed to compare the
//! two: mixed moments, sums of products of shifted sums, Kolmogorov-Smirnov
//! distances, sup-norm tails and short-interval moments.
//!
//! Everything here is `no_std` with `alloc`. Parallel execution is
//! pluggable through [`exec::Executor`]; the companion `kpaths` crate
//! supplies a thread-pool backed implementation together with IO and CLI.
#![no_std]
// f64 math goes through `num_traits::Float` (libm). Modules allow that import
// to go unused because std's inherent methods take over whenever std is
// present in the build graph, as in tests.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod calibrated;
pub mod dft;
pub mod error;
pub mod exec;
pub mod families;
pub mod limit_series;
pub mod sato_tate;
pub mod stats;
pub mod sum;

pub use num_complex::Complex64;

pub use arith::{mod_inverse, primitive_root, FieldContext};
pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
pub use families::{FamilyKind, Ordering, Param, PathSample, SumFamily};
pub use limit_series::{SeriesConfig, SeriesGrid, SeriesPathSample, SeriesVariant};
pub use sato_tate::{MultiplicityProfile, SatoTateSampler};
