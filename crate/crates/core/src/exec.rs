//! Pluggable execution of independent indexed tasks.
//!
//! Sweeps split their index space into fixed-size chunks, evaluate each
//! chunk through an [`Executor`] and merge the partial results in chunk
//! order. Results therefore do not depend on how many workers ran.

use alloc::vec::Vec;

/// Chunk size used by every sweep in this crate.
pub const CHUNK: usize = 64;

pub trait Executor: Sync {
    /// Evaluates `f(0), ..., f(n - 1)` and returns the results in index order.
    fn map_indexed<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every task on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_indexed<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}

/// Maps each chunk `[lo, hi)` of `0..len` through `f`, in chunk order.
pub fn map_chunks<E, T, F>(exec: &E, len: usize, f: F) -> Vec<T>
where
    E: Executor + ?Sized,
    T: Send,
    F: Fn(usize, usize) -> T + Sync + Send,
{
    let chunks = len.div_ceil(CHUNK);
    exec.map_indexed(chunks, |c| {
        let lo = c * CHUNK;
        f(lo, (lo + CHUNK).min(len))
    })
}
