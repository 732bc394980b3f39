//! Execution strategy for the exhaustive scans.
//!
//! Every scan in this crate is expressed over a dense index range `0..len`
//! whose order is the canonical (lexicographic) order of the cases. The
//! helpers below run such a scan either sequentially or on the rayon pool
//! and always return results in index order, so reports do not depend on
//! the schedule or the number of workers.
//!
//! With the `parallel` feature disabled, [`Exec::Parallel`] silently runs
//! sequentially.

use crate::error::Result;

/// How a scan is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this strategy actually runs on multiple threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Order-preserving `filter_map` over `0..len`.
pub(crate) fn filter_map<T, F>(exec: Exec, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().filter_map(f).collect();
    }
    let _ = exec;
    (0..len).filter_map(f).collect()
}

/// The lowest index for which `f` yields a value.
pub(crate) fn find_first<T, F>(exec: Exec, len: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len)
            .into_par_iter()
            .find_map_first(|i| f(i).map(|v| (i, v)));
    }
    let _ = exec;
    (0..len).find_map(|i| f(i).map(|v| (i, v)))
}

/// Fold `0..len` into per-worker accumulators and merge them.
///
/// `reduce` must be associative and must not depend on which side holds
/// the lower indices for the result to be schedule-independent.
pub(crate) fn fold_reduce<A, I, F, R>(exec: Exec, len: usize, identity: I, fold: F, reduce: R) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, usize) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len)
            .into_par_iter()
            .fold(&identity, &fold)
            .reduce(&identity, &reduce);
    }
    let _ = (exec, &reduce);
    (0..len).fold(identity(), fold)
}

/// Run `f` on a dedicated pool of `threads` workers, or on the global pool
/// when `threads` is `None`.
pub fn with_threads<R, F>(threads: Option<usize>, f: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match threads {
        #[cfg(feature = "parallel")]
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| crate::error::Error::ThreadPool(e.to_string())),
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(f()),
        None => Ok(f()),
    }
}
