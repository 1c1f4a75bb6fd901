//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature enabled (the default) the [`Execution::Parallel`]
//! strategy runs on the rayon global pool. Without the feature every call runs
//! sequentially regardless of the requested strategy. Results never depend on
//! the strategy: collecting helpers preserve input order and the search
//! helpers return the lowest-index hit.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How exhaustive loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

#[cfg(feature = "parallel")]
impl Execution {
    fn parallel(self) -> bool {
        self == Execution::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub(crate) fn map_slice<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving order.
pub(crate) fn map_range<U, F>(exec: Execution, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Returns the result of `f` for the lowest index in `0..n` where it is `Some`.
pub(crate) fn find_first<W, F>(exec: Execution, n: usize, f: F) -> Option<W>
where
    W: Send,
    F: Fn(usize) -> Option<W> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return (0..n).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..n).find_map(f)
}

/// Returns the result of `f` for the first item where it is `Some`.
pub(crate) fn find_first_in<T, W, F>(exec: Execution, items: &[T], f: F) -> Option<W>
where
    T: Sync,
    W: Send,
    F: Fn(&T) -> Option<W> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}
