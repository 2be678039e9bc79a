//! Thin dispatch layer between rayon and sequential execution.
//!
//! Callers must not depend on evaluation order: every user collects results
//! and sorts canonically, so output is identical with and without the
//! `parallel` feature and across thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items` and collect the `Some` results.
pub fn filter_map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().filter_map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().filter_map(f).collect()
    }
}

/// Sequential twin of [`filter_map_collect`], always available so the bench
/// suite can compare both code paths in a single run.
pub fn filter_map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> Option<U>,
{
    items.into_iter().filter_map(f).collect()
}
