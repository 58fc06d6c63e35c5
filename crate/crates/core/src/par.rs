//! Data-parallel map over independent inputs.
//!
//! With the `parallel` feature (on by default) `ExecMode::Auto` fans work
//! out over rayon; without it, or with `ExecMode::Sequential`, the same
//! closure runs in order on one thread. Results are collected in input
//! order either way, so the two paths are bit-identical for pure closures.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a sweep should be executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExecMode {
    /// Parallel when the `parallel` feature is enabled, sequential otherwise.
    #[default]
    Auto,
    /// Always sequential.
    Sequential,
}

/// Map `f` over `items`, honoring the execution mode.
pub fn map_items<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Auto => map_auto(items, f),
    }
}

#[cfg(feature = "parallel")]
fn map_auto<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_auto<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}
