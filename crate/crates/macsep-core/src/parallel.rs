//! Data-parallel map helpers with a sequential fallback.
//!
//! Grid sweeps in this crate are embarrassingly parallel maps over input
//! vectors. With the `parallel` feature (default) they fan out through
//! rayon; without it they run sequentially with the same signature.
//! Output order always matches input order, so results are byte-identical
//! across thread counts.

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
///
/// `f` must be a pure function of its argument; output order is the input
/// order regardless of scheduling.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Maps `f` over `items` sequentially (the `parallel` feature is off).
#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `items` sequentially, regardless of features.
///
/// Kept available in all builds so benchmarks can compare the two paths
/// within a single compilation.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
