//! Data-parallel helpers. With the `parallel` feature (default) the parallel
//! entry points run on rayon; without it they fall back to the sequential
//! implementations, so the library builds on targets without threads.
//!
//! The sequential twins stay public so the benchmark suite can compare both
//! paths in one binary.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode for the data-parallel kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Rayon when the `parallel` feature is enabled, sequential otherwise.
    Parallel,
}

/// Maps `f` over `0..n` and collects the results in index order.
pub fn map_indexed<U, F>(mode: ExecMode, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => map_indexed_seq(n, f),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..n).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                map_indexed_seq(n, f)
            }
        }
    }
}

/// Sequential reference for [`map_indexed`].
pub fn map_indexed_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Maps `f` over a slice and collects in order.
pub fn map_slice<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items.par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter().map(f).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let f = |i: usize| i * i + 1;
        assert_eq!(
            map_indexed(ExecMode::Parallel, 100, f),
            map_indexed_seq(100, f)
        );
        let xs: Vec<u64> = (0..50).collect();
        assert_eq!(
            map_slice(ExecMode::Parallel, &xs, |x| x * 3),
            map_slice(ExecMode::Sequential, &xs, |x| x * 3)
        );
    }
}
