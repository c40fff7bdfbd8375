//! Data-parallel helpers with a sequential fallback.
//!
//! Every sweep in the crate (exhaustive coloring scans, Monte-Carlo strategy
//! runs, annealing restarts) goes through [`Exec`]. With the `parallel`
//! feature the default is [`Exec::Parallel`], which runs on the current rayon
//! pool; without it only [`Exec::Sequential`] exists and behaves identically
//! apart from speed. Results never depend on the choice.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Smallest index in `range` satisfying `pred`, or `None`.
    pub fn find_first<F>(self, range: Range<u64>, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => range.into_iter().find(|&i| pred(i)),
            #[cfg(feature = "parallel")]
            Exec::Parallel => range.into_par_iter().find_first(|&i| pred(i)),
        }
    }

    /// `f` applied to every index, results in index order.
    pub fn map_collect<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => range.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => range.into_par_iter().map(f).collect(),
        }
    }

    /// Sum of `f` over the range.
    pub fn sum<F>(self, range: Range<u64>, f: F) -> u64
    where
        F: Fn(u64) -> u64 + Sync + Send,
    {
        match self {
            Exec::Sequential => range.into_iter().map(f).sum(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => range.into_par_iter().map(f).sum(),
        }
    }

    /// Runs `f` over items of a slice, results in slice order.
    pub fn map_slice<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }
}
