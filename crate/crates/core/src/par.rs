//! Data-parallel helpers over ranges of naturals.
//!
//! The functions at the root of this module dispatch to [`parallel`] when
//! the `parallel` feature is enabled and to [`sequential`] otherwise. Both
//! variants return results in index order, so callers see identical output
//! either way.

use std::ops::Range;

pub mod sequential {
    use super::Range;

    pub fn map_range<T, F>(range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        range.map(f).collect()
    }

    /// Smallest index in `range` satisfying `pred`.
    pub fn find_first<F>(range: Range<u64>, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        range.into_iter().find(|&i| pred(i))
    }

    pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        items.iter().map(f).collect()
    }
}

#[cfg(feature = "parallel")]
pub mod parallel {
    use super::Range;
    use rayon::prelude::*;

    pub fn map_range<T, F>(range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        range.into_par_iter().map(f).collect()
    }

    /// Smallest index in `range` satisfying `pred`.
    pub fn find_first<F>(range: Range<u64>, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        range.into_par_iter().find_first(|&i| pred(i))
    }

    pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        items.par_iter().map(f).collect()
    }
}

#[cfg(feature = "parallel")]
pub use parallel::{find_first, map_range, map_slice};
#[cfg(not(feature = "parallel"))]
pub use sequential::{find_first, map_range, map_slice};
