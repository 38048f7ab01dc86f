//! Index-range helpers that run on rayon with the `parallel` feature and
//! sequentially without it. Results never depend on the schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The result for the smallest index in `0..n` for which `f` returns
/// `Some`.
pub fn find_map_first<T, F>(n: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(f)
    }
}

/// `f` applied to every index of `0..n`, in index order.
pub fn map_indexed<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// `f` applied to every item, in input order.
pub fn map_slice<A, T, F>(items: &[A], f: F) -> Vec<T>
where
    A: Sync,
    T: Send,
    F: Fn(&A) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential counterpart of [`find_map_first`], always available so the
/// two can be compared side by side.
pub fn find_map_first_seq<T, F>(n: u64, f: F) -> Option<T>
where
    F: Fn(u64) -> Option<T>,
{
    (0..n).find_map(f)
}
