//! Tiny indirection over rayon so every caller can fall back to a
//! sequential loop when the `parallel` feature is disabled. Outputs are
//! identical either way; only the schedule changes.

/// Map `0..n` through `f`, in parallel when asked for and available.
pub(crate) fn map_indexed<U, F>(n: usize, parallel: bool, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// First `Some` produced by `f` over `items`, scanning in index order.
/// The parallel path uses `find_map_first`, which preserves the
/// sequential answer.
pub(crate) fn find_map_first<T, U, F>(items: Vec<T>, parallel: bool, f: F) -> Option<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Option<U> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.into_par_iter().find_map_first(f);
    }
    let _ = parallel;
    items.into_iter().find_map(f)
}
