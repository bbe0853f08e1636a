//! Data-parallel helpers. The `parallel` feature (default) routes the bulk
//! verification loops through rayon; without it everything runs on the
//! current thread with identical results, since every closure used here is
//! pure and the output order is fixed by the input order.

/// Sequential map, always available; the benchmark baseline.
pub fn map_seq<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_par<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Order-preserving map over a slice, parallel when the feature is on.
pub fn map<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_par(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

/// First failing item in input order, or `None` if every check passes.
/// Deterministic merge: the full map is computed, then scanned in order.
pub fn first_failure<T: Sync, E: Send, F>(items: &[T], f: F) -> Option<E>
where
    F: Fn(&T) -> Option<E> + Sync + Send,
{
    map(items, f).into_iter().flatten().next()
}
