//! Thin shim over rayon: shard lists map-reduce either data-parallel (the
//! default `parallel` feature) or sequentially. Reduction operators must be
//! associative and commutative so results are identical either way.

#[cfg(feature = "parallel")]
pub(crate) fn map_reduce<T, R, M, A>(items: Vec<T>, map: M, identity: impl Fn() -> R + Sync + Send, add: A) -> R
where
    T: Send,
    R: Send,
    M: Fn(T) -> R + Sync + Send,
    A: Fn(R, R) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items
        .into_par_iter()
        .map(map)
        .reduce(&identity, add)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_reduce<T, R, M, A>(items: Vec<T>, map: M, identity: impl Fn() -> R, add: A) -> R
where
    M: Fn(T) -> R,
    A: Fn(R, R) -> R,
{
    items.into_iter().map(map).fold(identity(), add)
}

/// Sequential reference variant, always available (used by benches to compare
/// against the parallel path and by callers that want single-threaded runs).
pub(crate) fn map_reduce_seq<T, R, M, A>(items: Vec<T>, map: M, identity: impl Fn() -> R, add: A) -> R
where
    M: Fn(T) -> R,
    A: Fn(R, R) -> R,
{
    items.into_iter().map(map).fold(identity(), add)
}
