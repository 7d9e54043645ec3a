//! Execution driver for the embarrassingly-parallel sweeps.
//!
//! Every hot loop produces one value per index and assembles them in index
//! order, so parallel and sequential execution give bitwise-identical output
//! for any worker count. `map_indexed` picks the backend from the `parallel`
//! feature; `map_indexed_seq` is the always-available reference path used by
//! the `*_seq` entry points, the determinism tests, and the benchmarks.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_seq(len, f)
}

pub(crate) fn map_indexed_seq<T, F>(len: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..len).map(f).collect()
}
