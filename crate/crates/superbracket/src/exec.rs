//! Execution strategy for the data-parallel inner loops.
//!
//! Identity suites quantify over independent tuples (basis triples, parity
//! assignments, fuzz trials, sample triples). Each loop runs either
//! sequentially or on the rayon thread pool; results are aggregated
//! order-independently, so both strategies produce identical output.
//!
//! The `parallel` cargo feature gates the rayon dependency. Without it
//! `Strategy::Parallel` silently degrades to the sequential path.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How to drive a tuple scan.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Applies `probe` to `0..len` and returns the hit with the smallest index.
///
/// The parallel path uses `find_map_first`, so the winner is chosen by
/// index order, not completion order.
pub fn scan_first<R, F>(len: usize, strategy: Strategy, probe: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    match strategy {
        Strategy::Sequential => (0..len).find_map(probe),
        Strategy::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..len).into_par_iter().find_map_first(probe)
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..len).find_map(probe)
            }
        }
    }
}

/// Maps `0..len` and folds the results with an associative, commutative
/// `merge`. `empty` produces the identity of the merge.
pub fn map_reduce<A, F, E, M>(len: usize, strategy: Strategy, map: F, empty: E, merge: M) -> A
where
    A: Send,
    F: Fn(usize) -> A + Sync + Send,
    E: Fn() -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    match strategy {
        Strategy::Sequential => (0..len).map(map).fold(empty(), merge),
        Strategy::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..len).into_par_iter().map(map).reduce(empty, merge)
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..len).map(map).fold(empty(), merge)
            }
        }
    }
}
