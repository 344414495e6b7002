//! Feature-switched data parallelism.
//!
//! Every data-parallel loop in the crate goes through one of these helpers.
//! With the `parallel` feature (default) they dispatch to rayon; without it
//! they run plain sequential iterators. Output order always matches input
//! order, so results are identical in both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// True when the crate was built with the rayon backend.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Map a slice, collecting results in input order.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
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

/// Map over `0..n`, collecting results in index order.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
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
