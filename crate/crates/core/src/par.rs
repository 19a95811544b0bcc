//! Order-preserving data-parallel helpers.
//!
//! With the `parallel` feature these fan out on the current rayon pool;
//! without it they are plain iterator loops. Output order always matches
//! input order, so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn any<T, F>(items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().any(f)
}

#[cfg(not(feature = "parallel"))]
pub fn any<T, F>(items: &[T], f: F) -> bool
where
    F: Fn(&T) -> bool,
{
    items.iter().any(f)
}

#[cfg(feature = "parallel")]
pub fn range_any<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    (0..n).into_par_iter().any(f)
}

#[cfg(not(feature = "parallel"))]
pub fn range_any<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool,
{
    (0..n).any(f)
}

/// Runs `f` on a pool of `threads` workers (sequentially when the
/// `parallel` feature is off).
#[cfg(feature = "parallel")]
pub fn with_workers<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
    {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<R>(_threads: usize, f: impl FnOnce() -> R) -> R {
    f()
}
