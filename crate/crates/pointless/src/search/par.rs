//! Thin switch between rayon data parallelism and a sequential fallback.
//!
//! The heavy loops in this crate (place scans, candidate sweeps) are
//! embarrassingly parallel, so they all route through [`maybe_par_map`].
//! With the default `parallel` feature the work is spread over the rayon
//! pool; without it the same closure runs in a plain sequential loop, which
//! keeps the crate usable on targets where threads are unwelcome and gives
//! the bench suite an honest single-threaded baseline.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map a slice through `f`, in parallel when the `parallel` feature is
/// enabled. Output order always matches input order.
#[cfg(feature = "parallel")]
pub fn maybe_par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn maybe_par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Explicitly sequential map with the same shape as [`maybe_par_map`], so
/// callers can offer a forced-sequential variant for comparison runs.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Cap the rayon thread pool. Returns false if the global pool was already
/// initialized (rayon only allows configuring it once per process); the
/// sequential build accepts the call and ignores it.
#[cfg(feature = "parallel")]
pub fn configure_threads(threads: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .is_ok()
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_threads: usize) -> bool {
    true
}
