//! Ordered data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature disabled, or `jobs <= 1`, everything runs on
//! the calling thread. Results always come back in input order, so callers
//! get bit-identical output regardless of the worker count.

/// Worker count used when the caller does not specify one.
pub fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

#[cfg(feature = "parallel")]
fn pool(jobs: usize) -> std::sync::Arc<rayon::ThreadPool> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};

    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("pool cache poisoned");
    pools
        .entry(jobs)
        .or_insert_with(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .expect("thread pool"),
            )
        })
        .clone()
}

/// Apply `f` to every item, preserving order.
pub fn map_ordered<T, R, F>(jobs: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if jobs > 1 && items.len() > 1 {
        use rayon::prelude::*;
        return pool(jobs).install(|| items.into_par_iter().map(&f).collect());
    }
    let _ = jobs;
    items.into_iter().map(f).collect()
}

/// Whether this build can run more than one worker.
pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
