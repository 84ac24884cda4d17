//! Data-parallel evaluation with a fixed reduction order.
//!
//! Work items are mapped on the rayon pool and collected in input order, so
//! any subsequent sum is bit-identical regardless of the worker count. The
//! global pool size is read once from `CASIMIR_THREADS`.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::Result;

static POOL_INIT: OnceLock<()> = OnceLock::new();

fn init_global_pool() {
    POOL_INIT.get_or_init(|| {
        let threads = std::env::var("CASIMIR_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0);
        if let Some(n) = threads {
            // fails only if another library already built the global pool
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    });
}

/// Order-preserving parallel map.
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    init_global_pool();
    items.par_iter().map(&f).collect()
}

/// Order-preserving parallel map that stops at the first error (in input
/// order).
pub fn try_par_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync,
{
    par_map(items, f).into_iter().collect()
}

/// Run `f` on a dedicated pool of `threads` workers.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool construction");
    pool.install(f)
}
