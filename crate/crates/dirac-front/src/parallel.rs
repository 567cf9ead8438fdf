//! Data-parallel helpers with a thread cap honored from the environment.
//!
//! `DIRAC_FRONT_THREADS` limits the global worker pool; unset means the
//! rayon default.  Every parallel loop here writes each output slot from
//! exactly one task, so results do not depend on the thread count.

use std::sync::Once;

use rayon::prelude::*;

pub const THREADS_ENV: &str = "DIRAC_FRONT_THREADS";

/// Installs the global thread pool once, honoring `DIRAC_FRONT_THREADS`.
/// Later calls (or an already-installed pool) are no-ops.
pub fn init_threads() {
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        if let Ok(raw) = std::env::var(THREADS_ENV) {
            if let Ok(n) = raw.trim().parse::<usize>() {
                if n >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
                }
            }
        }
    });
}

/// Ordered parallel map over a slice.
pub fn map_indexed<T, U, F>(data: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(usize, &T) -> U + Sync + Send,
{
    data.par_iter().enumerate().map(|(i, v)| f(i, v)).collect()
}

/// In-place parallel update over a mutable slice.
pub fn for_each_indexed<T, F>(data: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    data.par_iter_mut().enumerate().for_each(|(i, v)| f(i, v));
}
