//! Worker pool shared by the sampling routines. `MPSOLVE_THREADS` caps the
//! number of workers; results are always collected in block order so output
//! does not depend on the thread count.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const THREADS_ENV: &str = "MPSOLVE_THREADS";

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            builder = builder.num_threads(n);
        }
        builder.build().expect("failed to build worker pool")
    })
}

/// Evaluates `f` on `0..blocks` in parallel, returning results in index order.
pub(crate) fn map_blocks<T, F>(blocks: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    pool().install(|| (0..blocks).into_par_iter().map(f).collect())
}

/// Independent generator for one block of one sampling stream.
pub(crate) fn block_rng(seed: u64, stream: u64, block: u64) -> ChaCha8Rng {
    let mut z = seed ^ stream.rotate_left(32) ^ block.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}
