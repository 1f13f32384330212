//! Conditional data parallelism.
//!
//! With the `parallel` feature (default) the helpers below fan work out to
//! rayon; without it they run sequentially on the calling thread. A runtime
//! override lets a single binary compare both modes — the criterion bench
//! suite flips it around each measurement.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

static SEQUENTIAL_OVERRIDE: AtomicBool = AtomicBool::new(false);

/// Force sequential execution even when the `parallel` feature is compiled in.
pub fn set_sequential_override(on: bool) {
    SEQUENTIAL_OVERRIDE.store(on, Ordering::Relaxed);
}

/// True when the next `map_*` call will actually run on rayon.
pub fn parallelism_active() -> bool {
    cfg!(feature = "parallel") && !SEQUENTIAL_OVERRIDE.load(Ordering::Relaxed)
}

/// Map `f` over `items`, in parallel when active.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallelism_active() {
        return items.par_iter().map(&f).collect();
    }
    items.iter().map(f).collect()
}

/// Map `f` over `0..n`, in parallel when active.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallelism_active() {
        return (0..n).into_par_iter().map(&f).collect();
    }
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_matches_sequential() {
        let xs: Vec<u64> = (0..257).collect();
        let par = map_slice(&xs, |x| x * x + 1);
        set_sequential_override(true);
        let seq = map_slice(&xs, |x| x * x + 1);
        set_sequential_override(false);
        assert_eq!(par, seq);
        assert_eq!(map_range(5, |i| i * 2), vec![0, 2, 4, 6, 8]);
    }
}
