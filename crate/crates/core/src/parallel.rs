//! Deterministic range partitioning over scoped threads.

use std::ops::Range;

/// Splits `0..total` into `workers` contiguous ranges, runs `f` on each in its
/// own thread, and returns the results in range order. With `workers <= 1`
/// everything runs on the calling thread.
pub fn map_ranges<T, F>(total: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let workers = workers.max(1) as u64;
    if workers == 1 || total < 2 {
        return vec![f(0..total)];
    }
    let chunk = total.div_ceil(workers);
    let ranges: Vec<Range<u64>> = (0..workers)
        .map(|w| (w * chunk).min(total)..((w + 1) * chunk).min(total))
        .filter(|r| !r.is_empty())
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let f = &f;
                s.spawn(move || f(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

/// Runs `f` over each item on up to `workers` threads, preserving order.
pub fn map_items<I, T, F>(items: &[I], workers: usize, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync,
{
    map_ranges(items.len() as u64, workers, |r| {
        items[r.start as usize..r.end as usize]
            .iter()
            .map(&f)
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}
