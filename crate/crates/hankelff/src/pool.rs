//! Contiguous-range worker pool. Results come back in range order, so any
//! order-sensitive merge sees the same sequence for every worker count.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

/// Chunks per worker; more chunks even out uneven per-item cost.
const CHUNKS_PER_JOB: u64 = 8;

/// Splits `0..total` into contiguous ranges, at least one per item up to
/// `jobs * CHUNKS_PER_JOB` ranges.
pub fn split(total: u64, jobs: usize) -> Vec<Range<u64>> {
    let parts = (jobs as u64 * CHUNKS_PER_JOB).clamp(1, total.max(1));
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for i in 0..parts {
        let len = base + u64::from(i < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}

/// Applies `f` to every range of `split(total, jobs)` on `jobs` threads and
/// returns the results in range order.
pub fn map_ranges<T, F>(jobs: usize, total: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let ranges = split(total, jobs);
    if jobs <= 1 {
        return ranges.into_iter().map(&f).collect();
    }
    let slots: Vec<Mutex<Option<T>>> = ranges.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    thread::scope(|s| {
        for _ in 0..jobs.min(ranges.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(r) = ranges.get(i) else { break };
                let out = f(r.clone());
                *slots[i].lock().expect("no worker panicked holding the slot") = Some(out);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every range ran")).collect()
}

/// [`map_ranges`] followed by a left fold in range order.
pub fn fold_ranges<T, F, M>(jobs: usize, total: u64, f: F, mut merge: M) -> Option<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
    M: FnMut(&mut T, T),
{
    let mut parts = map_ranges(jobs, total, f).into_iter();
    let mut acc = parts.next()?;
    for p in parts {
        merge(&mut acc, p);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_covers_everything_once() {
        for total in [0, 1, 7, 100, 1001] {
            for jobs in [1, 2, 4, 9] {
                let r = split(total, jobs);
                assert_eq!(r.first().unwrap().start, 0);
                assert_eq!(r.last().unwrap().end, total);
                assert!(r.windows(2).all(|w| w[0].end == w[1].start));
            }
        }
    }

    #[test]
    fn results_in_order_for_any_job_count() {
        let expect: Vec<u64> = (0..500).collect();
        for jobs in [1, 3, 4, 16] {
            let parts = map_ranges(jobs, 500, |r| r.collect::<Vec<u64>>());
            assert_eq!(parts.concat(), expect);
        }
    }
}
