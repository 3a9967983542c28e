//! Parameter grids: inclusive range lists as they appear on the command
//! line, and a fixed-thread work queue for sweeping them.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Sorted, deduplicated values parsed from "4", "3..8" (inclusive), or
/// "3,5,6" (commas may mix with ranges: "1,4..6").
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeList(pub Vec<u64>);

impl RangeList {
    pub fn inclusive(lo: u64, hi: u64) -> Self {
        RangeList((lo..=hi).collect())
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }
}

impl FromStr for RangeList {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let mut values: Vec<u64> = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(format!("empty entry in range list '{text}'"));
            }
            if let Some((lo, hi)) = part.split_once("..") {
                let lo: u64 = lo
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range start in '{part}'"))?;
                let hi: u64 = hi
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range end in '{part}'"))?;
                if lo > hi {
                    return Err(format!("range '{part}' runs backwards"));
                }
                values.extend(lo..=hi);
            } else {
                values.push(part.parse().map_err(|_| format!("bad value '{part}'"))?);
            }
        }
        values.sort_unstable();
        values.dedup();
        Ok(RangeList(values))
    }
}

/// Cartesian product of two range lists as (m, n) pairs, m outermost.
pub fn grid_points(ms: &RangeList, ns: &RangeList) -> Result<Vec<(u32, usize)>, String> {
    let mut points = Vec::with_capacity(ms.values().len() * ns.values().len());
    for &m in ms.values() {
        let m = u32::try_from(m).map_err(|_| format!("m={m} does not fit in u32"))?;
        for &n in ns.values() {
            let n = usize::try_from(n).map_err(|_| format!("n={n} does not fit in usize"))?;
            points.push((m, n));
        }
    }
    Ok(points)
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
}

/// Applies `f` to every job on up to `threads` workers, preserving job
/// order in the returned vector.
pub fn parallel_map<J, T, F>(jobs: &[J], threads: usize, f: F) -> Vec<T>
where
    J: Sync,
    T: Send,
    F: Fn(&J) -> T + Sync,
{
    if jobs.is_empty() {
        return Vec::new();
    }
    let workers = threads.clamp(1, jobs.len());
    if workers == 1 {
        return jobs.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let collected: Mutex<Vec<(usize, T)>> = Mutex::new(Vec::with_capacity(jobs.len()));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let out = f(&jobs[i]);
                collected.lock().expect("worker poisoned the queue").push((i, out));
            });
        }
    });
    let mut pairs = collected.into_inner().expect("worker poisoned the queue");
    pairs.sort_by_key(|&(i, _)| i);
    pairs.into_iter().map(|(_, t)| t).collect()
}
