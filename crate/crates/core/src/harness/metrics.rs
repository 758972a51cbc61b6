//! Statistics over a single history, indexed by model count `m`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::stats;
use super::HarnessError;

/// A statistic of the first `model_index` models of a history.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryStat {
    pub model_index: usize,
    pub value: f64,
    pub sem: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Ordered(f64);

impl Eq for Ordered {}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Mean of the `k` highest accuracies among the first `at` models (all of
/// them if fewer than `k`), with the SEM of those values.
pub fn top_k_mean(accuracies: &[f64], k: usize, at: usize) -> Result<TrajectoryStat, HarnessError> {
    if at == 0 || accuracies.is_empty() {
        return Err(HarnessError::EmptyHistory);
    }
    if k == 0 {
        return Err(HarnessError::Plan("top-k needs k >= 1".into()));
    }
    let at = at.min(accuracies.len());
    let mut prefix = accuracies[..at].to_vec();
    let top = if prefix.len() > k {
        let split = prefix.len() - k;
        prefix.select_nth_unstable_by(split, |a, b| a.total_cmp(b));
        prefix.split_off(split)
    } else {
        prefix
    };
    Ok(TrajectoryStat {
        model_index: at,
        value: stats::mean(&top),
        sem: stats::sem(&top),
    })
}

/// [`top_k_mean`] at every `step`-th model count (and at the end).
pub fn top_k_trajectory(accuracies: &[f64], k: usize, step: usize) -> Vec<TrajectoryStat> {
    assert!(k >= 1 && step >= 1);
    let mut heap: BinaryHeap<Reverse<Ordered>> = BinaryHeap::with_capacity(k + 1);
    let mut out = Vec::new();
    for (i, &acc) in accuracies.iter().enumerate() {
        heap.push(Reverse(Ordered(acc)));
        if heap.len() > k {
            heap.pop();
        }
        let m = i + 1;
        if m % step == 0 || m == accuracies.len() {
            let top: Vec<f64> = heap.iter().map(|r| r.0 .0).collect();
            out.push(TrajectoryStat {
                model_index: m,
                value: stats::mean(&top),
                sem: stats::sem(&top),
            });
        }
    }
    out
}

/// Smallest model count `m` whose running-maximum accuracy reaches `target`.
pub fn time_to_accuracy(accuracies: &[f64], target: f64) -> Option<usize> {
    accuracies.iter().position(|&a| a >= target).map(|i| i + 1)
}
