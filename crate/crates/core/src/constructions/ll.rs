use serde::Serialize;

use crate::setcore::IntegerSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LlResult {
    /// Least `L` such that every window of `L` consecutive positions contains
    /// `l` consecutive non-members.
    Minimal(usize),
    NotSatisfied,
}

/// `(l, L)` property of the 0/1 sequence `1_A` on `[1, horizon]`; windows
/// must lie inside the horizon and `L` is capped at `horizon / 2`.
pub fn ll_check(a: &IntegerSet, l: usize) -> LlResult {
    assert!(l >= 1, "l must be positive");
    let n = a.horizon();
    // run[p] = length of the zero run ending at position p (1-based).
    let mut run = vec![0usize; n + 1];
    for p in 1..=n {
        run[p] = if a.contains(p) { 0 } else { run[p - 1] + 1 };
    }
    // need[s]: shortest window starting at s containing l zeros in a row.
    let mut need = vec![usize::MAX; n + 2];
    let mut next_end = usize::MAX;
    for s in (1..=n).rev() {
        let p = s + l - 1;
        if p <= n && run[p] >= l {
            next_end = p;
        }
        if next_end != usize::MAX && next_end >= p {
            need[s] = next_end - s + 1;
        }
    }
    // prefix maxima over window starts
    let mut worst = vec![0usize; n + 1];
    for s in 1..=n {
        worst[s] = worst[s - 1].max(need[s]);
    }
    for big_l in l..=n / 2 {
        if worst[n - big_l + 1] <= big_l {
            return LlResult::Minimal(big_l);
        }
    }
    LlResult::NotSatisfied
}
