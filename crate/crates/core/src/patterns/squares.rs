use num_integer::Integer;

use super::witness::{PatternKind, PatternWitness};
use crate::par;
use crate::setcore::IntegerSet;

/// `44² + 117² = 125²`, `117² + 240² = 267²`, `44² + 240² = 244²`.
pub const SUM_TRIPLE: (u64, u64, u64) = (44, 117, 240);
/// `185² − 153² = 104²`, `697² − 185² = 672²`, `697² − 153² = 680²`.
pub const DIFF_TRIPLE: (u64, u64, u64) = (153, 185, 697);

/// `(smaller, larger, root)` with `smaller² + larger² = root²`.
pub const SUM_PAIRS: [(u64, u64, u64); 3] = [(44, 117, 125), (117, 240, 267), (44, 240, 244)];
/// `(u, v, root)` with `u² − v² = root²`.
pub const DIFF_PAIRS: [(u64, u64, u64); 3] = [(185, 153, 104), (697, 185, 672), (697, 153, 680)];

/// Least dilation `z` with `z·p, z·q ∈ A` over the given pairs, keyed by the
/// larger dilated element.
fn dilated_pairs(a: &IntegerSet, pairs: &[(u64, u64, u64)]) -> Option<(u64, u64, u64)> {
    let n = a.horizon() as u64;
    pairs
        .iter()
        .filter_map(|&(p, q, r)| {
            let top = n / p.max(q);
            (1..=top)
                .find(|&z| a.contains((z * p) as usize) && a.contains((z * q) as usize))
                .map(|z| (z * p, z * q, z * r))
        })
        .min_by_key(|&(p, q, _)| (p.max(q), p.min(q)))
}

/// Primitive triples `(a, b, c)`, legs in either order, generated by
/// Euclid's formula with second parameter `n`, and all their multiples
/// accepted by `keep`.
fn triples_for<F>(n: u64, m_limit: impl Fn(u64) -> bool, mut visit: F)
where
    F: FnMut(u64, u64, u64),
{
    let mut m = n + 1;
    while m_limit(m) {
        if (m - n) % 2 == 1 && m.gcd(&n) == 1 {
            visit(m * m - n * n, 2 * m * n, m * m + n * n);
        }
        m += 1;
    }
}

/// `x² + y² = r²` with `x < y`, both in `A`. Tries dilations of the fixed
/// triple first, then every Pythagorean pair below the horizon (least `y`,
/// then least `x`).
pub fn find_sum_square(a: &IntegerSet) -> Option<PatternWitness> {
    let n = a.horizon() as u64;
    let found = dilated_pairs(a, &SUM_PAIRS).or_else(|| {
        let n_max = ((n / 2) as f64).sqrt() as u64 + 1;
        let per_n = par::map_range(1..n_max as usize + 1, |pn| {
            let pn = pn as u64;
            let mut best: Option<(u64, u64, u64)> = None;
            triples_for(
                pn,
                |m| 2 * m * pn <= n && m * m - pn * pn <= n,
                |p, q, r| {
                    let (lo, hi) = (p.min(q), p.max(q));
                    let mut k = 1;
                    while k * hi <= n {
                        if a.contains((k * lo) as usize) && a.contains((k * hi) as usize) {
                            if best.is_none_or(|(bh, bl, _)| (k * hi, k * lo) < (bh, bl)) {
                                best = Some((k * hi, k * lo, k * r));
                            }
                            break;
                        }
                        k += 1;
                    }
                },
            );
            best
        });
        per_n.into_iter().flatten().min().map(|(hi, lo, r)| (lo, hi, r))
    });
    found.map(|(x, y, r)| PatternWitness::new(PatternKind::SumSquare, vec![x.min(y), x.max(y)], vec![r]))
}

/// `u² − v² = r²` with `u > v`, both in `A`. Tries dilations of the fixed
/// triple first, then every hypotenuse–leg pair (least `u`, then least `v`).
pub fn find_diff_square(a: &IntegerSet) -> Option<PatternWitness> {
    let n = a.horizon() as u64;
    let found = dilated_pairs(a, &DIFF_PAIRS).or_else(|| {
        let n_max = (n as f64).sqrt() as u64 + 1;
        let per_n = par::map_range(1..n_max as usize + 1, |pn| {
            let pn = pn as u64;
            let mut best: Option<(u64, u64, u64)> = None;
            triples_for(
                pn,
                |m| m * m + pn * pn <= n,
                |p, q, c| {
                    let mut k = 1;
                    while k * c <= n {
                        if a.contains((k * c) as usize) {
                            for (leg, other) in [(p.min(q), p.max(q)), (p.max(q), p.min(q))] {
                                if a.contains((k * leg) as usize) {
                                    if best.is_none_or(|(bu, bv, _)| (k * c, k * leg) < (bu, bv)) {
                                        best = Some((k * c, k * leg, k * other));
                                    }
                                    break;
                                }
                            }
                        }
                        k += 1;
                    }
                },
            );
            best
        });
        per_n.into_iter().flatten().min()
    });
    found.map(|(u, v, r)| PatternWitness::new(PatternKind::DiffSquare, vec![u, v], vec![r]))
}
