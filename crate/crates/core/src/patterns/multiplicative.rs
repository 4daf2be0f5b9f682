use super::witness::{PatternKind, PatternWitness};
use crate::par;
use crate::setcore::IntegerSet;

const BLOCK: usize = 256;

/// `x·y = z` with `x < y`, all in `A`: least `z`, then least `x`. Factors
/// equal to 1 are skipped unless `allow_one` is set.
pub fn find_mult_schur(a: &IntegerSet, allow_one: bool) -> Option<PatternWitness> {
    find_mult_schur_with(a, allow_one, false)
}

/// As [`find_mult_schur`]; `allow_equal` also admits `x = y`.
pub fn find_mult_schur_with(a: &IntegerSet, allow_one: bool, allow_equal: bool) -> Option<PatternWitness> {
    let n = a.horizon();
    let gap = usize::from(!allow_equal);
    let lo = if allow_one { 1 } else { 2 };
    let xs: Vec<usize> = a
        .iter()
        .skip_while(|&x| x < lo)
        .take_while(|&x| x.saturating_mul(x) <= n)
        .collect();
    let mut best: Option<(usize, usize)> = None;
    for block in xs.chunks(BLOCK) {
        if let Some((z, _)) = best {
            if block[0] * block[0] > z {
                break;
            }
        }
        let found = par::map(block, |&x| {
            let top = n / x;
            std::iter::successors(a.next_member(x + gap), |&y| a.next_member(y + 1))
                .take_while(|&y| y <= top)
                .find(|&y| a.contains(x * y))
                .map(|y| (x * y, x))
        });
        for c in found.into_iter().flatten() {
            if best.is_none_or(|b| c < b) {
                best = Some(c);
            }
        }
    }
    best.map(|(z, x)| PatternWitness::new(PatternKind::MultSchur, vec![x as u64, (z / x) as u64, z as u64], vec![]))
}

/// Density from which [`find_mult_square`] tries the dyadic search first.
pub const DYADIC_DENSITY: f64 = 0.3;

/// `x·y = z²` with `x < y` and `x, y, z ∈ A`.
///
/// For dense sets the first attempt looks, for odd `n` in increasing order,
/// for a 3-term progression `j, j + d, j + 2d` among `{j : n·2^j ∈ A}`;
/// then `(n·2^j)(n·2^{j+2d}) = (n·2^{j+d})²`. Otherwise (or if that finds
/// nothing) every factorisation `x = g·u²`, `y = g·v²`, `z = g·u·v` is
/// scanned and the least `z`, then least `x`, is returned.
pub fn find_mult_square(a: &IntegerSet) -> Option<PatternWitness> {
    if a.horizon() == 0 {
        return None;
    }
    let structured = if a.density_f64() >= DYADIC_DENSITY {
        dyadic_square(a)
    } else {
        None
    };
    structured
        .or_else(|| factor_scan(a))
        .map(|(x, y, z)| PatternWitness::new(PatternKind::MultSquare, vec![x as u64, y as u64, z as u64], vec![]))
}

fn dyadic_square(a: &IntegerSet) -> Option<(usize, usize, usize)> {
    let n = a.horizon();
    par::find_map_first(0..n.div_ceil(2), |i| {
        let odd = 2 * i + 1;
        let exps: Vec<u32> = (0..usize::BITS)
            .take_while(|&j| odd.checked_shl(j).is_some_and(|v| v <= n && v >> j == odd))
            .filter(|&j| a.contains(odd << j))
            .collect();
        let present = |j: u32| exps.binary_search(&j).is_ok();
        for d in 1..=exps.len() as u32 {
            for &j in &exps {
                if present(j + d) && present(j + 2 * d) {
                    return Some((odd << j, odd << (j + 2 * d), odd << (j + d)));
                }
            }
        }
        None
    })
}

fn factor_scan(a: &IntegerSet) -> Option<(usize, usize, usize)> {
    let n = a.horizon();
    let per_g = par::map_range(1..n + 1, |g| {
        let mut best: Option<(usize, usize, usize)> = None;
        let mut u = 1;
        while g * u * u <= n {
            let x = g * u * u;
            if a.contains(x) {
                let mut v = u + 1;
                while g * v * v <= n {
                    let (y, z) = (g * v * v, g * u * v);
                    if a.contains(y) && a.contains(z) {
                        if best.is_none_or(|(bz, bx, _)| (z, x) < (bz, bx)) {
                            best = Some((z, x, y));
                        }
                        break;
                    }
                    v += 1;
                }
            }
            u += 1;
        }
        best
    });
    per_g.into_iter().flatten().min().map(|(z, x, y)| (x, y, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Sieve;

    fn set(n: usize, m: &[usize]) -> IntegerSet {
        IntegerSet::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn mult_schur_examples() {
        assert_eq!(find_mult_schur(&set(6, &[2, 3, 6]), false).unwrap().elements, vec![2, 3, 6]);
        let odds = IntegerSet::from_predicate(100, |n| n % 2 == 1);
        assert_eq!(find_mult_schur(&odds, false).unwrap().elements, vec![3, 5, 15]);
        assert_eq!(find_mult_schur(&odds, true).unwrap().elements, vec![1, 3, 3]);
        assert_eq!(find_mult_schur_with(&odds, false, true).unwrap().elements, vec![3, 3, 9]);
        assert_eq!(find_mult_schur_with(&odds, true, true).unwrap().elements, vec![1, 1, 1]);
    }

    #[test]
    fn mult_schur_matches_brute_force() {
        let mut state = 5u64;
        for _ in 0..100 {
            let a = IntegerSet::from_predicate(400, |_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(11);
                (state >> 40) % 10 < 2
            });
            let mut best = None;
            for x in a.iter().filter(|&x| x >= 2) {
                for y in a.iter().filter(|&y| y > x && x * y <= 400) {
                    if a.contains(x * y) && best.is_none_or(|b: (usize, usize)| (x * y, x) < b) {
                        best = Some((x * y, x));
                    }
                }
            }
            let got = find_mult_schur(&a, false).map(|w| (w.elements[2] as usize, w.elements[0] as usize));
            assert_eq!(got, best);
        }
    }

    #[test]
    fn mult_square_examples() {
        assert_eq!(find_mult_square(&set(8, &[2, 4, 8])).unwrap().elements, vec![2, 8, 4]);
        let sieve = Sieve::new(5000);
        let primes = IntegerSet::from_predicate(5000, |n| sieve.is_prime(n));
        assert!(find_mult_square(&primes).is_none());
    }

    #[test]
    fn both_strategies_produce_valid_witnesses() {
        let mut state = 17u64;
        for _ in 0..50 {
            let a = IntegerSet::from_predicate(3000, |_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(7);
                (state >> 40).is_multiple_of(2)
            });
            for (x, y, z) in [dyadic_square(&a), factor_scan(&a)].into_iter().flatten() {
                assert!(x < y && x * y == z * z);
                assert!(a.contains(x) && a.contains(y) && a.contains(z));
            }
            assert!(factor_scan(&a).is_some());
        }
    }
}
