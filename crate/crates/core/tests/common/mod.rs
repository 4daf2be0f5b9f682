//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths being checked.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use wm_core::IntegerSet;

/// Small deterministic generator for fuzz inputs.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

/// Residues `l_0, l_1, …` found by scanning: `l_0` is the unique `x mod b`
/// with `a·x ≡ c`, and `l_i` the unique `x mod b^{i+1}` with
/// `a·x ≡ b·l_{i−1} + c`. Stops once `b^{i+1} > limit` and `l_i` either
/// exceeds `limit` or solves `a·l = b·l + c` (then it stays put forever).
pub fn scanned_residues(a: i128, b: i128, c: i128, limit: i128) -> Vec<i128> {
    let modp = |x: i128, m: i128| x.rem_euclid(m);
    let mut out = Vec::new();
    let mut modulus = b;
    let mut target = c;
    loop {
        let candidates: Vec<i128> = if modulus <= 4_000_000 {
            (0..modulus).filter(|&x| modp(a * x - target, modulus) == 0).collect()
        } else {
            // restrict to the previous class; uniqueness still checked below
            let prev = *out.last().unwrap();
            let step = modulus / b;
            (0..b)
                .map(|t| prev + t * step)
                .filter(|&x| modp(a * x - target, modulus) == 0)
                .collect()
        };
        assert_eq!(candidates.len(), 1, "residue not unique mod {modulus}");
        let l = candidates[0];
        out.push(l);
        if modulus > limit && (l > limit || a * l == b * l + c) {
            break;
        }
        target = b * l + c;
        modulus *= b;
    }
    out
}

/// The iterative `B_i`, `A_i`, `C_i`, `D_i` construction on `[1, N]` for
/// `a·x = b·y + c` with `gcd(a, b) = 1`, `a < b`.
pub fn literal_as(s: &IntegerSet, a: i64, b: i64, c: i64) -> IntegerSet {
    let n = s.horizon();
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let l = scanned_residues(a, b, c, n as i128 + c.abs() + 1);
    // level[m] = i  iff  m ∈ B_i; None for the common point of all H_i.
    let level = |m: i128| -> Option<usize> {
        let mut modulus = b;
        for (i, &li) in l.iter().enumerate() {
            if m.rem_euclid(modulus) != li.rem_euclid(modulus) {
                return Some(i);
            }
            modulus *= b;
        }
        None
    };
    let levels: Vec<Option<usize>> = (0..=n as i128).map(|m| if m == 0 { None } else { level(m) }).collect();
    let top = levels.iter().flatten().copied().max().unwrap_or(0);
    let mut in_a = vec![false; n + 1];
    let mut in_c = vec![false; n + 1];
    let parent = |x: usize| -> Option<usize> {
        let num = a * x as i128 - c;
        (num % b == 0 && num / b >= 1 && num / b <= n as i128).then(|| (num / b) as usize)
    };
    for i in 0..=top {
        for x in 1..=n {
            if levels[x] != Some(i) {
                continue;
            }
            let member = if i == 0 {
                s.contains(x)
            } else {
                let from_c = parent(x).is_some_and(|y| levels[y] == Some(i - 1) && in_c[y]);
                let in_d = !parent(x).is_some_and(|y| levels[y] == Some(i - 1));
                from_c || (in_d && s.contains(x))
            };
            in_a[x] = member;
            in_c[x] = !member;
        }
    }
    IntegerSet::from_predicate(n, |m| in_a[m])
}

/// All `(x, y)` in `A²` with `a·x = b·y + c`.
pub fn linear_solutions(set: &IntegerSet, a: i64, b: i64, c: i64) -> Vec<(usize, usize)> {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    set.iter()
        .filter_map(|y| {
            let num = b * y as i128 + c;
            (num % a == 0 && set.contains_i128(num / a)).then(|| ((num / a) as usize, y))
        })
        .collect()
}

/// Correlation `(1/N)·Σ χ(n)χ(n+i_1)…` recomputed from the frequencies of
/// every binary word of length `i_k + 1`.
pub fn correlation_from_words(set: &IntegerSet, shifts: &[usize], n: usize) -> BigRational {
    let len = shifts.last().map_or(1, |&s| s + 1);
    let mut counts = vec![0i64; 1 << len];
    for start in 1..=n {
        let mut w = 0usize;
        for j in 0..len {
            if set.contains(start + j) {
                w |= 1 << j;
            }
        }
        counts[w] += 1;
    }
    let positions: Vec<usize> = std::iter::once(0).chain(shifts.iter().copied()).collect();
    let total: i64 = counts
        .iter()
        .enumerate()
        .map(|(w, &cnt)| {
            let sign: i64 = positions.iter().map(|&p| if w >> p & 1 == 1 { 1 } else { -1 }).product();
            sign * cnt
        })
        .sum();
    BigRational::new(BigInt::from(total), BigInt::from(n))
}

/// Every `(x, y)` with `x < y`, `x·y ∈ A` and `x, y ∈ A` (x ≥ 1).
pub fn count_mult_schur(set: &IntegerSet, include_equal: bool) -> usize {
    let n = set.horizon();
    let members: Vec<usize> = set.iter().collect();
    let mut count = 0;
    for &x in &members {
        for &y in members.iter().filter(|&&y| if include_equal { y >= x } else { y > x }) {
            if x * y > n {
                break;
            }
            if set.contains(x * y) {
                count += 1;
            }
        }
    }
    count
}

/// Pairs `x ≤ y` in `A` with `x + y ∈ A`.
pub fn count_schur(set: &IntegerSet) -> usize {
    let members: Vec<usize> = set.iter().collect();
    let mut count = 0;
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i..] {
            if set.contains(x + y) {
                count += 1;
            }
        }
    }
    count
}
