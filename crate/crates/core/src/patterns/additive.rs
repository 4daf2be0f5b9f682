use serde::Serialize;

use super::witness::{PatternKind, PatternWitness};
use crate::error::{Result, WmError};
use crate::par;
use crate::poly::IntPolynomial;
use crate::setcore::{BitVec, IntegerSet};

/// Candidates handed to the thread pool per round of an early-stopping scan.
const BLOCK: usize = 256;

/// Least 0-based `p` in `[from, to]` with bits `p` and `p + shift` both set.
fn first_common(bits: &BitVec, from: usize, to: usize, shift: usize) -> Option<usize> {
    let mut p = from;
    while p <= to {
        let mut w = bits.window(p) & bits.window(p + shift);
        let span = to - p + 1;
        if span < 64 {
            w &= (1u64 << span) - 1;
        }
        if w != 0 {
            return Some(p + w.trailing_zeros() as usize);
        }
        p += 64;
    }
    None
}

/// `x + y = z` with `x < y`, all in `A`: least `z`, then least `x`.
pub fn find_schur(a: &IntegerSet) -> Option<PatternWitness> {
    find_schur_with(a, false)
}

/// As [`find_schur`]; `allow_equal` also admits `x = y`.
pub fn find_schur_with(a: &IntegerSet, allow_equal: bool) -> Option<PatternWitness> {
    let n = a.horizon();
    let gap = usize::from(!allow_equal);
    let xs: Vec<usize> = a.iter().take_while(|&x| 2 * x <= n).collect();
    let mut best: Option<(usize, usize)> = None;
    for block in xs.chunks(BLOCK) {
        if let Some((z, _)) = best {
            if 2 * block[0] > z {
                break;
            }
        }
        let found = par::map(block, |&x| {
            // y ranges over [x + gap, n − x]; 0-based positions y − 1.
            let (lo, hi) = (x + gap - 1, (n - x).checked_sub(1)?);
            (lo <= hi).then(|| first_common(a.bits(), lo, hi, x)).flatten().map(|p| (x + p + 1, x))
        });
        for c in found.into_iter().flatten() {
            if best.is_none_or(|b| c < b) {
                best = Some(c);
            }
        }
    }
    best.map(|(z, x)| PatternWitness::new(PatternKind::Schur, vec![x as u64, (z - x) as u64, z as u64], vec![]))
}

/// Lexicographically least `(difference, start)` `k`-term progression.
pub fn find_ap(a: &IntegerSet, k: usize) -> Result<Option<PatternWitness>> {
    if k < 3 {
        return Err(WmError::InvalidArgument("progression length must be at least 3".into()));
    }
    let n = a.horizon();
    if n < k {
        return Ok(None);
    }
    let d_max = (n - 1) / (k - 1);
    let size = a.len();
    let found = if (size as u128) * (size as u128) <= (n as u128) * (d_max as u128) / 64 {
        ap_by_pairs(a, k)
    } else {
        ap_by_shifts(a, k, d_max)
    };
    Ok(found.map(|(d, s)| {
        PatternWitness::new(
            PatternKind::Ap,
            (0..k).map(|j| (s + j * d) as u64).collect(),
            vec![s as u64, d as u64],
        )
    }))
}

fn ap_by_shifts(a: &IntegerSet, k: usize, d_max: usize) -> Option<(usize, usize)> {
    let n = a.horizon();
    let bits = a.bits();
    par::find_map_first(1..d_max + 1, |d| {
        let len = n - (k - 1) * d;
        let mut p = 0;
        while p < len {
            let mut w = u64::MAX;
            for j in 0..k {
                w &= bits.window(p + j * d);
                if w == 0 {
                    break;
                }
            }
            if len - p < 64 {
                w &= (1u64 << (len - p)) - 1;
            }
            if w != 0 {
                return Some((d, p + w.trailing_zeros() as usize + 1));
            }
            p += 64;
        }
        None
    })
}

fn ap_by_pairs(a: &IntegerSet, k: usize) -> Option<(usize, usize)> {
    let members: Vec<usize> = a.iter().collect();
    let n = a.horizon();
    let per_start = par::map_range(0..members.len(), |i| {
        let s = members[i];
        members[i + 1..].iter().find_map(|&b| {
            let d = b - s;
            if s + (k - 1) * d > n {
                return None;
            }
            (2..k).all(|j| a.contains(s + j * d)).then_some((d, s))
        })
    });
    per_start.into_iter().flatten().min()
}

/// Probe limits for [`ip_prefix`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IpBudget {
    /// Smallest eligible candidates per level ranked by density before the
    /// exhaustive fallback.
    pub ranked: usize,
    /// Total shifted intersections computed before giving up.
    pub max_probes: usize,
}

impl Default for IpBudget {
    fn default() -> Self {
        IpBudget {
            ranked: 64,
            max_probes: 200_000,
        }
    }
}

/// Generators `s_1 < … < s_m` with all `2^m − 1` finite sums in `A`.
///
/// Each `s_{i+1}` is taken from `S_i` (where `S_0 = A` and
/// `S_{i+1} = S_i ∩ (S_i − s_{i+1})`) and must exceed `s_1 + … + s_i`, so
/// the finite sums are distinct. Candidates are tried by decreasing density
/// of the next `S`, with backtracking. `None` means the search was
/// exhaustive; running out of probes is a budget error.
pub fn ip_prefix(a: &IntegerSet, m: usize) -> Result<Option<PatternWitness>> {
    ip_prefix_with(a, m, IpBudget::default())
}

pub fn ip_prefix_with(a: &IntegerSet, m: usize, budget: IpBudget) -> Result<Option<PatternWitness>> {
    if m == 0 {
        return Err(WmError::InvalidArgument("m must be positive".into()));
    }
    if m >= 64 || (1u64 << m) - 1 > a.horizon() as u64 {
        return Err(WmError::InvalidArgument(format!(
            "2^{m} - 1 finite sums do not fit under horizon {}",
            a.horizon()
        )));
    }
    let mut probes = 0usize;
    let mut gens = Vec::with_capacity(m);
    let found = ip_level(a, m, 0, &mut gens, &mut probes, &budget)?;
    Ok(found.then(|| PatternWitness::new(PatternKind::IpPrefix, gens.iter().map(|&s| s as u64).collect(), vec![])))
}

fn ip_level(
    s_i: &IntegerSet,
    m: usize,
    sum: usize,
    gens: &mut Vec<usize>,
    probes: &mut usize,
    budget: &IpBudget,
) -> Result<bool> {
    let first = sum + 1;
    if gens.len() + 1 == m {
        // last generator: membership in S_{m-1} is all that is needed
        return Ok(match s_i.next_member(first) {
            Some(s) => {
                gens.push(s);
                true
            }
            None => false,
        });
    }
    let candidates: Vec<usize> = std::iter::successors(s_i.next_member(first), |&s| s_i.next_member(s + 1))
        .take_while(|&s| s < s_i.horizon())
        .collect();
    let head = candidates.len().min(budget.ranked);
    let charge = |probes: &mut usize, n: usize| -> Result<()> {
        *probes += n;
        if *probes > budget.max_probes {
            return Err(WmError::Budget(format!("ip_prefix exceeded {} probes", budget.max_probes)));
        }
        Ok(())
    };
    charge(probes, head)?;
    let mut ranked: Vec<(usize, IntegerSet)> = par::map(&candidates[..head], |&s| (s, s_i.shift_intersect(s)));
    // decreasing density, ties to the smaller shift
    ranked.sort_by(|(s1, a1), (s2, a2)| {
        let l = a1.len() as u128 * a2.horizon().max(1) as u128;
        let r = a2.len() as u128 * a1.horizon().max(1) as u128;
        r.cmp(&l).then(s1.cmp(s2))
    });
    for (s, next) in ranked {
        gens.push(s);
        if ip_level(&next, m, sum + s, gens, probes, budget)? {
            return Ok(true);
        }
        gens.pop();
    }
    for &s in &candidates[head..] {
        charge(probes, 1)?;
        let next = s_i.shift_intersect(s);
        gens.push(s);
        if ip_level(&next, m, sum + s, gens, probes, budget)? {
            return Ok(true);
        }
        gens.pop();
    }
    Ok(false)
}

/// Least `s ∈ S` such that `e, e + s ∈ E` for some `e`.
pub fn recurrence_witness(s: &IntegerSet, e: &IntegerSet) -> Option<PatternWitness> {
    let n = e.horizon();
    let shifts: Vec<usize> = s.iter().take_while(|&x| x < n).collect();
    par::find_map_first(0..shifts.len(), |i| {
        let sh = shifts[i];
        first_common(e.bits(), 0, n - sh - 1, sh).map(|p| {
            PatternWitness::new(
                PatternKind::Recurrence,
                vec![sh as u64, (p + 1) as u64, (p + 1 + sh) as u64],
                vec![],
            )
        })
    })
}

/// `x + y_i = p_i(z)` for all `i` with `x, y_i ∈ A` (and `z ∈ A` when
/// requested): least `z ≤ z_max`, then least `x`.
pub fn additive_poly_witness(
    a: &IntegerSet,
    polys: &[IntPolynomial],
    z_max: u64,
    require_z_in_a: bool,
) -> Result<Option<PatternWitness>> {
    if polys.is_empty() {
        return Err(WmError::InvalidArgument("at least one polynomial required".into()));
    }
    if polys.iter().any(|p| p.leading() <= 0) {
        return Err(WmError::InvalidArgument("leading coefficients must be positive".into()));
    }
    let n = a.horizon() as i128;
    let zm = z_max as i128;
    for p in polys {
        // increasing beyond monotone_from, so the maximum is at z_max or earlier
        let mut needed = p.eval(zm).ok_or(WmError::Overflow("polynomial evaluation"))?;
        for z in 1..p.monotone_from().min(zm) {
            needed = needed.max(p.eval(z).ok_or(WmError::Overflow("polynomial evaluation"))?);
        }
        if needed > n {
            return Err(WmError::HorizonOverflow {
                needed: needed as u128,
                horizon: a.horizon(),
            });
        }
    }
    let found = par::find_map_first(1..z_max as usize + 1, |z| {
        if require_z_in_a && !a.contains(z) {
            return None;
        }
        let vals: Vec<i128> = polys.iter().map(|p| p.eval(z as i128).expect("checked above")).collect();
        let lim = *vals.iter().min().unwrap();
        if lim < 2 {
            return None;
        }
        a.iter()
            .take_while(|&x| (x as i128) < lim)
            .find(|&x| vals.iter().all(|&v| a.contains_i128(v - x as i128)))
            .map(|x| {
                let mut elements = vec![x as u64];
                elements.extend(vals.iter().map(|&v| (v - x as i128) as u64));
                elements.push(z as u64);
                PatternWitness::new(PatternKind::PolySystem, elements, vals.iter().map(|&v| v as u64).collect())
            })
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{sturmian, SturmianParams};

    fn set(n: usize, m: &[usize]) -> IntegerSet {
        IntegerSet::from_members(n, m.iter().copied()).unwrap()
    }

    fn brute_schur(a: &IntegerSet) -> Option<(usize, usize)> {
        let mut best = None;
        for x in a.iter() {
            for y in a.iter().filter(|&y| y > x) {
                if a.contains(x + y) && best.is_none_or(|b: (usize, usize)| (x + y, x) < b) {
                    best = Some((x + y, x));
                }
            }
        }
        best
    }

    #[test]
    fn schur_examples() {
        assert_eq!(find_schur(&set(3, &[1, 2, 3])).unwrap().elements, vec![1, 2, 3]);
        assert!(find_schur(&IntegerSet::from_predicate(1000, |n| n % 2 == 1)).is_none());
        let s = sturmian(10_000, &SturmianParams::standard()).unwrap();
        assert!(find_schur(&s).is_none());
        assert!(find_schur_with(&s, true).is_none());
        assert_eq!(find_schur_with(&set(3, &[1, 2, 3]), true).unwrap().elements, vec![1, 1, 2]);
        assert!(find_schur(&set(4, &[2, 4])).is_none());
    }

    #[test]
    fn schur_matches_double_loop() {
        let mut state = 7u64;
        for round in 0..200 {
            let n = 50 + round * 4;
            let dens = 2 + round % 9;
            let a = IntegerSet::from_predicate(n, |_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                (state >> 40) % 100 < dens as u64
            });
            let got = find_schur(&a).map(|w| (w.elements[2] as usize, w.elements[0] as usize));
            assert_eq!(got, brute_schur(&a), "round {round}");
        }
    }

    #[test]
    fn ap_examples() {
        let w = find_ap(&IntegerSet::full(100), 5).unwrap().unwrap();
        assert_eq!(w.auxiliary, vec![1, 1]);
        let w = find_ap(&IntegerSet::from_predicate(100, |n| n % 2 == 0), 3).unwrap().unwrap();
        assert_eq!(w.auxiliary, vec![2, 2]);
        let pow2 = set(1 << 20, &(0..=20).map(|j| 1usize << j).collect::<Vec<_>>());
        assert!(find_ap(&pow2, 3).unwrap().is_none());
        assert!(find_ap(&pow2, 2).is_err());
    }

    #[test]
    fn ap_methods_agree() {
        let mut state = 99u64;
        for round in 0..60 {
            let a = IntegerSet::from_predicate(300, |_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(3);
                (state >> 40) % 10 < 1 + round % 4
            });
            for k in 3..5 {
                let d_max = (a.horizon() - 1) / (k - 1);
                assert_eq!(ap_by_pairs(&a, k), ap_by_shifts(&a, k, d_max), "round {round} k {k}");
            }
        }
    }

    #[test]
    fn ip_examples() {
        let w = ip_prefix(&IntegerSet::full(100), 3).unwrap().unwrap();
        assert_eq!(w.elements, vec![1, 2, 4]);
        let evens = IntegerSet::from_predicate(200, |n| n % 2 == 0);
        let w = ip_prefix(&evens, 3).unwrap().unwrap();
        assert!(w.holds() && w.members_in(&evens, false));
        let s = sturmian(10_000, &SturmianParams::standard()).unwrap();
        assert!(ip_prefix(&s, 2).unwrap().is_none());
    }

    #[test]
    fn ip_budget_error() {
        let s = sturmian(10_000, &SturmianParams::standard()).unwrap();
        let tight = IpBudget { ranked: 4, max_probes: 10 };
        assert!(matches!(ip_prefix_with(&s, 2, tight), Err(WmError::Budget(_))));
    }

    #[test]
    fn recurrence_examples() {
        let w = recurrence_witness(&set(10, &[2, 4, 6]), &set(10, &[1, 3, 5, 7])).unwrap();
        assert_eq!(w.elements, vec![2, 1, 3]);
        let params = SturmianParams::standard();
        let s = sturmian(10_000, &params).unwrap();
        let e_params = SturmianParams::with_interval(
            num_rational::BigRational::from_integer(0.into()),
            num_rational::BigRational::new(1.into(), 5.into()),
        )
        .unwrap();
        let e = sturmian(10_000, &e_params).unwrap();
        assert!(recurrence_witness(&s, &e).is_none());
    }

    #[test]
    fn poly_examples() {
        let sq = IntPolynomial::new(vec![0, 0, 1]).unwrap();
        let w = additive_poly_witness(&IntegerSet::full(100), std::slice::from_ref(&sq), 10, false)
            .unwrap()
            .unwrap();
        assert_eq!(w.elements, vec![1, 3, 2]);
        let five = IntegerSet::from_predicate(10_000, |n| n % 5 == 1);
        assert!(additive_poly_witness(&five, std::slice::from_ref(&sq), 100, false).unwrap().is_none());
        assert!(matches!(
            additive_poly_witness(&five, &[sq], 101, false),
            Err(WmError::HorizonOverflow { needed: 10_201, .. })
        ));
    }
}
