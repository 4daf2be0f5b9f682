//! Exact correlation statistics and the correlation form of the normality
//! criterion: a set is normal iff every shifted product average of its
//! ±1 indicator tends to zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::intset::IntegerSet;
use crate::error::{Result, WmError};
use crate::par;

/// One evaluated correlation `T_N = (1/N)·Σ χ(n)χ(n+i₁)…χ(n+i_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelationReport {
    pub shifts: Vec<usize>,
    pub horizon: usize,
    /// Unnormalised sum; `value = sum / horizon`.
    pub sum: i64,
    #[serde(serialize_with = "crate::setcore::ser_rational")]
    pub value: BigRational,
}

fn check_shifts(shifts: &[usize]) -> Result<()> {
    if shifts.first() == Some(&0) {
        return Err(WmError::InvalidArgument("shifts must be positive".into()));
    }
    if shifts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(WmError::InvalidArgument(
            "shifts must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Bit-parallel exact correlation.
///
/// The product of `k + 1` signs is `(−1)^{k+1}·(1 − 2·x)` where `x` is the XOR
/// of the underlying membership bits, so each 64-position block costs one
/// XOR per factor and a popcount.
pub fn correlation(a: &IntegerSet, shifts: &[usize], n: usize) -> Result<CorrelationReport> {
    check_shifts(shifts)?;
    let max = shifts.last().copied().unwrap_or(0);
    if n + max > a.horizon() {
        return Err(WmError::HorizonOverflow {
            needed: (n + max) as u128,
            horizon: a.horizon(),
        });
    }
    if n == 0 {
        return Err(WmError::InvalidArgument("N must be positive".into()));
    }
    let mut starts = Vec::with_capacity(shifts.len() + 1);
    starts.push(0);
    starts.extend_from_slice(shifts);
    let odd = a.bits().count_combined(&starts, n, 0, |acc, w| acc ^ w) as i64;
    let mut sum = n as i64 - 2 * odd;
    if starts.len() % 2 == 1 {
        sum = -sum;
    }
    Ok(CorrelationReport {
        shifts: shifts.to_vec(),
        horizon: n,
        sum,
        value: BigRational::new(BigInt::from(sum), BigInt::from(n)),
    })
}

/// Fraction of starts `n ∈ [1, N]` at which the 0/1 word `w` occurs.
pub fn word_frequency(a: &IntegerSet, word: &[bool], n: usize) -> Result<BigRational> {
    Ok(BigRational::new(
        BigInt::from(word_count(a, word, n)?),
        BigInt::from(n),
    ))
}

pub(crate) fn word_count(a: &IntegerSet, word: &[bool], n: usize) -> Result<u64> {
    if word.is_empty() || n == 0 {
        return Err(WmError::InvalidArgument(
            "word and N must be non-empty".into(),
        ));
    }
    if n + word.len() - 1 > a.horizon() {
        return Err(WmError::HorizonOverflow {
            needed: (n + word.len() - 1) as u128,
            horizon: a.horizon(),
        });
    }
    let nwords = n.div_ceil(64);
    let bits = a.bits();
    let mut total = 0u64;
    for j in 0..nwords {
        let mut acc = u64::MAX;
        for (i, &b) in word.iter().enumerate() {
            let w = bits.window(i + 64 * j);
            acc &= if b { w } else { !w };
        }
        if j + 1 == nwords && !n.is_multiple_of(64) {
            acc &= (1u64 << (n % 64)) - 1;
        }
        total += acc.count_ones() as u64;
    }
    Ok(total)
}

/// PASS threshold for `|T_N|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Tolerance {
    /// `|T_N| ≤ τ`.
    Absolute(#[serde(serialize_with = "crate::setcore::ser_rational")] BigRational),
    /// `|T_N| ≤ c / √N`, compared exactly as `sum² ≤ c²·N`.
    InvSqrt(#[serde(serialize_with = "crate::setcore::ser_rational")] BigRational),
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::InvSqrt(BigRational::from_integer(10.into()))
    }
}

impl Tolerance {
    pub fn admits(&self, sum: i64, n: usize) -> bool {
        let s = BigInt::from(sum).abs();
        let n = BigInt::from(n);
        match self {
            // |sum|/n ≤ p/q  ⇔  |sum|·q ≤ p·n
            Tolerance::Absolute(t) => &s * t.denom() <= t.numer() * &n,
            // |sum|/n ≤ (p/q)/√n  ⇔  sum²·q² ≤ p²·n
            Tolerance::InvSqrt(c) => {
                &s * &s * c.denom() * c.denom() <= c.numer() * c.numer() * &n
            }
        }
    }

    pub fn as_f64(&self, n: usize) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            Tolerance::Absolute(t) => t.to_f64().unwrap_or(f64::NAN),
            Tolerance::InvSqrt(c) => c.to_f64().unwrap_or(f64::NAN) / (n as f64).sqrt(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormalityParams {
    pub max_order: usize,
    pub max_shift: usize,
    pub n: usize,
    pub tolerance: Tolerance,
    /// Upper limit on the number of shift tuples evaluated.
    pub tuple_cap: usize,
}

impl NormalityParams {
    pub fn new(max_order: usize, max_shift: usize, n: usize) -> Self {
        NormalityParams {
            max_order,
            max_shift,
            n,
            tolerance: Tolerance::default(),
            tuple_cap: 1 << 16,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalityReport {
    pub pass: bool,
    pub tuples_checked: usize,
    pub failures: usize,
    pub worst: CorrelationReport,
    pub tolerance: Tolerance,
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    let mut r: usize = 1;
    for i in 0..k {
        r = r.checked_mul(n - i)? / (i + 1);
    }
    Some(r)
}

/// Increasing tuples over `[1, max_shift]` with at most `max_order` entries,
/// ordered by length then lexicographically. The empty tuple comes first.
pub fn shift_tuples(max_order: usize, max_shift: usize) -> Vec<Vec<usize>> {
    fn extend(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, next: usize, len: usize, max: usize) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for s in next..=max {
            cur.push(s);
            extend(out, cur, s + 1, len, max);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in 0..=max_order.min(max_shift) {
        extend(&mut out, &mut Vec::new(), 1, len, max_shift);
    }
    out
}

/// Evaluates every shifted correlation up to the given order and shift.
///
/// The worst tuple maximises `|T_N|`; ties go to the larger signed value and
/// then to the earlier tuple.
pub fn normality_test(a: &IntegerSet, params: &NormalityParams) -> Result<NormalityReport> {
    let NormalityParams {
        max_order,
        max_shift,
        n,
        ..
    } = *params;
    if n + max_shift > a.horizon() {
        return Err(WmError::HorizonOverflow {
            needed: (n + max_shift) as u128,
            horizon: a.horizon(),
        });
    }
    let count = (0..=max_order.min(max_shift))
        .try_fold(0usize, |acc, k| acc.checked_add(binomial(max_shift, k)?));
    match count {
        Some(c) if c <= params.tuple_cap => {}
        _ => {
            return Err(WmError::Budget(format!(
                "shift tuple count exceeds cap {}",
                params.tuple_cap
            )))
        }
    }
    let tuples = shift_tuples(max_order, max_shift);
    let reports = par::map(&tuples, |t| correlation(a, t, n));
    let reports: Vec<CorrelationReport> = reports.into_iter().collect::<Result<_>>()?;
    let failures = reports
        .iter()
        .filter(|r| !params.tolerance.admits(r.sum, n))
        .count();
    let worst = reports
        .iter()
        .fold(None::<&CorrelationReport>, |best, r| match best {
            None => Some(r),
            Some(b) => {
                let (ra, ba) = (r.sum.abs(), b.sum.abs());
                if ra > ba || (ra == ba && r.sum > b.sum) {
                    Some(r)
                } else {
                    Some(b)
                }
            }
        })
        .expect("the empty tuple is always present")
        .clone();
    Ok(NormalityReport {
        pass: failures == 0,
        tuples_checked: reports.len(),
        failures,
        worst,
        tolerance: params.tolerance.clone(),
    })
}

/// Checks a fine-grained sequence of averages against sparse checkpoints.
///
/// For every `(N, T_N)` in `full` lying between checkpoints `N_i ≤ N < N_{i+1}`
/// the bound `|T_N − T_{N_i}| ≤ 2(1 − N_i/N) + B·(N/N_i − 1)` must hold,
/// where `B` bounds the summands. Points before the first checkpoint are not
/// constrained.
pub fn subsequence_consistency(
    checkpoints: &[(usize, BigRational)],
    full: &[(usize, BigRational)],
    bound: &BigRational,
) -> bool {
    assert!(
        checkpoints.windows(2).all(|w| w[0].0 < w[1].0),
        "checkpoints must be strictly increasing"
    );
    let two = BigRational::from_integer(2.into());
    let one = BigRational::from_integer(1.into());
    full.iter().all(|(n, t)| {
        let idx = checkpoints.partition_point(|(ni, _)| ni <= n);
        if idx == 0 {
            return true;
        }
        let (ni, ti) = &checkpoints[idx - 1];
        let ratio = BigRational::new(BigInt::from(*ni), BigInt::from(*n));
        let allowed = &two * (&one - &ratio) + bound * (ratio.recip() - &one);
        let diff = (t - ti).abs();
        diff <= allowed
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn evens(n: usize) -> IntegerSet {
        IntegerSet::from_predicate(n, |k| k % 2 == 0)
    }

    #[test]
    fn correlation_examples() {
        let all = IntegerSet::full(200);
        for shifts in [vec![], vec![1], vec![2, 5, 9]] {
            assert!(correlation(&all, &shifts, 100).unwrap().value.is_one());
        }
        let e = evens(200);
        assert_eq!(correlation(&e, &[1], 100).unwrap().value, q(-1, 1));
        assert_eq!(correlation(&e, &[2], 100).unwrap().value, q(1, 1));
    }

    #[test]
    fn correlation_errors() {
        let e = evens(100);
        assert!(matches!(
            correlation(&e, &[1], 100),
            Err(WmError::HorizonOverflow { .. })
        ));
        assert!(correlation(&e, &[2, 1], 10).is_err());
        assert!(correlation(&e, &[0], 10).is_err());
    }

    #[test]
    fn word_frequency_examples() {
        let all = IntegerSet::full(60);
        assert!(word_frequency(&all, &[true, true], 50).unwrap().is_one());
        let e = evens(60);
        assert_eq!(word_frequency(&e, &[true, false], 50).unwrap(), q(1, 2));
        assert!(word_frequency(&e, &[true; 12], 50).is_err());
    }

    #[test]
    fn normality_examples() {
        let e = evens(1100);
        let r = normality_test(&e, &NormalityParams::new(3, 8, 1000)).unwrap();
        assert!(!r.pass);
        assert_eq!(r.worst.shifts, vec![2]);
        assert_eq!(r.worst.sum.abs(), 1000);

        let all = IntegerSet::full(1100);
        let r = normality_test(&all, &NormalityParams::new(3, 8, 1000)).unwrap();
        assert!(!r.pass);
        assert!(r.worst.shifts.is_empty());
        assert!(r.worst.value.is_one());
        assert_eq!(r.tuples_checked, 1 + 8 + 28 + 56);
    }

    #[test]
    fn normality_tuple_cap() {
        let all = IntegerSet::full(2000);
        let mut p = NormalityParams::new(5, 30, 1000);
        p.tuple_cap = 100;
        assert!(matches!(normality_test(&all, &p), Err(WmError::Budget(_))));
    }

    #[test]
    fn tolerance_is_exact() {
        let t = Tolerance::default();
        // 10/√10⁶ = 0.01, so |sum| ≤ 10⁴ at N = 10⁶.
        assert!(t.admits(10_000, 1_000_000));
        assert!(!t.admits(10_001, 1_000_000));
        let abs = Tolerance::Absolute(q(1, 100));
        assert!(abs.admits(-10, 1000));
        assert!(!abs.admits(11, 1000));
    }

    #[test]
    fn subsequence_examples() {
        let zero = BigRational::zero();
        let cps: Vec<_> = (1..20).map(|i| (i * i, zero.clone())).collect();
        let full: Vec<_> = (1..400).map(|n| (n, zero.clone())).collect();
        assert!(subsequence_consistency(&cps, &full, &BigRational::one()));

        let cps = vec![(1000, zero.clone())];
        let full = vec![(1001, BigRational::one())];
        assert!(!subsequence_consistency(&cps, &full, &BigRational::one()));
    }

    #[test]
    fn subsequence_bounded_sequence_passes() {
        // a_n = (−1)^{⌊√n⌋}, |a_n| ≤ 1; checkpoints at squares.
        let a: Vec<i64> = (1..=2500)
            .map(|n: i64| if ((n as f64).sqrt() as i64) % 2 == 0 { 1 } else { -1 })
            .collect();
        let mut prefix = 0i64;
        let mut full = Vec::new();
        for (i, v) in a.iter().enumerate() {
            prefix += v;
            full.push((i + 1, q(prefix, i as i64 + 1)));
        }
        let cps: Vec<_> = (1..=50).map(|i| full[i * i - 1].clone()).collect();
        assert!(subsequence_consistency(&cps, &full, &BigRational::one()));
    }

    #[test]
    fn shift_tuple_enumeration_order() {
        let t = shift_tuples(2, 3);
        assert_eq!(
            t,
            vec![vec![], vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }
}
