use num_bigint::BigInt;
use num_rational::BigRational;

use super::bits::BitVec;
use super::signseq::SignSeq;
use crate::error::{Result, WmError};

/// Finite truncation `A ∩ [1, N]` of a subset of ℕ.
///
/// Bit `n - 1` of the membership vector is set iff `n ∈ A`. Indices are
/// 1-based everywhere in the public API.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerSet {
    bits: BitVec,
}

impl IntegerSet {
    pub fn empty(horizon: usize) -> Self {
        IntegerSet {
            bits: BitVec::zeros(horizon),
        }
    }

    /// All of `[1, horizon]`.
    pub fn full(horizon: usize) -> Self {
        IntegerSet {
            bits: BitVec::ones(horizon),
        }
    }

    pub fn from_bits(bits: BitVec) -> Self {
        IntegerSet { bits }
    }

    pub fn from_predicate<F: FnMut(usize) -> bool>(horizon: usize, mut pred: F) -> Self {
        let mut bits = BitVec::zeros(horizon);
        for n in 1..=horizon {
            if pred(n) {
                bits.set(n - 1, true);
            }
        }
        IntegerSet { bits }
    }

    /// Members outside `[1, horizon]` are rejected.
    pub fn from_members<I: IntoIterator<Item = usize>>(horizon: usize, members: I) -> Result<Self> {
        let mut bits = BitVec::zeros(horizon);
        for m in members {
            if m == 0 || m > horizon {
                return Err(WmError::InvalidArgument(format!(
                    "member {m} outside [1, {horizon}]"
                )));
            }
            bits.set(m - 1, true);
        }
        Ok(IntegerSet { bits })
    }

    #[inline]
    pub fn horizon(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, n: usize) -> bool {
        n >= 1 && self.bits.get(n - 1)
    }

    /// Membership for arbitrary integers; anything outside `[1, horizon]` is
    /// reported absent.
    #[inline]
    pub fn contains_i128(&self, n: i128) -> bool {
        n >= 1 && n <= self.horizon() as i128 && self.bits.get((n - 1) as usize)
    }

    pub fn insert(&mut self, n: usize) {
        self.bits.set(n - 1, true);
    }

    pub fn remove(&mut self, n: usize) {
        if n >= 1 && n <= self.horizon() {
            self.bits.set(n - 1, false);
        }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones().map(|i| i + 1)
    }

    /// Least member `>= from`.
    pub fn next_member(&self, from: usize) -> Option<usize> {
        self.bits.next_one(from.max(1) - 1).map(|i| i + 1)
    }

    /// `|A ∩ [1, N]| / N`.
    pub fn density(&self) -> BigRational {
        assert!(self.horizon() >= 1, "density needs a positive horizon");
        BigRational::new(BigInt::from(self.len()), BigInt::from(self.horizon()))
    }

    pub fn density_f64(&self) -> f64 {
        self.len() as f64 / self.horizon() as f64
    }

    /// `χ(n) = 2·1_A(n) − 1`.
    pub fn char_seq(&self) -> SignSeq {
        SignSeq::from_values((1..=self.horizon()).map(|n| if self.contains(n) { 1 } else { -1 }).collect())
            .expect("entries are ±1")
    }

    /// `{n : a·n ∈ A}` on horizon `floor(N / a)`.
    pub fn dilate(&self, a: usize) -> IntegerSet {
        assert!(a >= 1, "dilation factor must be positive");
        if a == 1 {
            return self.clone();
        }
        let h = self.horizon() / a;
        let mut bits = BitVec::zeros(h);
        for n in 1..=h {
            if self.contains(a * n) {
                bits.set(n - 1, true);
            }
        }
        IntegerSet { bits }
    }

    /// `A ∩ (A − s)` on horizon `N − s`.
    pub fn shift_intersect(&self, s: usize) -> IntegerSet {
        assert!(s < self.horizon(), "shift {s} must be below horizon {}", self.horizon());
        let h = self.horizon() - s;
        let words = (0..h.div_ceil(64))
            .map(|j| self.bits.window(64 * j) & self.bits.window(s + 64 * j))
            .collect();
        IntegerSet {
            bits: BitVec::from_words(h, words),
        }
    }

    /// Restriction to `[1, horizon]`.
    pub fn truncate(&self, horizon: usize) -> IntegerSet {
        IntegerSet {
            bits: self.bits.truncated(horizon),
        }
    }

    pub fn is_subset_of(&self, other: &IntegerSet) -> bool {
        self.iter().all(|n| other.contains(n))
    }
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
    fn density_examples() {
        assert_eq!(evens(10).density(), q(1, 2));
        assert!(IntegerSet::empty(7).density().is_zero());
        let s = IntegerSet::from_members(4, [1, 2, 3]).unwrap();
        assert_eq!(s.density(), q(3, 4));
    }

    #[test]
    fn char_seq_examples() {
        assert_eq!(IntegerSet::full(3).char_seq().values(), &[1, 1, 1]);
        assert_eq!(IntegerSet::empty(2).char_seq().values(), &[-1, -1]);
        let s = IntegerSet::from_members(3, [2]).unwrap();
        assert_eq!(s.char_seq().values(), &[-1, 1, -1]);
    }

    #[test]
    fn dilate_examples() {
        let a = IntegerSet::from_members(8, [2, 4, 6, 8]).unwrap();
        let d = a.dilate(2);
        assert_eq!(d.horizon(), 4);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(a.dilate(1), a);
        let b = IntegerSet::from_members(10, [3, 9]).unwrap();
        let d = b.dilate(3);
        assert_eq!(d.horizon(), 3);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(a.dilate(1).density(), a.density());
    }

    #[test]
    fn shift_intersect_examples() {
        let e = evens(100);
        assert_eq!(e.shift_intersect(2), evens(98));
        assert!(e.shift_intersect(1).is_empty());
        let a = IntegerSet::from_members(4, [1, 3, 4]).unwrap();
        assert_eq!(a.shift_intersect(3).iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn shift_intersect_exhaustive_consistency() {
        let n = 10_000;
        let a = IntegerSet::from_predicate(n, |k| (k * 7919 + k / 3) % 5 < 2);
        for s in [1, 2, 3, 17, 64, 65, 999, 9_999] {
            let out = a.shift_intersect(s);
            for m in 1..=out.horizon() {
                assert_eq!(out.contains(m), a.contains(m) && a.contains(m + s), "s={s} m={m}");
            }
        }
    }

    #[test]
    fn members_out_of_range_rejected() {
        assert!(IntegerSet::from_members(5, [0]).is_err());
        assert!(IntegerSet::from_members(5, [6]).is_err());
        assert!(IntegerSet::full(1).density().is_one());
    }
}
