//! Modified Liouville functions `λ_Q`: completely multiplicative, `−1` on the
//! primes of `Q` and `+1` on the others. `A_Q = {n : λ_Q(n) = −1}` never
//! contains a product of two of its members.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::sieve::Sieve;
use crate::error::{Result, WmError};
use crate::generators::Seed;
use crate::par;
use crate::setcore::{correlation, BitVec, IntegerSet, SignSeq};

/// Which primes receive the sign `−1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QSignAssignment {
    /// `p ∈ Q` with probability 1/2, independently, from bit `p` of the
    /// seed's stream.
    Seeded(Seed),
    /// Exactly the listed primes.
    Explicit(Vec<u64>),
    /// Every prime (the classical Liouville function).
    AllPrimes,
}

impl QSignAssignment {
    /// Bit `p` set iff `λ_Q(p) = −1`, for `p ∈ [0, limit]`. Non-prime indices
    /// carry arbitrary bits.
    pub fn negative_mask(&self, limit: usize) -> BitVec {
        match self {
            QSignAssignment::Seeded(seed) => seed.bits(limit + 1),
            QSignAssignment::AllPrimes => BitVec::ones(limit + 1),
            QSignAssignment::Explicit(q) => {
                let mut m = BitVec::zeros(limit + 1);
                for &p in q {
                    if (p as usize) <= limit {
                        m.set(p as usize, true);
                    }
                }
                m
            }
        }
    }
}

/// `A_Q ∩ [1, n]` from a sieve covering `n`.
pub fn liouville_set(sieve: &Sieve, q: &QSignAssignment, n: usize) -> IntegerSet {
    assert!(sieve.limit() >= n, "sieve limit {} below {n}", sieve.limit());
    let neg = q.negative_mask(n);
    // odd[m] = 1 iff λ_Q(m) = −1; λ_Q(m) = λ_Q(p)·λ_Q(m/p) for p = spf(m).
    let mut odd = vec![0u8; n + 1];
    let mut bits = BitVec::zeros(n);
    for m in 2..=n {
        let p = sieve.spf(m);
        odd[m] = odd[m / p] ^ neg.get(p) as u8;
        if odd[m] == 1 {
            bits.set(m - 1, true);
        }
    }
    IntegerSet::from_bits(bits)
}

/// `(λ_Q, A_Q)` on `[1, n]`.
pub fn lambda_q(n: usize, q: &QSignAssignment) -> Result<(SignSeq, IntegerSet)> {
    if n < 2 {
        return Err(WmError::InvalidArgument("N must be at least 2".into()));
    }
    let sieve = Sieve::new(n);
    let set = liouville_set(&sieve, q, n);
    let signs = SignSeq::from_values(
        (1..=n)
            .map(|m| if set.contains(m) { -1 } else { 1 })
            .collect(),
    )?;
    Ok((signs, set))
}

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloReport {
    pub shifts: Vec<usize>,
    pub n: usize,
    pub trials: usize,
    /// `T_N = (1/N)·Σ λ_Q(n)λ_Q(n+i₁)…` per trial, as `p/q` strings.
    #[serde(serialize_with = "ser_rationals")]
    pub per_trial: Vec<BigRational>,
    /// Exact mean of `T_N²` over the trials.
    #[serde(serialize_with = "crate::setcore::ser_rational")]
    pub mean_square: BigRational,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&q.to_string())?;
    }
    seq.end()
}

impl MonteCarloReport {
    pub fn mean_square_f64(&self) -> f64 {
        self.mean_square.to_f64().unwrap_or(f64::NAN)
    }

    /// Standard error of the mean of `T_N²`.
    pub fn std_error(&self) -> f64 {
        let sq: Vec<f64> = self
            .per_trial
            .iter()
            .map(|t| {
                let v = t.to_f64().unwrap_or(f64::NAN);
                v * v
            })
            .collect();
        let k = sq.len() as f64;
        if sq.len() < 2 {
            return 0.0;
        }
        let mean = sq.iter().sum::<f64>() / k;
        let var = sq.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
        (var / k).sqrt()
    }
}

/// Mean of `T_N²` over independent random `Q`; trial `t` uses the seed
/// derived with label `"montecarlo-q"` and index `t`.
pub fn montecarlo_second_moment(
    shifts: &[usize],
    n: usize,
    trials: usize,
    seed: Seed,
) -> Result<MonteCarloReport> {
    if trials == 0 || n == 0 {
        return Err(WmError::InvalidArgument(
            "trials and N must be positive".into(),
        ));
    }
    let limit = n + shifts.last().copied().unwrap_or(0);
    let sieve = Sieve::new(limit.max(2));
    let sums = par::map_range(0..trials, |t| {
        let q = QSignAssignment::Seeded(seed.derive("montecarlo-q", t as u64));
        let set = liouville_set(&sieve, &q, limit);
        correlation(&set, shifts, n).map(|r| {
            // χ_{A_Q} = −λ_Q, so the λ-product carries (−1)^{k+1}.
            if shifts.len().is_multiple_of(2) {
                -r.sum
            } else {
                r.sum
            }
        })
    });
    let sums: Vec<i64> = sums.into_iter().collect::<Result<_>>()?;
    let total: BigInt = sums.iter().map(|&s| BigInt::from(s) * BigInt::from(s)).sum();
    let nn = BigInt::from(n);
    Ok(MonteCarloReport {
        shifts: shifts.to_vec(),
        n,
        trials,
        per_trial: sums
            .iter()
            .map(|&s| BigRational::new(BigInt::from(s), nn.clone()))
            .collect(),
        mean_square: BigRational::new(total, &nn * &nn * BigInt::from(trials)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn q_equals_two() {
        let (lam, set) = lambda_q(12, &QSignAssignment::Explicit(vec![2])).unwrap();
        assert_eq!(lam.at(2), -1);
        assert_eq!(lam.at(4), 1);
        assert_eq!(lam.at(6), -1);
        assert_eq!(lam.at(12), 1);
        assert_eq!(lam.at(1), 1);
        assert_eq!(set.iter().collect::<Vec<_>>(), vec![2, 6, 8, 10]);
    }

    #[test]
    fn classical_liouville_prefix() {
        let (lam, _) = lambda_q(10, &QSignAssignment::AllPrimes).unwrap();
        assert_eq!(lam.values(), &[1, -1, -1, 1, -1, 1, -1, -1, 1, 1]);
    }

    #[test]
    fn complete_multiplicativity() {
        let n = 20_000;
        let (lam, _) = lambda_q(n, &QSignAssignment::Seeded(Seed::new(11))).unwrap();
        for a in 1..=n {
            for b in 1..=n / a {
                assert_eq!(lam.at(a) * lam.at(b), lam.at(a * b), "{a}·{b}");
            }
        }
    }

    #[test]
    fn trivial_horizon_moment() {
        let r = montecarlo_second_moment(&[], 1, 10, Seed::new(1)).unwrap();
        assert!(r.mean_square.is_one());
        assert!(r.per_trial.iter().all(|t| t.is_one()));
    }

    #[test]
    fn fixed_q_is_deterministic() {
        let sieve = Sieve::new(1001);
        let a = liouville_set(&sieve, &QSignAssignment::AllPrimes, 1001);
        let b = liouville_set(&sieve, &QSignAssignment::AllPrimes, 1001);
        assert_eq!(correlation(&a, &[1], 1000).unwrap(), correlation(&b, &[1], 1000).unwrap());
    }

    #[test]
    fn montecarlo_is_reproducible() {
        let a = montecarlo_second_moment(&[1], 2000, 8, Seed::new(5)).unwrap();
        let b = montecarlo_second_moment(&[1], 2000, 8, Seed::new(5)).unwrap();
        assert_eq!(a.per_trial, b.per_trial);
        assert_eq!(a.mean_square, b.mean_square);
    }
}
