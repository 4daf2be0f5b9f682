use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Result, WmError};

/// ±1-valued sequence on `[1, N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSeq {
    values: Vec<i8>,
}

impl SignSeq {
    pub fn from_values(values: Vec<i8>) -> Result<Self> {
        if let Some(pos) = values.iter().position(|&v| v != 1 && v != -1) {
            return Err(WmError::InvalidArgument(format!(
                "entry {} is {}, expected ±1",
                pos + 1,
                values[pos]
            )));
        }
        Ok(SignSeq { values })
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// Entries for `n = 1..=N`.
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Value at the 1-based index `n`.
    pub fn at(&self, n: usize) -> i8 {
        self.values[n - 1]
    }

    /// `Σ_{n=1..N} s(n)·s(n+i₁)·…·s(n+i_k)` by direct multiplication.
    pub fn correlation_sum(&self, shifts: &[usize], n: usize) -> Result<i64> {
        let max = shifts.last().copied().unwrap_or(0);
        if n + max > self.horizon() {
            return Err(WmError::HorizonOverflow {
                needed: (n + max) as u128,
                horizon: self.horizon(),
            });
        }
        Ok((1..=n)
            .map(|m| {
                shifts
                    .iter()
                    .fold(self.at(m) as i64, |acc, &s| acc * self.at(m + s) as i64)
            })
            .sum())
    }

    /// The normalised correlation `(1/N)·Σ …` as an exact rational.
    pub fn correlation(&self, shifts: &[usize], n: usize) -> Result<BigRational> {
        let s = self.correlation_sum(shifts, n)?;
        Ok(BigRational::new(BigInt::from(s), BigInt::from(n)))
    }
}
