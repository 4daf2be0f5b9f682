use serde::Serialize;

use crate::error::{Result, WmError};

/// Integer polynomial with coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(WmError::InvalidArgument("zero polynomial".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    /// Parses `"c0,c1,…"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|_| {
                    WmError::InvalidArgument(format!("bad polynomial coefficient {t:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().expect("non-empty")
    }

    /// Horner evaluation; `None` on overflow.
    pub fn eval(&self, x: i128) -> Option<i128> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c as i128))
    }

    /// `self − other`, or `None` when they are equal.
    pub fn sub(&self, other: &IntPolynomial) -> Option<IntPolynomial> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0) - other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        IntPolynomial::new(c).ok()
    }

    /// Beyond this argument the polynomial is strictly increasing (Cauchy
    /// bound on the roots of the derivative), assuming a positive leading
    /// coefficient.
    pub fn monotone_from(&self) -> i128 {
        if self.degree() <= 1 {
            return 0;
        }
        let d: Vec<i128> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as i128 * c as i128)
            .collect();
        let lead = *d.last().expect("degree ≥ 2") as f64;
        let m = d[..d.len() - 1]
            .iter()
            .map(|&c| (c as f64 / lead).abs())
            .fold(0.0, f64::max);
        (1.0 + m).ceil() as i128 + 1
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// True iff every pairwise difference is non-constant.
pub fn essentially_distinct(polys: &[IntPolynomial]) -> bool {
    assert!(polys.len() >= 2, "need at least two polynomials");
    polys.iter().enumerate().all(|(i, p)| {
        polys[i + 1..]
            .iter()
            .all(|q| p.sub(q).is_some_and(|d| d.degree() >= 1))
    })
}
