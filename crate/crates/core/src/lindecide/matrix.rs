use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, WmError};

pub type Q = BigRational;
pub type RationalVector = Vec<Q>;

/// Dense `t × k` matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<Q>>,
    cols: usize,
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qi(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

pub fn parse_rational(tok: &str) -> std::result::Result<Q, String> {
    let parse_int = |s: &str| BigInt::from_str(s).map_err(|_| format!("bad integer `{s}`"));
    match tok.split_once('/') {
        None => Ok(Q::from_integer(parse_int(tok)?)),
        Some((p, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{tok}`"));
            }
            Ok(Q::new(parse_int(p)?, d))
        }
    }
}

fn parse_lines(text: &str) -> Result<Vec<(usize, Vec<Q>)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|message| WmError::Parse {
                line: i + 1,
                message,
            })?;
        out.push((i + 1, row));
    }
    Ok(out)
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(WmError::InvalidArgument("matrix must be non-empty".into()));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(WmError::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(RationalMatrix { rows, cols })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// One row per line, entries `p` or `p/q`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let lines = parse_lines(text)?;
        let Some((_, first)) = lines.first() else {
            return Err(WmError::Parse {
                line: 1,
                message: "empty matrix".into(),
            });
        };
        let cols = first.len();
        for (line, row) in &lines {
            if row.len() != cols {
                return Err(WmError::Parse {
                    line: *line,
                    message: format!("expected {cols} entries, found {}", row.len()),
                });
            }
        }
        Self::new(lines.into_iter().map(|(_, r)| r).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn as_rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_int_vec(&self, x: &[BigInt]) -> Vec<Q> {
        self.mul_vec(&x.iter().map(qi).collect::<Vec<_>>())
    }

    /// Rows scaled by the lcm of their denominators.
    pub fn cleared_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| clear_denominators(r).0).collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// Right-hand side vector: entries separated by whitespace or newlines.
pub fn parse_vector(text: &str) -> Result<RationalVector> {
    let v: Vec<Q> = parse_lines(text)?.into_iter().flat_map(|(_, r)| r).collect();
    if v.is_empty() {
        return Err(WmError::Parse {
            line: 1,
            message: "empty vector".into(),
        });
    }
    Ok(v)
}

/// `(v · L, L)` with `L` the lcm of the denominators of `v`.
pub fn clear_denominators(v: &[Q]) -> (Vec<BigInt>, BigInt) {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v
        .iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect();
    (ints, l)
}

/// Integer vector with the same direction and coprime entries.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let (ints, _) = clear_denominators(v);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
