use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::{primitive, qi, RationalMatrix, RationalVector, Q};

/// Gauss–Jordan elimination pivoting only in the first `pivot_cols` columns.
/// Returns the pivot column of each nonzero leading row.
pub(crate) fn rref(m: &mut [Vec<Q>], pivot_cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut m = rows.to_vec();
    rref(&mut m, first.len()).len()
}

/// Basis of `ker B`, one primitive integer vector per free column.
pub fn nullspace(b: &RationalMatrix) -> Vec<RationalVector> {
    nullspace_rows(b.as_rows(), b.cols())
}

pub(crate) fn nullspace_rows(rows: &[Vec<Q>], k: usize) -> Vec<RationalVector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, k);
    let mut basis = Vec::new();
    for free in (0..k).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); k];
        v[free] = Q::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][free].clone();
        }
        basis.push(primitive(&v).iter().map(qi).collect());
    }
    basis
}

/// Either `x` with `Bx = d`, or `y` with `yᵀB = 0` and `yᵀd = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ParticularSolution {
    Solution(#[serde(serialize_with = "ser_qvec")] RationalVector),
    Inconsistent(#[serde(serialize_with = "ser_qvec")] RationalVector),
}

pub(crate) fn ser_qvec<S: serde::Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn particular_solution(b: &RationalMatrix, d: &[Q]) -> ParticularSolution {
    assert_eq!(d.len(), b.rows(), "rhs length must match row count");
    particular_solution_rows(b.as_rows(), b.cols(), d)
}

pub(crate) fn particular_solution_rows(rows: &[Vec<Q>], k: usize, d: &[Q]) -> ParticularSolution {
    let t = rows.len();
    // [B | d | I]: the identity block records the row operations.
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .zip(d)
        .enumerate()
        .map(|(i, (r, di))| {
            let mut row = r.clone();
            row.push(di.clone());
            row.extend((0..t).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut m, k + 1);
    if let Some(i) = pivots.iter().position(|&p| p == k) {
        return ParticularSolution::Inconsistent(m[i][k + 1..].to_vec());
    }
    let mut x = vec![Q::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][k].clone();
    }
    ParticularSolution::Solution(x)
}

/// Dimension of the projection of `span(basis)` onto coordinates `i, j`.
pub fn pair_projection_dim(basis: &[RationalVector], i: usize, j: usize) -> usize {
    assert_ne!(i, j);
    if basis.is_empty() {
        return 0;
    }
    rank(&[
        basis.iter().map(|v| v[i].clone()).collect(),
        basis.iter().map(|v| v[j].clone()).collect(),
    ])
}
