use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{clear_denominators, RationalMatrix, Q};

type IntMatrix = Vec<Vec<BigInt>>;

/// Column-style Hermite reduction `A·U = H` with `U` unimodular and `H`
/// lower echelon. Returns `(H, U, pivot column per row or None)`.
pub fn column_echelon(a: &[Vec<BigInt>], k: usize) -> (IntMatrix, IntMatrix, Vec<Option<usize>>) {
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = Vec::with_capacity(h.len());
    let mut col = 0;
    for i in 0..h.len() {
        if col == k {
            pivots.push(None);
            continue;
        }
        for j in col + 1..k {
            if h[i][j].is_zero() {
                continue;
            }
            let (x, y) = (h[i][col].clone(), h[i][j].clone());
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (p, q) = (-(&y / &g), &x / &g);
            // [col, j] ← [s·col + t·j, p·col + q·j], determinant s·q − t·p = 1.
            col_op(&mut h, col, j, &s, &t, &p, &q);
            col_op(&mut u, col, j, &s, &t, &p, &q);
        }
        if h[i][col].is_zero() {
            pivots.push(None);
        } else {
            if h[i][col].is_negative() {
                for row in h.iter_mut().chain(u.iter_mut()) {
                    row[col] = -row[col].clone();
                }
            }
            pivots.push(Some(col));
            col += 1;
        }
    }
    (h, u, pivots)
}

fn col_op(m: &mut [Vec<BigInt>], c: usize, j: usize, s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt) {
    for row in m.iter_mut() {
        let (a, b) = (row[c].clone(), row[j].clone());
        row[c] = s * &a + t * &b;
        row[j] = p * &a + q * &b;
    }
}

/// An integer `x` with `A·x = b`, or `None` when the system has no integer
/// (or no rational) solution.
pub fn integer_point(a: &RationalMatrix, b: &[Q]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let k = a.cols();
    let mut ints = Vec::with_capacity(a.rows());
    let mut rhs = Vec::with_capacity(a.rows());
    for (row, bi) in a.as_rows().iter().zip(b) {
        let mut full = row.clone();
        full.push(bi.clone());
        let (mut cleared, _) = clear_denominators(&full);
        rhs.push(cleared.pop().unwrap());
        ints.push(cleared);
    }
    let (h, u, pivots) = column_echelon(&ints, k);
    let mut y = vec![BigInt::zero(); k];
    for (i, piv) in pivots.iter().enumerate() {
        let upto = piv.unwrap_or(k);
        let partial: BigInt = (0..upto.min(k)).map(|j| &h[i][j] * &y[j]).sum();
        let rem = &rhs[i] - partial;
        match piv {
            Some(c) => {
                let (quot, r) = rem.div_rem(&h[i][*c]);
                if !r.is_zero() {
                    return None;
                }
                y[*c] = quot;
            }
            None => {
                if !rem.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(
        (0..k)
            .map(|i| u[i].iter().zip(&y).map(|(a, b)| a * b).sum())
            .collect(),
    )
}
