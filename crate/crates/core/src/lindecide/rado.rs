use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::linalg::{nullspace_rows, particular_solution_rows, ParticularSolution};
use super::matrix::{clear_denominators, qi, RationalMatrix, Q};
use crate::error::{Result, WmError};

pub const RADO_MAX_COLUMNS: usize = 20;

/// Blocks `I_1, …, I_l` (1-based columns) and, for each block after the
/// first, coefficients `c_j` over earlier columns with
/// `Σ_{i ∈ I_r} a_i = Σ_j c_j·a_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadoPartition {
    pub blocks: Vec<Vec<usize>>,
    pub coefficients: Vec<Vec<(usize, Q)>>,
}

impl RadoPartition {
    pub fn level(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadoResult {
    Regular(RadoPartition),
    NotRegular,
}

impl RadoResult {
    pub fn is_regular(&self) -> bool {
        matches!(self, RadoResult::Regular(_))
    }
}

impl Serialize for RadoResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Coef {
            column: usize,
            value: String,
        }
        let mut st = s.serialize_struct("RadoResult", 4)?;
        match self {
            RadoResult::Regular(p) => {
                st.serialize_field("regular", &true)?;
                st.serialize_field("level", &p.level())?;
                st.serialize_field("blocks", &p.blocks)?;
                let coefs: Vec<Vec<Coef>> = p
                    .coefficients
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|(j, v)| Coef {
                                column: *j,
                                value: v.to_string(),
                            })
                            .collect()
                    })
                    .collect();
                st.serialize_field("coefficients", &coefs)?;
            }
            RadoResult::NotRegular => {
                st.serialize_field("regular", &false)?;
                st.serialize_field("level", &None::<usize>)?;
                st.serialize_field("blocks", &None::<()>)?;
                st.serialize_field("coefficients", &None::<()>)?;
            }
        }
        st.end()
    }
}

/// Rado's columns condition for the homogeneous system `A·x = 0`.
///
/// Blocks are chosen greedily: a remaining subset whose column sum lies in
/// the span of the columns already used can always be extended to a full
/// partition when one exists, so no backtracking is needed.
pub fn rado_regular(a: &RationalMatrix) -> Result<RadoResult> {
    let k = a.cols();
    if k > RADO_MAX_COLUMNS {
        return Err(WmError::ColumnBudget(k));
    }
    let t = a.rows();
    let rows: Vec<Vec<BigInt>> = a.as_rows().iter().map(|r| clear_denominators(r).0).collect();
    let columns: Vec<Vec<BigInt>> = (0..k).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();

    let mut used: Vec<usize> = Vec::new();
    let mut remaining: Vec<usize> = (0..k).collect();
    let mut blocks = Vec::new();
    let mut coefficients = Vec::new();
    while !remaining.is_empty() {
        // Left null space of the used columns: functionals vanishing on them.
        let used_t: Vec<Vec<Q>> = used.iter().map(|&j| columns[j].iter().map(qi).collect()).collect();
        let projector: Vec<Vec<BigInt>> = if used.is_empty() {
            (0..t)
                .map(|i| (0..t).map(|j| BigInt::from((i == j) as u8)).collect())
                .collect()
        } else {
            nullspace_rows(&used_t, t)
                .iter()
                .map(|v| clear_denominators(v).0)
                .collect()
        };
        let projected: Vec<Vec<i128>> = remaining
            .iter()
            .map(|&j| {
                projector
                    .iter()
                    .map(|p| {
                        let dot: BigInt = p.iter().zip(&columns[j]).map(|(x, y)| x * y).sum();
                        dot.to_i128().ok_or(WmError::Overflow("rado projection"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let Some(mask) = zero_sum_subset(&projected)? else {
            return Ok(RadoResult::NotRegular);
        };
        let block: Vec<usize> = remaining
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &j)| j)
            .collect();
        if !used.is_empty() {
            let target: Vec<Q> = (0..t)
                .map(|i| qi(&block.iter().map(|&j| &columns[j][i]).sum::<BigInt>()))
                .collect();
            // columns of the used block as a t × |used| system
            let sys: Vec<Vec<Q>> = (0..t).map(|i| used.iter().map(|&j| qi(&columns[j][i])).collect()).collect();
            match particular_solution_rows(&sys, used.len(), &target) {
                ParticularSolution::Solution(c) => coefficients.push(
                    used.iter()
                        .zip(c)
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(&j, v)| (j + 1, v))
                        .collect(),
                ),
                ParticularSolution::Inconsistent(_) => unreachable!("projection guarantees span membership"),
            }
        }
        remaining.retain(|j| !block.contains(j));
        used.extend(&block);
        used.sort_unstable();
        blocks.push(block.iter().map(|j| j + 1).collect());
    }
    Ok(RadoResult::Regular(RadoPartition { blocks, coefficients }))
}

/// First nonempty subset (in Gray-code order) with zero vector sum.
fn zero_sum_subset(cols: &[Vec<i128>]) -> Result<Option<u32>> {
    let m = cols.len();
    let dim = cols.first().map_or(0, Vec::len);
    if dim == 0 {
        return Ok(Some(((1u64 << m) - 1) as u32));
    }
    let mut sum = vec![0i128; dim];
    let mut gray: u32 = 0;
    for i in 1u32..(1u32 << m) {
        let bit = i.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let add = gray >> bit & 1 == 1;
        for (s, c) in sum.iter_mut().zip(&cols[bit]) {
            let next = if add { s.checked_add(*c) } else { s.checked_sub(*c) };
            *s = next.ok_or(WmError::Overflow("rado subset sum"))?;
        }
        if sum.iter().all(|&x| x == 0) {
            return Ok(Some(gray));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows).unwrap()
    }

    fn check_partition(a: &RationalMatrix, p: &RadoPartition) {
        let mut seen: Vec<usize> = p.blocks.concat();
        seen.sort_unstable();
        assert_eq!(seen, (1..=a.cols()).collect::<Vec<_>>());
        for i in 0..a.rows() {
            let s: Q = p.blocks[0].iter().map(|&j| a.get(i, j - 1).clone()).sum();
            assert!(s.is_zero());
        }
        for (r, coefs) in p.coefficients.iter().enumerate() {
            let earlier: Vec<usize> = p.blocks[..=r].concat();
            for i in 0..a.rows() {
                let lhs: Q = p.blocks[r + 1].iter().map(|&j| a.get(i, j - 1).clone()).sum();
                let rhs: Q = coefs
                    .iter()
                    .map(|(j, c)| {
                        assert!(earlier.contains(j));
                        a.get(i, j - 1) * c
                    })
                    .sum();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn examples() {
        let schur = m(&[&[1, 1, -1]]);
        match rado_regular(&schur).unwrap() {
            RadoResult::Regular(p) => {
                assert_eq!(p.level(), 2);
                check_partition(&schur, &p);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(rado_regular(&m(&[&[1, 1, -3]])).unwrap(), RadoResult::NotRegular);
        match rado_regular(&m(&[&[2, 3, -5]])).unwrap() {
            RadoResult::Regular(p) => assert_eq!(p.blocks, vec![vec![1, 2, 3]]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn column_budget() {
        let row: Vec<i64> = vec![1; 21];
        assert!(matches!(rado_regular(&m(&[&row])), Err(WmError::ColumnBudget(21))));
    }

    #[test]
    fn three_term_progressions_are_regular() {
        let a = m(&[&[1, -2, 1]]);
        match rado_regular(&a).unwrap() {
            RadoResult::Regular(p) => check_partition(&a, &p),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn greedy_matches_exhaustive_partition_search() {
        // all ordered set partitions for k = 4, entries in [-2, 2], one or two rows
        let mut state = 12345u64;
        for _ in 0..300 {
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 5) as i64 - 2
            };
            let r1: Vec<i64> = (0..4).map(|_| next()).collect();
            let r2: Vec<i64> = (0..4).map(|_| next()).collect();
            let a = m(&[&r1, &r2]);
            let greedy = rado_regular(&a).unwrap();
            if let RadoResult::Regular(p) = &greedy {
                check_partition(&a, p);
            }
            assert_eq!(greedy.is_regular(), brute_regular(&a), "{a}");
        }
    }

    fn brute_regular(a: &RationalMatrix) -> bool {
        let k = a.cols();
        // assign each column a level 0..k-1; levels must be contiguous from 0
        let total = k.pow(k as u32);
        'outer: for code in 0..total {
            let mut lv = vec![0usize; k];
            let mut c = code;
            for x in lv.iter_mut() {
                *x = c % k;
                c /= k;
            }
            let top = *lv.iter().max().unwrap();
            if (0..=top).any(|l| !lv.contains(&l)) {
                continue;
            }
            for l in 0..=top {
                let earlier: Vec<Vec<Q>> = (0..k).filter(|&j| lv[j] < l).map(|j| a.column(j)).collect();
                let sum: Vec<Q> = (0..a.rows())
                    .map(|i| (0..k).filter(|&j| lv[j] == l).map(|j| a.get(i, j).clone()).sum())
                    .collect();
                let in_span = if l == 0 {
                    sum.iter().all(Zero::is_zero)
                } else {
                    let mut with = earlier.clone();
                    with.push(sum.clone());
                    super::super::linalg::rank(&with) == super::super::linalg::rank(&earlier)
                };
                if !in_span {
                    continue 'outer;
                }
            }
            return true;
        }
        false
    }
}
