use num_traits::ToPrimitive;
use serde::Serialize;

use super::certificate::SolvabilityCertificate;
use crate::error::{Result, WmError};
use crate::par;
use crate::setcore::IntegerSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetSolution {
    pub n: u64,
    pub m: u64,
    pub vector: Vec<u64>,
}

/// Least `(n, m)` in lexicographic order, `1 ≤ n ≤ n_max`, `1 ≤ m ≤ m_max`,
/// with every coordinate of `n·x1 + m·x2 + f` in `A`.
pub fn find_solution_in_set(
    a: &IntegerSet,
    cert: &SolvabilityCertificate,
    n_max: u64,
    m_max: u64,
) -> Result<Option<SetSolution>> {
    let conv = |v: &[num_bigint::BigInt]| -> Result<Vec<i128>> {
        v.iter()
            .map(|x| x.to_i128().ok_or(WmError::Overflow("certificate entry")))
            .collect()
    };
    let (x1, x2, f) = (conv(&cert.x1)?, conv(&cert.x2)?, conv(&cert.f)?);
    let found = par::find_map_first(0..n_max as usize, |ni| {
        let n = ni as i128 + 1;
        (1..=m_max as i128).find_map(|m| {
            let mut vector = Vec::with_capacity(x1.len());
            for i in 0..x1.len() {
                let v = n * x1[i] + m * x2[i] + f[i];
                if !a.contains_i128(v) {
                    return None;
                }
                vector.push(v as u64);
            }
            Some(SetSolution {
                n: n as u64,
                m: m as u64,
                vector,
            })
        })
    });
    Ok(found)
}
