use serde::Serialize;

use crate::poly::IntPolynomial;
use crate::setcore::IntegerSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternKind {
    Schur,
    MultSchur,
    MultSquare,
    SumSquare,
    DiffSquare,
    Ap,
    IpPrefix,
    Recurrence,
    PolySystem,
}

/// A solution of one of the searched equations.
///
/// Layouts of `elements` / `auxiliary`:
///
/// | kind | elements | auxiliary |
/// |---|---|---|
/// | schur | `x, y, z` with `x + y = z` | |
/// | mult-schur | `x, y, z` with `x·y = z` | |
/// | mult-square | `x, y, z` with `x·y = z²` | |
/// | sum-square | `x, y` | `r` with `x² + y² = r²` |
/// | diff-square | `u, v` | `r` with `u² − v² = r²` |
/// | ap | the `k` terms | `start, difference` |
/// | ip-prefix | generators `s_1..s_m` | |
/// | recurrence | `s, e, e + s` | |
/// | poly-system | `x, y_1..y_k, z` | `p_1(z)..p_k(z)` |
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub elements: Vec<u64>,
    pub auxiliary: Vec<u64>,
}

impl PatternWitness {
    pub fn new(kind: PatternKind, elements: Vec<u64>, auxiliary: Vec<u64>) -> Self {
        PatternWitness {
            kind,
            elements,
            auxiliary,
        }
    }

    /// All `2^m − 1` finite sums of the generators of an IP prefix.
    pub fn finite_sums(generators: &[u64]) -> Vec<u128> {
        let m = generators.len();
        (1u64..1 << m)
            .map(|mask| {
                (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| generators[i] as u128)
                    .sum()
            })
            .collect()
    }

    /// Whether the defining equation holds; membership is not checked.
    pub fn holds(&self) -> bool {
        let e: Vec<u128> = self.elements.iter().map(|&x| x as u128).collect();
        let aux: Vec<u128> = self.auxiliary.iter().map(|&x| x as u128).collect();
        if e.contains(&0) {
            return false;
        }
        match self.kind {
            PatternKind::Schur => e.len() == 3 && e[0] <= e[1] && e[0] + e[1] == e[2],
            PatternKind::MultSchur => e.len() == 3 && e[0] <= e[1] && e[0] * e[1] == e[2],
            PatternKind::MultSquare => e.len() == 3 && e[0] < e[1] && e[0] * e[1] == e[2] * e[2],
            PatternKind::SumSquare => {
                e.len() == 2 && aux.len() == 1 && aux[0] > 0 && e[0] * e[0] + e[1] * e[1] == aux[0] * aux[0]
            }
            PatternKind::DiffSquare => {
                e.len() == 2 && aux.len() == 1 && e[0] > e[1] && aux[0] > 0 && e[0] * e[0] - e[1] * e[1] == aux[0] * aux[0]
            }
            PatternKind::Ap => {
                e.len() >= 3
                    && aux.len() == 2
                    && aux[1] >= 1
                    && e.iter().enumerate().all(|(j, &t)| t == aux[0] + j as u128 * aux[1])
            }
            PatternKind::IpPrefix => {
                let mut sums = Self::finite_sums(&self.elements);
                let total = sums.len();
                sums.sort_unstable();
                sums.dedup();
                !e.is_empty() && sums.len() == total
            }
            PatternKind::Recurrence => e.len() == 3 && e[1] + e[0] == e[2],
            PatternKind::PolySystem => {
                e.len() >= 3 && aux.len() == e.len() - 2 && aux.iter().enumerate().all(|(i, &p)| e[0] + e[i + 1] == p)
            }
        }
    }

    /// For poly-system witnesses: the auxiliary values are `p_i(z)`.
    pub fn holds_for(&self, polys: &[IntPolynomial]) -> bool {
        if self.kind != PatternKind::PolySystem || !self.holds() || polys.len() != self.auxiliary.len() {
            return false;
        }
        let z = *self.elements.last().unwrap() as i128;
        polys
            .iter()
            .zip(&self.auxiliary)
            .all(|(p, &v)| p.eval(z) == Some(v as i128))
    }

    /// Elements that are required to lie in the searched set.
    pub fn members_in(&self, a: &IntegerSet, z_in_set: bool) -> bool {
        let inside = |x: u128| x <= usize::MAX as u128 && a.contains(x as usize);
        match self.kind {
            PatternKind::IpPrefix => Self::finite_sums(&self.elements).into_iter().all(inside),
            PatternKind::Recurrence => inside(self.elements[1] as u128) && inside(self.elements[2] as u128),
            PatternKind::PolySystem => {
                let n = self.elements.len();
                let body = &self.elements[..n - 1];
                body.iter().all(|&x| inside(x as u128)) && (!z_in_set || inside(self.elements[n - 1] as u128))
            }
            _ => self.elements.iter().all(|&x| inside(x as u128)),
        }
    }
}
