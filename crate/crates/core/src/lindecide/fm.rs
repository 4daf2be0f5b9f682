//! Fourier–Motzkin elimination for `M·t ≥ 1`, where the columns of `M` are a
//! basis of a subspace `V ⊆ ℚ^k`. Feasible iff `V` holds a strictly positive
//! vector.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{RationalVector, Q};

#[derive(Clone, Debug)]
struct Ineq {
    /// `a·t ≥ c`
    a: Vec<Q>,
    c: Q,
    /// Nonnegative multipliers of the original rows producing this row.
    y: Vec<Q>,
}

impl Ineq {
    fn normalized(mut self) -> Ineq {
        let scale = self
            .a
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| x.abs())
            .unwrap_or_else(|| {
                if self.c.is_zero() {
                    Q::one()
                } else {
                    self.c.abs()
                }
            });
        let inv = scale.recip();
        for x in self.a.iter_mut().chain(self.y.iter_mut()) {
            *x *= &inv;
        }
        self.c *= &inv;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositiveResult {
    /// Coefficients `t` and the vector `Σ t_r·v_r`, every entry ≥ 1.
    Found { coeffs: Vec<Q>, vector: RationalVector },
    /// `y ≥ 0`, `y ≠ 0`, orthogonal to every basis vector: no positive
    /// vector exists in the span.
    Infeasible { farkas: RationalVector },
}

/// Strictly positive vector in `span(basis)`, or a Farkas certificate that
/// none exists. `k` is the ambient dimension.
pub fn positive_vector_certified(basis: &[RationalVector], k: usize) -> PositiveResult {
    let r = basis.len();
    let mut current: Vec<Ineq> = (0..k)
        .map(|i| Ineq {
            a: basis.iter().map(|v| v[i].clone()).collect(),
            c: Q::one(),
            y: (0..k)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect(),
        })
        .collect();
    if let Some(y) = contradiction(&current) {
        return PositiveResult::Infeasible { farkas: y };
    }
    let mut levels: Vec<Vec<Ineq>> = Vec::with_capacity(r);
    for j in (0..r).rev() {
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in &current {
            if ineq.a[j].is_positive() {
                lower.push(ineq);
            } else if ineq.a[j].is_negative() {
                upper.push(ineq);
            } else {
                rest.push(ineq.clone());
            }
        }
        for lo in &lower {
            for up in &upper {
                let lam = -up.a[j].clone();
                let mu = lo.a[j].clone();
                let comb = |x: &Q, z: &Q| &lam * x + &mu * z;
                let mut a: Vec<Q> = lo.a.iter().zip(&up.a).map(|(x, z)| comb(x, z)).collect();
                a[j] = Q::zero();
                rest.push(
                    Ineq {
                        a,
                        c: comb(&lo.c, &up.c),
                        y: lo.y.iter().zip(&up.y).map(|(x, z)| comb(x, z)).collect(),
                    }
                    .normalized(),
                );
            }
        }
        let next = dedup(rest);
        if let Some(y) = contradiction(&next) {
            return PositiveResult::Infeasible { farkas: y };
        }
        levels.push(std::mem::replace(&mut current, next));
    }
    levels.reverse();
    // levels[j] constrains t_0..t_j; pick t_j from bounds given t_0..t_{j-1}.
    let mut t: Vec<Q> = Vec::with_capacity(r);
    for (j, level) in levels.iter().enumerate() {
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        for ineq in level {
            let aj = &ineq.a[j];
            if aj.is_zero() {
                continue;
            }
            let partial: Q = ineq.a[..j].iter().zip(&t).map(|(a, x)| a * x).sum();
            let bound = (&ineq.c - partial) / aj;
            if aj.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        t.push(choose(lo, hi));
    }
    let vector = (0..k)
        .map(|i| basis.iter().zip(&t).map(|(v, x)| &v[i] * x).sum())
        .collect();
    PositiveResult::Found { coeffs: t, vector }
}

/// Smallest integer in range when there is one, else the lower bound.
fn choose(lo: Option<Q>, hi: Option<Q>) -> Q {
    match (lo, hi) {
        (None, None) => Q::zero(),
        (Some(l), None) => l.ceil(),
        (None, Some(h)) => h.floor().min(Q::zero()),
        (Some(l), Some(h)) => {
            let c = l.ceil();
            if c <= h {
                c
            } else {
                l
            }
        }
    }
}

fn contradiction(ineqs: &[Ineq]) -> Option<Vec<Q>> {
    ineqs
        .iter()
        .find(|i| i.a.iter().all(Zero::is_zero) && i.c.is_positive())
        .map(|i| integral(&i.y))
}

fn integral(y: &[Q]) -> Vec<Q> {
    let l = y.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let l = Q::from_integer(l);
    y.iter().map(|x| x * &l).collect()
}

/// Drops trivially true rows and keeps the tightest row per direction.
fn dedup(ineqs: Vec<Ineq>) -> Vec<Ineq> {
    let mut order: Vec<Vec<Q>> = Vec::new();
    let mut best: HashMap<Vec<Q>, Ineq> = HashMap::new();
    for ineq in ineqs {
        if ineq.a.iter().all(Zero::is_zero) && !ineq.c.is_positive() {
            continue;
        }
        match best.get_mut(&ineq.a) {
            Some(old) => {
                if ineq.c > old.c {
                    *old = ineq;
                }
            }
            None => {
                order.push(ineq.a.clone());
                best.insert(ineq.a.clone(), ineq);
            }
        }
    }
    order.into_iter().map(|a| best.remove(&a).unwrap()).collect()
}

pub fn positive_vector(basis: &[RationalVector], k: usize) -> Option<RationalVector> {
    match positive_vector_certified(basis, k) {
        PositiveResult::Found { vector, .. } => Some(vector),
        PositiveResult::Infeasible { .. } => None,
    }
}
