use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::certificate::{verify_certificate, SolvabilityCertificate};
use super::fm::positive_vector;
use super::hnf::integer_point;
use super::linalg::{nullspace_rows, pair_projection_dim, particular_solution, ParticularSolution};
use super::matrix::{clear_denominators, primitive, RationalMatrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotSolvableReason {
    InconsistentSystem,
    NoPositiveDirection,
    GroupRatioNotOne,
    NoIntegerShift,
    NoGenericPair,
}

impl NotSolvableReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NotSolvableReason::InconsistentSystem => "inconsistent-system",
            NotSolvableReason::NoPositiveDirection => "no-positive-direction",
            NotSolvableReason::GroupRatioNotOne => "group-ratio-not-one",
            NotSolvableReason::NoIntegerShift => "no-integer-shift",
            NotSolvableReason::NoGenericPair => "no-generic-pair",
        }
    }
}

impl fmt::Display for NotSolvableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Solvable(SolvabilityCertificate),
    NotSolvable(NotSolvableReason),
}

impl Verdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Verdict::Solvable(_))
    }

    pub fn certificate(&self) -> Option<&SolvabilityCertificate> {
        match self {
            Verdict::Solvable(c) => Some(c),
            Verdict::NotSolvable(_) => None,
        }
    }

    pub fn reason(&self) -> Option<NotSolvableReason> {
        match self {
            Verdict::Solvable(_) => None,
            Verdict::NotSolvable(r) => Some(*r),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Verdict", 3)?;
        match self {
            Verdict::Solvable(c) => {
                st.serialize_field("verdict", "solvable")?;
                st.serialize_field("reason", &None::<&str>)?;
                st.serialize_field("certificate", c)?;
            }
            Verdict::NotSolvable(r) => {
                st.serialize_field("verdict", "not-solvable")?;
                st.serialize_field("reason", r.as_str())?;
                st.serialize_field("certificate", &None::<()>)?;
            }
        }
        st.end()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut j = i;
        while self.0[j] != r {
            let next = self.0[j];
            self.0[j] = r;
            j = next;
        }
        r
    }

    /// Keeps the smaller index as representative.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn representatives(&mut self) -> Vec<usize> {
        (0..self.0.len()).map(|i| self.find(i)).collect()
    }
}

fn unit_difference(k: usize, i: usize, j: usize) -> Vec<Q> {
    let mut row = vec![Q::zero(); k];
    row[i] = Q::one();
    row[j] = -Q::one();
    row
}

/// Decides whether `Bx = d` has a solution inside every weakly mixing set,
/// returning a certificate when it does.
pub fn decide_wm_solvable(b: &RationalMatrix, d: &[Q]) -> Verdict {
    let k = b.cols();
    if let ParticularSolution::Inconsistent(_) = particular_solution(b, d) {
        return Verdict::NotSolvable(NotSolvableReason::InconsistentSystem);
    }

    // Group coordinates whose pair projection is at most a line, constrain
    // the kernel to equal values on each group and repeat until stable.
    let mut rows: Vec<Vec<Q>> = b.as_rows().to_vec();
    let mut reps: Option<Vec<usize>> = None;
    let (basis, positive) = loop {
        let basis = nullspace_rows(&rows, k);
        let Some(positive) = positive_vector(&basis, k) else {
            return Verdict::NotSolvable(NotSolvableReason::NoPositiveDirection);
        };
        let mut uf = UnionFind::new(k);
        for i in 0..k {
            for j in i + 1..k {
                if pair_projection_dim(&basis, i, j) <= 1 {
                    uf.union(i, j);
                }
            }
        }
        let new_reps = uf.representatives();
        for (i, &r) in new_reps.iter().enumerate() {
            if i != r && basis.iter().any(|v| v[i] != v[r]) {
                return Verdict::NotSolvable(NotSolvableReason::GroupRatioNotOne);
            }
        }
        if reps.as_ref() == Some(&new_reps) {
            break (basis, positive);
        }
        for (i, &r) in new_reps.iter().enumerate() {
            if i != r {
                rows.push(unit_difference(k, i, r));
            }
        }
        reps = Some(new_reps);
    };
    let reps = reps.expect("loop sets the grouping");

    // Integer shift f constant on every group.
    let mut rhs: Vec<Q> = d.to_vec();
    rhs.resize(rows.len(), Q::zero());
    let system = RationalMatrix::new(rows).expect("rectangular by construction");
    let Some(f) = integer_point(&system, &rhs) else {
        return Verdict::NotSolvable(NotSolvableReason::NoIntegerShift);
    };

    let x1 = primitive(&positive);
    let basis: Vec<Vec<BigInt>> = basis.iter().map(|v| clear_denominators(v).0).collect();
    let class_reps: Vec<usize> = (0..k).filter(|&i| reps[i] == i).collect();
    let mut pairs = Vec::new();
    for (a, &i) in class_reps.iter().enumerate() {
        for &j in &class_reps[a + 1..] {
            pairs.push((i, j));
        }
    }
    let Some(w) = generic_direction(&x1, &basis, &pairs) else {
        return Verdict::NotSolvable(NotSolvableReason::NoGenericPair);
    };

    // x2 = w + M·x1 with M ≥ 1 large enough for positivity; adding
    // multiples of x1 leaves det(x1, ·) unchanged.
    let mut m = BigInt::one();
    for (wi, xi) in w.iter().zip(&x1) {
        let need = (BigInt::one() - wi).div_ceil(xi);
        if need > m {
            m = need;
        }
    }
    let x2: Vec<BigInt> = w.iter().zip(&x1).map(|(wi, xi)| wi + &m * xi).collect();

    let mut e = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &r in &class_reps {
        let members: Vec<usize> = (0..k).filter(|&i| reps[i] == r).map(|i| i + 1).collect();
        if members.len() == 1 {
            e.push(r + 1);
        } else {
            groups.push(members);
        }
    }
    let cert = SolvabilityCertificate::from_parts(x1, x2, f, e, groups);
    let report = verify_certificate(b, d, &cert);
    assert!(report.ok, "decider produced an invalid certificate: {report:?}");
    Verdict::Solvable(cert)
}

/// A kernel vector `w` with `det(x1, w) ≠ 0` on every listed coordinate pair.
///
/// Along the moment curve `w(s) = Σ_r s^r·b_r` each determinant is a
/// polynomial of degree below `dim` in `s`, nonzero unless the pair
/// projection is a line, so some `s ≤ pairs·(dim − 1) + 1` works.
fn generic_direction(x1: &[BigInt], basis: &[Vec<BigInt>], pairs: &[(usize, usize)]) -> Option<Vec<BigInt>> {
    let k = x1.len();
    let dim = basis.len();
    if dim == 0 {
        return None;
    }
    let candidates = pairs.len() * (dim - 1) + 1;
    (1..=candidates as u64).find_map(|s| {
        let s = BigInt::from(s);
        let mut w = vec![BigInt::zero(); k];
        let mut power = BigInt::one();
        for v in basis {
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi += &power * vi;
            }
            power *= &s;
        }
        let generic = pairs
            .iter()
            .all(|&(i, j)| !(&x1[i] * &w[j] - &x1[j] * &w[i]).is_zero());
        generic.then(|| {
            let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if g.is_positive() && !g.is_one() {
                w.into_iter().map(|x| x / &g).collect()
            } else {
                w
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::super::matrix::q;
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn canonical_verdicts() {
        let schur = m(&[&[1, 1, -1]]);
        let v = decide_wm_solvable(&schur, &[q(0)]);
        assert!(v.is_solvable(), "{v:?}");
        assert!(verify_certificate(&schur, &[q(0)], v.certificate().unwrap()).ok);

        assert_eq!(
            decide_wm_solvable(&m(&[&[2, -3]]), &[q(0)]),
            Verdict::NotSolvable(NotSolvableReason::GroupRatioNotOne)
        );
        assert_eq!(
            decide_wm_solvable(&m(&[&[1, -1]]), &[q(5)]),
            Verdict::NotSolvable(NotSolvableReason::NoIntegerShift)
        );
        let diag = decide_wm_solvable(&m(&[&[1, -1]]), &[q(0)]);
        let c = diag.certificate().unwrap();
        assert_eq!(c.groups, vec![vec![1, 2]]);
        assert!(c.e.is_empty());
        assert_eq!(c.x1, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(c.x2, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(c.f, vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn other_reasons() {
        assert_eq!(
            decide_wm_solvable(&m(&[&[1], &[1]]), &[q(0), q(1)]),
            Verdict::NotSolvable(NotSolvableReason::InconsistentSystem)
        );
        // x + y = 0 forces opposite signs
        assert_eq!(
            decide_wm_solvable(&m(&[&[1, 1]]), &[q(0)]),
            Verdict::NotSolvable(NotSolvableReason::NoPositiveDirection)
        );
        // 2x − 2y = 1 is consistent over ℚ but has no integer shift
        assert_eq!(
            decide_wm_solvable(&m(&[&[2, -2, 0]]), &[q(1)]),
            Verdict::NotSolvable(NotSolvableReason::NoIntegerShift)
        );
    }

    #[test]
    fn affine_system_solvable() {
        // x + y = z + 3
        let b = m(&[&[1, 1, -1]]);
        let v = decide_wm_solvable(&b, &[q(3)]);
        assert!(verify_certificate(&b, &[q(3)], v.certificate().unwrap()).ok);
        // x − y = 0 together with a free coordinate
        let b = m(&[&[1, -1, 0]]);
        let c = decide_wm_solvable(&b, &[q(0)]);
        let c = c.certificate().unwrap();
        assert_eq!(c.groups, vec![vec![1, 2]]);
        assert_eq!(c.e, vec![3]);
    }

    #[test]
    fn tampered_certificates_fail() {
        let schur = m(&[&[1, 1, -1]]);
        let mut c = decide_wm_solvable(&schur, &[q(0)]).certificate().unwrap().clone();
        c.f[0] += 1;
        let r = verify_certificate(&schur, &[q(0)], &c);
        assert!(!r.ok);
        assert!(r.checks.iter().any(|i| i.condition == "B·f = d" && !i.pass));

        let mut c = decide_wm_solvable(&schur, &[q(0)]).certificate().unwrap().clone();
        c.x2 = c.x1.clone();
        let r = verify_certificate(&schur, &[q(0)], &c);
        assert!(!r.ok);
        assert!(r.checks.iter().any(|i| i.condition == "E pairwise determinants" && !i.pass));
    }

    #[test]
    fn verdict_json_shape() {
        let v = Verdict::NotSolvable(NotSolvableReason::NoIntegerShift);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"verdict":"not-solvable","reason":"no-integer-shift","certificate":null}"#);
    }
}
