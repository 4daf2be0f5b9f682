use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use super::matrix::{RationalMatrix, Q};

/// The data `(x1, x2, f, E, F_1..F_l)` witnessing solvability of `Bx = d`
/// inside every weakly mixing set. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvabilityCertificate {
    pub x1: Vec<BigInt>,
    pub x2: Vec<BigInt>,
    pub f: Vec<BigInt>,
    pub e: Vec<usize>,
    pub groups: Vec<Vec<usize>>,
    pub group_constants: Vec<GroupConstants>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupConstants {
    #[serde(serialize_with = "ser_bigint")]
    pub c1: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub c2: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub f: BigInt,
}

/// Integers as JSON numbers when they fit in `i64`, as strings otherwise.
pub(crate) fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

struct BigInts<'a>(&'a [BigInt]);

impl Serialize for BigInts<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            match x.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

impl Serialize for SolvabilityCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SolvabilityCertificate", 6)?;
        st.serialize_field("x1", &BigInts(&self.x1))?;
        st.serialize_field("x2", &BigInts(&self.x2))?;
        st.serialize_field("f", &BigInts(&self.f))?;
        st.serialize_field("E", &self.e)?;
        st.serialize_field("groups", &self.groups)?;
        st.serialize_field("group_constants", &self.group_constants)?;
        st.end()
    }
}

impl SolvabilityCertificate {
    /// Fills in the group constants from the first member of each group.
    pub fn from_parts(
        x1: Vec<BigInt>,
        x2: Vec<BigInt>,
        f: Vec<BigInt>,
        e: Vec<usize>,
        groups: Vec<Vec<usize>>,
    ) -> Self {
        let group_constants = groups
            .iter()
            .map(|g| {
                let i = g.first().copied().unwrap_or(1).saturating_sub(1);
                GroupConstants {
                    c1: x1.get(i).cloned().unwrap_or_default(),
                    c2: x2.get(i).cloned().unwrap_or_default(),
                    f: f.get(i).cloned().unwrap_or_default(),
                }
            })
            .collect();
        SolvabilityCertificate {
            x1,
            x2,
            f,
            e,
            groups,
            group_constants,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub condition: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub checks: Vec<CheckItem>,
}

fn det(x1: &[BigInt], x2: &[BigInt], i: usize, j: usize) -> BigInt {
    &x1[i] * &x2[j] - &x1[j] * &x2[i]
}

/// Checks every condition of the certificate from scratch.
pub fn verify_certificate(
    b: &RationalMatrix,
    d: &[Q],
    cert: &SolvabilityCertificate,
) -> VerificationReport {
    let k = b.cols();
    let mut checks = Vec::new();
    let mut push = |condition: &str, failure: Option<String>| {
        checks.push(CheckItem {
            condition: condition.to_string(),
            pass: failure.is_none(),
            detail: failure,
        });
    };

    let lengths_ok = cert.x1.len() == k && cert.x2.len() == k && cert.f.len() == k && d.len() == b.rows();
    push(
        "dimensions",
        (!lengths_ok).then(|| format!("expected vectors of length {k} and rhs of length {}", b.rows())),
    );
    if !lengths_ok {
        return VerificationReport { ok: false, checks };
    }

    let zero_check = |v: &[BigInt], target: Option<&[Q]>| -> Option<String> {
        let bv = b.mul_int_vec(v);
        let bad = bv.iter().enumerate().find(|(i, x)| match target {
            Some(t) => **x != t[*i],
            None => !x.is_zero(),
        });
        bad.map(|(i, x)| format!("row {} evaluates to {x}", i + 1))
    };
    push("B·x1 = 0", zero_check(&cert.x1, None));
    push("B·x2 = 0", zero_check(&cert.x2, None));
    push("B·f = d", zero_check(&cert.f, Some(d)));

    let positive = |v: &[BigInt]| {
        v.iter()
            .position(|x| !x.is_positive())
            .map(|i| format!("entry {} is {}", i + 1, v[i]))
    };
    push("x1 > 0", positive(&cert.x1));
    push("x2 > 0", positive(&cert.x2));

    let mut owner: Vec<Option<usize>> = vec![None; k];
    let mut partition_err = None;
    let blocks = std::iter::once(&cert.e).chain(cert.groups.iter());
    for (bi, block) in blocks.enumerate() {
        if bi > 0 && block.is_empty() {
            partition_err.get_or_insert(format!("group {bi} is empty"));
        }
        for &i in block {
            if i == 0 || i > k {
                partition_err.get_or_insert(format!("index {i} out of range"));
            } else if owner[i - 1].replace(bi).is_some() {
                partition_err.get_or_insert(format!("index {i} appears twice"));
            }
        }
    }
    if partition_err.is_none() {
        if let Some(i) = owner.iter().position(Option::is_none) {
            partition_err = Some(format!("index {} not covered", i + 1));
        }
    }
    let partition_ok = partition_err.is_none();
    push("partition of {1..k}", partition_err);
    if !partition_ok {
        let ok = checks.iter().all(|c| c.pass);
        return VerificationReport { ok, checks };
    }

    let mut e_err = None;
    for (a, &i) in cert.e.iter().enumerate() {
        for &j in &cert.e[a + 1..] {
            if det(&cert.x1, &cert.x2, i - 1, j - 1).is_zero() && e_err.is_none() {
                e_err = Some(format!("det vanishes for E-pair ({i}, {j})"));
            }
        }
    }
    push("E pairwise determinants", e_err);

    let mut const_err = None;
    let mut cross_err = None;
    if cert.group_constants.len() != cert.groups.len() {
        const_err = Some("one constant triple per group required".to_string());
    }
    for (p, (group, c)) in cert.groups.iter().zip(&cert.group_constants).enumerate() {
        for &i in group {
            let i0 = i - 1;
            if (cert.x1[i0] != c.c1 || cert.x2[i0] != c.c2 || cert.f[i0] != c.f) && const_err.is_none() {
                const_err = Some(format!("index {i} deviates from the constants of group {}", p + 1));
            }
        }
        for j in 1..=k {
            if group.contains(&j) {
                continue;
            }
            let dj = &cert.x1[j - 1] * &c.c2 - &c.c1 * &cert.x2[j - 1];
            if dj.is_zero() && cross_err.is_none() {
                cross_err = Some(format!("det vanishes between index {j} and group {}", p + 1));
            }
        }
    }
    push("group constants", const_err);
    push("group determinants", cross_err);

    let ok = checks.iter().all(|c| c.pass);
    VerificationReport { ok, checks }
}
