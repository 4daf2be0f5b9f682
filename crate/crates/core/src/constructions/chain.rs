//! Chain construction of a set avoiding `ax = by + c`.
//!
//! With `gcd(a, b) = 1` and `a < b`, define residues `l_0 = a⁻¹c mod b` and
//! `l_i = a⁻¹(b·l_{i−1} + c) mod b^{i+1}`, towers `H_i = {n ≥ 1 : n ≡ l_{i−1}
//! (mod b^i)}` and levels `B_i = H_i \ H_{i+1}`. Any solution `(x, y)` has
//! `x` exactly one level above `y`. Walking `n → (a·n − c)/b` down the levels
//! gives the chain of `n`; membership of `n` is the membership of the chain's
//! last element in a seed set `S`, flipped once per step.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Result, WmError};
use crate::par;
use crate::setcore::{BitVec, IntegerSet};

/// Normalised equation `a·x = b·y + c` with `gcd(a, b) = 1` and `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EquationABC {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    /// The caller's equation had `a > b`; the roles of `x` and `y` were
    /// exchanged (`b·y = a·x − c`).
    pub swapped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Normalized {
    Equation(EquationABC),
    /// `gcd(a, b)` does not divide `c`; no integer solutions exist.
    Vacuous,
}

impl EquationABC {
    /// Divides by `gcd(a, b)` and orients the equation so that `a < b`.
    pub fn normalize(a: i64, b: i64, c: i64) -> Result<Normalized> {
        if a <= 0 || b <= 0 {
            return Err(WmError::InvalidArgument(format!(
                "a and b must be positive, got a = {a}, b = {b}"
            )));
        }
        let g = a.gcd(&b);
        if c % g != 0 {
            return Ok(Normalized::Vacuous);
        }
        let (a, b, c) = (a / g, b / g, c / g);
        if a == b {
            return Err(WmError::DegenerateEquation(format!(
                "a = b after normalisation (x = y + {c})"
            )));
        }
        Ok(Normalized::Equation(if a < b {
            EquationABC { a, b, c, swapped: false }
        } else {
            EquationABC { a: b, b: a, c: -c, swapped: true }
        }))
    }

    /// Convenience for callers that know the equation is non-vacuous.
    pub fn new(a: i64, b: i64, c: i64) -> Result<EquationABC> {
        match Self::normalize(a, b, c)? {
            Normalized::Equation(e) => Ok(e),
            Normalized::Vacuous => Err(WmError::InvalidArgument(format!(
                "gcd({a}, {b}) does not divide {c}"
            ))),
        }
    }

    /// True when `(x, y)` solves the equation as originally stated.
    pub fn solves_original(&self, x: i128, y: i128) -> bool {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        if self.swapped {
            // original: b·x = a·y − c
            b * x == a * y - c
        } else {
            a * x == b * y + c
        }
    }

    /// The unique `n` with `a·n = b·n + c`, if it is a positive integer.
    pub fn fixed_point(&self) -> Option<i128> {
        let d = (self.a - self.b) as i128;
        let c = self.c as i128;
        (c % d == 0 && c / d >= 1).then(|| c / d)
    }
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let e = a.extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// `(l_0, …, l_{i_max})`.
pub fn shift_residues(eq: &EquationABC, i_max: usize) -> Result<Vec<i128>> {
    let (a, b, c) = (eq.a as i128, eq.b as i128, eq.c as i128);
    let mut out = Vec::with_capacity(i_max + 1);
    let mut modulus = b;
    let mut prev: Option<i128> = None;
    for i in 0..=i_max {
        if i > 0 {
            modulus = modulus.checked_mul(b).ok_or(WmError::Overflow("residue tower"))?;
        }
        let inv = mod_inverse(a.rem_euclid(modulus), modulus).expect("gcd(a, b) = 1");
        let target = match prev {
            None => c,
            Some(l) => b
                .checked_mul(l)
                .and_then(|v| v.checked_add(c))
                .ok_or(WmError::Overflow("residue tower"))?,
        };
        let l = (target.rem_euclid(modulus))
            .checked_mul(inv)
            .ok_or(WmError::Overflow("residue tower"))?
            .rem_euclid(modulus);
        out.push(l);
        prev = Some(l);
    }
    Ok(out)
}

/// Residue towers deep enough to classify every `n ≤ max_n`.
#[derive(Clone, Debug)]
pub struct ResidueTower {
    eq: EquationABC,
    /// `moduli[j] = b^{j+1}`.
    moduli: Vec<i128>,
    /// `residues[j] = l_j`.
    residues: Vec<i128>,
    max_n: i128,
}

impl ResidueTower {
    pub fn new(eq: EquationABC, max_n: usize) -> Result<Self> {
        let (a, b, c) = (eq.a as i128, eq.b as i128, eq.c as i128);
        let max_n = (max_n as i128).max(c.abs()) + 1;
        // Past b^D > (b − a)·n + |c| a further match would force a·n = b·n + c.
        let bound = (b - a) * max_n + c.abs() + max_n;
        let mut depth = 1usize;
        let mut m = b;
        while m <= bound {
            m = m.checked_mul(b).ok_or(WmError::Overflow("residue tower"))?;
            depth += 1;
        }
        let residues = shift_residues(&eq, depth)?;
        let mut moduli = Vec::with_capacity(depth + 1);
        let mut m = 1i128;
        for _ in 0..=depth {
            m *= b;
            moduli.push(m);
        }
        Ok(ResidueTower {
            eq,
            moduli,
            residues,
            max_n,
        })
    }

    pub fn equation(&self) -> &EquationABC {
        &self.eq
    }

    /// `Some(i)` with `n ∈ B_i`, or `None` for the fixed point lying in every
    /// `H_i`.
    pub fn level(&self, n: i128) -> Option<u32> {
        debug_assert!(n >= 1 && n <= self.max_n, "n = {n} outside the tower range");
        let (a, b, c) = (self.eq.a as i128, self.eq.b as i128, self.eq.c as i128);
        if a * n == b * n + c {
            return None;
        }
        let mut j = 0usize;
        while j < self.moduli.len() && n.rem_euclid(self.moduli[j]) == self.residues[j] {
            j += 1;
        }
        debug_assert!(j < self.moduli.len(), "tower too shallow for n = {n}");
        Some(j as u32)
    }

    /// Parent `(a·n − c)/b` when `n` sits at level ≥ 1 and the parent is a
    /// positive integer.
    fn parent(&self, n: i128, level: u32) -> Option<i128> {
        if level == 0 {
            return None;
        }
        let num = self.eq.a as i128 * n - self.eq.c as i128;
        let b = self.eq.b as i128;
        debug_assert_eq!(num.rem_euclid(b), 0);
        let y = num / b;
        (y >= 1).then_some(y)
    }

    /// `(ancestor, chain length)`; `None` for the fixed point.
    pub fn walk(&self, n: i128) -> Option<(i128, usize)> {
        let mut level = self.level(n)?;
        let mut cur = n;
        let mut len = 1;
        while let Some(y) = self.parent(cur, level) {
            cur = y;
            level -= 1;
            len += 1;
        }
        Some((cur, len))
    }

    pub fn chain(&self, n: u64) -> ChainRecord {
        let n128 = n as i128;
        match self.level(n128) {
            None => ChainRecord {
                n,
                chain: vec![n],
                level: None,
                ancestor: n,
                parity: 1,
            },
            Some(top) => {
                let mut chain = vec![n];
                let mut cur = n128;
                let mut level = top;
                while let Some(y) = self.parent(cur, level) {
                    chain.push(y as u64);
                    cur = y;
                    level -= 1;
                }
                let parity = if chain.len() % 2 == 1 { 1 } else { -1 };
                ChainRecord {
                    n,
                    ancestor: *chain.last().expect("non-empty"),
                    chain,
                    level: Some(top),
                    parity,
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainRecord {
    pub n: u64,
    /// `n = n_0, n_1, …` with `a·n_t = b·n_{t+1} + c`.
    pub chain: Vec<u64>,
    /// Level of `n`; `None` for the fixed point.
    pub level: Option<u32>,
    pub ancestor: u64,
    /// `(−1)^{len − 1}`.
    pub parity: i8,
}

/// Chain of `n` for `eq`.
pub fn chain(n: u64, eq: &EquationABC) -> Result<ChainRecord> {
    if n == 0 {
        return Err(WmError::InvalidArgument("n must be positive".into()));
    }
    Ok(ResidueTower::new(*eq, n as usize)?.chain(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsConstruction {
    pub set: IntegerSet,
    /// The equation has no integer solutions; `set` is the seed unchanged.
    pub vacuous: bool,
    pub equation: Option<EquationABC>,
}

/// Builds `A_S ⊆ [1, N]` (N = horizon of `S`) avoiding `a·x = b·y + c`.
///
/// `n ∈ A_S` iff the chain of `n` has odd length and ends in `S`, or even
/// length and ends outside `S`. The fixed point of `a·n = b·n + c` (if any) is
/// excluded. Ancestors beyond the horizon of `S` count as non-members.
pub fn build_as(s: &IntegerSet, a: i64, b: i64, c: i64) -> Result<AsConstruction> {
    match EquationABC::normalize(a, b, c)? {
        Normalized::Vacuous => Ok(AsConstruction {
            set: s.clone(),
            vacuous: true,
            equation: None,
        }),
        Normalized::Equation(eq) => Ok(AsConstruction {
            set: build_as_normalized(s, &eq)?,
            vacuous: false,
            equation: Some(eq),
        }),
    }
}

pub fn build_as_normalized(s: &IntegerSet, eq: &EquationABC) -> Result<IntegerSet> {
    let n = s.horizon();
    let tower = ResidueTower::new(*eq, n)?;
    let mut words = vec![0u64; n.div_ceil(64)];
    par::for_each_chunk_mut(&mut words, 16, |ci, chunk| {
        for (wi, w) in chunk.iter_mut().enumerate() {
            let base = (ci * 16 + wi) * 64;
            let mut acc = 0u64;
            for bit in 0..64 {
                let m = base + bit + 1;
                if m > n {
                    break;
                }
                if let Some((anc, len)) = tower.walk(m as i128) {
                    if s.contains_i128(anc) == (len % 2 == 1) {
                        acc |= 1 << bit;
                    }
                }
            }
            *w = acc;
        }
    });
    Ok(IntegerSet::from_bits(BitVec::from_words(n, words)))
}
