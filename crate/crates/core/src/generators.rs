//! Generators for positive examples and controls: random (normal) sets,
//! Sturmian return-time sets `{n : frac(αn) ∈ [u, v]}` and periodic sets.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Result, WmError};
use crate::par;
use crate::setcore::{BitVec, IntegerSet};

/// Key for a deterministic, seekable random stream.
///
/// The stream is ChaCha8 keyed by `seed` with stream id `stream`; value
/// number `i` is the `u64` at word position `2·i`, so any index can be read
/// without generating its predecessors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Seed {
    pub seed: u64,
    pub stream: u64,
}

impl Seed {
    pub fn new(seed: u64) -> Self {
        Seed { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        Seed { seed, stream }
    }

    /// Sub-stream identified by a stable label and index.
    pub fn derive(&self, label: &str, index: u64) -> Seed {
        let mut h = Sha256::new();
        h.update(self.seed.to_le_bytes());
        h.update(self.stream.to_le_bytes());
        h.update((label.len() as u64).to_le_bytes());
        h.update(label.as_bytes());
        h.update(index.to_le_bytes());
        let d = h.finalize();
        Seed {
            seed: u64::from_le_bytes(d[0..8].try_into().expect("digest")),
            stream: u64::from_le_bytes(d[8..16].try_into().expect("digest")),
        }
    }

    /// Generator positioned at value index `index`.
    pub fn rng_at(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng.set_word_pos(2 * index as u128);
        rng
    }

    /// The `u64` at value index `index`.
    pub fn value_at(&self, index: u64) -> u64 {
        self.rng_at(index).next_u64()
    }

    /// `len` random bits, bit `i` taken from value `⌊i/64⌋`.
    pub fn bits(&self, len: usize) -> BitVec {
        let mut words = vec![0u64; len.div_ceil(64)];
        par::for_each_chunk_mut(&mut words, FILL_CHUNK, |ci, chunk| {
            let mut rng = self.rng_at((ci * FILL_CHUNK) as u64);
            for w in chunk.iter_mut() {
                *w = rng.next_u64();
            }
        });
        BitVec::from_words(len, words)
    }
}

const FILL_CHUNK: usize = 4096;

/// `floor(p · 2^64)` for `0 < p < 1`.
fn probability_threshold(p: &BigRational) -> Result<u64> {
    if !p.is_positive() || p >= &BigRational::one() {
        return Err(WmError::InvalidArgument(format!(
            "inclusion probability must lie in (0, 1), got {p}"
        )));
    }
    let scaled = (p.numer() << 64u32).div_floor(p.denom());
    Ok(scaled.to_u64().expect("p < 1"))
}

/// Includes each `n ∈ [1, N]` independently with probability `p`, using the
/// value at index `n` of the seed's stream.
pub fn random_normal(n: usize, seed: Seed, p: &BigRational) -> Result<IntegerSet> {
    if n == 0 {
        return Err(WmError::InvalidArgument("horizon must be positive".into()));
    }
    let threshold = probability_threshold(p)?;
    let mut words = vec![0u64; n.div_ceil(64)];
    par::for_each_chunk_mut(&mut words, FILL_CHUNK / 64, |ci, chunk| {
        let first = ci * FILL_CHUNK + 1;
        let mut rng = seed.rng_at(first as u64);
        for (wi, w) in chunk.iter_mut().enumerate() {
            let mut acc = 0u64;
            for b in 0..64 {
                let m = first + wi * 64 + b;
                if m > n {
                    break;
                }
                if rng.next_u64() < threshold {
                    acc |= 1 << b;
                }
            }
            *w = acc;
        }
    });
    Ok(IntegerSet::from_bits(BitVec::from_words(n, words)))
}

/// Fair-coin set: [`random_normal`] with `p = 1/2`.
pub fn fair_coin(n: usize, seed: Seed) -> IntegerSet {
    random_normal(n, seed, &BigRational::new(1.into(), 2.into())).expect("p = 1/2 is valid")
}

/// Rotation number in fixed point plus a closed target interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianParams {
    /// `floor(α · 2^frac_bits)` for `α ∈ (0, 1)`.
    pub alpha: u128,
    pub frac_bits: u32,
    pub lower: BigRational,
    pub upper: BigRational,
}

/// `floor((√2 − 1) · 2^128)`.
pub fn sqrt2_minus_one_fixed() -> u128 {
    let two_pow_256 = BigUint::one() << 256u32;
    let root = (two_pow_256 * 2u32).sqrt();
    let frac = root - (BigUint::one() << 128u32);
    frac.to_u128().expect("fraction below one")
}

impl SturmianParams {
    pub fn new(alpha: u128, frac_bits: u32, lower: BigRational, upper: BigRational) -> Result<Self> {
        if frac_bits == 0 || frac_bits > 128 {
            return Err(WmError::InvalidArgument(format!(
                "fractional bits must be in 1..=128, got {frac_bits}"
            )));
        }
        if frac_bits < 128 && alpha >> frac_bits != 0 {
            return Err(WmError::InvalidArgument("alpha must be below one".into()));
        }
        if lower.is_negative() || lower >= upper || upper >= BigRational::one() {
            return Err(WmError::InvalidArgument(format!(
                "interval must satisfy 0 ≤ u < v < 1, got [{lower}, {upper}]"
            )));
        }
        Ok(SturmianParams {
            alpha,
            frac_bits,
            lower,
            upper,
        })
    }

    /// `α = √2 − 1` at 128 bits with the given interval.
    pub fn with_interval(lower: BigRational, upper: BigRational) -> Result<Self> {
        Self::new(sqrt2_minus_one_fixed(), 128, lower, upper)
    }

    /// `α = √2 − 1`, interval `[2/5, 3/5]`.
    pub fn standard() -> Self {
        Self::with_interval(
            BigRational::new(2.into(), 5.into()),
            BigRational::new(3.into(), 5.into()),
        )
        .expect("valid interval")
    }

    /// Parses a hex fraction; the fractional precision is four bits per digit.
    pub fn alpha_from_hex(hex: &str) -> Result<(u128, u32)> {
        let h = hex.trim().trim_start_matches("0x");
        if h.is_empty() || h.len() > 32 {
            return Err(WmError::InvalidArgument(format!(
                "alpha hex must have 1..=32 digits, got {}",
                h.len()
            )));
        }
        let v = u128::from_str_radix(h, 16)
            .map_err(|e| WmError::InvalidArgument(format!("alpha hex: {e}")))?;
        Ok((v, 4 * h.len() as u32))
    }

    fn scale(&self) -> BigInt {
        BigInt::one() << self.frac_bits
    }

    /// Inclusive thresholds `ceil(u·2^b)` and `floor(v·2^b)`.
    fn thresholds(&self) -> (u128, u128) {
        let s = self.scale();
        let lo = (self.lower.numer() * &s).div_ceil(self.lower.denom());
        let hi = (self.upper.numer() * &s).div_floor(self.upper.denom());
        (lo.to_u128().expect("below 2^128"), hi.to_u128().expect("below 2^128"))
    }

    /// `frac(α·n)` in fixed point.
    #[inline]
    pub fn frac_fixed(&self, n: u64) -> u128 {
        let prod = (n as u128).wrapping_mul(self.alpha);
        if self.frac_bits == 128 {
            prod
        } else {
            prod & ((1u128 << self.frac_bits) - 1)
        }
    }

    pub fn check_precision(&self, horizon: usize) -> Result<()> {
        let log2 = usize::BITS - horizon.leading_zeros();
        let needed = log2 + 64;
        if self.frac_bits < needed {
            return Err(WmError::PrecisionInsufficient {
                bits: self.frac_bits,
                needed,
            });
        }
        Ok(())
    }
}

/// `{n ≤ N : frac(α·n) ∈ [u, v]}` evaluated exactly in fixed point.
pub fn sturmian(n: usize, params: &SturmianParams) -> Result<IntegerSet> {
    params.check_precision(n)?;
    let (lo, hi) = params.thresholds();
    let mut words = vec![0u64; n.div_ceil(64)];
    par::for_each_chunk_mut(&mut words, 64, |ci, chunk| {
        for (wi, w) in chunk.iter_mut().enumerate() {
            let base = (ci * 64 + wi) * 64;
            let mut acc = 0u64;
            for b in 0..64 {
                let m = base + b + 1;
                if m > n {
                    break;
                }
                let f = params.frac_fixed(m as u64);
                if f >= lo && f <= hi {
                    acc |= 1 << b;
                }
            }
            *w = acc;
        }
    });
    Ok(IntegerSet::from_bits(BitVec::from_words(n, words)))
}

/// `{n ≤ N : n mod m ∈ R}`.
pub fn periodic_set(n: usize, modulus: usize, residues: &[usize]) -> Result<IntegerSet> {
    if modulus == 0 {
        return Err(WmError::InvalidArgument("modulus must be positive".into()));
    }
    if let Some(r) = residues.iter().find(|&&r| r >= modulus) {
        return Err(WmError::InvalidArgument(format!(
            "residue {r} not in [0, {modulus})"
        )));
    }
    let mut mask = vec![false; modulus];
    for &r in residues {
        mask[r] = true;
    }
    Ok(IntegerSet::from_predicate(n, |k| mask[k % modulus]))
}
