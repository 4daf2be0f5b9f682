//! Text and binary set formats.
//!
//! Text: `#` comment lines, then `horizon <N>`, then ascending members one
//! per line. Binary: `WMS1`, the horizon as a little-endian `u64`, then
//! `ceil(N/8)` bytes with bit `n − 1` (LSB-first within each byte) set iff
//! `n ∈ A`.

use std::io::{BufRead, Read, Write};

use super::bits::BitVec;
use super::intset::IntegerSet;
use crate::error::{Result, WmError};

pub const BINARY_MAGIC: &[u8; 4] = b"WMS1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetFormat {
    Text,
    Binary,
}

impl std::str::FromStr for SetFormat {
    type Err = WmError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(SetFormat::Text),
            "binary" => Ok(SetFormat::Binary),
            other => Err(WmError::InvalidArgument(format!("unknown set format {other:?}"))),
        }
    }
}

pub fn write_text<W: Write>(set: &IntegerSet, mut w: W) -> Result<()> {
    let mut out = String::with_capacity(16 + set.len() * 8);
    out.push_str(&format!("horizon {}\n", set.horizon()));
    for m in set.iter() {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    w.write_all(out.as_bytes())?;
    Ok(())
}

pub fn read_text<R: BufRead>(r: R) -> Result<IntegerSet> {
    let mut horizon: Option<usize> = None;
    let mut bits = BitVec::zeros(0);
    let mut last = 0usize;
    for (i, line) in r.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        match horizon {
            None => {
                let n = t
                    .strip_prefix("horizon")
                    .map(str::trim)
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| WmError::Parse {
                        line: lineno,
                        message: format!("expected `horizon <N>` with N ≥ 1, found {t:?}"),
                    })?;
                horizon = Some(n);
                bits = BitVec::zeros(n);
            }
            Some(n) => {
                let m: usize = t.parse().map_err(|_| WmError::Parse {
                    line: lineno,
                    message: format!("expected a member integer, found {t:?}"),
                })?;
                if m == 0 || m > n {
                    return Err(WmError::Parse {
                        line: lineno,
                        message: format!("member {m} outside [1, {n}]"),
                    });
                }
                if m <= last {
                    return Err(WmError::Parse {
                        line: lineno,
                        message: format!("members must be strictly ascending ({m} after {last})"),
                    });
                }
                last = m;
                bits.set(m - 1, true);
            }
        }
    }
    if horizon.is_none() {
        return Err(WmError::Parse {
            line: 0,
            message: "missing `horizon <N>` line".into(),
        });
    }
    Ok(IntegerSet::from_bits(bits))
}

pub fn write_binary<W: Write>(set: &IntegerSet, mut w: W) -> Result<()> {
    let n = set.horizon();
    let mut out = Vec::with_capacity(12 + n.div_ceil(8));
    out.extend_from_slice(BINARY_MAGIC);
    out.extend_from_slice(&(n as u64).to_le_bytes());
    let words = set.bits().words();
    for i in 0..n.div_ceil(8) {
        out.push((words[i / 8] >> (8 * (i % 8))) as u8);
    }
    w.write_all(&out)?;
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<IntegerSet> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    if buf.len() < 12 || &buf[..4] != BINARY_MAGIC {
        return Err(WmError::Corrupt("missing WMS1 magic".into()));
    }
    let n = u64::from_le_bytes(buf[4..12].try_into().expect("8 bytes"));
    let n = usize::try_from(n).map_err(|_| WmError::Corrupt("horizon too large".into()))?;
    if n == 0 {
        return Err(WmError::Corrupt("horizon must be positive".into()));
    }
    let body = &buf[12..];
    if body.len() != n.div_ceil(8) {
        return Err(WmError::Corrupt(format!(
            "expected {} payload bytes, found {}",
            n.div_ceil(8),
            body.len()
        )));
    }
    if n % 8 != 0 && body[body.len() - 1] >> (n % 8) != 0 {
        return Err(WmError::Corrupt("bits set beyond horizon".into()));
    }
    let mut words = vec![0u64; n.div_ceil(64)];
    for (i, &b) in body.iter().enumerate() {
        words[i / 8] |= (b as u64) << (8 * (i % 8));
    }
    Ok(IntegerSet::from_bits(BitVec::from_words(n, words)))
}

/// Reads either format. Input that looks binary (a `WMS` prefix, NUL bytes or
/// invalid UTF-8) without the exact magic is reported as corrupt.
pub fn read_auto(bytes: &[u8]) -> Result<IntegerSet> {
    if bytes.starts_with(BINARY_MAGIC) {
        return read_binary(bytes);
    }
    if bytes.starts_with(b"WMS") || bytes.contains(&0) || std::str::from_utf8(bytes).is_err() {
        let head: Vec<u8> = bytes.iter().take(4).copied().collect();
        return Err(WmError::Corrupt(format!("bad magic {head:?}, expected \"WMS1\"")));
    }
    read_text(bytes)
}

pub fn write(set: &IntegerSet, format: SetFormat) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    match format {
        SetFormat::Text => write_text(set, &mut out)?,
        SetFormat::Binary => write_binary(set, &mut out)?,
    }
    Ok(out)
}
