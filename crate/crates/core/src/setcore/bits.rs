//! Dense bit-vector with word-level windowed reads.

/// Fixed-length bit-vector. Storage bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec(len={}, ones={})", self.len, self.count_ones())
    }
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec {
            len,
            words: vec![u64::MAX; len.div_ceil(64)],
        };
        v.clear_tail();
        v
    }

    /// Builds a vector from raw words; excess bits are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(len.div_ceil(64), 0);
        let mut v = BitVec { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Popcount of bits `[0, n)`.
    pub fn count_ones_prefix(&self, n: usize) -> usize {
        let n = n.min(self.len);
        let full = n / 64;
        let mut c: usize = self.words[..full]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum();
        let r = n % 64;
        if r != 0 {
            c += (self.words[full] & ((1u64 << r) - 1)).count_ones() as usize;
        }
        c
    }

    /// The 64 bits `[start, start + 64)` packed LSB-first; bits past the end
    /// read as zero.
    #[inline]
    pub fn window(&self, start: usize) -> u64 {
        let w = start >> 6;
        let b = start & 63;
        let lo = self.words.get(w).copied().unwrap_or(0);
        if b == 0 {
            lo
        } else {
            let hi = self.words.get(w + 1).copied().unwrap_or(0);
            (lo >> b) | (hi << (64 - b))
        }
    }

    /// Indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let t = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    /// First set bit at index `>= from`.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from >> 6;
        let mut word = self.words[wi] & (u64::MAX << (from & 63));
        loop {
            if word != 0 {
                return Some(wi * 64 + word.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            word = self.words[wi];
        }
    }

    /// Keeps only bits `[0, len)`.
    pub fn truncated(&self, len: usize) -> BitVec {
        let len = len.min(self.len);
        BitVec::from_words(len, self.words[..len.div_ceil(64)].to_vec())
    }

    /// Bits `[offset, offset + len)` as a new vector.
    pub fn slice(&self, offset: usize, len: usize) -> BitVec {
        let words = (0..len.div_ceil(64))
            .map(|j| self.window(offset + 64 * j))
            .collect();
        BitVec::from_words(len, words)
    }

    /// Combines word windows `[s + 64 j, s + 64 j + 64)` for each `s` in
    /// `starts` using `op`, counting the set bits of the result over the first
    /// `n` positions.
    pub fn count_combined<F>(&self, starts: &[usize], n: usize, init: u64, op: F) -> u64
    where
        F: Fn(u64, u64) -> u64,
    {
        let nwords = n.div_ceil(64);
        let mut total = 0u64;
        for j in 0..nwords {
            let mut acc = init;
            for &s in starts {
                acc = op(acc, self.window(s + 64 * j));
            }
            if j + 1 == nwords && !n.is_multiple_of(64) {
                acc &= (1u64 << (n % 64)) - 1;
            }
            total += acc.count_ones() as u64;
        }
        total
    }
}
