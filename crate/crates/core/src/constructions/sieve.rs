/// Smallest-prime-factor table on `[0, limit]` built by the linear sieve.
#[derive(Clone, Debug)]
pub struct Sieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

/// Largest supported limit.
pub const SIEVE_LIMIT: usize = 1 << 31;

impl Sieve {
    pub fn new(limit: usize) -> Self {
        assert!(limit <= SIEVE_LIMIT, "sieve limit {limit} above 2^31");
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Sieve { spf, primes }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Smallest prime factor of `n ≥ 2`.
    #[inline]
    pub fn spf(&self, n: usize) -> usize {
        self.spf[n] as usize
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factor(&self, mut n: usize) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf(n);
            n /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}
