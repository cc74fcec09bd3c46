use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Triangular tables of Stirling numbers of both kinds and the ordered Bell
/// numbers, built once up to `n_max` and read-only afterwards.
#[derive(Debug, Clone)]
pub struct StirlingCache {
    n_max: usize,
    first: Vec<Vec<BigInt>>,
    second: Vec<Vec<BigUint>>,
    bell_ordered: Vec<BigUint>,
}

impl StirlingCache {
    pub fn new(n_max: usize) -> Self {
        let mut first: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        let mut second: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        first.push(vec![BigInt::one()]);
        second.push(vec![BigUint::one()]);
        for n in 0..n_max {
            // s(n+1, k) = s(n, k-1) - n s(n, k)
            // S(n+1, k) = k S(n, k) + S(n, k-1)
            let mut f = vec![BigInt::zero(); n + 2];
            let mut s = vec![BigUint::zero(); n + 2];
            for k in 1..=n + 1 {
                let prev_f = &first[n][k - 1];
                let prev_s = &second[n][k - 1];
                if k <= n {
                    f[k] = prev_f - &first[n][k] * BigInt::from(n);
                    s[k] = &second[n][k] * k + prev_s;
                } else {
                    f[k] = prev_f.clone();
                    s[k] = prev_s.clone();
                }
            }
            first.push(f);
            second.push(s);
        }
        let mut fact = BigUint::one();
        let mut factorials = vec![fact.clone()];
        for k in 1..=n_max {
            fact *= k;
            factorials.push(fact.clone());
        }
        let bell_ordered = second
            .iter()
            .map(|row| row.iter().zip(&factorials).map(|(s, f)| s * f).sum())
            .collect();
        StirlingCache {
            n_max,
            first,
            second,
            bell_ordered,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check(&self, n: usize, k: usize) -> Result<()> {
        if n > self.n_max || k > n {
            return Err(Error::OutOfRange {
                n,
                k,
                n_max: self.n_max,
            });
        }
        Ok(())
    }

    /// Signed Stirling number of the first kind `s(n, k)`.
    pub fn first(&self, n: usize, k: usize) -> Result<&BigInt> {
        self.check(n, k)?;
        Ok(&self.first[n][k])
    }

    /// Stirling number of the second kind `S(n, k)`.
    pub fn second(&self, n: usize, k: usize) -> Result<&BigUint> {
        self.check(n, k)?;
        Ok(&self.second[n][k])
    }

    /// Ordered Bell number `P(n) = Σ_k S(n, k) k!`.
    pub fn ordered_bell(&self, n: usize) -> Result<&BigUint> {
        self.check(n, 0)?;
        Ok(&self.bell_ordered[n])
    }

    pub fn ordered_bell_all(&self) -> &[BigUint] {
        &self.bell_ordered
    }

    /// Copy of this cache with `S(n, k)` replaced, leaving the derived
    /// ordered Bell numbers untouched. For fault-injection checks only.
    #[doc(hidden)]
    pub fn with_corrupted_second(&self, n: usize, k: usize, value: BigUint) -> Result<Self> {
        self.check(n, k)?;
        let mut out = self.clone();
        out.second[n][k] = value;
        Ok(out)
    }
}

/// `P(n)` through a freshly built cache.
pub fn ordered_bell(n: usize) -> BigUint {
    StirlingCache::new(n).bell_ordered.swap_remove(n)
}
