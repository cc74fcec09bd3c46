//! Exact counts `m_kl(n)` of `k×l` incidence matrices with `n` ones, and
//! their total `F(n)`, by independent routes.
//!
//! * inclusion-exclusion over sub-grids (`m_mobius`, `count_table`, `f_via_msum`)
//! * Stirling numbers of both kinds (`m_stirling`, `f_via_stirling`)
//! * a positive series truncated with rigorous rational tail bounds
//!   ([`bounds`])
//! * brute-force enumeration of small grids ([`brute`])

pub mod bounds;
pub mod brute;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{binomial_u64, factorial};
use crate::stirling::StirlingCache;

pub use bounds::{default_truncation, f_positive_bounds, BoundedValue};

/// All nonzero-eligible `m_kl(n)` for one weight `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    n: usize,
    entries: BTreeMap<(usize, usize), BigUint>,
}

impl CountTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `m_kl(n)`, zero outside the stored region.
    pub fn get(&self, k: usize, l: usize) -> BigUint {
        self.entries.get(&(k, l)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), BigUint> {
        &self.entries
    }

    /// `F(n)`.
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }
}

fn signed(x: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x)
}

fn into_nat(x: BigInt, context: &'static str) -> Result<BigUint> {
    if x.is_negative() {
        return Err(Error::NegativeResult { context });
    }
    Ok(x.into_parts().1)
}

fn exact_div(num: BigInt, den: &BigUint, context: &'static str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&signed(den.clone()));
    if !r.is_zero() {
        return Err(Error::InexactDivision { context });
    }
    Ok(q)
}

fn alternating(sign_exp: usize, x: BigInt) -> BigInt {
    if sign_exp % 2 == 0 {
        x
    } else {
        -x
    }
}

/// `m_kl(n) = Σ_{i≤k} Σ_{j≤l} (-1)^{k+l-i-j} C(k,i) C(l,j) C(ij,n)`.
///
/// Accumulated in signed arithmetic; the sign of the result is checked.
pub fn m_mobius(k: usize, l: usize, n: usize) -> Result<BigUint> {
    if k * l < n {
        return Ok(BigUint::zero());
    }
    let row_k: Vec<BigInt> = (0..=k).map(|i| signed(binomial_u64(k as u64, i))).collect();
    let row_l: Vec<BigInt> = (0..=l).map(|j| signed(binomial_u64(l as u64, j))).collect();
    let mut total = BigInt::zero();
    for i in 0..=k {
        let mut inner = BigInt::zero();
        for j in 0..=l {
            let c = binomial_u64((i * j) as u64, n);
            if c.is_zero() {
                continue;
            }
            inner += alternating(l - j, &row_l[j] * signed(c));
        }
        total += alternating(k - i, &row_k[i] * inner);
    }
    into_nat(total, "m_mobius")
}

/// `m_kl(n) = (k! l! / n!) Σ_{r=1}^{n} s(n,r) S(r,k) S(r,l)`.
///
/// Outside `1 ≤ k, l ≤ n` the count is zero (or one for the empty matrix
/// at `n = 0`). The cache must reach `n`.
pub fn m_stirling(cache: &StirlingCache, k: usize, l: usize, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Ok(if k == 0 && l == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    if k == 0 || l == 0 || k > n || l > n {
        return Ok(BigUint::zero());
    }
    let mut sum = BigInt::zero();
    for r in k.max(l)..=n {
        let sk = cache.second(r, k)?;
        let sl = cache.second(r, l)?;
        sum += cache.first(n, r)? * signed(sk * sl);
    }
    let scaled = sum * signed(factorial(k) * factorial(l));
    let q = exact_div(scaled, &factorial(n), "m_stirling")?;
    into_nat(q, "m_stirling")
}

/// Every `m_kl(n)` with `1 ≤ k, l ≤ n`, `kl ≥ n`, by inclusion-exclusion.
///
/// The double alternating sum separates: with
/// `A(i, l) = Σ_j (-1)^{l-j} C(l,j) C(ij,n)` the table costs O(n³) big
/// operations instead of O(n⁴).
pub fn count_table(n: usize) -> Result<CountTable> {
    let mut entries = BTreeMap::new();
    if n == 0 {
        entries.insert((0, 0), BigUint::one());
        return Ok(CountTable { n, entries });
    }
    let mut choose_n: Vec<BigInt> = vec![BigInt::zero(); n * n + 1];
    let mut c = BigUint::one(); // C(n, n)
    for (x, slot) in choose_n.iter_mut().enumerate().skip(n) {
        if x > n {
            // C(x, n) = C(x-1, n) · x / (x - n)
            c = c * x / (x - n);
        }
        *slot = signed(c.clone());
    }
    let pascal: Vec<Vec<BigInt>> = (0..=n)
        .map(|a| (0..=a).map(|b| signed(binomial_u64(a as u64, b))).collect())
        .collect();

    // partial[i][l] = Σ_{j≤l} (-1)^{l-j} C(l,j) C(ij,n)
    let partial: Vec<Vec<BigInt>> = (0..=n)
        .into_par_iter()
        .map(|i| {
            (0..=n)
                .map(|l| {
                    (0..=l)
                        .map(|j| alternating(l - j, &pascal[l][j] * &choose_n[i * j]))
                        .sum()
                })
                .collect()
        })
        .collect();

    let cells: Vec<((usize, usize), BigInt)> = (1..=n)
        .into_par_iter()
        .flat_map_iter(|k| {
            let partial = &partial;
            let pascal = &pascal;
            (1..=n).filter(move |l| k * l >= n).map(move |l| {
                let m: BigInt = (0..=k)
                    .map(|i| alternating(k - i, &pascal[k][i] * &partial[i][l]))
                    .sum();
                ((k, l), m)
            })
        })
        .collect();
    for (key, m) in cells {
        entries.insert(key, into_nat(m, "count_table")?);
    }
    Ok(CountTable { n, entries })
}

/// `F(n) = Σ_{k,l ≤ n} m_kl(n)`, with `F(0) = 1`.
pub fn f_via_msum(n: usize) -> Result<BigUint> {
    Ok(count_table(n)?.total())
}

/// `F(n) = (1/n!) Σ_{k=1}^{n} s(n,k) P(k)²`, with `F(0) = 1`.
pub fn f_via_stirling(cache: &StirlingCache, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::one());
    }
    let mut sum = BigInt::zero();
    for k in 1..=n {
        let p = cache.ordered_bell(k)?;
        sum += cache.first(n, k)? * signed(p * p);
    }
    let q = exact_div(sum, &factorial(n), "f_via_stirling")?;
    into_nat(q, "f_via_stirling")
}

/// `F(n)` by the default route.
pub fn f_count(n: usize) -> Result<BigUint> {
    f_via_stirling(&StirlingCache::new(n), n)
}

/// Checks `Σ_{i≤k} Σ_{j≤l} C(k,i) C(l,j) m_ij(n) = C(kl,n)` exactly.
pub fn verify_column_identity(k: usize, l: usize, n: usize) -> Result<bool> {
    let mut lhs = BigUint::zero();
    for i in 0..=k {
        let ci = binomial_u64(k as u64, i);
        for j in 0..=l {
            let m = m_mobius(i, j, n)?;
            if m.is_zero() {
                continue;
            }
            lhs += &ci * binomial_u64(l as u64, j) * m;
        }
    }
    Ok(lhs == binomial_u64((k * l) as u64, n))
}

/// Checks `k! S(n,k) · l! S(n,l) = Σ_{r=1}^{n} r! S(n,r) m_kl(r)` exactly,
/// with `m_kl(r)` taken from inclusion-exclusion.
pub fn verify_inversion(cache: &StirlingCache, n: usize, k: usize, l: usize) -> Result<bool> {
    let lhs = factorial(k) * cache.second(n, k)? * factorial(l) * cache.second(n, l)?;
    let mut rhs = BigUint::zero();
    for r in 1..=n {
        let m = m_mobius(k, l, r)?;
        if m.is_zero() {
            continue;
        }
        rhs += factorial(r) * cache.second(n, r)? * m;
    }
    Ok(lhs == rhs)
}
