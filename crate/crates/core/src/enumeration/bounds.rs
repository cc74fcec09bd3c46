//! Rigorous rational brackets for `F(n)` from the positive series
//! `F(n) = Σ_{k,l ≥ 0} C(kl, n) / 2^{k+l+2}`.
//!
//! The truncated square `k, l ≤ K` gives the lower end. The excluded region
//! is majorized with `C(kl, n) ≤ (kl)^n / n!`, which factors into one-sided
//! tails `T(K) ≥ Σ_{k>K} k^n / 2^{k+1}` and the full sum
//! `Σ_{k≥0} k^n / 2^{k+1} = P(n)`:
//!
//! `tail ≤ (2·T(K)·P(n) + T(K)²) / n!`
//!
//! with `T(K) = (K^n / 2^K) · (e^{n/K} / 2) / (2 - e^{n/K})`, valid for
//! `K > n / ln 2`. The exponential is replaced by a rational upper bound so
//! the whole bracket stays exact.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, ordered_bell_recurrence};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedValue {
    lower: BigRational,
    upper: BigRational,
}

impl BoundedValue {
    pub fn new(lower: BigRational, upper: BigRational) -> Result<Self> {
        if lower > upper {
            return Err(Error::Precondition(format!(
                "empty interval [{lower}, {upper}]"
            )));
        }
        Ok(BoundedValue { lower, upper })
    }

    pub fn lower(&self) -> &BigRational {
        &self.lower
    }

    pub fn upper(&self) -> &BigRational {
        &self.upper
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigUint) -> bool {
        let x = BigRational::from_integer(to_int(x.clone()));
        self.lower <= x && x <= self.upper
    }

    /// The only integer inside the interval, if there is exactly one.
    pub fn pinned_integer(&self) -> Option<BigUint> {
        let lo = self.lower.ceil().to_integer();
        let hi = self.upper.floor().to_integer();
        if lo == hi {
            lo.to_biguint()
        } else {
            None
        }
    }
}

fn to_int(x: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x)
}

fn rat(x: BigUint) -> BigRational {
    BigRational::from_integer(to_int(x))
}

/// Truncation used when the caller gives none: `max(4n, 64)`.
pub fn default_truncation(n: usize) -> usize {
    (4 * n).max(64)
}

/// Rational upper bound on `e^x` for `0 ≤ x < 1`: Taylor sum through
/// `x^{m-1}/(m-1)!` plus `3·x^m/m!`, since `e^ξ < 3` on the remainder.
fn exp_upper(x: &BigRational, m: u32) -> BigRational {
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for j in 1..=m {
        sum += &term;
        term = term * x / BigRational::from_integer(BigInt::from(j));
    }
    sum + term * BigRational::from_integer(BigInt::from(3))
}

/// Upper bound on `Σ_{k>K} k^n / 2^{k+1}`.
fn one_sided_tail(n: usize, trunc: usize) -> Result<BigRational> {
    let x = BigRational::new(BigInt::from(n), BigInt::from(trunc));
    let two = BigRational::from_integer(BigInt::from(2));
    if x >= BigRational::one() {
        return Err(Error::Precondition(format!(
            "truncation K = {trunc} must exceed n / ln 2 for n = {n}"
        )));
    }
    let e = exp_upper(&x, 40);
    if e >= two {
        return Err(Error::Precondition(format!(
            "truncation K = {trunc} must exceed n / ln 2 for n = {n}"
        )));
    }
    let head = BigRational::new(
        to_int(BigUint::from(trunc).pow(n as u32)),
        to_int(BigUint::one() << trunc),
    );
    Ok(head * (&e / &two) / (two - e))
}

/// Brackets `F(n)` by the positive series truncated at `k, l ≤ trunc`.
pub fn f_positive_bounds(n: usize, trunc: usize) -> Result<BoundedValue> {
    if n == 0 {
        return Err(Error::Precondition(
            "positive-series bounds need n ≥ 1".into(),
        ));
    }
    let tail = one_sided_tail(n, trunc)?;

    // C(x, n) for x ≤ trunc², by C(x, n) = C(x-1, n) · x / (x - n).
    let top = trunc * trunc;
    let mut choose_n = vec![BigUint::zero(); top + 1];
    if n <= top {
        let mut c = BigUint::one();
        choose_n[n] = c.clone();
        for x in n + 1..=top {
            c = c * x / (x - n);
            choose_n[x] = c.clone();
        }
    }

    // lower = Σ_{k,l ≤ K} 2^{2K-k-l} C(kl, n) / 2^{2K+2}
    let mut scaled = BigUint::zero();
    for k in 0..=trunc {
        for l in 0..=trunc {
            let c = &choose_n[k * l];
            if !c.is_zero() {
                scaled += c << (2 * trunc - k - l);
            }
        }
    }
    let lower = BigRational::new(to_int(scaled), to_int(BigUint::one() << (2 * trunc + 2)));

    let p = rat(ordered_bell_recurrence(n).swap_remove(n));
    let two = BigRational::from_integer(BigInt::from(2));
    let excess = (two * &tail * p + &tail * &tail) / rat(factorial(n));
    let upper = &lower + excess;
    BoundedValue::new(lower, upper)
}
