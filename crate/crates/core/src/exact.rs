//! Exact big-integer primitives: factorials, binomials, falling factorials,
//! ordered Bell numbers by recurrence, and the natural log of a big integer.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `n!`
pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `C(a, b)`, zero when `b > a`.
///
/// Uses the multiplicative formula with an exact division at every step, so
/// a large first argument (`a = k·l`) never needs a Pascal triangle.
pub fn binomial(a: &BigUint, b: usize) -> BigUint {
    let b_big = BigUint::from(b);
    if &b_big > a {
        return BigUint::zero();
    }
    // C(a, b) = C(a, a - b); iterate over the smaller one.
    let complement = a - &b_big;
    let steps = if complement < b_big {
        complement.to_usize().unwrap_or(b)
    } else {
        b
    };
    let mut acc = BigUint::one();
    let mut factor = a.clone();
    for i in 1..=steps as u64 {
        // acc * (a - i + 1) is divisible by i because acc = C(a, i - 1).
        acc *= &factor;
        acc /= i;
        factor -= 1u32;
    }
    acc
}

/// Convenience wrapper for `binomial` on machine integers.
pub fn binomial_u64(a: u64, b: usize) -> BigUint {
    binomial(&BigUint::from(a), b)
}

/// `(z)_n = z (z - 1) ... (z - n + 1)`, zero when `z < n`.
pub fn falling_factorial(z: &BigUint, n: usize) -> BigUint {
    if &BigUint::from(n) > z {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    let mut factor = z.clone();
    for _ in 0..n {
        acc *= &factor;
        factor -= 1u32;
    }
    acc
}

/// Ordered Bell numbers `P(0..=n_max)` from `P(m) = Σ_{j=1}^{m} C(m, j) P(m - j)`.
///
/// Independent of the Stirling tables; used as a second computation path.
pub fn ordered_bell_recurrence(n_max: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    p.push(BigUint::one());
    for m in 1..=n_max {
        let mut row = BigUint::one(); // C(m, 0)
        let mut sum = BigUint::zero();
        for j in 1..=m {
            row = row * (m - j + 1) / j;
            sum += &row * &p[m - j];
        }
        p.push(sum);
    }
    p
}

/// Natural logarithm of a positive big integer, from its leading 64 bits
/// plus the binary exponent. Returns `-inf` for zero.
pub fn ln_nat(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return x.to_u64().expect("fits in 64 bits").to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln n!`. Exact route below 64, Stirling series above.
pub fn ln_factorial(n: usize) -> f64 {
    if n < 64 {
        return ln_nat(&factorial(n));
    }
    let x = n as f64 + 1.0;
    // ln Γ(x) for x ≥ 65; series truncated after the x^-9 term.
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 / 1188.0))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}
