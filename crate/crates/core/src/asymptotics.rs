//! Log-space evaluation of the leading asymptotic forms for `P(n)`,
//! `F(n)` and `m_kl(n)`, plus the falling-factorial ratio.

use std::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{falling_factorial, ln_factorial, ln_nat};
use crate::saddle::{saddle_solve, SaddlePoint};

/// Largest `ln x` for which `x` is a finite double.
const LN_MAX: f64 = 709.782_712_893_384;
/// Smallest `ln x` for which `x` is a nonzero double.
const LN_MIN: f64 = -744.440_071_921_381;

/// A positive magnitude carried by its natural log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogEstimate {
    pub log_value: f64,
    /// `exp(log_value)` when it is representable.
    pub value: Option<f64>,
}

impl LogEstimate {
    pub fn from_log(log_value: f64) -> Self {
        let value = (log_value.is_finite() && (LN_MIN..LN_MAX).contains(&log_value))
            .then(|| log_value.exp());
        LogEstimate { log_value, value }
    }

    /// `ln(self / exact)`.
    pub fn log_ratio_to(&self, exact: &BigUint) -> f64 {
        self.log_value - ln_nat(exact)
    }

    /// `self / exact`, computed in log space.
    pub fn ratio_to(&self, exact: &BigUint) -> f64 {
        self.log_ratio_to(exact).exp()
    }
}

/// `P(n) ~ (n!/2) (1/ln 2)^{n+1}`.
pub fn p_asym(n: usize) -> Result<LogEstimate> {
    if n == 0 {
        return Err(Error::Precondition("p_asym needs n ≥ 1".into()));
    }
    let log = ln_factorial(n) - LN_2 - (n as f64 + 1.0) * LN_2.ln();
    Ok(LogEstimate::from_log(log))
}

/// `F(n) ~ (n!/4) e^{-(ln 2)²/2} (ln 2)^{-(2n+2)}`.
pub fn f_asym(n: usize) -> Result<LogEstimate> {
    if n == 0 {
        return Err(Error::Precondition("f_asym needs n ≥ 1".into()));
    }
    let log = ln_factorial(n) - 2.0 * LN_2 - 0.5 * LN_2 * LN_2 - (2.0 * n as f64 + 2.0) * LN_2.ln();
    Ok(LogEstimate::from_log(log))
}

/// `x(1-e^{-1/x}) ln(1-e^{-1/x}) + ln x - e^{-1/x}`
fn w(x: f64) -> f64 {
    let e = (-1.0 / x).exp();
    let one_minus = -(-1.0 / x).exp_m1();
    x * one_minus * one_minus.ln() + x.ln() - e
}

/// `ln sqrt( x(1-e^{-1/x}) / (x(1-e^{-1/x}) - e^{-1/x}) )`
fn ln_v(x: f64) -> f64 {
    let e = (-1.0 / x).exp();
    let a = -x * (-1.0 / x).exp_m1();
    0.5 * (a.ln() - (a - e).ln())
}

/// Leading-order `m_kl(n)` with its two saddle points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixAsymptotic {
    pub estimate: LogEstimate,
    pub row_saddle: SaddlePoint,
    pub col_saddle: SaddlePoint,
}

/// `m_kl(n) ~ (n^{2n}/n!) e^{n w(σ)} v(σ) e^{n w(τ)} v(τ) e^{-1/(2στ)}`
/// with `σ(1-e^{-1/σ}) = k/n` and `τ(1-e^{-1/τ}) = l/n`.
pub fn m_asym(k: usize, l: usize, n: usize) -> Result<MatrixAsymptotic> {
    if k == 0 || l == 0 || k >= n || l >= n {
        return Err(Error::Precondition(format!(
            "m_asym needs 1 ≤ k, l < n, got k = {k}, l = {l}, n = {n}"
        )));
    }
    let nf = n as f64;
    let row_saddle = saddle_solve(k as f64 / nf)?;
    let col_saddle = saddle_solve(l as f64 / nf)?;
    let (s, t) = (row_saddle.sigma, col_saddle.sigma);
    // each side summed separately so swapping k and l is bit-for-bit symmetric
    let side = |x: f64| nf * w(x) + ln_v(x);
    let log = 2.0 * nf * nf.ln() - ln_factorial(n) + (side(s) + side(t)) - 1.0 / (2.0 * s * t);
    Ok(MatrixAsymptotic {
        estimate: LogEstimate::from_log(log),
        row_saddle,
        col_saddle,
    })
}

/// `(z)_n / z^n` as an exact rational in `[0, 1]`.
pub fn falling_ratio_exact(z: &BigUint, n: usize) -> Result<BigRational> {
    if &BigUint::from(n) > z {
        return Err(Error::Precondition(format!(
            "need z ≥ n, got z = {z}, n = {n}"
        )));
    }
    if n == 0 {
        return Ok(BigRational::from_integer(1.into()));
    }
    let num = BigInt::from_biguint(Sign::Plus, falling_factorial(z, n));
    let den = BigInt::from_biguint(Sign::Plus, z.pow(n as u32));
    Ok(BigRational::new(num, den))
}

/// Leading-order `(z)_n / z^n ≈ e^{-n²/(2z)}`, meaningful for `z > n`.
pub fn falling_ratio_approx(z: f64, n: usize) -> f64 {
    let n = n as f64;
    (-n * n / (2.0 * z)).exp()
}
