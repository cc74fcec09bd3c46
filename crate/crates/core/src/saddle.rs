//! Positive root of `σ (1 - e^{-1/σ}) = κ` for `0 < κ < 1`.
//!
//! The left side increases from 0 to 1 on `σ > 0`, so the root is unique.
//! The equivalent logarithmic form `ln(1 - κ/σ) + 1/σ = 0` is exposed for
//! checking but loses accuracy as `κ → 0`, where `σ - κ` underflows
//! relative to `σ`.

use crate::error::{Error, Result};

const BRACKET_LO: f64 = 1e-9;
const BISECTION_STEPS: usize = 40;
const NEWTON_STEPS: usize = 60;
const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddlePoint {
    pub kappa: f64,
    pub sigma: f64,
    /// `σ (1 - e^{-1/σ}) - κ` at the returned σ.
    pub residual: f64,
}

impl SaddlePoint {
    /// `ln(1 - κ/σ) + 1/σ`.
    pub fn log_form_residual(&self) -> f64 {
        (-self.kappa / self.sigma).ln_1p() + 1.0 / self.sigma
    }
}

fn defect(sigma: f64, kappa: f64) -> f64 {
    // 1 - e^{-1/σ} via expm1 keeps precision for large σ.
    -sigma * (-1.0 / sigma).exp_m1() - kappa
}

fn slope(sigma: f64) -> f64 {
    let e = (-1.0 / sigma).exp();
    -(-1.0 / sigma).exp_m1() - e / sigma
}

pub fn saddle_solve(kappa: f64) -> Result<SaddlePoint> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::Precondition(format!(
            "kappa must lie in (0, 1), got {kappa}"
        )));
    }
    // σ ≈ 1 / (2(1 - κ)) as κ → 1
    let mut lo = BRACKET_LO.min(kappa);
    let mut hi = 1.0 / (2.0 * (1.0 - kappa)) + 2.0;
    debug_assert!(defect(lo, kappa) <= 0.0 && defect(hi, kappa) > 0.0);

    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if defect(mid, kappa) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let mut sigma = 0.5 * (lo + hi);
    let mut best = (sigma, defect(sigma, kappa));
    for _ in 0..NEWTON_STEPS {
        let f = defect(sigma, kappa);
        if f.abs() < best.1.abs() {
            best = (sigma, f);
        }
        if f == 0.0 {
            break;
        }
        if f > 0.0 {
            hi = hi.min(sigma);
        } else {
            lo = lo.max(sigma);
        }
        let mut next = sigma - f / slope(sigma);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == sigma {
            break;
        }
        sigma = next;
    }
    let (sigma, residual) = best;
    if residual.abs() > TOLERANCE {
        return Err(Error::NoConvergence { kappa, lo, hi });
    }
    Ok(SaddlePoint {
        kappa,
        sigma,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn peak_kappa_gives_inverse_log_two() {
        let s = saddle_solve(1.0 / (2.0 * LN_2)).unwrap();
        assert!((s.sigma - 1.0 / LN_2).abs() < 1e-10, "{}", s.sigma);
        assert!(s.residual.abs() <= 1e-12);
    }

    #[test]
    fn small_kappa_limit() {
        for kappa in [1e-3, 1e-5, 1e-8] {
            let s = saddle_solve(kappa).unwrap();
            assert!((s.sigma - kappa).abs() / kappa < 1e-12);
        }
    }

    #[test]
    fn kappa_point_nine_both_forms() {
        let s = saddle_solve(0.9).unwrap();
        assert!(s.residual.abs() <= 1e-12);
        let direct = s.sigma * (1.0 - (-1.0 / s.sigma).exp()) - 0.9;
        assert!(direct.abs() <= 1e-12);
        assert!(s.log_form_residual().abs() <= 1e-10);
    }

    #[test]
    fn rejects_outside_unit_interval() {
        for kappa in [0.0, 1.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(saddle_solve(kappa), Err(Error::Precondition(_))));
        }
    }

    #[test]
    fn near_one() {
        let s = saddle_solve(0.999).unwrap();
        assert!(s.residual.abs() <= 1e-12);
        assert!((s.sigma - 500.0).abs() < 1.0);
    }
}
