//! Pearson chi-square goodness of fit.

use statrs::distribution::{ChiSquared, ContinuousCDF};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

impl ChiSquareTest {
    /// True when the null hypothesis survives at level `alpha`.
    pub fn accepts(&self, alpha: f64) -> bool {
        self.p_value >= alpha
    }
}

/// Goodness of fit of `observed` against `expected` counts (same length, at
/// least two categories, all expected counts positive).
pub fn chi_square(observed: &[u64], expected: &[f64]) -> ChiSquareTest {
    assert_eq!(observed.len(), expected.len());
    assert!(observed.len() >= 2, "need at least two categories");
    let statistic = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let df = observed.len() - 1;
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    ChiSquareTest {
        statistic,
        df,
        p_value: dist.sf(statistic),
    }
}

/// Goodness of fit against the uniform distribution over the categories.
pub fn chi_square_uniform(observed: &[u64]) -> ChiSquareTest {
    let total: u64 = observed.iter().sum();
    let e = total as f64 / observed.len() as f64;
    chi_square(observed, &vec![e; observed.len()])
}
