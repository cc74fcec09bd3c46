//! Deterministic self-check against the known values of `F(n)` and the
//! exact identities tying the counting routes together.

use num_bigint::BigUint;
use serde::Serialize;

use crate::enumeration::{f_via_msum, f_via_stirling, verify_column_identity, verify_inversion};
use crate::exact::{factorial, ordered_bell_recurrence};
use crate::stirling::StirlingCache;

/// `F(1..=10)`.
pub const KNOWN_F: [u64; 10] = [
    1, 4, 24, 196, 2016, 24976, 361792, 5997872, 111969552, 2324081728,
];

/// Largest `n` any check reads from the Stirling tables.
pub const REQUIRED_N_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn grid_check(name: &str, cells: impl Iterator<Item = (String, crate::Result<bool>)>) -> Check {
    let mut total = 0usize;
    let mut bad = Vec::new();
    for (label, outcome) in cells {
        total += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => bad.push(label),
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    if bad.is_empty() {
        check(name, true, format!("{total} cases"))
    } else {
        check(
            name,
            false,
            format!("{} of {total} failed: {}", bad.len(), bad.join("; ")),
        )
    }
}

/// Runs every check against `cache`, which must reach [`REQUIRED_N_MAX`].
pub fn run_verification(cache: &StirlingCache) -> VerifyReport {
    let mut checks = Vec::new();
    for (i, &want) in KNOWN_F.iter().enumerate() {
        let n = i + 1;
        let want = BigUint::from(want);
        for (method, got) in [
            ("stirling", f_via_stirling(cache, n)),
            ("msum", f_via_msum(n)),
        ] {
            let name = format!("F({n}) via {method}");
            checks.push(match got {
                Ok(v) if v == want => check(name, true, v.to_string()),
                Ok(v) => check(name, false, format!("got {v}, expected {want}")),
                Err(e) => check(name, false, e.to_string()),
            });
        }
    }

    checks.push(grid_check(
        "column identity k,l <= 6, n <= 12",
        (0..=12).flat_map(|n| {
            (0..=6).flat_map(move |k| {
                (0..=6).map(move |l| (format!("({k},{l},{n})"), verify_column_identity(k, l, n)))
            })
        }),
    ));

    checks.push(grid_check(
        "inversion identity k,l <= n <= 8",
        (1..=8).flat_map(|n| {
            (1..=n).flat_map(move |k| {
                (1..=n).map(move |l| {
                    (
                        format!("(n={n},k={k},l={l})"),
                        verify_inversion(cache, n, k, l),
                    )
                })
            })
        }),
    ));

    let recurrence = ordered_bell_recurrence(REQUIRED_N_MAX);
    checks.push(grid_check(
        "ordered Bell sum of S(n,k) k! vs recurrence",
        (0..=REQUIRED_N_MAX).map(|n| {
            let sum: crate::Result<BigUint> = (0..=n)
                .map(|k| cache.second(n, k).map(|s| s * factorial(k)))
                .sum();
            (format!("n={n}"), sum.map(|s| s == recurrence[n]))
        }),
    ));

    VerifyReport { checks }
}
