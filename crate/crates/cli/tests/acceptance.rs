//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p incmat-cli --test acceptance`.

use std::collections::HashMap;
use std::f64::consts::LN_2;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use incmat::asymptotics::{f_asym, m_asym};
use incmat::enumeration::brute::{all_incidence_matrices, brute_force_counts};
use incmat::enumeration::{
    count_table, default_truncation, f_positive_bounds, f_via_msum, f_via_stirling, m_mobius,
    m_stirling, verify_column_identity, verify_inversion,
};
use incmat::exact::{factorial, ordered_bell_recurrence};
use incmat::saddle::saddle_solve;
use incmat::sampler::stats::chi_square_uniform;
use incmat::sampler::{exact_acceptance, run_stats, sample_accepted};
use incmat::verify::KNOWN_F;
use incmat::{Nat, StirlingCache};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn within_budget(v: Verdict, elapsed: Duration, budget: Duration) -> Verdict {
    let in_time = elapsed <= budget;
    verdict(
        v.passed && in_time,
        format!(
            "{} [{:.2}s / {}s budget{}]",
            v.detail,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", OVER BUDGET" }
        ),
    )
}

fn sequence_reproduction() -> Verdict {
    let cache = StirlingCache::new(10);
    let mut bad = Vec::new();
    for (i, &want) in KNOWN_F.iter().enumerate() {
        let n = i + 1;
        let want = Nat::from(want);
        let s = f_via_stirling(&cache, n).ok();
        let m = f_via_msum(n).ok();
        if s.as_ref() != Some(&want) || m.as_ref() != Some(&want) {
            bad.push(format!("n={n}: stirling {s:?}, msum {m:?}"));
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            "F(1..10) exact by both methods".into()
        } else {
            bad.join("; ")
        },
    )
}

fn theorem1_calibration() -> Verdict {
    let cache = StirlingCache::new(30);
    let r10 = f_asym(10)
        .unwrap()
        .ratio_to(&f_via_stirling(&cache, 10).unwrap());
    let r30 = f_asym(30)
        .unwrap()
        .ratio_to(&f_via_stirling(&cache, 30).unwrap());
    let ok = (0.970..=0.980).contains(&r10) && (1.0 - r30).abs() < (1.0 - r10).abs();
    verdict(
        ok,
        format!("ratio(10) = {r10:.6} in [0.970, 0.980]; ratio(30) = {r30:.6}"),
    )
}

fn oracle_equivalence() -> Verdict {
    let mut bad = Vec::new();
    for n in 0..=6 {
        let brute = brute_force_counts(n);
        for k in 0..=n {
            for l in 0..=n {
                let want = Nat::from(brute.get(&(k, l)).copied().unwrap_or(0));
                if m_mobius(k, l, n).unwrap() != want {
                    bad.push(format!("mobius m_{k},{l}({n})"));
                }
            }
        }
    }
    let cache = StirlingCache::new(14);
    let mut compared = 0;
    for n in 1..=14 {
        let table = count_table(n).unwrap();
        for k in 1..=n {
            for l in 1..=n {
                compared += 1;
                if table.get(k, l) != m_stirling(&cache, k, l, n).unwrap() {
                    bad.push(format!("m_{k},{l}({n}) mobius != stirling"));
                }
            }
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("brute force n <= 6 matched; {compared} cells agree for n <= 14")
        } else {
            bad.join("; ")
        },
    )
}

fn identity_suite() -> Verdict {
    let mut bad = Vec::new();
    for n in 0..=12 {
        for k in 0..=6 {
            for l in 0..=6 {
                if !verify_column_identity(k, l, n).unwrap() {
                    bad.push(format!("column identity ({k},{l},{n})"));
                }
            }
        }
    }
    let cache = StirlingCache::new(200);
    for n in 1..=10 {
        for k in 1..=n {
            for l in 1..=n {
                if !verify_inversion(&cache, n, k, l).unwrap() {
                    bad.push(format!("inversion (n={n},k={k},l={l})"));
                }
            }
        }
    }
    let recurrence = ordered_bell_recurrence(200);
    for (n, want) in recurrence.iter().enumerate() {
        let sum: BigUint = (0..=n)
            .map(|k| cache.second(n, k).unwrap() * factorial(k))
            .sum();
        if &sum != want {
            bad.push(format!("ordered Bell n={n}"));
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            "column identity, inversion and ordered Bell grids hold".into()
        } else {
            bad.join("; ")
        },
    )
}

fn positive_interval() -> Verdict {
    let cache = StirlingCache::new(12);
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 1..=12 {
        let trunc = default_truncation(n);
        let exact = f_via_stirling(&cache, n).unwrap();
        let b = f_positive_bounds(n, trunc).unwrap();
        let contains = b.contains(&exact);
        let narrow = b.width() < num_rational::BigRational::one();
        ok &= contains && narrow;
        if !(contains && narrow) {
            let width = b.width().to_f64().unwrap_or(f64::INFINITY);
            lines.push(format!(
                "n={n} K={trunc}: contains={contains} width={width:.3e}"
            ));
        }
    }
    verdict(
        ok,
        if ok {
            "every interval brackets F(n) with width < 1".into()
        } else {
            lines.join("; ")
        },
    )
}

fn saddle_solver() -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let kappa = 0.01 + 0.98 * i as f64 / 99.0;
        match saddle_solve(kappa) {
            Ok(s) => worst = worst.max(s.residual.abs()),
            Err(_) => worst = f64::INFINITY,
        }
    }
    let peak = saddle_solve(1.0 / (2.0 * LN_2)).unwrap();
    let err = (peak.sigma - 1.0 / LN_2).abs();
    verdict(
        worst <= 1e-12 && err <= 1e-10,
        format!("max residual {worst:.2e} <= 1e-12; |sigma - 1/ln 2| = {err:.2e} <= 1e-10"),
    )
}

fn theorem4_trend() -> Verdict {
    let cache = StirlingCache::new(48);
    let gap = |n: usize| {
        let k = (n as f64 / (2.0 * LN_2)).ceil() as usize;
        let exact = m_stirling(&cache, k, k, n).unwrap();
        (
            k,
            m_asym(k, k, n).unwrap().estimate.log_ratio_to(&exact).abs(),
        )
    };
    let (k12, g12) = gap(12);
    let (k48, g48) = gap(48);
    verdict(
        g48 < g12,
        format!("|log ratio| n=12 (k=l={k12}): {g12:.5}; n=48 (k=l={k48}): {g48:.5}"),
    )
}

fn sampler_exactness() -> Verdict {
    const ACCEPTED: usize = 100_000;
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 2..=4usize {
        let all = all_incidence_matrices(n);
        let (samples, report) = sample_accepted(n, ACCEPTED, 20_240_000 + n as u64).unwrap();
        let mut counts: HashMap<_, u64> = all.iter().map(|m| (m.clone(), 0)).collect();
        let mut foreign = 0;
        for m in samples {
            match counts.get_mut(&m) {
                Some(c) => *c += 1,
                None => foreign += 1,
            }
        }
        let obs: Vec<u64> = counts.values().copied().collect();
        let all_seen = obs.iter().all(|&c| c > 0) && foreign == 0;
        let chi = chi_square_uniform(&obs);
        let p = exact_acceptance(n).unwrap().to_f64().unwrap();
        let se = (p * (1.0 - p) / report.trials as f64).sqrt();
        let z = (report.acceptance_rate - p) / se;
        let pass = all_seen && chi.accepts(1e-3) && z.abs() <= 4.0;
        ok &= pass;
        lines.push(format!(
            "n={n}: {}/{} seen, chi2 p={:.3}, rate {:.5} vs {:.5} ({z:+.2} SE)",
            obs.iter().filter(|&&c| c > 0).count(),
            all.len(),
            chi.p_value,
            report.acceptance_rate,
            p
        ));
    }
    verdict(ok, lines.join("; "))
}

fn asymptotic_sampler() -> Verdict {
    let report = run_stats(100, 100_000, 100).unwrap();
    let rate_target = (-0.5 * LN_2 * LN_2).exp();
    let w_target = 0.5 * LN_2 * LN_2;
    let ok = (report.acceptance_rate - rate_target).abs() <= 0.02
        && (report.mean_w - w_target).abs() <= 0.02;
    let peak = report.modal_rows().unwrap_or(0);
    verdict(
        ok,
        format!(
            "rate {:.5} vs {rate_target:.5}; mean W {:.5} vs {w_target:.5}; modal rows {peak} (n/(2 ln 2) = {:.1})",
            report.acceptance_rate,
            report.mean_w,
            100.0 / (2.0 * LN_2)
        ),
    )
}

fn determinism() -> Verdict {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_incmat"))
            .args([
                "--workers",
                workers,
                "sample",
                "--n",
                "50",
                "--trials",
                "10000",
                "--seed",
                "7",
            ])
            .output()
            .expect("binary runs")
    };
    let a = run("1");
    let b = run("3");
    let ok =
        a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    verdict(
        ok,
        format!(
            "{} bytes, identical = {}",
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Verdict, u64);
    let criteria: [Criterion; 10] = [
        ("1 exact sequence reproduction", sequence_reproduction, 5),
        ("2 asymptotic F(n) calibration", theorem1_calibration, 10),
        ("3 oracle equivalence", oracle_equivalence, 60),
        ("4 identity suite", identity_suite, 30),
        ("5 positive-sum interval", positive_interval, 30),
        ("6 saddle solver", saddle_solver, 60),
        ("7 m_kl asymptotic trend", theorem4_trend, 120),
        ("8 sampler exactness", sampler_exactness, 60),
        ("9 asymptotic sampler statistics", asymptotic_sampler, 60),
        ("10 determinism across workers", determinism, 60),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, check, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let v = within_budget(check(), start.elapsed(), Duration::from_secs(budget));
        println!(
            "[{}] criterion {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += usize::from(!v.passed);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        println!("all criteria passed");
        ExitCode::SUCCESS
    }
}
