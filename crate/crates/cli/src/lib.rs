//! Command implementations behind the `incmat` binary.
//!
//! Every command returns an [`Outcome`]: the text for stdout and the exit
//! status. Exit codes are 0 on success, 1 on usage errors, 2 on a failed
//! verification and 3 on a numeric failure.

pub mod args;
pub mod record;

use std::fs::OpenOptions;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use incmat::asymptotics::{f_asym, m_asym, p_asym, LogEstimate};
use incmat::enumeration::{
    count_table, f_positive_bounds, f_via_msum, f_via_stirling, m_mobius, m_stirling,
};
use incmat::exact::ordered_bell_recurrence;
use incmat::sampler::{exact_acceptance, run_trials};
use incmat::verify::{run_verification, REQUIRED_N_MAX};
use incmat::{IncidenceMatrix, StirlingCache};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use args::{
    AsymArgs, Cli, Command, CountCommand, CountFArgs, CountMArgs, FMethod, Format, MMethod,
    SampleArgs, TableArgs, Target, VerifyArgs,
};
use record::OutputRecord;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Largest `n` for which `asym` also computes the exact value.
const EXACT_ASYM_LIMIT: usize = 200;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl From<incmat::Error> for CliError {
    fn from(e: incmat::Error) -> Self {
        use incmat::Error as E;
        match e {
            E::Precondition(_) | E::OutOfRange { .. } | E::SizeMismatch { .. } => {
                CliError::Usage(e.to_string())
            }
            E::InexactDivision { .. } | E::NegativeResult { .. } | E::NoConvergence { .. } => {
                CliError::Numeric(e.to_string())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            exit: EXIT_OK,
        }
    }
}

fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn float_or_null(x: Option<f64>) -> Value {
    x.filter(|v| v.is_finite()).map_or(Value::Null, Value::from)
}

/// Runs a parsed command line, inside a thread pool of `--workers` threads
/// when given.
pub fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let timing = cli.timing;
    let run = move || {
        let start = Instant::now();
        let (mut record, exit) = match cli.command {
            Command::Count(CountCommand::F(a)) => (count_f(&a)?, EXIT_OK),
            Command::Count(CountCommand::M(a)) => (count_m(&a)?, EXIT_OK),
            Command::Table(a) => return table(&a),
            Command::Asym(a) => (asym(&a)?, EXIT_OK),
            Command::Sample(a) => (sample(&a)?, EXIT_OK),
            Command::Verify(a) => verify(&a),
        };
        if timing {
            record.metadata.runtime_ms = Some(start.elapsed().as_millis() as u64);
        }
        Ok(Outcome {
            stdout: record.to_json() + "\n",
            exit,
        })
    };
    match cli.workers {
        Some(0) => Err(CliError::Usage("--workers must be at least 1".into())),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn count_f(a: &CountFArgs) -> Result<OutputRecord, CliError> {
    let (method, positive) = match a.method {
        FMethod::Msum => ("msum", false),
        FMethod::Stirling => ("stirling", false),
        FMethod::Positive => ("positive", true),
    };
    if positive != a.trunc.is_some() {
        return Err(CliError::Usage(
            "--trunc K is required with --method positive and only allowed there".into(),
        ));
    }
    let mut rec = OutputRecord::new("count f").input("n", a.n).method(method);
    match a.method {
        FMethod::Msum => rec.set("value", f_via_msum(a.n)?.to_string()),
        FMethod::Stirling => {
            let cache = StirlingCache::new(a.n);
            rec.set("value", f_via_stirling(&cache, a.n)?.to_string());
        }
        FMethod::Positive => {
            let trunc = a.trunc.expect("checked above");
            rec = rec.input("trunc", trunc);
            let b = f_positive_bounds(a.n, trunc)?;
            let pinned = b.pinned_integer();
            rec.set("lower", rational(b.lower()));
            rec.set("upper", rational(b.upper()));
            rec.set("width", rational(&b.width()));
            rec.set("pinned", pinned.is_some());
            rec.set(
                "value",
                pinned.map_or(Value::Null, |v| v.to_string().into()),
            );
        }
    }
    Ok(rec)
}

fn count_m(a: &CountMArgs) -> Result<OutputRecord, CliError> {
    let (method, value) = match a.method {
        MMethod::Mobius => ("mobius", m_mobius(a.k, a.l, a.n)?),
        MMethod::Stirling => {
            let cache = StirlingCache::new(a.n);
            ("stirling", m_stirling(&cache, a.k, a.l, a.n)?)
        }
    };
    let mut rec = OutputRecord::new("count m")
        .input("n", a.n)
        .input("k", a.k)
        .input("l", a.l)
        .method(method);
    rec.set("value", value.to_string());
    Ok(rec)
}

fn table(a: &TableArgs) -> Result<Outcome, CliError> {
    if a.n == 0 {
        return Err(CliError::Usage("table needs n ≥ 1".into()));
    }
    let t = count_table(a.n)?;
    let rows: Vec<(usize, usize, &BigUint)> = t
        .entries()
        .iter()
        .filter(|(_, m)| **m > BigUint::ZERO)
        .map(|(&(k, l), m)| (k, l, m))
        .collect();
    let total = t.total();
    let stdout = match a.format {
        Format::Csv => {
            let mut out = String::from("k,l,m\n");
            for (k, l, m) in &rows {
                out.push_str(&format!("{k},{l},{m}\n"));
            }
            out.push_str(&format!("total,,{total}\n"));
            out
        }
        Format::Json => {
            let mut rec = OutputRecord::new("table").input("n", a.n).method("mobius");
            let cells: Vec<Value> = rows
                .iter()
                .map(|(k, l, m)| json!({ "k": k, "l": l, "m": m.to_string() }))
                .collect();
            rec.set("rows", cells);
            rec.set("total", total.to_string());
            rec.to_json() + "\n"
        }
    };
    Ok(Outcome::ok(stdout))
}

fn put_estimate(rec: &mut OutputRecord, est: &LogEstimate, exact: Option<BigUint>) {
    rec.set("log_value", est.log_value);
    rec.set("value", float_or_null(est.value));
    match exact {
        Some(x) => {
            rec.set("ratio", float_or_null(Some(est.ratio_to(&x))));
            rec.set("log_ratio", est.log_ratio_to(&x));
            rec.set("exact", x.to_string());
        }
        None => {
            rec.set("ratio", Value::Null);
            rec.set("log_ratio", Value::Null);
            rec.set("exact", Value::Null);
        }
    }
}

fn asym(a: &AsymArgs) -> Result<OutputRecord, CliError> {
    let needs_dims = a.target == Target::M;
    if needs_dims != (a.k.is_some() && a.l.is_some())
        || (!needs_dims && (a.k.is_some() || a.l.is_some()))
    {
        return Err(CliError::Usage(
            "--k and --l are required for target m and only allowed there".into(),
        ));
    }
    let feasible = a.n <= EXACT_ASYM_LIMIT;
    let mut rec = OutputRecord::new("asym").input("n", a.n);
    match a.target {
        Target::P => {
            rec = rec.input("target", "p").method("ordered-bell");
            let est = p_asym(a.n)?;
            let exact = feasible.then(|| ordered_bell_recurrence(a.n).swap_remove(a.n));
            put_estimate(&mut rec, &est, exact);
        }
        Target::F => {
            rec = rec.input("target", "f").method("incidence-total");
            let est = f_asym(a.n)?;
            let exact = if feasible {
                Some(f_via_stirling(&StirlingCache::new(a.n), a.n)?)
            } else {
                None
            };
            put_estimate(&mut rec, &est, exact);
        }
        Target::M => {
            let (k, l) = (a.k.expect("checked"), a.l.expect("checked"));
            rec = rec
                .input("target", "m")
                .input("k", k)
                .input("l", l)
                .method("saddle-point");
            let est = m_asym(k, l, a.n)?;
            let exact = if feasible {
                Some(m_stirling(&StirlingCache::new(a.n), k, l, a.n)?)
            } else {
                None
            };
            put_estimate(&mut rec, &est.estimate, exact);
            rec.set("sigma", est.row_saddle.sigma);
            rec.set("tau", est.col_saddle.sigma);
            rec.set("sigma_residual", est.row_saddle.residual);
            rec.set("tau_residual", est.col_saddle.residual);
        }
    }
    Ok(rec)
}

fn sample(a: &SampleArgs) -> Result<OutputRecord, CliError> {
    if a.n == 0 || a.trials == 0 {
        return Err(CliError::Usage(
            "sample needs --n ≥ 1 and --trials ≥ 1".into(),
        ));
    }
    let mut writer = match &a.emit {
        Some(path) => {
            let file = OpenOptions::new().create(true).append(true).open(path)?;
            let nonempty = file.metadata()?.len() > 0;
            Some((BufWriter::new(file), nonempty))
        }
        None => None,
    };
    let mut io_error: Option<io::Error> = None;
    let mut emitted = 0u64;
    let mut emit = |m: IncidenceMatrix| {
        if io_error.is_some() {
            return;
        }
        if let Some((w, need_sep)) = writer.as_mut() {
            let res = (|| {
                if *need_sep {
                    writeln!(w)?;
                }
                write!(w, "{m}")
            })();
            match res {
                Ok(()) => {
                    *need_sep = true;
                    emitted += 1;
                }
                Err(e) => io_error = Some(e),
            }
        }
    };
    let report = if a.emit.is_some() {
        run_trials(a.n, a.trials, a.seed, Some(&mut emit))?
    } else {
        run_trials(a.n, a.trials, a.seed, None)?
    };
    if let Some(e) = io_error {
        return Err(e.into());
    }
    if let Some((mut w, _)) = writer {
        w.flush()?;
    }

    let mut rec = OutputRecord::new("sample")
        .input("n", a.n)
        .input("trials", a.trials)
        .input("seed", a.seed)
        .method("preorder-pair-rejection");
    rec.metadata.seed = Some(a.seed);
    if let Some(path) = &a.emit {
        rec = rec.input("emit", path.display().to_string());
    }
    let report_value = serde_json::to_value(&report).expect("report serializes");
    if let Value::Object(fields) = report_value {
        for (k, v) in fields {
            rec.set(&k, v);
        }
    }
    if let Some(mode) = report.modal_rows() {
        rec.set("modal_rows", mode);
    }
    // the exact rational needs F(n); skip it where that gets expensive
    if a.n <= EXACT_ASYM_LIMIT {
        let exact = exact_acceptance(a.n)?;
        rec.set("exact_acceptance", rational(&exact));
        rec.set("exact_acceptance_float", float_or_null(exact.to_f64()));
    }
    rec.set("emitted", emitted);
    Ok(rec)
}

fn verify(a: &VerifyArgs) -> (OutputRecord, i32) {
    let mut cache = StirlingCache::new(REQUIRED_N_MAX);
    if a.inject_fault {
        cache = cache
            .with_corrupted_second(6, 3, BigUint::from(91u32))
            .expect("entry inside the table");
    }
    let report = run_verification(&cache);
    let passed = report.passed();
    let mut rec = OutputRecord::new("verify").method("embedded-table");
    rec.set("passed", passed);
    rec.set(
        "checks",
        serde_json::to_value(&report.checks).expect("checks serialize"),
    );
    let failures: Vec<String> = report
        .failures()
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    rec.set("failures", failures);
    (rec, if passed { EXIT_OK } else { EXIT_VERIFY })
}
