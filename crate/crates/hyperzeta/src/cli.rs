//! Job-file driven command-line front end. A job is a single JSON document
//! naming the operation and its inputs; the report echoes the input, carries
//! exact values next to their complex shadows, and lands on stdout or the
//! requested output path. Exit codes: 0 for success (including verifications
//! that hold), 1 when a verification finds an inequality, 2 for invalid
//! input, 3 for an exceeded evaluation budget.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::Parser;
use num::complex::Complex64;
use serde_json::{json, Value};

use crate::classical::{
    nc_identity_check, nc_inverse_2x2, root_contour, ClassicalError, ComplexPoly,
    NcMatrix2, Quaternion,
};
use crate::cyclochar::{CharSpec, CycloError, CycloNumber, FieldChar};
use crate::ffield::{make_field, FieldCtx, FieldError};
use crate::hsums::{self, HsumError};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::zeta::{self, ZetaError};
use crate::DEFAULT_BUDGET;

/// Job commands, excluding `selftest` which takes no job file.
pub const COMMANDS: [&str; 13] = [
    "phi",
    "psi",
    "count",
    "zeta-variety",
    "zeta-direct",
    "zeta-product",
    "verify-cayley",
    "verify-product",
    "factorize",
    "weil-probe",
    "root-contour",
    "nc-inverse",
    "nc-identity",
];

#[derive(Parser, Debug)]
#[command(
    name = "hyperzeta",
    version,
    about = "exact hypergeometric character sums and zeta series over finite fields"
)]
pub struct CliArgs {
    /// Operation to run, matching the job file's "command"; `selftest`
    /// needs no job file.
    pub command: String,
    /// Path to the JSON job description.
    #[arg(long)]
    pub job: Option<PathBuf>,
    /// Override the job's truncation degree.
    #[arg(long = "D")]
    pub d: Option<u32>,
    /// Override the job's evaluation budget.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Omit the timestamp and zero all timing fields so that identical
    /// jobs produce byte-identical reports.
    #[arg(long)]
    pub no_timestamp: bool,
}

/// What a failed job costs: the reason lands in the report's "error" field
/// and the variant picks the exit code.
#[derive(Debug)]
enum Failure {
    /// Exit 2: the job cannot be executed as written.
    Invalid(String),
    /// Exit 3: the job is well formed but too large for its budget.
    Budget(String),
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

impl From<HsumError> for Failure {
    fn from(e: HsumError) -> Failure {
        match e {
            HsumError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<ZetaError> for Failure {
    fn from(e: ZetaError) -> Failure {
        match e {
            ZetaError::Hsum(HsumError::BudgetExceeded { .. }) => {
                Failure::Budget(e.to_string())
            }
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Failure {
        Failure::Invalid(e.to_string())
    }
}

impl From<CycloError> for Failure {
    fn from(e: CycloError) -> Failure {
        Failure::Invalid(e.to_string())
    }
}

impl From<LaurentError> for Failure {
    fn from(e: LaurentError) -> Failure {
        Failure::Invalid(e.to_string())
    }
}

impl From<ClassicalError> for Failure {
    fn from(e: ClassicalError) -> Failure {
        Failure::Invalid(e.to_string())
    }
}

#[derive(Debug)]
struct Outcome {
    result: Value,
    verified: Option<bool>,
}

impl Outcome {
    fn unverified(result: Value) -> Outcome {
        Outcome {
            result,
            verified: None,
        }
    }

    fn verified(result: Value, ok: bool) -> Outcome {
        Outcome {
            result,
            verified: Some(ok),
        }
    }
}

/// Parse the process arguments and run; the return value is the process
/// exit code.
pub fn main_entry() -> i32 {
    run(&CliArgs::parse())
}

/// Execute one invocation: load and validate the job, dispatch, and emit
/// the report.
pub fn run(args: &CliArgs) -> i32 {
    let started = Instant::now();
    let loaded = load_job(args);
    let (input, outcome) = match loaded {
        Ok(job) => {
            let echo = if args.command == "selftest" {
                Value::Null
            } else {
                job.clone()
            };
            let outcome = execute(&args.command, &job, args.no_timestamp);
            (echo, outcome)
        }
        Err(f) => (Value::Null, Err(f)),
    };

    let timing_ms = if args.no_timestamp {
        0
    } else {
        started.elapsed().as_millis() as u64
    };
    let mut report = json!({
        "command": args.command,
        "input": input,
        "result": Value::Null,
        "verified": Value::Null,
        "timing_ms": timing_ms,
    });
    if !args.no_timestamp {
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report["timestamp"] = json!(stamp);
    }

    let output = effective_output(args, &report["input"]);
    let code = match outcome {
        Ok(out) => {
            let failed_verification = out.verified == Some(false);
            report["result"] = out.result;
            report["verified"] = match out.verified {
                Some(b) => json!(b),
                None => Value::Null,
            };
            if failed_verification {
                1
            } else {
                0
            }
        }
        Err(Failure::Invalid(reason)) => {
            report["error"] = json!(reason);
            2
        }
        Err(Failure::Budget(reason)) => {
            report["error"] = json!(reason);
            3
        }
    };

    if let Err(e) = emit(&report, output.as_deref()) {
        eprintln!("cannot write report: {e}");
        return 2;
    }
    code
}

fn load_job(args: &CliArgs) -> Result<Value, Failure> {
    if args.command == "selftest" {
        if args.job.is_some() {
            return Err(invalid("selftest takes no job file"));
        }
        return Ok(json!({}));
    }
    if !COMMANDS.contains(&args.command.as_str()) {
        return Err(invalid(format!(
            "unknown command {:?}; expected one of {} or selftest",
            args.command,
            COMMANDS.join(", ")
        )));
    }
    let path = args
        .job
        .as_ref()
        .ok_or_else(|| invalid("this command needs --job <path>"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read job file {}: {e}", path.display())))?;
    let mut job: Value = serde_json::from_str(&text)
        .map_err(|e| invalid(format!("job file is not valid JSON: {e}")))?;
    if !job.is_object() {
        return Err(invalid("a job file holds a single JSON object"));
    }
    if let Some(declared) = job.get("command") {
        if declared.as_str() != Some(args.command.as_str()) {
            return Err(invalid(format!(
                "job file declares command {declared} but the command line says {:?}",
                args.command
            )));
        }
    }
    if let Some(d) = args.d {
        job["D"] = json!(d);
    }
    if let Some(budget) = args.budget {
        job["budget"] = json!(budget);
    }
    Ok(job)
}

fn effective_output(args: &CliArgs, input: &Value) -> Option<PathBuf> {
    if let Some(path) = &args.output {
        return Some(path.clone());
    }
    input
        .get("output")
        .and_then(Value::as_str)
        .map(PathBuf::from)
}

fn emit(report: &Value, output: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(command: &str, job: &Value, deterministic: bool) -> Result<Outcome, Failure> {
    match command {
        "phi" => cmd_phi(job),
        "psi" => cmd_psi(job),
        "count" => cmd_count(job),
        "zeta-variety" => cmd_zeta_variety(job),
        "zeta-direct" => cmd_zeta_hyper(job, false),
        "zeta-product" => cmd_zeta_hyper(job, true),
        "verify-cayley" => cmd_verify_cayley(job),
        "verify-product" => cmd_verify_product(job),
        "factorize" => cmd_factorize(job),
        "weil-probe" => cmd_weil_probe(job),
        "root-contour" => cmd_root_contour(job),
        "nc-inverse" => cmd_nc_inverse(job),
        "nc-identity" => cmd_nc_identity(job),
        "selftest" => cmd_selftest(deterministic),
        other => Err(invalid(format!("unknown command {other:?}"))),
    }
}

fn parse_field(job: &Value) -> Result<Arc<FieldCtx>, Failure> {
    let field = job
        .get("field")
        .ok_or_else(|| invalid("job needs a \"field\" object with p and optional k"))?;
    let p = field
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid("\"field.p\" must be a prime given as an integer"))?;
    let k = match field.get("k") {
        None => 1,
        Some(v) => v
            .as_u64()
            .filter(|&k| k >= 1 && k <= u32::MAX as u64)
            .ok_or_else(|| invalid("\"field.k\" must be a positive integer"))? as u32,
    };
    Ok(make_field(p, k)?)
}

fn parse_n(job: &Value) -> Result<usize, Failure> {
    job.get("n")
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| invalid("job needs \"n\", the number of torus variables"))
}

fn parse_polynomials(
    job: &Value,
    field: &Arc<FieldCtx>,
    n: usize,
) -> Result<Vec<LaurentPoly>, Failure> {
    let list = match job.get("polynomials") {
        None => return Ok(Vec::new()),
        Some(v) => v
            .as_array()
            .ok_or_else(|| invalid("\"polynomials\" must be an array of term lists"))?,
    };
    list.iter()
        .map(|terms| Ok(LaurentPoly::from_json(field, n, terms)?))
        .collect()
}

fn single_polynomial(
    job: &Value,
    field: &Arc<FieldCtx>,
    n: usize,
) -> Result<LaurentPoly, Failure> {
    let mut polys = parse_polynomials(job, field, n)?;
    if polys.len() != 1 {
        return Err(invalid(format!(
            "this command takes exactly one polynomial, got {}",
            polys.len()
        )));
    }
    Ok(polys.remove(0))
}

fn parse_characters(
    job: &Value,
    field: &Arc<FieldCtx>,
    n: usize,
) -> Result<Vec<CharSpec>, Failure> {
    let indices = match job.get("characters") {
        None => return Ok(vec![CharSpec::trivial(field); n]),
        Some(v) => v
            .as_array()
            .ok_or_else(|| invalid("\"characters\" must be an array of integers"))?,
    };
    if indices.len() != n {
        return Err(invalid(format!(
            "expected {n} character indices (one per torus variable), got {}",
            indices.len()
        )));
    }
    indices
        .iter()
        .map(|v| {
            let index = v
                .as_u64()
                .ok_or_else(|| invalid("character indices are nonnegative integers"))?;
            Ok(CharSpec::multiplicative(field, index)?)
        })
        .collect()
}

fn parse_d(job: &Value) -> Result<u32, Failure> {
    job.get("D")
        .and_then(Value::as_u64)
        .filter(|&d| d >= 1 && d <= u32::MAX as u64)
        .map(|d| d as u32)
        .ok_or_else(|| invalid("job needs \"D\" ≥ 1, the series truncation degree"))
}

fn parse_budget(job: &Value) -> Result<u64, Failure> {
    match job.get("budget") {
        None => Ok(DEFAULT_BUDGET),
        Some(v) => v
            .as_u64()
            .ok_or_else(|| invalid("\"budget\" must be a nonnegative integer")),
    }
}

fn cyclo_result(value: &CycloNumber) -> Value {
    let z = value.embed_complex();
    json!({
        "value": value.to_json(),
        "complex": [z.re, z.im],
        "printed": value.to_string(),
    })
}

fn cmd_phi(job: &Value) -> Result<Outcome, Failure> {
    let field = parse_field(job)?;
    let n = parse_n(job)?;
    let poly = single_polynomial(job, &field, n)?;
    let pis: Vec<FieldChar> = parse_characters(job, &field, n)?
        .into_iter()
        .map(Into::into)
        .collect();
    let chi: FieldChar = CharSpec::additive(&field).into();
    let value = hsums::phi(&chi, &poly, &pis, parse_budget(job)?)?;
    Ok(Outcome::unverified(cyclo_result(&value)))
}

fn cmd_psi(job: &Value) -> Result<Outcome, Failure> {
    let field = parse_field(job)?;
    let n = parse_n(job)?;
    let polys = parse_polynomials(job, &field, n)?;
    let chi: FieldChar = CharSpec::additive(&field).into();
    let value = hsums::psi(&chi, n, &polys, parse_budget(job)?)?;
    Ok(Outcome::unverified(cyclo_result(&value)))
}

fn cmd_count(job: &Value) -> Result<Outcome, Failure> {
    let field = parse_field(job)?;
    let n = parse_n(job)?;
    let polys = parse_polynomials(job, &field, n)?;
    let points = hsums::count_points(&field, n, &polys, parse_budget(job)?)?;
    Ok(Outcome::unverified(json!({ "points": points })))
}

fn cmd_zeta_variety(job: &Value) -> Result<Outcome, Failure> {
    let field = parse_field(job)?;
    let n = parse_n(job)?;
    let polys = parse_polynomials(job, &field, n)?;
    let series = zeta::zeta_variety(&field, n, &polys, parse_d(job)?, parse_budget(job)?)?;
    Ok(Outcome::unverified(series.to_json()))
}

fn cmd_zeta_hyper(job: &Value, euler_product: bool) -> Result<Outcome, Failure> {
    let field = parse_field(job)?;
    let n = parse_n(job)?;
    let poly = single_polynomial(job, &field, n)?;
    let pis = parse_characters(job, &field, n)?;
    let chi = CharSpec::additive(&field);
    let d = parse_d(job)?;
    let budget = parse_budget(job)?;
    let series = if euler_product {
        zeta::zeta_hyper_product(&chi, &poly, &pis, d, budget)?
    } else {
        zeta::zeta_hyper_direct(&chi, &poly, &pis, d, budget)?
    };
    Ok(Outcome::unverified(series.to_json()))
}

fn cmd_verify_cayley(job: &Value) -> Result<Outcome, Failure> {
    let field = parse_field(job)?;
    let n = parse_n(job)?;
    let polys = parse_polynomials(job, &field, n)?;
    let chi: FieldChar = CharSpec::additive(&field).into();
    let report = hsums::verify_cayley(&chi, n, &polys, parse_budget(job)?)?;
    let equal = report.all_equal;
    Ok(Outcome::verified(report.to_json(), equal))
}

fn cmd_verify_product(job: &Value) -> Result<Outcome, Failure> {
    let field = parse_field(job)?;
    let n = parse_n(job)?;
    let poly = single_polynomial(job, &field, n)?;
    let pis = parse_characters(job, &field, n)?;
    let chi = CharSpec::additive(&field);
    let report =
        zeta::verify_product(&chi, &poly, &pis, parse_d(job)?, parse_budget(job)?)?;
    let equal = report.equal;
    Ok(Outcome::verified(report.to_json(), equal))
}

fn cmd_factorize(job: &Value) -> Result<Outcome, Failure> {
    let field = parse_field(job)?;
    let n = parse_n(job)?;
    let polys = parse_polynomials(job, &field, n)?;
    let chi = CharSpec::additive(&field);
    let report =
        zeta::cayley_factorize(&chi, n, &polys, parse_d(job)?, parse_budget(job)?)?;
    let equal = report.equal;
    Ok(Outcome::verified(report.to_json(), equal))
}

fn cmd_weil_probe(job: &Value) -> Result<Outcome, Failure> {
    let field = parse_field(job)?;
    let n = parse_n(job)?;
    let d = parse_d(job)?;
    let budget = parse_budget(job)?;
    // With characters present the probe runs on the hypergeometric series
    // of the single polynomial; otherwise on the variety series of the
    // whole system.
    let series = if job.get("characters").is_some() {
        let poly = single_polynomial(job, &field, n)?;
        let pis = parse_characters(job, &field, n)?;
        zeta::zeta_hyper_direct(&CharSpec::additive(&field), &poly, &pis, d, budget)?
    } else {
        let polys = parse_polynomials(job, &field, n)?;
        zeta::zeta_variety(&field, n, &polys, d, budget)?
    };
    let coeffs = series.complex_coeffs();
    let (fitted, deg_num, deg_den) = match job.get("degrees") {
        Some(v) => {
            let pair = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| invalid("\"degrees\" must be [deg_num, deg_den]"))?;
            let deg_num = pair[0]
                .as_u64()
                .ok_or_else(|| invalid("\"degrees\" entries are integers"))?
                as usize;
            let deg_den = pair[1]
                .as_u64()
                .ok_or_else(|| invalid("\"degrees\" entries are integers"))?
                as usize;
            (zeta::pade(&coeffs, deg_num, deg_den)?, deg_num, deg_den)
        }
        None => zeta::pade_scan(&coeffs)?,
    };
    let weights = zeta::weil_probe(&fitted, field.order())?;
    Ok(Outcome::unverified(json!({
        "series": series.to_json(),
        "fit": {
            "deg_num": deg_num,
            "deg_den": deg_den,
            "rational": fitted.to_json(),
        },
        "weights": weights.to_json(),
    })))
}

fn parse_complex(value: &Value, what: &str) -> Result<Complex64, Failure> {
    if let Some(x) = value.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    let pair = value.as_array().filter(|a| a.len() == 2);
    if let Some(pair) = pair {
        if let (Some(re), Some(im)) = (pair[0].as_f64(), pair[1].as_f64()) {
            return Ok(Complex64::new(re, im));
        }
    }
    Err(invalid(format!(
        "{what} must be a number or an [re, im] pair"
    )))
}

fn cmd_root_contour(job: &Value) -> Result<Outcome, Failure> {
    let coeff_list = job
        .get("poly")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("job needs \"poly\", the coefficient list c_0..c_m"))?;
    let coeffs = coeff_list
        .iter()
        .map(|v| parse_complex(v, "a polynomial coefficient"))
        .collect::<Result<Vec<_>, _>>()?;
    let poly = ComplexPoly::new(coeffs)?;
    let center = match job.get("center") {
        None => Complex64::new(0.0, 0.0),
        Some(v) => parse_complex(v, "\"center\"")?,
    };
    let radius = job
        .get("radius")
        .and_then(Value::as_f64)
        .ok_or_else(|| invalid("job needs \"radius\" > 0"))?;
    let nodes = match job.get("nodes") {
        None => 256,
        Some(v) => v
            .as_u64()
            .filter(|&n| n <= u32::MAX as u64)
            .ok_or_else(|| invalid("\"nodes\" must be a power of two ≥ 16"))?
            as u32,
    };
    let sum = root_contour(&poly, center, radius, nodes)?;
    Ok(Outcome::unverified(json!({
        "sum_of_enclosed_roots": [sum.re, sum.im],
        "nodes": nodes,
    })))
}

fn parse_quadruple(
    job: &Value,
    key: &str,
) -> Result<(Quaternion, Quaternion, Quaternion, Quaternion), Failure> {
    let obj = job
        .get(key)
        .ok_or_else(|| invalid(format!("job needs {key:?} with entries a1, b1, a2, b2")))?;
    Ok((
        Quaternion::from_json(&obj["a1"])?,
        Quaternion::from_json(&obj["b1"])?,
        Quaternion::from_json(&obj["a2"])?,
        Quaternion::from_json(&obj["b2"])?,
    ))
}

fn cmd_nc_inverse(job: &Value) -> Result<Outcome, Failure> {
    let (a1, b1, a2, b2) = parse_quadruple(job, "matrix")?;
    let x = NcMatrix2::new(a1, b1, a2, b2);
    let inverse = nc_inverse_2x2(&x)?;
    let left = x.mul(&inverse) == NcMatrix2::identity();
    let right = inverse.mul(&x) == NcMatrix2::identity();
    Ok(Outcome::verified(
        json!({
            "inverse": inverse.to_json(),
            "left_identity": left,
            "right_identity": right,
        }),
        left && right,
    ))
}

fn cmd_nc_identity(job: &Value) -> Result<Outcome, Failure> {
    let (a1, b1, a2, b2) = parse_quadruple(job, "quaternions")?;
    let report = nc_identity_check(&a1, &b1, &a2, &b2);
    let verified = report.equal;
    Ok(Outcome {
        result: report.to_json(),
        verified,
    })
}

struct Check {
    name: &'static str,
    outcome: Result<(), String>,
    elapsed_ms: u64,
}

fn run_check(name: &'static str, run: impl FnOnce() -> Result<(), String>) -> Check {
    let started = Instant::now();
    let outcome = run();
    Check {
        name,
        outcome,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

fn require(ok: bool, context: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{context} does not hold"))
    }
}

fn selftest_checks() -> Vec<Check> {
    let budget = DEFAULT_BUDGET;
    let term = |field: &Arc<FieldCtx>, exps: &[i64], coef: u64| {
        (exps.to_vec(), field.from_int(coef))
    };
    let mut checks = Vec::new();

    for (p, label) in [
        (2u64, "cayley identity over F_2"),
        (3, "cayley identity over F_3"),
        (5, "cayley identity over F_5"),
    ] {
        checks.push(run_check(label, || {
            let f = make_field(p, 1).map_err(|e| e.to_string())?;
            let chi: FieldChar = CharSpec::additive(&f).into();
            let p1 = LaurentPoly::new(&f, 2, vec![term(&f, &[1, 1], 1), term(&f, &[0, 0], 1)])
                .map_err(|e| e.to_string())?;
            let p2 = LaurentPoly::new(&f, 2, vec![term(&f, &[1, -1], 1)])
                .map_err(|e| e.to_string())?;
            let report = hsums::verify_cayley(&chi, 2, &[p1, p2], budget)
                .map_err(|e| e.to_string())?;
            require(report.all_equal, "three-way sum equality")
        }));
    }

    for (p, index, label) in [
        (2u64, 0u64, "zeta product over F_2"),
        (3, 1, "zeta product over F_3"),
        (5, 2, "zeta product over F_5"),
    ] {
        checks.push(run_check(label, || {
            let f = make_field(p, 1).map_err(|e| e.to_string())?;
            let chi = CharSpec::additive(&f);
            let poly = LaurentPoly::new(&f, 1, vec![term(&f, &[1], 1), term(&f, &[-1], 1)])
                .map_err(|e| e.to_string())?;
            let pi = CharSpec::multiplicative(&f, index).map_err(|e| e.to_string())?;
            let d = if p == 5 { 2 } else { 3 };
            let report = zeta::verify_product(&chi, &poly, &[pi], d, budget)
                .map_err(|e| e.to_string())?;
            require(report.equal, "direct and product series equality")
        }));
    }

    checks.push(run_check("shifted factorization over F_2", || {
        let f = make_field(2, 1).map_err(|e| e.to_string())?;
        let chi = CharSpec::additive(&f);
        let p1 = LaurentPoly::new(&f, 1, vec![term(&f, &[1], 1), term(&f, &[0], 1)])
            .map_err(|e| e.to_string())?;
        let report =
            zeta::cayley_factorize(&chi, 1, &[p1], 3, budget).map_err(|e| e.to_string())?;
        require(report.equal, "factorization equality")?;
        let ones: Vec<CycloNumber> = (0..=3).map(|_| CycloNumber::one()).collect();
        require(
            report.lhs == zeta::PowerSeries::from_coeffs(ones),
            "worked case collapsing to 1/(1-T)",
        )
    }));

    checks.push(run_check("shifted factorization over F_3", || {
        let f = make_field(3, 1).map_err(|e| e.to_string())?;
        let chi = CharSpec::additive(&f);
        let p1 = LaurentPoly::new(&f, 1, vec![term(&f, &[1], 1), term(&f, &[0], 1)])
            .map_err(|e| e.to_string())?;
        let p2 = LaurentPoly::new(&f, 1, vec![term(&f, &[1], 1), term(&f, &[0], 2)])
            .map_err(|e| e.to_string())?;
        let report = zeta::cayley_factorize(&chi, 1, &[p1, p2], 3, budget)
            .map_err(|e| e.to_string())?;
        require(report.equal, "factorization equality")
    }));

    checks.push(run_check("character orthogonality", || {
        for p in [2u64, 3, 5] {
            let f = make_field(p, 1).map_err(|e| e.to_string())?;
            for index in 0..p - 1 {
                let pi = CharSpec::multiplicative(&f, index).map_err(|e| e.to_string())?;
                let mut acc = CycloNumber::zero();
                for x in f.elements().filter(|x| !x.is_zero()) {
                    acc = acc.add(&pi.eval(&x).map_err(|e| e.to_string())?);
                }
                let expected = if pi.is_trivial() {
                    CycloNumber::from_integer(p as i64 - 1)
                } else {
                    CycloNumber::zero()
                };
                require(acc == expected, "column sum over the torus")?;
            }
        }
        Ok(())
    }));

    checks.push(run_check("quaternion chart identity", || {
        let worked = nc_identity_check(
            &Quaternion::from_integers(1, 1, 0, 0),
            &Quaternion::j(),
            &Quaternion::k(),
            &Quaternion::one(),
        );
        require(worked.equal == Some(true), "worked quadruple equality")?;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let mut random = || {
            Quaternion::from_integers(
                rng.gen_range(-3i64..=3),
                rng.gen_range(-3i64..=3),
                rng.gen_range(-3i64..=3),
                rng.gen_range(-3i64..=3),
            )
        };
        for _ in 0..20 {
            let report = nc_identity_check(&random(), &random(), &random(), &random());
            if report.equal == Some(false) {
                return Err("random quadruple violated the identity".into());
            }
        }
        Ok(())
    }));

    checks.push(run_check("quaternion matrix inverse", || {
        let x = NcMatrix2::new(
            Quaternion::from_integers(1, 1, 0, 0),
            Quaternion::j(),
            Quaternion::k(),
            Quaternion::one(),
        );
        let inverse = nc_inverse_2x2(&x).map_err(|e| e.to_string())?;
        require(x.mul(&inverse) == NcMatrix2::identity(), "right inverse")?;
        require(inverse.mul(&x) == NcMatrix2::identity(), "left inverse")
    }));

    checks.push(run_check("contour root recovery", || {
        let poly = ComplexPoly::new(vec![
            Complex64::new(-3.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
        .map_err(|e| e.to_string())?;
        let sum = root_contour(&poly, Complex64::new(0.0, 0.0), 5.0, 64)
            .map_err(|e| e.to_string())?;
        require(
            (sum - Complex64::new(3.0, 0.0)).norm() <= 1e-8,
            "single enclosed root",
        )
    }));

    checks
}

fn cmd_selftest(deterministic: bool) -> Result<Outcome, Failure> {
    let checks = selftest_checks();
    let mut rows = Vec::new();
    let mut all_pass = true;
    for check in &checks {
        let pass = check.outcome.is_ok();
        all_pass &= pass;
        match &check.outcome {
            Ok(()) => eprintln!("PASS  {:<32} {:>5} ms", check.name, check.elapsed_ms),
            Err(reason) => {
                eprintln!(
                    "FAIL  {:<32} {:>5} ms  {reason}",
                    check.name, check.elapsed_ms
                )
            }
        }
        rows.push(json!({
            "name": check.name,
            "pass": pass,
            "time_ms": if deterministic { 0 } else { check.elapsed_ms },
        }));
    }
    Ok(Outcome::verified(
        json!({ "checks": rows, "all_pass": all_pass }),
        all_pass,
    ))
}
