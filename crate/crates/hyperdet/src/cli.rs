//! File-based command-line front end.
//!
//! Inputs are matrix files (JSON) or inline format literals like `[2,2,3]`,
//! which stand for the symbolic matrix of that format. Machine-readable
//! results are JSON; polynomials and scalars print in their canonical text
//! form. Exit codes: 0 success, 2 format not supported by the requested
//! operation, 3 size guard, 4 parse error, 5 internal consistency failure.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::determinants::{
    closed_det, corank_22n, degree_boundary, det_dispatch, gl_action, hyperplucker,
    make_degenerate, multidegree_profile, quotient_identity_check, random_unimodular,
    witness_check, DetError, DetOptions, EnginePolicy,
};
use crate::mdmatrix::{witness_to_json_string, Format, FormatClass, MDMatrix, MatrixError};
use crate::qpaths::{diagonal_monomial, DiagonalVariant, QSpace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FORMAT: i32 = 2;
pub const EXIT_SIZE: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_CONSISTENCY: i32 = 5;

#[derive(Parser)]
#[command(
    name = "hyperdet",
    version,
    about = "Exact determinants of multidimensional matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonFlags {
    /// Seed for every random construction.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Entry bound for random integer matrices.
    #[arg(long, default_value_t = 10)]
    bound: u32,
    /// Cap on generated products (overrides HYPERDET_MAX_TERMS).
    #[arg(long)]
    max_terms: Option<u64>,
    /// Worker count for the determinant engine.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Engine policy name ("default" ships the calibrated interpretation).
    #[arg(long, default_value = "default")]
    policy: String,
    /// Sample count for verification batteries.
    #[arg(long, default_value_t = 50)]
    samples: u32,
    /// Output file (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Report the format class, m-sequence, and derived sizes.
    Classify {
        input: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Determinant of the matrix (text polynomial or exact rational).
    Det {
        input: String,
        /// Emit a JSON report with the polynomial interchange object.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Closed determinant: factored minors plus the expanded product.
    ClosedDet {
        input: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// List all minor subformats with their determinants.
    Minors {
        input: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Hyperplucker coordinate vector of a grassman-format matrix.
    Plucker {
        input: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Quadratic-form rank test for 2 x 2 x n matrices.
    Corank {
        input: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Construct a degenerate matrix with its witness vectors.
    MakeDegenerate {
        format: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Run the seeded invariant battery for a format.
    Verify {
        input: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Print the diagonal monomial of a format.
    Diagonal {
        input: String,
        /// "closed" or "boundary"; default picks by format class.
        #[arg(long)]
        variant: Option<String>,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<DetError> for Failure {
    fn from(e: DetError) -> Self {
        let code = match &e {
            DetError::SizeGuard(_) => EXIT_SIZE,
            DetError::Matrix(MatrixError::Parse(_)) => EXIT_PARSE,
            DetError::Poly(_) | DetError::Uni(_) | DetError::Calibration(_) => EXIT_CONSISTENCY,
            _ => EXIT_FORMAT,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<MatrixError> for Failure {
    fn from(e: MatrixError) -> Self {
        let code = match &e {
            MatrixError::Parse(_) => EXIT_PARSE,
            _ => EXIT_FORMAT,
        };
        Failure::new(code, e.to_string())
    }
}

/// Parses and runs a full command line; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the same channel
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Classify { input, flags } => {
            let a = load_input(&input)?;
            let report = classify_report(a.format())?;
            emit(&flags, &pretty(&report))
        }
        Command::Det { input, json, flags } => {
            let a = load_input(&input)?;
            let opts = options(&flags)?;
            let det = det_dispatch(&a, &opts).map_err(|e| match e {
                DetError::GrassmanFormat => Failure::new(
                    EXIT_FORMAT,
                    "grassman format has no single determinant; use `plucker`",
                ),
                other => other.into(),
            })?;
            if json {
                let mut report = json!({
                    "format": a.format().dims(),
                    "method": det.method.to_string(),
                    "value": det.value.to_string(),
                });
                if let Some(p) = det.value.as_polynomial() {
                    report["polynomial"] =
                        serde_json::to_value(p.to_json()).expect("interchange serializes");
                }
                emit(&flags, &pretty(&report))
            } else {
                emit(&flags, &det.value.to_string())
            }
        }
        Command::ClosedDet { input, flags } => {
            let a = load_input(&input)?;
            let opts = options(&flags)?;
            let closed = closed_det(&a, &opts)?;
            let factors: Vec<_> = closed
                .factors
                .iter()
                .map(|(sel, det)| {
                    json!({
                        "selection": sel,
                        "method": det.method.to_string(),
                        "value": det.value.to_string(),
                    })
                })
                .collect();
            let report = json!({
                "format": a.format().dims(),
                "factors": factors,
                "expanded": closed.expanded.to_string(),
            });
            emit(&flags, &pretty(&report))
        }
        Command::Minors { input, flags } => {
            let a = load_input(&input)?;
            let opts = options(&flags)?;
            let mut items = Vec::new();
            for (sel, sub) in crate::mdmatrix::enumerate_minor_subformats(a.format()) {
                let minor = a.subtensor(&sel)?;
                let value = match det_dispatch(&minor, &opts) {
                    Ok(det) => det.value.to_string(),
                    Err(DetError::Unsupported(_)) => "unsupported".to_string(),
                    Err(e) => return Err(e.into()),
                };
                items.push(json!({
                    "selection": sel,
                    "format": sub.dims(),
                    "value": value,
                }));
            }
            let report = json!({"format": a.format().dims(), "minors": items});
            emit(&flags, &pretty(&report))
        }
        Command::Plucker { input, flags } => {
            let a = load_input(&input)?;
            let opts = options(&flags)?;
            let v = hyperplucker(&a, &opts)?;
            let coords: Vec<_> = v
                .coords
                .iter()
                .map(|(cols, det)| json!({"columns": cols, "value": det.value.to_string()}))
                .collect();
            let report = json!({
                "format": a.format().dims(),
                "minorFormat": v.minor_format,
                "coords": coords,
                "allVanish": v.all_vanish(),
            });
            emit(&flags, &pretty(&report))
        }
        Command::Corank { input, flags } => {
            let a = load_input(&input)?;
            let report = corank_22n(&a)?;
            let out = json!({
                "format": a.format().dims(),
                "rank": report.rank,
                "corankOne": report.corank_one,
            });
            emit(&flags, &pretty(&out))
        }
        Command::MakeDegenerate { format, flags } => {
            let f = parse_format_literal(&format)
                .ok_or_else(|| Failure::new(EXIT_PARSE, format!("invalid format '{format}'")))?;
            let (matrix, witness) = make_degenerate(&f, flags.seed)?;
            if !witness_check(&matrix, &witness)? {
                return Err(Failure::new(
                    EXIT_CONSISTENCY,
                    "constructed matrix fails its own witness check",
                ));
            }
            let matrix_text = matrix.to_json_string();
            let witness_text = witness_to_json_string(&witness);
            match &flags.output {
                Some(path) => {
                    write_file(path, &format!("{matrix_text}\n"))?;
                    let wpath = path.with_extension("witness.json");
                    write_file(&wpath, &format!("{witness_text}\n"))?;
                    print_stdout(&format!(
                        "wrote {} and {}",
                        path.display(),
                        wpath.display()
                    ))
                }
                None => {
                    print_stdout(&matrix_text)?;
                    print_stdout(&witness_text)
                }
            }
        }
        Command::Verify { input, flags } => {
            let a = load_input(&input)?;
            let checks = verify_battery(&a, &flags)?;
            let all_passed = checks.iter().all(|c| c["status"] != json!("fail"));
            let out = json!({
                "format": a.format().dims(),
                "checks": checks,
                "allPassed": all_passed,
            });
            emit(&flags, &pretty(&out))?;
            if all_passed {
                Ok(())
            } else {
                Err(Failure::new(EXIT_CONSISTENCY, "verification failed"))
            }
        }
        Command::Diagonal {
            input,
            variant,
            flags,
        } => {
            let a = load_input(&input)?;
            let f = a.format();
            let variant = match variant.as_deref() {
                Some("closed") => DiagonalVariant::Closed,
                Some("boundary") => DiagonalVariant::Boundary,
                Some(other) => {
                    return Err(Failure::new(
                        EXIT_PARSE,
                        format!("unknown variant '{other}' (expected closed|boundary)"),
                    ))
                }
                None => match f.classify() {
                    FormatClass::Boundary { distinguished } if distinguished == f.d() => {
                        DiagonalVariant::Boundary
                    }
                    FormatClass::Square2d => DiagonalVariant::Boundary,
                    _ => DiagonalVariant::Closed,
                },
            };
            let opts = options(&flags)?;
            let m = diagonal_monomial(f, variant, opts.max_terms).map_err(DetError::from)?;
            emit(&flags, &m.to_string())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("report serialization cannot fail")
}

fn options(flags: &CommonFlags) -> Result<DetOptions, Failure> {
    let policy = EnginePolicy::from_name(&flags.policy)
        .ok_or_else(|| Failure::new(EXIT_PARSE, format!("unknown policy '{}'", flags.policy)))?;
    let env_cap = std::env::var("HYPERDET_MAX_TERMS")
        .ok()
        .and_then(|v| v.parse::<u64>().ok());
    let max_terms = flags
        .max_terms
        .or(env_cap)
        .unwrap_or_else(|| DetOptions::default().max_terms);
    Ok(DetOptions {
        policy,
        max_terms,
        threads: flags.threads.max(1),
    })
}

fn parse_format_literal(text: &str) -> Option<Format> {
    let body = text.trim().strip_prefix('[')?.strip_suffix(']')?;
    let dims: Option<Vec<usize>> = body
        .split(',')
        .map(|p| p.trim().parse::<usize>().ok().filter(|&n| n >= 1))
        .collect();
    let dims = dims?;
    if dims.is_empty() {
        return None;
    }
    Some(Format::new(dims))
}

/// A path to a matrix file, or an inline format literal standing for the
/// symbolic matrix of that format.
fn load_input(input: &str) -> Result<MDMatrix, Failure> {
    if let Some(f) = parse_format_literal(input) {
        return Ok(MDMatrix::symbolic(f));
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read '{input}': {e}")))?;
    Ok(MDMatrix::from_json_str(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write '{}': {e}", path.display())))
}

fn emit(flags: &CommonFlags, text: &str) -> Result<(), Failure> {
    match &flags.output {
        Some(path) => write_file(path, &format!("{text}\n")),
        None => print_stdout(text),
    }
}

/// Prints a line, treating a closed pipe as a clean early exit.
fn print_stdout(text: &str) -> Result<(), Failure> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(EXIT_OK),
        Err(e) => Err(Failure::new(EXIT_PARSE, format!("cannot write output: {e}"))),
    }
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn classify_report(f: &Format) -> Result<serde_json::Value, Failure> {
    let class = f.classify();
    let mut report = json!({
        "format": f.dims(),
        "class": class.to_string(),
        "mSequence": f.m_sequence(),
    });
    match class {
        FormatClass::Boundary { distinguished } => {
            report["distinguished"] = json!(distinguished);
            report["degree"] = json!(degree_boundary(f)?.to_string());
        }
        FormatClass::Square2d => {
            report["degree"] = json!(degree_boundary(f)?.to_string());
        }
        FormatClass::Grassman => {
            let dims = f.dims();
            let d = dims.len();
            let m = dims[d - 1];
            let m_r = 1 + dims[..d - 1].iter().map(|&n| n - 1).sum::<usize>();
            if m > m_r {
                let mut minor_format = dims[..d - 1].to_vec();
                minor_format.push(m_r);
                report["pluckerLength"] = json!(binomial_u128(m, m_r).to_string());
                report["minorFormat"] = json!(minor_format);
            }
        }
        FormatClass::Inner => {}
    }
    Ok(report)
}

/// Seeded invariant battery: classification consistency, the degree law,
/// witness vanishing, random nonvanishing, exact invariance under
/// determinant-one transforms, worker-count determinism, and grassman
/// coordinate checks. Each check reports pass, fail, or skipped.
fn verify_battery(a: &MDMatrix, flags: &CommonFlags) -> Result<Vec<serde_json::Value>, Failure> {
    let opts = options(&flags.clone())?;
    let f = a.format().clone();
    let mut checks: Vec<serde_json::Value> = Vec::new();
    let push = |checks: &mut Vec<serde_json::Value>, name: &str, status: &str, detail: String| {
        checks.push(json!({"name": name, "status": status, "detail": detail}));
    };

    let class = f.classify();
    push(&mut checks, "classify", "pass", format!("class={class}"));

    let m = f.m_sequence();
    let ok = (1..m.len()).all(|k| m[k] == m[k - 1] + f.dims()[k - 1] - 1)
        && m[f.d()] == 1 + f.dims().iter().sum::<usize>() - f.d();
    push(
        &mut checks,
        "m-sequence",
        if ok { "pass" } else { "fail" },
        format!("{m:?}"),
    );

    if matches!(class, FormatClass::Boundary { .. } | FormatClass::Square2d) {
        let degree = degree_boundary(&f)?;
        let (dims, _) = f.reduced();
        let reduced = Format::new(dims.clone());
        let dist = match reduced.classify() {
            FormatClass::Boundary { distinguished } => distinguished,
            _ => 2,
        };
        let levels: Vec<usize> = dims
            .iter()
            .enumerate()
            .filter(|(k, _)| k + 1 != dist)
            .map(|(_, &n)| n)
            .collect();
        let count = QSpace::count_c(&levels);
        push(
            &mut checks,
            "degree-law",
            if degree == count { "pass" } else { "fail" },
            format!("degree={degree} enumerated={count}"),
        );
    }

    let dispatchable =
        det_dispatch(&MDMatrix::random_rational(f.clone(), 0, 3), &opts).is_ok();

    if dispatchable {
        let samples = flags.samples.max(1);
        let mut failures = 0u32;
        for s in 0..samples as u64 {
            let (m, w) = make_degenerate(&f, flags.seed.wrapping_add(s))?;
            if !witness_check(&m, &w)? || !det_dispatch(&m, &opts)?.value.is_zero() {
                failures += 1;
            }
        }
        push(
            &mut checks,
            "witness-vanishing",
            if failures == 0 { "pass" } else { "fail" },
            format!("{samples} seeded degenerate samples, {failures} nonzero"),
        );

        let mut zero_hits = 0u32;
        for s in 0..samples as u64 {
            let m = MDMatrix::random_rational(f.clone(), 1_000_000 + flags.seed + s, flags.bound);
            if det_dispatch(&m, &opts)?.value.is_zero() {
                zero_hits += 1;
            }
        }
        push(
            &mut checks,
            "random-nonzero",
            if zero_hits == 0 { "pass" } else { "fail" },
            format!("{samples} random samples, {zero_hits} vanished"),
        );

        let base = MDMatrix::random_rational(f.clone(), 42 + flags.seed, flags.bound);
        let reference = det_dispatch(&base, &opts)?.value;
        let mut drift = 0u32;
        for (k, &n) in f.dims().iter().enumerate() {
            if n < 2 {
                continue;
            }
            for s in 0..20u64 {
                let g = random_unimodular(n, flags.seed + 7 * s + k as u64);
                let moved = gl_action(&base, k + 1, &g)?;
                if det_dispatch(&moved, &opts)?.value != reference {
                    drift += 1;
                }
            }
        }
        push(
            &mut checks,
            "sl-invariance",
            if drift == 0 { "pass" } else { "fail" },
            format!("20 unimodular transforms per direction, {drift} drifted"),
        );

        let sym = MDMatrix::symbolic(f.clone());
        match det_dispatch(&sym, &opts) {
            Ok(det) => {
                let p = det.polynomial();
                match multidegree_profile(p, &f) {
                    Ok(profile) => push(
                        &mut checks,
                        "multidegree",
                        "pass",
                        format!("terms={} profile={profile:?}", p.num_terms()),
                    ),
                    Err(e) => push(&mut checks, "multidegree", "fail", e),
                }
                let mut distinct = false;
                for threads in [2usize, 8] {
                    let alt = det_dispatch(
                        &sym,
                        &DetOptions {
                            threads,
                            ..opts.clone()
                        },
                    )?;
                    if alt.polynomial() != p {
                        distinct = true;
                    }
                }
                push(
                    &mut checks,
                    "determinism-threads",
                    if distinct { "fail" } else { "pass" },
                    "byte-identical across 1, 2, 8 workers".into(),
                );
            }
            Err(DetError::SizeGuard(msg)) => {
                push(&mut checks, "multidegree", "skipped", msg);
            }
            Err(e) => return Err(e.into()),
        }
    } else if matches!(class, FormatClass::Inner) {
        push(
            &mut checks,
            "determinant",
            "skipped",
            "inner format without a pencil route".into(),
        );
    }

    if matches!(class, FormatClass::Grassman) {
        let dims = f.dims();
        let d = dims.len();
        let m_r = 1 + dims[..d - 1].iter().map(|&n| n - 1).sum::<usize>();
        if dims[d - 1] > m_r {
            let samples = flags.samples.clamp(1, 10);
            let mut vanished = 0u32;
            for s in 0..samples as u64 {
                let inst = MDMatrix::random_rational(f.clone(), flags.seed + s, flags.bound);
                if hyperplucker(&inst, &opts)?.all_vanish() {
                    vanished += 1;
                }
            }
            push(
                &mut checks,
                "plucker-random-nonvanishing",
                if vanished == 0 { "pass" } else { "fail" },
                format!("{samples} random coordinate vectors, {vanished} vanished entirely"),
            );
        } else {
            push(
                &mut checks,
                "plucker",
                "skipped",
                "oversized direction is not last".into(),
            );
        }
    }

    if f.len() <= 8 && dispatchable {
        match quotient_identity_check(&f, &opts) {
            Ok(report) => push(
                &mut checks,
                "quotient-identity",
                "pass",
                format!("factor degrees {:?}", report.factor_degrees),
            ),
            Err(DetError::SizeGuard(msg)) => {
                push(&mut checks, "quotient-identity", "skipped", msg)
            }
            Err(e) => push(&mut checks, "quotient-identity", "fail", e.to_string()),
        }
    }

    Ok(checks)
}
