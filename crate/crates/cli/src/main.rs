use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use recpos::certify::{
    auto_certify_positive, certify_logconvex, certify_positive_with, verify_certificate, Certificate,
    LogConvexError, LogConvexityCertificate, PositivityCertificate,
};
use recpos::contfrac::{refute_positivity, rho_lower_bounds};
use recpos::corpus::{corpus_get, corpus_keys, corpus_lookup, is_corpus_key, standard_instances, CorpusEntry};
use recpos::exactmath::{parse_rational, to_decimal, ExactReal, Rational};
use recpos::report::{analyze, AnalysisReport, AnalyzeOptions};
use recpos::tridiag::{is_tn_contiguous, is_tn_leading, m1_truncation};
use recpos::Recurrence;

// Stdout write errors, such as a closed pipe, are ignored.
macro_rules! println {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! print {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

const EXIT_VERDICT: u8 = 0;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

/// Positivity and log-convexity of three-term recurrences with polynomial coefficients.
///
/// INPUT is a corpus key such as `szego` or `straub(1/2)`, or a path to a
/// recurrence JSON file.
#[derive(Parser)]
#[command(name = "recpos", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify, certify or refute, and tabulate terms.
    Analyze {
        input: Option<String>,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        #[arg(long, default_value_t = 50)]
        mmax: u64,
        #[arg(long, default_value = "1/1000000000")]
        cf_tol: String,
        #[arg(long)]
        json: bool,
        /// Render numbers as decimals with P digits.
        #[arg(long, value_name = "P")]
        decimal: Option<usize>,
        /// Analyze every built-in instance.
        #[arg(long, conflicts_with = "input")]
        all_corpus: bool,
    },
    /// Print u_0 … u_N.
    Terms {
        input: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "P")]
        decimal: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Positivity certificate for a given or searched lambda0.
    Certify {
        input: String,
        /// A rational, `lambda1`, or `auto`.
        #[arg(long, default_value = "auto")]
        lambda0: String,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 50)]
        mmax: u64,
        #[arg(long)]
        json: bool,
    },
    /// Log-convexity certificate at a given or searched start index.
    Logconvex {
        input: String,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 50)]
        mmax: u64,
        #[arg(long)]
        json: bool,
    },
    /// Continued-fraction lower bounds for rho_0 and the refutation test.
    Cf {
        input: String,
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
        #[arg(long, default_value_t = 500)]
        iters: u64,
        #[arg(long, value_name = "P", default_value_t = 15)]
        decimal: usize,
        #[arg(long)]
        json: bool,
    },
    /// Total-nonnegativity of the k×k truncation whose leading minors are u_1 … u_k.
    Tn {
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Built-in instances.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Recompute every obligation of the certificates in a JSON file.
    VerifyCert { file: String },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Show {
        key: String,
        #[arg(long)]
        param: Option<String>,
    },
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<u8, InputError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_VERDICT };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn load(input: &str) -> Result<Recurrence, InputError> {
    if is_corpus_key(input) {
        return Ok(corpus_lookup(input)?.rec);
    }
    let text = fs::read_to_string(input).map_err(|e| format!("cannot read `{}`: {}", input, e))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("invalid recurrence in `{}`: {}", input, e)))
}

fn rational(s: &str) -> Result<Rational, InputError> {
    Ok(parse_rational(s)?)
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Analyze { input, terms, mmax, cf_tol, json, decimal, all_corpus } => {
            let opts = AnalyzeOptions { terms, m_max: mmax, cf_tol: rational(&cf_tol)?, decimal, ..Default::default() };
            if all_corpus {
                return analyze_all(&opts, json);
            }
            let input = input.ok_or_else(|| InputError("analyze needs an input or --all-corpus".into()))?;
            let report = analyze(&load(&input)?, &opts);
            if json {
                print_json(&report);
            } else {
                print!("{}", report);
            }
            Ok(if report.is_conclusive() { EXIT_VERDICT } else { EXIT_INCONCLUSIVE })
        }
        Command::Terms { input, n, decimal, json } => {
            let u = load(&input)?.terms(n);
            let shown: Vec<String> = u
                .iter()
                .map(|x| decimal.map_or_else(|| x.to_string(), |d| to_decimal(x, d)))
                .collect();
            if json {
                print_json(&shown);
            } else {
                for (i, s) in shown.iter().enumerate() {
                    println!("{} {}", i, s);
                }
            }
            Ok(EXIT_VERDICT)
        }
        Command::Certify { input, lambda0, m, mmax, json } => certify(&load(&input)?, &lambda0, m, mmax, json),
        Command::Logconvex { input, m, mmax, json } => logconvex(&load(&input)?, m, mmax, json),
        Command::Cf { input, tol, iters, decimal, json } => {
            let rec = load(&input)?;
            let est = rho_lower_bounds(&rec, &rational(&tol)?, iters)?;
            let refutation = refute_positivity(&rec, iters);
            if json {
                print_json(&json!({ "estimate": est.summary(decimal, 10), "refutation": refutation }));
            } else {
                match &est.rho_hat {
                    Some(r) => println!("rho_0 >= {} after {} iterations", to_decimal(r, decimal), est.iterations),
                    None => println!("no bound"),
                }
                println!("converged: {}, rigorous: {}", est.converged, est.rigorous);
                if let Some(n) = est.divergence_at {
                    println!("nonpositive minor at n = {}", n);
                }
                println!("refutation: {}", serde_json::to_string(&refutation).expect("serializable"));
            }
            Ok(EXIT_VERDICT)
        }
        Command::Tn { input, k, json } => {
            let rec = load(&input)?;
            let t = m1_truncation(&rec, k)?;
            let minors = t.leading_principal_minors();
            let leading = is_tn_leading(&t);
            let contiguous = is_tn_contiguous(&t).ok();
            if json {
                print_json(&json!({
                    "k": k,
                    "matrix": t,
                    "leading_minors": minors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "tn_leading": leading,
                    "tn_contiguous": contiguous,
                }));
            } else {
                for (i, x) in minors.iter().enumerate() {
                    println!("minor {} = {}", i + 1, x);
                }
                println!("TN up to order {}: {}", k, leading);
            }
            Ok(EXIT_VERDICT)
        }
        Command::Corpus { action: CorpusAction::List } => {
            for k in corpus_keys() {
                println!("{}", k);
            }
            Ok(EXIT_VERDICT)
        }
        Command::Corpus { action: CorpusAction::Show { key, param } } => {
            let entry = match param {
                Some(p) => corpus_get(&key, Some(&rational(&p)?))?,
                None => corpus_lookup(&key)?,
            };
            print_json(&show(&entry));
            Ok(EXIT_VERDICT)
        }
        Command::VerifyCert { file } => verify(&file),
    }
}

/// Recurrence fields at top level so the output is itself a valid input.
fn show(entry: &CorpusEntry) -> Value {
    let mut v = serde_json::to_value(&entry.rec).expect("serializable");
    let obj = v.as_object_mut().unwrap();
    obj.insert("expected".into(), json!(entry.expected));
    obj.insert("notes".into(), json!(entry.notes));
    if let Some(m) = &entry.metadata {
        obj.insert("metadata".into(), json!(m));
    }
    v
}

fn analyze_all(opts: &AnalyzeOptions, json: bool) -> Outcome {
    let entries = standard_instances();
    let reports: Vec<AnalysisReport> = std::thread::scope(|s| {
        let handles: Vec<_> = entries.iter().map(|e| s.spawn(|| analyze(&e.rec, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("analysis thread")).collect()
    });
    if json {
        print_json(&reports);
    } else {
        for r in &reports {
            println!("{}", r);
        }
    }
    Ok(if reports.iter().all(AnalysisReport::is_conclusive) { EXIT_VERDICT } else { EXIT_INCONCLUSIVE })
}

fn certify(rec: &Recurrence, lambda0: &str, m: Option<u64>, mmax: u64, json: bool) -> Outcome {
    let fixed = match lambda0 {
        "auto" => None,
        "lambda1" => Some(
            rec.characteristic()
                .lambda1()
                .cloned()
                .ok_or_else(|| InputError("lambda1 does not exist: negative discriminant".into()))?,
        ),
        q => Some(ExactReal::from(rational(q)?)),
    };
    let result = match (fixed, m) {
        (None, None) => auto_certify_positive(rec, mmax).map_err(|ex| {
            format!("no certificate with m <= {} ({} attempts)", mmax, ex.attempts.len())
        }),
        (None, Some(m)) => {
            // Fixed m, candidate lambda0 values in order.
            let mut last = String::from("no positive candidate");
            let mut found = None;
            for lam in recpos::certify::lambda_candidates(rec) {
                match certify_positive_with(rec, &lam, m) {
                    Ok(c) => {
                        found = Some(c);
                        break;
                    }
                    Err(f) => last = format!("lambda0 = {}: {}", lam, f),
                }
            }
            found.ok_or(last)
        }
        (Some(lam), m) => certify_positive_with(rec, &lam, m.unwrap_or(0)).map_err(|f| f.to_string()),
    };
    emit_certificate(rec, result.map(Certificate::Positivity), json)
}

fn logconvex(rec: &Recurrence, m: Option<u64>, mmax: u64, json: bool) -> Outcome {
    let result: Result<LogConvexityCertificate, String> = match m {
        Some(m) => certify_logconvex(rec, m).map_err(|e| e.to_string()),
        None => {
            let mut last = String::new();
            let mut found = None;
            for m in 0..=mmax {
                match certify_logconvex(rec, m) {
                    Ok(c) => {
                        found = Some(c);
                        break;
                    }
                    Err(e @ LogConvexError::Precondition { .. }) => {
                        last = e.to_string();
                        break;
                    }
                    Err(e) => last = format!("m = {}: {}", m, e),
                }
            }
            found.ok_or(last)
        }
    };
    emit_certificate(rec, result.map(Certificate::LogConvexity), json)
}

fn emit_certificate(rec: &Recurrence, result: Result<Certificate, String>, json: bool) -> Outcome {
    match result {
        Ok(cert) => {
            if json {
                print_json(&json!({ "recurrence": rec, "certificate": cert }));
            } else {
                let (lam, m) = match &cert {
                    Certificate::Positivity(c) => (c.lambda0.to_string(), c.m),
                    Certificate::LogConvexity(c) => (c.lambda0.to_string(), c.m),
                };
                println!("certified: lambda0 = {}, m = {}", lam, m);
            }
            Ok(EXIT_VERDICT)
        }
        Err(why) => {
            if json {
                print_json(&json!({ "recurrence": rec, "failure": why }));
            } else {
                println!("not certified: {}", why);
            }
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

/// Accepts `certify`/`logconvex --json` output or an `analyze --json` report.
fn verify(file: &str) -> Outcome {
    let text = fs::read_to_string(file).map_err(|e| format!("cannot read `{}`: {}", file, e))?;
    let doc: Value = serde_json::from_str(&text)?;
    let rec_value = doc.get("recurrence").or_else(|| doc.get("input")).ok_or("no recurrence in file")?;
    let rec: Recurrence = serde_json::from_value(rec_value.clone())?;
    let mut certs = Vec::new();
    if let Some(c) = doc.get("certificate") {
        certs.push(serde_json::from_value::<Certificate>(c.clone())?);
    }
    if let Some(c) = doc.pointer("/positivity/certificate") {
        certs.push(Certificate::Positivity(serde_json::from_value::<PositivityCertificate>(c.clone())?));
    }
    if let Some(c) = doc.pointer("/log_convexity/certificate") {
        certs.push(Certificate::LogConvexity(serde_json::from_value::<LogConvexityCertificate>(c.clone())?));
    }
    if certs.is_empty() {
        return Err(InputError("no certificate in file".into()));
    }
    let mut ok = true;
    for cert in &certs {
        let kind = match cert {
            Certificate::Positivity(_) => "positivity",
            Certificate::LogConvexity(_) => "log-convexity",
        };
        match verify_certificate(&rec, cert) {
            Ok(()) => println!("{} certificate verified", kind),
            Err(f) => {
                println!("{} certificate rejected: {}", kind, f);
                ok = false;
            }
        }
    }
    Ok(if ok { EXIT_VERDICT } else { EXIT_INCONCLUSIVE })
}
