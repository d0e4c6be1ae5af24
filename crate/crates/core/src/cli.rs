//! Command-line front end. [`run`] parses an argument vector and returns the
//! exit code with the text destined for stdout and stderr.

pub mod suites;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::charring::{
    buchberger_with, gm_generators, manifold_ideal, quotient_dimension, CharringError, GroebnerBasis, GroebnerError,
    Limits, MonomialOrder, Presentation, QuotientDimension, DEFAULT_BUDGET,
};
use crate::reduce::{psi_normal_form, psi_normal_form_traced, reduce_to_t_traced, ReductionTrace};
use crate::repeval::{eval_poly, verify_identity, Mode, Representation};
use crate::symgroup::{young_symmetrizer, Tableau};
use crate::tracepoly::TracePolynomial;
use crate::words::{ConjClass, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "skeinchar",
    version,
    about = "Trace polynomials, Procesi identities and character ideals"
)]
struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Canonical representative of the class of a word up to conjugation and inversion.
    Canon { word: String },
    /// Rewrite into the coordinates t_I.
    Reduce {
        poly: String,
        #[arg(long)]
        trace: bool,
    },
    /// Rewrite into the coordinates t_I with |I| <= 3.
    Reduce0 {
        poly: String,
        #[arg(long)]
        trace: bool,
    },
    /// Young symmetrizer of a row-filled tableau, read as a trace polynomial.
    Symmetrizer {
        #[arg(long, value_delimiter = ',', required = true)]
        partition: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        letters: Vec<String>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Check that every symmetrizer with at least three rows vanishes on 2x2 matrices.
    ProcesiCheck {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        allow_large: bool,
    },
    /// Generators of the handlebody ideal.
    Gm {
        #[arg(long)]
        n: u32,
    },
    /// Generators of the ideal of a presentation.
    Ideal {
        #[arg(long)]
        pres: PathBuf,
    },
    /// Reduced Gröbner basis of the ideal of a presentation.
    Gb {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long, default_value = "grevlex")]
        order: OrderArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Whether the coordinate normal form of a polynomial lies in the ideal.
    Member {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "grevlex")]
        order: OrderArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Dimension of the quotient ring of the ideal of a presentation.
    Qdim {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long, default_value = "grevlex")]
        order: OrderArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Evaluate a polynomial at a representation file.
    Eval {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Evaluate a polynomial on random representations.
    Verify {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "sl2")]
        mode: ModeArg,
        #[arg(long, default_value_t = 50)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run a bundled verification suite.
    Suite {
        name: SuiteName,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => MonomialOrder::Grevlex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Sl2,
    Any,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Sl2 => Mode::Sl2,
            ModeArg::Any => Mode::Any,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum SuiteName {
    Identities,
    Procesi,
    Gm,
    Charrings,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.to_string(),
    }
}

impl From<CharringError> for Failure {
    fn from(e: CharringError) -> Self {
        let code = match e {
            CharringError::Groebner(GroebnerError::BudgetExceeded(_) | GroebnerError::Cancelled) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Text and JSON renderings of a command result plus its exit code.
struct Report {
    code: i32,
    text: String,
    json: Value,
    /// Timing lines for stderr, kept out of stdout so it stays reproducible.
    timings: String,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            code: EXIT_OK,
            text,
            json,
            timings: String::new(),
        }
    }
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli.cmd);
    let elapsed = start.elapsed();
    match result {
        Ok(report) => {
            let mut stdout = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("json values serialize")
            } else {
                report.text
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code: report.code,
                stdout,
                stderr: format!("{}elapsed: {:.3}s\n", report.timings, elapsed.as_secs_f64()),
            }
        }
        Err(f) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&json!({"error": f.message, "exit_code": f.code}))
                    .expect("json values serialize");
                s.push('\n');
                s
            } else {
                String::new()
            };
            Outcome {
                code: f.code,
                stdout,
                stderr: format!("error: {}\n", f.message),
            }
        }
    }
}

fn parse_poly(s: &str) -> Result<TracePolynomial, Failure> {
    s.parse().map_err(usage)
}

fn parse_letter(s: &str) -> Result<u32, Failure> {
    let w: Word = s.parse().map_err(usage)?;
    match w.letters() {
        [l] if !l.is_inverse() => Ok(l.index()),
        _ => Err(usage(format!("`{s}` is not a single generator letter"))),
    }
}

fn read_presentation(path: &Path) -> Result<Presentation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    text.parse().map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn poly_list(ps: &[TracePolynomial]) -> (String, Value) {
    let strs: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    (strs.join("\n"), json!(strs))
}

fn groebner(pres: &Presentation, order: OrderArg, budget: u64) -> Result<GroebnerBasis, Failure> {
    let limits = Limits { budget, cancel: None };
    Ok(buchberger_with(&manifold_ideal(pres), order.into(), &limits)?)
}

fn trace_report(t: &ReductionTrace, show: bool) -> Report {
    let mut text = String::new();
    if show {
        for s in &t.steps {
            text.push_str(&format!("{}: {} -> {}\n", s.rule, s.var, s.replacement));
        }
    }
    text.push_str(&t.output.to_string());
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(
            |s| json!({"rule": s.rule.to_string(), "var": s.var.to_string(), "replacement": s.replacement.to_string()}),
        )
        .collect();
    let mut j = json!({"input": t.input.to_string(), "output": t.output.to_string()});
    if show {
        j["steps"] = json!(steps);
    }
    Report::ok(text, j)
}

fn qdim_value(d: QuotientDimension) -> Value {
    match d {
        QuotientDimension::Finite(k) => json!(k),
        QuotientDimension::Infinite => json!("INFINITE"),
    }
}

fn dispatch(cmd: &Cmd) -> Result<Report, Failure> {
    match cmd {
        Cmd::Canon { word } => {
            let w: Word = word.parse().map_err(usage)?;
            let c = ConjClass::of(&w);
            Ok(Report::ok(
                c.to_string(),
                json!({"input": word, "canonical": c.to_string()}),
            ))
        }
        Cmd::Reduce { poly, trace } => {
            let p = parse_poly(poly)?;
            Ok(trace_report(&reduce_to_t_traced(&p), *trace))
        }
        Cmd::Reduce0 { poly, trace } => {
            let p = parse_poly(poly)?;
            Ok(trace_report(&psi_normal_form_traced(&p), *trace))
        }
        Cmd::Symmetrizer {
            partition,
            letters,
            allow_large,
        } => {
            let letters: Vec<u32> = letters.iter().map(|s| parse_letter(s)).collect::<Result<_, _>>()?;
            if letters.len() > crate::symgroup::DEFAULT_MAX_M && !allow_large {
                return Err(usage(crate::symgroup::SymError::TooLarge(letters.len())));
            }
            let y = Tableau::canonical(partition, &letters).map_err(usage)?;
            let s = young_symmetrizer(&y);
            let p = s.to_trace_poly();
            Ok(Report::ok(
                p.to_string(),
                json!({"tableau": y.to_string(), "group_algebra_terms": s.num_terms(), "polynomial": p.to_string()}),
            ))
        }
        Cmd::ProcesiCheck {
            m,
            trials,
            seed,
            allow_large,
        } => {
            let report = suites::procesi_check(*m, *trials, *seed, *allow_large).map_err(usage)?;
            Ok(suite_report(&report))
        }
        Cmd::Gm { n } => {
            let (text, list) = poly_list(&gm_generators(*n));
            Ok(Report::ok(text, json!({"n": n, "generators": list})))
        }
        Cmd::Ideal { pres } => {
            let p = read_presentation(pres)?;
            let ideal = manifold_ideal(&p);
            let (text, list) = poly_list(&ideal.generators);
            Ok(Report::ok(text, json!({"generators": list})))
        }
        Cmd::Gb { pres, order, budget } => {
            let p = read_presentation(pres)?;
            let g = groebner(&p, *order, *budget)?;
            let (text, list) = poly_list(g.basis());
            Ok(Report::ok(text, json!({"order": g.order().to_string(), "basis": list})))
        }
        Cmd::Member {
            pres,
            poly,
            order,
            budget,
        } => {
            let p = read_presentation(pres)?;
            let q = psi_normal_form(&parse_poly(poly)?);
            let member = if q.is_zero() {
                true
            } else {
                match groebner(&p, *order, *budget)?.member(&q) {
                    Ok(b) => b,
                    Err(CharringError::ForeignVariable { .. }) => false,
                    Err(e) => return Err(e.into()),
                }
            };
            Ok(Report::ok(
                member.to_string(),
                json!({"normal_form": q.to_string(), "member": member}),
            ))
        }
        Cmd::Qdim { pres, order, budget } => {
            let p = read_presentation(pres)?;
            let g = groebner(&p, *order, *budget)?;
            let d = quotient_dimension(&g);
            let (_, list) = poly_list(g.basis());
            Ok(Report::ok(
                d.to_string(),
                json!({"basis": list, "dimension": qdim_value(d)}),
            ))
        }
        Cmd::Eval { rep, poly } => {
            let text = fs::read_to_string(rep).map_err(|e| usage(format!("{}: {e}", rep.display())))?;
            let r: Representation = text.parse().map_err(usage)?;
            let p = parse_poly(poly)?;
            let v = eval_poly(&r, &p).map_err(usage)?;
            Ok(Report::ok(v.to_string(), json!({"value": v.to_string()})))
        }
        Cmd::Verify {
            poly,
            mode,
            trials,
            seed,
        } => {
            let p = parse_poly(poly)?;
            let r = verify_identity(&p, *trials, *seed, (*mode).into()).map_err(usage)?;
            let mut text = format!("seed: {}\ntrials: {}\nmode: {}\n", r.seed, r.trials, r.mode);
            let counter = match &r.counterexample {
                None => {
                    text.push_str("result: pass");
                    Value::Null
                }
                Some(c) => {
                    text.push_str(&format!(
                        "result: FAIL\ntrial: {}\nvalue: {}\n{}",
                        c.trial, c.value, c.representation
                    ));
                    let mats: BTreeMap<String, String> = c
                        .representation
                        .matrices()
                        .iter()
                        .map(|(k, m)| (format!("a{k}"), m.to_string()))
                        .collect();
                    json!({"trial": c.trial, "value": c.value.to_string(), "representation": mats})
                }
            };
            Ok(Report {
                code: if r.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED },
                text,
                json: json!({"seed": r.seed, "trials": r.trials, "mode": r.mode.to_string(),
                             "passed": r.passed(), "counterexample": counter}),
                timings: String::new(),
            })
        }
        Cmd::Suite { name, seed } => {
            let report = suites::run_suite(*name, *seed);
            Ok(suite_report(&report))
        }
    }
}

fn suite_report(r: &suites::SuiteReport) -> Report {
    let mut text = format!("suite: {}\nseed: {}\n", r.name, r.seed);
    for c in &r.checks {
        text.push_str(&format!(
            "[{}] {}: {}\n",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    text.push_str(if r.passed() { "result: pass" } else { "result: FAIL" });
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let timings = r
        .checks
        .iter()
        .map(|c| format!("time {:.3}s {}\n", c.elapsed.as_secs_f64(), c.name))
        .collect();
    Report {
        code: if r.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED },
        text,
        json: json!({"suite": r.name, "seed": r.seed, "checks": checks, "passed": r.passed()}),
        timings,
    }
}
