//! Front end for `repknot`: argument handling, dispatch and report rendering.
//!
//! Every command produces a JSON envelope
//! `{tool, version, command, input, rng_seed, timing, result}`. The text
//! output is a view of the same `result` value. Apart from `timing`, the
//! envelope is a pure function of the flags.

pub mod args;
pub mod report;

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use repknot::corpus::{default_corpus, load_corpus, Corpus};
use repknot::diagram::parse_notation;
use repknot::variety::{ScanOptions, SolveOptions};
use repknot::Error;

pub use args::{Cli, Command, InputArgs, ScanArgs, ToleranceProfile};
use report::*;

pub const TOOL: &str = "repknot";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod exit {
    pub const OK: i32 = 0;
    /// A well-formed request the mathematics refuses (e.g. zero determinant).
    pub const REFUSED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedNotation(_)
            | Error::NonPlanarOrInconsistent(_)
            | Error::LetterOutOfRange { .. } => Failure::Usage(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn subject(input: &str) -> Result<Subject, Failure> {
    let diagram = match default_corpus().get(input.trim()) {
        Some(e) => e.diagram.clone(),
        None => parse_notation(input)?,
    };
    Ok(Subject::new(diagram))
}

fn scan_options(s: &ScanArgs, profile: ToleranceProfile, force_pin: bool) -> ScanOptions {
    let mut o = ScanOptions::new(s.seeds, s.rng, s.pin_meridian || force_pin);
    if profile == ToleranceProfile::Strict {
        o.solve = SolveOptions {
            max_iterations: 2000,
            target: 1e-30,
        };
    }
    o
}

fn corpus_result(c: &Corpus, opts: ScanOptions) -> Result<Value, Failure> {
    let rows = c
        .entries
        .iter()
        .map(|e| corpus_row(&e.name, &e.notation, &Subject::new(e.diagram.clone()), opts))
        .collect::<repknot::Result<Vec<_>>>()?;
    let all_pass = rows
        .iter()
        .all(|r| r.congruences && r.class_count_matches.unwrap_or(true));
    let diagnostics: Vec<Value> = c
        .diagnostics
        .iter()
        .map(|d| json!({"line": d.line, "message": d.message}))
        .collect();
    Ok(json!({"rows": rows, "diagnostics": diagnostics, "all_pass": all_pass}))
}

/// Returns the command name, the echoed input, the scan seed if any, and
/// the result value.
fn dispatch(cli: &Cli) -> Result<(&'static str, Value, Option<u64>, Value), Failure> {
    let prof = cli.tolerance_profile;
    Ok(match &cli.command {
        Command::Invariants(i) => {
            let s = subject(&i.input)?;
            (
                "invariants",
                json!(i.input),
                None,
                to_value(&invariants_out(&s)?),
            )
        }
        Command::Dihedral { input, modulus } => {
            let s = subject(&input.input)?;
            (
                "dihedral",
                json!(input.input),
                None,
                to_value(&dihedral_out(&s, *modulus)?),
            )
        }
        Command::Scan { input, scan } => {
            let s = subject(&input.input)?;
            let set = run_scan(&s, scan_options(scan, prof, false))?;
            (
                "scan",
                json!(input.input),
                Some(scan.rng),
                to_value(&scan_out(&set)),
            )
        }
        Command::Simplicity { input, scan } => {
            let s = subject(&input.input)?;
            let set = run_scan(&s, scan_options(scan, prof, false))?;
            (
                "simplicity",
                json!(input.input),
                Some(scan.rng),
                to_value(&simplicity_out(&set)),
            )
        }
        Command::Cohomology {
            input,
            class,
            from_scan,
            scan,
        } => {
            let s = subject(&input.input)?;
            let picked = pick_rep(&s, *class, *from_scan, scan_options(scan, prof, true))?;
            let Some((r, source, order)) = picked else {
                return Err(Failure::Usage(
                    "cohomology needs --class or --from-scan".into(),
                ));
            };
            let rng = from_scan.map(|_| scan.rng);
            let out = cohomology_out(&s, &r, source, order)?;
            ("cohomology", json!(input.input), rng, to_value(&out))
        }
        Command::Cover {
            input,
            from_class,
            from_scan,
            scan,
        } => {
            let s = subject(&input.input)?;
            let picked = pick_rep(&s, *from_class, *from_scan, scan_options(scan, prof, true))?;
            let out = cover_out(&s, picked.as_ref().map(|(r, src, _)| (r, *src)))?;
            let rng = from_scan.map(|_| scan.rng);
            ("cover", json!(input.input), rng, to_value(&out))
        }
        Command::Report { input, scan } => {
            let s = subject(&input.input)?;
            let out = full_report(&s, scan_options(scan, prof, true))?;
            ("report", json!(input.input), Some(scan.rng), to_value(&out))
        }
        Command::Corpus { file, scan } => {
            let (c, echo) = match file {
                Some(path) => (read_corpus(path)?, json!(path.display().to_string())),
                None => (default_corpus(), json!("bundled")),
            };
            let out = corpus_result(&c, scan_options(scan, prof, true))?;
            ("corpus", echo, Some(scan.rng), out)
        }
    })
}

fn read_corpus(path: &Path) -> Result<Corpus, Failure> {
    load_corpus(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    match dispatch(cli) {
        Ok((command, input, rng_seed, result)) => {
            let elapsed = start.elapsed().as_secs_f64();
            let stdout = if cli.json {
                let envelope = json!({
                    "tool": TOOL,
                    "version": VERSION,
                    "command": command,
                    "input": input,
                    "rng_seed": rng_seed,
                    "timing": {"elapsed_seconds": elapsed},
                    "result": result,
                });
                serde_json::to_string_pretty(&envelope).expect("json") + "\n"
            } else {
                render_text(command, &input, &result, elapsed)
            };
            Outcome {
                code: exit::OK,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) => Outcome {
            code: exit::USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Compute(e)) => Outcome {
            code: if e.is_internal() {
                exit::INTERNAL
            } else {
                exit::REFUSED
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses `argv` and runs it. Clap's own usage errors exit 2.
pub fn run_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: exit::USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

/// Strips the `timing` member so two envelopes can be compared.
pub fn without_timing(json_text: &str) -> Option<String> {
    let mut v: Value = serde_json::from_str(json_text).ok()?;
    v.as_object_mut()?.remove("timing");
    serde_json::to_string(&v).ok()
}

fn render_text(command: &str, input: &Value, result: &Value, elapsed: f64) -> String {
    let mut out = format!("{TOOL} {VERSION} {command} {}\n", scalar(input));
    if command == "corpus" {
        corpus_table(result, &mut out);
    } else {
        render_value(result, 0, &mut out);
    }
    out.push_str(&format!("({elapsed:.2}s)\n"));
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.6e}"),
            _ => n.to_string(),
        },
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    let text = match x {
                        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(" "),
                        _ => scalar(x),
                    };
                    out.push_str(&format!("{pad}{k}: {text}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_value(x, depth + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                out.push_str(&format!("{pad}[{i}]\n"));
                render_value(x, depth + 1, out);
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x))),
    }
}

fn corpus_table(result: &Value, out: &mut String) {
    out.push_str(&format!(
        "{:<8} {:>3} {:>5} {:>4} {:>5} {:>4} {:>7} {:>4} {:>4} {:>5}  {}\n",
        "name", "ℓ", "det", "σ", "cong", "rk2", "classes", "red", "dih", "other", "verdict"
    ));
    for r in result["rows"].as_array().into_iter().flatten() {
        let yn = |b: &Value| match b.as_bool() {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "-",
        };
        let classes = match (&r["classes"], r["class_count_matches"].as_bool()) {
            (Value::Null, _) => "-".to_string(),
            (n, Some(false)) => format!("{n}!"),
            (n, _) => n.to_string(),
        };
        let s = |k: &str| scalar(&r[k]);
        out.push_str(&format!(
            "{:<8} {:>3} {:>5} {:>4} {:>5} {:>4} {:>7} {:>4} {:>4} {:>5}  {}\n",
            s("name"),
            s("components"),
            s("det"),
            s("sigma"),
            yn(&r["congruences"]),
            s("mod2_rank"),
            classes,
            s("reducible"),
            s("dihedral"),
            s("other_irreducible"),
            s("verdict"),
        ));
    }
    for d in result["diagnostics"].as_array().into_iter().flatten() {
        out.push_str(&format!("line {}: {}\n", d["line"], scalar(&d["message"])));
    }
    out.push_str(&format!(
        "all checks: {}\n",
        if result["all_pass"].as_bool() == Some(true) {
            "pass"
        } else {
            "FAIL"
        }
    ));
}
