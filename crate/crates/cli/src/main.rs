//! `flowcat`: parse, normalize, compare, analyze, and execute signal-flow
//! terms from the command line.
//!
//! Exit codes: 0 for an affirmative result, 3 for a negative analysis result
//! (not equivalent, not controllable, invalid trace, window mismatch), 2 for
//! usage, parse, or type errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use flowcat_core::control::{is_controllable, ControllabilityReport};
use flowcat_core::diagram::{self, TypedTerm};
use flowcat_core::json;
use flowcat_core::opsem::{
    check_window_trace, opsem_window_set, simulate, step_relation, window_behavior,
    SimulateError, TickValues,
};
use flowcat_core::ring::{Field, Rat, Zp};
use flowcat_core::semantics::{
    axiom_soundness_suite, behavior_equal, corelation_of, kernel_representation,
    term_to_cospan, Corelation,
};

#[derive(Parser)]
#[command(
    name = "flowcat",
    about = "Exact analyzer and interpreter for signal-flow terms",
    version
)]
struct Cli {
    /// Coefficient field: `q` for the rationals or `zp:<prime>` for a prime
    /// field (primes 2, 3, 5, 7, 11, 13).
    #[arg(long, global = true, env = "FLOWCAT_FIELD", default_value = "q")]
    field: String,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and typecheck a term, printing its canonical text and type.
    Parse { input: String },
    /// Compile a term to its canonical corelation and print it as JSON.
    Normalize { input: String },
    /// Decide whether two terms denote the same system.
    Equiv { left: String, right: String },
    /// Decide controllability; exits 0 when controllable, 3 when not.
    Controllable {
        input: String,
        /// Output format for the analysis report.
        #[arg(long, default_value = "text")]
        report: String,
    },
    /// Print the maximal controllable sub-behavior as corelation JSON.
    ControllablePart { input: String },
    /// Run the per-tick semantics for a number of steps.
    Simulate(SimulateArgs),
    /// Check a trace window (JSON file) against a term's step relation.
    CheckTrace { input: String, trace: PathBuf },
    /// Compare operational and denotational window subspaces at one length.
    WindowCompare { input: String, len: usize },
    /// Run the built-in equational soundness suite.
    Axioms,
}

#[derive(Args)]
struct SimulateArgs {
    input: String,
    /// Initial register values, comma-separated (default: all zero).
    #[arg(long, allow_hyphen_values = true)]
    init: Option<String>,
    /// Inline per-tick input values (single-input terms only).
    #[arg(long = "input", value_name = "V,V,...", allow_hyphen_values = true)]
    input_values: Option<String>,
    /// JSON file with per-tick boundary valuations `{"u": [[..]], "v": [[..]]}`.
    #[arg(long)]
    input_file: Option<PathBuf>,
    /// Number of ticks to run.
    #[arg(long, default_value_t = 8)]
    steps: usize,
    /// Run backward in time, ending at the given register assignment.
    #[arg(long)]
    backward: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match parse_field(&cli.field) {
        Ok(FieldChoice::Q) => run::<Rat>(&cli.command),
        Ok(FieldChoice::Zp(2)) => run::<Zp<2>>(&cli.command),
        Ok(FieldChoice::Zp(3)) => run::<Zp<3>>(&cli.command),
        Ok(FieldChoice::Zp(5)) => run::<Zp<5>>(&cli.command),
        Ok(FieldChoice::Zp(7)) => run::<Zp<7>>(&cli.command),
        Ok(FieldChoice::Zp(11)) => run::<Zp<11>>(&cli.command),
        Ok(FieldChoice::Zp(13)) => run::<Zp<13>>(&cli.command),
        Ok(FieldChoice::Zp(p)) => {
            eprintln!("error: unsupported prime {p} (supported: 2, 3, 5, 7, 11, 13)");
            2
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    ExitCode::from(code)
}

enum FieldChoice {
    Q,
    Zp(u64),
}

fn parse_field(text: &str) -> Result<FieldChoice, String> {
    let text = text.trim().to_ascii_lowercase();
    if text == "q" {
        return Ok(FieldChoice::Q);
    }
    if let Some(p) = text.strip_prefix("zp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| format!("bad modulus in field spec `{text}`"))?;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        return Ok(FieldChoice::Zp(p));
    }
    Err(format!("unknown field `{text}` (use `q` or `zp:<prime>`)"))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Terms come either from a file path or inline source text.
fn load_term(input: &str) -> Result<TypedTerm, String> {
    let src = if Path::new(input).is_file() {
        fs::read_to_string(input).map_err(|e| format!("cannot read {input}: {e}"))?
    } else {
        input.to_string()
    };
    diagram::parse_typed(&src)
}

fn corelation<F: Field>(t: &TypedTerm) -> Result<Corelation<F>, String> {
    let c = term_to_cospan::<F>(t).map_err(|e| e.to_string())?;
    Ok(corelation_of(&c))
}

fn fail(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    2
}

fn run<F: Field>(cmd: &Cmd) -> u8 {
    match cmd {
        Cmd::Parse { input } => match load_term(input) {
            Ok(t) => {
                println!("type: {} -> {}", t.arity, t.coarity);
                println!("registers: {}", t.registers.len());
                println!("{}", diagram::pretty(&t.term));
                0
            }
            Err(e) => fail(e),
        },
        Cmd::Normalize { input } => match load_term(input).and_then(|t| corelation::<F>(&t)) {
            Ok(x) => {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json::corelation_to_json(&x)).unwrap()
                );
                0
            }
            Err(e) => fail(e),
        },
        Cmd::Equiv { left, right } => {
            let (tl, tr) = match (load_term(left), load_term(right)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return fail(e),
            };
            if (tl.arity, tl.coarity) != (tr.arity, tr.coarity) {
                return fail(format!(
                    "boundary types differ: {} -> {} vs {} -> {}",
                    tl.arity, tl.coarity, tr.arity, tr.coarity
                ));
            }
            let (xl, xr) = match (corelation::<F>(&tl), corelation::<F>(&tr)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return fail(e),
            };
            if behavior_equal(&xl, &xr) {
                println!("equivalent");
                0
            } else {
                println!("not equivalent");
                println!("left canonical form:\n{}", kernel_representation(&xl));
                println!("right canonical form:\n{}", kernel_representation(&xr));
                3
            }
        }
        Cmd::Controllable { input, report } => {
            let x = match load_term(input).and_then(|t| corelation::<F>(&t)) {
                Ok(x) => x,
                Err(e) => return fail(e),
            };
            let r = is_controllable(&x);
            match report.as_str() {
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&json::report_to_json(&r)).unwrap()
                ),
                "text" => print_report(&r),
                other => return fail(format!("unknown report format `{other}`")),
            }
            if r.controllable {
                0
            } else {
                3
            }
        }
        Cmd::ControllablePart { input } => {
            match load_term(input).and_then(|t| corelation::<F>(&t)) {
                Ok(x) => {
                    let r = is_controllable(&x);
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json::corelation_to_json(
                            &r.controllable_part
                        ))
                        .unwrap()
                    );
                    0
                }
                Err(e) => fail(e),
            }
        }
        Cmd::Simulate(args) => run_simulate::<F>(args),
        Cmd::CheckTrace { input, trace } => {
            let t = match load_term(input) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let rel = match step_relation::<F>(&t) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let value: serde_json::Value = match fs::read_to_string(trace)
                .map_err(|e| e.to_string())
                .and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string()))
            {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            let window = match json::trace_from_json::<F>(&value, rel.m, rel.n, rel.d) {
                Ok(w) => w,
                Err(e) => return fail(e),
            };
            if check_window_trace(&rel, &window) {
                println!("valid");
                0
            } else {
                println!("invalid");
                3
            }
        }
        Cmd::WindowCompare { input, len } => {
            if *len == 0 {
                return fail("window length must be positive");
            }
            let t = match load_term(input) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let rel = match step_relation::<F>(&t) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let x = match corelation::<F>(&t) {
                Ok(x) => x,
                Err(e) => return fail(e),
            };
            let ops = opsem_window_set(&rel, *len);
            let den = window_behavior(kernel_representation(&x), *len);
            if ops.rowspace_eq(&den) {
                println!("MATCH dim={}", ops.rows());
                0
            } else {
                println!(
                    "MISMATCH operational_dim={} denotational_dim={}",
                    ops.rows(),
                    den.rows()
                );
                3
            }
        }
        Cmd::Axioms => {
            let checks = axiom_soundness_suite::<F>();
            let mut failures = 0;
            for c in &checks {
                if c.passed {
                    println!("ok   {}: {} = {}", c.name, c.lhs, c.rhs);
                } else {
                    failures += 1;
                    println!("FAIL {}: {} = {}", c.name, c.lhs, c.rhs);
                }
            }
            println!("{} checked, {} failed", checks.len(), failures);
            if failures == 0 {
                0
            } else {
                3
            }
        }
    }
}

fn print_report<F: Field>(r: &ControllabilityReport<F>) {
    println!(
        "controllable: {}",
        if r.controllable { "yes" } else { "no" }
    );
    println!(
        "pullback span waist: {} (legs {}x{} and {}x{})",
        r.span.waist,
        r.span.r.rows(),
        r.span.r.cols(),
        r.span.s.rows(),
        r.span.s.cols()
    );
    println!(
        "controllable part kernel representation:\n{}",
        kernel_representation(&r.controllable_part)
    );
    if !r.controllable {
        println!("obstruction (mediating map to the original apex):\n{}", r.obstruction);
    }
}

fn parse_values<F: Field>(text: &str) -> Result<Vec<F>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|v| F::parse(v.trim()).map_err(|e| e.to_string()))
        .collect()
}

fn run_simulate<F: Field>(args: &SimulateArgs) -> u8 {
    let t = match load_term(&args.input) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let rel = match step_relation::<F>(&t) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if args.steps == 0 {
        return fail("need at least one step");
    }
    let init: Vec<F> = match &args.init {
        Some(text) => match parse_values(text) {
            Ok(v) => v,
            Err(e) => return fail(e),
        },
        None => vec![F::zero(); rel.d],
    };
    if init.len() != rel.d {
        return fail(format!(
            "term has {} registers but --init provides {}",
            rel.d,
            init.len()
        ));
    }

    let mut ticks = vec![TickValues::free(rel.m, rel.n); args.steps];
    match (&args.input_values, &args.input_file) {
        (Some(_), Some(_)) => return fail("choose one of --input-values and --input-file"),
        (Some(text), None) => {
            if rel.m != 1 {
                return fail(format!(
                    "--input-values needs a single-input term (this one has {} inputs)",
                    rel.m
                ));
            }
            let values: Vec<F> = match parse_values(text) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            if values.len() != args.steps {
                return fail(format!(
                    "expected {} input values, got {}",
                    args.steps,
                    values.len()
                ));
            }
            for (tick, v) in ticks.iter_mut().zip(values) {
                tick.u[0] = Some(v);
            }
        }
        (None, Some(path)) => {
            let value: serde_json::Value = match fs::read_to_string(path)
                .map_err(|e| e.to_string())
                .and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string()))
            {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            if let Err(e) = apply_valuations::<F>(&mut ticks, &value, rel.m, rel.n) {
                return fail(e);
            }
        }
        (None, None) => {}
    }

    match simulate(&rel, &init, &ticks, args.backward) {
        Ok(w) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json::trace_to_json(&w)).unwrap()
            );
            0
        }
        Err(e @ SimulateError::Inconsistent { .. }) => {
            eprintln!("{e}");
            3
        }
        Err(e) => fail(e),
    }
}

/// Fill tick valuations from `{"u": [[..]], "v": [[..]]}`; entries may be
/// `null` to leave a coordinate free.
fn apply_valuations<F: Field>(
    ticks: &mut [TickValues<F>],
    value: &serde_json::Value,
    m: usize,
    n: usize,
) -> Result<(), String> {
    let obj = value.as_object().ok_or("input file must be a JSON object")?;
    for (key, width) in [("u", m), ("v", n)] {
        let Some(rows) = obj.get(key) else { continue };
        let rows = rows.as_array().ok_or(format!("`{key}` must be an array"))?;
        if rows.len() > ticks.len() {
            return Err(format!(
                "`{key}` has {} rows but only {} steps were requested",
                rows.len(),
                ticks.len()
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or("tick valuations must be arrays")?;
            if row.len() != width {
                return Err(format!(
                    "tick {i} of `{key}` has {} entries, expected {width}",
                    row.len()
                ));
            }
            for (j, cell) in row.iter().enumerate() {
                let slot = if key == "u" {
                    &mut ticks[i].u[j]
                } else {
                    &mut ticks[i].v[j]
                };
                *slot = match cell {
                    serde_json::Value::Null => None,
                    serde_json::Value::String(s) => {
                        Some(F::parse(s).map_err(|e| e.to_string())?)
                    }
                    other => return Err(format!("bad valuation entry {other}")),
                };
            }
        }
    }
    Ok(())
}
