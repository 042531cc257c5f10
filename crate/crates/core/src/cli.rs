//! Command-line front end.
//!
//! Exit codes: 0 when the command succeeds or the checked property holds,
//! 1 when the property fails (invalid model, non-valid formula, relation
//! that is not a simulation, failing law), 2 on usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{check_laws, Algebra, SampleSpace};
use crate::formula::{parse_formula, Formula};
use crate::model::{parse_model, validate, KripkeModel, StateId, ValuationMode};
use crate::relations::{self, Mode, StateRelation};
use crate::semantics::Evaluator;
use crate::twist::WPair;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ptslogic",
    version,
    about = "Model checker for paraconsistent transition systems"
)]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Model file (JSON)
    model: PathBuf,
    /// Require a valuation entry for every proposition at every state
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Left model file
    left: PathBuf,
    /// Right model file
    right: PathBuf,
    /// Relation file `[["w","v"],...]` to check instead of computing the largest one
    #[arg(long, value_name = "RELATION")]
    check: Option<PathBuf>,
    /// Ignore valuations and compare the transition structure only
    #[arg(long)]
    frames_only: bool,
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a model file
    Check(ModelArgs),
    /// Evaluate formulas; `@FILE` reads one formula per line (`#` starts a comment)
    Eval {
        #[command(flatten)]
        model: ModelArgs,
        formula: String,
        #[arg(long, conflicts_with = "all")]
        state: Option<String>,
        /// Every state (the default)
        #[arg(long)]
        all: bool,
    },
    /// Report the region of every transition weight and valuation entry
    Classify(ModelArgs),
    /// Exit 0 iff the formula evaluates to (1, 0) at every state
    Valid {
        #[command(flatten)]
        model: ModelArgs,
        formula: String,
    },
    /// Exit 0 iff both formulas take the same value at every state
    Equiv {
        #[command(flatten)]
        model: ModelArgs,
        left: String,
        right: String,
    },
    /// Check or compute simulations from the left model to the right model
    Sim(PairArgs),
    /// Check or compute bisimulations between two models
    Bisim(PairArgs),
    /// Check the algebraic laws on an algebra instance
    Laws {
        /// bool2, chain3, chain:N or godel
        algebra: String,
        /// Largest denominator of the Gödel sample
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        max_denominator: u32,
    },
    /// Classify every pair of a grid as CSV `a,b,region`
    Regions {
        algebra: String,
        /// Points per axis for the Gödel algebra; finite algebras use their carrier
        #[arg(long, default_value_t = 11, value_parser = clap::value_parser!(u32).range(2..))]
        grid: u32,
    },
}

/// A failed command: exit code plus message for stderr.
struct Failure(i32, String);

fn usage(message: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, message.into())
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut buf = String::new();
    let result = dispatch(&cli, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Check(args) => cmd_check(args, json, out),
        Command::Eval {
            model,
            formula,
            state,
            ..
        } => cmd_eval(model, formula, state.as_deref(), json, out),
        Command::Classify(args) => cmd_classify(args, json, out),
        Command::Valid { model, formula } => cmd_valid(model, formula, json, out),
        Command::Equiv { model, left, right } => cmd_equiv(model, left, right, json, out),
        Command::Sim(args) => cmd_relation(args, false, json, out),
        Command::Bisim(args) => cmd_relation(args, true, json, out),
        Command::Laws {
            algebra,
            max_denominator,
        } => cmd_laws(algebra, *max_denominator, json, out),
        Command::Regions { algebra, grid } => cmd_regions(algebra, *grid, json, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn valuation_mode(strict: bool) -> ValuationMode {
    if strict {
        ValuationMode::Strict
    } else {
        ValuationMode::Lenient
    }
}

fn load(args: &ModelArgs) -> Result<KripkeModel, Failure> {
    load_path(&args.model, args.strict)
}

fn load_path(path: &Path, strict: bool) -> Result<KripkeModel, Failure> {
    let text = read(path)?;
    parse_model(&text, valuation_mode(strict))
        .map_err(|d| usage(format!("{}: {d}", path.display())))
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse_formula(text).map_err(|e| usage(format!("formula {text:?}: {e}")))
}

/// A single formula, or the formulas of a batch file given as `@path`.
fn formulas(arg: &str) -> Result<Vec<(String, Formula)>, Failure> {
    let Some(path) = arg.strip_prefix('@') else {
        return Ok(vec![(arg.to_string(), formula(arg)?)]);
    };
    let text = read(Path::new(path))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f = parse_formula(line).map_err(|e| usage(format!("{path}:{}: {e}", i + 1)))?;
        out.push((line.to_string(), f));
    }
    Ok(out)
}

fn pair_json(v: &WPair) -> Value {
    json!([v.pos().to_string(), v.neg().to_string()])
}

fn emit_json(out: &mut String, value: &Value) {
    out.push_str(&serde_json::to_string_pretty(value).expect("json serializes"));
    out.push('\n');
}

fn eval_error(e: impl std::fmt::Display) -> Failure {
    usage(e.to_string())
}

fn cmd_check(args: &ModelArgs, json: bool, out: &mut String) -> Outcome {
    let text = read(&args.model)?;
    let (problems, states) = match parse_model(&text, valuation_mode(args.strict)) {
        Ok(model) => (validate(&model), model.pts().state_count()),
        Err(diagnostics) => (diagnostics.0, 0),
    };
    if json {
        let list: Vec<Value> = problems
            .iter()
            .map(|d| json!({"location": d.location, "error": d.error.to_string()}))
            .collect();
        emit_json(
            out,
            &json!({"valid": problems.is_empty(), "diagnostics": list}),
        );
    } else if problems.is_empty() {
        out.push_str(&format!("ok: {} states\n", states));
    } else {
        for d in &problems {
            out.push_str(&format!("{d}\n"));
        }
    }
    Ok(if problems.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILS
    })
}

fn cmd_eval(
    args: &ModelArgs,
    arg: &str,
    state: Option<&str>,
    json: bool,
    out: &mut String,
) -> Outcome {
    let model = load(args)?;
    let batch = formulas(arg)?;
    let states: Vec<StateId> = match state {
        Some(name) => vec![model.pts().state_id(name).map_err(eval_error)?],
        None => model.pts().state_ids().collect(),
    };
    let mut ev = Evaluator::new(&model);
    let mut rows = Vec::new();
    for (text, f) in &batch {
        let values = ev.values(f).map_err(eval_error)?;
        for &w in &states {
            let v = values[w.0];
            let name = model.pts().state_name(w);
            if json {
                rows.push(json!({
                    "state": name,
                    "formula": text,
                    "value": pair_json(&v),
                    "region": v.region().kind(),
                }));
            } else {
                out.push_str(&format!("{name} ⊨ {text} = {v} [{}]\n", v.region().kind()));
            }
        }
    }
    if json {
        emit_json(out, &Value::Array(rows));
    }
    Ok(EXIT_OK)
}

fn cmd_classify(args: &ModelArgs, json: bool, out: &mut String) -> Outcome {
    let model = load(args)?;
    let pts = model.pts();
    let mut rows = Vec::new();
    for t in pts.transitions() {
        let (from, to) = (pts.state_name(t.from), pts.state_name(t.to));
        let kind = t.weight.region().kind();
        if json {
            rows.push(
                json!({"transition": [from, to], "value": pair_json(&t.weight), "region": kind}),
            );
        } else {
            out.push_str(&format!("R({from}, {to}) = {} [{kind}]\n", t.weight));
        }
    }
    for p in model.props() {
        let pid = model.prop_id(p).map_err(eval_error)?;
        for w in pts.state_ids() {
            let v = model.valuation_of(pid, w).map_err(eval_error)?;
            let name = pts.state_name(w);
            let kind = v.region().kind();
            if json {
                rows.push(
                    json!({"prop": p, "state": name, "value": pair_json(&v), "region": kind}),
                );
            } else {
                out.push_str(&format!("V({p}, {name}) = {v} [{kind}]\n"));
            }
        }
    }
    if json {
        emit_json(out, &Value::Array(rows));
    }
    Ok(EXIT_OK)
}

fn cmd_valid(args: &ModelArgs, text: &str, json: bool, out: &mut String) -> Outcome {
    let model = load(args)?;
    let f = formula(text)?;
    let values = Evaluator::new(&model).values(&f).map_err(eval_error)?;
    let top = WPair::top(model.algebra());
    let witness = values
        .iter()
        .position(|v| *v != top)
        .map(|i| (model.pts().state_name(StateId(i)), values[i]));
    if json {
        let w = witness.map(|(s, v)| json!({"state": s, "value": pair_json(&v)}));
        emit_json(
            out,
            &json!({"formula": text, "valid": witness.is_none(), "witness": w}),
        );
    } else {
        match witness {
            None => out.push_str(&format!("{text} is valid\n")),
            Some((s, v)) => out.push_str(&format!("{text} is not valid: {s} ⊨ {text} = {v}\n")),
        }
    }
    Ok(if witness.is_none() {
        EXIT_OK
    } else {
        EXIT_FAILS
    })
}

fn cmd_equiv(args: &ModelArgs, left: &str, right: &str, json: bool, out: &mut String) -> Outcome {
    let model = load(args)?;
    let (f, g) = (formula(left)?, formula(right)?);
    let mut ev = Evaluator::new(&model);
    let a = ev.values(&f).map_err(eval_error)?;
    let b = ev.values(&g).map_err(eval_error)?;
    let witness = (0..a.len())
        .find(|&i| a[i] != b[i])
        .map(|i| (model.pts().state_name(StateId(i)), a[i], b[i]));
    if json {
        let w = witness
            .map(|(s, x, y)| json!({"state": s, "left": pair_json(&x), "right": pair_json(&y)}));
        emit_json(
            out,
            &json!({"left": left, "right": right, "equivalent": witness.is_none(), "witness": w}),
        );
    } else {
        match witness {
            None => out.push_str(&format!("{left} and {right} are equivalent\n")),
            Some((s, x, y)) => out.push_str(&format!(
                "not equivalent at {s}: {left} = {x}, {right} = {y}\n"
            )),
        }
    }
    Ok(if witness.is_none() {
        EXIT_OK
    } else {
        EXIT_FAILS
    })
}

fn cmd_relation(args: &PairArgs, bisim: bool, json: bool, out: &mut String) -> Outcome {
    let m1 = load_path(&args.left, args.strict)?;
    let m2 = load_path(&args.right, args.strict)?;
    let mode = if args.frames_only {
        Mode::Frames
    } else {
        Mode::WithValuations
    };
    let what = if bisim { "bisimulation" } else { "simulation" };
    let Some(path) = &args.check else {
        let rel = if bisim {
            relations::largest_bisimulation(&m1, &m2, mode)
        } else {
            relations::largest_simulation(&m1, &m2, mode)
        }
        .map_err(eval_error)?;
        out.push_str(&rel.to_json(&m1, &m2));
        out.push('\n');
        return Ok(EXIT_OK);
    };
    let rel = StateRelation::from_json(&read(path)?, &m1, &m2)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let violation = if bisim {
        relations::check_bisimulation(&rel, &m1, &m2, mode)
    } else {
        relations::check_simulation(&rel, &m1, &m2, mode)
    }
    .map_err(eval_error)?;
    if json {
        let v = violation.as_ref().map(ToString::to_string);
        emit_json(out, &json!({"holds": violation.is_none(), "violation": v}));
    } else {
        match &violation {
            None => out.push_str(&format!("is a {what}\n")),
            Some(v) => out.push_str(&format!("not a {what}: {v}\n")),
        }
    }
    Ok(if violation.is_none() {
        EXIT_OK
    } else {
        EXIT_FAILS
    })
}

fn algebra(name: &str) -> Result<Algebra, Failure> {
    Algebra::from_name(name).map_err(eval_error)
}

fn cmd_laws(name: &str, max_denominator: u32, json: bool, out: &mut String) -> Outcome {
    let report = check_laws(&SampleSpace::for_algebra(algebra(name)?, max_denominator));
    if json {
        let laws: Vec<Value> = report
            .laws
            .iter()
            .map(|l| {
                json!({
                    "name": l.name,
                    "statement": l.statement,
                    "cases": l.cases,
                    "passed": l.passed(),
                    "counterexample": l.counterexample,
                })
            })
            .collect();
        emit_json(
            out,
            &json!({"algebra": report.algebra.name(), "sample_size": report.sample_size, "laws": laws}),
        );
    } else {
        out.push_str(&report.to_string());
    }
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILS
    })
}

fn cmd_regions(name: &str, grid: u32, json: bool, out: &mut String) -> Outcome {
    let alg = algebra(name)?;
    let points = alg.grid(grid);
    let mut rows = Vec::new();
    if !json {
        out.push_str("a,b,region\n");
    }
    for a in &points {
        for b in &points {
            let kind = WPair::new(*a, *b).map_err(eval_error)?.region().kind();
            if json {
                rows.push(json!({"a": a.to_string(), "b": b.to_string(), "region": kind}));
            } else {
                out.push_str(&format!("{a},{b},{kind}\n"));
            }
        }
    }
    if json {
        emit_json(out, &Value::Array(rows));
    }
    Ok(EXIT_OK)
}
