//! `qtwist`: batch front end. Exit 0 on success, 1 on usage or input errors,
//! 2 when a verification suite disagrees.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qtwist_core::cohomology::kunneth::module_resolution;
use qtwist_core::field::DEFAULT_ORDER_BOUND;
use qtwist_core::{
    complexity_estimate, fg_check, hochschild_table, minimal_resolution, parse_config, repdim_bounds, run_suite,
    suite_names, ExtEngine, GradedAlgebra, GradedModule, Input, SuiteInput,
};

const FALLBACK_TRUNC: usize = 4;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("QTWIST_TRUNC_DEFAULT must be a non-negative integer, got {0:?}")]
    BadTruncEnv(String),
    #[error("{0} needs a QCI input")]
    NeedsQci(&'static str),
    #[error(transparent)]
    Core(#[from] qtwist_core::Error),
}

#[derive(Parser, Debug)]
#[command(name = "qtwist", version, about = "Ext-algebras and Hochschild cohomology of twisted tensor products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal graded resolution of the trivial module
    Resolve(Common),
    /// Ext^{i,a}(k, k) dimensions
    Ext(Common),
    /// Hochschild cohomology dimensions
    Hh(Common),
    /// Finite generation of cohomology for a QCI
    FgCheck(Common),
    /// Representation-dimension bounds for a QCI
    Repdim(Common),
    /// Run verification suites
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// TOML algebra specification
    #[arg(long)]
    input: PathBuf,
    /// Truncation degree; defaults to $QTWIST_TRUNC_DEFAULT, else 4
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Lift the dimension guard on enveloping-algebra computations
    #[arg(long)]
    allow_large: bool,
    /// Bound on p for multiplicative-order enumeration over GF(p)
    #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
    order_bound: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Shifts,
    Hom,
    Endo,
    KunnethExt,
    KunnethHh,
    Extring,
    Exactness,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Shifts => "shifts",
            Suite::Hom => "hom",
            Suite::Endo => "endo",
            Suite::KunnethExt => "kunneth-ext",
            Suite::KunnethHh => "kunneth-hh",
            Suite::Extring => "extring",
            Suite::Exactness => "exactness",
            Suite::All => "all",
        }
    }
}

struct Outcome {
    report: Value,
    verified: bool,
}

fn trunc_of(c: &Common) -> Result<usize, CliError> {
    if let Some(t) = c.trunc {
        return Ok(t);
    }
    match std::env::var("QTWIST_TRUNC_DEFAULT") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::BadTruncEnv(v)),
        Err(_) => Ok(FALLBACK_TRUNC),
    }
}

fn load(c: &Common) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(&c.input).map_err(|source| CliError::Read {
        path: c.input.clone(),
        source,
    })?;
    Ok(Input::from_config(&parse_config(&text)?, c.order_bound)?)
}

fn algebra_summary(alg: &GradedAlgebra) -> Value {
    json!({"dim": alg.dim(), "field": alg.field().name(), "grading_rank": alg.grading_rank()})
}

fn trivial_resolution(alg: &Arc<GradedAlgebra>, trunc: usize) -> Result<qtwist_core::Resolution, CliError> {
    let k = GradedModule::trivial(alg.clone())?;
    Ok(module_resolution(alg, &k, trunc)?)
}

fn run(cmd: &Command) -> Result<Outcome, CliError> {
    let (common, name) = match cmd {
        Command::Resolve(c) => (c, "resolve"),
        Command::Ext(c) => (c, "ext"),
        Command::Hh(c) => (c, "hh"),
        Command::FgCheck(c) => (c, "fg-check"),
        Command::Repdim(c) => (c, "repdim"),
        Command::Verify { common, .. } => (common, "verify"),
    };
    let trunc = trunc_of(common)?;
    let input = load(common)?;
    let ok = |v: Value| Outcome {
        report: v,
        verified: true,
    };
    Ok(match cmd {
        Command::Resolve(_) => {
            let alg = input.algebra()?;
            let k = GradedModule::trivial(alg.clone())?;
            let res = minimal_resolution(alg.clone(), &k, trunc)?;
            ok(json!({
                "command": name, "trunc": trunc, "algebra": algebra_summary(&alg),
                "exact": res.is_exact(), "minimal": res.is_minimal(), "resolution": res.to_json(),
            }))
        }
        Command::Ext(_) => {
            let alg = input.algebra()?;
            let res = trivial_resolution(&alg, trunc + 1)?;
            let coeff = res.target().clone();
            let table = ExtEngine::new(res, coeff)?.table(trunc)?;
            ok(json!({
                "command": name, "trunc": trunc, "algebra": algebra_summary(&alg),
                "totals": table.totals(), "table": table.to_json(),
            }))
        }
        Command::Hh(c) => {
            let alg = input.algebra()?;
            let table = hochschild_table(&alg, trunc, c.allow_large)?;
            ok(json!({
                "command": name, "trunc": trunc, "algebra": algebra_summary(&alg),
                "totals": table.totals(), "table": table.to_json(),
            }))
        }
        Command::FgCheck(_) => {
            let spec = input.as_qci()?.ok_or(CliError::NeedsQci("fg-check"))?;
            let r = fg_check(&spec)?;
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["command"] = json!(name);
            ok(v)
        }
        Command::Repdim(_) => {
            let spec = input.as_qci()?.ok_or(CliError::NeedsQci("repdim"))?;
            let bounds = repdim_bounds(&spec)?;
            let alg = input.algebra()?;
            let window = trunc.max(7);
            let betti = trivial_resolution(&alg, window)?.betti();
            let cx = complexity_estimate(&betti)?;
            ok(json!({
                "command": name, "bounds": bounds, "betti": betti, "complexity": cx,
            }))
        }
        Command::Verify { suite, common } => {
            let si = SuiteInput {
                algebra: input.algebra()?,
                tp: input.twisted_product()?,
                qci: input.as_qci()?,
                trunc,
                allow_large: common.allow_large,
            };
            let mut reports = Vec::new();
            for s in suite_names(suite.name())? {
                reports.push(run_suite(s, &si)?);
            }
            let passed = reports.iter().all(|r| r.passed);
            let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.suite.as_str()).collect();
            Outcome {
                report: json!({
                    "command": name, "trunc": trunc, "passed": passed, "failed": failed, "suites": reports,
                }),
                verified: passed,
            }
        }
    })
}

/// `path = value` lines, one per scalar leaf, in key order.
fn render_text(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                render_text(x, &p, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push_str(&format!("{path} = {v}\n"));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                render_text(x, &format!("{path}[{i}]"), out);
            }
        }
        _ => out.push_str(&format!("{path} = {v}\n")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = match &cli.command {
        Command::Resolve(c) | Command::Ext(c) | Command::Hh(c) | Command::FgCheck(c) | Command::Repdim(c) => c.format,
        Command::Verify { common, .. } => common.format,
    };
    match run(&cli.command) {
        Ok(o) => {
            let s = match format {
                Format::Json => serde_json::to_string_pretty(&o.report).expect("serializable") + "\n",
                Format::Text => {
                    let mut s = String::new();
                    render_text(&o.report, "", &mut s);
                    s
                }
            };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().write_all(s.as_bytes());
            ExitCode::from(if o.verified { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
