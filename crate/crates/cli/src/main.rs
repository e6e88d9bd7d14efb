use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qam_core::chains::{self, chain_for_columns, connect_compositions, LambdaChain};
use qam_core::error::Error;
use qam_core::model::{CrystalGraph, Model, DEFAULT_CRYSTAL_BUDGET};
use qam_core::root_system::RootSystem;
use qam_core::type_a::{sfill, tensor_to_string};
use qam_core::verify::{run_suite, Check, SUITES};
use qam_core::weyl::WeylGroup;
use qam_core::yb::{all_factors_perfect, r_matrix};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qam", version, about = "Quantum alcove model crystals and combinatorial R-matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the crystal of a tensor product of columns.
    Crystal(CrystalArgs),
    /// Apply the combinatorial R-matrix to an admissible subset.
    Rmatrix(RmatrixArgs),
    /// Export the quantum Bruhat graph of the Weyl group.
    Qbg(QbgArgs),
    /// Export the λ-chain of a column composition.
    Chain(ChainArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Common {
    /// Cartan type, e.g. A2, C3, G2.
    #[arg(long = "type")]
    type_tag: String,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Limit on enumerated vertices and search states.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct CrystalArgs {
    #[command(flatten)]
    common: Common,
    /// Column composition, 1-based, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    cols: Vec<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct RmatrixArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_delimiter = ',', required = true)]
    cols: Vec<usize>,
    /// Target column order, a rearrangement of --cols.
    #[arg(long, value_delimiter = ',', required = true)]
    perm: Vec<usize>,
    /// Admissible subset, 1-based chain positions; empty for the empty set.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    subset: Vec<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct QbgArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_delimiter = ',', required = true)]
    cols: Vec<usize>,
    /// Also report the moves to this column order.
    #[arg(long, value_delimiter = ',')]
    perm: Option<Vec<usize>>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: String,
    /// Only report checks about this Cartan type.
    #[arg(long = "type")]
    type_tag: Option<String>,
    /// Shorthand for --type A(n-1).
    #[arg(long, conflicts_with = "type_tag")]
    n: Option<usize>,
    #[arg(long, default_value_t = 20240917)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Verification(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(msg: String) -> Failure {
    Failure::Core(Error::InvalidInput(msg))
}

fn write_output(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
        Some(path) => {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
            let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, path).inspect_err(|_| {
                let _ = std::fs::remove_file(&tmp);
            })
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn setup(common: &Common) -> Result<(RootSystem, WeylGroup), Failure> {
    let rs = RootSystem::from_tag(&common.type_tag)?;
    let group = match common.budget {
        Some(b) => WeylGroup::with_budget(&rs, b)?,
        None => WeylGroup::new(&rs)?,
    };
    Ok((rs, group))
}

fn check_columns(rs: &RootSystem, cols: &[usize]) -> Result<(), Failure> {
    if let Some(&bad) = cols.iter().find(|&&k| k == 0 || k > rs.rank()) {
        return Err(usage(format!("column {bad} is outside 1..={}", rs.rank())));
    }
    Ok(())
}

fn roots_json(rs: &RootSystem, chain: &LambdaChain) -> Value {
    let labels: Vec<Value> = chain
        .roots
        .iter()
        .map(|&r| match rs.type_a_pair(r) {
            Some((i, j)) => json!([i, j]),
            None => json!(rs.positive[r].coeffs),
        })
        .collect();
    Value::Array(labels)
}

fn crystal_text(c: &CrystalGraph) -> String {
    let mut s = String::new();
    for (i, j) in c.vertices.iter().enumerate() {
        s.push_str(&format!("{i}\tJ={j:?}\tweight={:?}\theight={}\n", c.weights[i].0, c.heights[i]));
    }
    for e in &c.edges {
        s.push_str(&format!("{} -{}-> {}\n", e.src, e.color, e.dst));
    }
    s
}

fn cmd_crystal(args: CrystalArgs) -> Result<(), Failure> {
    let (rs, group) = setup(&args.common)?;
    check_columns(&rs, &args.cols)?;
    let chain = chain_for_columns(&rs, &args.cols)?;
    let crystal = Model::new(&group, &chain).build_crystal(args.common.budget.unwrap_or(DEFAULT_CRYSTAL_BUDGET))?;
    let text = match args.format {
        Format::Json => {
            let mut v = crystal.to_json();
            v["type"] = json!(rs.cartan_type.to_string());
            v["columns"] = json!(args.cols);
            v["roots"] = roots_json(&rs, &chain);
            pretty(&v)
        }
        Format::Dot => crystal.to_dot(),
        Format::Text => crystal_text(&crystal),
    };
    write_output(args.common.out.as_deref(), &text)?;
    Ok(())
}

fn cmd_rmatrix(args: RmatrixArgs) -> Result<(), Failure> {
    let (rs, group) = setup(&args.common)?;
    check_columns(&rs, &args.cols)?;
    let budget = args.common.budget.unwrap_or(chains::DEFAULT_SEARCH_BUDGET);
    let (start, goal, moves) = connect_compositions(&rs, &args.cols, &args.perm, budget)?;
    let model = Model::new(&group, &start);
    if let Some((step, pos)) = model.first_bad_step(&args.subset) {
        let detail = if pos == 0 || pos > start.len() || (step > 1 && pos <= args.subset[step - 2]) {
            format!("position {pos} is out of range or out of order")
        } else {
            let w = model.fold(&args.subset[..step - 1]).end();
            format!(
                "no quantum Bruhat edge from {:?} along root {}",
                group.reduced_word(w).iter().map(|i| i + 1).collect::<Vec<_>>(),
                rs.root_label(start.roots[pos - 1])
            )
        };
        return Err(usage(format!("subset {:?} is not admissible: step {step} (position {pos}): {detail}", args.subset)));
    }
    let output = r_matrix(&group, &start, &moves, &args.subset)?;
    let target = Model::new(&group, &goal);
    let (mu, height) = (model.fold(&args.subset).mu, model.height(&args.subset));
    let (mu2, height2) = (target.fold(&output).mu, target.height(&output));
    if mu != mu2 || height != height2 {
        return Err(Failure::Verification(format!(
            "image {output:?} has weight {:?} and height {height2}, expected {:?} and {height}",
            mu2.0, mu.0
        )));
    }
    let label = if all_factors_perfect(&rs, &args.cols) { "R-matrix" } else { "R-matrix candidate" };
    let mut v = json!({
        "input_subset": args.subset,
        "moves": moves,
        "output_subset": output,
        "weight": mu.0,
        "height": height,
        "label": label,
    });
    if rs.type_a_pair(0).is_some() {
        v["input_filling"] = json!(tensor_to_string(&sfill(&rs, &start, &args.subset)?));
        v["output_filling"] = json!(tensor_to_string(&sfill(&rs, &goal, &output)?));
    }
    let text = match args.format {
        Format::Json => pretty(&v),
        Format::Text | Format::Dot => {
            let mut s = format!("{label}: {:?} -> {output:?}\nweight {:?}, height {height}\n", args.subset, mu.0);
            if let (Some(a), Some(b)) = (v.get("input_filling"), v.get("output_filling")) {
                s.push_str(&format!("filling {} -> {}\n", a.as_str().unwrap_or(""), b.as_str().unwrap_or("")));
            }
            s
        }
    };
    write_output(args.common.out.as_deref(), &text)?;
    Ok(())
}

fn cmd_qbg(args: QbgArgs) -> Result<(), Failure> {
    let (_, group) = setup(&args.common)?;
    let qbg = group.build_qbg();
    let text = match args.format {
        Format::Json => pretty(&qbg.to_json(&group)),
        Format::Dot => qbg.to_dot(&group),
        Format::Text => {
            let mut s = String::new();
            for e in &qbg.edges {
                s.push_str(&format!("{} -{}-> {} {:?}\n", e.src, group.rs.root_label(e.root), e.dst, e.kind));
            }
            s
        }
    };
    write_output(args.common.out.as_deref(), &text)?;
    Ok(())
}

fn cmd_chain(args: ChainArgs) -> Result<(), Failure> {
    let (rs, _) = setup(&args.common)?;
    check_columns(&rs, &args.cols)?;
    let chain = chain_for_columns(&rs, &args.cols)?;
    let mut v = json!({
        "type": rs.cartan_type.to_string(),
        "columns": args.cols,
        "lambda": chain.lambda.0,
        "roots": roots_json(&rs, &chain),
        "levels": chain.levels,
    });
    if let Some(perm) = &args.perm {
        let budget = args.common.budget.unwrap_or(chains::DEFAULT_SEARCH_BUDGET);
        let (_, goal, moves) = connect_compositions(&rs, &args.cols, perm, budget)?;
        v["target_roots"] = roots_json(&rs, &goal);
        v["moves"] = json!(moves);
    }
    write_output(args.common.out.as_deref(), &pretty(&v))?;
    Ok(())
}

fn mentions(statement: &str, tag: &str) -> bool {
    statement.split(|c: char| !c.is_ascii_alphanumeric()).any(|w| w.eq_ignore_ascii_case(tag))
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let filter = match (&args.type_tag, args.n) {
        (Some(t), _) => Some(RootSystem::from_tag(t)?.cartan_type.to_string()),
        (None, Some(n)) if n >= 2 => Some(format!("A{}", n - 1)),
        (None, Some(n)) => return Err(usage(format!("--n {n} must be at least 2"))),
        (None, None) => None,
    };
    let report = run_suite(&args.suite, args.seed)?;
    let checks: Vec<&Check> =
        report.checks.iter().filter(|c| filter.as_deref().is_none_or(|t| mentions(&c.statement, t))).collect();
    if checks.is_empty() {
        return Err(usage(format!("suite {} has no checks for {}", args.suite, filter.unwrap_or_default())));
    }
    let passed = checks.iter().all(|c| c.passed);
    let text = match args.format {
        Format::Json => pretty(&json!({ "suite": args.suite, "passed": passed, "checks": checks })),
        _ => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!("[{}] {} ({})\n", if c.passed { "ok" } else { "FAIL" }, c.statement, c.detail));
            }
            s.push_str(&format!("suite {}: {}\n", args.suite, if passed { "PASS" } else { "FAIL" }));
            s
        }
    };
    write_output(args.out.as_deref(), &text)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!("suite {} failed", args.suite)))
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("QAM_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| usage(format!("QAM_THREADS={raw} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Core(Error::Internal(e.to_string())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Crystal(a) => cmd_crystal(a),
        Command::Rmatrix(a) => cmd_rmatrix(a),
        Command::Qbg(a) => cmd_qbg(a),
        Command::Chain(a) => cmd_chain(a),
        Command::Verify(a) => cmd_verify(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Verification(m) => (1, format!("verification failed: {m}")),
                Failure::Core(e @ Error::InvalidInput(_)) => (2, e.to_string()),
                Failure::Core(e @ Error::Resource(_)) => (3, e.to_string()),
                Failure::Core(e) => (1, e.to_string()),
                Failure::Io(e) => (3, format!("i/o error: {e}")),
            };
            eprintln!("qam: {msg}");
            ExitCode::from(code)
        }
    }
}
