//! `locmin`: decide whether the origin is a local minimum of a bivariate polynomial.

mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use locmin::decision::{decide, DecideConfig, Status, Verdict};
use locmin::geometry::{newton_model, NormalVector};
use locmin::poly::{parse, BivariatePoly};
use locmin::quasiform::{characteristic, decompose};

const EXIT_USAGE: u8 = 64;

/// Like `println!`, but a closed pipe is not an error.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "locmin", version, about = "Exact local-minimum test for bivariate polynomials at the origin")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the origin is a local minimum.
    Check(CheckArgs),
    /// Render the Newton polygon as SVG with a JSON face model alongside.
    Newton(NewtonArgs),
    /// Print the quasi-homogeneous forms for a normal vector.
    Decompose(DecomposeArgs),
}

#[derive(Args)]
struct Input {
    /// Polynomial in x and y, e.g. "2*x^4*y^2 + 3*x^2*y^3 + 2*y^4".
    expr: Option<String>,
    /// Read the polynomial from a UTF-8 file instead.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: Input,
    /// Forms examined per face.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,
    /// Largest number of terms per coordinate in substitution curves.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    max_nu: u32,
    /// Cap on the expansion order in the substitution search.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    max_order: Option<u32>,
    /// Emit the verdict as JSON.
    #[arg(long)]
    json: bool,
    /// Also write the Newton polygon SVG here.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Trace detail: 0 none, 1 rules, 2 rules with data.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=2))]
    trace: u8,
}

#[derive(Args)]
struct NewtonArgs {
    #[command(flatten)]
    input: Input,
    /// Output SVG path; the face model goes to the same path with a .json extension.
    #[arg(long, value_name = "PATH")]
    svg: PathBuf,
    /// Print the face model to standard output as well.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: Input,
    /// First component of the normal vector.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    a1: u32,
    /// Second component of the normal vector.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    a2: u32,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

/// A failure mapped to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure { code: 74, message: message.into() }
    }
}

fn read_input(input: &Input) -> Result<(String, BivariatePoly), Failure> {
    let text = match (&input.expr, &input.file) {
        (Some(e), None) => e.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?
            .trim()
            .to_string(),
        (Some(_), Some(_)) => return Err(Failure::usage("give either an expression or --file, not both")),
        (None, None) => return Err(Failure::usage("missing polynomial: give an expression or --file")),
    };
    let p = parse(&text).map_err(|e| {
        let pos = e.position();
        Failure::usage(format!("parse error: {e}\n  {text}\n  {}^", " ".repeat(pos)))
    })?;
    Ok((text, p))
}

fn write_newton(p: &BivariatePoly, path: &Path) -> Result<Value, Failure> {
    let model = newton_model(p).map_err(|e| Failure::usage(e.to_string()))?;
    let model_json = serde_json::to_value(&model).expect("model serializes");
    std::fs::write(path, svg::render(&model)).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
    let sidecar = path.with_extension("json");
    let text = serde_json::to_string_pretty(&model_json).expect("json");
    std::fs::write(&sidecar, text).map_err(|e| Failure::io(format!("cannot write {}: {e}", sidecar.display())))?;
    Ok(model_json)
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::LocalMin => 0,
        Status::NotLocalMin => 1,
        Status::Unresolved => 2,
    }
}

fn print_human(v: &Verdict, trace: u8) {
    say!("{}", v.status);
    if let Some(c) = &v.certificate {
        say!("  curve: {}", c.curve);
        let lead = match c.leading_rational() {
            Some(r) => r.to_string(),
            None => format!("{:.6e}", c.leading_approx()),
        };
        say!("  p(x(t), y(t)) = ({lead})*t^{} + O(t^{})", c.sigma, c.sigma + 1);
        say!("  sample: t = {}, p = {}", c.sample.t, c.sample.value);
    }
    if !v.unresolved.is_empty() {
        let faces: Vec<String> = v.unresolved.iter().map(|a| a.to_string()).collect();
        say!("  open faces: {}", faces.join(", "));
    }
    if let Some(r) = &v.search {
        say!("  substitution attempts: {}{}", r.attempts.len(), if r.budget_exhausted { " (node budget exhausted)" } else { "" });
    }
    if trace > 0 {
        say!("trace:");
        for (i, s) in v.trace.iter().enumerate() {
            let face = s.face.map(|a| format!(" A={a}")).unwrap_or_default();
            say!("  {:>2}. {}{face}: {}", i + 1, s.rule, s.basis);
            if trace > 1 && !s.data.is_null() {
                say!("      {}", s.data);
            }
        }
    }
}

fn cmd_check(args: &CheckArgs) -> Result<u8, Failure> {
    let (_, p) = read_input(&args.input)?;
    let mut cfg = DecideConfig { depth: args.depth as usize, ..DecideConfig::default() };
    cfg.budget.max_nu = args.max_nu;
    cfg.budget.max_order = args.max_order.map(|o| o as usize);
    let v = decide(&p, &cfg).map_err(|e| Failure::usage(e.to_string()))?;
    if let Some(path) = &args.svg {
        write_newton(&p, path)?;
    }
    if args.json {
        let mut out = serde_json::to_value(&v).expect("verdict serializes");
        out["input"] = json!(p.to_string());
        say!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        print_human(&v, args.trace);
    }
    Ok(exit_code(v.status))
}

fn cmd_newton(args: &NewtonArgs) -> Result<u8, Failure> {
    let (_, p) = read_input(&args.input)?;
    let model = write_newton(&p, &args.svg)?;
    if args.json {
        say!("{}", serde_json::to_string_pretty(&model).expect("json"));
    } else {
        say!("wrote {} and {}", args.svg.display(), args.svg.with_extension("json").display());
    }
    Ok(0)
}

fn cmd_decompose(args: &DecomposeArgs) -> Result<u8, Failure> {
    let (_, p) = read_input(&args.input)?;
    let a = NormalVector::new(args.a1, args.a2)
        .ok_or_else(|| Failure::usage(format!("({}, {}) is not a primitive positive vector", args.a1, args.a2)))?;
    if p.is_zero() {
        return Err(Failure::usage("polynomial is zero"));
    }
    let dec = decompose(&p, a);
    let mut rows = Vec::new();
    for (i, f) in dec.forms.iter().enumerate() {
        let g = characteristic(f).map_err(|e| Failure::usage(e.to_string()))?;
        rows.push(json!({ "index": i + 1, "level": f.level(), "form": f.to_string(), "g": g.g.to_string(), "main": g.main }));
    }
    if args.json {
        say!("{}", serde_json::to_string_pretty(&json!({ "normal": a, "forms": rows })).expect("json"));
    } else {
        say!("A = {a}");
        for r in &rows {
            say!("phi_{}  B = {}  {}", r["index"], r["level"], r["form"].as_str().unwrap_or_default());
            say!("      g_{}(u) = {}", r["index"], r["g"].as_str().unwrap_or_default());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Newton(a) => cmd_newton(a),
        Command::Decompose(a) => cmd_decompose(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
