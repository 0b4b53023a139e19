use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pbound_core::arith::rational::parse_rational;
use pbound_core::bounds::{axis_bound, detect_invariant_lines, line_bound, BoundValue};
use pbound_core::branching::{multiplicity_at, Multiplicity, MultiplicityResult, Point};
use pbound_core::darboux::{search_darboux, DarbouxSearch, VectorField, EXTACTIC_DIM_CAP};
use pbound_core::lotka::{classify, LvParams, LvVerdict};
use pbound_core::sysparse::report;
use pbound_core::{ArithError, Caps, Error, ParsedSystem, Rational};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "pbound", version, about = "Algebraic multiplicities and invariant-curve degree bounds for dw/dz = P/Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// System text, e.g. "dw/dz = (z^2 + m*w)/(z + w^2); m = 0".
    #[arg(long, global = true, allow_hyphen_values = true)]
    system: Option<String>,
    /// File containing the system text.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum Newton steps per branch.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Maximum ramification index per branch.
    #[arg(long, global = true)]
    ram: Option<u64>,
    /// Maximum extension tower degree.
    #[arg(long, global = true)]
    tower: Option<usize>,
    /// Maximum degree handed to the factorizer.
    #[arg(long, global = true)]
    factor: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Algebraic multiplicity at a point.
    Mul {
        /// `z0,w0` or `z0,inf`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Degree bounds along the axis z = 0 or along a given invariant line.
    Bound {
        /// `a,b,c` for the line a*z + b*w + c = 0.
        #[arg(long, allow_hyphen_values = true)]
        line: Option<String>,
    },
    /// Darboux polynomials up to a total degree.
    Darboux {
        #[arg(long, default_value_t = 1)]
        max_degree: u32,
    },
    /// Lotka–Volterra classification for parameters `a,b,c`.
    Lv {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Invariant lines, bounds along each of them, and a Darboux search.
    Analyze {
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
}

enum Failure {
    Parse(Error),
    Cap(Error),
    Other(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Parse(e),
            Error::CapExceeded { .. }
            | Error::Arith(ArithError::FactorCapExceeded { .. })
            | Error::Arith(ArithError::TowerCapExceeded(_)) => Failure::Cap(e),
            e => Failure::Other(e),
        }
    }
}

struct Output {
    json: Value,
    text: String,
    inconclusive: bool,
}

fn caps(opts: &Opts) -> Result<Caps, Failure> {
    let mut c = Caps::from_env().map_err(|e| Failure::Usage(format!("PBOUND_CAPS: {e}")))?;
    if let Some(v) = opts.depth {
        c.depth = v;
    }
    if let Some(v) = opts.ram {
        c.ramification = v;
    }
    if let Some(v) = opts.tower {
        c.tower = v;
    }
    if let Some(v) = opts.factor {
        c.factor_degree = v;
    }
    Ok(c)
}

fn load_system(opts: &Opts) -> Result<ParsedSystem, Failure> {
    let text = match (&opts.system, &opts.file) {
        (Some(s), None) => s.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        (Some(_), Some(_)) => return Err(Failure::Usage("give either --system or --file, not both".into())),
        (None, None) => return Err(Failure::Usage("a system is required (--system or --file)".into())),
    };
    Ok(pbound_core::parse_system(&text)?)
}

fn rationals(text: &str, n: usize, what: &str) -> Result<Vec<Rational>, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(Failure::Usage(format!("{what}: expected {n} comma-separated values")));
    }
    parts
        .iter()
        .map(|p| parse_rational(p).ok_or_else(|| Failure::Usage(format!("{what}: not a rational number: `{p}`"))))
        .collect()
}

fn parse_point(text: &str) -> Result<Point, Failure> {
    let (z, w) = text.split_once(',').ok_or_else(|| Failure::Usage("--at: expected z0,w0 or z0,inf".into()))?;
    let z0 = rationals(z, 1, "--at")?.remove(0);
    if w.trim() == "inf" {
        return Ok(Point::Infinity(z0));
    }
    Ok(Point::Finite(z0, rationals(w, 1, "--at")?.remove(0)))
}

fn mul_inconclusive(r: &MultiplicityResult) -> bool {
    matches!(r.outcome, Multiplicity::Capped { .. })
        || r.tree.branches.iter().any(|b| !b.tower.all_certified())
}

fn search_inconclusive(s: &DarbouxSearch) -> bool {
    !s.complete || s.certificates.iter().any(|c| c.irreducible.is_none())
}

fn run_mul(sys: &ParsedSystem, at: &str, caps: &Caps) -> Result<Output, Failure> {
    let point = parse_point(at)?;
    let r = multiplicity_at(&sys.system, &point, caps)?;
    let label = point.label();
    Ok(Output {
        json: report::multiplicity_json(&label, &r),
        text: report::multiplicity_text(&label, &r),
        inconclusive: mul_inconclusive(&r),
    })
}

fn run_line_bound(sys: &ParsedSystem, abc: &[Rational], caps: &Caps) -> Result<Output, Failure> {
    let l = line_bound(&sys.system, &abc[0], &abc[1], &abc[2], caps)?;
    let inconclusive = matches!(l.line_bound, BoundValue::Inconclusive { .. });
    Ok(Output { json: report::line_bound_json(&l), text: report::line_bound_text(&l), inconclusive })
}

fn run_bound(sys: &ParsedSystem, line: Option<&str>, caps: &Caps) -> Result<Output, Failure> {
    if let Some(line) = line {
        return run_line_bound(sys, &rationals(line, 3, "--line")?, caps);
    }
    let b = axis_bound(&sys.system, caps)?;
    let inconclusive = matches!(b.sum_bound, BoundValue::Inconclusive { .. });
    Ok(Output { json: report::axis_bound_json(&b), text: report::axis_bound_text(&b), inconclusive })
}

fn run_darboux(sys: &ParsedSystem, max_degree: u32) -> Result<Output, Failure> {
    let (zdot, wdot) = sys.vector_field();
    let s = search_darboux(&VectorField::new(zdot, wdot), max_degree, EXTACTIC_DIM_CAP)?;
    Ok(Output {
        json: report::darboux_json(&s, max_degree),
        text: report::darboux_text(&s, max_degree),
        inconclusive: search_inconclusive(&s),
    })
}

fn run_lv(params: &str, caps: &Caps) -> Result<Output, Failure> {
    let v = rationals(params, 3, "--params")?;
    let p = LvParams::new(v[0].clone(), v[1].clone(), v[2].clone());
    let r = classify(&p, caps)?;
    let inconclusive = match &r.verdict {
        LvVerdict::NoStrictCurve { sum_bound, search, .. } => {
            matches!(sum_bound, BoundValue::Inconclusive { .. }) || search_inconclusive(search)
        }
        _ => false,
    };
    Ok(Output { json: report::lv_json(&r), text: report::lv_text(&r), inconclusive })
}

fn run_analyze(sys: &ParsedSystem, max_degree: u32, caps: &Caps) -> Result<Output, Failure> {
    let lines = detect_invariant_lines(&sys.system)?;
    let mut json = json!({
        "system": sys.to_text(),
        "form": serde_json::to_value(sys.form).unwrap_or(Value::Null),
        "invariant_lines": report::lines_json(&lines),
    });
    let mut text = format!("system: {}\n{}", sys.to_text(), report::lines_text(&lines));
    let mut inconclusive = false;
    if sys.q.terms().all(|(&(i, _), _)| i > 0) && !sys.p.at_z(&Rational::from_integer(0.into())).is_zero() {
        let b = axis_bound(&sys.system, caps)?;
        inconclusive |= matches!(b.sum_bound, BoundValue::Inconclusive { .. });
        json["axis_bound"] = report::axis_bound_json(&b);
        text.push_str(&report::axis_bound_text(&b));
    }
    let mut per_line = Vec::new();
    for l in &lines.lines {
        let out = run_line_bound(sys, &[l.a.clone(), l.b.clone(), l.c.clone()], caps)?;
        inconclusive |= out.inconclusive;
        per_line.push(out.json);
        text.push_str(&out.text);
    }
    json["line_bounds"] = Value::Array(per_line);
    let d = run_darboux(sys, max_degree)?;
    inconclusive |= d.inconclusive;
    json["darboux"] = d.json;
    text.push_str(&d.text);
    Ok(Output { json, text, inconclusive })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let caps = caps(&cli.opts)?;
    match &cli.command {
        Command::Lv { params } => run_lv(params, &caps),
        cmd => {
            let sys = load_system(&cli.opts)?;
            match cmd {
                Command::Mul { at } => run_mul(&sys, at, &caps),
                Command::Bound { line } => run_bound(&sys, line.as_deref(), &caps),
                Command::Darboux { max_degree } => run_darboux(&sys, *max_degree),
                Command::Analyze { max_degree } => run_analyze(&sys, *max_degree, &caps),
                Command::Lv { .. } => unreachable!(),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an analysis failure
            let _ = if cli.opts.json {
                out.json["inconclusive"] = json!(out.inconclusive);
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("serializable"))
            } else if out.inconclusive {
                writeln!(stdout, "{}result is inconclusive (cap or presumed irreducibility)", out.text)
            } else {
                write!(stdout, "{}", out.text)
            };
            ExitCode::from(if out.inconclusive { 3 } else { 0 })
        }
        Err(f) => {
            let (code, value, message) = match &f {
                Failure::Parse(e) => (2, report::error_json(e), e.to_string()),
                Failure::Cap(e) => (3, report::error_json(e), e.to_string()),
                Failure::Other(e) => (1, report::error_json(e), e.to_string()),
                Failure::Usage(m) => (1, json!({"error": m, "kind": "usage"}), m.clone()),
            };
            if cli.opts.json {
                let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&value).expect("serializable"));
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}
