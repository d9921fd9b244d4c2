use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::json;

use wallcross::closed_forms::{delta_l0, delta_l0_odd, delta_l1, delta_leading, DeltaValue, Path};
use wallcross::io::{parse_vector, DeltaInput, WallsInput, SCHEMA_VERSION};
use wallcross::jacobian_model::InsertionWord;
use wallcross::oracle_general::{delta_oracle_l0, delta_oracle_l1, EmptySideBranch};
use wallcross::rational::{fmt_q, q};
use wallcross::surfaces::enumerate_walls;
use wallcross::verify::{run_all, run_property, Fault, Grid, PropertyReport, VerifyOptions};
use wallcross::Error;

mod table;

use table::{Cell, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Params,
    Delta,
    Verify,
    Walls,
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InjectFault {
    Eps,
}

/// Exact wall-crossing terms of Donaldson invariants.
#[derive(Debug, Parser)]
#[command(name = "wallcross", version)]
struct Cli {
    #[arg(long, value_enum)]
    command: Command,
    /// JSON model/wall input, or surface input for `walls`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
    /// Number of point classes `x` in `x^r α^(d-2r)`.
    #[arg(long)]
    r: Option<u32>,
    /// Lattice vector `α` in the surface basis, e.g. "1,0".
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    bound: Option<i64>,
    /// Sweep bounds for `verify`, e.g. "q=0..3,d<=8".
    #[arg(long)]
    grid: Option<String>,
    /// Run a single property.
    #[arg(long)]
    property: Option<String>,
    #[arg(long, value_enum)]
    inject_fault: Option<InjectFault>,
    #[arg(long, default_value_t = 20240601)]
    seed: u64,
    /// Require the l = 0 closed form.
    #[arg(long, conflicts_with_all = ["l1", "leading"])]
    l0: bool,
    /// Require the l = 1 closed form.
    #[arg(long, conflicts_with = "leading")]
    l1: bool,
    /// Leading term in `a = ζ·α/2`, available for every l.
    #[arg(long)]
    leading: bool,
    /// Also evaluate on the cohomology ring model.
    #[arg(long)]
    oracle: bool,
    /// Attach run metadata (version, timing).
    #[arg(long)]
    meta: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_regime() { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn read_input(cli: &Cli) -> Result<String, Failure> {
    let path = cli.input.as_ref().ok_or_else(|| input_error("--input is required for this command"))?;
    std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn path_cells(path: &Path) -> (Cell, Cell) {
    match path {
        Path::ClosedForm => (Cell::text("closed_form"), Cell::Empty),
        Path::RingOracle => (Cell::text("ring_oracle"), Cell::Empty),
        Path::LeadingTerm { modulus_exponent } => (Cell::text("leading_term"), Cell::Int(*modulus_exponent)),
    }
}

fn cmd_params(cli: &Cli) -> Result<Table, Failure> {
    let input = DeltaInput::from_json(&read_input(cli)?)?;
    let (model, wall) = input.build()?;
    let p = wall.params;
    let mut t = Table::new(&[
        "q",
        "p1",
        "zeta2",
        "zetaK",
        "d",
        "l",
        "h_plus",
        "h_minus",
        "n_plus",
        "n_minus",
        "eps",
        "eps_S",
        "empty_plus_side",
        "vol",
    ]);
    t.push(vec![
        Cell::Int(wall.q),
        Cell::Int(wall.p1),
        Cell::Int(wall.zeta2),
        Cell::Int(wall.zeta_k),
        Cell::Int(p.d),
        Cell::Int(p.l),
        Cell::Int(p.h_plus),
        Cell::Int(p.h_minus),
        Cell::Int(p.n_plus),
        Cell::Int(p.n_minus),
        Cell::Int(wall.eps()),
        Cell::Int(wall.eps_s()),
        Cell::Bool(wall.empty_plus_side()),
        Cell::Rational(model.vol()),
    ]);
    Ok(t)
}

fn cmd_delta(cli: &Cli) -> Result<Table, Failure> {
    let input = DeltaInput::from_json(&read_input(cli)?)?;
    let (model, wall) = input.build()?;
    let p = model.pairings();
    let vol = model.vol();
    let word = match (&input.word, cli.r) {
        (Some(_), Some(_)) => return Err(input_error("give either a word in the input or --r, not both")),
        (Some(w), None) => w.clone(),
        (None, r) => {
            let r = r.unwrap_or(0);
            InsertionWord::even(r, (wall.d() - 2 * r as i64).max(0) as u32)
        }
    };
    let (r, s) = (word.r as i64, word.s as i64);
    let odd = word.odd_count() > 0;
    let power_word = !odd && (s + 2 * r == wall.d() || (s == 0 && 2 * r > wall.d()));
    if !power_word && (cli.leading || wall.l() != 0) {
        return Err(input_error("words other than x^r alpha^(d-2r) are only evaluated for l = 0"));
    }
    let l = wall.l();
    if cli.l0 && l != 0 || cli.l1 && l != 1 {
        let expected = if cli.l0 { 0 } else { 1 };
        return Err(Error::WrongRegime { expected, found: l }.into());
    }
    let mut values: Vec<DeltaValue> = Vec::new();
    if cli.leading {
        values.push(delta_leading(&wall, p, &vol, word.r)?);
    } else {
        values.push(match l {
            0 if !power_word => delta_l0_odd(&wall, &model, &word)?,
            0 => delta_l0(&wall, p, &vol, word.r)?,
            1 => delta_l1(&wall, p, &vol, word.r)?,
            l => return Err(Error::UnsupportedRegime(l).into()),
        });
    }
    if cli.oracle {
        values.push(match l {
            0 => delta_oracle_l0(&model, &wall, &word, EmptySideBranch::Auto)?,
            1 => delta_oracle_l1(&model, &wall, word.r)?,
            l => return Err(Error::UnsupportedRegime(l).into()),
        });
    }
    let mut t = Table::new(&["path", "value", "modulus_exponent", "d", "l", "r", "s", "gammas", "threes"]);
    for v in values {
        let (path, modulus) = path_cells(&v.path);
        let join = |xs: &[usize]| xs.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
        t.push(vec![
            path,
            Cell::Rational(v.value),
            modulus,
            Cell::Int(v.wall.d()),
            Cell::Int(v.wall.l()),
            Cell::Int(v.word.r as i64),
            Cell::Int(v.word.s as i64),
            Cell::text(join(&v.word.gammas)),
            Cell::text(join(&v.word.threes)),
        ]);
    }
    Ok(t)
}

fn report_table(reports: &[PropertyReport]) -> Table {
    let mut t = Table::new(&["property", "status", "cases", "first_failure"]);
    for r in reports {
        t.push(vec![
            Cell::text(&r.name),
            Cell::text(if r.passed() { "PASS" } else { "FAIL" }),
            Cell::Int(r.cases as i64),
            r.failure.as_ref().map(Cell::text).unwrap_or(Cell::Empty),
        ]);
    }
    t
}

fn cmd_verify(cli: &Cli) -> Result<(Table, bool), Failure> {
    let grid = match &cli.grid {
        Some(g) => Grid::parse(g)?,
        None => Grid::default(),
    };
    let opts = VerifyOptions { seed: cli.seed, fault: cli.inject_fault.map(|InjectFault::Eps| Fault::EpsSign) };
    let reports = match &cli.property {
        Some(name) => vec![run_property(name, &grid, &opts)?],
        None => run_all(&grid, &opts),
    };
    let ok = reports.iter().all(PropertyReport::passed);
    Ok((report_table(&reports), ok))
}

fn cmd_walls(cli: &Cli) -> Result<Table, Failure> {
    let input = WallsInput::from_json(&read_input(cli)?)?;
    let surface = input.surface.build()?;
    let alpha = match &cli.alpha {
        Some(s) => Some(parse_vector(s)?),
        None => input.alpha.clone(),
    };
    let bound = cli.bound.or(input.bound).unwrap_or(10);
    let walls = enumerate_walls(&surface, &input.w, input.p1, bound, alpha.as_deref())?;
    let r = cli.r.unwrap_or(0);
    let mut t = Table::new(&["a", "b", "zeta2", "zetaK", "l", "h", "d", "eps", "delta"]);
    for w in walls {
        let g = &w.geometry;
        // the standard symplectic basis of the base curve gives vol = 1
        let delta = match (g.l(), &alpha) {
            (0, Some(_)) => delta_l0(g, &w.pairings, &q(1), r).ok(),
            (1, Some(_)) => delta_l1(g, &w.pairings, &q(1), r).ok(),
            _ => None,
        };
        t.push(vec![
            Cell::Int(w.a),
            Cell::Int(w.b),
            Cell::Int(g.zeta2),
            Cell::Int(g.zeta_k),
            Cell::Int(g.l()),
            Cell::Int(g.params.h_plus),
            Cell::Int(g.d()),
            Cell::Int(g.eps()),
            delta.map(|v| Cell::Rational(v.value)).unwrap_or(Cell::Empty),
        ]);
    }
    Ok(t)
}

const L0_EXAMPLE: &str = include_str!("../../../data/l0_example.json");
const L1_EXAMPLE: &str = include_str!("../../../data/l1_example.json");

fn cmd_selftest() -> Result<(Table, bool), Failure> {
    let mut reports = Vec::new();
    for (name, text, expected) in [("l0_example", L0_EXAMPLE, q(-10)), ("l1_example", L1_EXAMPLE, q(12))] {
        let (model, wall) = DeltaInput::from_json(text)?.build()?;
        let p = model.pairings();
        let closed =
            if wall.l() == 0 { delta_l0(&wall, p, &model.vol(), 0)? } else { delta_l1(&wall, p, &model.vol(), 0)? };
        let oracle = if wall.l() == 0 {
            delta_oracle_l0(&model, &wall, &InsertionWord::power(wall.d() as u32, 0)?, EmptySideBranch::Auto)?
        } else {
            delta_oracle_l1(&model, &wall, 0)?
        };
        let failure = (closed.value != expected || oracle.value != expected).then(|| {
            format!(
                "expected {}, closed form {}, ring {}",
                fmt_q(&expected),
                fmt_q(&closed.value),
                fmt_q(&oracle.value)
            )
        });
        reports.push(PropertyReport { name: name.into(), cases: 2, failure });
    }
    let quick = Grid::parse("q=0..1,d<=4,r<=1,p<=1")?;
    let opts = VerifyOptions::default();
    for name in ["oracle_l0", "segre", "model_axioms", "simple_type"] {
        reports.push(run_property(name, &quick, &opts)?);
    }
    let ok = reports.iter().all(PropertyReport::passed);
    Ok((report_table(&reports), ok))
}

fn run(cli: &Cli) -> Result<(Table, bool), Failure> {
    match cli.command {
        Command::Params => cmd_params(cli).map(|t| (t, true)),
        Command::Delta => cmd_delta(cli).map(|t| (t, true)),
        Command::Verify => cmd_verify(cli),
        Command::Walls => cmd_walls(cli).map(|t| (t, true)),
        Command::Selftest => cmd_selftest(),
    }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Params => "params",
        Command::Delta => "delta",
        Command::Verify => "verify",
        Command::Walls => "walls",
        Command::Selftest => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (table, ok) = match run(&cli) {
        Ok(x) => x,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let meta = cli.meta.then(|| {
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": command_name(cli.command),
            "input": cli.input.as_ref().map(|p| p.display().to_string()),
            "elapsed_ms": start.elapsed().as_millis() as u64,
        })
    });
    let rendered = match cli.output {
        Output::Json => table.to_json(SCHEMA_VERSION, command_name(cli.command), meta).map_err(|e| e.to_string()),
        Output::Csv => table.to_csv(meta).map_err(|e| e.to_string()),
    };
    match rendered {
        Ok(s) => print!("{s}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
