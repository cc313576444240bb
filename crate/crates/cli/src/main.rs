//! `fusion-forge`: fusion tables, `β` folding, character polynomials, fusion
//! points, Dynkin indices and generator verification from the command line.
//!
//! Exit codes: 0 success, 1 verification failure or numerical failure,
//! 2 usage or input error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fusion_forge::conjectures::{standard_sweep, verify_sweep, SweepTask};
use fusion_forge::repring::minimal_index_fundamentals;
use fusion_forge::{
    beta_fold, char_poly, dynkin_index, enumerate_plevel, fusion_points, generator_list, verify_equality_rank2,
    verify_inclusion, wall_witness, weyl_dim, CharPoly, Error, FoldOutcome, FusionMethod, FusionTable,
    GeneratorSource, LieType, Rational, RootSystem, VerificationReport, WallWitness, Weight,
};
use serde::Serialize;

const SCHEMA: &str = "fusion-forge/1";

#[derive(Parser)]
#[command(name = "fusion-forge", version, about = "Fusion rings of simple Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Kacwalton,
    Verlinde,
    Both,
}

impl From<Method> for FusionMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Kacwalton => FusionMethod::KacWalton,
            Method::Verlinde => FusionMethod::Verlinde,
            Method::Both => FusionMethod::Both,
        }
    }
}

#[derive(Args)]
struct TypeLevel {
    /// Lie type, family letter and rank, e.g. "B3".
    #[arg(long = "type")]
    lie_type: LieType,
    /// Level, at least 1.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    level: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Full fusion table at one level.
    Table {
        #[command(flatten)]
        at: TypeLevel,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Image of V(λ) under β, with a wall witness when it vanishes.
    Beta {
        #[command(flatten)]
        at: TypeLevel,
        /// Highest weight as comma-separated ω-coordinates, e.g. "3,0,1".
        #[arg(long, allow_hyphen_values = true)]
        weight: Weight,
    },
    /// Character polynomial of V(λ) in the fundamental characters.
    Charpoly {
        #[arg(long = "type")]
        lie_type: LieType,
        #[arg(long, allow_hyphen_values = true)]
        weight: Weight,
    },
    /// Fusion points with their fundamental-character coordinates.
    Points {
        #[command(flatten)]
        at: TypeLevel,
    },
    /// Dynkin index of V(λ), or the minimal fundamental index when no weight is given.
    Index {
        #[arg(long = "type")]
        lie_type: LieType,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<Weight>,
    },
    /// Check that a generator list lies in the fusion ideal.
    Verify {
        /// Generator source tag, e.g. "thm4.2a".
        #[arg(long, required_unless_present = "all")]
        source: Option<GeneratorSource>,
        #[arg(long = "type", required_unless_present = "all")]
        lie_type: Option<LieType>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..), required_unless_present = "all")]
        level: Option<u32>,
        /// Run the full standard sweep instead of one list.
        #[arg(long, conflicts_with_all = ["source", "lie_type", "level"])]
        all: bool,
        /// Also evaluate character polynomials at the fusion points.
        #[arg(long)]
        with_eval: bool,
    },
    /// Solve a rank-≤2 generator system and match its zeros to the fusion points.
    Solve {
        #[command(flatten)]
        at: TypeLevel,
        /// Generator source tag; defaults to the one list that applies.
        #[arg(long)]
        source: Option<GeneratorSource>,
    },
}

/// An error together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Solver(_)
            | Error::SingularPoint { .. }
            | Error::NonIntegralVerlinde { .. }
            | Error::NegativeFusion { .. }
            | Error::MethodMismatch { .. }
            | Error::Overflow(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

/// Rendered output plus whether the run counts as a pass.
struct Rendered {
    text: String,
    pass: bool,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered { text, pass: true }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

fn json<T: Serialize>(body: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, body }).expect("serializable");
    s.push('\n');
    s
}

fn cell(w: &Weight) -> String {
    w.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, Failure> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(header)?;
    for r in rows {
        wtr.write_record(&r)?;
    }
    let bytes = wtr.into_inner().map_err(|e| Failure {
        code: 2,
        message: e.to_string(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn rational(q: Rational) -> serde_json::Value {
    if q.is_integer() {
        serde_json::Value::from(q.to_integer())
    } else {
        serde_json::Value::from(q.to_string())
    }
}

fn root_system(t: LieType) -> Result<RootSystem, Failure> {
    Ok(RootSystem::new(t)?)
}

fn run_table(at: &TypeLevel, method: Method, format: Format) -> Result<Rendered, Failure> {
    let ctx = enumerate_plevel(Arc::new(root_system(at.lie_type)?), at.level)?;
    let table = FusionTable::build(&ctx, method.into())?;
    let text = match format {
        Format::Json => json(&table),
        Format::Csv => csv_text(
            &["lambda", "mu", "nu", "N"],
            table.entries().map(|(a, b, n, c)| vec![cell(a), cell(b), cell(n), c.to_string()]),
        )?,
        Format::Plain => {
            let mut s = format!("{} level {}: {} weights\n", ctx.lie_type(), ctx.level(), ctx.len());
            for a in ctx.plevel() {
                for b in ctx.plevel() {
                    let terms: Vec<String> = table
                        .product(a, b)?
                        .into_iter()
                        .map(|(nu, n)| if n == 1 { format!("{nu}") } else { format!("{n}{nu}") })
                        .collect();
                    s += &format!("{a} x {b} = {}\n", terms.join(" + "));
                }
            }
            s
        }
    };
    Ok(Rendered::ok(text))
}

#[derive(Serialize)]
struct BetaOut {
    #[serde(flatten)]
    outcome: FoldOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WallWitness>,
}

fn run_beta(at: &TypeLevel, weight: &Weight, format: Format) -> Result<Rendered, Failure> {
    let rs = root_system(at.lie_type)?;
    let outcome = beta_fold(&rs, weight, at.level)?;
    let witness = if outcome.is_zero() {
        wall_witness(&rs, weight, at.level)?
    } else {
        None
    };
    let (result, sign, w) = match &outcome {
        FoldOutcome::Zero => ("zero", String::new(), String::new()),
        FoldOutcome::Nonzero { sign, weight } => ("nonzero", sign.to_string(), cell(weight)),
    };
    let text = match format {
        Format::Json => json(&BetaOut { outcome, witness }),
        Format::Csv => csv_text(&["result", "sign", "weight"], [vec![result.into(), sign, w]])?,
        Format::Plain => match (&outcome, &witness) {
            (FoldOutcome::Nonzero { sign, weight }, _) => {
                format!("{}V{weight}\n", if *sign < 0 { "-" } else { "" })
            }
            (FoldOutcome::Zero, Some(wit)) => format!(
                "0 (wall of {} at {}(l+h))\n",
                wit.root, wit.level_multiple
            ),
            (FoldOutcome::Zero, None) => "0\n".into(),
        },
    };
    Ok(Rendered::ok(text))
}

#[derive(Serialize)]
struct Term<'a> {
    exponents: &'a [u32],
    coefficient: i64,
}

#[derive(Serialize)]
struct CharPolyOut<'a> {
    lie_type: LieType,
    weight: &'a Weight,
    dimension: u128,
    polynomial: String,
    terms: Vec<Term<'a>>,
}

fn run_charpoly(lie_type: LieType, weight: &Weight, format: Format) -> Result<Rendered, Failure> {
    let rs = root_system(lie_type)?;
    let p: CharPoly = char_poly(&rs, weight)?;
    let text = match format {
        Format::Json => json(&CharPolyOut {
            lie_type,
            weight,
            dimension: weyl_dim(&rs, weight)?,
            polynomial: p.to_string(),
            terms: p
                .terms()
                .rev()
                .map(|(exponents, coefficient)| Term { exponents, coefficient })
                .collect(),
        }),
        Format::Csv => csv_text(
            &["exponents", "coefficient"],
            p.terms().rev().map(|(e, c)| {
                vec![e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "), c.to_string()]
            }),
        )?,
        Format::Plain => format!("{p}\n"),
    };
    Ok(Rendered::ok(text))
}

#[derive(Serialize)]
struct PointsOut<'a> {
    lie_type: LieType,
    level: u32,
    points: &'a [fusion_forge::FusionPoint],
}

fn run_points(at: &TypeLevel, format: Format) -> Result<Rendered, Failure> {
    let ctx = enumerate_plevel(Arc::new(root_system(at.lie_type)?), at.level)?;
    let points = fusion_points(&ctx)?;
    let text = match format {
        Format::Json => json(&PointsOut {
            lie_type: at.lie_type,
            level: at.level,
            points: &points,
        }),
        Format::Csv => csv_text(
            &["sigma", "i", "re", "im"],
            points.iter().flat_map(|p| {
                p.coords.iter().enumerate().map(|(i, z)| {
                    vec![cell(&p.label), (i + 1).to_string(), z.re.to_string(), z.im.to_string()]
                })
            }),
        )?,
        Format::Plain => points
            .iter()
            .map(|p| {
                let coords: Vec<String> = p.coords.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
                format!("{}: {}\n", p.label, coords.join(", "))
            })
            .collect(),
    };
    Ok(Rendered::ok(text))
}

fn run_index(lie_type: LieType, weight: Option<&Weight>, format: Format) -> Result<Rendered, Failure> {
    let rs = root_system(lie_type)?;
    let (min, nodes) = minimal_index_fundamentals(&rs)?;
    let mut body = serde_json::Map::new();
    body.insert("lie_type".into(), serde_json::to_value(lie_type).expect("serializable"));
    body.insert("dual_coxeter".into(), rs.dual_coxeter().into());
    body.insert("minimal_index".into(), rational(min));
    body.insert("minimal_nodes".into(), nodes.clone().into());
    let mut index = None;
    if let Some(w) = weight {
        let m = dynkin_index(&rs, w)?;
        index = Some(m);
        body.insert("weight".into(), serde_json::to_value(w).expect("serializable"));
        body.insert("index".into(), rational(m));
    }
    let nodes_cell = nodes.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ");
    let text = match format {
        Format::Json => json(&body),
        Format::Csv => {
            let mut header = vec!["type", "dual_coxeter", "minimal_index", "minimal_nodes"];
            let mut row = vec![lie_type.to_string(), rs.dual_coxeter().to_string(), min.to_string(), nodes_cell];
            if let (Some(w), Some(m)) = (weight, index) {
                header.extend(["weight", "index"]);
                row.extend([cell(w), m.to_string()]);
            }
            csv_text(&header, [row])?
        }
        Format::Plain => {
            let mut s = format!(
                "{lie_type}: dual Coxeter number {}, minimal index {min} at nodes {nodes_cell}\n",
                rs.dual_coxeter()
            );
            if let (Some(w), Some(m)) = (weight, index) {
                s += &format!("index of V{w}: {m}\n");
            }
            s
        }
    };
    Ok(Rendered::ok(text))
}

fn report_rows(r: &VerificationReport) -> Vec<Vec<String>> {
    r.generators
        .iter()
        .map(|g| {
            vec![
                r.spec.lie_type.to_string(),
                r.spec.level.to_string(),
                r.spec.source.tag().into(),
                cell(&g.weight),
                if g.beta.is_zero() { "zero" } else { "nonzero" }.into(),
                g.witness.as_ref().map(|w| cell(&Weight(w.root.0.clone()))).unwrap_or_default(),
                g.witness.as_ref().map(|w| w.level_multiple.to_string()).unwrap_or_default(),
                g.printed_wall_ok.map(|b| b.to_string()).unwrap_or_default(),
                g.max_abs_value.map(|v| format!("{v:e}")).unwrap_or_default(),
                g.pass.to_string(),
            ]
        })
        .collect()
}

const REPORT_HEADER: [&str; 10] = [
    "type", "level", "source", "weight", "beta", "witness_root", "witness_n", "printed_wall_ok", "max_abs_value", "pass",
];

fn plain_report(r: &VerificationReport) -> String {
    let mut s = format!(
        "{} {} level {}: {}\n",
        r.spec.source,
        r.spec.lie_type,
        r.spec.level,
        if r.pass { "PASS" } else { "FAIL" }
    );
    for g in &r.generators {
        let wall = g
            .witness
            .as_ref()
            .map(|w| format!("wall {} at {}(l+h)", w.root, w.level_multiple))
            .unwrap_or_else(|| "no wall".into());
        s += &format!("  V{}: {} {wall}\n", g.weight, if g.pass { "ok" } else { "FAILED" });
    }
    if let Some(n) = &r.evaluation_note {
        s += &format!("  note: {n}\n");
    }
    s
}

#[derive(Serialize)]
struct SweepOut<'a> {
    pass: bool,
    tasks: usize,
    reports: Vec<&'a VerificationReport>,
    errors: Vec<SweepError>,
}

#[derive(Serialize)]
struct SweepError {
    task: SweepTask,
    error: String,
}

fn run_verify(
    source: Option<GeneratorSource>,
    lie_type: Option<LieType>,
    level: Option<u32>,
    all: bool,
    with_eval: bool,
    format: Format,
) -> Result<Rendered, Failure> {
    if !all {
        let (source, lie_type, level) = (
            source.expect("required by clap"),
            lie_type.expect("required by clap"),
            level.expect("required by clap"),
        );
        let rs = root_system(lie_type)?;
        let report = verify_inclusion(&rs, level, source, with_eval)?;
        let text = match format {
            Format::Json => json(&report),
            Format::Csv => csv_text(&REPORT_HEADER, report_rows(&report))?,
            Format::Plain => plain_report(&report),
        };
        return Ok(Rendered {
            text,
            pass: report.pass,
        });
    }
    let tasks = standard_sweep();
    let results = verify_sweep(&tasks, with_eval);
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (task, r) in tasks.iter().zip(&results) {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => errors.push(SweepError {
                task: *task,
                error: e.to_string(),
            }),
        }
    }
    let pass = errors.is_empty() && reports.iter().all(|r| r.pass);
    let text = match format {
        Format::Json => json(&SweepOut {
            pass,
            tasks: tasks.len(),
            reports,
            errors,
        }),
        Format::Csv => csv_text(&REPORT_HEADER, reports.iter().flat_map(|r| report_rows(r)))?,
        Format::Plain => {
            let mut s: String = reports.iter().map(|r| plain_report(r)).collect();
            for e in &errors {
                s += &format!("{} {} level {}: ERROR {}\n", e.task.source, e.task.lie_type, e.task.level, e.error);
            }
            s += &format!("{} tasks: {}\n", tasks.len(), if pass { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok(Rendered { text, pass })
}

fn run_solve(at: &TypeLevel, source: Option<GeneratorSource>, format: Format) -> Result<Rendered, Failure> {
    let rs = root_system(at.lie_type)?;
    let source = match source {
        Some(s) => s,
        None => *fusion_forge::conjectures::applicable_sources(at.lie_type)
            .first()
            .ok_or_else(|| Failure {
                code: 2,
                message: format!("no generator list applies to {}", at.lie_type),
            })?,
    };
    // validates the source against the type before any solving
    generator_list(&rs, at.level, source)?;
    let cmp = verify_equality_rank2(&rs, at.level, source)?;
    let text = match format {
        Format::Json => json(&cmp),
        Format::Csv => csv_text(
            &["zero", "coordinate", "re", "im"],
            cmp.zeros.iter().enumerate().flat_map(|(i, z)| {
                z.iter()
                    .enumerate()
                    .map(move |(j, c)| vec![i.to_string(), (j + 1).to_string(), c.re.to_string(), c.im.to_string()])
            }),
        )?,
        Format::Plain => format!(
            "{} zeros, {} fusion points, max distance {:e}: {}\n",
            cmp.zeros.len(),
            cmp.points.len(),
            cmp.max_distance,
            if cmp.equal { "EQUAL" } else { "DIFFERENT" }
        ),
    };
    Ok(Rendered { text, pass: cmp.equal })
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    let f = cli.output.format;
    match &cli.command {
        Command::Table { at, method } => run_table(at, *method, f),
        Command::Beta { at, weight } => run_beta(at, weight, f),
        Command::Charpoly { lie_type, weight } => run_charpoly(*lie_type, weight, f),
        Command::Points { at } => run_points(at, f),
        Command::Index { lie_type, weight } => run_index(*lie_type, weight.as_ref(), f),
        Command::Verify {
            source,
            lie_type,
            level,
            all,
            with_eval,
        } => run_verify(*source, *lie_type, *level, *all, *with_eval, f),
        Command::Solve { at, source } => run_solve(at, *source, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output.output {
                Some(path) => fs::write(path, &out.text),
                None => io::stdout().lock().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
