//! `zk`: equivariant cohomology of moment-angle complexes from the command
//! line.
//!
//! Exit codes: 0 computed, 1 input error, 2 resource cap, 3 internal
//! consistency failure.

mod report;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zkcoh::format::parse_complex;
use zkcoh::{default_truncation, Engine, Error, ResourceLimits, SimplicialComplex, VertexSubset};

#[derive(Parser)]
#[command(name = "zk", version, about = "Equivariant cohomology of moment-angle complexes under coordinate subtori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H*_{T_I}(Z_K) degree by degree, with representatives.
    Cohomology(CohomologyArgs),
    /// Freeness over H*(BT_I) for one I or every face.
    Formality(FormalityArgs),
    /// Flag/graph detection, missing faces, decomposition or obstruction.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct Common {
    /// Complex file (facet list or JSON); `-` reads standard input.
    #[arg(long, short, conflicts_with = "complex", required_unless_present = "complex")]
    input: Option<PathBuf>,
    /// The complex inline, in either input format.
    #[arg(long)]
    complex: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct Torus {
    /// Torus vertices: labels separated by commas or spaces, `all`, or `none`.
    #[arg(long, short)]
    torus: Option<String>,
    /// Truncation degree D; defaults to 4m.
    #[arg(long, short = 'd')]
    max_degree: Option<usize>,
}

#[derive(Args)]
struct CohomologyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    torus: Torus,
    /// Add the multidegree decomposition of every degree.
    #[arg(long)]
    multidegrees: bool,
    #[arg(long, value_enum, default_value_t = Coefficients::Integral)]
    coefficients: Coefficients,
    /// Largest number of representatives printed; more is a resource error.
    #[arg(long, default_value_t = 4096)]
    max_representatives: usize,
}

#[derive(Args)]
struct FormalityArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    torus: Torus,
    /// Verdicts for every face of K.
    #[arg(long, conflicts_with = "torus")]
    survey: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    common: Common,
    /// Also gather single-circle evidence and check it against the criterion.
    #[arg(long)]
    evidence: bool,
    #[arg(long, short = 'd')]
    max_degree: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coefficients {
    Integral,
    Rational,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit(_) => 2,
            Error::Consistency(_) => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 1, message }
}

fn load(common: &Common) -> Result<SimplicialComplex, Failure> {
    let text = match (&common.input, &common.complex) {
        (_, Some(inline)) => inline.clone(),
        (Some(path), None) if path.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("reading stdin: {e}")))?;
            s
        }
        (Some(path), None) => {
            fs::read_to_string(path).map_err(|e| input_error(format!("reading {}: {e}", path.display())))?
        }
        (None, None) => return Err(input_error("no input complex".into())),
    };
    Ok(parse_complex(&text)?)
}

fn parse_torus(k: &SimplicialComplex, given: Option<&str>) -> Result<VertexSubset, Failure> {
    match given.map(str::trim) {
        None | Some("none") | Some("") => Ok(VertexSubset::EMPTY),
        Some("all") => Ok(k.vertex_set()),
        Some(list) => {
            let labels: Vec<&str> = list.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
            Ok(k.subset_of_labels(&labels)?)
        }
    }
}

fn set_threads(threads: Option<usize>) -> Result<(), Failure> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| input_error(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn emit(format: OutputFormat, json: serde_json::Value, table: String) {
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&json).expect("JSON values serialize")),
        OutputFormat::Table => print!("{table}"),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cohomology(args) => {
            set_threads(args.common.threads)?;
            let k = load(&args.common)?;
            let torus = parse_torus(&k, args.torus.torus.as_deref())?;
            let d = args.torus.max_degree.unwrap_or_else(|| default_truncation(k.vertex_count()));
            let engine = Engine::with_limits(k, ResourceLimits::default());
            let r = report::cohomology(&engine, torus, d, args.coefficients, args.multidegrees, args.max_representatives)?;
            emit(args.common.format, r.json, r.table);
        }
        Command::Formality(args) => {
            set_threads(args.common.threads)?;
            let k = load(&args.common)?;
            let d = args.torus.max_degree.unwrap_or_else(|| default_truncation(k.vertex_count()));
            let engine = Engine::new(k);
            let r = if args.survey {
                report::survey(&engine, d)?
            } else {
                let torus = parse_torus(engine.complex(), args.torus.torus.as_deref())?;
                report::formality(&engine, torus, d)?
            };
            emit(args.common.format, r.json, r.table);
        }
        Command::Classify(args) => {
            set_threads(args.common.threads)?;
            let k = load(&args.common)?;
            let d = args.max_degree.unwrap_or_else(|| default_truncation(k.vertex_count()));
            let r = report::classify(&Engine::new(k), args.evidence.then_some(d))?;
            emit(args.common.format, r.json, r.table);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("zk: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
