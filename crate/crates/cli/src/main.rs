//! `dqsim`: build, run and sweep the distributed search and hidden-string
//! algorithms from the command line.

mod chart;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dqsim_core::algorithms::{
    build_bv, build_dbva, build_dega, build_grover, build_long, DistributedCircuit, NodePlan,
};
use dqsim_core::bits::BitString;
use dqsim_core::boolfn::{
    check_table_arity, hidden_string_function, parse_table, point_function, PartLayout,
};
use dqsim_core::experiments::{self, Fixture, SearchAlgorithm, TABLE_IDS};
use dqsim_core::{
    Circuit, Error, ErrorClass, Execution, NoiseModel, Parameterization, TruthTable, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(
    name = "dqsim",
    version,
    about = "Distributed quantum algorithm simulator"
)]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and simulate an algorithm, printing a JSON report.
    Run(RunArgs),
    /// Write a built circuit in the text interchange format.
    Export(ExportArgs),
    /// Simulate a circuit file.
    Simulate(SimulateArgs),
    /// Gate counts and depths of built search circuits next to the closed forms.
    DepthTable(DepthTableArgs),
    /// Exact noisy target probabilities over a grid of noise strengths.
    NoiseSweep(NoiseSweepArgs),
    /// Regenerate a reference table with a sidecar of checks.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Bv,
    Dbva,
    Grover,
    Long,
    Dega,
}

#[derive(Args)]
#[group(id = "function", required = true, multiple = false)]
struct FunctionSpec {
    /// Hidden string s of f(x) = s.x mod 2.
    #[arg(long)]
    hidden: Option<BitString>,
    /// Unique marked input of a point function.
    #[arg(long)]
    target: Option<BitString>,
    /// Truth-table file (`arity N` + bits, `target <bits>` or `hidden <bits>`).
    #[arg(long)]
    table: Option<PathBuf>,
}

impl FunctionSpec {
    fn load(&self) -> Result<TruthTable, CliError> {
        if let Some(s) = &self.hidden {
            check_table_arity(s.len())?;
            return Ok(hidden_string_function(s));
        }
        if let Some(t) = &self.target {
            check_table_arity(t.len())?;
            return Ok(point_function(t));
        }
        let path = self.table.as_ref().expect("clap enforces one source");
        let text = fs::read_to_string(path).map_err(|e| CliError::input(path, e))?;
        Ok(parse_table(&text)?)
    }
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    function: FunctionSpec,
    /// Node sizes for dbva, e.g. `3,3` or `2,2,2`.
    #[arg(long)]
    nodes: Option<NodePlan>,
    /// Where DEGA's 3-bit part goes when n is odd.
    #[arg(long, default_value = "trailing")]
    layout: PartLayout,
    /// Apply the X-cancellation pass before simulating.
    #[arg(long)]
    optimize: bool,
}

impl BuildArgs {
    fn build(&self, algorithm: Algorithm) -> Result<(TruthTable, DistributedCircuit), CliError> {
        let f = self.function.load()?;
        if self.nodes.is_some() && !matches!(algorithm, Algorithm::Dbva) {
            return Err(CliError::usage("--nodes only applies to dbva"));
        }
        let dc = match algorithm {
            Algorithm::Bv => DistributedCircuit::single(build_bv(&f)?),
            Algorithm::Dbva => {
                let plan = self
                    .nodes
                    .clone()
                    .ok_or_else(|| CliError::usage("dbva needs --nodes"))?;
                build_dbva(&f, &plan)?
            }
            Algorithm::Grover => DistributedCircuit::single(build_grover(&f)?),
            Algorithm::Long => DistributedCircuit::single(build_long(&f)?),
            Algorithm::Dega => build_dega(&f, self.layout)?,
        };
        Ok((f, dc))
    }
}

#[derive(Args)]
struct NoiseArgs {
    /// Depolarizing strength applied after every gate on every wire it touches.
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long, default_value = "pauli-thirds")]
    channel: Parameterization,
    /// Sample noisy shots as trajectories instead of from the exact density.
    #[arg(long)]
    trajectories: bool,
}

impl NoiseArgs {
    fn model(&self) -> Result<Option<NoiseModel>, CliError> {
        if self.noise.is_none() && self.trajectories {
            return Err(CliError::usage("--trajectories needs --noise"));
        }
        Ok(self
            .noise
            .map(|p| NoiseModel::new(p, self.channel))
            .transpose()?)
    }
}

#[derive(Args)]
struct RunArgs {
    algorithm: Algorithm,
    #[command(flatten)]
    build: BuildArgs,
    #[command(flatten)]
    noise: NoiseArgs,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, env = "DQSIM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    algorithm: Algorithm,
    #[command(flatten)]
    build: BuildArgs,
    /// Write one file per node into this directory (`part-<i>.qc`) instead
    /// of one circuit with the nodes side by side.
    #[arg(long)]
    split: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    circuit: PathBuf,
    #[command(flatten)]
    noise: NoiseArgs,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, env = "DQSIM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    optimize: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DepthTableArgs {
    #[arg(long, default_value_t = 2)]
    min: usize,
    #[arg(long, default_value_t = 10)]
    max: usize,
    #[arg(long, value_delimiter = ',', default_value = "grover,long,dega")]
    algorithms: Vec<SearchAlgorithm>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NoiseSweepArgs {
    /// Fixtures to sweep (bv, bv-opt, dbva2, dbva2-opt, dbva3, grover2, grover5, long5, dega5).
    #[arg(long, value_delimiter = ',', default_value = "grover5,long5,dega5")]
    fixtures: Vec<Fixture>,
    /// Noise strengths; defaults to 0, 0.01, ..., 0.09.
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    #[arg(long, default_value = "pauli-thirds")]
    channel: Parameterization,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, env = "DQSIM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// SVG chart of P(target) against p.
    #[arg(long)]
    chart: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(value_parser = TABLE_IDS)]
    table: String,
    /// Directory for `<table>.csv` and `<table>.json`.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, env = "DQSIM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
    ChecksFailed(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn input(path: &Path, e: io::Error) -> Self {
        CliError::Usage(format!("cannot read {}: {e}", path.display()))
    }

    fn output(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Io(format!("cannot write {}: {e}", path.display()))
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Usage => 2,
                ErrorClass::Domain => 3,
                ErrorClass::Resource => 4,
            },
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::ChecksFailed(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Io(m) | CliError::ChecksFailed(m) => f.write_str(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match dispatch(cli.command, exec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: Command, exec: Execution) -> Result<(), CliError> {
    match command {
        Command::Run(args) => cmd_run(args, exec),
        Command::Export(args) => cmd_export(args),
        Command::Simulate(args) => cmd_simulate(args, exec),
        Command::DepthTable(args) => cmd_depth_table(args, exec),
        Command::NoiseSweep(args) => cmd_noise_sweep(args, exec),
        Command::Reproduce(args) => cmd_reproduce(args, exec),
    }
}

fn algorithm_id(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Bv => "bv",
        Algorithm::Dbva => "dbva",
        Algorithm::Grover => "grover",
        Algorithm::Long => "long",
        Algorithm::Dega => "dega",
    }
}

fn cmd_run(args: RunArgs, exec: Execution) -> Result<(), CliError> {
    let model = args.noise.model()?;
    let (_, built) = args.build.build(args.algorithm)?;
    let report = report::run_report(
        algorithm_id(args.algorithm),
        &built,
        args.build.optimize,
        model,
        args.noise.trajectories,
        args.shots,
        args.seed,
        exec,
    )?;
    emit(args.output.as_deref(), &report::to_json(&report))
}

fn cmd_export(args: ExportArgs) -> Result<(), CliError> {
    let (_, mut built) = args.build.build(args.algorithm)?;
    if args.build.optimize {
        built = built.optimized();
    }
    if let Some(dir) = &args.split {
        fs::create_dir_all(dir).map_err(|e| CliError::output(dir, e))?;
        for (i, part) in built.parts().iter().enumerate() {
            let path = dir.join(format!("part-{i}.qc"));
            let text = format!(
                "# positions {}..{}\n{}",
                part.positions.start,
                part.positions.end,
                part.circuit.serialize()
            );
            fs::write(&path, text).map_err(|e| CliError::output(&path, e))?;
        }
        return Ok(());
    }
    emit(args.output.as_deref(), &built.combined().serialize())
}

fn cmd_simulate(args: SimulateArgs, exec: Execution) -> Result<(), CliError> {
    let model = args.noise.model()?;
    let text = fs::read_to_string(&args.circuit).map_err(|e| CliError::input(&args.circuit, e))?;
    let circuit = Circuit::deserialize(&text)?;
    let built = DistributedCircuit::single(circuit);
    let report = report::run_report(
        "circuit",
        &built,
        args.optimize,
        model,
        args.noise.trajectories,
        args.shots,
        args.seed,
        exec,
    )?;
    emit(args.output.as_deref(), &report::to_json(&report))
}

fn cmd_depth_table(args: DepthTableArgs, exec: Execution) -> Result<(), CliError> {
    if args.min > args.max {
        return Err(CliError::usage(format!(
            "--min {} exceeds --max {}",
            args.min, args.max
        )));
    }
    let ns: Vec<usize> = (args.min..=args.max).collect();
    let rows = experiments::depth_table(&ns, &args.algorithms, exec)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "algorithm", "gates", "depth", "formula_depth", "flag"])
        .map_err(csv_err)?;
    for r in &rows {
        w.write_record([
            r.n.to_string(),
            r.algorithm.id().to_string(),
            r.gates.to_string(),
            r.depth.to_string(),
            r.formula_depth.to_string(),
            if r.matches {
                String::new()
            } else {
                "mismatch".into()
            },
        ])
        .map_err(csv_err)?;
    }
    emit(args.output.as_deref(), &finish_csv(w)?)
}

fn cmd_noise_sweep(args: NoiseSweepArgs, exec: Execution) -> Result<(), CliError> {
    let grid = if args.p.is_empty() {
        experiments::default_p_grid()
    } else {
        args.p.clone()
    };
    let rows = experiments::noise_sweep(
        &args.fixtures,
        &grid,
        args.channel,
        args.shots,
        args.seed,
        exec,
    )?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "p",
        "circuit-id",
        "parameterization",
        "P(target)",
        "shots",
        "seed",
        "sampled_frequency",
    ])
    .map_err(csv_err)?;
    for r in &rows {
        w.write_record([
            r.p.to_string(),
            r.circuit_id.clone(),
            r.parameterization.id().to_string(),
            r.p_target.to_string(),
            r.shots.to_string(),
            r.seed.to_string(),
            r.sampled_frequency.to_string(),
        ])
        .map_err(csv_err)?;
    }
    if let Some(path) = &args.chart {
        let svg = chart::render(&rows, args.channel);
        fs::write(path, svg).map_err(|e| CliError::output(path, e))?;
    }
    emit(args.output.as_deref(), &finish_csv(w)?)
}

fn cmd_reproduce(args: ReproduceArgs, exec: Execution) -> Result<(), CliError> {
    let table = experiments::reproduce(&args.table, args.shots, args.seed, exec)?;
    fs::create_dir_all(&args.out_dir).map_err(|e| CliError::output(&args.out_dir, e))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns).map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row).map_err(csv_err)?;
    }
    let csv_path = args.out_dir.join(format!("{}.csv", table.id));
    fs::write(&csv_path, finish_csv(w)?).map_err(|e| CliError::output(&csv_path, e))?;
    let json_path = args.out_dir.join(format!("{}.json", table.id));
    let sidecar = report::sidecar(&table, args.shots, args.seed);
    fs::write(&json_path, report::to_json(&sidecar))
        .map_err(|e| CliError::output(&json_path, e))?;

    let failed: Vec<_> = table.checks.iter().filter(|c| !c.pass).collect();
    println!(
        "{}: {} rows, {}/{} checks passed",
        table.id,
        table.rows.len(),
        table.checks.len() - failed.len(),
        table.checks.len()
    );
    if failed.is_empty() {
        Ok(())
    } else {
        let names: Vec<_> = failed.iter().map(|c| c.name.as_str()).collect();
        Err(CliError::ChecksFailed(format!(
            "checks failed: {}",
            names.join("; ")
        )))
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(format!("csv: {e}"))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Io(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::output(p, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}
