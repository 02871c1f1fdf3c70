use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use listcolour::bounds::{all_formulas, evaluate};
use listcolour::choosability::{
    choice_number, chromatic_number, g_search, is_k_choosable, ChoosabilityConfig,
};
use listcolour::dangerous::component_profile;
use listcolour::experiment::{
    component_experiment, gadget_experiment, mc_colourable, sweep, to_csv, GraphSpec, McOptions,
};
use listcolour::gadget::GadgetSpec;
use listcolour::solver::{solve, validate_witness, witness_from_solution, SolverConfig};
use listcolour::{sample_assignment, Error, Execution, ForbiddenSpec, ListAssignment, Seed};

#[derive(Parser)]
#[command(
    name = "listcolour",
    version,
    about = "Colouring graphs from random lists"
)]
struct Cli {
    /// JSON file of default option values; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one random (k, m)-list-assignment.
    Sample(SampleArgs),
    /// Decide colourability for a given list assignment.
    Solve(SolveArgs),
    /// Largest dangerous component over random assignments.
    Components(TrialArgs),
    /// Monte Carlo estimate of P(colourable), as CSV.
    Mc(McArgs),
    /// One Monte Carlo estimate per palette size, as CSV.
    Sweep(SweepArgs),
    /// Bad-copy and colourability frequencies for a gadget.
    Gadget(GadgetArgs),
    /// k-choosability, or the chromatic and choice numbers.
    Choosability(ChoosabilityArgs),
    /// Certify g(H, k) over a graph6 stream.
    Gsearch(GsearchArgs),
    /// Evaluate a closed-form bound or growth formula.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct GraphArg {
    /// cyclepow:n:r, cliques:n:delta, multipartite:s:r, file:PATH, gadget:PATH,
    /// complete:n, cycle:n, path:n, bipartite:a:b, petersen or graph6:STRING.
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Vertex count, instead of a graph.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Trial index within the seed's stream.
    #[arg(long, default_value_t = 0)]
    trial: u64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// List dump, one `v: c1 c2 ...` line per vertex.
    #[arg(long)]
    lists: PathBuf,
    /// Include a minimal non-colourable witness.
    #[arg(long)]
    emit_witness: bool,
    #[arg(long)]
    exact_cap: Option<usize>,
}

#[derive(Args)]
struct TrialArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    common: TrialArgs,
    #[arg(long)]
    exact_cap: Option<usize>,
    /// Write every minimal witness with its validation report as JSON lines.
    #[arg(long)]
    emit_witness: Option<PathBuf>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    k: Option<usize>,
    /// Ascending palette sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    m_values: Vec<u32>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    exact_cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GadgetArgs {
    /// JSON gadget description.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ChoosabilityArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Test this list size; without it, report chromatic and choice numbers.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct GsearchArgs {
    /// Forbidden subgraph such as clique:3, cycle:4 or star:2; repeatable.
    #[arg(long)]
    forbidden: Vec<ForbiddenSpec>,
    #[arg(long)]
    k: Option<usize>,
    /// graph6 file; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Formula id; see --list.
    id: Option<String>,
    /// Parameter as name=value; repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, f64)>,
    /// List every formula id with its parameters.
    #[arg(long)]
    list: bool,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let value = value
        .parse::<f64>()
        .map_err(|e| format!("parameter {name}: {e}"))?;
    Ok((name.to_string(), value))
}

/// Values a `--config` file may supply.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    graph: Option<String>,
    n: Option<usize>,
    k: Option<usize>,
    m: Option<u32>,
    m_values: Option<Vec<u32>>,
    trials: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    exact_cap: Option<usize>,
    spec: Option<PathBuf>,
    forbidden: Option<Vec<ForbiddenSpec>>,
    input: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

type CliResult<T> = Result<T, Failure>;

fn required<T>(value: Option<T>, name: &str) -> CliResult<T> {
    value.ok_or_else(|| Failure::Usage(format!("missing --{name} (flag or config)")))
}

struct Ctx {
    config: Config,
    exec: Execution,
}

impl Ctx {
    fn graph(&self, arg: &GraphArg) -> CliResult<listcolour::experiment::LoadedGraph> {
        let spec: GraphSpec = required(
            arg.graph.clone().or_else(|| self.config.graph.clone()),
            "graph",
        )?
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
        Ok(spec.load()?)
    }

    fn solver(&self, cap: Option<usize>) -> SolverConfig {
        let mut cfg = SolverConfig::default();
        if let Some(cap) = cap.or(self.config.exact_cap) {
            cfg.exact_cap = cap;
        }
        cfg
    }

    fn mc_options(&self, a: &TrialArgs, trials_default: Option<u64>) -> CliResult<McOptions> {
        let mut opts = McOptions::new(
            required(a.k.or(self.config.k), "k")?,
            required(a.m.or(self.config.m), "m")?,
            required(a.trials.or(self.config.trials).or(trials_default), "trials")?,
            required(a.seed.or(self.config.seed), "seed")?,
        );
        opts.exec = self.exec;
        Ok(opts)
    }
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    emit(None, &(text + "\n"))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            // A closed pipe (e.g. `| head`) is not an error.
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
            r => r?,
        },
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let config: Config = match &cli.config {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?).map_err(Error::from)?,
        None => Config::default(),
    };
    let exec = Execution::from_workers(cli.workers.or(config.workers));
    let ctx = Ctx { config, exec };

    match cli.command {
        Command::Sample(a) => {
            let n = match (a.n.or(ctx.config.n), &a.graph.graph) {
                (Some(n), None) => n,
                _ => ctx.graph(&a.graph)?.graph.n(),
            };
            let k = required(a.k.or(ctx.config.k), "k")?;
            let m = required(a.m.or(ctx.config.m), "m")?;
            let seed = required(a.seed.or(ctx.config.seed), "seed")?;
            let l = sample_assignment(n, k, m, Seed::trial(seed, a.trial))?;
            emit(None, &l.to_dump())
        }
        Command::Solve(a) => {
            let loaded = ctx.graph(&a.graph)?;
            let l = ListAssignment::from_dump(&fs::read_to_string(&a.lists)?, None)?;
            let cfg = ctx.solver(a.exact_cap);
            let solution = solve(&loaded.graph, &l, &cfg)?;
            let profile = component_profile(&solution.dangerous);
            let colouring = solution.colouring.as_ref().map(|c| {
                c.as_slice()
                    .iter()
                    .map(|x| x.unwrap_or(0))
                    .collect::<Vec<u32>>()
            });
            let mut out = json!({
                "graph": loaded.label,
                "n": loaded.graph.n(),
                "colourable": solution.is_colourable(),
                "colouring": colouring,
                "component_profile": profile,
            });
            if a.emit_witness {
                if let Some(w) = witness_from_solution(&solution, &l, &cfg)? {
                    let report = validate_witness(&w, &l, l.k());
                    out["witness"] = serde_json::to_value(&w).map_err(Error::from)?;
                    out["witness_report"] = serde_json::to_value(&report).map_err(Error::from)?;
                }
            }
            print_json(&out)
        }
        Command::Components(a) => {
            let loaded = ctx.graph(&a.graph)?;
            let opts = ctx.mc_options(&a, Some(1))?;
            let report = component_experiment(&loaded.graph, &loaded.label, &opts)?;
            print_json(&report)
        }
        Command::Mc(a) => {
            let loaded = ctx.graph(&a.common.graph)?;
            let mut opts = ctx.mc_options(&a.common, None)?;
            opts.solver = ctx.solver(a.exact_cap);
            opts.witnesses = a.emit_witness.is_some();
            let result = mc_colourable(&loaded.graph, &loaded.label, &opts)?;
            if let Some(path) = &a.emit_witness {
                let mut text = String::new();
                for w in &result.witness_log {
                    text.push_str(&serde_json::to_string(w).map_err(Error::from)?);
                    text.push('\n');
                }
                fs::write(path, text)?;
            }
            emit(a.out.as_deref(), &to_csv(&[result.record]))
        }
        Command::Sweep(a) => {
            let loaded = ctx.graph(&a.graph)?;
            let m_values = if a.m_values.is_empty() {
                required(ctx.config.m_values.clone(), "m-values")?
            } else {
                a.m_values.clone()
            };
            let mut opts = McOptions::new(
                required(a.k.or(ctx.config.k), "k")?,
                0,
                required(a.trials.or(ctx.config.trials), "trials")?,
                required(a.seed.or(ctx.config.seed), "seed")?,
            );
            opts.exec = ctx.exec;
            opts.solver = ctx.solver(a.exact_cap);
            let result = sweep(&loaded.graph, &loaded.label, &m_values, &opts)?;
            emit(a.out.as_deref(), &result.to_csv())
        }
        Command::Gadget(a) => {
            let path = required(a.spec.or(ctx.config.spec.clone()), "spec")?;
            let inst = GadgetSpec::from_json(&fs::read_to_string(path)?)?.build()?;
            let report = gadget_experiment(
                &inst,
                required(a.m.or(ctx.config.m), "m")?,
                required(a.trials.or(ctx.config.trials), "trials")?,
                required(a.seed.or(ctx.config.seed), "seed")?,
                ctx.exec,
            )?;
            print_json(&report)
        }
        Command::Choosability(a) => {
            let loaded = ctx.graph(&a.graph)?;
            let cfg = ChoosabilityConfig::default();
            match a.k.or(ctx.config.k) {
                Some(k) => print_json(&is_k_choosable(&loaded.graph, k, &cfg)?),
                None => print_json(&json!({
                    "graph": loaded.label,
                    "n": loaded.graph.n(),
                    "chromatic_number": chromatic_number(&loaded.graph, &cfg)?,
                    "choice_number": choice_number(&loaded.graph, &cfg)?,
                })),
            }
        }
        Command::Gsearch(a) => {
            let forbidden = if a.forbidden.is_empty() {
                ctx.config.forbidden.clone().unwrap_or_default()
            } else {
                a.forbidden.clone()
            };
            let k = required(a.k.or(ctx.config.k), "k")?;
            let cfg = ChoosabilityConfig::default();
            let report = match a.input.or(ctx.config.input.clone()) {
                Some(path) => g_search(
                    &forbidden,
                    k,
                    BufReader::new(fs::File::open(path)?),
                    &cfg,
                    ctx.exec,
                )?,
                None => g_search(&forbidden, k, io::stdin().lock(), &cfg, ctx.exec)?,
            };
            print_json(&report)
        }
        Command::Bounds(a) => {
            if a.list {
                let text: String = all_formulas()
                    .map(|(id, names)| format!("{id} {}\n", names.join(" ")))
                    .collect();
                return emit(None, &text);
            }
            let id = required(a.id, "id")?;
            let params: BTreeMap<String, f64> = a.params.into_iter().collect();
            print_json(&evaluate(&id, &params)?)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Json(_) | Error::Io(_) => 2,
        e if e.is_cap_exceeded() => 3,
        _ => 1,
    }
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
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
