use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use comfort_core::bench::{bench, DEFAULT_SIZES};
use comfort_core::corpus::parse_corpus;
use comfort_core::criteria::{check_hc, TeamCandidate, TeamReport};
use comfort_core::error::{Error, Result};
use comfort_core::factor::ReductionFactor;
use comfort_core::generate::{generate, generate_connected, GeneratorSpec};
use comfort_core::graph::Graph;
use comfort_core::hicom::{
    direct_substitution, extend_to_max, hicom, two_hc_feasibility, verify_k_bound, HicomOptions,
    HicomResult, Phase,
};
use comfort_core::io::{digest, parse_edge_list, parse_team, to_dot, to_edge_list, to_team_file};
use comfort_core::metrics::{component_profiles, eccentricity_profile, EccentricityProfile};
use comfort_core::oracle::{
    bound_sweep, ratio_experiment, Oracle, OracleAnswer, TeamKind, DEFAULT_CAP,
};

const CAP_ENV: &str = "COMFORT_ORACLE_CAP";

#[derive(Parser)]
#[command(
    name = "comfort",
    version,
    about = "Comfortable and highly comfortable teams in networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eccentricities, radius, diameter, center, periphery and class
    Analyze {
        /// Edge-list file, or `-` for stdin
        graph: String,
    },
    /// Run HICOM
    Hicom(HicomArgs),
    /// Evaluate a team file against every team condition
    Verify {
        #[arg(long, default_value = "3/2")]
        l: String,
        graph: String,
        team: PathBuf,
    },
    /// Exhaustive search on small graphs
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Print a generated graph as an edge list
    Gen {
        /// Family: path, cycle, star, complete, tree or gnp
        kind: String,
        /// n (or the leaf count for star), then p for gnp
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Redraw G(n, p) until the sample is connected
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum, default_value_t = GenFormat::Edges)]
        format: GenFormat,
    },
    /// Direct substitution table for self-centered graphs
    Substitute {
        #[arg(long, default_value = "3/2")]
        l: String,
        diameters: Vec<u32>,
    },
    /// Time all-pairs BFS and HICOM on sparse random graphs
    Bench {
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Average degree c in p = c/n
        #[arg(long, default_value_t = 10.0)]
        degree: f64,
        #[arg(long, default_value = "3/2")]
        l: String,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct HicomArgs {
    #[arg(long, default_value = "3/2")]
    l: String,
    /// Central vertex label to start from
    #[arg(long)]
    start: Option<usize>,
    /// Also grow the team greedily to a maximal HC team
    #[arg(long)]
    max: bool,
    #[arg(long)]
    allow_large_l: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the team as a team file
    #[arg(long)]
    team_out: Option<PathBuf>,
    graph: String,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Minimum team of a kind
    Min {
        #[arg(long, default_value = "hc")]
        kind: String,
        #[arg(long, default_value = "3/2")]
        l: String,
        #[arg(long)]
        cap: Option<usize>,
        graph: String,
    },
    /// Maximum HC team
    Max {
        #[arg(long, default_value = "3/2")]
        l: String,
        #[arg(long)]
        cap: Option<usize>,
        graph: String,
    },
    /// Minimum connected dominating set
    Cds {
        #[arg(long)]
        cap: Option<usize>,
        graph: String,
    },
    /// HICOM size against the exact minimum over a corpus
    Ratio {
        #[arg(long, default_value = "3/2")]
        l: String,
        #[arg(long, default_value = DEFAULT_CORPUS_SMALL)]
        corpus: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Diameter bounds in terms of the exact k* over a corpus
    Bounds {
        #[arg(long, default_value = "3/2")]
        l: String,
        #[arg(long, default_value = DEFAULT_CORPUS_SMALL)]
        corpus: String,
        #[arg(long)]
        cap: Option<usize>,
    },
}

const DEFAULT_CORPUS_SMALL: &str = "trees:4-9;cycles:7-12";

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    Edges,
    Dot,
}

/// What a command produced: its stdout text and whether it found nothing.
struct Output {
    text: String,
    infeasible: bool,
}

impl Output {
    fn json(v: &impl Serialize) -> Self {
        Output {
            text: pretty(v),
            infeasible: false,
        }
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("outputs serialise");
    s.push('\n');
    s
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_graph(path: &str) -> Result<Graph> {
    parse_edge_list(&read_input(path)?)
}

fn oracle_for(cap: Option<usize>) -> Result<Oracle> {
    let cap = match cap {
        Some(c) => c,
        None => match std::env::var(CAP_ENV) {
            Ok(v) => v.parse().map_err(|_| {
                Error::InvalidParameter(format!("{CAP_ENV} = `{v}` is not a number"))
            })?,
            Err(_) => DEFAULT_CAP,
        },
    };
    Ok(Oracle::new(cap))
}

fn labels(g: &Graph, vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|&v| g.label(v)).collect()
}

fn relabel_report(g: &Graph, r: &TeamReport) -> TeamReport {
    let mut r = r.clone();
    r.members = labels(g, &r.members);
    r.violators = labels(g, &r.violators);
    r
}

fn relabel_profile(g: &Graph, p: &EccentricityProfile) -> EccentricityProfile {
    let mut p = p.clone();
    p.center = labels(g, &p.center);
    p.periphery = labels(g, &p.periphery);
    p
}

fn relabel_phase(g: &Graph, p: &Phase) -> Phase {
    match p.clone() {
        Phase::Start { vertex } => Phase::Start {
            vertex: g.label(vertex),
        },
        Phase::Ball {
            radius,
            added,
            diameter,
        } => Phase::Ball {
            radius,
            added: labels(g, &added),
            diameter,
        },
        Phase::Extend {
            shell,
            vertex,
            diameter,
        } => Phase::Extend {
            shell,
            vertex: g.label(vertex),
            diameter,
        },
        Phase::Repair { removed, k } => Phase::Repair {
            removed: g.label(removed),
            k,
        },
        Phase::DominatingClique { members } => Phase::DominatingClique {
            members: labels(g, &members),
        },
        other => other,
    }
}

fn error_value(e: &Error) -> Value {
    let mut v = json!({ "code": e.code(), "message": e.to_string() });
    if let Error::RepairFailed { stuck } = e {
        v["stuck"] = json!(stuck);
    }
    v
}

fn cmd_analyze(path: &str) -> Result<Output> {
    let g = load_graph(path)?;
    if g.is_connected() {
        let p = eccentricity_profile(&g)?;
        return Ok(Output::json(&json!({
            "n": g.n(),
            "m": g.m(),
            "digest": digest(&g),
            "connected": true,
            "profile": relabel_profile(&g, &p),
            "two_hc_feasibility": two_hc_feasibility(&g)?,
        })));
    }
    let parts: Vec<Value> = component_profiles(&g)?
        .into_iter()
        .map(|(comp, p)| json!({ "vertices": labels(&g, &comp), "profile": relabel_profile(&g, &p) }))
        .collect();
    Ok(Output::json(&json!({
        "n": g.n(),
        "m": g.m(),
        "digest": digest(&g),
        "connected": false,
        "components": parts,
    })))
}

fn hicom_value(g: &Graph, r: &HicomResult, max: Option<&TeamCandidate>) -> Result<Value> {
    let mut v = json!({
        "team": labels(g, r.team.members()),
        "l": r.l,
        "d1": r.d1,
        "achieved_diameter": r.achieved_diameter,
        "k": r.k,
        "x": r.x,
        "start": g.label(r.start),
        "fallback": r.fallback,
        "verdict": r.report.verdict,
        "report": relabel_report(g, &r.report),
        "bounds": if r.fallback { Vec::new() } else { verify_k_bound(r, g)? },
        "trace": r.phases.iter().map(|p| relabel_phase(g, p)).collect::<Vec<_>>(),
        "warnings": r.warnings,
    });
    if let Some(t) = max {
        v["max_team"] = json!(labels(g, t.members()));
    }
    Ok(v)
}

fn cmd_hicom(a: &HicomArgs) -> Result<Output> {
    let g = load_graph(&a.graph)?;
    let l: ReductionFactor = a.l.parse()?;
    let start = match a.start {
        Some(label) if label < g.label_base() || label - g.label_base() >= g.n() => {
            return Err(Error::VertexOutOfRange {
                vertex: label,
                n: g.n(),
            })
        }
        Some(label) => Some(label - g.label_base()),
        None => None,
    };
    let opts = HicomOptions {
        start,
        allow_large_l: a.allow_large_l,
    };
    if !g.is_connected() {
        if start.is_some() {
            return Err(Error::InvalidParameter(
                "--start needs a connected graph".into(),
            ));
        }
        return hicom_per_component(&g, l, opts);
    }
    let run = hicom(&g, l, opts)?;
    let max = if a.max {
        Some(extend_to_max(&g, &run, l)?)
    } else {
        None
    };
    let team = max.as_ref().unwrap_or(&run.team);
    if let Some(path) = &a.team_out {
        std::fs::write(path, to_team_file(&g, team))?;
    }
    match a.format {
        Format::Dot => Ok(Output {
            text: to_dot(&g, Some(team)),
            infeasible: false,
        }),
        Format::Json => Ok(Output::json(&hicom_value(&g, &run, max.as_ref())?)),
    }
}

fn hicom_per_component(g: &Graph, l: ReductionFactor, opts: HicomOptions) -> Result<Output> {
    let mut infeasible = false;
    let mut parts = Vec::new();
    for comp in g.connected_components() {
        let sub = g.induced_subgraph(&comp)?;
        let local = sub.graph.clone().with_label_base(0);
        let mut entry = json!({ "vertices": labels(g, &comp) });
        match hicom(&local, l, opts) {
            Ok(r) => {
                let mut v = hicom_value(&local, &r, None)?;
                let host = |vs: &[usize]| {
                    labels(g, &vs.iter().map(|&i| sub.to_host[i]).collect::<Vec<_>>())
                };
                v["team"] = json!(host(r.team.members()));
                v["start"] = json!(host(&[r.start])[0]);
                entry["result"] = v;
            }
            Err(e) if e.exit_code() == 2 || matches!(e, Error::DegenerateParams { .. }) => {
                infeasible = true;
                entry["error"] = error_value(&e);
            }
            Err(e) => return Err(e),
        }
        parts.push(entry);
    }
    Ok(Output {
        text: pretty(&json!({ "connected": false, "components": parts })),
        infeasible,
    })
}

fn cmd_verify(l: &str, graph: &str, team: &PathBuf) -> Result<Output> {
    let g = load_graph(graph)?;
    let l: ReductionFactor = l.parse()?;
    let team = parse_team(&std::fs::read_to_string(team)?, &g)?;
    let report = check_hc(&g, &team, l)?;
    Ok(Output::json(&relabel_report(&g, &report)))
}

fn answer_output(g: &Graph, kind: &str, a: &OracleAnswer) -> Output {
    let v = json!({
        "kind": kind,
        "status": if a.is_none() { "NONE" } else { "FOUND" },
        "optimum": a.optimum,
        "witness": a.witness.as_ref().map(|w| labels(g, w.members())),
        "secondary_optimum": a.secondary_optimum,
        "enumerated": a.enumerated,
    });
    Output {
        text: pretty(&v),
        infeasible: a.is_none(),
    }
}

fn cmd_oracle(c: &OracleCommand) -> Result<Output> {
    match c {
        OracleCommand::Min {
            kind,
            l,
            cap,
            graph,
        } => {
            let g = load_graph(graph)?;
            let k: TeamKind = kind.parse()?;
            let a = oracle_for(*cap)?.min_team(&g, k, l.parse()?)?;
            Ok(answer_output(&g, kind, &a))
        }
        OracleCommand::Max { l, cap, graph } => {
            let g = load_graph(graph)?;
            let a = oracle_for(*cap)?.max_team(&g, l.parse()?)?;
            Ok(answer_output(&g, "hc", &a))
        }
        OracleCommand::Cds { cap, graph } => {
            let g = load_graph(graph)?;
            let a = oracle_for(*cap)?.min_cds(&g)?;
            Ok(answer_output(&g, "cds", &a))
        }
        OracleCommand::Ratio { l, corpus, cap } => {
            let entries = parse_corpus(corpus)?;
            Ok(Output::json(&ratio_experiment(
                &entries,
                l.parse()?,
                oracle_for(*cap)?,
            )?))
        }
        OracleCommand::Bounds { l, corpus, cap } => {
            let entries = parse_corpus(corpus)?;
            Ok(Output::json(&bound_sweep(
                &entries,
                l.parse()?,
                oracle_for(*cap)?,
            )?))
        }
    }
}

fn cmd_gen(
    kind: &str,
    params: &[String],
    seed: u64,
    connected: bool,
    format: GenFormat,
) -> Result<Output> {
    let spec: GeneratorSpec = std::iter::once(kind.to_string())
        .chain(params.iter().cloned())
        .collect::<Vec<_>>()
        .join(" ")
        .parse()?;
    let out = if connected {
        generate_connected(spec, seed, 1000)?
    } else {
        generate(spec, seed)?
    };
    let text = match format {
        GenFormat::Dot => to_dot(&out.graph, None),
        GenFormat::Edges => format!(
            "# {spec} seed={} connected={}\n{}",
            out.seed,
            out.connected,
            to_edge_list(&out.graph)
        ),
    };
    Ok(Output {
        text,
        infeasible: false,
    })
}

fn cmd_substitute(l: &str, diameters: &[u32]) -> Result<Output> {
    let l: ReductionFactor = l.parse()?;
    let diameters = if diameters.is_empty() {
        vec![500, 100, 99, 81, 50, 34, 23, 20]
    } else {
        diameters.to_vec()
    };
    let rows: Vec<_> = diameters
        .iter()
        .map(|&d| direct_substitution(d, d, l))
        .collect();
    Ok(Output::json(&json!({ "l": l, "rows": rows })))
}

fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Analyze { graph } => cmd_analyze(&graph),
        Command::Hicom(a) => cmd_hicom(&a),
        Command::Verify { l, graph, team } => cmd_verify(&l, &graph, &team),
        Command::Oracle { command } => cmd_oracle(&command),
        Command::Gen {
            kind,
            params,
            seed,
            connected,
            format,
        } => cmd_gen(&kind, &params, seed, connected, format),
        Command::Substitute { l, diameters } => cmd_substitute(&l, &diameters),
        Command::Bench {
            sizes,
            degree,
            l,
            repeats,
            seed,
        } => {
            let sizes = sizes.unwrap_or_else(|| DEFAULT_SIZES.to_vec());
            Ok(Output::json(&bench(
                &sizes,
                degree,
                l.parse()?,
                repeats,
                seed,
            )?))
        }
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
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if out.infeasible { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::to_string(&json!({ "error": error_value(&e) })).unwrap()
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
