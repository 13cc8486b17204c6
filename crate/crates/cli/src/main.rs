use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use outerdom::bounds::{bounds_report, check_li_counterexample, essential_pair_count};
use outerdom::domination::{gamma_exact_bb_with_limit, gamma_mop_dp};
use outerdom::dot::{ham_to_dot, mop_to_dot};
use outerdom::generators::{enumerate_hts, enumerate_mops, named_graph, random_ht, random_mop, NamedGraph, NAMES};
use outerdom::hamiltonian::{dominate_triangulation_with, find_good_cycle, PipelineConfig, PipelineError};
use outerdom::io::{parse_graph, parse_jsonl, GraphInput, HamJson};
use outerdom::reductions::{dominate_mop, verify_trace, EngineError, ReductionTrace};
use outerdom::suites::{default_corpus, run_suite, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "outerdom", version, about = "Domination in maximal outerplane graphs and Hamiltonian triangulations")]
struct Cli {
    /// Input file (`-` or absent for stdin)
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for corpus commands
    #[arg(long, global = true, env = "OUTERDOM_WORKERS")]
    workers: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Vertex cap for the branch-and-bound solver
    #[arg(long = "limit-bb", global = true, default_value_t = 32)]
    limit_bb: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Mop,
    HamTriangulation,
}

#[derive(Subcommand)]
enum Command {
    /// Exact domination number of a graph
    Gamma,
    /// Degree-2 structure and bound evaluation of a MOP
    Bounds,
    /// Constructive dominating set of a MOP with its reduction trace
    Dominate,
    /// Replay and check a reduction trace
    VerifyTrace,
    /// Dominating set of a Hamiltonian triangulation
    Pipeline,
    /// Emit a corpus, one graph per line
    Enumerate {
        #[arg(long, value_enum, default_value_t = Kind::Mop)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Random instances instead of the exhaustive list
        #[arg(long)]
        count: Option<usize>,
    },
    /// Run a verification suite over a corpus
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
    },
    /// Find MOPs with γ > (n+k)/4
    SearchCounterexamples {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
    },
    /// Print a named example graph
    Named { name: String },
    /// Graphviz diagram of a graph, with a minimum dominating set filled
    ExportDot {
        /// Leave the dominating set out of the diagram
        #[arg(long)]
        no_set: bool,
    },
}

/// Result object plus exit status (0 clean, 1 violation found).
struct Outcome {
    body: Body,
    violation: bool,
}

enum Body {
    Json(Value),
    Lines(Vec<Value>),
    Text(String),
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome {
            body: Body::Json(v),
            violation: false,
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn read_graph(cli: &Cli) -> Result<GraphInput> {
    Ok(parse_graph(&read_input(&cli.input)?)?)
}

fn table(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, val) in map {
                let shown = match val {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k:<width$}  {shown}\n"));
            }
        }
        other => {
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
    out
}

fn render(body: &Body, format: Format) -> String {
    match body {
        Body::Text(t) => t.clone(),
        Body::Json(v) => match format {
            Format::Table => table(v),
            _ => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        },
        Body::Lines(vs) => vs
            .iter()
            .map(|v| match format {
                Format::Table => table(v),
                _ => format!("{}\n", serde_json::to_string(v).expect("serializable")),
            })
            .collect(),
    }
}

fn named_json(g: NamedGraph) -> Value {
    match g {
        NamedGraph::Mop(m) => GraphInput::Mop(m).to_json(),
        NamedGraph::Ham(t) => GraphInput::Ham(t).to_json(),
    }
}

fn gamma(cli: &Cli) -> Result<Outcome> {
    let g = read_graph(cli)?;
    let (set, method) = match &g {
        GraphInput::Mop(m) => (gamma_mop_dp(m), "dp"),
        other => (gamma_exact_bb_with_limit(&other.simple_graph(), cli.limit_bb)?, "branch-and-bound"),
    };
    Ok(Outcome::ok(json!({
        "n": g.simple_graph().n(),
        "method": method,
        "vertices": set.vertices,
        "size": set.size,
    })))
}

fn bounds(cli: &Cli) -> Result<Outcome> {
    let g = read_graph(cli)?.into_mop()?;
    Ok(Outcome::ok(serde_json::to_value(bounds_report(&g, true))?))
}

fn dominate(cli: &Cli) -> Result<Outcome> {
    let g = read_graph(cli)?.into_mop()?;
    match dominate_mop(&g) {
        Ok(trace) => {
            let violation = !trace.anomalies.is_empty();
            Ok(Outcome {
                body: Body::Json(serde_json::to_value(&trace)?),
                violation,
            })
        }
        Err(EngineError::BoundViolated { size, bound, trace }) => Ok(Outcome {
            body: Body::Json(json!({
                "error": "bound-violated",
                "size": size,
                "bound": bound,
                "trace": serde_json::to_value(&*trace)?,
            })),
            violation: true,
        }),
        Err(e) => Err(e.into()),
    }
}

fn verify_trace_cmd(cli: &Cli) -> Result<Outcome> {
    let trace: ReductionTrace = serde_json::from_str(&read_input(&cli.input)?).context("parsing trace")?;
    Ok(match verify_trace(&trace) {
        Ok(()) => Outcome::ok(json!({"valid": true, "steps": trace.steps.len(), "size": trace.set.size, "bound": trace.bound})),
        Err(e) => Outcome {
            body: Body::Json(json!({"valid": false, "reason": e.to_string()})),
            violation: true,
        },
    })
}

fn pipeline(cli: &Cli) -> Result<Outcome> {
    let t = match read_graph(cli)? {
        GraphInput::Graph { graph, cycle: None } => find_good_cycle(&graph)?.0,
        other => other.into_ham()?,
    };
    let config = PipelineConfig {
        bb_limit: cli.limit_bb.max(64),
    };
    match dominate_triangulation_with(&t, config) {
        Ok((set, report)) => Ok(Outcome::ok(json!({
            "triangulation": serde_json::to_value(HamJson::from(t))?,
            "set": set,
            "report": report,
        }))),
        Err(PipelineError::BoundViolated { report, .. }) => Ok(Outcome {
            body: Body::Json(json!({"error": "bound-violated", "report": *report})),
            violation: true,
        }),
        Err(e) => Err(e.into()),
    }
}

fn enumerate(cli: &Cli, kind: Kind, n: usize, count: Option<usize>) -> Result<Outcome> {
    let lines: Vec<Value> = match (kind, count) {
        (Kind::Mop, None) => enumerate_mops(n)?.map(|g| GraphInput::Mop(g).to_json()).collect(),
        (Kind::HamTriangulation, None) => enumerate_hts(n)?.map(|t| GraphInput::Ham(t).to_json()).collect(),
        (Kind::Mop, Some(c)) => {
            if n < 3 {
                bail!("n must be at least 3");
            }
            (0..c as u64).map(|i| GraphInput::Mop(random_mop(n, cli.seed + i)).to_json()).collect()
        }
        (Kind::HamTriangulation, Some(c)) => {
            if n < 4 {
                bail!("n must be at least 4");
            }
            (0..c as u64).map(|i| GraphInput::Ham(random_ht(n, cli.seed + i)).to_json()).collect()
        }
    };
    Ok(Outcome {
        body: Body::Lines(lines),
        violation: false,
    })
}

fn corpus_or(cli: &Cli, fallback: impl FnOnce() -> Result<Vec<GraphInput>>) -> Result<Vec<GraphInput>> {
    match &cli.input {
        Some(_) => Ok(parse_jsonl(&read_input(&cli.input)?)?),
        None => fallback(),
    }
}

fn verify(cli: &Cli, suite: &str, n_max: Option<usize>) -> Result<Outcome> {
    let suite: Suite = suite.parse()?;
    let corpus = corpus_or(cli, || Ok(default_corpus(suite, n_max, cli.seed)?))?;
    let config = SuiteConfig {
        bb_limit: cli.limit_bb.max(SuiteConfig::default().bb_limit),
    };
    let report = run_suite(suite, &corpus, &config);
    Ok(Outcome {
        violation: !report.passed,
        body: Body::Json(serde_json::to_value(&report)?),
    })
}

fn search(cli: &Cli, n: Option<usize>, n_max: Option<usize>) -> Result<Outcome> {
    let corpus = corpus_or(cli, || {
        let (lo, hi) = match (n, n_max) {
            (Some(n), _) => (n, n),
            (None, Some(m)) => (4, m),
            (None, None) => bail!("give --n, --n-max or --in"),
        };
        let mut out = Vec::new();
        for n in lo..=hi {
            out.extend(enumerate_mops(n)?.map(GraphInput::Mop));
        }
        Ok(out)
    })?;
    let mut found = Vec::new();
    for g in &corpus {
        if let GraphInput::Mop(m) = g {
            if check_li_counterexample(m) {
                found.push(json!({
                    "graph": g.to_json(),
                    "n": m.n(),
                    "k": essential_pair_count(m),
                    "gamma": gamma_mop_dp(m).size,
                }));
            }
        }
    }
    Ok(Outcome {
        violation: !found.is_empty(),
        body: Body::Json(json!({"checked": corpus.len(), "found": found.len(), "counterexamples": found})),
    })
}

fn named(name: &str) -> Result<Outcome> {
    let g = named_graph(name).map_err(|e| anyhow!("{e}; known names: {}", NAMES.join(", ")))?;
    Ok(Outcome {
        body: Body::Lines(vec![named_json(g)]),
        violation: false,
    })
}

fn export_dot(cli: &Cli, no_set: bool) -> Result<Outcome> {
    let g = read_graph(cli)?;
    let text = match g {
        GraphInput::Mop(m) => {
            let set = if no_set { Vec::new() } else { gamma_mop_dp(&m).vertices };
            mop_to_dot(&m, &set)
        }
        other => {
            let t = match other {
                GraphInput::Graph { graph, cycle: None } => find_good_cycle(&graph)?.0,
                x => x.into_ham()?,
            };
            let set = if no_set {
                Vec::new()
            } else {
                gamma_exact_bb_with_limit(&t.full_graph(), cli.limit_bb)?.vertices
            };
            ham_to_dot(&t, &set)
        }
    };
    Ok(Outcome {
        body: Body::Text(text),
        violation: false,
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .map_err(|e| anyhow!("configuring workers: {e}"))?;
    }
    match &cli.command {
        Command::Gamma => gamma(cli),
        Command::Bounds => bounds(cli),
        Command::Dominate => dominate(cli),
        Command::VerifyTrace => verify_trace_cmd(cli),
        Command::Pipeline => pipeline(cli),
        Command::Enumerate { kind, n, count } => enumerate(cli, *kind, *n, *count),
        Command::Verify { suite, n_max } => verify(cli, suite, *n_max),
        Command::SearchCounterexamples { n, n_max } => search(cli, *n, *n_max),
        Command::Named { name } => named(name),
        Command::ExportDot { no_set } => export_dot(cli, *no_set),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| {
        emit(&cli, &render(&outcome.body, cli.format))?;
        Ok(outcome.violation)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            let msg = format!("{e:#}");
            println!("{}", json!({"error": msg}));
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
