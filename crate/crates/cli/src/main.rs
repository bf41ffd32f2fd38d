// SPDX-License-Identifier: MIT
//! `causal-persuade`: discovery and persuasion planning over graph JSON.
//!
//! Exit codes: 0 success, 2 bad input, 3 infeasible plan, 4 budget exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use causal_persuasion::io::{graph_to_dot, graph_to_json, parse_graph, pattern_to_dot, pattern_to_json};
use causal_persuasion::planner::DEFAULT_BUDGET;
use causal_persuasion::{
    build_fixture, cause_catalog, d_separates, enumerate_consistent_dags_with, ic_algorithm, persuade, plan_debunk,
    plan_dissuade, profile, Dag, EnumBudget, Error, FixtureId, IndependenceOracle, Pattern, Plan, PlanConfig,
    ReceiverKind, ReceiverSpec, Verdict,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "causal-persuade", version, about = "Causal discovery and persuasion planning over DAGs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,
    /// Largest disclosure and enumeration scope [default: 12].
    #[arg(long, env = "CP_BUDGET", global = true)]
    budget: Option<usize>,
    /// Only propose models without defective links.
    #[arg(long, global = true)]
    truthful_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Dot,
    Human,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Receiver {
    Naive,
    Sophisticated,
}

impl From<Receiver> for ReceiverKind {
    fn from(r: Receiver) -> Self {
        match r {
            Receiver::Naive => ReceiverKind::Naive,
            Receiver::Sophisticated => ReceiverKind::Sophisticated,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whether GIVEN d-separates A and B; prints `true` or `false`.
    Dsep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
    },
    /// Discovery pattern of the data seen through SCOPE.
    Cpdag {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        scope: Option<Vec<String>>,
    },
    /// Every DAG consistent with the data seen through SCOPE, one per line.
    Enumerate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        scope: Option<Vec<String>>,
    },
    /// Simple/rich profile, plus cause sets for a pair.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        pair: Option<Vec<String>>,
    },
    /// Plan a disclosure persuading the receiver that X causes Y.
    Persuade {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum)]
        receiver: Receiver,
        #[arg(long)]
        prior: Option<PathBuf>,
    },
    /// Plan a disclosure debunking the prior link A -> B.
    Debunk {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        prior: PathBuf,
        #[arg(long, value_delimiter = ',')]
        link: Vec<String>,
    },
    /// Plan a disclosure ruling out any causal link between X and Y.
    Dissuade {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        prior: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum)]
        receiver: Receiver,
    },
    /// List fixtures or emit one as graph JSON.
    Fixtures {
        #[arg(long, conflicts_with = "emit")]
        list: bool,
        #[arg(long, required_unless_present = "list")]
        emit: Option<String>,
        #[arg(long, requires = "emit")]
        n: Option<usize>,
    },
}

/// What a command produced, and how it should exit.
enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(String, ExitCode), Failure>;

fn read_graph(path: &Path) -> Result<Dag, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn oracle(g: Dag, scope: Option<Vec<String>>) -> Result<IndependenceOracle, Failure> {
    Ok(match scope {
        Some(s) => IndependenceOracle::with_scope(g, s)?,
        None => IndependenceOracle::new(g),
    })
}

fn two(values: &[String], flag: &str) -> Result<(String, String), Failure> {
    match values {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(Failure::Input(format!("--{flag} takes exactly two comma-separated names"))),
    }
}

fn ok(text: String) -> Outcome {
    Ok((text, ExitCode::SUCCESS))
}

fn render_pattern(p: &Pattern, out: Output) -> String {
    match out {
        Output::Json => format!("{}\n", pattern_to_json(p)),
        Output::Dot => pattern_to_dot(p),
        Output::Human => {
            let list = |v: Vec<(&str, &str)>, arrow: &str| {
                if v.is_empty() {
                    "none".to_string()
                } else {
                    v.iter().map(|(a, b)| format!("{a} {arrow} {b}")).collect::<Vec<_>>().join(", ")
                }
            };
            format!(
                "directed: {}\nundirected: {}\nconflicts: {}\n",
                list(p.directed_names(), "->"),
                list(p.undirected_names(), "-"),
                list(p.conflict_names(), "<->"),
            )
        }
    }
}

fn render_graph(g: &Dag, out: Output) -> String {
    match out {
        Output::Json => format!("{}\n", graph_to_json(g)),
        Output::Dot => graph_to_dot(g),
        Output::Human => format!("{g}\n"),
    }
}

fn render_plan(plan: &Plan, out: Output) -> String {
    match out {
        Output::Json => format!("{}\n", serde_json::to_string_pretty(plan).expect("plan serialises")),
        Output::Dot => match &plan.proposal {
            Some(g) => graph_to_dot(g),
            None => "digraph {\n}\n".to_string(),
        },
        Output::Human => human_plan(plan),
    }
}

fn human_plan(plan: &Plan) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {}", plan.verdict);
    let _ = writeln!(
        s,
        "disclosure: {} ({} new)",
        plan.disclosure_names().join(", "),
        plan.new_variable_count
    );
    if let Some(p) = &plan.proposal {
        let edges: Vec<String> = p.edge_names().iter().map(|(a, b)| format!("{a} -> {b}")).collect();
        let _ = writeln!(s, "proposal: {}", if edges.is_empty() { "no links".into() } else { edges.join(", ") });
    }
    if plan.proposal_consistent == Some(false) {
        let _ = writeln!(s, "no consistent model exists on this disclosure");
    }
    for (k, step) in plan.trace.iter().enumerate() {
        let _ = writeln!(s, "  {}. {step}", k + 1);
    }
    if let Some(r) = &plan.replacement {
        let _ = writeln!(s, "with a consistent proposal:");
        for line in human_plan(r).lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    s
}

fn plan_exit(plan: &Plan) -> ExitCode {
    match plan.verdict {
        Verdict::Accepted => ExitCode::SUCCESS,
        Verdict::Rejected | Verdict::Infeasible => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Outcome {
    let out = cli.global.output;
    let cfg = PlanConfig {
        budget: cli.global.budget.unwrap_or(DEFAULT_BUDGET),
        truthful_only: cli.global.truthful_only,
    };
    cfg.validate()?;
    let plan_result = |plan: Plan| Ok((render_plan(&plan, out), plan_exit(&plan)));
    match cli.command {
        Command::Dsep { graph, a, b, given } => {
            let g = read_graph(&graph)?;
            ok(format!("{}\n", d_separates(&g, &a, &b, &given)?))
        }
        Command::Cpdag { graph, scope } => {
            let o = oracle(read_graph(&graph)?, scope)?;
            if o.len() > cfg.budget {
                return Err(Error::BudgetExceeded { budget: cfg.budget }.into());
            }
            ok(render_pattern(&ic_algorithm(&o), out))
        }
        Command::Enumerate { graph, scope } => {
            let o = oracle(read_graph(&graph)?, scope)?;
            let budget = EnumBudget { max_scope: cfg.budget, ..EnumBudget::default() };
            let models = enumerate_consistent_dags_with(&o, budget)?;
            ok(models.iter().map(|m| render_graph(m, out)).collect())
        }
        Command::Analyze { graph, pair } => {
            let g = read_graph(&graph)?;
            let prof = profile(&g)?;
            let causes = match pair {
                Some(p) => {
                    let (x, y) = two(&p, "pair")?;
                    Some(cause_catalog(&g, &x, &y)?)
                }
                None => None,
            };
            let value = serde_json::json!({ "profile": prof, "causes": causes });
            ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("analysis serialises")))
        }
        Command::Persuade { graph, x, y, receiver, prior } => {
            let g = read_graph(&graph)?;
            let spec = match prior {
                Some(p) => ReceiverSpec::with_prior(receiver.into(), read_graph(&p)?),
                None => ReceiverSpec::blank(receiver.into()),
            };
            plan_result(persuade(&g, &spec, &x, &y, &cfg)?)
        }
        Command::Debunk { graph, prior, link } => {
            let (a, b) = two(&link, "link")?;
            let g = read_graph(&graph)?;
            plan_result(plan_debunk(&g, &read_graph(&prior)?, (&a, &b), &cfg)?)
        }
        Command::Dissuade { graph, prior, x, y, receiver } => {
            let g = read_graph(&graph)?;
            plan_result(plan_dissuade(&g, &read_graph(&prior)?, &x, &y, receiver.into(), &cfg)?)
        }
        Command::Fixtures { list, emit, n } => {
            if list {
                return ok(FixtureId::names().iter().map(|s| format!("{s}\n")).collect());
            }
            let name = emit.expect("clap requires --emit without --list");
            let id = FixtureId::parse(&name, n)?;
            ok(render_graph(&build_fixture(id), out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
