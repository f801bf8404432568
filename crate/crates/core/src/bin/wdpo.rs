use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use wdpo::attr::AttrGraph;
use wdpo::hex::{cmd_hexca, HexGridSpec};
use wdpo::io::{load_host, load_system, save_graph, SystemSpec};
use wdpo::rewriting::{apply_direct, find_matches, pct, Match};
use wdpo::run::{all_matches, cmd_run, Mode};
use wdpo::Error;

#[derive(Parser)]
#[command(name = "wdpo", version, about = "Weak double-pushout graph rewriting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// System file with rules (and usually a host).
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Graph file (or system file) whose graph replaces the system's host.
    #[arg(long)]
    host: Option<PathBuf>,
    /// Where to write the resulting graph.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write a JSON report.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List every match of every rule in the host.
    Match {
        #[command(flatten)]
        common: Common,
    },
    /// Apply one rule at one of its matches.
    Apply {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rule: String,
        /// Index among the matches of that rule.
        #[arg(long = "match")]
        index: usize,
    },
    /// Apply several matches as one parallel coherent transformation.
    Pct {
        #[command(flatten)]
        common: Common,
        /// Comma-separated indices into the list printed by `match`.
        #[arg(long, value_delimiter = ',', conflicts_with = "all")]
        matches: Option<Vec<usize>>,
        #[arg(long)]
        all: bool,
    },
    /// Iterate the system.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        steps: usize,
        /// `pct` or `seq`.
        #[arg(long, default_value = "pct")]
        mode: String,
    },
    /// Run the Hex-Ulam-Warburton automaton from live seed cells.
    Hexca {
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        generations: u32,
        /// Live seed cell `q,r`; repeatable. Defaults to the origin.
        #[arg(long = "seed", value_parser = parse_cell, allow_hyphen_values = true)]
        seeds: Vec<(i32, i32)>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write the host graph in Graphviz format.
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dot: PathBuf,
    },
}

fn parse_cell(s: &str) -> Result<(i32, i32), String> {
    let (q, r) = s.split_once(',').ok_or("expected q,r")?;
    let q = q
        .trim()
        .parse()
        .map_err(|_| format!("bad coordinate `{q}`"))?;
    let r = r
        .trim()
        .parse()
        .map_err(|_| format!("bad coordinate `{r}`"))?;
    Ok((q, r))
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Dangling { .. } | Error::Identification { .. } | Error::UnreadLabels { .. } => 3,
        Error::Incoherent { .. } | Error::NotSequential { .. } => 4,
        _ => 2,
    }
}

fn system(common: &Common) -> Result<(SystemSpec, Arc<AttrGraph>), Failure> {
    let path = common
        .rules
        .as_ref()
        .ok_or_else(|| Failure::Usage("--rules is required".into()))?;
    let system = load_system(path)?;
    let host = match &common.host {
        Some(h) => load_host(h)?,
        None => system.require_host()?.clone(),
    };
    Ok((system, host))
}

fn write_report(common_report: &Option<PathBuf>, value: serde_json::Value) -> Result<(), Failure> {
    if let Some(path) = common_report {
        let text = serde_json::to_string_pretty(&value).expect("reports serialize");
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn finish(out: &Option<PathBuf>, g: &AttrGraph) -> Result<(), Failure> {
    println!("{g}");
    if let Some(path) = out {
        save_graph(g, path)?;
    }
    Ok(())
}

fn describe(m: &Match) -> serde_json::Value {
    let assignment: serde_json::Map<String, serde_json::Value> = m
        .assignment()
        .into_iter()
        .map(|(k, v)| (k, json!(v.to_string())))
        .collect();
    json!({
        "rule": m.rule().name(),
        "nodes": m.sigma().node_map(),
        "edges": m.sigma().edge_map(),
        "assignment": assignment,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Match { common } => {
            let (system, host) = system(&common)?;
            let matches = all_matches(&system.rules, &host)?;
            let mut listed = Vec::new();
            for (i, m) in matches.iter().enumerate() {
                let d = describe(m);
                println!(
                    "{i}\t{}\t{}\t{}",
                    m.rule().name(),
                    d["nodes"],
                    d["assignment"]
                );
                listed.push(d);
            }
            write_report(&common.report, json!({ "matches": listed }))
        }
        Command::Apply {
            common,
            rule,
            index,
        } => {
            let (system, host) = system(&common)?;
            let rule = system
                .rule(&rule)
                .ok_or_else(|| Failure::Usage(format!("no rule named `{rule}`")))?;
            let matches = find_matches(rule, &host)?;
            let m = matches.get(index).ok_or_else(|| {
                Failure::Usage(format!(
                    "rule `{}` has {} matches, no index {index}",
                    rule.name(),
                    matches.len()
                ))
            })?;
            let t = apply_direct(m)?;
            write_report(
                &common.report,
                json!({
                    "match": describe(m),
                    "context_elements": t.context.element_count(),
                    "result_elements": t.result.element_count(),
                }),
            )?;
            finish(&common.out, &t.result)
        }
        Command::Pct {
            common,
            matches,
            all,
        } => {
            let (system, host) = system(&common)?;
            let found = all_matches(&system.rules, &host)?;
            let chosen: Vec<Match> = match (matches, all) {
                (Some(idx), _) => idx
                    .iter()
                    .map(|&i| {
                        found.get(i).cloned().ok_or_else(|| {
                            Failure::Usage(format!("only {} matches, no index {i}", found.len()))
                        })
                    })
                    .collect::<Result<_, _>>()?,
                (None, _) => found,
            };
            if chosen.is_empty() {
                return Err(Failure::Usage("no matches to apply".into()));
            }
            let gammas = chosen
                .iter()
                .map(apply_direct)
                .collect::<Result<Vec<_>, _>>()?;
            let step = pct(&gammas)?;
            write_report(
                &common.report,
                json!({
                    "transformations": gammas.len(),
                    "context_elements": step.common_context.element_count(),
                    "result_elements": step.result.element_count(),
                }),
            )?;
            finish(&common.out, &step.result)
        }
        Command::Run {
            common,
            steps,
            mode,
        } => {
            let mode: Mode = mode
                .parse()
                .map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let (system, host) = system(&common)?;
            let outcome = cmd_run(&system.rules, &host, steps, mode)?;
            for r in &outcome.reports {
                let total: usize = r.matches_per_rule.values().sum();
                if r.fixpoint {
                    println!("step {}: no applicable match, stopping", r.step);
                } else {
                    println!(
                        "step {}: {total} matches, {} elements",
                        r.step, r.result_elements
                    );
                }
            }
            write_report(&common.report, json!({ "steps": outcome.reports }))?;
            finish(&common.out, outcome.last())
        }
        Command::Hexca {
            radius,
            generations,
            seeds,
            out,
            report,
        } => {
            let spec = HexGridSpec {
                radius,
                seeds: if seeds.is_empty() {
                    vec![(0, 0)]
                } else {
                    seeds
                },
            };
            let result = cmd_hexca(&spec, generations)?;
            for (g, live) in result.live.iter().enumerate() {
                println!("generation {g}: {} live", live.len());
            }
            let live: Vec<Vec<(i32, i32)>> = result
                .live
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect();
            write_report(&report, json!({ "live": live, "steps": result.reports }))?;
            if let Some(path) = out {
                save_graph(result.graphs.last().unwrap(), path)?;
            }
            Ok(())
        }
        Command::Export { common, dot } => {
            let host = match (&common.host, &common.rules) {
                (Some(h), _) => load_host(h)?,
                (None, Some(r)) => load_host(r)?,
                (None, None) => return Err(Failure::Usage("--host or --rules is required".into())),
            };
            wdpo::dot::write_dot(&host, &dot)?;
            Ok(())
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
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
