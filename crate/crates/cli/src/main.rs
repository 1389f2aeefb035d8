//! `dmp`: decide, plan, verify and inspect robot motion instances.
//!
//! Exit codes: 0 feasible or success, 1 infeasible or failed check, 2 usage
//! or parse error, 3 digraph neither acyclic nor strongly connected.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use dmp_core::acyclic::synthesize_plan_acyclic;
use dmp_core::compare::compare;
use dmp_core::config::verify_plan;
use dmp_core::generate::{generate, Family, GenSpec};
use dmp_core::graph::{classify, GraphClass};
use dmp_core::io::{parse_instance_file, parse_plan, serialize_instance, serialize_plan, InstanceFile};
use dmp_core::oracle::{oracle_decide_bounded, DEFAULT_BOUND, MAX_BOUND};
use dmp_core::report::Diagnostics;
use dmp_core::strong::{decide_strong_with, MoverStrategy, SelectionOrder, StrongOptions};
use dmp_core::structure::{block_tree, closed_ear_decomposition, is_strongly_biconnected, open_ear_decomposition};
use dmp_core::{decide, Plan};

#[derive(Parser)]
#[command(name = "dmp", version, about = "Single-robot motion planning with movable obstacles on digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility with the exact algorithm for the digraph's class.
    Decide {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
        /// Also print the moves executed while normalizing (strong class).
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = MoverArg::Ear)]
        mover: MoverArg,
        #[arg(long, value_enum, default_value_t = OrderArg::Asc)]
        order: OrderArg,
    },
    /// Print a plan that brings the robot to the target.
    Plan {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
        /// Write the plan here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay a plan file against an instance.
    Verify {
        file: PathBuf,
        plan: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Print blocks, cut vertices and an ear decomposition.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive breadth-first search over configurations.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
        /// Largest vertex count searched.
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=MAX_BOUND as u64))]
        bound: usize,
    },
    /// Generate a random instance.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the exact algorithm and the oracle on generated instances.
    Compare {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Print a flat JSON object instead of `key: value` lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    family: Family,
    #[arg(short)]
    n: usize,
    /// Arc budget.
    #[arg(short, default_value_t = 0)]
    m: usize,
    /// Hole count.
    #[arg(short, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SpecArgs {
    fn spec(&self) -> GenSpec {
        GenSpec::new(self.family, self.n, self.m, self.k, self.seed)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MoverArg {
    Ear,
    Pair,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Asc,
    Desc,
}

/// An error with its exit code.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

fn exit(code: u8, message: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Exit { code, message: message.into() })
}

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

const INFEASIBLE: u8 = 1;
const USAGE: u8 = 2;
const UNSUPPORTED: u8 = 3;

fn read_instance(path: &Path) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance_file(&text).map_err(|e| exit(USAGE, format!("{}: {e}", path.display())))
}

/// Prints `kv` as `key: value` lines or as one JSON object.
fn emit(kv: &[(String, String)], json: bool) {
    if json {
        let map: Map<String, Value> = kv.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        println!("{}", Value::Object(map));
    } else {
        for (k, v) in kv {
            println!("{k}: {v}");
        }
    }
}

fn kv(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn verdict_code(feasible: bool) -> ExitCode {
    if feasible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(INFEASIBLE)
    }
}

fn unsupported() -> anyhow::Error {
    exit(UNSUPPORTED, "unsupported class: the digraph is neither acyclic nor strongly connected")
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Decide { file, out, trace, mover, order } => {
            let f = read_instance(&file)?;
            let opts = StrongOptions {
                mover: match mover {
                    MoverArg::Ear => MoverStrategy::EarInduction,
                    MoverArg::Pair => MoverStrategy::HolePairSearch,
                },
                order: match order {
                    OrderArg::Asc => SelectionOrder::Ascending,
                    OrderArg::Desc => SelectionOrder::Descending,
                },
            };
            let report = match classify(&f.inst.d) {
                GraphClass::StronglyConnected => decide_strong_with(&f.inst, opts)?,
                _ => decide(&f.inst)?.ok_or_else(unsupported)?,
            };
            let name = |v| f.name(v);
            let mut pairs = report.key_values(&name);
            if trace {
                if let Diagnostics::Strong(sd) = &report.diagnostics {
                    let body = serialize_plan(&sd.trace, Some(&f.labels));
                    if out.json {
                        pairs.push(("trace".into(), body.trim_end().replace('\n', "; ")));
                    } else {
                        emit(&pairs, false);
                        print!("{body}");
                        return Ok(verdict_code(report.verdict));
                    }
                }
            }
            emit(&pairs, out.json);
            Ok(verdict_code(report.verdict))
        }
        Command::Plan { file, out, output } => {
            let f = read_instance(&file)?;
            let plan: Option<Plan> = match classify(&f.inst.d) {
                GraphClass::Acyclic => match decide(&f.inst)? {
                    Some(r) if r.verdict => Some(synthesize_plan_acyclic(&f.inst)?),
                    _ => None,
                },
                _ => {
                    let outcome = oracle_decide_bounded(&f.inst, DEFAULT_BOUND)
                        .map_err(|e| exit(UNSUPPORTED, format!("no plan synthesis for this class: {e}")))?;
                    outcome.shortest_plan
                }
            };
            let Some(plan) = plan else {
                emit(&kv(&[("verdict", "infeasible".into())]), out.json);
                return Ok(ExitCode::from(INFEASIBLE));
            };
            let body = serialize_plan(&plan, Some(&f.labels));
            match output {
                Some(path) => {
                    fs::write(&path, &body).with_context(|| format!("writing {}", path.display()))?;
                    emit(&kv(&[("verdict", "feasible".into()), ("moves", plan.len().to_string())]), out.json);
                }
                None if out.json => emit(
                    &kv(&[
                        ("verdict", "feasible".into()),
                        ("moves", plan.len().to_string()),
                        ("plan", body.trim_end().replace('\n', "; ")),
                    ]),
                    true,
                ),
                None => print!("{body}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, plan, out } => {
            let f = read_instance(&file)?;
            let text = fs::read_to_string(&plan).with_context(|| format!("reading {}", plan.display()))?;
            let p = parse_plan(&text, &f.labels).map_err(|e| exit(USAGE, format!("{}: {e}", plan.display())))?;
            let check = verify_plan(&f.inst, &p);
            let mut pairs = kv(&[
                ("legal", check.ok.to_string()),
                ("reaches_target", check.reaches_target.to_string()),
                ("moves", p.len().to_string()),
                ("robot", f.name(check.final_config.robot())),
            ]);
            if let (Some(i), Some(e)) = (check.failing_index, check.failure) {
                pairs.push(("failing_move".into(), format!("{} ({} -> {})", i + 1, f.name(e.from), f.name(e.to))));
                pairs.push(("reason".into(), format!("{:?}", e.reason)));
            }
            emit(&pairs, out.json);
            Ok(verdict_code(check.ok && check.reaches_target))
        }
        Command::Decompose { file, out } => {
            let f = read_instance(&file)?;
            let d = &f.inst.d;
            let bt = block_tree(d)?;
            let names = |vs: &[usize]| vs.iter().map(|&v| f.name(v)).collect::<Vec<_>>();
            let class = classify(d);
            let ears = match class {
                GraphClass::StronglyConnected if is_strongly_biconnected(d) => {
                    Some(("open", open_ear_decomposition(d)?))
                }
                GraphClass::StronglyConnected => Some(("closed", closed_ear_decomposition(d)?)),
                _ => None,
            };
            let class_name = match class {
                GraphClass::Acyclic => "acyclic",
                GraphClass::StronglyConnected => "strongly-connected",
                GraphClass::Other => "other",
            };
            if out.json {
                let mut pairs = kv(&[("class", class_name.into()), ("blocks", bt.block_count().to_string())]);
                for b in 0..bt.block_count() {
                    pairs.push((format!("block {b}"), names(bt.block(b)).join(" ")));
                }
                pairs.push(("cut_vertices".into(), names(bt.cut_vertices()).join(" ")));
                if let Some((kind, e)) = &ears {
                    pairs.push(("ears".into(), kind.to_string()));
                    for (k, walk) in e.walks().iter().enumerate() {
                        pairs.push((format!("ear {k}"), names(walk).join(" -> ")));
                    }
                }
                emit(&pairs, true);
            } else {
                let mut text = format!("class: {class_name}\n");
                for b in 0..bt.block_count() {
                    let _ = writeln!(text, "block {b}: {}", names(bt.block(b)).join(" "));
                }
                for &v in bt.cut_vertices() {
                    let blocks: Vec<String> = bt.blocks_of(v).iter().map(usize::to_string).collect();
                    let _ = writeln!(text, "cut vertex {}: blocks {}", f.name(v), blocks.join(" "));
                }
                if let Some((kind, e)) = &ears {
                    let _ = writeln!(text, "ears: {kind}");
                    for (k, walk) in e.walks().iter().enumerate() {
                        let _ = writeln!(text, "ear {k}: {}", names(walk).join(" -> "));
                    }
                }
                print!("{text}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { file, out, bound } => {
            let f = read_instance(&file)?;
            let outcome = oracle_decide_bounded(&f.inst, bound).map_err(|e| exit(UNSUPPORTED, e.to_string()))?;
            let mut pairs = kv(&[
                ("verdict", if outcome.feasible { "feasible" } else { "infeasible" }.into()),
                ("states_explored", outcome.states_explored.to_string()),
            ]);
            if let Some(plan) = &outcome.shortest_plan {
                pairs.push(("plan_length".into(), plan.len().to_string()));
                let body = serialize_plan(plan, Some(&f.labels));
                if out.json {
                    pairs.push(("plan".into(), body.trim_end().replace('\n', "; ")));
                } else {
                    emit(&pairs, false);
                    print!("{body}");
                    return Ok(verdict_code(true));
                }
            }
            emit(&pairs, out.json);
            Ok(verdict_code(outcome.feasible))
        }
        Command::Gen { spec, output } => {
            let inst = generate(&spec.spec()).map_err(|e| exit(USAGE, e.to_string()))?;
            let text = serialize_instance(&inst, None);
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { spec, count, out } => {
            let report = compare(&spec.spec(), count).map_err(|e| exit(USAGE, e.to_string()))?;
            let mut pairs = kv(&[
                ("total", report.total.to_string()),
                ("agreed", report.agreed.to_string()),
                ("agreement", format!("{:.4}", report.agreement())),
            ]);
            for c in &report.counterexamples {
                let got = match &c.got {
                    Ok(v) => v.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                pairs.push((format!("seed {}", c.seed), format!("expected {}, got {got}", c.expected)));
            }
            emit(&pairs, out.json);
            if !out.json {
                for c in &report.counterexamples {
                    print!("# counterexample, seed {}\n{}", c.seed, c.instance);
                }
            }
            Ok(verdict_code(report.counterexamples.is_empty()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            let code = e.downcast_ref::<Exit>().map_or(USAGE, |x| x.code);
            eprintln!("dmp: {e:#}");
            ExitCode::from(code)
        }
    }
}
