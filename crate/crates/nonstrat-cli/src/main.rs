//! Command-line surface: predictions, QRE solving, classification probes,
//! witness searches, named demos, and seeded game generation. JSON output
//! is byte-deterministic for fixed seeds and configuration.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use nonstrat::aggregate::aggregation_counterexample;
use nonstrat::classify::{
    classify_model, dominance_responsiveness_falsifier, other_responsiveness_witness,
    self_responsiveness_construction, theorem3_game_pair, ClassificationReport,
    SelfResponsivenessReport, Verdict, WitnessReport, WitnessVerdict,
};
use nonstrat::doc::{
    parse_game, serialize_document, GameDocument, GameMetadata, GENERATOR_ID,
};
use nonstrat::elementary::{evaluate_elementary, make_max_welfare, make_maxmax, make_uniform};
use nonstrat::game::{Behavior, BehaviorProfile, NormalFormGame};
use nonstrat::model::BehavioralModel;
use nonstrat::modelspec::parse_model;
use nonstrat::strategic::{qre_solve, QbrModel};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

const SCHEMA_REPORT: &str = "nonstrat-report/1";

#[derive(Parser)]
#[command(name = "nonstrat", version, about = "Behavioral game theory models and strategic/nonstrategic classification")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Exit with code 2 on non-convergence or inconclusive verdicts
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct SeedArg {
    /// Seed for all randomized search (env NONSTRAT_SEED supplies the default)
    #[arg(long, env = "NONSTRAT_SEED", default_value_t = nonstrat::doc::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a behavioral model on a game
    Predict {
        /// Model spec, e.g. maxmax, soft:welfare:2, qbr:uniform:1, mix:0.5*maxmax+0.5*welfare
        #[arg(long)]
        model: String,
        /// Path to a game document
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        player: usize,
    },
    /// Solve for a quantal response equilibrium by damped fixed-point iteration
    SolveQre {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: u64,
    },
    /// Run both responsiveness probes and classify a model
    Classify {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 0)]
        player: usize,
        /// Random trials per probe and shape
        #[arg(long, default_value_t = nonstrat::doc::DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Run a single responsiveness probe
    Witness {
        #[command(subcommand)]
        probe: WitnessProbe,
    },
    /// Run a named demonstration
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        /// Mixture weight for the aggregation demo
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
    },
    /// Generate a seeded random game document
    Gen {
        /// Shape as PxA1x...xAn: player count, then one action count per player
        #[arg(long)]
        shape: String,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Subcommand)]
enum WitnessProbe {
    /// Search for a game pair differing only in opponents' payoffs that the model separates
    Other {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 0)]
        player: usize,
        #[arg(long, default_value = "2x2x2")]
        shape: String,
        #[arg(long, default_value_t = nonstrat::doc::DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Search for a dominance-reversed pair the model cannot separate
    Dominance {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 0)]
        player: usize,
        #[arg(long, default_value = "2x2x2")]
        shape: String,
        #[arg(long, default_value_t = nonstrat::doc::DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Apply the own-payoff indicator construction to a concrete game
    Self_ {
        #[arg(long)]
        model: String,
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = 0)]
        player: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    /// Quantal response to a responsive belief source is strategic
    Theorem1,
    /// No potential-scored rule separates a collision-built reversal
    Theorem3,
    /// Mixtures of elementary rules escape the class but stay falsifiable
    Aggregation,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

fn run(cli: Cli) -> CliResult<ExitCode> {
    let format = cli.format;
    let strict = cli.strict;
    match cli.command {
        Command::Predict {
            model,
            game,
            player,
        } => {
            let g = load_game(&game)?;
            let m = parse_model(&model)?;
            let behavior = m.behavior(&g, player)?;
            match format {
                Format::Json => print_json(&json!({
                    "schema": SCHEMA_REPORT,
                    "kind": "prediction",
                    "model": m.name(),
                    "player": player,
                    "actions": g.action_names(player),
                    "probabilities": behavior,
                })),
                Format::Table => {
                    println!("model  {}", m.name());
                    println!("player {player}");
                    print_behavior(&g, player, &behavior);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SolveQre {
            game,
            lambda,
            gamma,
            tol,
            max_iter,
        } => {
            let g = load_game(&game)?;
            let init = BehaviorProfile::uniform(&g);
            let sol = qre_solve(&g, lambda, &init, gamma, tol, max_iter)?;
            match format {
                Format::Json => print_json(&json!({
                    "schema": SCHEMA_REPORT,
                    "kind": "qre",
                    "lambda": lambda,
                    "converged": sol.converged,
                    "iterations": sol.iterations,
                    "residual": sol.residual,
                    "actions": g.all_action_names(),
                    "profile": sol.profile.behaviors(),
                })),
                Format::Table => {
                    println!(
                        "lambda {lambda}  converged {}  iterations {}  residual {:.3e}",
                        sol.converged, sol.iterations, sol.residual
                    );
                    for player in 0..g.num_players() {
                        print_behavior(&g, player, sol.profile.get(player));
                    }
                }
            }
            if strict && !sol.converged {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            model,
            player,
            budget,
            seed,
        } => {
            let m = parse_model(&model)?;
            let shapes = nonstrat::doc::RunConfig::default().shapes;
            let report = classify_model(m.as_ref(), player, &shapes, budget, seed.seed)?;
            match format {
                Format::Json => print_json(&classification_json(&report)),
                Format::Table => print_classification_table(&report),
            }
            if strict && report.verdict == Verdict::Inconclusive {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { probe } => run_witness(probe, format, strict),
        Command::Demo { name, alpha } => run_demo(name, alpha, format),
        Command::Gen { shape, seed } => {
            let shape = parse_shape(&shape)?;
            let g = nonstrat::doc::random_game(&shape, seed.seed);
            let doc = GameDocument::from_game_with_metadata(
                &g,
                Some(GameMetadata {
                    seed: Some(seed.seed),
                    generator: Some(GENERATOR_ID.to_string()),
                    description: None,
                }),
            );
            print!("{}", serialize_document(&doc));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_witness(probe: WitnessProbe, format: Format, strict: bool) -> CliResult<ExitCode> {
    let (kind, model_name, player, report, extra) = match probe {
        WitnessProbe::Other {
            model,
            player,
            shape,
            budget,
            seed,
        } => {
            let m = parse_model(&model)?;
            let shape = parse_shape(&shape)?;
            let report =
                other_responsiveness_witness(m.as_ref(), player, &shape, budget, seed.seed)?;
            ("other", m.name(), player, report, None)
        }
        WitnessProbe::Dominance {
            model,
            player,
            shape,
            budget,
            seed,
        } => {
            let m = parse_model(&model)?;
            let shape = parse_shape(&shape)?;
            let report =
                dominance_responsiveness_falsifier(m.as_ref(), player, &shape, budget, seed.seed)?;
            ("dominance", m.name(), player, report, None)
        }
        WitnessProbe::Self_ {
            model,
            game,
            player,
        } => {
            let m = parse_model(&model)?;
            let g = load_game(&game)?;
            let (_, report) = self_responsiveness_construction(m.as_ref(), player, &g)?;
            let SelfResponsivenessReport {
                report,
                argmin_action,
                flipped_to_strict_argmax,
            } = report;
            (
                "self",
                m.name(),
                player,
                report,
                Some((argmin_action, flipped_to_strict_argmax)),
            )
        }
    };

    match format {
        Format::Json => {
            let mut value = witness_json(&report);
            let object = value.as_object_mut().expect("object");
            object.insert("schema".into(), json!(SCHEMA_REPORT));
            object.insert("kind".into(), json!("witness"));
            object.insert("probe".into(), json!(kind));
            object.insert("model".into(), json!(model_name));
            object.insert("player".into(), json!(player));
            if let Some((argmin, flipped)) = extra {
                object.insert("argmin_action".into(), json!(argmin));
                object.insert("flipped_to_strict_argmax".into(), json!(flipped));
            }
            print_json(&value);
        }
        Format::Table => {
            println!("probe   {kind}");
            println!("model   {model_name}");
            println!("player  {player}");
            print_witness_table(&report);
            if let Some((argmin, flipped)) = extra {
                println!("argmin action          {argmin}");
                println!("flips to strict argmax {flipped}");
            }
        }
    }
    if strict && report.verdict == WitnessVerdict::NoWitnessWithinBudget {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_demo(name: DemoName, alpha: f64, format: Format) -> CliResult<ExitCode> {
    match name {
        DemoName::Theorem1 => {
            let pd = nonstrat::games::prisoners_dilemma();
            let level1 = QbrModel::new(Arc::new(make_uniform()), 1.0)?;
            let (_, self_report) = self_responsiveness_construction(&level1, 0, &pd)?;
            let probed = QbrModel::new(Arc::new(level1.clone()), 1.0)?;
            let other = other_responsiveness_witness(&probed, 0, &[2, 2], 100, 0)?;
            let dominance = dominance_responsiveness_falsifier(&level1, 0, &[2, 2], 1000, 0)?;
            match format {
                Format::Json => print_json(&json!({
                    "schema": SCHEMA_REPORT,
                    "kind": "demo",
                    "name": "theorem1",
                    "self_responsiveness": {
                        "model": level1.name(),
                        "argmin_action": self_report.argmin_action,
                        "flipped_to_strict_argmax": self_report.flipped_to_strict_argmax,
                        "report": witness_json(&self_report.report),
                    },
                    "other_responsiveness": {
                        "model": probed.name(),
                        "report": witness_json(&other),
                    },
                    "dominance": {
                        "model": level1.name(),
                        "report": witness_json(&dominance),
                    },
                })),
                Format::Table => {
                    println!("demo theorem1: quantal response to a responsive belief source is strategic");
                    println!();
                    println!("[self responsiveness] model {}", level1.name());
                    println!(
                        "argmin action {} flips to strict argmax: {}",
                        self_report.argmin_action, self_report.flipped_to_strict_argmax
                    );
                    print_witness_table(&self_report.report);
                    println!();
                    println!("[other responsiveness] model {}", probed.name());
                    print_witness_table(&other);
                    println!();
                    println!("[dominance] model {} (no counterexample expected)", level1.name());
                    print_witness_table(&dominance);
                }
            }
        }
        DemoName::Theorem3 => {
            let (g1, g2) = theorem3_game_pair(&[1.0, 2.0], &[2.0, 1.0], 0)?;
            let welfare = make_max_welfare();
            let maxmax = make_maxmax();
            let w = (
                evaluate_elementary(&welfare, &g1, 0)?,
                evaluate_elementary(&welfare, &g2, 0)?,
            );
            let m = (
                evaluate_elementary(&maxmax, &g1, 0)?,
                evaluate_elementary(&maxmax, &g2, 0)?,
            );
            match format {
                Format::Json => print_json(&json!({
                    "schema": SCHEMA_REPORT,
                    "kind": "demo",
                    "name": "theorem3",
                    "games": [game_value(&g1), game_value(&g2)],
                    "welfare_outputs": [w.0, w.1],
                    "maxmax_outputs": [m.0, m.1],
                })),
                Format::Table => {
                    println!("demo theorem3: a potential collision hides a dominance reversal");
                    println!();
                    print_game_table("G1 (first action dominant)", &g1);
                    print_game_table("G2 (first action dominated)", &g2);
                    println!("welfare outputs: {:?} vs {:?} (equal)", w.0.probs(), w.1.probs());
                    println!("maxmax outputs:  {:?} vs {:?} (differ)", m.0.probs(), m.1.probs());
                }
            }
        }
        DemoName::Aggregation => {
            let cx = aggregation_counterexample(alpha)?;
            let out3 = cx.model.behavior(&cx.g3, 0)?;
            let out4 = cx.model.behavior(&cx.g4, 0)?;
            match format {
                Format::Json => print_json(&json!({
                    "schema": SCHEMA_REPORT,
                    "kind": "demo",
                    "name": "aggregation",
                    "alpha": alpha,
                    "model": cx.model.name(),
                    "games": [game_value(&cx.g3), game_value(&cx.g4)],
                    "outputs": [out3, out4],
                    "expected": [cx.expected_g3, cx.expected_g4],
                })),
                Format::Table => {
                    println!("demo aggregation: the mixture is not elementary (alpha = {alpha})");
                    println!();
                    print_game_table("G3", &cx.g3);
                    print_game_table("G4", &cx.g4);
                    println!("model {}", cx.model.name());
                    println!("output on G3: {:?} (expected {:?})", out3.probs(), cx.expected_g3.probs());
                    println!("output on G4: {:?} (expected {:?})", out4.probs(), cx.expected_g4.probs());
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_game(path: &PathBuf) -> CliResult<NormalFormGame> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(parse_game(&text)?)
}

fn parse_shape(spec: &str) -> CliResult<Vec<usize>> {
    let parts: Vec<usize> = spec
        .split('x')
        .map(|p| p.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("shape {spec:?} must look like 2x3x4"))?;
    let (&players, actions) = parts
        .split_first()
        .ok_or_else(|| format!("shape {spec:?} is empty"))?;
    if actions.len() != players {
        return Err(format!(
            "shape {spec:?} declares {players} players but lists {} action counts",
            actions.len()
        )
        .into());
    }
    if actions.iter().any(|&k| k == 0) {
        return Err(format!("shape {spec:?} has an empty action set").into());
    }
    Ok(actions.to_vec())
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn game_value(game: &NormalFormGame) -> Value {
    serde_json::to_value(GameDocument::from_game(game)).expect("serializable")
}

fn witness_json(report: &WitnessReport) -> Value {
    let games: Vec<Value> = report
        .games
        .iter()
        .flat_map(|(a, b)| [game_value(a), game_value(b)])
        .collect();
    let outputs: Vec<&Behavior> = report
        .outputs
        .iter()
        .flat_map(|(a, b)| [a, b])
        .collect();
    json!({
        "verdict": report.verdict.to_string(),
        "budget_used": report.budget_used,
        "seed": report.seed,
        "witness_games": games,
        "outputs": outputs,
    })
}

fn classification_json(report: &ClassificationReport) -> Value {
    json!({
        "schema": SCHEMA_REPORT,
        "kind": "classification",
        "model": report.model,
        "player": report.player,
        "verdict": report.verdict.to_string(),
        "budget": report.budget_per_shape,
        "seed": report.seed,
        "shapes": report.shapes,
        "other_responsiveness": witness_json(&report.other),
        "dominance_responsiveness": witness_json(&report.dominance),
    })
}

fn print_behavior(game: &NormalFormGame, player: usize, behavior: &Behavior) {
    let names = game.action_names(player);
    for (name, p) in names.iter().zip(behavior.probs()) {
        println!("  {name:<8} {p:.6}");
    }
}

fn print_game_table(label: &str, game: &NormalFormGame) {
    println!("{label}:");
    for assignment in game.profiles() {
        let cells: Vec<&str> = assignment
            .iter()
            .enumerate()
            .map(|(j, &a)| game.action_names(j)[a].as_str())
            .collect();
        let tuple: Vec<String> = (0..game.num_players())
            .map(|j| format!("{}", game.payoff(&assignment, j)))
            .collect();
        println!("  ({}) -> ({})", cells.join(","), tuple.join(", "));
    }
}

fn print_witness_table(report: &WitnessReport) {
    println!("verdict     {}", report.verdict);
    println!("budget used {}", report.budget_used);
    if let Some((a, b)) = &report.games {
        print_game_table("first game", a);
        print_game_table("second game", b);
    }
    if let Some((a, b)) = &report.outputs {
        println!("output on first game:  {:?}", a.probs());
        println!("output on second game: {:?}", b.probs());
    }
}

fn print_classification_table(report: &ClassificationReport) {
    println!("model   {}", report.model);
    println!("player  {}", report.player);
    println!("verdict {}", report.verdict);
    println!(
        "budget  {} per shape over {:?} (seed {})",
        report.budget_per_shape, report.shapes, report.seed
    );
    println!();
    println!("[other responsiveness]");
    print_witness_table(&report.other);
    println!();
    println!("[dominance responsiveness]");
    print_witness_table(&report.dominance);
}
