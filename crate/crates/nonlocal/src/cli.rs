//! The `nonlocal` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 negative result
//! (strategy not winning, extraction not winning, no separation), 3 resource cap.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nonlocal_core::classical::{hardy_support, with_promise};
use nonlocal_core::extraction::{extract_classical_with, ExtractOptions, ExtractionRoute};
use nonlocal_core::sampling::{random_winning_bundle, StrategyShape};
use nonlocal_core::strategies::{hardy_state, hardy_strategy};
use nonlocal_core::{
    check_vector_condition, local_support_feasible, pick_east, pick_west, refine_to_rank1, schmidt,
    verify_winning, ClassicalValueReport, Error as CoreError, Feasibility,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::document::{
    self, Alphabets, ClassicalStrategyDocument, GameDocument, LoadedStrategy, ParsedGame,
    PovmDocument, StrategyDocument,
};
use crate::error::{CliError, CliResult};
use crate::search::classical_value_parallel;

#[derive(Debug, Parser)]
#[command(
    name = "nonlocal",
    version,
    about = "Analyse nonlocal games and their quantum and classical strategies"
)]
pub struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Losing-mass tolerance for win verification.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Worker threads for classical search (defaults to available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a quantum strategy never loses a game.
    Verify { game: PathBuf, strategy: PathBuf },
    /// Turn a winning strategy with a qubit on one side into a classical winning strategy.
    Extract {
        game: PathBuf,
        strategy: PathBuf,
        /// Write the deterministic strategy document here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip checking that the quantum strategy wins first.
        #[arg(long)]
        no_verify: bool,
    },
    /// Exact classical value by exhaustive search.
    ClassicalValue { game: PathBuf },
    /// Hardy state: locally infeasible support, yet a classically winnable support game.
    HardyDemo,
    /// Write a random winning strategy and the game it wins.
    GenSupport {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory for game.json and strategy.json.
        #[arg(long)]
        out: PathBuf,
        /// Bob's local dimension (Alice holds a qubit).
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u16).range(2..=8))]
        bob_dim: u16,
    },
    /// Rank-1 refinement, Bloch angles and hemispheres of a POVM.
    PovmInspect { povm: PathBuf },
}

/// Text or JSON report plus exit code.
struct Output {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Output {
    fn new<T: Serialize>(text: String, report: &T, code: i32) -> Self {
        Self {
            text,
            json: serde_json::to_value(report).expect("reports serialize"),
            code,
        }
    }
}

/// Run with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let json = cli.json;
    match execute(cli) {
        Ok(o) => {
            if json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json")
                );
            } else {
                let _ = write!(out, "{}", o.text);
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> CliResult<Output> {
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be a finite nonnegative number, got {}",
            cli.tol
        )));
    }
    match cli.command {
        Command::Verify { game, strategy } => cmd_verify(&game, &strategy, cli.tol),
        Command::Extract {
            game,
            strategy,
            out,
            no_verify,
        } => cmd_extract(&game, &strategy, out.as_deref(), !no_verify, cli.tol),
        Command::ClassicalValue { game } => cmd_classical_value(&game, threads),
        Command::HardyDemo => cmd_hardy_demo(threads),
        Command::GenSupport { seed, out, bob_dim } => cmd_gen_support(seed, &out, bob_dim as usize),
        Command::PovmInspect { povm } => cmd_povm_inspect(&povm),
    }
}

fn load_game(path: &Path) -> CliResult<ParsedGame> {
    document::read::<GameDocument>(path)?
        .parse()
        .map_err(|e| in_file(path, e))
}

fn load_strategy(path: &Path, parsed: &ParsedGame) -> CliResult<LoadedStrategy> {
    document::read::<StrategyDocument>(path)?
        .to_strategy(&parsed.alphabets)
        .map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: CliError) -> CliError {
    match e {
        CliError::Invalid { path: p, message } => CliError::Invalid {
            path: format!("{}: {p}", path.display()),
            message,
        },
        other => other,
    }
}

fn joined(labels: &[String]) -> String {
    labels.join(" ")
}

#[derive(Serialize)]
struct QuestionMass {
    inputs: Vec<String>,
    losing_mass: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    in_promise: Option<bool>,
}

#[derive(Serialize)]
struct CounterexampleReport {
    inputs: Vec<String>,
    outputs: Vec<String>,
    probability: f64,
    losing_mass: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    wins: bool,
    tolerance: f64,
    max_losing_mass: f64,
    questions: Vec<QuestionMass>,
    counterexample: Option<CounterexampleReport>,
}

fn cmd_verify(game: &Path, strategy: &Path, tol: f64) -> CliResult<Output> {
    let parsed = load_game(game)?;
    let loaded = load_strategy(strategy, &parsed)?;
    let report = match &loaded {
        LoadedStrategy::Two(s) => verify_winning(s, &parsed.game, tol)?,
        LoadedStrategy::Three(s) => verify_winning(s, &parsed.game, tol)?,
    };
    let a = &parsed.alphabets;
    let questions: Vec<QuestionMass> = report
        .losing_mass
        .iter()
        .enumerate()
        .map(|(i, &m)| QuestionMass {
            inputs: a.input_labels(&nonlocal_core::index::decode(parsed.game.input_sizes(), i)),
            losing_mass: m,
            in_promise: parsed.promise.as_ref().map(|pg| pg.in_promise(i)),
        })
        .collect();
    let counterexample = report
        .counterexample
        .as_ref()
        .map(|c| CounterexampleReport {
            inputs: a.input_labels(&c.inputs),
            outputs: a.output_labels(&c.outputs),
            probability: c.probability,
            losing_mass: c.losing_mass,
        });
    let out = VerifyReport {
        wins: report.wins(),
        tolerance: tol,
        max_losing_mass: report.max_losing_mass(),
        questions,
        counterexample,
    };
    let mut text = String::new();
    let verdict = if out.wins { "winning" } else { "NOT winning" };
    let _ = writeln!(text, "result: {verdict} (tolerance {:e})", tol);
    let _ = writeln!(text, "max losing mass: {:.3e}", out.max_losing_mass);
    let _ = writeln!(text, "losing mass per question:");
    for q in &out.questions {
        let note = match q.in_promise {
            Some(false) => "  (outside promise)",
            _ => "",
        };
        let _ = writeln!(text, "  {}  {:.3e}{note}", joined(&q.inputs), q.losing_mass);
    }
    if let Some(c) = &out.counterexample {
        let _ = writeln!(
            text,
            "counterexample: questions {} answers {} with probability {:.6} (losing mass {:.6})",
            joined(&c.inputs),
            joined(&c.outputs),
            c.probability,
            c.losing_mass
        );
    }
    let code = if out.wins { 0 } else { 2 };
    Ok(Output::new(text, &out, code))
}

#[derive(Serialize)]
struct PickReport {
    player: usize,
    input: String,
    outcome: usize,
    term: usize,
    gamma: f64,
    theta: f64,
    phi: f64,
    hemisphere: &'static str,
    answer: String,
}

#[derive(Serialize)]
struct ExtractReport {
    route: &'static str,
    quantum_wins: Option<bool>,
    wins_all_instances: bool,
    value: String,
    picks: Vec<PickReport>,
    strategy: ClassicalStrategyDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    written_to: Option<String>,
}

fn cmd_extract(
    game: &Path,
    strategy: &Path,
    out: Option<&Path>,
    verify_first: bool,
    tol: f64,
) -> CliResult<Output> {
    let parsed = load_game(game)?;
    let s = match load_strategy(strategy, &parsed)? {
        LoadedStrategy::Two(s) => s,
        LoadedStrategy::Three(_) => {
            return Err(CliError::Usage(
                "extraction needs a two-player strategy".into(),
            ));
        }
    };
    let e = match extract_classical_with(
        &s,
        &parsed.game,
        ExtractOptions {
            verify_first,
            win_tol: tol,
        },
    ) {
        Err(CoreError::UnsupportedDimension { dims }) => {
            return Err(CliError::Usage(format!(
                "extraction needs a qubit on at least one side; got dimensions {}x{} (at least 3x3 admits pseudo-telepathy)",
                dims.0, dims.1
            )));
        }
        other => other?,
    };
    let a = &parsed.alphabets;
    let wins_all = e.strategy.wins_every_instance(&parsed.game)?;
    let value = e.strategy.value(&parsed.game)?;
    let doc = ClassicalStrategyDocument::from_strategy(&e.strategy, a);
    let written_to = match out {
        Some(path) => {
            std::fs::write(path, document::to_json(&doc)).map_err(|err| CliError::Io {
                path: path.display().to_string(),
                message: err.to_string(),
            })?;
            Some(path.display().to_string())
        }
        None => None,
    };
    let picks = [(0, &e.alice_picks), (1, &e.bob_picks)]
        .into_iter()
        .flat_map(|(p, picks)| {
            picks.iter().enumerate().map(move |(x, pk)| PickReport {
                player: p,
                input: a.inputs[p][x].clone(),
                outcome: pk.element.label.outcome,
                term: pk.element.label.term,
                gamma: pk.element.gamma,
                theta: pk.element.theta,
                phi: pk.element.phi,
                hemisphere: pk.element.hemisphere().name(),
                answer: a.outputs[p][pk.answer].clone(),
            })
        })
        .collect();
    let route = match e.route {
        ExtractionRoute::Hemisphere => "hemisphere",
        ExtractionRoute::ProductState => "product-state",
    };
    let report = ExtractReport {
        route,
        quantum_wins: e.quantum_wins,
        wins_all_instances: wins_all,
        value: value.to_string(),
        picks,
        strategy: doc,
        written_to,
    };
    let mut text = String::new();
    let _ = writeln!(text, "route: {route}");
    let q = match report.quantum_wins {
        Some(true) => "winning",
        Some(false) => "NOT winning (no guarantee)",
        None => "not checked",
    };
    let _ = writeln!(text, "quantum strategy: {q}");
    for p in &report.picks {
        let _ = writeln!(
            text,
            "  player {} input {}: element {}.{} (gamma {:.6}, theta {:.6}, phi {:.6}, {}) -> {}",
            p.player, p.input, p.outcome, p.term, p.gamma, p.theta, p.phi, p.hemisphere, p.answer
        );
    }
    let _ = writeln!(
        text,
        "extracted strategy wins every question: {}",
        if wins_all { "yes" } else { "no" }
    );
    let _ = writeln!(text, "extracted strategy value: {}", report.value);
    match &report.written_to {
        Some(path) => {
            let _ = writeln!(text, "strategy written to {path}");
        }
        None => text.push_str(&document::to_json(&report.strategy)),
    }
    Ok(Output::new(text, &report, if wins_all { 0 } else { 2 }))
}

#[derive(Serialize)]
struct ValueReport {
    value: String,
    decimal: f64,
    wins: u64,
    questions: u64,
}

#[derive(Serialize)]
struct ClassicalValueOutput {
    value: String,
    decimal: f64,
    wins: u64,
    questions: u64,
    strategies_searched: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    promise: Option<ValueReport>,
    witness: ClassicalStrategyDocument,
}

fn ratio_decimal(wins: u64, total: u64) -> f64 {
    wins as f64 / total as f64
}

fn value_output(report: &ClassicalValueReport, a: &Alphabets) -> ClassicalValueOutput {
    ClassicalValueOutput {
        value: report.best.to_string(),
        decimal: ratio_decimal(report.best_wins, report.instances),
        wins: report.best_wins,
        questions: report.instances,
        strategies_searched: report.strategies_searched,
        promise: report.promise.as_ref().map(|p| ValueReport {
            value: p.value.to_string(),
            decimal: ratio_decimal(p.wins, p.instances),
            wins: p.wins,
            questions: p.instances,
        }),
        witness: ClassicalStrategyDocument::from_strategy(&report.witness, a),
    }
}

fn witness_lines(text: &mut String, doc: &ClassicalStrategyDocument, a: &Alphabets) {
    for (p, map) in doc.answers.iter().enumerate() {
        let entries: Vec<String> = a.inputs[p]
            .iter()
            .map(|x| format!("{x}->{}", map[x]))
            .collect();
        let _ = writeln!(text, "  player {p}: {}", entries.join(" "));
    }
}

fn cmd_classical_value(game: &Path, threads: usize) -> CliResult<Output> {
    let parsed = load_game(game)?;
    let mut report = classical_value_parallel(&parsed.game, threads)?;
    if let Some(pg) = &parsed.promise {
        report = with_promise(report, pg);
    }
    let out = value_output(&report, &parsed.alphabets);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "classical value: {} ({:.6}), {} of {} questions",
        out.value, out.decimal, out.wins, out.questions
    );
    if let Some(p) = &out.promise {
        let _ = writeln!(
            text,
            "on promise questions: {} ({:.6}), {} of {} questions",
            p.value, p.decimal, p.wins, p.questions
        );
    }
    let _ = writeln!(
        text,
        "deterministic strategies searched: {}",
        out.strategies_searched
    );
    let _ = writeln!(text, "witness:");
    witness_lines(&mut text, &out.witness, &parsed.alphabets);
    Ok(Output::new(text, &out, 0))
}

#[derive(Serialize)]
struct SupportEntry {
    outputs: [String; 2],
    possible: bool,
}

#[derive(Serialize)]
struct SupportRow {
    inputs: [String; 2],
    outcomes: Vec<SupportEntry>,
}

#[derive(Serialize)]
struct LocalSupport {
    feasible: bool,
    admissible_strategies: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    uncovered_event: Option<SupportEntryAt>,
}

#[derive(Serialize)]
struct SupportEntryAt {
    inputs: Vec<String>,
    outputs: Vec<String>,
}

#[derive(Serialize)]
struct HardyReport {
    schmidt_coefficients: Vec<f64>,
    support: Vec<SupportRow>,
    local_support: LocalSupport,
    classical: ClassicalValueOutput,
    extraction_wins: bool,
    separation: bool,
}

fn cmd_hardy_demo(threads: usize) -> CliResult<Output> {
    let a = Alphabets::new(
        vec![vec!["computational".into(), "hadamard".into()]; 2],
        vec![vec!["0".into(), "1".into()]; 2],
    )?;
    let table = hardy_support();
    let form = schmidt(&hardy_state(), 2, 2)?;
    let mut support = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            let outcomes = (0..4)
                .map(|o| {
                    let (i, j) = (o / 2, o % 2);
                    Ok(SupportEntry {
                        outputs: [i.to_string(), j.to_string()],
                        possible: table.is_possible(&[x, y], &[i, j])?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            support.push(SupportRow {
                inputs: [a.inputs[0][x].clone(), a.inputs[1][y].clone()],
                outcomes,
            });
        }
    }
    let local_support = match local_support_feasible(&table)? {
        Feasibility::Feasible { admissible, .. } => LocalSupport {
            feasible: true,
            admissible_strategies: admissible,
            uncovered_event: None,
        },
        Feasibility::Infeasible {
            inputs,
            outputs,
            admissible,
        } => LocalSupport {
            feasible: false,
            admissible_strategies: admissible,
            uncovered_event: Some(SupportEntryAt {
                inputs: a.input_labels(&inputs),
                outputs: a.output_labels(&outputs),
            }),
        },
    };
    let game = table.to_game();
    let classical = classical_value_parallel(&game, threads)?;
    let extraction = extract_classical_with(&hardy_strategy(), &game, ExtractOptions::default())?;
    let extraction_wins = extraction.strategy.wins_every_instance(&game)?;
    let classical_wins = classical.best == 1u64.into();
    let report = HardyReport {
        schmidt_coefficients: form.coefficients.clone(),
        support,
        local_support,
        classical: value_output(&classical, &a),
        extraction_wins,
        separation: classical_wins && extraction_wins,
    };
    let separation = report.separation && !report.local_support.feasible;

    let mut text = String::new();
    let _ = writeln!(text, "Hardy state (|01> + |10> + |11>)/sqrt(3)");
    let _ = writeln!(
        text,
        "Schmidt coefficients: {:.12} {:.12}",
        report.schmidt_coefficients[0], report.schmidt_coefficients[1]
    );
    let _ = writeln!(
        text,
        "possible outcomes (Alice basis, Bob basis: 00 01 10 11):"
    );
    for row in &report.support {
        let marks: Vec<&str> = row
            .outcomes
            .iter()
            .map(|e| if e.possible { "yes" } else { "no" })
            .collect();
        let _ = writeln!(
            text,
            "  {:<13} {:<13} {}",
            row.inputs[0],
            row.inputs[1],
            marks.join(" ")
        );
    }
    match &report.local_support.uncovered_event {
        Some(ev) => {
            let _ = writeln!(
                text,
                "local support: infeasible; no admissible deterministic strategy ({} of 16 admissible) produces bases {} outcome {}",
                report.local_support.admissible_strategies,
                joined(&ev.inputs),
                joined(&ev.outputs)
            );
        }
        None => {
            let _ = writeln!(text, "local support: feasible");
        }
    }
    let _ = writeln!(
        text,
        "support game classical value: {}",
        report.classical.value
    );
    let _ = writeln!(text, "classical winning strategy:");
    witness_lines(&mut text, &report.classical.witness, &a);
    let _ = writeln!(
        text,
        "extraction from the quantum strategy wins the support game: {}",
        if extraction_wins { "yes" } else { "no" }
    );
    let _ = writeln!(
        text,
        "separation (infeasible support, classically winnable game): {}",
        if separation { "yes" } else { "no" }
    );
    Ok(Output::new(text, &report, if separation { 0 } else { 2 }))
}

#[derive(Serialize)]
struct GenSupportReport {
    seed: u64,
    dims: [usize; 2],
    inputs: [usize; 2],
    outputs: [usize; 2],
    game: String,
    strategy: String,
}

fn cmd_gen_support(seed: u64, out: &Path, bob_dim: usize) -> CliResult<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = StrategyShape::random(&mut rng, (2, bob_dim));
    let bundle = random_winning_bundle(&mut rng, shape);
    let a = Alphabets::numbered(bundle.game.input_sizes(), bundle.game.output_sizes());
    let game_doc = GameDocument::from_game(&bundle.game, None);
    let strategy_doc = StrategyDocument::from_two(&bundle.strategy, &a);
    let io = |path: &Path, e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    std::fs::create_dir_all(out).map_err(|e| io(out, e))?;
    let game_path = out.join("game.json");
    let strategy_path = out.join("strategy.json");
    std::fs::write(&game_path, document::to_json(&game_doc)).map_err(|e| io(&game_path, e))?;
    std::fs::write(&strategy_path, document::to_json(&strategy_doc))
        .map_err(|e| io(&strategy_path, e))?;
    let report = GenSupportReport {
        seed,
        dims: [shape.dims.0, shape.dims.1],
        inputs: [shape.inputs.0, shape.inputs.1],
        outputs: [shape.outputs.0, shape.outputs.1],
        game: game_path.display().to_string(),
        strategy: strategy_path.display().to_string(),
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "seed {seed}: dimensions {}x{}, inputs {}x{}, outputs {}x{}",
        report.dims[0],
        report.dims[1],
        report.inputs[0],
        report.inputs[1],
        report.outputs[0],
        report.outputs[1]
    );
    let _ = writeln!(text, "game: {}", report.game);
    let _ = writeln!(text, "strategy: {}", report.strategy);
    Ok(Output::new(text, &report, 0))
}

#[derive(Serialize)]
struct ElementSpectrum {
    label: String,
    eigenvalues: Vec<f64>,
    rank: usize,
}

#[derive(Serialize)]
struct RefinedReport {
    label: String,
    term: usize,
    gamma: f64,
    theta: f64,
    phi: f64,
    bloch: [f64; 3],
    hemisphere: &'static str,
}

#[derive(Serialize)]
struct PickRef {
    label: String,
    term: usize,
}

#[derive(Serialize)]
struct QubitReport {
    refinement: Vec<RefinedReport>,
    vector_condition: bool,
    east_pick: PickRef,
    west_pick: PickRef,
}

#[derive(Serialize)]
struct PovmReport {
    dim: usize,
    elements: Vec<ElementSpectrum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    qubit: Option<QubitReport>,
}

fn cmd_povm_inspect(path: &Path) -> CliResult<Output> {
    let (labels, povm) = document::read::<PovmDocument>(path)?
        .to_povm()
        .map_err(|e| in_file(path, e))?;
    let tol = nonlocal_core::Tolerances::DEFAULT;
    let elements = labels
        .iter()
        .zip(povm.elements())
        .map(|(l, m)| {
            let eig = nonlocal_core::eig_hermitian(m)?;
            Ok(ElementSpectrum {
                label: l.clone(),
                rank: eig.values.iter().filter(|&&v| v > tol.rank).count(),
                eigenvalues: eig.values,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let qubit = if povm.dim() == 2 {
        let r = refine_to_rank1(&povm)?;
        let refinement = r
            .elements
            .iter()
            .map(|e| {
                let b = e.bloch();
                RefinedReport {
                    label: labels[e.label.outcome].clone(),
                    term: e.label.term,
                    gamma: e.gamma,
                    theta: e.theta,
                    phi: e.phi,
                    bloch: [b.x, b.y, b.z],
                    hemisphere: e.hemisphere().name(),
                }
            })
            .collect();
        let pick = |k: usize| PickRef {
            label: labels[r.elements[k].label.outcome].clone(),
            term: r.elements[k].label.term,
        };
        Some(QubitReport {
            refinement,
            vector_condition: check_vector_condition(&r.elements),
            east_pick: pick(pick_east(&r.elements)?),
            west_pick: pick(pick_west(&r.elements)?),
        })
    } else {
        None
    };
    let report = PovmReport {
        dim: povm.dim(),
        elements,
        qubit,
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "valid POVM on dimension {} with {} elements",
        report.dim,
        report.elements.len()
    );
    for e in &report.elements {
        let ev: Vec<String> = e.eigenvalues.iter().map(|v| format!("{v:.6}")).collect();
        let _ = writeln!(
            text,
            "  {}: rank {}, eigenvalues {}",
            e.label,
            e.rank,
            ev.join(" ")
        );
    }
    if let Some(q) = &report.qubit {
        let _ = writeln!(text, "rank-1 refinement:");
        for e in &q.refinement {
            let _ = writeln!(
                text,
                "  {}.{}: gamma {:.6}, theta {:.6}, phi {:.6}, bloch ({:.6}, {:.6}, {:.6}), {}",
                e.label,
                e.term,
                e.gamma,
                e.theta,
                e.phi,
                e.bloch[0],
                e.bloch[1],
                e.bloch[2],
                e.hemisphere
            );
        }
        let _ = writeln!(
            text,
            "vector condition (weighted Bloch vectors sum to 0, weights to 2): {}",
            if q.vector_condition { "holds" } else { "fails" }
        );
        let _ = writeln!(
            text,
            "east pick: {}.{}",
            q.east_pick.label, q.east_pick.term
        );
        let _ = writeln!(
            text,
            "west pick: {}.{}",
            q.west_pick.label, q.west_pick.term
        );
    }
    Ok(Output::new(text, &report, 0))
}
