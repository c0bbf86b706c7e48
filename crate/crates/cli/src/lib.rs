//! Command-line front end: argument parsing and the commands themselves.
//!
//! Exit codes: 0 success (or minimally rigid), 1 negative answer, 2 bad
//! input, 3 the two rigidity oracles disagree.

pub mod corpus;
pub mod io;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use torus_rigidity::henneberg::{decompose, generate_random, replay, replay_validated};
use torus_rigidity::lattice::GainSpace;
use torus_rigidity::rigidity::{
    build_rigidity_matrix, generic_rank, Configuration, RankReport, DEFAULT_SEED, DEFAULT_TRIALS,
};
use torus_rigidity::sparsity::{periodic_laman_check_with, ConstructiveMethod, WitnessReport};
use torus_rigidity::tgain::{gain_space, t_gain_procedure};
use torus_rigidity::window::{derive_window, Window};
use torus_rigidity::{Error, GainVector, LatticeMatrix, PeriodicOrbitGraph, SpanningTreeData};

use crate::corpus::{run_corpus, CorpusOptions};
use crate::io::{read_config, read_graph, read_sequence, to_json, write_file, InputError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "torus-rigidity",
    version,
    about = "Generic rigidity of periodic frameworks on the fixed 2-torus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct RankArgs {
    /// Random configurations sampled for the generic rank.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Periodic Laman check and generic rank, with their agreement.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Write the witness report JSON here.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        rank: RankArgs,
        /// Enumerate all tight subgraphs instead of using the pebble game.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Rank report of the fixed-torus rigidity matrix.
    Rank {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Use this configuration instead of random ones.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Include the matrix as rows of "p/q" strings.
        #[arg(long)]
        matrix: bool,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// T-gains for a spanning tree, and the gain space.
    Tgain {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        root: Option<u32>,
        /// Comma-separated tree edge ids; defaults to the canonical BFS tree.
        #[arg(long, value_delimiter = ',')]
        tree: Option<Vec<u32>>,
    },
    /// Henneberg sequence of a minimally rigid graph.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Graph built by a Henneberg sequence.
    Replay {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also require full generic rank after every move.
        #[arg(long)]
        validate: bool,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Random minimally rigid graph(s).
    Generate {
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 2)]
        gain_bound: i64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// With a count above one, `--output` names a directory.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Positions of the derived framework in a window of cells.
    Derive {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, conflicts_with = "random_config")]
        config: Option<PathBuf>,
        #[arg(long)]
        random_config: bool,
        /// Cells `0..A` by `0..B`, written `AxB`.
        #[arg(long, default_value = "1x1", value_parser = parse_window)]
        window: Window,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Random corpus through both oracles.
    Corpus {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        min_vertices: usize,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 2)]
        gain_bound: i64,
        #[command(flatten)]
        rank: RankArgs,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

pub fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("window `{s}` is not of the form AxB"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("window size `{t}` is not a nonnegative integer"))
    };
    Ok(Window::block(parse(a)? as i64, parse(b)? as i64))
}

fn method(exhaustive: bool) -> ConstructiveMethod {
    if exhaustive {
        ConstructiveMethod::Exhaustive
    } else {
        ConstructiveMethod::Pebble
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Writes to `path`, or to `out` when no path is given.
fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), InputError> {
    match path {
        Some(p) => write_file(p, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| InputError(e.to_string())),
    }
}

/// Result of the `check` command on a parsed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub exit: i32,
    pub text: String,
    pub witness: WitnessReport,
}

pub fn check_graph(
    graph: &PeriodicOrbitGraph,
    trials: usize,
    seed: u64,
    exhaustive: bool,
) -> Result<CheckOutcome, InputError> {
    let report = periodic_laman_check_with(graph, method(exhaustive))?;
    let rank = generic_rank(graph, &LatticeMatrix::identity(), trials, seed).rank;
    let full = 2 * graph.vertex_count() - 2;
    let agree = report.minimally_rigid == (rank == full);
    let witness = WitnessReport::new(graph, &report);
    let mut text = format!(
        "laman: {}, rank: {rank}/{full}, agree: {}\n",
        yes_no(report.minimally_rigid),
        yes_no(agree)
    );
    if !report.minimally_rigid {
        text.push_str(&format!("reason: {}\n", report.verdict.reason()));
        text.push_str(&to_json(&witness));
    }
    let exit = match (agree, report.minimally_rigid) {
        (false, _) => EXIT_DISAGREE,
        (true, true) => EXIT_OK,
        (true, false) => EXIT_NO,
    };
    Ok(CheckOutcome {
        exit,
        text,
        witness,
    })
}

#[derive(Serialize)]
struct RankOutput {
    #[serde(flatten)]
    report: RankReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct GainSpaceOutput {
    basis: Vec<GainVector>,
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<i64>,
}

impl From<&GainSpace> for GainSpaceOutput {
    fn from(s: &GainSpace) -> Self {
        GainSpaceOutput {
            basis: s.basis().to_vec(),
            rank: s.rank(),
            index: s.index(),
        }
    }
}

#[derive(Serialize)]
struct TgainOutput {
    root: u32,
    tree_edges: Vec<u32>,
    potentials: Vec<GainVector>,
    graph: torus_rigidity::graph::GraphFile,
    gain_space: GainSpaceOutput,
}

fn negative(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_NO
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, InputError> {
    match command {
        Command::Check {
            input,
            output,
            rank,
            exhaustive,
        } => {
            let g = read_graph(&input)?;
            let outcome = check_graph(&g, rank.trials, rank.seed, exhaustive)?;
            out.write_all(outcome.text.as_bytes())
                .map_err(|e| InputError(e.to_string()))?;
            if let Some(p) = output {
                write_file(&p, &to_json(&outcome.witness))?;
            }
            if outcome.exit == EXIT_DISAGREE {
                let _ = writeln!(err, "error: combinatorial and rank verdicts disagree");
            }
            Ok(outcome.exit)
        }
        Command::Rank {
            input,
            output,
            config,
            matrix,
            rank,
        } => {
            let g = read_graph(&input)?;
            let (report, dump) = match config {
                Some(path) => {
                    let config = read_config(&path)?;
                    let r = build_rigidity_matrix(&g, &config)?;
                    let report = RankReport {
                        rank: r.rank,
                        flexes: 2 * g.vertex_count() - 2 - r.rank,
                        stresses: g.edge_count() - r.rank,
                        trials: 1,
                        seed: rank.seed,
                    };
                    (report, matrix.then(|| r.matrix.to_strings()))
                }
                None => {
                    let result =
                        generic_rank(&g, &LatticeMatrix::identity(), rank.trials, rank.seed);
                    let dump = matrix.then(|| {
                        let mut rng = ChaCha8Rng::seed_from_u64(rank.seed);
                        let config = Configuration::random(
                            g.vertex_count(),
                            LatticeMatrix::identity(),
                            &mut rng,
                        );
                        build_rigidity_matrix(&g, &config).map(|r| r.matrix.to_strings())
                    });
                    (RankReport::new(&g, &result), dump.transpose()?)
                }
            };
            emit(
                out,
                output.as_deref(),
                &to_json(&RankOutput {
                    report,
                    matrix: dump,
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Tgain {
            input,
            output,
            root,
            tree,
        } => {
            let g = read_graph(&input)?;
            let tree = match (root, tree) {
                (r, Some(edges)) => SpanningTreeData::new(&g, r.unwrap_or(1), edges),
                (Some(r), None) => {
                    let order: Vec<u32> = g.edges().iter().map(|e| e.id).collect();
                    SpanningTreeData::from_edge_priority(&g, r, &order)
                }
                (None, None) => SpanningTreeData::canonical(&g),
            };
            let tree = match tree {
                Ok(t) => t,
                Err(e) => return Ok(negative(err, &e)),
            };
            let t = t_gain_procedure(&g, &tree)?;
            let result = TgainOutput {
                root: tree.root(),
                tree_edges: tree.tree_edges().iter().copied().collect(),
                potentials: g.vertices().map(|v| tree.potential(v)).collect(),
                graph: t.to_file(),
                gain_space: (&gain_space(&g)).into(),
            };
            emit(out, output.as_deref(), &to_json(&result))?;
            Ok(EXIT_OK)
        }
        Command::Decompose { input, output } => {
            let g = read_graph(&input)?;
            match decompose(&g) {
                Ok(seq) => {
                    emit(out, output.as_deref(), &to_json(&seq))?;
                    Ok(EXIT_OK)
                }
                Err(e) => Ok(negative(err, &e)),
            }
        }
        Command::Replay {
            input,
            output,
            validate,
            rank,
        } => {
            let seq = read_sequence(&input)?;
            let result = if validate {
                replay_validated(&seq, rank.trials, rank.seed)
            } else {
                replay(&seq)
            };
            match result {
                Ok(g) => {
                    emit(out, output.as_deref(), &to_json(&g.to_file()))?;
                    Ok(EXIT_OK)
                }
                Err(e) => Ok(negative(err, &e)),
            }
        }
        Command::Generate {
            vertices,
            gain_bound,
            seed,
            count,
            output,
        } => {
            if count > 1 {
                let dir = output.ok_or_else(|| {
                    InputError("--count above 1 needs --output <directory>".into())
                })?;
                std::fs::create_dir_all(&dir)
                    .map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
                for i in 0..count {
                    let g = generate_random(vertices, gain_bound, seed + i as u64)?;
                    write_file(
                        &dir.join(format!("graph_{i:04}.json")),
                        &to_json(&g.to_file()),
                    )?;
                }
            } else {
                let g = generate_random(vertices, gain_bound, seed)?;
                emit(out, output.as_deref(), &to_json(&g.to_file()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Derive {
            input,
            output,
            config,
            random_config,
            window,
            svg,
            seed,
        } => {
            let g = read_graph(&input)?;
            let config = match (config, random_config) {
                (Some(p), _) => read_config(&p)?,
                (None, true) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    Configuration::random(g.vertex_count(), LatticeMatrix::identity(), &mut rng)
                }
                (None, false) => {
                    return Err(InputError(
                        "derive needs --config or --random-config".into(),
                    ))
                }
            };
            let derived = derive_window(&g, &config, &window)?;
            if let Some(p) = svg {
                write_file(&p, &derived.to_svg(100.0))?;
            }
            emit(out, output.as_deref(), &to_json(&derived))?;
            Ok(EXIT_OK)
        }
        Command::Corpus {
            count,
            min_vertices,
            max_vertices,
            gain_bound,
            rank,
            exhaustive,
            output,
        } => {
            if min_vertices == 0 || max_vertices < min_vertices || gain_bound < 1 {
                return Err(InputError(
                    "need 1 <= min-vertices <= max-vertices and gain-bound >= 1".into(),
                ));
            }
            if exhaustive && max_vertices > torus_rigidity::sparsity::EXHAUSTIVE_BOUND {
                return Err(InputError("--exhaustive is limited to small graphs".into()));
            }
            let summary = run_corpus(&CorpusOptions {
                count,
                min_vertices,
                max_vertices,
                gain_bound,
                seed: rank.seed,
                trials: rank.trials,
                method: method(exhaustive),
                ..Default::default()
            });
            emit(out, output.as_deref(), &to_json(&summary))?;
            Ok(if summary.all_agree() {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
