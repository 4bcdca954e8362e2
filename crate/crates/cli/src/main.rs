//! `borelcoder`: encode, decode, verify and generate.
//!
//! Exit codes: 0 success, 1 verification failures, 2 unreadable input,
//! 3 invalid configuration.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use borelcoder_core::deeptree::{assign_diffs, DiffAssignmentJson};
use borelcoder_core::gen::{random_bipartite, random_colored_tree, random_digraph, random_tree, rng};
use borelcoder_core::graphcode::{
    build_code, build_multiscale, decode_multiscale, decode_tree_from_code, GraphCodeJson, ScaleSequence, Variant,
};
use borelcoder_core::json::{
    colored_tree_from_str, graph_from_str, structure_from_str, tree_from_str, ColoredTreeJson, GraphJson,
    StructureJson, TreeJson,
};
use borelcoder_core::packing::{e_star_table, pair_bound_table};
use borelcoder_core::treecode::{
    decode_colored_tree, decode_colored_tree_with_library, decode_structure, encode_colored_tree,
    encode_colored_tree_with_library, encode_structure, make_special_family, minimal_horizon, DepthHorizon, Manifest,
    PairingFn,
};
use borelcoder_core::verify::{run_suite, Suite, VerifyConfig};
use borelcoder_core::{BipartiteGraph, ColoredTree, FinTree, Signature};

#[derive(Parser)]
#[command(
    name = "borelcoder",
    version,
    about = "Isomorphism-preserving codes between structures, trees and graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Kind {
    Structure,
    ColoredTree,
    Tree,
    Graph,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Table {
    EStar,
    PairBound,
}

#[derive(clap::Args, Clone, Debug)]
struct CodeArgs {
    #[arg(long, default_value = "paired")]
    variant: Variant,
    /// Block parameter of a single-scale code.
    #[arg(long, conflicts_with = "scales")]
    m: Option<usize>,
    /// Comma-separated scales of a multiscale code, e.g. `1,8`.
    #[arg(long, value_delimiter = ',')]
    scales: Option<Vec<usize>>,
    /// Spine length of the tree code; defaults to the smallest that fits.
    #[arg(long)]
    horizon: Option<usize>,
    /// `cantor+2` or `library`.
    #[arg(long, default_value = "cantor+2")]
    pairing: String,
    /// Tuple length encoded for structures.
    #[arg(long, default_value_t = 2)]
    depth: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a structure, colored tree or tree down to a bipartite graph.
    Encode {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        code: CodeArgs,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Decode a graph written by `encode`, guided by its manifest.
    Decode {
        graph: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        suite: String,
        #[arg(long, default_value = "paired")]
        variant: Variant,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<usize>>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_nodes: Option<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a seeded random instance as JSON.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a bound table, or a scale assignment, as CSV or JSON.
    Table {
        #[arg(value_enum)]
        table: Table,
        #[arg(long, default_value_t = 10)]
        max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the difference assignment for a depth and width as JSON.
    Diffs {
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        width: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn input_error(e: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, err: e.into() }
}

fn config_error(e: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 3, err: e.into() }
}

fn io_error(e: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 1, err: e.into() }
}

/// Everything `decode` needs to invert `encode`.
#[derive(Serialize, Deserialize, Debug, Clone)]
struct PipelineManifest {
    kind: Kind,
    variant: Variant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scales: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tree_code: Option<Manifest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signature: Option<BTreeMap<String, usize>>,
}

enum Scale {
    Single(usize),
    Multi(ScaleSequence),
}

impl Scale {
    fn from_args(m: Option<usize>, scales: Option<Vec<usize>>) -> Result<Self, Failure> {
        match (m, scales) {
            (_, Some(s)) => Ok(Scale::Multi(ScaleSequence::new(s).map_err(config_error)?)),
            (Some(0), None) => Err(config_error(anyhow!("m must be positive"))),
            (m, None) => Ok(Scale::Single(m.unwrap_or(1))),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_threads() {
        eprintln!("error: {:#}", f.err);
        return ExitCode::from(f.code);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("BORELCODER_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| config_error(anyhow!("BORELCODER_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(config_error)
}

/// Returns whether the command succeeded without verification failures.
fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Encode { input, kind, code, out } => encode(&input, kind, &code, &out).map(|_| true),
        Command::Decode { graph, manifest, out } => decode(&graph, &manifest, out.as_deref()).map(|_| true),
        Command::Verify {
            suite,
            variant,
            m,
            scales,
            horizon,
            seed,
            max_nodes,
            samples,
            out,
        } => {
            let suite: Suite = suite.parse().map_err(config_error)?;
            let config = VerifyConfig {
                variant,
                m,
                scales,
                horizon,
                seed,
                max_nodes,
                samples,
            };
            let report = run_suite(suite, &config).map_err(config_error)?;
            emit(out.as_deref(), &to_json(&report)?)?;
            Ok(report.ok())
        }
        Command::Gen {
            kind,
            seed,
            max_nodes,
            out,
        } => {
            let mut r = rng(seed);
            let text = match kind {
                Kind::Tree => to_json(&TreeJson::from(&random_tree(&mut r, max_nodes)))?,
                Kind::ColoredTree => to_json(&ColoredTreeJson::from(&random_colored_tree(&mut r, max_nodes, 3, 8)))?,
                Kind::Structure => to_json(&StructureJson::from(&random_digraph(
                    &mut r,
                    max_nodes.clamp(1, 16) as u32,
                )))?,
                Kind::Graph => {
                    let half = max_nodes.max(2) as u32 / 2;
                    to_json(&GraphJson::from(&random_bipartite(&mut r, half, half, 0.5)))?
                }
            };
            emit(out.as_deref(), &text).map(|_| true)
        }
        Command::Table { table, max, out } => {
            let text = match table {
                Table::EStar => e_star_table(max),
                Table::PairBound => pair_bound_table(max),
            };
            emit(out.as_deref(), &text).map(|_| true)
        }
        Command::Diffs { depth, width, out } => {
            let a = assign_diffs(depth, width).map_err(config_error)?;
            emit(out.as_deref(), &to_json(&DiffAssignmentJson::from(&a))?).map(|_| true)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(io_error)
}

/// Writes `text`, newline-terminated, to `out` or stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let text = if text.ends_with('\n') {
        text.to_owned()
    } else {
        format!("{text}\n")
    };
    match out {
        Some(p) => fs::write(p, text)
            .with_context(|| format!("writing {}", p.display()))
            .map_err(io_error),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            // a closed reader is not our failure
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(io_error(e)),
            _ => Ok(()),
        },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input_error)
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, borelcoder_core::json::JsonError>) -> Result<T, Failure> {
    let text = read(path)?;
    f(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(input_error)
}

/// Tree code of a colored tree under the chosen pairing.
fn colored_to_tree(ct: &ColoredTree, args: &CodeArgs) -> Result<(FinTree, Manifest), Failure> {
    if args.pairing == "library" {
        let size = ct.max_color().map_or(1, |c| c as usize + 1);
        let lib = make_special_family(size).map_err(config_error)?;
        let d = match args.horizon {
            Some(h) => DepthHorizon::new(h).map_err(config_error)?,
            None => lib.minimal_horizon(ct).map_err(config_error)?,
        };
        let t = encode_colored_tree_with_library(ct, &lib, d).map_err(config_error)?;
        return Ok((t, Manifest::for_library(d, size)));
    }
    let phi = PairingFn::from_name(&args.pairing).ok_or_else(|| {
        config_error(anyhow!(
            "unknown pairing {:?}; expected cantor+2 or library",
            args.pairing
        ))
    })?;
    let d = match args.horizon {
        Some(h) => DepthHorizon::new(h).map_err(config_error)?,
        None => minimal_horizon(ct, phi).map_err(config_error)?,
    };
    let t = encode_colored_tree(ct, phi, d).map_err(config_error)?;
    Ok((t, Manifest::for_pairing(d, phi)))
}

fn encode(input: &Path, kind: Kind, args: &CodeArgs, out: &Path) -> Result<(), Failure> {
    let scale = Scale::from_args(args.m, args.scales.clone())?;
    fs::create_dir_all(out)
        .with_context(|| format!("creating {}", out.display()))
        .map_err(io_error)?;
    let mut manifest = PipelineManifest {
        kind,
        variant: args.variant,
        m: None,
        scales: None,
        tree_code: None,
        depth: None,
        signature: None,
    };
    let tree = match kind {
        Kind::Tree => parse(input, tree_from_str)?,
        Kind::ColoredTree => {
            let ct = parse(input, colored_tree_from_str)?;
            let (t, m) = colored_to_tree(&ct, args)?;
            manifest.tree_code = Some(m);
            t
        }
        Kind::Structure => {
            let s = parse(input, structure_from_str)?;
            let ct = encode_structure(&s, args.depth).map_err(config_error)?;
            emit(
                Some(&out.join("colored_tree.json")),
                &to_json(&ColoredTreeJson::from(&ct))?,
            )?;
            let (t, m) = colored_to_tree(&ct, args)?;
            manifest.tree_code = Some(m);
            manifest.depth = Some(args.depth);
            manifest.signature = Some(s.signature().symbols().iter().cloned().collect());
            t
        }
        Kind::Graph => return Err(config_error(anyhow!("graphs are already fully encoded"))),
    };
    if kind != Kind::Tree {
        emit(Some(&out.join("tree.json")), &to_json(&TreeJson::from(&tree))?)?;
    }
    let graph_text = match &scale {
        Scale::Single(m) => {
            manifest.m = Some(*m);
            let code = build_code(&tree, *m, args.variant).map_err(config_error)?;
            to_json(&GraphCodeJson::from(&code))?
        }
        Scale::Multi(s) => {
            manifest.scales = Some(s.values().to_vec());
            let g = build_multiscale(&tree, s, args.variant).map_err(config_error)?;
            to_json(&GraphJson::from(&g))?
        }
    };
    emit(Some(&out.join("graph.json")), &graph_text)?;
    emit(Some(&out.join("manifest.json")), &to_json(&manifest)?)?;
    Ok(())
}

fn decode(graph: &Path, manifest: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let man: PipelineManifest = {
        let text = read(manifest)?;
        serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", manifest.display()))
            .map_err(input_error)?
    };
    let g: BipartiteGraph = parse(graph, graph_from_str)?;
    let tree = match Scale::from_args(man.m, man.scales.clone())? {
        Scale::Single(m) => decode_tree_from_code(&g, m),
        Scale::Multi(s) => decode_multiscale(&g, Some(&s)),
    }
    .context("decoding the graph")
    .map_err(io_error)?;
    let text = match man.kind {
        Kind::Tree => to_json(&TreeJson::from(&tree))?,
        Kind::ColoredTree | Kind::Structure => {
            let tc = man
                .tree_code
                .as_ref()
                .ok_or_else(|| input_error(anyhow!("manifest lacks tree_code")))?;
            let d = DepthHorizon::new(tc.horizon).map_err(input_error)?;
            let ct = if let Some(size) = tc.library {
                let lib = make_special_family(size).map_err(input_error)?;
                decode_colored_tree_with_library(&tree, &lib, d)
            } else {
                let phi = PairingFn::from_name(&tc.pairing)
                    .ok_or_else(|| input_error(anyhow!("unknown pairing {:?}", tc.pairing)))?;
                decode_colored_tree(&tree, phi, d)
            }
            .context("decoding the tree code")
            .map_err(io_error)?;
            if man.kind == Kind::ColoredTree {
                to_json(&ColoredTreeJson::from(&ct))?
            } else {
                let sig = man
                    .signature
                    .clone()
                    .ok_or_else(|| input_error(anyhow!("manifest lacks signature")))?;
                let sig = Signature::new(sig.into_iter().collect()).map_err(input_error)?;
                let s = decode_structure(&ct, &sig)
                    .context("decoding the structure")
                    .map_err(io_error)?;
                to_json(&StructureJson::from(&s))?
            }
        }
        Kind::Graph => return Err(input_error(anyhow!("manifest kind graph has nothing to decode"))),
    };
    emit(out, &text)
}
