//! Batch front end: tokenize graphs, generate gadget pairs and synthetic
//! datasets, decide planarity, and run the theorem verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.
//! All outputs are deterministic under a fixed `--seed` and are written
//! atomically (temp file + rename).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphtok::analysis::{run_verification_suite, CheckTag, SuiteConfig, VerificationReport};
use graphtok::constructions::{
    bipartite_twin_pair, bridge_pair_graph, clique_join_twin_pair, disjointness_triangle_gadget,
    disjointness_witness, erdos_renyi, planar_gm_pair, s5_walk_gadget, BitMatrix, Permutation5,
};
use graphtok::planarity::is_planar;
use graphtok::tokens::{self, SpectrumEnd, TokenMatrix};
use graphtok::{Graph, LaplacianKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fixed default seed; every random artifact is reproducible without flags.
const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "graphtok",
    version,
    about = "Graph tokenization and verification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tokenize a graph file into a CSV plus a JSON sidecar.
    Tokenize(TokenizeArgs),
    /// Generate gadget pairs or synthetic datasets.
    Generate(GenerateArgs),
    /// Decide planarity of a graph file.
    Planarity(PlanarityArgs),
    /// Run the theorem verification suite.
    Verify(VerifyArgs),
    /// Re-render a saved verification report.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Spectral,
    Rw,
    Adjacency,
    AdjacencyProjected,
    Combined,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Smallest,
    Largest,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Combinatorial,
    SymNormalized,
}

#[derive(Args)]
struct TokenizeArgs {
    /// Input graph JSON: {"n": int, "edges": [[u, v], ...]}.
    graph: PathBuf,
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Spectral level (number of eigenpairs kept); defaults to full.
    #[arg(long)]
    k: Option<usize>,
    /// Random-walk length.
    #[arg(long)]
    t: Option<usize>,
    /// Which end of the spectrum a truncation keeps.
    #[arg(long, value_enum, default_value = "smallest")]
    which: WhichArg,
    /// Laplacian for the spectral family.
    #[arg(long, value_enum, default_value = "combinatorial")]
    kind: KindArg,
    /// Drop the trivial eigenvector before slicing.
    #[arg(long, default_value_t = false)]
    drop_trivial: bool,
    /// Projection dimension for the projected adjacency family.
    #[arg(long)]
    dtr: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Pad the token matrix with zero columns to this width.
    #[arg(long)]
    pad: Option<usize>,
    /// Output CSV path; the sidecar lands next to it with ".json" appended.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum GenerateKind {
    GmPair,
    BipartiteTwin,
    CliqueJoinTwin,
    S5Gadget,
    Disjointness,
    BridgePairs,
    Er,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: GenerateKind,
    /// Node count (twin pairs, bridge pairs, er) or bit-matrix size
    /// (disjointness).
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability for the random generators.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Number of graphs for dataset kinds.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Chain length (number of permutations) for the walk gadget.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Source index in the first layer.
    #[arg(long, default_value_t = 0)]
    s: usize,
    /// Target index in the last layer.
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PlanarityArgs {
    graph: PathBuf,
    /// Write the verdict JSON here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated check tags (t1, t3, t4, t5, t7, lemma, detector);
    /// default runs everything.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    report: PathBuf,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Tokenize(args) => cmd_tokenize(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Planarity(args) => cmd_planarity(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Report(args) => cmd_report(args),
    }
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Graph::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Writes via a temp file in the destination directory plus an atomic
/// rename, so partially written artifacts never appear under `path`.
fn write_atomic(path: &Path, contents: &str) -> Result<(), String> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut file = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
        .map_err(|e| format!("cannot create temp file near {}: {e}", path.display()))?;
    std::io::Write::write_all(&mut file, contents.as_bytes())
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    file.persist(path)
        .map_err(|e| format!("cannot persist {}: {e}", path.display()))?;
    Ok(())
}

fn cmd_tokenize(args: TokenizeArgs) -> Result<ExitCode, String> {
    let graph = read_graph(&args.graph)?;
    let which = match args.which {
        WhichArg::Smallest => SpectrumEnd::Smallest,
        WhichArg::Largest => SpectrumEnd::Largest,
    };
    let kind = match args.kind {
        KindArg::Combinatorial => LaplacianKind::Combinatorial,
        KindArg::SymNormalized => LaplacianKind::SymNormalized,
    };

    let spectral = |g: &Graph| {
        tokens::spectral_tokens(g, args.k, kind, which, args.drop_trivial)
            .map_err(|e| e.to_string())
    };
    let walk = |g: &Graph| -> Result<TokenMatrix, String> {
        let t = args.t.ok_or("--t is required for the rw family")?;
        tokens::rw_tokens(g, t).map_err(|e| e.to_string())
    };
    let projected = |g: &Graph| -> Result<TokenMatrix, String> {
        let dtr = args
            .dtr
            .ok_or("--dtr is required for the adjacency-projected family")?;
        tokens::adjacency_projected_tokens(g, dtr, args.seed).map_err(|e| e.to_string())
    };

    let mut matrix = match args.family {
        FamilyArg::Spectral => spectral(&graph)?,
        FamilyArg::Rw => walk(&graph)?,
        FamilyArg::Adjacency => tokens::adjacency_tokens(&graph),
        FamilyArg::AdjacencyProjected => projected(&graph)?,
        FamilyArg::Combined => {
            let parts = vec![
                spectral(&graph)?,
                walk(&graph)?,
                tokens::adjacency_tokens(&graph),
            ];
            tokens::combined_tokens(&parts).map_err(|e| e.to_string())?
        }
    };
    if let Some(width) = args.pad {
        matrix = tokens::pad_tokens(&matrix, width).map_err(|e| e.to_string())?;
    }

    write_atomic(&args.out, &matrix.to_csv())?;
    let mut sidecar = args.out.clone().into_os_string();
    sidecar.push(".json");
    let mut sidecar_text = matrix.sidecar_json();
    sidecar_text.push('\n');
    write_atomic(Path::new(&sidecar), &sidecar_text)?;
    Ok(ExitCode::SUCCESS)
}

fn json_graph(g: &Graph) -> serde_json::Value {
    serde_json::to_value(g).expect("graph serialization cannot fail")
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let need_n = || {
        args.n
            .ok_or_else(|| "--n is required for this kind".to_string())
    };

    let value = match args.kind {
        GenerateKind::GmPair => serde_json::to_value(planar_gm_pair()).unwrap(),
        GenerateKind::BipartiteTwin => {
            serde_json::to_value(bipartite_twin_pair(need_n()?).map_err(|e| e.to_string())?)
                .unwrap()
        }
        GenerateKind::CliqueJoinTwin => {
            serde_json::to_value(clique_join_twin_pair(need_n()?).map_err(|e| e.to_string())?)
                .unwrap()
        }
        GenerateKind::S5Gadget => {
            let perms: Vec<Permutation5> = (0..args.k)
                .map(|_| Permutation5::random(&mut rng))
                .collect();
            let gadget = s5_walk_gadget(&perms, args.s, args.t).map_err(|e| e.to_string())?;
            let exists = gadget.spanning_walk_exists().map_err(|e| e.to_string())?;
            let mut value = serde_json::to_value(&gadget).unwrap();
            value["perms"] = serde_json::to_value(&perms).unwrap();
            value["spanning_walk_exists"] = exists.into();
            value
        }
        GenerateKind::Disjointness => {
            let n = need_n()?;
            let a = BitMatrix::random(n, args.p, &mut rng);
            let b = BitMatrix::random(n, args.p, &mut rng);
            let g = disjointness_triangle_gadget(&a, &b).map_err(|e| e.to_string())?;
            let rows = |m: &BitMatrix| -> Vec<Vec<u8>> {
                (0..n)
                    .map(|i| (0..n).map(|j| u8::from(m.get(i, j))).collect())
                    .collect()
            };
            serde_json::json!({
                "n": n,
                "a": rows(&a),
                "b": rows(&b),
                "graph": json_graph(&g),
                "has_triangle": disjointness_witness(&a, &b),
            })
        }
        GenerateKind::BridgePairs => {
            let n = need_n()?;
            let mut graphs = Vec::new();
            let mut labels = Vec::new();
            for i in 0..args.count {
                let connected = i % 2 == 0;
                let g =
                    bridge_pair_graph(n, args.p, connected, &mut rng).map_err(|e| e.to_string())?;
                graphs.push(json_graph(&g));
                labels.push(u8::from(connected));
            }
            serde_json::json!({ "graphs": graphs, "labels": labels })
        }
        GenerateKind::Er => {
            let n = need_n()?;
            let mut graphs = Vec::new();
            let mut labels = Vec::new();
            for _ in 0..args.count {
                let g = erdos_renyi(n, args.p, &mut rng).map_err(|e| e.to_string())?;
                labels.push(u8::from(g.is_connected()));
                graphs.push(json_graph(&g));
            }
            serde_json::json!({ "graphs": graphs, "labels": labels })
        }
    };

    let mut text = serde_json::to_string_pretty(&value).unwrap();
    text.push('\n');
    write_atomic(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_planarity(args: PlanarityArgs) -> Result<ExitCode, String> {
    let graph = read_graph(&args.graph)?;
    let verdict = is_planar(&graph);
    let mut text = serde_json::to_string_pretty(&verdict).unwrap();
    text.push('\n');
    print!("{text}");
    if let Some(out) = args.out {
        write_atomic(&out, &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let only = match args.only {
        None => None,
        Some(tags) => {
            let mut set = BTreeSet::new();
            for tag in tags {
                set.insert(CheckTag::parse(&tag).map_err(|e| e.to_string())?);
            }
            Some(set)
        }
    };
    let cfg = SuiteConfig {
        seed: args.seed,
        only,
        ..SuiteConfig::default()
    };
    let report = run_verification_suite(&cfg);
    print!("{}", report.summary());
    if let Some(out) = args.out {
        let mut text = report.to_json();
        text.push('\n');
        write_atomic(&out, &text)?;
    }
    Ok(if report.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_report(args: ReportArgs) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(&args.report)
        .map_err(|e| format!("cannot read {}: {e}", args.report.display()))?;
    let report = VerificationReport::from_json(&text)
        .map_err(|e| format!("{}: {e}", args.report.display()))?;
    print!("{}", report.summary());
    Ok(if report.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
