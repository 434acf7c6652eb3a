//! Command-line front end for the induced-saturation toolkit.
//!
//! Exit codes follow the usual pipeline convention: 0 when the requested
//! property holds, 1 when it fails (not saturated, no witness, invalid
//! certificate, missing symmetry), 2 for usage and format errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use indsat::gf2k::{BinaryField, FieldElement};
use indsat::graph::{cayley_graph, Graph, VertexPair};
use indsat::saturation::{
    check_certificate, verify_induced_saturated, witness_for_pair, SaturationCertificate,
    SaturationError,
};
use indsat::search::{run_search, GraphFamily, SearchSpace};
use indsat::symmetry::{affine_group, pair_orbits, SymmetryError};
use indsat::{graph6, SaturationVerdict};
use serde_json::json;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "indsat",
    version,
    about = "Construct, verify, and search for induced-saturated graphs",
    after_help = "EXAMPLES:\n  \
        indsat construct --field-bits 4 --modulus 0x13 --connection cubes\n  \
        indsat construct --field-bits 4 --modulus 0x13 --connection cubes | indsat verify - --path-length 6\n  \
        indsat verify clebsch.g6 --path-length 6 --orbits --affine 4:0x13\n  \
        indsat witness clebsch.g6 --path-length 6 --pair 0,1\n  \
        indsat orbits clebsch.g6 --affine 4:0x13\n  \
        indsat search --family cayley --field-bits 4 --modulus 0x13 --path-length 6 --jobs 8\n  \
        indsat check-cert certificate.json"
)]
struct Cli {
    /// Seed for sampled self-checks; accepted for reproducible pipelines,
    /// every current subcommand is fully deterministic
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Cayley graph over GF(2^k) and print it
    Construct(ConstructArgs),
    /// Decide whether a graph is P_n-induced-saturated
    Verify(VerifyArgs),
    /// Find the witness path created by toggling a single pair
    Witness(WitnessArgs),
    /// Compute edge and non-edge orbits under the cube affine maps
    Orbits(OrbitsArgs),
    /// Exhaustively search a graph family for P_n-induced-saturated graphs
    Search(SearchArgs),
    /// Re-validate a certificate produced by verify or search
    CheckCert(CheckCertArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Graph6,
    Json,
}

#[derive(Args)]
struct ConstructArgs {
    /// Field bit-width k; the graph gets 2^k vertices
    #[arg(long)]
    field_bits: u32,
    /// Modulus polynomial mask, hex with 0x prefix or decimal (0x13 = x^4+x+1)
    #[arg(long)]
    modulus: String,
    /// `cubes` for the nonzero cubes, or a comma-separated list of element masks
    #[arg(long)]
    connection: String,
    /// Write here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Graph6)]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input graph6 file, or `-` for stdin
    input: PathBuf,
    /// Target path length n (number of vertices)
    #[arg(long)]
    path_length: usize,
    /// Verify one representative pair per orbit instead of every pair
    #[arg(long)]
    orbits: bool,
    /// Affine symmetry source `BITS:MODULUS`, e.g. 4:0x13; required by --orbits
    #[arg(long)]
    affine: Option<String>,
    /// Write the certificate or verdict here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Input graph6 file, or `-` for stdin
    input: PathBuf,
    /// Target path length n
    #[arg(long)]
    path_length: usize,
    /// The pair to toggle, as `u,v`
    #[arg(long)]
    pair: String,
    /// Write the result here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OrbitsArgs {
    /// Input graph6 file, or `-` for stdin
    input: PathBuf,
    /// Affine symmetry source `BITS:MODULUS`, e.g. 4:0x13; without it only
    /// the identity acts and every pair is its own orbit
    #[arg(long)]
    affine: Option<String>,
    /// Write the orbit listing here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Cayley graphs over GF(2^k); needs --field-bits and --modulus
    Cayley,
    /// Circulant graphs on Z_m; needs --vertices
    Circulant,
    /// All labeled graphs on m vertices; needs --vertices
    All,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Field bit-width for the cayley family
    #[arg(long)]
    field_bits: Option<u32>,
    /// Modulus mask for the cayley family
    #[arg(long)]
    modulus: Option<String>,
    /// Vertex count for the circulant and all families
    #[arg(long)]
    vertices: Option<usize>,
    /// Target path length n
    #[arg(long)]
    path_length: usize,
    /// Worker count; candidate order and results are identical for any value
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Stop after examining this many candidates
    #[arg(long)]
    limit: Option<u64>,
    /// Time budget in milliseconds, enforced between candidates
    #[arg(long)]
    time_budget_ms: Option<u64>,
    /// Allow the 2^28-candidate all-graphs space on 8 vertices
    #[arg(long)]
    allow_large: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write every hit as one graph6 string per line
    #[arg(long)]
    hits_file: Option<PathBuf>,
}

#[derive(Args)]
struct CheckCertArgs {
    /// Certificate JSON file, or `-` for stdin
    cert: PathBuf,
    /// Graph6 file the certificate must match; defaults to the graph stored
    /// in the certificate itself
    #[arg(long)]
    graph: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Orbits(args) => cmd_orbits(args),
        Command::Search(args) => cmd_search(args),
        Command::CheckCert(args) => cmd_check_cert(args),
    }
}

// ============================================================================
// Subcommands
// ============================================================================

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode> {
    let modulus = parse_mask(&args.modulus).context("invalid --modulus")?;
    let field = BinaryField::new(args.field_bits, modulus)?;
    let connection: Vec<FieldElement> = if args.connection == "cubes" {
        field.nonzero_cubes()
    } else {
        args.connection
            .split(',')
            .map(|tok| {
                let mask = parse_mask(tok.trim()).context("invalid --connection mask")?;
                field.element(mask).map_err(Into::into)
            })
            .collect::<Result<_>>()?
    };
    let graph = cayley_graph(&field, &connection)?;
    let text = match args.format {
        OutputFormat::Graph6 => graph6::encode(&graph),
        OutputFormat::Json => pretty(&json!({
            "n": graph.n_vertices(),
            "graph6": graph6::encode(&graph),
            "adjacency": graph.adjacency_lists(),
        })),
    };
    emit(args.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let graph = read_graph(&args.input)?;
    let generators = if args.orbits {
        let descriptor = args
            .affine
            .as_deref()
            .ok_or_else(|| anyhow!("--orbits requires --affine BITS:MODULUS"))?;
        Some(affine_generators(descriptor, &graph)?)
    } else {
        None
    };

    match verify_induced_saturated(&graph, args.path_length, generators.as_deref()) {
        Ok((SaturationVerdict::Saturated, Some(certificate))) => {
            emit(args.output.as_deref(), &certificate.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Ok((verdict, _)) => {
            emit(args.output.as_deref(), &pretty(&serde_json::to_value(&verdict)?))?;
            Ok(ExitCode::from(1))
        }
        Err(SaturationError::Symmetry(SymmetryError::NotAnAutomorphism { index })) => {
            eprintln!("generator {index} is not an automorphism of the input graph");
            Ok(ExitCode::from(1))
        }
        Err(err) => Err(err.into()),
    }
}

fn cmd_witness(args: WitnessArgs) -> Result<ExitCode> {
    let graph = read_graph(&args.input)?;
    let pair = parse_pair(&args.pair)?;
    if pair.v() >= graph.n_vertices() {
        bail!(
            "pair ({}, {}) out of range for a graph on {} vertices",
            pair.u(),
            pair.v(),
            graph.n_vertices()
        );
    }
    let was_edge = graph.has_edge(pair.u(), pair.v());
    let witness = witness_for_pair(&graph, pair, args.path_length)?;
    let found = witness.is_some();
    let text = pretty(&json!({
        "pair": [pair.u(), pair.v()],
        "was_edge": was_edge,
        "path": witness.map(|w| w.into_vertices()),
    }));
    emit(args.output.as_deref(), &text)?;
    Ok(if found {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_orbits(args: OrbitsArgs) -> Result<ExitCode> {
    let graph = read_graph(&args.input)?;
    let generators = match &args.affine {
        Some(descriptor) => affine_generators(descriptor, &graph)?,
        None => Vec::new(),
    };

    let edge_orbits = match pair_orbits(&graph, &generators, &graph.edges()) {
        Ok(orbits) => orbits,
        Err(SymmetryError::NotAnAutomorphism { index }) => {
            eprintln!("affine map {index} is not an automorphism of the input graph");
            return Ok(ExitCode::from(1));
        }
        Err(err) => return Err(err.into()),
    };
    let non_edge_orbits = pair_orbits(&graph, &generators, &graph.non_edges())?;

    let text = pretty(&json!({
        "edge_orbits": edge_orbits,
        "non_edge_orbits": non_edge_orbits,
    }));
    emit(args.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode> {
    let family = match args.family {
        FamilyArg::Cayley => {
            let k = args
                .field_bits
                .ok_or_else(|| anyhow!("--family cayley requires --field-bits"))?;
            let modulus_text = args
                .modulus
                .as_deref()
                .ok_or_else(|| anyhow!("--family cayley requires --modulus"))?;
            GraphFamily::CayleyZ2k {
                k,
                modulus: parse_mask(modulus_text)?,
            }
        }
        FamilyArg::Circulant => GraphFamily::Circulant {
            m: args
                .vertices
                .ok_or_else(|| anyhow!("--family circulant requires --vertices"))?,
        },
        FamilyArg::All => GraphFamily::AllGraphs {
            m: args
                .vertices
                .ok_or_else(|| anyhow!("--family all requires --vertices"))?,
        },
    };

    let mut space = SearchSpace::new(family, args.path_length)?;
    if let Some(cap) = args.limit {
        space = space.with_max_candidates(cap);
    }
    if let Some(ms) = args.time_budget_ms {
        space = space.with_time_budget(Duration::from_millis(ms));
    }
    if args.allow_large {
        space = space.allow_large();
    }

    let report = run_search(&space, args.jobs)?;
    if let Some(path) = &args.hits_file {
        let mut lines = String::new();
        for hit in &report.hits {
            lines.push_str(&hit.graph);
            lines.push('\n');
        }
        fs::write(path, lines).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(args.output.as_deref(), &pretty(&serde_json::to_value(&report)?))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_cert(args: CheckCertArgs) -> Result<ExitCode> {
    let text = read_input(&args.cert)?;
    let certificate =
        SaturationCertificate::from_json(&text).context("malformed certificate JSON")?;
    let graph = match &args.graph {
        Some(path) => read_graph(path)?,
        None => graph6::decode(&certificate.graph).context("certificate holds no valid graph6")?,
    };
    // a graph mismatch is a usage error (exit 2), unlike a failed validation
    let valid = check_certificate(&certificate, &graph)?;
    println!("{}", pretty(&json!({ "valid": valid })));
    Ok(if valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// ============================================================================
// Shared plumbing
// ============================================================================

/// Accepts `0x`-prefixed hex or plain decimal.
fn parse_mask(text: &str) -> Result<u32> {
    let parsed = if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        u32::from_str_radix(hex, 16)
    } else {
        text.parse()
    };
    parsed.with_context(|| format!("invalid mask {text:?}"))
}

fn parse_pair(text: &str) -> Result<VertexPair> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| anyhow!("pair must be given as u,v"))?;
    let u: usize = a.trim().parse().context("invalid pair")?;
    let v: usize = b.trim().parse().context("invalid pair")?;
    VertexPair::new(u, v).map_err(Into::into)
}

/// Parses `BITS:MODULUS` and materializes the cube-multiplier affine maps,
/// checking that the graph has the field's 2^k vertices.
fn affine_generators(descriptor: &str, graph: &Graph) -> Result<Vec<Vec<usize>>> {
    let (bits, modulus) = descriptor
        .split_once(':')
        .ok_or_else(|| anyhow!("affine argument must be BITS:MODULUS, e.g. 4:0x13"))?;
    let bits: u32 = bits.trim().parse().context("invalid affine bit-width")?;
    let field = BinaryField::new(bits, parse_mask(modulus.trim())?)?;
    if graph.n_vertices() != field.order() as usize {
        bail!(
            "graph has {} vertices but the affine field has {}",
            graph.n_vertices(),
            field.order()
        );
    }
    affine_group(&field, &field.nonzero_cubes()).map_err(Into::into)
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .context("reading stdin")?;
        Ok(buffer)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = read_input(path)?;
    graph6::decode(&text).map_err(Into::into)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            let mut owned = text.to_string();
            if !owned.ends_with('\n') {
                owned.push('\n');
            }
            fs::write(path, owned).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON serialization")
}
