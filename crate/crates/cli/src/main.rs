//! `blockinv`: distance matrices, block decompositions, inverses and
//! determinants from the command line.
//!
//! Exit status: 0 on success, 1 when a formula disagrees with the exact
//! oracle, 2 on unusable input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blockinv::bags::{bag_inverse, classify, generic_bag, verify, BagError};
use blockinv::compose::{cactoid_det, invert_distance_matrix, ComposeError, CompositionResult};
use blockinv::generators::{gen_cactoid, gen_tree, GenSpec, WeightKind};
use blockinv::graph::{distance_matrix, Graph};
use blockinv::linalg::{
    cofactor_sum, det_bareiss, format_rational, inverse_exact, LinalgError, RMatrix, Rational,
};
use blockinv::{block_decompose, generalized_distance_matrix};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "blockinv",
    version,
    about = "Exact distance-matrix inverses and determinants via block decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the distance matrix of a graph.
    Dmat {
        /// Graph file (edge list or JSON); `-` reads standard input.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
        format: MatrixFormat,
    },
    /// Print the block decomposition of a graph.
    Blocks { file: PathBuf },
    /// Invert the distance matrix through per-block bags.
    Invert {
        file: PathBuf,
        /// Compare against the elimination-based inverse; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
        /// Treat the input as a CSV matrix instead of a graph.
        #[arg(long)]
        matrix: bool,
    },
    /// Determinant and cofactor sum of the distance matrix.
    Det {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DetMethod::Both)]
        method: DetMethod,
        #[arg(long)]
        matrix: bool,
    },
    /// Check the bag conditions for every block and for the composition.
    Verify {
        file: PathBuf,
        #[arg(long)]
        matrix: bool,
    },
    /// Generate a random instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Weighted cactoid digraph: directed cycles glued at single vertices.
    Cactoid {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        blocks: usize,
        #[arg(long, default_value_t = 2)]
        min_len: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Weights::Positive)]
        weights: Weights,
        /// Largest numerator and denominator for rational weights.
        #[arg(long, default_value_t = 20)]
        bound: u32,
        /// Force one block to have second weight zero.
        #[arg(long)]
        allow_zero_lambda: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Random tree with unit edges.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(clap::Args)]
struct OutArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
    format: GraphFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edges,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DetMethod {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weights {
    Unit,
    Positive,
    Signed,
}

enum Failure {
    Input(String),
    Mismatch(String),
}

type CmdResult = Result<Value, Failure>;

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(input)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read_text(path)?).map_err(input)
}

fn read_matrix(path: &Path) -> Result<RMatrix, Failure> {
    let m = RMatrix::from_csv(&read_text(path)?).map_err(input)?;
    if !m.is_square() || m.rows() == 0 {
        return Err(Failure::Input(format!(
            "expected a nonempty square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

/// Shortest-path distances for positive weights, the block-assembled
/// generalized distance matrix otherwise.
fn graph_matrix(g: &Graph) -> Result<(RMatrix, bool), Failure> {
    if g.has_positive_weights() {
        Ok((distance_matrix(g).map_err(input)?, false))
    } else {
        Ok((generalized_distance_matrix(g).map_err(input)?, true))
    }
}

fn compose_failure(e: ComposeError) -> Failure {
    match e {
        ComposeError::BlockNotIsometric { .. } | ComposeError::IdentityFailure(_) => {
            Failure::Mismatch(e.to_string())
        }
        _ => Failure::Input(e.to_string()),
    }
}

fn cmd_dmat(file: &Path, format: MatrixFormat) -> Result<String, Failure> {
    let g = read_graph(file)?;
    let (d, generalized) = graph_matrix(&g)?;
    if generalized {
        eprintln!("note: weights are not all positive; emitting the block-assembled generalized distance matrix");
    }
    Ok(match format {
        MatrixFormat::Csv => d.to_csv(),
        MatrixFormat::Json => pretty(&json!({
            "labels": g.names(),
            "matrix": d,
            "generalized": generalized,
        })),
    })
}

fn cmd_blocks(file: &Path) -> CmdResult {
    let g = read_graph(file)?;
    Ok(block_decompose(&g).map_err(input)?.to_json_value())
}

fn check_against_oracle(res: &CompositionResult, d: &RMatrix) -> Result<Value, Failure> {
    match (&res.inverse, inverse_exact(d)) {
        (Some(inv), Ok(oracle)) if inv.entries_eq(&oracle) => Ok(json!({"oracle_agrees": true})),
        (Some(_), Ok(_)) => Err(Failure::Mismatch(
            "bag inverse differs from the oracle inverse".into(),
        )),
        (None, Err(LinalgError::Singular)) => Ok(json!({"oracle_agrees": true})),
        (None, Ok(_)) => Err(Failure::Mismatch(
            "lambda is zero but the oracle finds D invertible".into(),
        )),
        (Some(_), Err(e)) => Err(Failure::Mismatch(format!(
            "oracle failed on an inverted matrix: {e}"
        ))),
        (None, Err(e)) => Err(Failure::Input(e.to_string())),
    }
}

fn cmd_invert(file: &Path, check: bool, matrix: bool) -> CmdResult {
    if matrix {
        return invert_matrix(file, check);
    }
    let g = read_graph(file)?;
    let res = invert_distance_matrix(&g).map_err(compose_failure)?;
    let mut out = res.to_json_value();
    if check {
        let (d, _) = graph_matrix(&g)?;
        out["check"] = check_against_oracle(&res, &d)?;
    }
    Ok(out)
}

fn invert_matrix(file: &Path, check: bool) -> CmdResult {
    let d = read_matrix(file)?;
    let mut out = match generic_bag(&d) {
        Ok(bag) => {
            let inv = bag_inverse(&bag).map_err(|e| Failure::Mismatch(e.to_string()))?;
            if check {
                let oracle = inverse_exact(&d).map_err(|e| Failure::Mismatch(e.to_string()))?;
                if !inv.entries_eq(&oracle) {
                    return Err(Failure::Mismatch(
                        "bag inverse differs from the oracle inverse".into(),
                    ));
                }
            }
            let mut v = bag.to_json_value();
            v["invertible"] = json!(true);
            v["inverse"] = json!(inv);
            v
        }
        Err(BagError::Singular) => json!({"invertible": false, "lambda": "0"}),
        Err(BagError::ZeroRowSumInverse) => {
            // invertible, but no bag with nonzero lambda exists
            let inv = inverse_exact(&d).map_err(input)?;
            json!({"invertible": true, "lambda": null, "inverse": inv})
        }
        Err(e) => return Err(input(e)),
    };
    if check {
        out["check"] = json!({"oracle_agrees": true});
    }
    Ok(out)
}

fn det_json(det: &Rational, cof: &Rational) -> Value {
    json!({"det": format_rational(det), "cof": format_rational(cof)})
}

/// `formula` is the cactoid closed form together with the GHH composition
/// of per-block values; `oracle` is elimination on the whole matrix.
fn cmd_det(file: &Path, method: DetMethod, matrix: bool) -> CmdResult {
    let mut candidates: Vec<(&str, Rational, Rational)> = Vec::new();
    let mut out = json!({});
    let d = if matrix {
        if method != DetMethod::Oracle {
            return Err(Failure::Input(
                "a bare matrix has no closed form; use --method oracle".into(),
            ));
        }
        read_matrix(file)?
    } else {
        let g = read_graph(file)?;
        if method != DetMethod::Oracle {
            let closed = cactoid_det(&g).map_err(input)?;
            let composed = invert_distance_matrix(&g).map_err(compose_failure)?;
            out["formula"] = det_json(&closed.det, &closed.cof);
            out["formula"]["lambda"] = json!(format_rational(&closed.lambda));
            out["ghh"] = det_json(&composed.det, &composed.cof);
            candidates.push(("closed form", closed.det, closed.cof));
            candidates.push(("GHH composition", composed.det, composed.cof));
        }
        graph_matrix(&g)?.0
    };
    out["order"] = json!(d.rows());
    if method != DetMethod::Formula {
        let (det, cof) = (det_bareiss(&d), cofactor_sum(&d));
        out["oracle"] = det_json(&det, &cof);
        candidates.push(("oracle", det, cof));
    }
    let (first, det0, cof0) = &candidates[0];
    if let Some((name, det, cof)) = candidates
        .iter()
        .find(|(_, det, cof)| det != det0 || cof != cof0)
    {
        return Err(Failure::Mismatch(format!(
            "{first} gives (det {det0}, cof {cof0}) but {name} gives (det {det}, cof {cof})"
        )));
    }
    out["agree"] = json!(true);
    Ok(out)
}

fn cmd_verify(file: &Path, matrix: bool) -> CmdResult {
    if matrix {
        let d = read_matrix(file)?;
        let mut out = json!({"classification": classify(&d)});
        if let Ok(bag) = generic_bag(&d) {
            out["bag"] = json!(verify(&bag));
        }
        return Ok(out);
    }
    let g = read_graph(file)?;
    let res = invert_distance_matrix(&g).map_err(compose_failure)?;
    let (d, _) = graph_matrix(&g)?;
    let summary = res.to_json_value();
    let blocks: Vec<Value> = res
        .per_block
        .iter()
        .zip(summary["blocks"].as_array().expect("blocks array"))
        .map(|(b, s)| {
            json!({
                "index": b.index,
                "vertices": b.vertices,
                "kind": b.kind,
                "lambda": s["lambda"],
                "lambda_zero": s["lambda_zero"],
                "verdict": b.verdict,
            })
        })
        .collect();
    let ok = res.verdict.both() && res.per_block.iter().all(|b| b.verdict.both());
    let out = json!({
        "blocks": blocks,
        "composed": res.verdict,
        "lambda": format_rational(&res.lambda_total),
        "classification": classify(&d),
        "ok": ok,
    });
    if ok {
        Ok(out)
    } else {
        println!("{}", pretty(&out));
        Err(Failure::Mismatch("bag conditions fail".into()))
    }
}

/// `BLOCKINV_SEED`, when set, replaces the seed given on the command line.
fn effective_seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var("BLOCKINV_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| {
            Failure::Input(format!(
                "BLOCKINV_SEED={s:?} is not a 64-bit unsigned integer"
            ))
        }),
        Err(_) => Ok(flag),
    }
}

fn cmd_gen(kind: GenKind) -> Result<(), Failure> {
    let (g, out) = match kind {
        GenKind::Cactoid {
            seed,
            blocks,
            min_len,
            max_len,
            weights,
            bound,
            allow_zero_lambda,
            out,
        } => {
            let weight_kind = match weights {
                Weights::Unit => WeightKind::Unit,
                Weights::Positive => WeightKind::PositiveRational { bound },
                Weights::Signed => WeightKind::SignedRational { bound },
            };
            let mut spec =
                GenSpec::new(effective_seed(seed)?, blocks, min_len, max_len, weight_kind);
            spec.allow_zero_lambda = allow_zero_lambda;
            (gen_cactoid(&spec).map_err(input)?, out)
        }
        GenKind::Tree { n, seed, out } => (gen_tree(n, effective_seed(seed)?).map_err(input)?, out),
    };
    let text = match out.format {
        GraphFormat::Edges => g.to_edge_list(),
        GraphFormat::Json => g.to_json() + "\n",
    };
    match out.out {
        Some(path) => {
            fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => io::stdout().write_all(text.as_bytes()).map_err(input),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn run(cli: Cli) -> Result<(), Failure> {
    let text = match cli.command {
        Command::Dmat { file, format } => cmd_dmat(&file, format)?,
        Command::Blocks { file } => pretty(&cmd_blocks(&file)?),
        Command::Invert {
            file,
            check,
            matrix,
        } => pretty(&cmd_invert(&file, check, matrix)?),
        Command::Det {
            file,
            method,
            matrix,
        } => pretty(&cmd_det(&file, method, matrix)?),
        Command::Verify { file, matrix } => pretty(&cmd_verify(&file, matrix)?),
        Command::Gen { kind } => return cmd_gen(kind),
    };
    io::stdout().write_all(text.as_bytes()).map_err(input)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("blockinv: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("blockinv: {msg}");
            ExitCode::from(2)
        }
    }
}
