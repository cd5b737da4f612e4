//! Command-line interface for Brauer-complex computations.
//!
//! Exit codes: 0 success, 1 parse/validation error, 2 unknown edge or
//! single-edge complex in `transform`, 3 nonzero genus in `equiv`.
//! Diagnostics go to stderr as JSON; results go to stdout.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use brauer_core::algebra::{build_algebra, center_formula, center_nilpotency_multiset, center_oracle};
use brauer_core::genus0::{decide_equivalent, Equivalence, SearchLimits};
use brauer_core::invariants::signature;
use brauer_core::io::{parse_complex, to_dot, to_json, QuiverDocument};
use brauer_core::orbit;
use brauer_core::quiver::derive_quiver;
use brauer_core::ribbon::BrauerComplex;
use brauer_core::tilting::{apply_move, MoveError};

#[derive(Parser)]
#[command(name = "brauer", about = "Brauer complexes: invariants, tilting moves, equivalence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant signature of a complex.
    Invariants { file: String },
    /// Apply the tilting transformation at an edge.
    Transform {
        file: String,
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Decide derived equivalence of two genus-0 complexes.
    Equiv {
        file1: String,
        file2: String,
        #[arg(long)]
        witness: bool,
    },
    /// Explore the orbit of a complex under tilting moves.
    Orbit {
        file: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Enumerate all complexes within budgets and report orbit structure.
    Census {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        mult: u32,
        #[arg(long)]
        csv: Option<String>,
    },
    /// Print the center basis and the brute-force center dimension.
    Center { file: String },
    /// Print the extended quiver.
    Quiver { file: String },
    /// Export the 1-skeleton as DOT.
    ExportDot { file: String },
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("{}", json!({ "error": message.to_string() }));
    ExitCode::from(code)
}

fn load(path: &str) -> Result<BrauerComplex, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    parse_complex(&text).map_err(|e| format!("{path}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Invariants { file } => match load(&file) {
            Ok(b) => {
                println!("{}", serde_json::to_string_pretty(&signature(&b)).unwrap());
                ExitCode::SUCCESS
            }
            Err(e) => fail(1, e),
        },
        Command::Transform { file, edge, out } => {
            let b = match load(&file) {
                Ok(b) => b,
                Err(e) => return fail(1, e),
            };
            match apply_move(&b, edge) {
                Ok((moved, mv)) => {
                    let doc = to_json(&moved);
                    if let Some(path) = out {
                        if let Err(e) = fs::write(&path, &doc) {
                            return fail(1, format!("{path}: {e}"));
                        }
                    } else {
                        println!("{doc}");
                    }
                    eprintln!(
                        "{}",
                        json!({ "applied": { "edge": mv.edge, "type": mv.kind.type_number() } })
                    );
                    ExitCode::SUCCESS
                }
                Err(e @ (MoveError::UnknownEdge(_) | MoveError::SingleEdgeComplex)) => fail(2, e),
                Err(e) => fail(1, e),
            }
        }
        Command::Equiv {
            file1,
            file2,
            witness,
        } => {
            let (b1, b2) = match (load(&file1), load(&file2)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return fail(1, e),
            };
            match decide_equivalent(&b1, &b2, witness, SearchLimits::default()) {
                Ok(Equivalence::Equivalent { witness }) => {
                    let logs = witness.map(|w| json!({ "log1": w.0, "log2": w.1 }));
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "equivalent": true,
                            "witness": logs,
                        }))
                        .unwrap()
                    );
                    ExitCode::SUCCESS
                }
                Ok(Equivalence::NotEquivalent { distinguished_by }) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "equivalent": false,
                            "distinguished_by": distinguished_by,
                        }))
                        .unwrap()
                    );
                    ExitCode::SUCCESS
                }
                Err(e @ brauer_core::genus0::Genus0Error::NonzeroGenus(_)) => fail(3, e),
                Err(e) => fail(1, e),
            }
        }
        Command::Orbit { file, budget } => match load(&file) {
            Ok(b) => {
                let report = orbit::explore(&b, budget);
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
                ExitCode::SUCCESS
            }
            Err(e) => fail(1, e),
        },
        Command::Census { edges, mult, csv } => {
            let table = orbit::census(edges, mult);
            if let Some(path) = csv {
                if let Err(e) = fs::write(&path, table.to_csv()) {
                    return fail(1, format!("{path}: {e}"));
                }
            }
            println!("{}", serde_json::to_string_pretty(&table).unwrap());
            ExitCode::SUCCESS
        }
        Command::Center { file } => match load(&file) {
            Ok(b) => {
                let table = build_algebra(&derive_quiver(&b));
                let formula = center_formula(&table);
                let oracle = center_oracle(&table);
                let nilpotency = center_nilpotency_multiset(&table, &oracle);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "dim_z": formula.dim_z,
                        "oracle_dim": oracle.len(),
                        "m_part": formula
                            .m_part
                            .iter()
                            .map(|(cycle, t, _)| json!({ "a_cycle": cycle, "power": t }))
                            .collect::<Vec<_>>(),
                        "q_part": formula
                            .q_part
                            .iter()
                            .map(|(dart, _)| json!({ "loop_dart": dart }))
                            .collect::<Vec<_>>(),
                        "socle_count": formula.s_part.len(),
                        "nilpotency": nilpotency,
                    }))
                    .unwrap()
                );
                ExitCode::SUCCESS
            }
            Err(e) => fail(1, e),
        },
        Command::Quiver { file } => match load(&file) {
            Ok(b) => {
                let q = derive_quiver(&b);
                let doc = QuiverDocument::from_quiver(&q);
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                ExitCode::SUCCESS
            }
            Err(e) => fail(1, e),
        },
        Command::ExportDot { file } => match load(&file) {
            Ok(b) => {
                print!("{}", to_dot(&b));
                ExitCode::SUCCESS
            }
            Err(e) => fail(1, e),
        },
    }
}
