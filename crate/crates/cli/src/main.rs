//! `bicm`: command-line front end for bicm-core.
//!
//! Graphs are read as JSON (`{"n": 5, "edges": [[1, 2], ...]}`) or as an
//! edge list with one `i j` pair per line; `-` reads standard input.
//! Output is JSON unless `--pretty` is given.
//!
//! Exit codes: 0 ok, 1 verdict false, 2 input error, 3 size guard,
//! 4 internal consistency violation or audit failure.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bicm_core::audit::{run_audit, AuditOptions, AUDIT_BIG_LIMIT, AUDIT_LIMIT};
use bicm_core::classify::classify;
use bicm_core::generic::generic_graph;
use bicm_core::resolutions::betti_table;
use bicm_core::separation::{inseparable_model, separability_witness};
use bicm_core::{certify_bicm, Error, FieldSpec, Graph, SquarefreeIdeal, Tree};
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bicm", version, about = "Bi-Cohen-Macaulay graphs: certificates, families, generic graphs")]
struct Cli {
    /// Field characteristic: 0 for the rationals or a prime.
    #[arg(long, global = true, default_value_t = 0)]
    field: u64,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify whether a graph is bi-CM.
    Check { path: PathBuf },
    /// Alexander dual of the edge ideal.
    Dual { path: PathBuf },
    /// Graded Betti numbers of S/I_G.
    Betti { path: PathBuf },
    /// Bipartite and chordal recognition plus the certificate.
    Classify { path: PathBuf },
    /// Generic bi-CM graph G_T of a tree.
    GenericGraph { path: PathBuf },
    /// Inseparable model of a bi-CM graph.
    InsepModel { path: PathBuf },
    /// Inseparability verdict with the first separating vertex.
    IsInseparable { path: PathBuf },
    /// Exhaustive audit over all connected graphs with up to N vertices.
    Audit {
        n_max: usize,
        /// Seed for the relabelling checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow 8 vertices, certifying only quick-reject survivors.
        #[arg(long)]
        big: bool,
        /// Also write the report to this file, replacing its contents.
        #[arg(long, value_name = "FILE")]
        regen: Option<PathBuf>,
    },
    /// DOT rendering of a graph, or of G_T with `--generic`.
    ExportDot {
        path: PathBuf,
        /// Read a tree and export its generic graph with pair labels.
        #[arg(long)]
        generic: bool,
    },
}

enum Failure {
    Verdict,
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(Graph::parse(&read_input(path)?)?)
}

fn emit(pretty: bool, value: serde_json::Value, text: impl FnOnce() -> String) {
    if pretty {
        print!("{}", text());
    } else {
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    }
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}

fn run(cli: Cli) -> Outcome {
    let field = FieldSpec::new(cli.field)?;
    let pretty = cli.pretty;
    match cli.command {
        Command::Check { path } => {
            let cert = certify_bicm(&read_graph(&path)?, field)?;
            emit(pretty, serde_json::to_value(&cert).expect("json"), || cert.pretty());
            verdict(cert.verdict)
        }
        Command::Dual { path } => {
            let dual = SquarefreeIdeal::edge_ideal(&read_graph(&path)?)?.alexander_dual()?;
            emit(pretty, serde_json::to_value(dual.to_json()).expect("json"), || dual.to_text() + "\n");
            Ok(())
        }
        Command::Betti { path } => {
            let table = betti_table(&SquarefreeIdeal::edge_ideal(&read_graph(&path)?)?, field)?;
            emit(pretty, serde_json::to_value(table.to_json()).expect("json"), || table.pretty());
            Ok(())
        }
        Command::Classify { path } => {
            let r = classify(&read_graph(&path)?, field)?;
            emit(pretty, serde_json::to_value(&r).expect("json"), || {
                let mut s = format!("bipartite {}, chordal {}\n", r.bipartite, r.chordal);
                if let Some(w) = &r.bipartite_witness {
                    s += &format!("staircase v = {:?}, w = {:?}\n", w.v_order, w.w_order);
                }
                if let Some(w) = &r.chordal_witness {
                    s += &format!(
                        "facets {:?}, free vertices {:?}, center {:?}\n",
                        w.facets, w.free_vertices, w.center
                    );
                }
                s + &r.certificate.pretty()
            });
            Ok(())
        }
        Command::GenericGraph { path } => {
            let t = Tree::new(read_graph(&path)?)?;
            let gt = generic_graph(&t)?;
            emit(pretty, gt.to_json_value(), || {
                let names = gt.universe.names();
                let mut s = String::new();
                for (i, j) in gt.graph.edges() {
                    s += &format!("{} -- {}\n", names[i - 1], names[j - 1]);
                }
                s
            });
            Ok(())
        }
        Command::InsepModel { path } => {
            let g = read_graph(&path)?;
            let model = match inseparable_model(&g) {
                Err(Error::NotBiCm) => return Err(Failure::Verdict),
                other => other?,
            };
            let target = SquarefreeIdeal::edge_ideal(&g)?.universe().clone();
            emit(pretty, model.to_json_value(&target), || {
                let mut s = format!("tree edges {:?}\n", model.tree.edges());
                for (pair, v) in model.substitution_names(&target) {
                    s += &format!("{pair} -> {v}\n");
                }
                s
            });
            Ok(())
        }
        Command::IsInseparable { path } => {
            let witness = separability_witness(&read_graph(&path)?)?;
            emit(pretty, json!({"inseparable": witness.is_none(), "witness": witness}), || match witness {
                None => "inseparable\n".into(),
                Some(i) => format!("separable: G^({i}) is disconnected\n"),
            });
            verdict(witness.is_none())
        }
        Command::Audit { n_max, seed, big, regen } => {
            let limit = if big { AUDIT_BIG_LIMIT } else { AUDIT_LIMIT };
            if n_max > limit {
                return Err(Error::SizeGuard { what: "audit vertex count", got: n_max, limit }.into());
            }
            let mut opts = AuditOptions::new(n_max);
            opts.seed = seed;
            opts.big = big;
            if cli.field != 0 {
                opts.fields = vec![field];
            }
            let report = run_audit(&opts)?;
            let json = report.to_json_pretty();
            if let Some(file) = regen {
                fs::write(&file, &json).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            }
            if pretty {
                print!("{}", report.pretty());
            } else {
                print!("{json}");
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Error::Inconsistent(format!("{} audit violations", report.violations.len())).into())
            }
        }
        Command::ExportDot { path, generic } => {
            let g = read_graph(&path)?;
            if generic {
                let gt = generic_graph(&Tree::new(g)?)?;
                print!("{}", gt.graph.to_dot(Some(gt.universe.names())));
            } else {
                print!("{}", g.to_dot(None));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeGuard { .. } => 3,
                Error::Inconsistent(_) => 4,
                _ => 2,
            })
        }
    }
}
