//! `polynet` command-line front end.
//!
//! Commands read a stream of JSON documents from stdin or from `--in` files
//! and pick the documents they need by kind. Exit status is 0 when the check
//! holds or a search finds something, 1 when a check fails or a search proves
//! absence, and 2 on errors (including an exceeded search budget).

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use polynet::coding::{
    check_dpn, code_from_representation, polymatroid_from_code, search_scalar_solution, CodingError,
    PolymatroidMapping, VectorLinearCode,
};
use polynet::constructor::{construct, ChoiceScript};
use polynet::ff_linalg::FieldSpec;
use polynet::fixtures;
use polynet::io::{emit, export_dot, parse_stream, Document};
use polynet::network::Network;
use polynet::polymatroid::{DiscretePolymatroid, GroundVector, RankTable};
use polynet::representation::{search_representation, Representation};
use polynet::Verdict;

#[derive(Parser)]
#[command(name = "polynet", version, about = "Discrete polymatroids and vector linear network codes")]
struct Cli {
    /// Input files (default: stdin). May be repeated.
    #[arg(long = "in", global = true)]
    inputs: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Excluded,
    Di,
    Ci,
    R,
}

#[derive(Subcommand)]
enum Command {
    /// Check the rank axioms of a polymatroid, or the axioms of a matroid.
    Axioms,
    /// List all members of a polymatroid.
    Members,
    /// List the basis vectors of a polymatroid.
    Bases,
    /// List excluded, excluded-through-i, circuit or saturated vectors.
    Sets {
        #[arg(long, value_enum)]
        which: Which,
        /// Element (1-based), for `di` and `ci`.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Check a representation against a polymatroid.
    RepVerify,
    /// Emit the rank table induced by a representation.
    RepRankTable,
    /// Search exhaustively for a representation of a polymatroid.
    RepSearch {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        rows: usize,
    },
    /// Validate a network.
    NetValidate,
    /// Build a network and mapping from a polymatroid.
    Construct {
        /// Choice script document.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Number of step 3 sinks when no script step 3 is given.
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Verify a code on a network.
    CodeVerify,
    /// Build a code from a network, representation and mapping.
    CodeFromRep {
        /// Code dimension (default: largest singleton rank).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Emit the polymatroid and mapping induced by a verified code.
    PolyFromCode,
    /// Check that a network is discrete polymatroidal for a table and mapping.
    DpnCheck,
    /// Search exhaustively for a scalar linear solution.
    ScalarSearch {
        #[arg(long)]
        q: u32,
        /// Bound on the search tree size.
        #[arg(long, env = "POLYNET_BUDGET", default_value_t = polynet::coding::DEFAULT_SEARCH_BUDGET)]
        budget: u128,
    },
    /// Render a network (and optionally a code) as DOT.
    Dot,
    /// Print a bundled fixture document, or list their names.
    Fixture { name: Option<String> },
}

struct Inputs {
    docs: Vec<Document>,
}

impl Inputs {
    fn load(paths: &[PathBuf]) -> Result<Self> {
        let mut docs = Vec::new();
        let mut read = |text: &str, origin: &str| -> Result<()> {
            for parsed in parse_stream(text).with_context(|| format!("reading {origin}"))? {
                for w in &parsed.warnings {
                    eprintln!("warning ({origin}): {w}");
                }
                docs.push(parsed.document);
            }
            Ok(())
        };
        if paths.is_empty() {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("reading stdin")?;
            read(&text, "stdin")?;
        } else {
            for p in paths {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                read(&text, &p.display().to_string())?;
            }
        }
        Ok(Self { docs })
    }

    fn find<T>(&self, kind: &str, pick: impl Fn(&Document) -> Option<T>) -> Result<T> {
        self.docs.iter().find_map(pick).ok_or_else(|| anyhow!("no {kind} document in input"))
    }

    fn table(&self) -> Result<RankTable> {
        self.find("polymatroid", |d| match d {
            Document::Polymatroid(t) => Some(t.clone()),
            Document::Matroid(m) => Some(m.rank_table()),
            _ => None,
        })
    }

    fn polymatroid(&self) -> Result<DiscretePolymatroid> {
        Ok(DiscretePolymatroid::new(self.table()?)?.allow_large_enumeration())
    }

    fn network(&self) -> Result<Network> {
        self.find("network", |d| match d {
            Document::Network(n) => Some(n.clone()),
            _ => None,
        })
    }

    fn representation(&self) -> Result<Representation> {
        self.find("representation", |d| match d {
            Document::Representation(r) => Some(r.clone()),
            _ => None,
        })
    }

    fn code(&self) -> Result<VectorLinearCode> {
        self.find("code", |d| match d {
            Document::Code(c) => Some(c.clone()),
            _ => None,
        })
    }

    fn mapping(&self) -> Result<PolymatroidMapping> {
        self.find("mapping", |d| match d {
            Document::Mapping(f) => Some(f.clone()),
            _ => None,
        })
    }

    fn optional_code(&self) -> Option<VectorLinearCode> {
        self.code().ok()
    }
}

fn print_vectors(vs: &[GroundVector]) {
    for v in vs {
        println!("{v}");
    }
}

fn verdict<V: std::fmt::Display>(v: Verdict<V>) -> ExitCode {
    match v {
        Verdict::Ok => {
            println!("ok");
            ExitCode::SUCCESS
        }
        Verdict::Violation(v) => {
            println!("violation: {v}");
            ExitCode::from(1)
        }
    }
}

fn element(i: Option<usize>, n: usize) -> Result<usize> {
    let i = i.ok_or_else(|| anyhow!("--i is required"))?;
    if i == 0 || i > n {
        bail!("--i must be between 1 and {n}");
    }
    Ok(i - 1)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Command::Fixture { name } = &cli.command {
        return Ok(match name {
            None => {
                for (n, _) in fixtures::all() {
                    println!("{n}");
                }
                ExitCode::SUCCESS
            }
            Some(n) => {
                let doc = fixtures::by_name(n).ok_or_else(|| anyhow!("unknown fixture `{n}`"))?;
                println!("{}", emit(&doc));
                ExitCode::SUCCESS
            }
        });
    }
    let inputs = Inputs::load(&cli.inputs)?;
    Ok(match cli.command {
        Command::Axioms => {
            let matroid = inputs.docs.iter().find_map(|d| match d {
                Document::Matroid(m) => Some(m.clone()),
                _ => None,
            });
            let first_kind = inputs.docs.iter().find(|d| matches!(d, Document::Polymatroid(_) | Document::Matroid(_)));
            match (first_kind, matroid) {
                (Some(Document::Matroid(_)), Some(m)) => verdict(m.check()),
                _ => verdict(inputs.table()?.check_rank_axioms()),
            }
        }
        Command::Members => {
            print_vectors(inputs.polymatroid()?.enumerate_members()?);
            ExitCode::SUCCESS
        }
        Command::Bases => {
            print_vectors(&inputs.polymatroid()?.basis_vectors()?);
            ExitCode::SUCCESS
        }
        Command::Sets { which, i } => {
            let d = inputs.polymatroid()?;
            let vs = match which {
                Which::Excluded => d.excluded_vectors()?,
                Which::Di => d.excluded_vectors_through(element(i, d.n())?)?,
                Which::Ci => d.circuit_vectors(element(i, d.n())?)?,
                Which::R => d.saturated_vectors()?,
            };
            print_vectors(&vs);
            ExitCode::SUCCESS
        }
        Command::RepVerify => {
            let rep = inputs.representation()?;
            if rep.verify(&inputs.table()?)? {
                println!("ok");
                ExitCode::SUCCESS
            } else {
                println!("mismatch");
                ExitCode::from(1)
            }
        }
        Command::RepRankTable => {
            let t = inputs.representation()?.rank_table()?;
            println!("{}", emit(&Document::Polymatroid(t)));
            ExitCode::SUCCESS
        }
        Command::RepSearch { q, rows } => {
            let field = FieldSpec::new(q)?;
            match search_representation(&inputs.table()?, field, rows)? {
                Some(rep) => {
                    println!("{}", emit(&Document::Representation(rep)));
                    ExitCode::SUCCESS
                }
                None => {
                    println!("absent");
                    ExitCode::from(1)
                }
            }
        }
        Command::NetValidate => verdict(inputs.network()?.validate()),
        Command::Construct { script, rounds } => {
            let d = inputs.polymatroid()?;
            let script = match script {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let docs = parse_stream(&text)?;
                    let s: ChoiceScript = docs
                        .into_iter()
                        .find_map(|p| match p.document {
                            Document::Script(s) => Some(s),
                            _ => None,
                        })
                        .ok_or_else(|| anyhow!("no script document in {}", path.display()))?;
                    Some(s)
                }
                None => None,
            };
            let r = construct(&d, script.as_ref(), rounds)?;
            if !r.uncovered.is_empty() {
                let list: Vec<String> = r.uncovered.iter().map(|i| (i + 1).to_string()).collect();
                eprintln!("uncovered elements: {}", list.join(","));
            }
            println!("{}", emit(&Document::Network(r.network)));
            println!("{}", emit(&Document::Mapping(r.mapping)));
            println!("{}", emit(&Document::Script(r.transcript)));
            ExitCode::SUCCESS
        }
        Command::CodeVerify => verdict(inputs.code()?.verify(&inputs.network()?)?),
        Command::CodeFromRep { k } => {
            let rep = inputs.representation()?;
            let k = match k {
                Some(k) => k,
                None => rep.rank_table()?.rho_max() as usize,
            };
            let code = code_from_representation(&inputs.network()?, &rep, &inputs.mapping()?, k)?;
            println!("{}", emit(&Document::Code(code)));
            ExitCode::SUCCESS
        }
        Command::PolyFromCode => {
            let (t, f) = polymatroid_from_code(&inputs.network()?, &inputs.code()?)?;
            println!("{}", emit(&Document::Polymatroid(t)));
            println!("{}", emit(&Document::Mapping(f)));
            ExitCode::SUCCESS
        }
        Command::DpnCheck => {
            let t = inputs.table()?;
            if let Verdict::Violation(v) = t.check_rank_axioms() {
                bail!("rank table fails the axioms: {v}");
            }
            verdict(check_dpn(&inputs.network()?, &t, &inputs.mapping()?)?)
        }
        Command::ScalarSearch { q, budget } => {
            let field = FieldSpec::new(q)?;
            match search_scalar_solution(&inputs.network()?, field, budget) {
                Ok(Some(code)) => {
                    println!("{}", emit(&Document::Code(code)));
                    ExitCode::SUCCESS
                }
                Ok(None) => {
                    println!("absent");
                    ExitCode::from(1)
                }
                Err(e @ CodingError::BudgetExceeded { .. }) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Dot => {
            let net = inputs.network()?;
            print!("{}", export_dot(&net, inputs.optional_code().as_ref()));
            ExitCode::SUCCESS
        }
        Command::Fixture { .. } => unreachable!("handled above"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
