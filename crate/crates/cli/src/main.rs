use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mge_core::catalog::{collection_bound, nbound, pbound};
use mge_core::enumerate::{tier_from_env, write_atomic, Enumerator};
use mge_core::morphism::{find_embedding, is_isomorphic, Support};
use mge_core::verify::{self, Collection, MinimalResult, Report};
use mge_core::{construct, Group, GroupExpr, Result};

/// Finite-group engine for minimal-embedding computations.
#[derive(Parser)]
#[command(name = "mge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Realize a group expression and print its invariants.
    Construct { expr: String },
    /// Test two groups for isomorphism.
    Iso { a: String, b: String },
    /// Search for an embedding of H into G.
    Embed {
        h: String,
        g: String,
        /// Restrict a twisted-product ambient to these components, e.g. `0,3`.
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<usize>>,
    },
    /// Enumerate all groups of order n.
    Enumerate {
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        tier: Option<u8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least order of a group containing a whole collection.
    Minimal(MinimalArgs),
    /// Order bounds.
    Bounds(BoundsArgs),
    /// Check every claim of a certificate file.
    Verify {
        cert: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a named scenario, or `all`.
    Reproduce {
        scenario: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Regenerate a shipped certificate (`ambient`, a family label, or a T5 row label).
    Certify {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct MinimalArgs {
    #[command(flatten)]
    which: Which,
    #[arg(long)]
    max: u64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Which {
    /// All groups of this order.
    #[arg(long)]
    order: Option<u64>,
    /// All groups of at most this order.
    #[arg(long)]
    upto: Option<u64>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BoundsArgs {
    /// p k
    #[arg(long, num_args = 2, value_names = ["P", "K"])]
    pbound: Option<Vec<u64>>,
    #[arg(long)]
    nbound: Option<u64>,
    #[arg(long)]
    collection: Option<u64>,
}

fn group(text: &str) -> Result<Group> {
    construct(&GroupExpr::parse(text)?)
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit(report: &Report, json: Option<&PathBuf>) -> Result<ExitCode> {
    print!("{report}");
    if let Some(path) = json {
        write_atomic(path, report.to_json().as_bytes())?;
    }
    Ok(verdict(report.passed()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct { expr } => {
            let g = group(&expr)?;
            println!("expression: {}", g.expr_text());
            println!("order: {}", g.order());
            match &g {
                Group::Table(t) => {
                    println!("form: table");
                    println!("fingerprint: {}", mge_core::Fingerprint::of(t));
                }
                Group::Twisted(tw) => {
                    println!("form: twisted product of {} components, rank {} twist", tw.components().len(), tw.d_rank());
                }
            }
            let names: Vec<String> = g.bindings().into_iter().map(|(n, _)| n).collect();
            println!("generators: {}", names.join(", "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { a, b } => {
            let (ga, gb) = (group(&a)?, group(&b)?);
            match is_isomorphic(&ga, &gb)? {
                Some(m) => {
                    println!("isomorphic");
                    println!("{}", serde_json::to_string_pretty(&m.record())?);
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not isomorphic");
                    Ok(verdict(false))
                }
            }
        }
        Command::Embed { h, g, support } => {
            let (gh, gg) = (group(&h)?, group(&g)?);
            let support = support.map(|components| Support { components, d_bits: None });
            match find_embedding(&gh, &gg, support.as_ref())? {
                Some(m) => {
                    println!("embeds");
                    println!("{}", serde_json::to_string_pretty(&m.record())?);
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("no embedding");
                    Ok(verdict(false))
                }
            }
        }
        Command::Enumerate { n, tier, out } => {
            let mut en = Enumerator::from_env()?;
            if let Some(t) = tier {
                en.tier = t;
            }
            let cat = en.catalog(n)?;
            println!("order {n}: {} groups", cat.len());
            for (i, e) in cat.entries.iter().enumerate() {
                println!("{i:4} {}", e.fingerprint);
            }
            if let Some(path) = out {
                write_atomic(&path, cat.to_json().as_bytes())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Minimal(args) => {
            let collection = match (args.which.order, args.which.upto) {
                (Some(n), _) => Collection::OfOrder(n),
                (_, Some(n)) => Collection::Upto(n),
                _ => unreachable!("clap requires one of --order and --upto"),
            };
            let en = Enumerator::from_env()?;
            match verify::minimal_embedding_search(collection, args.max, &en)? {
                MinimalResult::Found { order, groups, eliminated } => {
                    println!("minimal order {order} (bound {}, eliminated {eliminated:?})", collection.bound());
                    for g in &groups {
                        println!("  {}", mge_core::fingerprint(g)?);
                        println!("    {}", g.expr_text());
                    }
                    Ok(ExitCode::SUCCESS)
                }
                MinimalResult::Exhausted { max_order } => {
                    println!("exhausted: no group of order at most {max_order}");
                    Ok(verdict(false))
                }
            }
        }
        Command::Bounds(args) => {
            if let Some(pk) = args.pbound {
                println!("{}", pbound(pk[0], pk[1] as u32));
            } else if let Some(n) = args.nbound {
                println!("{}", nbound(n));
            } else if let Some(n) = args.collection {
                println!("{}", collection_bound(n));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { cert, json } => emit(&verify::verify_certificate(&cert)?, json.as_ref()),
        Command::Reproduce { scenario, json } => {
            tier_from_env()?;
            emit(&verify::reproduce(&scenario)?, json.as_ref())
        }
        Command::Certify { name, out } => {
            let cert = verify::certify(&name)?;
            match out {
                Some(path) => write_atomic(&path, cert.to_json().as_bytes())?,
                None => println!("{}", cert.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
