//! `moonmaj`: command-line access to moon-polyomino fillings, their
//! statistics and bijections. Every command prints one JSON document.
//! Exit status: 0 on success, 1 on invalid input, 2 when `verify` finds a
//! counterexample.

use std::collections::BTreeSet;
use std::io::Read;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use moonmaj::encode::{
    crossings, filling_to_partition, nestings, partition_to_filling, pmaj, word_to_filling, ArcDiagram, Word,
};
use moonmaj::filling::{des, for_each_in_class, h_vector, maj, ne_count};
use moonmaj::genfun::{distribution, product_formula, Statistic, DEFAULT_MAX_COUNT};
use moonmaj::verify::{self, Identity, Params, Status};
use moonmaj::{foata, rearrange, Filling, FillingClassSpec, MoonPolyomino, ShapeClass};

#[derive(Parser)]
#[command(name = "moonmaj", version, about = "Major index and NE chains on fillings of moon polyominoes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a shape and describe it.
    Validate {
        #[arg(long, value_name = "FILE")]
        shape: String,
    },
    /// List the fillings of a class F(M, s; A).
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        /// Print at most this many fillings (all are still counted).
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Statistics of one filling, word or arc diagram.
    Stats {
        #[arg(long, value_name = "FILE", conflicts_with_all = ["word", "arcs"])]
        filling: Option<String>,
        #[command(flatten)]
        source: EncodeArgs,
        #[arg(long, value_enum, default_value_t = StatArg::All)]
        stat: StatArg,
    },
    /// Distribution of maj or ne over a class.
    Dist {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum)]
        stat: DistStat,
    },
    /// The Gaussian-binomial product for a class.
    Product {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Apply one of the bijections or rearrangements to a filling.
    Map {
        #[arg(long, value_name = "FILE")]
        filling: String,
        #[arg(long, value_enum)]
        map: MapArg,
    },
    /// Encode a word or an arc diagram as a filling.
    Encode {
        #[command(flatten)]
        source: EncodeArgs,
    },
    /// Seeded random check of one identity.
    Verify {
        /// maj-product, column-permutation, ne-product, maj-ne, phi, psi, insertion or pmaj (short numeric tokens also accepted).
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 14)]
        max_cells: usize,
    },
}

#[derive(Args)]
struct ClassArgs {
    #[arg(long, value_name = "FILE")]
    shape: String,
    /// Column sums, comma separated.
    #[arg(long)]
    s: String,
    /// Empty rows (1-based), comma separated; may be empty.
    #[arg(long = "A", default_value = "", allow_hyphen_values = true)]
    a: String,
    /// Refuse classes with more fillings than this.
    #[arg(long, default_value_t = DEFAULT_MAX_COUNT)]
    max_count: u64,
}

#[derive(Args)]
struct EncodeArgs {
    /// Word letters, comma separated.
    #[arg(long, requires = "m", conflicts_with = "arcs")]
    word: Option<String>,
    /// Alphabet size for --word.
    #[arg(long)]
    m: Option<u32>,
    /// Arcs as i-j pairs, comma separated.
    #[arg(long, requires = "n")]
    arcs: Option<String>,
    /// Vertex count for --arcs.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatArg {
    Maj,
    Ne,
    Des,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistStat {
    Maj,
    Ne,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Phi,
    PhiInv,
    F,
    G,
    Psi,
    PsiInv,
    Tau,
    Alpha,
}

enum Outcome {
    Ok(Value),
    Counterexample(Value),
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading standard input")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let text = read_source(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {path}"))
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().with_context(|| format!("bad list entry `{t}`")))
        .collect()
}

fn parse_arcs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (i, j) = t.split_once('-').with_context(|| format!("arc `{t}` is not of the form i-j"))?;
            Ok((i.trim().parse()?, j.trim().parse()?))
        })
        .collect()
}

fn class_spec(args: &ClassArgs) -> Result<FillingClassSpec> {
    let shape: MoonPolyomino = read_json(&args.shape)?;
    let s = parse_list(&args.s)?;
    let a: BTreeSet<usize> = parse_list(&args.a)?.into_iter().collect();
    Ok(FillingClassSpec::new(shape, s, a)?)
}

enum Encoded {
    Word(Filling),
    Arcs(ArcDiagram, Filling),
}

fn encode(args: &EncodeArgs) -> Result<Option<Encoded>> {
    if let Some(word) = &args.word {
        let w = Word::new(parse_list(word)?)?;
        let f = word_to_filling(&w, args.m.context("--word needs --m")?)?;
        return Ok(Some(Encoded::Word(f)));
    }
    if let Some(arcs) = &args.arcs {
        let d = ArcDiagram::new(args.n.context("--arcs needs --n")?, parse_arcs(arcs)?)?;
        let f = partition_to_filling(&d)?;
        return Ok(Some(Encoded::Arcs(d, f)));
    }
    Ok(None)
}

fn filling_stats(f: &Filling, stat: StatArg) -> Result<Value> {
    let rect = f.shape().class() == ShapeClass::Rectangle;
    Ok(match stat {
        StatArg::Maj => json!({ "maj": maj(f) }),
        StatArg::Ne => json!({ "ne": ne_count(f) }),
        StatArg::Des => json!({ "des": des(f)? }),
        StatArg::All => {
            let mut v = json!({ "maj": maj(f), "ne": ne_count(f) });
            if rect {
                v["des"] = json!(des(f)?);
            }
            v
        }
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    let value = match cli.command {
        Command::Validate { shape } => {
            let shape: MoonPolyomino = read_json(&shape)?;
            let order = shape.column_order();
            json!({
                "valid": true,
                "class": shape.class(),
                "height": shape.height(),
                "width": shape.width(),
                "cells": shape.cell_count(),
                "column_lengths": shape.column_lengths(),
                "column_order": order.order,
                "maximal_rectangles": shape.maximal_rectangles(),
            })
        }
        Command::Enumerate { class, limit } => {
            let spec = class_spec(&class)?;
            let mut count = 0u64;
            let mut shown = Vec::new();
            let max = class.max_count;
            let mut over = false;
            for_each_in_class(&spec, |cells| {
                count += 1;
                if count > max {
                    over = true;
                    return false;
                }
                if shown.len() < limit {
                    shown.push(cells.to_vec());
                }
                true
            });
            if over {
                bail!("class has more than {max} fillings");
            }
            json!({ "count": count, "truncated": (count as usize) > shown.len(), "fillings": shown })
        }
        Command::Stats { filling, source, stat } => match (filling, encode(&source)?) {
            (Some(path), _) => {
                let f: Filling = read_json(&path)?;
                filling_stats(&f, stat)?
            }
            (None, Some(Encoded::Word(f))) => filling_stats(&f, stat)?,
            (None, Some(Encoded::Arcs(d, f))) => {
                let mut v = filling_stats(&f, stat)?;
                v["crossings"] = json!(crossings(&d));
                v["nestings"] = json!(nestings(&d));
                if d.is_set_partition() {
                    v["pmaj"] = json!(pmaj(&d)?);
                }
                v
            }
            (None, None) => bail!("stats needs --filling, --word or --arcs"),
        },
        Command::Dist { class, stat } => {
            let spec = class_spec(&class)?;
            let stat = match stat {
                DistStat::Maj => Statistic::Maj,
                DistStat::Ne => Statistic::Ne,
            };
            serde_json::to_value(distribution(&spec, stat, class.max_count)?)?
        }
        Command::Product { class } => {
            let spec = class_spec(&class)?;
            json!({ "coeffs": product_formula(&spec), "h": h_vector(&spec) })
        }
        Command::Map { filling, map } => {
            let f: Filling = read_json(&filling)?;
            match map {
                MapArg::Phi => serde_json::to_value(foata::phi(&f)?)?,
                MapArg::PhiInv => serde_json::to_value(foata::phi_inverse(&f)?)?,
                MapArg::F => serde_json::to_value(rearrange::f(&f))?,
                MapArg::G => serde_json::to_value(rearrange::g(&f))?,
                MapArg::Psi => serde_json::to_value(rearrange::psi(&f))?,
                MapArg::PsiInv => serde_json::to_value(rearrange::psi_inverse(&f))?,
                MapArg::Tau => serde_json::to_value(rearrange::tau(&f)?)?,
                MapArg::Alpha => {
                    let plan = rearrange::alpha(f.shape());
                    json!({ "shape": plan.target, "moves": plan.moves, "permutation": plan.permutation })
                }
            }
        }
        Command::Encode { source } => match encode(&source)? {
            Some(Encoded::Word(f)) => serde_json::to_value(f)?,
            Some(Encoded::Arcs(d, f)) => {
                debug_assert_eq!(filling_to_partition(&f)?, d);
                serde_json::to_value(f)?
            }
            None => bail!("encode needs --word or --arcs"),
        },
        Command::Verify { theorem, seed, trials, max_cells } => {
            let identity: Identity = theorem.parse()?;
            let report = verify::run(identity, Params { seed, trials, max_cells })?;
            let value = serde_json::to_value(&report)?;
            if report.status == Status::Counterexample {
                return Ok(Outcome::Counterexample(value));
            }
            value
        }
    };
    Ok(Outcome::Ok(value))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            println!("{}", json!({ "error": e.kind().to_string() }));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Counterexample(v)) => {
            println!("{v}");
            ExitCode::from(2)
        }
        Err(e) => {
            println!("{}", json!({ "error": format!("{e:#}") }));
            ExitCode::from(1)
        }
    }
}
