use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use oddflag::golden::moment_edge_lines_with_roots;
use oddflag::lattice::{build_cn_lattice_with, structural_shape, Shape};
use oddflag::moment_graph::to_dot;
use oddflag::nbhd::{gamma, Neighborhood, NeighborhoodSource};
use oddflag::qbg::{build_qbg, moment_discrepancies, property_o_verdict, QbgRule};
use oddflag::verify::{run_verification, VerifyOptions};
use oddflag::{Degree, Error, FlagLabel, FlagSpace};

#[derive(Parser)]
#[command(name = "oddflag", version, about = "Schubert combinatorics of the odd symplectic flag manifold IF(1,2;2n+1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Rank; the ambient space is C^(2n+1).
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to FILE instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// List Schubert labels with their lengths.
    Enumerate {
        #[command(flatten)]
        common: Common,
    },
    /// Moment graph: edges with degree and root.
    MomentGraph {
        #[command(flatten)]
        common: Common,
        /// Only edges of this degree (dot output).
        #[arg(long, value_name = "D1,D2")]
        degree: Option<String>,
    },
    /// Curve neighborhood Gamma_d(X(w)).
    Nbhd {
        #[command(flatten)]
        common: Common,
        /// Label `a|b`, with `-k` for bar k.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, value_name = "D1,D2")]
        d: String,
        /// Compute by graph search instead of the closed form.
        #[arg(long)]
        oracle: bool,
    },
    /// Curve-neighborhood lattice of one label, or the shape of every label.
    Lattice {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        #[arg(long)]
        oracle: bool,
    },
    /// Quantum Bruhat graph and the Property O verdict.
    Qbg {
        #[command(flatten)]
        common: Common,
        /// Require quantum targets to be components, not just below one.
        #[arg(long)]
        strict_qbg: bool,
        #[arg(long)]
        oracle: bool,
    },
    /// Run the full verification suite for n = 2..=n_max.
    Verify {
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[arg(long)]
        strict_qbg: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn source(oracle: bool) -> NeighborhoodSource {
    if oracle {
        NeighborhoodSource::Search
    } else {
        NeighborhoodSource::ClosedForm
    }
}

fn rule(strict: bool) -> QbgRule {
    if strict {
        QbgRule::Strict
    } else {
        QbgRule::SubComponent
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn unsupported(format: Format, what: &str) -> Error {
    let name = match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Table => "table",
    };
    Error::Domain(format!("{what} has no {name} output"))
}

/// Output text and whether verification passed.
fn run(command: Command) -> Result<(String, Option<PathBuf>, bool), Error> {
    match command {
        Command::Enumerate { common } => {
            let space = FlagSpace::new(common.n)?;
            let poset = space.poset();
            let text = match common.format {
                Format::Table => {
                    let mut s = String::new();
                    for (i, w) in space.labels().iter().enumerate() {
                        writeln!(s, "{w}\t{}", poset.length(i)).unwrap();
                    }
                    s
                }
                Format::Json => pretty(&json!({
                    "schema": "oddflag.labels.v1",
                    "n": common.n,
                    "labels": space.labels().iter().enumerate()
                        .map(|(i, w)| json!({ "label": w, "length": poset.length(i) }))
                        .collect::<Vec<_>>(),
                })),
                Format::Dot => {
                    let mut s = format!("digraph bruhat_n{} {{\n  rankdir=BT;\n  node [shape=plaintext];\n", common.n);
                    for (i, w) in space.labels().iter().enumerate() {
                        for j in poset.lower_covers(i) {
                            writeln!(s, "  \"{}\" -> \"{w}\" [arrowhead=none];", poset.label(j)).unwrap();
                        }
                    }
                    s.push_str("}\n");
                    s
                }
            };
            Ok((text, common.out, true))
        }
        Command::MomentGraph { common, degree } => {
            let space = FlagSpace::new(common.n)?;
            let only = degree.as_deref().map(Degree::parse).transpose()?;
            let g = space.graph();
            let text = match common.format {
                Format::Table => moment_edge_lines_with_roots(g)
                    .iter()
                    .filter(|_| only.is_none())
                    .map(|l| format!("{l}\n"))
                    .collect(),
                Format::Json => pretty(&g.to_json()),
                Format::Dot => to_dot(g, only),
            };
            if only.is_some() && common.format != Format::Dot {
                return Err(Error::Domain("--degree only applies to dot output".into()));
            }
            Ok((text, common.out, true))
        }
        Command::Nbhd { common, w, d, oracle } => {
            let space = FlagSpace::new(common.n)?;
            let w = FlagLabel::parse(&w, common.n)?;
            let d = Degree::parse(&d)?;
            let components = gamma(&space, &w, d, source(oracle))?;
            let text = match common.format {
                Format::Table => {
                    let parts: Vec<_> = components.components().iter().map(ToString::to_string).collect();
                    format!("{}\n", parts.join(", "))
                }
                Format::Json => pretty(&json!(Neighborhood { w, d, components })),
                Format::Dot => return Err(unsupported(common.format, "nbhd")),
            };
            Ok((text, common.out, true))
        }
        Command::Lattice { common, w, oracle } => {
            let space = FlagSpace::new(common.n)?;
            let src = source(oracle);
            let text = match w {
                Some(w) => {
                    let w = FlagLabel::parse(&w, common.n)?;
                    let l = build_cn_lattice_with(&space, &w, src)?;
                    match common.format {
                        Format::Json => pretty(&l.to_json()?),
                        Format::Dot => l.to_dot(),
                        Format::Table => {
                            let mut s = format!("shape\t{}\n", structural_shape(&l)?);
                            for (e, d) in l.elements.iter().zip(&l.witnesses) {
                                writeln!(s, "{d}\t{e}").unwrap();
                            }
                            s
                        }
                    }
                }
                None => {
                    let mut rows = Vec::new();
                    for w in space.labels() {
                        let l = build_cn_lattice_with(&space, w, src)?;
                        rows.push((*w, structural_shape(&l)?, Shape::matching(w)));
                    }
                    match common.format {
                        Format::Table => rows.iter().map(|(w, s, _)| format!("{w} {s}\n")).collect(),
                        Format::Json => pretty(&json!({
                            "schema": "oddflag.lattice-shapes.v1",
                            "n": common.n,
                            "source": src,
                            "shapes": rows.iter()
                                .map(|(w, s, p)| json!({ "w": w, "shape": s, "predicted": p }))
                                .collect::<Vec<_>>(),
                        })),
                        Format::Dot => return Err(Error::Domain("lattice dot output needs --w".into())),
                    }
                }
            };
            Ok((text, common.out, true))
        }
        Command::Qbg { common, strict_qbg, oracle } => {
            let space = FlagSpace::new(common.n)?;
            let g = build_qbg(&space, rule(strict_qbg), source(oracle))?;
            let text = match common.format {
                Format::Table => g.edge_lines().iter().map(|l| format!("{l}\n")).collect(),
                Format::Dot => g.to_dot(),
                Format::Json => {
                    let verdict = property_o_verdict(&g)?;
                    let mut v = g.to_json(Some(&verdict));
                    v["moment_discrepancies"] = json!(moment_discrepancies(&space, &g));
                    pretty(&v)
                }
            };
            Ok((text, common.out, true))
        }
        Command::Verify { n_max, strict_qbg, oracle, out } => {
            let opts = VerifyOptions { rule: rule(strict_qbg), source: source(oracle), ..VerifyOptions::new(n_max) };
            let report = run_verification(&opts)?;
            for c in report.failures() {
                let at = c.n.map(|n| format!(" (n={n})")).unwrap_or_default();
                eprintln!("FAILED {}{at}: {}", c.name, c.detail);
            }
            Ok((pretty(&json!(report)), out, report.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, out, passed)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Verification(_) | Error::Internal(_) => ExitCode::from(1),
                Error::Domain(_) | Error::Parse { .. } => ExitCode::from(2),
            }
        }
    }
}
