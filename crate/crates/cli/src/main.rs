//! `sl2bend` — reproduce the worked examples, run bending certificates and
//! properness checks.
//!
//! Exit codes: 0 when every verdict matches its expectation, 1 on a
//! mismatch, 2 on invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sl2bend::report::{self, BendConfig, ReportDocument, ReportOptions};
use sl2bend::{Error, Family, Tolerances};

#[derive(Parser, Debug)]
#[command(
    name = "sl2bend",
    version,
    about = "sl2-triples, properness criteria and bending certificates"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Tolerance file (TOML); missing keys keep their defaults.
    #[arg(long, global = true, value_name = "FILE")]
    tol: Option<PathBuf>,
    /// Comma-separated deformation parameters, tried in order.
    #[arg(long, global = true, value_name = "T,T,...", value_delimiter = ',')]
    t_grid: Option<Vec<f64>>,
    /// Include matrices and vectors in the report.
    #[arg(long, global = true)]
    witness: bool,
    /// Machine-readable output (default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Aligned text table.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reproduce a worked example.
    Reproduce {
        #[command(subcommand)]
        which: Reproduce,
    },
    /// Bend a Fuchsian representation and certify density.
    Bend {
        #[arg(long, conflicts_with = "plan", required_unless_present = "plan")]
        preset: Option<String>,
        /// Plan file (JSON).
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Calabi–Markus and Benoist criteria for a user-supplied a_h.
    Check {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        /// JSON array of vectors in pattern coordinates (or {"a_h": [...]}).
        #[arg(long, value_name = "FILE")]
        ah: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Reproduce {
    /// The six partitions of 5 against a two-dimensional a_h.
    Sec53,
    /// ρ₁, ρ₂ in su(p,q).
    Sec6 {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Sl,
    Su,
}

fn options(g: &Global) -> Result<ReportOptions, Error> {
    let mut tol = match &g.tol {
        Some(path) => Tolerances::load(path)?,
        None => Tolerances::default(),
    };
    if let Some(grid) = &g.t_grid {
        tol.t_grid = grid.clone();
    }
    tol.validate()?;
    Ok(ReportOptions {
        tol,
        witness: g.witness,
    })
}

fn family(
    f: FamilyArg,
    n: Option<usize>,
    p: Option<usize>,
    q: Option<usize>,
) -> Result<Family, Error> {
    let missing =
        |what: &str| Error::InvalidParameters(format!("--{what} is required for this family"));
    match f {
        FamilyArg::Sl => Ok(Family::Sl {
            n: n.ok_or_else(|| missing("n"))?,
        }),
        FamilyArg::Su => Ok(Family::Su {
            p: p.ok_or_else(|| missing("p"))?,
            q: q.ok_or_else(|| missing("q"))?,
        }),
    }
}

fn run(cli: &Cli) -> Result<ReportDocument, Error> {
    let opts = options(&cli.global)?;
    match &cli.command {
        Command::Reproduce {
            which: Reproduce::Sec53,
        } => report::reproduce_sec53(&opts),
        Command::Reproduce {
            which: Reproduce::Sec6 { p, q },
        } => report::reproduce_sec6(*p, *q, &opts),
        Command::Bend { preset, plan } => {
            let cfg = match (preset, plan) {
                (Some(name), _) => BendConfig::preset(name)?,
                (None, Some(path)) => BendConfig::from_json(&std::fs::read_to_string(path)?)?,
                (None, None) => unreachable!("clap requires one of --preset/--plan"),
            };
            report::bend_report(&cfg, &opts)
        }
        Command::Check {
            family: f,
            n,
            p,
            q,
            ah,
        } => {
            let fam = family(*f, *n, *p, *q)?;
            let ah = report::parse_ah(&std::fs::read_to_string(ah)?)?;
            report::check_report(fam, &ah, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            if cli.global.text {
                print!("{}", doc.to_text());
            } else {
                print!("{}", doc.to_json());
            }
            if doc.all_match() {
                ExitCode::SUCCESS
            } else {
                for c in doc.mismatches() {
                    eprintln!(
                        "mismatch: {} (got {}, expected {})",
                        c.id,
                        c.verdict,
                        c.expected.as_ref().unwrap()
                    );
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
