mod commands;
mod document;
mod error;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use ahcalc_core::tensoralg::Degree;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Example, Output};
use error::CliError;

/// Exact computations with Adams-Hilton models over the integers.
#[derive(Parser)]
#[command(name = "ahcalc", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SplitArg {
    /// Split degrees Q N, overriding the document's `split`.
    #[arg(long, num_args = 2, value_names = ["Q", "N"])]
    split: Option<Vec<Degree>>,
}

impl SplitArg {
    fn get(&self) -> Option<(Degree, Degree)> {
        self.split.as_ref().map(|v| (v[0], v[1]))
    }
}

#[derive(Args)]
struct PairArgs {
    /// Algebra document of the split algebra.
    algebra: PathBuf,
    /// The automorphism of V_q as a JSON matrix, e.g. "[[-1]]".
    #[arg(long)]
    xi: String,
    /// Morphism document for the self-map of the base; its images are read
    /// against the base of ALGEBRA.
    #[arg(long)]
    map: PathBuf,
    #[command(flatten)]
    split: SplitArg,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an algebra or morphism document.
    Check { path: PathBuf },
    /// Homology of the algebra, or of its indecomposables.
    Homology {
        path: PathBuf,
        #[arg(long, required_unless_present = "range", conflicts_with = "range")]
        degree: Option<Degree>,
        /// Inclusive degree range, `a..b`.
        #[arg(long, value_parser = parse_range)]
        range: Option<(Degree, Degree)>,
        /// Report H(V, d) with the shift to space degrees.
        #[arg(long)]
        indecomposables: bool,
    },
    /// The map b_q : V_q -> H_{q-1}(A(X)).
    Bq {
        path: PathBuf,
        #[command(flatten)]
        split: SplitArg,
    },
    /// Whether a pair (xi, alpha_n) lies in the image of g.
    Membership(PairArgs),
    /// A self-equivalence realizing a pair (xi, alpha_n).
    Lift(PairArgs),
    /// The common kernel Hom(V_q, H_q(A(X))) of both sequences.
    Kernel {
        path: PathBuf,
        #[command(flatten)]
        split: SplitArg,
    },
    /// Decide whether two morphisms of the special shape are homotopic.
    Homotopy {
        alpha: PathBuf,
        beta: PathBuf,
        #[arg(long, num_args = 2, value_names = ["Q", "N"])]
        special: Option<Vec<Degree>>,
        /// Write the witness listing F(sv) to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Both exact sequences for a split algebra.
    Report {
        path: PathBuf,
        #[command(flatten)]
        split: SplitArg,
    },
    /// Build a named model and report on it.
    Examples {
        #[command(subcommand)]
        which: ExampleCommand,
    },
}

#[derive(Subcommand)]
enum ExampleCommand {
    /// T(v_n, v_q) with zero differential.
    WedgeSpheres { n: Degree, q: Degree },
    /// Model of a suspension from its homology, given as DEGREE:RANK pairs.
    Suspension {
        #[arg(required = true, value_parser = parse_rank)]
        ranks: Vec<(Degree, usize)>,
    },
    /// Attach degree-Q generators to a base algebra.
    AttachCells {
        base: PathBuf,
        #[arg(long)]
        q: Degree,
        /// Attaching cycle in text form, e.g. "x*y - y*x"; repeat per cell.
        #[arg(long = "attach", required = true)]
        attachments: Vec<String>,
    },
    /// r generators in degree n, s in degree 2n, zero differential.
    C4 {
        n: Degree,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
}

fn parse_range(s: &str) -> Result<(Degree, Degree), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got '{s}'"))?;
    let a: Degree = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: Degree = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_rank(s: &str) -> Result<(Degree, usize), String> {
    let (d, r) = s.split_once(':').ok_or_else(|| format!("expected DEGREE:RANK, got '{s}'"))?;
    Ok((
        d.trim().parse().map_err(|e| format!("{d}: {e}"))?,
        r.trim().parse().map_err(|e| format!("{r}: {e}"))?,
    ))
}

fn pair(v: &Option<Vec<Degree>>) -> Option<(Degree, Degree)> {
    v.as_ref().map(|v| (v[0], v[1]))
}

fn run(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Check { path } => commands::check(&path),
        Command::Homology {
            path,
            degree,
            range,
            indecomposables,
        } => {
            let degrees: Vec<Degree> = match (degree, range) {
                (Some(m), _) => vec![m],
                (None, Some((a, b))) => (a..=b).collect(),
                (None, None) => unreachable!("clap requires --degree or --range"),
            };
            commands::homology(&path, &degrees, indecomposables)
        }
        Command::Bq { path, split } => commands::bq(&path, split.get()),
        Command::Membership(p) => commands::membership(&p.algebra, p.split.get(), &p.xi, &p.map),
        Command::Lift(p) => commands::lift(&p.algebra, p.split.get(), &p.xi, &p.map),
        Command::Kernel { path, split } => commands::kernel(&path, split.get()),
        Command::Homotopy {
            alpha,
            beta,
            special,
            witness,
        } => commands::homotopy(&alpha, &beta, pair(&special), witness.as_deref()),
        Command::Report { path, split } => commands::report(&path, split.get()),
        Command::Examples { which } => commands::examples(&match which {
            ExampleCommand::WedgeSpheres { n, q } => Example::WedgeSpheres { n, q },
            ExampleCommand::Suspension { ranks } => Example::Suspension { ranks },
            ExampleCommand::AttachCells { base, q, attachments } => Example::AttachCells { base, q, attachments },
            ExampleCommand::C4 { n, r, s } => Example::C4 { n, r, s },
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.format == Format::Json {
                println!("{}", serde_json::json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
            }
            eprintln!("error ({}): {e}", e.kind());
            e.into()
        }
    }
}
