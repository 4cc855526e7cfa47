//! `symsuper` — exact computations around the symmetric group algebra seen
//! as a superalgebra: seminormal representation matrices, graded simple
//! modules, bracket closures of the transpositions, and a verification suite
//! for the structural facts about the Lie superalgebra they generate.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails or
//! plumbing breaks, 2 for unusable arguments.

mod commands;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use symsuper::combinatorics::Partition;

use crate::commands::{CliError, Ctx, Format, GroupFamily, MatrixFamily};

#[derive(Parser)]
#[command(
    name = "symsuper",
    version,
    about = "Exact seminormal representations, graded simple modules, and bracket closures for the symmetric group algebra"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Wall-clock cap for bracket closures, in seconds
    /// (default: SYMSUPER_BUDGET_SECS, or one hour from 7 letters up).
    #[arg(long = "budget-secs", global = true, value_name = "SECS")]
    budget_secs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of n, optionally grouped into conjugation classes.
    Partitions {
        n: usize,
        /// Tag every shape with its class representative and block kind.
        #[arg(long)]
        classify: bool,
    },
    /// List the standard tableaux of a shape with their content vectors.
    Tableaux { shape: Partition },
    /// Seminormal matrix of a Coxeter generator or an arbitrary permutation.
    Rep {
        shape: Partition,
        /// Generator index i for the adjacent transposition (i, i+1), 1-based.
        #[arg(
            long = "gen",
            value_name = "I",
            conflicts_with = "perm",
            required_unless_present = "perm"
        )]
        generator: Option<usize>,
        /// A permutation: cycles "(1 3)(2 5)" or one-line "31254" / "3,1,2,5,4".
        #[arg(long, value_name = "CYCLES")]
        perm: Option<String>,
    },
    /// Jucys–Murphy matrix L_j in the seminormal basis (1-based, L_1 = 0).
    Jm { shape: Partition, j: usize },
    /// Sign-twisted isomorphism from a shape onto its conjugate.
    Phi { shape: Partition },
    /// The graded irreducible labelled by a class representative.
    Supermodule { shape: Partition },
    /// Restriction to one letter fewer as eigenspaces of the top Jucys–Murphy element.
    Branch { shape: Partition },
    /// Bracket closure of the transpositions inside the group algebra.
    Closure {
        n: usize,
        /// Also write the outcome as JSON to this path.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Block census of a group algebra from rational center computations.
    Blocks {
        #[command(subcommand)]
        group: BlocksGroup,
    },
    /// Bracket closures inside matrix superalgebra models.
    Matrixlie {
        #[command(subcommand)]
        model: MatrixModel,
    },
    /// Run the verification suite and report every check.
    Verify {
        /// Largest number of letters to verify.
        #[arg(long = "max-n", value_name = "K")]
        max_n: usize,
        /// Include the seven-letter closure (minutes of work; off by default).
        #[arg(long = "include-7")]
        include_seven: bool,
        /// Also write the report as JSON to this path.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BlocksGroup {
    /// Symmetric group on n letters.
    Sym { n: usize },
    /// Dihedral group of order 2n, graded by rotation-vs-reflection.
    Dihedral { n: usize },
}

#[derive(Subcommand)]
enum MatrixModel {
    /// sl(m|m); both block sizes must agree.
    Sl {
        rows: usize,
        cols: usize,
        /// Close the odd part alone under the super bracket.
        #[arg(long = "odd-generation")]
        odd_generation: bool,
    },
    /// Traceless queer superalgebra sq(m).
    Sq {
        m: usize,
        /// Close the odd part alone under the super bracket.
        #[arg(long = "odd-generation")]
        odd_generation: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("symsuper: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("symsuper: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let mut sink: io::BufWriter<Box<dyn Write>> = io::BufWriter::new(match &cli.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout()),
    });
    let mut ctx = Ctx { format: cli.format, budget_secs: cli.budget_secs, out: &mut sink };
    let pass = match cli.command {
        Command::Partitions { n, classify } => commands::partitions(&mut ctx, n, classify)?,
        Command::Tableaux { shape } => commands::tableaux(&mut ctx, &shape)?,
        Command::Rep { shape, generator, perm } => {
            commands::rep(&mut ctx, &shape, generator, perm.as_deref())?
        }
        Command::Jm { shape, j } => commands::jm(&mut ctx, &shape, j)?,
        Command::Phi { shape } => commands::phi(&mut ctx, &shape)?,
        Command::Supermodule { shape } => commands::supermodule(&mut ctx, &shape)?,
        Command::Branch { shape } => commands::branch(&mut ctx, &shape)?,
        Command::Closure { n, json } => commands::closure(&mut ctx, n, json.as_deref())?,
        Command::Blocks { group } => match group {
            BlocksGroup::Sym { n } => commands::blocks(&mut ctx, GroupFamily::Symmetric, n)?,
            BlocksGroup::Dihedral { n } => commands::blocks(&mut ctx, GroupFamily::Dihedral, n)?,
        },
        Command::Matrixlie { model } => {
            let (family, m) = match model {
                MatrixModel::Sl { rows, cols, odd_generation } => {
                    require_odd_generation(odd_generation)?;
                    if rows != cols {
                        return Err(CliError::Usage(format!(
                            "only equal blocks are modelled; got sl({rows}|{cols})"
                        )));
                    }
                    (MatrixFamily::Sl, rows)
                }
                MatrixModel::Sq { m, odd_generation } => {
                    require_odd_generation(odd_generation)?;
                    (MatrixFamily::Sq, m)
                }
            };
            commands::matrixlie(&mut ctx, family, m)?
        }
        Command::Verify { max_n, include_seven, json } => {
            commands::verify(&mut ctx, max_n, include_seven, json.as_deref())?
        }
    };
    sink.flush()?;
    Ok(pass)
}

fn require_odd_generation(flag: bool) -> Result<(), CliError> {
    if flag {
        Ok(())
    } else {
        Err(CliError::Usage(
            "pass --odd-generation; closing the odd part is the only computation offered".into(),
        ))
    }
}
