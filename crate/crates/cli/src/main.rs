//! `lcs`: command-line front end for lcs structures on Lie algebras.

mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "lcs",
    version,
    about = "Locally conformally symplectic structures on Lie algebras"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for parameter sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Parameter binding shared by the algebra and all forms.
    #[arg(long = "param", global = true, value_name = "NAME=p/q")]
    pub params: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Serialize)]
pub struct AlgebraArg {
    /// Salamon string such as "(0,0,-12,0)", a JSON file, or catalog:NAME.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Args, Debug, Serialize)]
pub struct PairArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub algebra: AlgebraArg,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: String,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Check the Jacobi identity.
    Validate(AlgebraArg),
    /// Center, nilpotency, solvability, complete solvability, unimodularity.
    Flags(AlgebraArg),
    /// Verify an lcs pair and report kind and exactness data.
    LcsCheck {
        #[command(flatten)]
        #[serde(flatten)]
        pair: PairArgs,
        /// A primitive to verify by substitution, with --u.
        #[arg(long, requires = "u", allow_hyphen_values = true)]
        eta: Option<String>,
        #[arg(long, requires = "eta", allow_hyphen_values = true)]
        u: Option<String>,
        /// A span such as "<e1,e3>" to verify as a Lagrangian ideal.
        #[arg(long, allow_hyphen_values = true)]
        lagrangian: Option<String>,
    },
    /// Lichnerowicz cohomology dimensions.
    Cohomology {
        #[command(flatten)]
        #[serde(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        theta: String,
    },
    /// lcs structure on h ⋊_D R from a contact form with D·eta = alpha eta.
    ConstructContact {
        #[command(flatten)]
        #[serde(flatten)]
        algebra: AlgebraArg,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        /// Rows separated by ';', entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        derivation: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// lcs structure on h ⋊_D R from a cosymplectic pair with D·omega = alpha omega.
    ConstructCosymplectic {
        #[command(flatten)]
        #[serde(flatten)]
        algebra: AlgebraArg,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long, allow_hyphen_values = true)]
        derivation: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Cotangent extension h* ⊕ h, or with --ideal the presentation of an lcs
    /// algebra from a Lagrangian ideal.
    ConstructCotangent {
        #[command(flatten)]
        #[serde(flatten)]
        algebra: AlgebraArg,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// rho(e_i) on h*, one per basis vector in order.
        #[arg(long, allow_hyphen_values = true)]
        rho: Vec<String>,
        /// "I,J:FORM" sets alpha(e_I, e_J) = FORM and alpha(e_J, e_I) = -FORM.
        #[arg(long = "cocycle", allow_hyphen_values = true)]
        cocycle: Vec<String>,
        #[arg(long, requires = "ideal", allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, requires = "omega")]
        ideal: Option<String>,
    },
    /// Families of the built-in catalog.
    CatalogList {
        #[arg(long)]
        family: Option<String>,
    },
    /// Verify every catalog row on the seeded parameter grid.
    CatalogVerify {
        /// Restrict to these families.
        #[arg(long)]
        family: Vec<String>,
        #[arg(long)]
        sequential: bool,
    },
    /// Equivalence ideal of two lcs pairs, or the Gröbner basis of a
    /// generator file ('-' for stdin).
    EquivalenceIdeal {
        #[arg(long, conflicts_with = "generators")]
        algebra: Option<String>,
        #[arg(long, requires = "algebra", allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, requires = "algebra", allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long, requires = "algebra", allow_hyphen_values = true)]
        to_omega: Option<String>,
        #[arg(long, requires = "algebra", allow_hyphen_values = true)]
        to_theta: Option<String>,
        #[arg(long)]
        rabinowitsch: bool,
        #[arg(long)]
        generators: Option<String>,
        /// Variable order for a generator file, comma separated.
        #[arg(long, requires = "generators")]
        vars: Option<String>,
        #[arg(long)]
        lex: bool,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Lagrangian ideals inside ker theta (dimension 4).
    LagrangianSearch {
        #[command(flatten)]
        #[serde(flatten)]
        pair: PairArgs,
        #[arg(long)]
        sequential: bool,
    },
    /// Lattice times for the almost abelian and Heisenberg examples.
    Lattice {
        #[command(subcommand)]
        case: LatticeCase,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum LatticeCase {
    /// diag(e^t, e^-t, 1) conjugate to an integer matrix of trace n.
    Diagonal {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    Inoue {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
    },
    Heisenberg {
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            if cli.json {
                let v = serde_json::json!({ "error": e.to_string(), "pass": false });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
