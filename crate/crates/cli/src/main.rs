mod charspec;
mod report;
mod verbs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use report::Failure;

/// Lambda-adic Eisenstein series, p-adic L-functions, cusps and residues.
#[derive(Parser)]
#[command(name = "lambda-adic", version)]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print a plain-text table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    verb: Verb,
}

/// `M,D`: coefficients mod p^M, series mod X^D.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Precision {
    pub m: u32,
    pub d: usize,
}

fn parse_prec(s: &str) -> Result<Precision, String> {
    let (m, d) = s.split_once(',').ok_or("precision must be M,D")?;
    let m: u32 = m.trim().parse().map_err(|_| format!("bad p-adic precision '{}'", m))?;
    let d: usize = d.trim().parse().map_err(|_| format!("bad X-adic precision '{}'", d))?;
    if m == 0 || d == 0 {
        return Err("precision bounds must be positive".into());
    }
    Ok(Precision { m, d })
}

fn parse_p(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("bad prime '{}'", s))?;
    if p < 5 || !lambda_adic::arith::int::is_prime(p) {
        return Err(format!("p = {} must be a prime >= 5", p));
    }
    Ok(p)
}

#[derive(Args, Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct PrecArg {
    /// Precision as M,D (p-adic digits, X-adic terms).
    #[arg(long, env = "LAMBDA_ADIC_PREC", default_value = "6,4", value_parser = parse_prec)]
    pub prec: Precision,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct PairArgs {
    #[arg(long, value_parser = parse_p)]
    pub p: u64,
    #[arg(long)]
    pub theta: String,
    #[arg(long)]
    pub psi: String,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct EisArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value_t = 1)]
    pub t: u64,
    /// Tame level N; defaults to the smallest admissible one.
    #[arg(long)]
    pub level: Option<u64>,
    #[arg(long, default_value_t = 20)]
    pub nmax: usize,
    #[command(flatten)]
    pub prec: PrecArg,
}

#[derive(Subcommand, Clone, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verb {
    /// Conductor, order, parity and Gauss sum of a character.
    Charinfo {
        #[arg(long, value_parser = parse_p)]
        p: u64,
        #[arg(long = "char")]
        chi: String,
    },
    /// Kubota-Leopoldt series F(X, chi), or G(X, chi) with --g.
    Klps {
        #[arg(long, value_parser = parse_p)]
        p: u64,
        #[arg(long = "char")]
        chi: String,
        #[arg(long)]
        g: bool,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// The factorization of A_{theta,psi}.
    Aseries {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// b_l(X) and its unit verdict.
    Bell {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        l: u64,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// q-expansion of the Lambda-adic Eisenstein series.
    Eis(EisArgs),
    /// Weight-k specialization, checked against the classical series.
    Specialize {
        #[command(flatten)]
        eis: EisArgs,
        #[arg(long)]
        k: u32,
    },
    /// T_n on the q-expansion, with the eigenvalue check for prime n.
    Hecke {
        #[command(flatten)]
        eis: EisArgs,
        #[arg(long)]
        n: u64,
    },
    /// Imprimitive decomposition into primitive series.
    Decompose(EisArgs),
    /// Residual congruence of two Eisenstein series.
    Congruent {
        #[arg(long, value_parser = parse_p)]
        p: u64,
        #[arg(long)]
        theta1: String,
        #[arg(long)]
        psi1: String,
        #[arg(long)]
        theta2: String,
        #[arg(long)]
        psi2: String,
        /// Tame level for the brute-force witness search.
        #[arg(long)]
        level: Option<u64>,
        #[arg(long, default_value_t = 200)]
        bound: u64,
    },
    /// Cusps of X_1(M).
    Cusps {
        #[command(subcommand)]
        action: CuspsVerb,
    },
    /// Residues of the weight-two specialization at the cusps.
    Residues {
        #[command(subcommand)]
        action: ResiduesVerb,
    },
    /// Weierstrass preparation of a series given by coefficients or as F(X, chi).
    Weierstrass {
        #[arg(long, value_parser = parse_p)]
        p: u64,
        /// Integer coefficients c0,c1,...
        #[arg(long, conflicts_with = "chi", required_unless_present = "chi")]
        coeffs: Option<String>,
        #[arg(long = "char")]
        chi: Option<String>,
        #[command(flatten)]
        prec: PrecArg,
    },
    /// Fitting ideal of a presented Lambda-module.
    Fitting {
        #[arg(long, value_parser = parse_p)]
        p: u64,
        /// Relations as JSON: rows of integer coefficient lists, e.g. [[[1,5],[0,1]]].
        #[arg(long)]
        relations: String,
        /// Number of generators; defaults to the row length.
        #[arg(long)]
        generators: Option<usize>,
        #[command(flatten)]
        prec: PrecArg,
    },
}

#[derive(Subcommand, Clone, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CuspsVerb {
    List {
        #[arg(long)]
        m: u64,
    },
    Widths {
        #[arg(long)]
        m: u64,
    },
    Fricke {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        t: u64,
    },
    Ordinary {
        #[arg(long)]
        m: u64,
        #[arg(long, value_parser = parse_p)]
        p: u64,
    },
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct ResidueArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value_t = 1)]
    pub t: u64,
    #[arg(long)]
    pub level: Option<u64>,
    #[command(flatten)]
    pub prec: PrecArg,
}

#[derive(Subcommand, Clone, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResiduesVerb {
    Table(ResidueArgs),
    Verify(ResidueArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = verbs::run(&cli.verb);
    let (report, code) = match outcome {
        Ok(r) => {
            let code = if r.verified { 0 } else { 1 };
            (r, code)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {}", message);
            return ExitCode::from(code);
        }
    };
    let text = if cli.table { report.to_table() } else { report.to_json() };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                return ExitCode::from(2);
            }
        }
        None => print!("{}", text),
    }
    ExitCode::from(code)
}
