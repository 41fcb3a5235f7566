//! Command-line grammar and validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qharm::diffops::QSpec;
use qharm::symfun::FormulaId;
use qharm::Rational;

/// Exact computations with q-deformed Steenrod operators and q-harmonic polynomials.
#[derive(Debug, Clone, Parser)]
#[command(name = "qharm", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output file; `-` writes to standard output.
    #[arg(long, global = true, default_value = "-")]
    pub output: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for the parallel sweeps (default: all cores).
    #[arg(long, global = true, env = "QHARM_THREADS")]
    pub threads: Option<usize>,
    /// Include wall-clock timing in the report (makes the output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Compare every closed-form operator action with direct application.
    VerifyFormulas {
        #[arg(long)]
        n: usize,
        /// Restrict to these formula ids (e.g. NABLA1_E); default: all.
        #[arg(long = "formula", value_parser = parse_formula)]
        formulas: Vec<FormulaId>,
    },
    /// Build explicit harmonic lifts.
    #[command(subcommand)]
    Construct(Construct),
    /// Verification suites.
    #[command(subcommand)]
    Verify(Verify),
    /// Graded dimensions of the q-harmonics.
    Hilbert {
        #[arg(long)]
        n: usize,
        /// `generic` or an exact rational such as `-1/2`.
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        q: QSpec,
        /// Degree cutoff (default: C(n,2)).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Also report the graded Frobenius characteristic.
        #[arg(long)]
        frobenius: bool,
    },
    /// Look for singular values q0 = -a/b by comparison with the classical harmonics.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a_max: u64,
        #[arg(long)]
        b_max: u64,
        #[arg(long)]
        max_degree: usize,
        /// Compare Frobenius characteristics, not only dimensions.
        #[arg(long)]
        frobenius: bool,
    },
    /// Certified special q0-harmonics.
    #[command(subcommand)]
    Special(Special),
}

#[derive(Debug, Clone, Subcommand)]
pub enum Construct {
    /// The first lift of ∂_1 Δ: the explicit one, or the family member at --c.
    F1 {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = F1Method::Section2)]
        method: F1Method,
        /// Family parameter; required with `--method family`.
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        c: Option<Rational>,
    },
    /// Repeated lifting with the generic solver.
    Lift {
        #[arg(long)]
        n: usize,
        /// Starting polynomial in text form (default: ∂_1 Δ).
        #[arg(long)]
        f0: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// The explicit second lift f_2 of f_{1;c} with free parameter u.
    F2 {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "0")]
        u: Rational,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum F1Method {
    Section2,
    Family,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Verify {
    /// Check the coefficient formulas and the reduced equation for f_2.
    Appendix {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "0")]
        u: Rational,
    },
    /// Operator identities on random polynomials.
    Properties {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum Special {
    /// Δ e_k, harmonic at q0 = -1/(n-k).
    DeltaEk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// e_1^m(x_1..x_k)(x_1 - x_2), harmonic at q0 = -k/(m+1).
    E1m {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: u32,
    },
    /// The module spanned by the p_{i,j} (1-based i, j).
    Pij {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

fn parse_q(s: &str) -> Result<QSpec, String> {
    s.parse().map_err(|e: qharm::Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    qharm::ring::parse_rational(s).map_err(|e| e.to_string())
}

fn parse_formula(s: &str) -> Result<FormulaId, String> {
    s.parse().map_err(|e: qharm::Error| e.to_string())
}

/// Range checks that the grammar cannot express.
pub fn validate(cli: &Cli) -> Result<(), String> {
    let need = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(msg.to_string()) };
    if let Some(t) = cli.global.threads {
        need(t >= 1, "--threads must be at least 1")?;
    }
    match &cli.command {
        Command::VerifyFormulas { n, .. } => need(*n >= 1, "--n must be at least 1"),
        Command::Construct(Construct::F1 { n, method, c }) => match method {
            F1Method::Section2 => {
                need(c.is_none(), "--c is only valid with --method family")?;
                need(*n >= 3, "--n must be at least 3")
            }
            F1Method::Family => {
                need(c.is_some(), "--method family requires --c")?;
                need(*n >= 5, "--n must be at least 5 for the family")
            }
        },
        Command::Construct(Construct::Lift { n, steps, .. }) => {
            need(*n >= 2, "--n must be at least 2")?;
            need(*steps >= 1, "--steps must be at least 1")
        }
        Command::Construct(Construct::F2 { n, .. }) => need(*n >= 5, "--n must be at least 5"),
        Command::Verify(Verify::Appendix { n, .. }) => need(*n >= 6, "--n must be at least 6"),
        Command::Verify(Verify::Properties { n, cases, .. }) => {
            need(*n >= 1, "--n must be at least 1")?;
            need(*cases >= 1, "--cases must be at least 1")
        }
        Command::Hilbert { n, .. } => need(*n >= 1, "--n must be at least 1"),
        Command::Scan {
            n, a_max, b_max, ..
        } => {
            need(*n >= 1, "--n must be at least 1")?;
            need(
                *a_max >= 1 && *a_max <= *n as u64,
                "--a-max must be between 1 and n",
            )?;
            need(*b_max >= 1, "--b-max must be at least 1")
        }
        Command::Special(Special::DeltaEk { n, k }) => need(*k >= 1 && k < n, "need 1 <= k < n"),
        Command::Special(Special::E1m { n, k, m }) => {
            need(*k >= 2 && k <= n, "need 2 <= k <= n")?;
            need(*m >= 1, "--m must be at least 1")
        }
        Command::Special(Special::Pij { n, k, m, i, j }) => {
            need(*k >= 2 && k <= n, "need 2 <= k <= n")?;
            need(*m >= 1, "--m must be at least 1")?;
            need(
                *i >= 1 && i <= n && *j >= 1 && j <= n && i != j,
                "need distinct 1 <= i, j <= n",
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("qharm").chain(s.split_whitespace()))
    }

    #[test]
    fn negative_rationals_parse() {
        let cli = parse("hilbert --n 3 --q -2/5").unwrap();
        match cli.command {
            Command::Hilbert { q, .. } => assert_eq!(q.to_string(), "-2/5"),
            _ => panic!(),
        }
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = parse("scan --n 3 --a-max 1 --b-max 1 --max-degree 2 --format csv --threads 2")
            .unwrap();
        assert_eq!(cli.global.format, Format::Csv);
        assert_eq!(cli.global.threads, Some(2));
        assert!(validate(&cli).is_ok());
    }

    #[test]
    fn validation() {
        assert!(validate(&parse("hilbert --n 0 --q generic").unwrap()).is_err());
        assert!(validate(&parse("special delta-ek --n 3 --k 3").unwrap()).is_err());
        assert!(validate(&parse("construct f1 --n 4 --c 1").unwrap()).is_err());
        assert!(validate(&parse("construct f1 --n 5 --method family --c 1").unwrap()).is_ok());
        assert!(parse("hilbert --n 3 --q 1/0").is_err());
    }
}
