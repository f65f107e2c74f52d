use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grpoly_core::polyfun::{Strategy, DEFAULT_CAP};
use grpoly_core::verifiers::OmegaBounds;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "grpoly", version, about = "Polynomial functions over finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Clone, Debug, Args)]
pub struct Flags {
    /// Number of variables x₁..xₙ.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    #[arg(long, global = true, default_value = "naive", value_parser = parse_strategy)]
    pub strategy: Strategy,
    /// Element cap for the naive closure.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Law sweep word length, or the rewriting word budget for lemma3.x.
    #[arg(long = "max-word-len", global = true)]
    pub max_word_len: Option<usize>,
    /// Number of law variables.
    #[arg(long, global = true, default_value_t = 2)]
    pub vars: usize,
    /// Omega search bounds R,S,E.
    #[arg(long, global = true, default_value = "4,4,4", value_parser = parse_bounds)]
    pub bounds: OmegaBounds,
    #[arg(long = "k-max", global = true, default_value_t = 6)]
    pub k_max: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, series and invariants of a group.
    Analyze { file: PathBuf },
    /// Polynomial function groups.
    Polyfun {
        #[command(subcommand)]
        action: PolyfunCommand,
    },
    /// Run one verifier.
    Verify {
        claim: Claim,
        file: PathBuf,
        /// Largest |ζ| for the rewriting checks.
        #[arg(long = "zeta-max", default_value_t = 20)]
        zeta_max: i64,
        /// Element sequence b₁,…,b_d for lemma3.5 (default: a polycyclic sequence).
        #[arg(long, value_delimiter = ',')]
        sequence: Option<Vec<usize>>,
    },
    /// Annihilating polynomial of an automorphism of a f.g. abelian group.
    Cohen { file: PathBuf },
    /// Bounded Ω searches for one pair, or for all pairs when `--a`/`--b` are omitted.
    Omega {
        file: PathBuf,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Polycyclic decomposition (finite groups) or Smith normal form (abelian presentations).
    Decompose {
        file: PathBuf,
        #[arg(long)]
        element: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PolyfunCommand {
    /// Realize Ḡ[x₁..xₙ] and report its order and semidirect decomposition.
    Build {
        file: PathBuf,
        /// A term such as `a3 * x1^2 * a5^-1`, tabulated and tested for membership.
        #[arg(long)]
        term: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    #[value(name = "lemma2.1")]
    Lemma21,
    #[value(name = "thm1.1")]
    Thm11,
    #[value(name = "thm1.2")]
    Thm12,
    #[value(name = "lemma2.2")]
    Lemma22,
    #[value(name = "lemma3.2")]
    Lemma32,
    #[value(name = "lemma3.5")]
    Lemma35,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Lemma21 => "lemma2.1",
            Claim::Thm11 => "thm1.1",
            Claim::Thm12 => "thm1.2",
            Claim::Lemma22 => "lemma2.2",
            Claim::Lemma32 => "lemma3.2",
            Claim::Lemma35 => "lemma3.5",
        }
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|_| format!("expected `naive` or `chain`, found `{s}`"))
}

pub fn parse_bounds(s: &str) -> Result<OmegaBounds, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected R,S,E, found `{s}`"));
    }
    let num = |p: &str| p.parse::<usize>().map_err(|e| format!("`{p}`: {e}"));
    let e = num(parts[2])?;
    Ok(OmegaBounds {
        r: num(parts[0])?,
        s: num(parts[1])?,
        e: e as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(parse_bounds("1, 2,3").unwrap(), OmegaBounds { r: 1, s: 2, e: 3 });
        assert!(parse_bounds("1,2").is_err());
        assert!(parse_bounds("1,2,-3").is_err());
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = Cli::try_parse_from([
            "grpoly", "verify", "lemma2.1", "S3.json", "--n", "2", "--max-word-len", "4", "--strategy", "chain",
        ])
        .unwrap();
        assert_eq!(cli.flags.n, 2);
        assert_eq!(cli.flags.max_word_len, Some(4));
        assert_eq!(cli.flags.strategy, Strategy::Chain);
        assert!(matches!(cli.command, Command::Verify { claim: Claim::Lemma21, .. }));
        assert!(Cli::try_parse_from(["grpoly", "verify", "lemma9", "x.json"]).is_err());
        assert!(Cli::try_parse_from(["grpoly", "analyze", "x.json", "--strategy", "fast"]).is_err());
    }
}
