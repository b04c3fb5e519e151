use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fusion_core::tolerances::Tolerances;
use fusion_core::{RootDatum, SimpleType, Weight, Q};

#[derive(Parser, Debug)]
#[command(name = "fusion", version, about = "Level-k fusion rings and fixed-point localization checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// All nonzero fusion coefficients at one level.
    FusionTable(TableArgs),
    /// Run one verification suite.
    Verify(VerifyArgs),
    /// Character value at a rational Cartan point.
    Character(CharacterArgs),
    /// Affine Weyl reduction of a rational point.
    Alcove(AlcoveArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// FC_p = e((k+h∨)t)·FC_q on every fixed point.
    #[value(alias = "thm41-phase")]
    Phase,
    /// Σ FC over all fixed points equals χ_λ χ_λ'.
    #[value(alias = "thm41-total")]
    Totals,
    /// Translation sums, flip counts and parities per fixed point.
    #[value(alias = "prop43")]
    SignSums,
    /// Finite and affine sign-flip criteria agree.
    #[value(alias = "lemma42")]
    FlipSets,
    Orthogonality,
    /// Verlinde sums against Kac-Walton.
    Oracle,
    /// Σ_c N_{λλ'}^c χ_c = χ_λ χ_λ' on torsion points.
    #[value(alias = "prop52")]
    H0,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel sums.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Rounding tolerance for Verlinde sums.
    #[arg(long)]
    pub rounding_tol: Option<f64>,
    /// Relative tolerance for summed identities.
    #[arg(long)]
    pub sum_tol: Option<f64>,
    /// Tolerance for single contributions.
    #[arg(long)]
    pub single_tol: Option<f64>,
}

impl Common {
    pub fn tolerances(&self) -> Tolerances {
        let d = Tolerances::default();
        Tolerances {
            rounding: self.rounding_tol.unwrap_or(d.rounding),
            sum: self.sum_tol.unwrap_or(d.sum),
            single: self.single_tol.unwrap_or(d.single),
        }
    }
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub level: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub level: Option<u32>,
    /// Run levels 1..=N.
    #[arg(long)]
    pub max_level: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Seed for random regular points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random regular points per pair.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CharacterArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Cartan point, comma-separated rationals `p/q` in fundamental-weight coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct AlcoveArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[command(flatten)]
    pub common: Common,
}

/// A command-line value that failed to parse.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn parse_algebra(s: &str) -> Result<RootDatum, UsageError> {
    let ty: SimpleType = s.parse().map_err(|e| UsageError(format!("--algebra {s:?}: {e}")))?;
    RootDatum::new(ty).map_err(|e| UsageError(format!("--algebra {s:?}: {e}")))
}

fn split<'a>(flag: &str, s: &'a str, rank: usize) -> Result<Vec<&'a str>, UsageError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != rank {
        return Err(UsageError(format!(
            "--{flag} {s:?}: expected {rank} comma-separated coordinates, got {}",
            parts.len()
        )));
    }
    Ok(parts)
}

/// Nonnegative integer coordinates.
pub fn parse_weight(flag: &str, s: &str, rank: usize) -> Result<Weight, UsageError> {
    let mut coords = Vec::with_capacity(rank);
    for (i, part) in split(flag, s, rank)?.into_iter().enumerate() {
        let v: u32 = part.parse().map_err(|_| {
            UsageError(format!(
                "--{flag} {s:?}: coordinate {} ({part:?}) is not a nonnegative integer",
                i + 1
            ))
        })?;
        coords.push(v as i64);
    }
    Ok(Weight::from_ints(&coords))
}

fn parse_rational(part: &str) -> Option<Q> {
    match part.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
            (d != 0).then(|| Q::new(n, d))
        }
        None => part.parse().ok().map(Q::from_integer),
    }
}

/// Rational coordinates `p/q` or integers.
pub fn parse_point(flag: &str, s: &str, rank: usize) -> Result<Weight, UsageError> {
    let mut coords = Vec::with_capacity(rank);
    for (i, part) in split(flag, s, rank)?.into_iter().enumerate() {
        let v = parse_rational(part).ok_or_else(|| {
            UsageError(format!("--{flag} {s:?}: coordinate {} ({part:?}) is not a rational p/q", i + 1))
        })?;
        coords.push(v);
    }
    Ok(Weight(coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_points() {
        assert_eq!(parse_weight("lambda", "1, 0", 2).unwrap(), Weight::from_ints(&[1, 0]));
        let err = parse_weight("lambda", "1,x", 2).unwrap_err();
        assert!(err.0.contains("coordinate 2"), "{err}");
        assert!(parse_weight("lambda", "1", 2).is_err());
        assert!(parse_weight("lambda", "-1,0", 2).is_err());
        assert_eq!(parse_point("point", "-3/2", 1).unwrap(), Weight(vec![Q::new(-3, 2)]));
        assert!(parse_point("point", "1/0", 1).is_err());
    }

    #[test]
    fn algebra_names() {
        assert_eq!(parse_algebra("B2").unwrap().rank(), 2);
        assert!(parse_algebra("B1").is_err());
        assert!(parse_algebra("Z3").is_err());
    }
}
