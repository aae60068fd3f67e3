//! Command-line driver: expression expansion, relation generation, rank
//! tables and modular verification sweeps.

pub mod expr;

use std::io::{self, Write};
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fmzv_core::numeric::{Counts, PrimeResult};
use fmzv_core::relation::{gen_conj_with_unit, ikz_shifted};
use fmzv_core::{
    generate, primes_between, relation_rank_with, verify_all, zeta_trunc_mod, Family, FamilyCaps,
    Index, Mode, Relation, TableRow, DEFAULT_MODULUS,
};

pub use expr::{parse_expr, ParseError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// Highest weight accepted without `--force`.
pub const MAX_EXACT_WEIGHT: u32 = 14;
pub const MAX_MODQ_WEIGHT: u32 = 16;
pub const MAX_GENERATE_WEIGHT: u32 = 14;

#[derive(Debug, Parser)]
#[command(
    name = "fmzv",
    version,
    about = "Derivation relations for finite multiple zeta values"
)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand an expression and print it in the index basis.
    Expand {
        expr: String,
        /// Print in x/y letters instead of the index basis.
        #[arg(long)]
        letters: bool,
        /// Do not normalize the overall sign.
        #[arg(long)]
        raw: bool,
    },
    /// Stream a relation family as JSON lines.
    Generate {
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Rank of one family at one weight, as CSV.
    Rank {
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        rank: RankArgs,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Ranks over a weight range, as CSV.
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// `A..B` or a single weight.
        #[arg(long, value_parser = parse_range)]
        weights: RangeInclusive<u32>,
        #[command(flatten)]
        rank: RankArgs,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Evaluate a family modulo a range of primes, as JSON lines.
    /// IKZ relations are checked through their weight-shifted finite form.
    Verify {
        /// `K` or `A..B`.
        #[arg(long, value_parser = parse_range)]
        weight: RangeInclusive<u32>,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// `A..B`, inclusive.
        #[arg(long, value_parser = parse_range64, default_value = "11..499")]
        primes: RangeInclusive<u64>,
        /// Print only the summary line.
        #[arg(long)]
        summary_only: bool,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Truncated sum of one index modulo a prime.
    Eval {
        /// Comma-separated parts, e.g. `2,1`.
        #[arg(long)]
        index: String,
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Ikz,
    Conj,
    Thm2,
    Thm3,
    Thm3r,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Ikz => Family::Ikz,
            FamilyArg::Conj => Family::Conj,
            FamilyArg::Thm2 => Family::Thm2,
            FamilyArg::Thm3 => Family::Thm3,
            FamilyArg::Thm3r => Family::Thm3r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Modq,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Maximum depth of the prefix index `m` (THM2, THM3, THM3R).
    #[arg(long, default_value_t = 2)]
    pub max_s: usize,
    /// Maximum number of derivations (THM3, THM3R).
    #[arg(long, default_value_t = 2)]
    pub max_t: usize,
    /// Also emit the CONJ relation with seed `w = 1`.
    #[arg(long)]
    pub include_unit_seed: bool,
    /// Lift the weight caps.
    #[arg(long)]
    pub force: bool,
}

impl GenArgs {
    fn caps(&self) -> FamilyCaps {
        FamilyCaps {
            max_s: self.max_s,
            max_t: self.max_t,
        }
    }
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    /// Prime modulus for `--mode modq` (below 2^32).
    #[arg(long, default_value_t = DEFAULT_MODULUS)]
    pub modulus: u64,
    /// Second modulus; a disagreement is reported on stderr.
    #[arg(long)]
    pub check_modulus: Option<u64>,
    /// Write 0 in the millis column so output is byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let r = parse_range64(s)?;
    let lo = u32::try_from(*r.start()).map_err(|e| e.to_string())?;
    let hi = u32::try_from(*r.end()).map_err(|e| e.to_string())?;
    Ok(lo..=hi)
}

fn parse_range64(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad range start: {}", e))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad range end: {}", e))?;
    if lo > hi {
        return Err(format!("empty range {}..{}", lo, hi));
    }
    Ok(lo..=hi)
}

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn resource(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_RESOURCE,
            message: message.into(),
        }
    }
}

impl From<fmzv_core::Error> for CliError {
    fn from(e: fmzv_core::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn family_relations(family: Family, weight: u32, gen: &GenArgs) -> Result<Vec<Relation>, CliError> {
    if weight > MAX_GENERATE_WEIGHT && !gen.force {
        return Err(CliError::resource(format!(
            "weight {} exceeds {} (use --force)",
            weight, MAX_GENERATE_WEIGHT
        )));
    }
    let rels = if family == Family::Conj && gen.include_unit_seed {
        gen_conj_with_unit(weight)?
    } else {
        generate(family, weight, gen.caps())?
    };
    Ok(rels)
}

fn check_rank_cap(weight: u32, rank: &RankArgs, gen: &GenArgs) -> Result<Mode, CliError> {
    let (mode, cap) = match rank.mode {
        ModeArg::Exact => (Mode::Exact, MAX_EXACT_WEIGHT),
        ModeArg::Modq => (Mode::ModQ(rank.modulus), MAX_MODQ_WEIGHT),
    };
    if weight > cap && !gen.force {
        return Err(CliError::resource(format!(
            "weight {} exceeds the {} cap of {} (use --force)",
            weight,
            mode.label(),
            cap
        )));
    }
    Ok(mode)
}

fn rank_row(
    family: Family,
    weight: u32,
    rank: &RankArgs,
    gen: &GenArgs,
) -> Result<TableRow, CliError> {
    let mode = check_rank_cap(weight, rank, gen)?;
    if family == Family::Conj && gen.include_unit_seed {
        return Err(CliError::usage(
            "--include-unit-seed is not supported for ranks",
        ));
    }
    let mut row = relation_rank_with(family, weight, mode, gen.caps())?;
    if let (Mode::ModQ(_), Some(q2)) = (mode, rank.check_modulus) {
        let other = relation_rank_with(family, weight, Mode::ModQ(q2), gen.caps())?;
        if other.rank != row.rank {
            eprintln!(
                "warning: weight {} rank {} mod {} but {} mod {}",
                weight, row.rank, rank.modulus, other.rank, q2
            );
            row.rank = row.rank.max(other.rank);
        }
    }
    if rank.no_timing {
        row.millis = 0;
    }
    Ok(row)
}

fn summary_line(relations: usize, primes: usize, counts: Counts) -> String {
    format!(
        "{{\"summary\":{{\"relations\":{},\"primes\":{},\"pass\":{},\"fail\":{},\"skipped\":{}}}}}",
        relations, primes, counts.pass, counts.fail, counts.skipped
    )
}

/// Runs one command, writing its output to `out`. Returns the exit code.
pub fn run<W: Write>(command: &Command, out: &mut W) -> Result<u8, CliError> {
    match command {
        Command::Expand { expr, letters, raw } => {
            let p = parse_expr(expr).map_err(|e| CliError::usage(e.to_string()))?;
            let p = if *raw { p } else { p.sign_normalized() };
            if *letters || !p.in_h1() {
                writeln!(out, "{}", p)?;
            } else {
                writeln!(out, "{}", p.display_index_basis()?)?;
            }
        }
        Command::Generate {
            weight,
            family,
            gen,
        } => {
            for rel in family_relations((*family).into(), *weight, gen)? {
                writeln!(out, "{}", rel.to_json())?;
            }
        }
        Command::Rank {
            weight,
            family,
            rank,
            gen,
        } => {
            let row = rank_row((*family).into(), *weight, rank, gen)?;
            writeln!(out, "{}", TableRow::CSV_HEADER)?;
            writeln!(out, "{}", row)?;
        }
        Command::Table {
            family,
            weights,
            rank,
            gen,
        } => {
            // refuse the whole range before computing any of it
            check_rank_cap(*weights.end(), rank, gen)?;
            writeln!(out, "{}", TableRow::CSV_HEADER)?;
            for k in weights.clone() {
                let row = rank_row((*family).into(), k, rank, gen)?;
                writeln!(out, "{}", row)?;
                out.flush()?;
            }
        }
        Command::Verify {
            weight,
            family,
            primes,
            summary_only,
            gen,
        } => {
            let family: Family = (*family).into();
            let primes = primes_between(*primes.start(), *primes.end());
            let mut rels = Vec::new();
            for k in weight.clone() {
                let batch = family_relations(family, k, gen)?;
                if family == Family::Ikz {
                    // x-stripped form: the finite relation one weight lower.
                    for rel in &batch {
                        rels.push(ikz_shifted(rel)?);
                    }
                } else {
                    rels.extend(batch);
                }
            }
            let reports = verify_all(&rels, &primes)?;
            let mut counts = Counts::default();
            for report in &reports {
                counts = counts.merge(report.counts());
                if !summary_only {
                    for r in &report.results {
                        writeln!(out, "{}", PrimeResult::to_json(r))?;
                    }
                }
            }
            writeln!(out, "{}", summary_line(rels.len(), primes.len(), counts))?;
            if counts.fail > 0 {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Eval { index, prime } => {
            let ix: Index = index.parse().map_err(CliError::usage)?;
            let r = zeta_trunc_mod(&ix, *prime)?;
            writeln!(out, "{}", r.value())?;
        }
    }
    Ok(EXIT_OK)
}

/// Configures the global thread pool. A no-op without the `parallel` feature.
pub fn set_threads(threads: Option<usize>) -> Result<(), CliError> {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(e.to_string()))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}
