use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use serde::Serialize;

use kneserlab::constructions::{
    expected_sizes, large_r_pair, pair_partition, star_partition, ConstructionKind, FamilyPair,
    SizeRecord, SplitRule,
};
use kneserlab::error::{Error, Result};
use kneserlab::setfam::{make_params, write_family};

use crate::config::{OutputFormat, RunConfig};
use crate::render::{params_line, to_json};

#[derive(Args)]
pub struct ConstructArgs {
    /// One of: star_partition, large_r_pair, pair_partition.
    pub name: String,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub r: u32,
    /// Star center element (star_partition).
    #[arg(long)]
    pub center: Option<u32>,
    /// Split rule: first-half, alternating, singleton-vs-rest (star_partition).
    #[arg(long, default_value = "first-half")]
    pub rule: String,
    /// Comma-separated part indices (pair_partition), e.g. `1,3`.
    #[arg(long)]
    pub parts: Option<String>,
    /// Directory for the emitted family files.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Serialize)]
struct ConstructReport {
    params: kneserlab::UniverseParams,
    pair: FamilyPair,
    expected: SizeRecord,
    sizes_match: bool,
    file_a: String,
    file_b: String,
}

pub fn run(args: &ConstructArgs, config: &RunConfig) -> Result<u8> {
    let kind = ConstructionKind::from_str(&args.name)?;

    let (params, pair) = match kind {
        ConstructionKind::StarPartition => {
            let n = args
                .n
                .ok_or_else(|| Error::domain("star_partition requires --n"))?;
            let center = args
                .center
                .ok_or_else(|| Error::domain("star_partition requires --center"))?;
            let rule = SplitRule::from_str(&args.rule)?;
            let params = make_params(n, args.r)?;
            let pair = star_partition(&params, center, rule)?;
            (params, pair)
        }
        ConstructionKind::LargeRPair => {
            let n = args
                .n
                .ok_or_else(|| Error::domain("large_r_pair requires --n"))?;
            let params = make_params(n, args.r)?;
            let pair = large_r_pair(&params)?;
            (params, pair)
        }
        ConstructionKind::PairPartition => {
            let parts_text = args
                .parts
                .as_deref()
                .ok_or_else(|| Error::domain("pair_partition requires --parts"))?;
            let mut parts = Vec::new();
            for item in parts_text.split(',') {
                let item = item.trim();
                parts.push(item.parse::<u64>().map_err(|_| {
                    Error::domain(format!("invalid part index '{item}'"))
                })?);
            }
            let params = make_params(2 * args.r, args.r)?;
            let pair = pair_partition(args.r, &parts)?;
            (params, pair)
        }
    };

    let expected = expected_sizes(&params, kind);
    let sizes_match = expected.a.is_none_or(|a| a == pair.a.len() as u64)
        && expected.b.is_none_or(|b| b == pair.b.len() as u64)
        && expected.total == pair.sum();

    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| Error::domain(format!("cannot create {}: {e}", args.out_dir.display())))?;
    let header = format!("# construction: {} params: {}\n", kind, pair.meta.params);
    let file_a = args.out_dir.join(format!("{kind}-A.fam"));
    let file_b = args.out_dir.join(format!("{kind}-B.fam"));
    std::fs::write(&file_a, format!("{header}{}", write_family(&pair.a)))
        .map_err(|e| Error::domain(format!("cannot write {}: {e}", file_a.display())))?;
    std::fs::write(&file_b, format!("{header}{}", write_family(&pair.b)))
        .map_err(|e| Error::domain(format!("cannot write {}: {e}", file_b.display())))?;

    let body = match config.output_format {
        OutputFormat::Json => to_json(
            "construct",
            config.seed,
            ConstructReport {
                params,
                expected,
                sizes_match,
                file_a: file_a.display().to_string(),
                file_b: file_b.display().to_string(),
                pair,
            },
        ),
        _ => {
            let expected_str = match (expected.a, expected.b) {
                (Some(a), Some(b)) => format!("{a} + {b} = {}", expected.total),
                _ => format!("total {}", expected.total),
            };
            format!(
                "{}\nconstruction: {} ({})\n|A| = {}, |B| = {}, sum = {}\nexpected sizes: {expected_str}\nsizes_match = {sizes_match}\nwrote {}\nwrote {}\n",
                params_line(&params),
                kind,
                pair.meta.params,
                pair.a.len(),
                pair.b.len(),
                pair.sum(),
                file_a.display(),
                file_b.display(),
            )
        }
    };
    config.emit(&body)?;
    Ok(if sizes_match { 0 } else { 1 })
}
