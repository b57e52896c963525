use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use kneserlab::chain::{build_chain_opts, verify_chain, Chain, ChainOptions};
use kneserlab::error::Result;
use kneserlab::setfam::make_params;
use kneserlab::Family;

use crate::config::{OutputFormat, RunConfig};
use crate::render::{params_line, set_csv, to_json};

#[derive(Args)]
pub struct ChainArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    /// Start set, e.g. `1,2,3`.
    #[arg(long)]
    pub a: String,
    /// Target set, e.g. `1,4,5`.
    #[arg(long)]
    pub b: String,
    /// Forbidden family file (defaults to the empty family).
    #[arg(long)]
    pub c: Option<PathBuf>,
    /// Fall back to the breadth-first oracle when the forbidden family
    /// exceeds the C(l,p) guarantee.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Serialize)]
struct ChainReport<'a> {
    params: kneserlab::UniverseParams,
    #[serde(flatten)]
    chain: &'a Chain,
    verified: bool,
}

pub fn run(args: &ChainArgs, config: &RunConfig) -> Result<u8> {
    let params = make_params(args.n, args.r)?;
    let a = super::parse_set_arg(&args.a, args.n)?;
    let b = super::parse_set_arg(&args.b, args.n)?;
    let forbidden = match &args.c {
        Some(path) => super::read_family(path)?,
        None => Family::empty(args.n, args.r)?,
    };

    let opts = ChainOptions {
        allow_oracle_fallback: args.oracle,
        oracle_budget: config.enumeration_budget,
    };
    let chain = build_chain_opts(&params, &forbidden, a, b, &opts)?;
    let verified = verify_chain(&params, &forbidden, a, b, &chain);

    let body = match config.output_format {
        OutputFormat::Json => to_json(
            "chain",
            config.seed,
            ChainReport {
                params,
                chain: &chain,
                verified,
            },
        ),
        _ => {
            let mut out = format!("{}\n", params_line(&params));
            for (k, s) in chain.sets.iter().enumerate() {
                out.push_str(&format!("S{k}: {}\n", set_csv(*s)));
            }
            out.push_str(&format!(
                "trace: {}\n",
                serde_json::to_string(&chain.trace).expect("trace serializes")
            ));
            out.push_str(&format!("verified: {verified}\n"));
            out
        }
    };
    config.emit(&body)?;
    Ok(if verified { 0 } else { 1 })
}
