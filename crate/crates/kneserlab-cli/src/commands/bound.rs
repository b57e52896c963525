use clap::Args;

use kneserlab::error::Result;
use kneserlab::extremal::{exact_max_sum, theorem_bound, BoundReport};
use kneserlab::setfam::make_params;

use crate::config::{OutputFormat, RunConfig};
use crate::render::{params_line, to_json};

#[derive(Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    /// Also compute the exact maximum of |A| + |B| (small instances only).
    #[arg(long)]
    pub exact: bool,
}

pub fn run(args: &BoundArgs, config: &RunConfig) -> Result<u8> {
    let params = make_params(args.n, args.r)?;
    let report = if args.exact {
        exact_max_sum(&params, config.exact_budget)?
    } else {
        BoundReport {
            params,
            bound: theorem_bound(&params),
            exact_max: None,
            witness: None,
            strict_gap: None,
        }
    };

    let body = match config.output_format {
        OutputFormat::Json => to_json("bound", config.seed, &report),
        _ => {
            let mut out = format!("{}\n", params_line(&params));
            out.push_str(&format!("bound = {}\n", report.bound));
            if let Some(exact) = report.exact_max {
                out.push_str(&format!("exact_max = {exact}\n"));
                out.push_str(&format!("strict_gap = {}\n", report.strict_gap.unwrap()));
            }
            if let Some(pair) = &report.witness {
                out.push_str(&format!(
                    "witness: |A| = {}, |B| = {} ({})\n",
                    pair.a.len(),
                    pair.b.len(),
                    pair.meta.params
                ));
            }
            out
        }
    };
    config.emit(&body)
}
