use clap::Args;

use kneserlab::error::Result;
use kneserlab::setfam::{compression_failure_scenario, make_params, write_family};

use crate::config::{OutputFormat, RunConfig};
use crate::render::{params_line, set_csv, to_json};

#[derive(Args)]
pub struct CounterexampleArgs {
    #[arg(long)]
    pub r: u32,
}

pub fn run(args: &CounterexampleArgs, config: &RunConfig) -> Result<u8> {
    let report = compression_failure_scenario(args.r)?;
    let both = report.standard_disjointness_violated && report.modified_cross_violated;

    let body = match config.output_format {
        OutputFormat::Json => to_json("counterexample", config.seed, &report),
        _ => {
            let params = make_params(report.n, report.r)?;
            let mut out = format!("{}\n", params_line(&params));
            out.push_str(&format!(
                "witness: A = {}, B = {}, C = {}; delta_12(C) = {} (outside both families)\n",
                report.witness_a, report.witness_b, report.witness_c, report.shifted_c
            ));
            out.push_str(&format!(
                "family A = {:?}\nfamily B = {:?}\n",
                report.family_a, report.family_b
            ));
            out.push_str(&format!(
                "before: disjoint = {}, cross_intersecting = {}\n",
                report.before_disjoint, report.before_cross_intersecting
            ));
            out.push_str("standard shift:\n");
            out.push_str(&indent(&write_family(&report.standard_a), "  A' "));
            out.push_str(&indent(&write_family(&report.standard_b), "  B' "));
            out.push_str(&format!(
                "  disjointness violated = {} (shared: {:?})\n",
                report.standard_disjointness_violated, report.standard_common
            ));
            out.push_str("modified shift (membership tested against the union):\n");
            out.push_str(&indent(&write_family(&report.modified_a), "  A' "));
            out.push_str(&indent(&write_family(&report.modified_b), "  B' "));
            match report.modified_cross_witness {
                Some((x, y)) => out.push_str(&format!(
                    "  cross-intersection violated = true ({} and {} are disjoint)\n",
                    set_csv(x),
                    set_csv(y)
                )),
                None => out.push_str("  cross-intersection violated = false\n"),
            }
            out.push_str(&format!("both failure modes reproduced: {both}\n"));
            out
        }
    };
    config.emit(&body)?;
    Ok(if both { 0 } else { 1 })
}

fn indent(family_text: &str, prefix: &str) -> String {
    family_text
        .lines()
        .skip(1)
        .map(|l| format!("{prefix}{l}\n"))
        .collect()
}
