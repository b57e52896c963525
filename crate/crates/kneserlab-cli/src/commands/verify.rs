use std::path::PathBuf;

use clap::Args;

use kneserlab::error::{Error, Result};
use kneserlab::extremal::verify_pair;
use kneserlab::setfam::make_params;

use crate::config::{OutputFormat, RunConfig};
use crate::render::{params_line, to_json};

#[derive(Args)]
pub struct VerifyArgs {
    /// Family file for side A.
    pub file_a: PathBuf,
    /// Family file for side B.
    pub file_b: PathBuf,
}

pub fn run(args: &VerifyArgs, config: &RunConfig) -> Result<u8> {
    let a = super::read_family(&args.file_a)?;
    let b = super::read_family(&args.file_b)?;
    if a.universe() != b.universe() || a.r() != b.r() {
        return Err(Error::domain(format!(
            "family headers disagree: {} has (n={}, r={}), {} has (n={}, r={})",
            args.file_a.display(),
            a.universe(),
            a.r(),
            args.file_b.display(),
            b.universe(),
            b.r()
        )));
    }
    let params = make_params(a.universe(), a.r())?;
    let report = verify_pair(&params, &a, &b)?;

    let body = match config.output_format {
        OutputFormat::Json => to_json("verify", config.seed, &report),
        _ => {
            let within = report
                .within_bound
                .map(|w| w.to_string())
                .unwrap_or_else(|| "not-asserted".into());
            format!(
                "{}\ndisjoint = {}\ncross_intersecting = {}\nvacuous = {}\n\
                 |A| = {}, |B| = {}, sum = {}, min = {}\nbound = {}\nwithin_bound = {}\n",
                params_line(&params),
                report.disjoint,
                report.cross_intersecting,
                report.vacuous,
                report.size_a,
                report.size_b,
                report.sum,
                report.min_size,
                report.bound,
                within
            )
        }
    };
    config.emit(&body)?;
    Ok(if report.passes() { 0 } else { 1 })
}
