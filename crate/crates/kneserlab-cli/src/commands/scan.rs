use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use kneserlab::error::{Error, Result};
use kneserlab::extremal::{scan, ScanOptions, ScanRow};
use kneserlab::setfam::write_family;

use crate::config::{OutputFormat, RunConfig};
use crate::render::to_json;

#[derive(Args)]
pub struct ScanArgs {
    /// Semicolon-separated grid of points, e.g. `4,2;5,2;6,2`.
    #[arg(long)]
    pub grid: String,
    /// Compute the exact maximum per point (budget permitting).
    #[arg(long)]
    pub exact: bool,
    /// Write witness pairs as family files into this directory.
    #[arg(long)]
    pub witness_dir: Option<PathBuf>,
}

#[derive(Serialize)]
struct ScanReport {
    rows: Vec<AnnotatedRow>,
}

#[derive(Serialize)]
struct AnnotatedRow {
    #[serde(flatten)]
    row: ScanRow,
    witness_file: Option<String>,
}

fn parse_grid(text: &str) -> Result<Vec<(u32, u32)>> {
    let mut grid = Vec::new();
    for (i, point) in text.split(';').enumerate() {
        let point = point.trim();
        if point.is_empty() {
            continue;
        }
        let parts: Vec<&str> = point.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::domain(format!(
                "grid point {} ('{point}') must be 'n,r'",
                i + 1
            )));
        }
        let n = parts[0]
            .parse()
            .map_err(|_| Error::domain(format!("invalid n in grid point '{point}'")))?;
        let r = parts[1]
            .parse()
            .map_err(|_| Error::domain(format!("invalid r in grid point '{point}'")))?;
        grid.push((n, r));
    }
    Ok(grid)
}

pub fn run(args: &ScanArgs, config: &RunConfig) -> Result<u8> {
    let grid = parse_grid(&args.grid)?;
    let rows = scan(
        &grid,
        &ScanOptions {
            exact: args.exact,
            exact_budget: config.exact_budget,
        },
    );

    let mut annotated = Vec::with_capacity(rows.len());
    for row in rows {
        let witness_file = match (&args.witness_dir, &row.report) {
            (Some(dir), Some(report)) => match &report.witness {
                Some(pair) => {
                    std::fs::create_dir_all(dir).map_err(|e| {
                        Error::domain(format!("cannot create {}: {e}", dir.display()))
                    })?;
                    let stem = format!("witness-n{}-r{}", row.n, row.r);
                    for (side, fam) in [("A", &pair.a), ("B", &pair.b)] {
                        let path = dir.join(format!("{stem}-{side}.fam"));
                        let header =
                            format!("# construction: {} params: {}\n", pair.meta.construction, pair.meta.params);
                        std::fs::write(&path, format!("{header}{}", write_family(fam)))
                            .map_err(|e| {
                                Error::domain(format!("cannot write {}: {e}", path.display()))
                            })?;
                    }
                    Some(stem)
                }
                None => None,
            },
            _ => None,
        };
        annotated.push(AnnotatedRow { row, witness_file });
    }

    let body = match config.output_format {
        OutputFormat::Json => to_json("scan", config.seed, ScanReport { rows: annotated }),
        _ => {
            // CSV is the natural tabular rendering; text mode shares it.
            let mut out = String::from(
                "n,r,l,p,binom_n_r,binom_l_p,bound,exact_max,strict_gap,witness_file,error\n",
            );
            for a in &annotated {
                let row = &a.row;
                match &row.report {
                    Some(rep) => {
                        let p = rep.params;
                        out.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{},{},{}\n",
                            row.n,
                            row.r,
                            p.l,
                            p.p,
                            p.binom_n_r(),
                            p.binom_l_p(),
                            rep.bound,
                            rep.exact_max.map(|v| v.to_string()).unwrap_or_default(),
                            rep.strict_gap.map(|v| v.to_string()).unwrap_or_default(),
                            a.witness_file.clone().unwrap_or_default(),
                            row.error
                                .as_ref()
                                .map(|e| crate::render::csv_quote(e))
                                .unwrap_or_default(),
                        ));
                    }
                    None => {
                        out.push_str(&format!(
                            "{},{},,,,,,,,,{}\n",
                            row.n,
                            row.r,
                            row.error
                                .as_ref()
                                .map(|e| crate::render::csv_quote(e))
                                .unwrap_or_default(),
                        ));
                    }
                }
            }
            out
        }
    };
    config.emit(&body)
}
