use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde::Serialize;

use kneserlab::error::{Error, Result};
use kneserlab::kneser::{
    check_complete_kpartite, components_avoiding, min_disconnecting_set, CutWitness,
};
use kneserlab::setfam::make_params;
use kneserlab::Family;

use crate::config::{OutputFormat, RunConfig};
use crate::render::{csv_quote, params_line, set_csv, to_json};

#[derive(Args)]
pub struct KneserArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    #[command(subcommand)]
    pub action: KneserAction,
}

#[derive(Subcommand)]
pub enum KneserAction {
    /// Component decomposition, optionally avoiding a forbidden family.
    Components {
        /// Forbidden family file.
        #[arg(long)]
        c: Option<PathBuf>,
    },
    /// Exact minimum disconnecting set.
    Mincut {
        /// Give up beyond this cut size.
        #[arg(long, default_value_t = u32::MAX)]
        max_size: u32,
    },
    /// Verify the complete multipartite structure at n = 2r.
    Kpartite,
}

#[derive(Serialize)]
struct ComponentsReport {
    params: kneserlab::UniverseParams,
    forbidden_len: usize,
    vertex_count: usize,
    component_count: u32,
    component_sizes: Vec<usize>,
    labels: Vec<(kneserlab::RSet, u32)>,
}

#[derive(Serialize)]
struct MincutReport {
    params: kneserlab::UniverseParams,
    found: bool,
    size: Option<usize>,
    witness: Option<CutWitness>,
}

pub fn run(args: &KneserArgs, config: &RunConfig) -> Result<u8> {
    let params = make_params(args.n, args.r)?;
    match &args.action {
        KneserAction::Components { c } => {
            let forbidden = match c {
                Some(path) => super::read_family(path)?,
                None => Family::empty(args.n, args.r)?,
            };
            let labeling = components_avoiding(&params, &forbidden, config.enumeration_budget)?;
            let body = match config.output_format {
                OutputFormat::Json => to_json(
                    "kneser-components",
                    config.seed,
                    ComponentsReport {
                        params,
                        forbidden_len: forbidden.len(),
                        vertex_count: labeling.vertex_count(),
                        component_count: labeling.component_count(),
                        component_sizes: labeling.component_sizes(),
                        labels: labeling.iter().collect(),
                    },
                ),
                OutputFormat::Csv => {
                    let mut out = String::from("set,component_id\n");
                    for (s, c) in labeling.iter() {
                        out.push_str(&format!("{},{c}\n", csv_quote(&set_csv(s))));
                    }
                    out
                }
                OutputFormat::Text => {
                    let mut out = format!("{}\n", params_line(&params));
                    out.push_str(&format!(
                        "vertices = {} (forbidden: {})\ncomponents = {}\n",
                        labeling.vertex_count(),
                        forbidden.len(),
                        labeling.component_count()
                    ));
                    for (id, size) in labeling.component_sizes().iter().enumerate() {
                        out.push_str(&format!("component {id}: {size} sets\n"));
                    }
                    out
                }
            };
            config.emit(&body)
        }
        KneserAction::Mincut { max_size } => {
            let witness = min_disconnecting_set(&params, *max_size, config.exact_budget)?;
            let body = match config.output_format {
                OutputFormat::Json => to_json(
                    "kneser-mincut",
                    config.seed,
                    MincutReport {
                        params,
                        found: witness.is_some(),
                        size: witness.as_ref().map(CutWitness::size),
                        witness,
                    },
                ),
                _ => match &witness {
                    None => format!(
                        "{}\nno disconnecting set of size <= {max_size}\n",
                        params_line(&params)
                    ),
                    Some(w) => {
                        let mut out = format!("{}\n", params_line(&params));
                        out.push_str(&format!("min disconnecting set size = {}\n", w.size()));
                        for s in w.cut.members() {
                            out.push_str(&format!("cut: {}\n", set_csv(s)));
                        }
                        out.push_str(&format!(
                            "sides: |A| = {}, |B| = {}\n",
                            w.side_a.len(),
                            w.side_b.len()
                        ));
                        out
                    }
                },
            };
            config.emit(&body)
        }
        KneserAction::Kpartite => {
            if args.n != 2 * args.r {
                return Err(Error::domain(format!(
                    "the multipartite structure check needs n = 2r (got n={}, r={})",
                    args.n, args.r
                )));
            }
            let report = check_complete_kpartite(args.r, config.enumeration_budget)?;
            let body = match config.output_format {
                OutputFormat::Json => to_json("kneser-kpartite", config.seed, &report),
                _ => {
                    let mut out = format!("{}\n", params_line(&params));
                    out.push_str(&format!("complete k-partite verified: k = {}\n", report.k));
                    for (i, (x, y)) in report.parts.iter().enumerate() {
                        out.push_str(&format!(
                            "part {}: {{{}}} {{{}}}\n",
                            i + 1,
                            set_csv(*x),
                            set_csv(*y)
                        ));
                    }
                    out
                }
            };
            config.emit(&body)
        }
    }
}
