//! Shared rendering: params headers, JSON envelopes, CSV quoting.

use serde::Serialize;

use kneserlab::{RSet, UniverseParams};

/// One-line summary of the instance quantities every report embeds.
pub fn params_line(p: &UniverseParams) -> String {
    format!(
        "params: n={} r={} l={} p={} binom(n,r)={} binom(l,p)={}",
        p.n,
        p.r,
        p.l,
        p.p,
        p.binom_n_r(),
        p.binom_l_p()
    )
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    seed: u64,
    #[serde(flatten)]
    body: T,
}

/// Versioned JSON envelope; identical inputs yield byte-identical output.
pub fn to_json<T: Serialize>(command: &str, seed: u64, body: T) -> String {
    let env = Envelope {
        schema: 1,
        command,
        seed,
        body,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

/// Elements joined by commas, the set syntax of the family text format.
pub fn set_csv(s: RSet) -> String {
    s.elems()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// RFC-4180 quoting for a CSV field.
pub fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}
