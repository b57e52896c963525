pub mod bound;
pub mod chain;
pub mod construct;
pub mod counterexample;
pub mod kneser;
pub mod scan;
pub mod verify;

use kneserlab::error::{Error, Result};
use kneserlab::setfam::{parse_elem_list, parse_family};
use kneserlab::{Family, RSet};
use std::path::Path;

/// Parses a command-line set literal like `1,5,6`.
pub fn parse_set_arg(text: &str, n: u32) -> Result<RSet> {
    let elems = parse_elem_list(text, 1)?;
    RSet::from_elems(n, &elems)
}

/// Reads and parses a family file.
pub fn read_family(path: &Path) -> Result<Family> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    parse_family(&text)
}
