//! Bitmask toolkit for disjoint cross-intersecting families of r-sets and the
//! small Kneser (disjointness) graphs they live in.
//!
//! The crate is organised around five concerns:
//!
//! - [`setfam`]: r-sets as single-word bitmasks, families over one universe,
//!   the intersecting / cross-intersecting / disjoint predicates, and the
//!   compression (shifting) calculus together with its documented failure on
//!   disjoint families.
//! - [`kneser`]: the implicit disjointness graph on all r-subsets of `[n]`:
//!   component decomposition avoiding a forbidden family, shortest-path
//!   oracle, minimum disconnecting sets, and the complete multipartite
//!   structure check at `n = 2r`.
//! - [`chain`]: the constructive chain builder linking two r-sets through
//!   pairwise-disjoint steps that dodge a bounded forbidden family.
//! - [`constructions`]: the explicit extremal and near-extremal family pairs
//!   (star partitions, the two-element-pattern pair, complement-pair
//!   partitions at `n = 2r`).
//! - [`extremal`]: the `C(n,r) - C(l,p)` bound, exact maximisation of
//!   `|A| + |B|` on desk-scale instances, pair verification, and grid scans.
//!
//! Ground-set elements are labelled `1..=n` throughout; bit `k-1` of a mask
//! encodes element `k`. Universes are capped at `n <= 62` so every set fits
//! in a `u64`.

pub mod binom;
pub mod chain;
pub mod constructions;
pub mod error;
pub mod extremal;
pub mod kneser;
pub mod setfam;

pub use binom::binomial;
pub use error::Error;
pub use setfam::{CompressionOp, ElemSet, Family, RSet, UniverseParams};

/// Default cap on `C(n, r)` for enumeration-backed operations.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 5_000_000;

/// Largest supported universe; single-word bitmasks.
pub const MAX_UNIVERSE: u32 = 62;
