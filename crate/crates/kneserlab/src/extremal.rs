//! The additive bound `C(n,r) - C(l,p)`, exact maximisation of `|A| + |B|`
//! over disjoint cross-intersecting pairs at desk scale, pair verification
//! reports, and grid scans.
//!
//! The exact maximiser leans on the structure of valid pairs: once the
//! forbidden complement `C` is removed, every component of the disjointness
//! graph must lie wholly inside one side, so the maximum of `|A| + |B|`
//! equals `C(n,r)` minus the size of a minimum disconnecting set (zero at
//! `n = 2r`, where the graph is already a perfect matching). A direct
//! three-way assignment search over all vertices is kept as an independent
//! oracle for tiny instances.

use serde::Serialize;

use crate::constructions::{FamilyPair, PairMeta};
use crate::error::{Error, Result};
use crate::kneser::min_disconnecting_set;
use crate::setfam::{
    are_cross_intersecting, are_disjoint, enumerate_rsets, make_params, Family, UniverseParams,
};

/// Default cap on `C(n, r)` for the exact minimum-cut computation.
pub const DEFAULT_EXACT_SEARCH_BUDGET: u64 = 1000;

/// Hard cap on `C(n, r)` for the brute-force assignment oracle.
pub const BRUTEFORCE_VERTEX_CAP: u64 = 12;

/// Upper bound for `|A| + |B|`: `C(n,r) - C(l,p)` for `l >= 1`, and the
/// separately-stated `C(2r, r)` when `l = 0` (where the subtracted term
/// would otherwise be `C(0,0) = 1` and contradict achievable equality).
pub fn theorem_bound(params: &UniverseParams) -> u64 {
    if params.l == 0 {
        params.binom_n_r()
    } else {
        params.binom_n_r() - params.binom_l_p()
    }
}

/// Bound evaluation for one instance, optionally with the exact maximum.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub params: UniverseParams,
    pub bound: u64,
    pub exact_max: Option<u64>,
    pub witness: Option<FamilyPair>,
    /// `bound - exact_max` where the exact value is known.
    pub strict_gap: Option<u64>,
}

/// Computes the exact maximum of `|A| + |B|` over nonempty disjoint
/// cross-intersecting pairs, as `C(n,r) - c*` with `c*` the minimum
/// disconnecting set size, plus a witness pair realising it.
pub fn exact_max_sum(params: &UniverseParams, exact_budget: u64) -> Result<BoundReport> {
    let bound = theorem_bound(params);
    let total = params.binom_n_r();
    let witness = min_disconnecting_set(params, u32::MAX, exact_budget)?;

    let (exact_max, pair) = match witness {
        Some(w) => {
            let exact = total - w.size() as u64;
            let pair = FamilyPair {
                a: w.side_a,
                b: w.side_b,
                meta: PairMeta {
                    construction: "min_cut_split".into(),
                    params: format!(
                        "n={} r={} cut_size={}",
                        params.n,
                        params.r,
                        w.cut.len()
                    ),
                },
            };
            (Some(exact), Some(pair))
        }
        // No disconnecting set exists (complete disjointness graph, r = 1):
        // no valid nonempty pair exists either.
        None => (None, None),
    };

    Ok(BoundReport {
        params: *params,
        bound,
        exact_max,
        strict_gap: exact_max.map(|e| bound - e),
        witness: pair,
    })
}

/// Independent oracle: maximises `|A| + |B|` by assigning every r-set to
/// side a, side b, or neither, pruning assignments that break the
/// cross-intersecting constraint. `None` when no valid nonempty pair exists.
///
/// Exponential; refuses instances with more than
/// [`BRUTEFORCE_VERTEX_CAP`] vertices.
pub fn exact_max_sum_bruteforce(params: &UniverseParams) -> Result<Option<u64>> {
    let total = params.binom_n_r();
    if total > BRUTEFORCE_VERTEX_CAP {
        return Err(Error::Budget {
            required: total,
            budget: BRUTEFORCE_VERTEX_CAP,
        });
    }
    let masks: Vec<u64> = enumerate_rsets(params, BRUTEFORCE_VERTEX_CAP)?
        .map(|s| s.bits())
        .collect();
    let v = masks.len();
    // adjacency[i] = bitmask over vertex indices of sets disjoint from i.
    let adjacency: Vec<u32> = masks
        .iter()
        .map(|&m| {
            masks
                .iter()
                .enumerate()
                .filter(|&(_, &other)| m & other == 0)
                .fold(0u32, |acc, (j, _)| acc | 1 << j)
        })
        .collect();

    fn assign(
        v: usize,
        idx: usize,
        in_a: u32,
        in_b: u32,
        adjacency: &[u32],
        best: &mut Option<u64>,
    ) {
        let placed = (in_a | in_b).count_ones() as u64;
        let remaining = (v - idx) as u64;
        if best.is_some_and(|b| placed + remaining <= b) {
            return;
        }
        if idx == v {
            if in_a != 0 && in_b != 0 && best.is_none_or(|b| placed > b) {
                *best = Some(placed);
            }
            return;
        }
        let bit = 1u32 << idx;
        // Side a is legal unless some b-vertex is disjoint from this one.
        if adjacency[idx] & in_b == 0 {
            assign(v, idx + 1, in_a | bit, in_b, adjacency, best);
        }
        if adjacency[idx] & in_a == 0 {
            assign(v, idx + 1, in_a, in_b | bit, adjacency, best);
        }
        assign(v, idx + 1, in_a, in_b, adjacency, best);
    }

    let mut best = None;
    assign(v, 0, 0, 0, &adjacency, &mut best);
    Ok(best)
}

// ---------------------------------------------------------------------------
// Pair verification
// ---------------------------------------------------------------------------

/// Predicate flags and bound comparison for a candidate pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub params: UniverseParams,
    pub disjoint: bool,
    pub cross_intersecting: bool,
    /// True when either family is empty; the bound is not asserted then.
    pub vacuous: bool,
    pub sum: u64,
    pub size_a: u64,
    pub size_b: u64,
    /// `min(|A|, |B|)`, reported as a statistic only.
    pub min_size: u64,
    pub bound: u64,
    /// `sum <= bound`; absent for vacuous pairs.
    pub within_bound: Option<bool>,
}

impl PairReport {
    /// The full hypothesis-and-bound check: nonempty, disjoint,
    /// cross-intersecting, and within the bound.
    pub fn passes(&self) -> bool {
        !self.vacuous && self.disjoint && self.cross_intersecting && self.within_bound == Some(true)
    }
}

/// Evaluates the predicates and the bound for a pair of families.
pub fn verify_pair(params: &UniverseParams, a: &Family, b: &Family) -> Result<PairReport> {
    for fam in [a, b] {
        if fam.universe() != params.n || fam.r() != params.r {
            return Err(Error::domain(format!(
                "family has (n={}, r={}), parameters say (n={}, r={})",
                fam.universe(),
                fam.r(),
                params.n,
                params.r
            )));
        }
    }
    let disjoint = are_disjoint(a, b)?;
    let cross_intersecting = are_cross_intersecting(a, b, 1)?;
    let vacuous = a.is_empty() || b.is_empty();
    let sum = (a.len() + b.len()) as u64;
    let bound = theorem_bound(params);
    Ok(PairReport {
        params: *params,
        disjoint,
        cross_intersecting,
        vacuous,
        sum,
        size_a: a.len() as u64,
        size_b: b.len() as u64,
        min_size: a.len().min(b.len()) as u64,
        bound,
        within_bound: (!vacuous).then_some(sum <= bound),
    })
}

// ---------------------------------------------------------------------------
// Grid scans
// ---------------------------------------------------------------------------

/// One scan row: the report, or a row-level error marker.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub n: u32,
    pub r: u32,
    pub report: Option<BoundReport>,
    pub error: Option<String>,
}

/// Scan options: whether to compute exact maxima, and the budget for them.
#[derive(Copy, Clone, Debug)]
pub struct ScanOptions {
    pub exact: bool,
    pub exact_budget: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            exact: false,
            exact_budget: DEFAULT_EXACT_SEARCH_BUDGET,
        }
    }
}

/// Evaluates the bound (and optionally the exact maximum) at every grid
/// point. Per-point failures become row-level error markers; the scan never
/// aborts, and rows keep the input order.
pub fn scan(grid: &[(u32, u32)], opts: &ScanOptions) -> Vec<ScanRow> {
    grid.iter()
        .map(|&(n, r)| match make_params(n, r) {
            Err(e) => ScanRow {
                n,
                r,
                report: None,
                error: Some(e.to_string()),
            },
            Ok(params) => {
                if opts.exact {
                    match exact_max_sum(&params, opts.exact_budget) {
                        Ok(report) => ScanRow {
                            n,
                            r,
                            report: Some(report),
                            error: None,
                        },
                        Err(e) => ScanRow {
                            n,
                            r,
                            report: Some(BoundReport {
                                params,
                                bound: theorem_bound(&params),
                                exact_max: None,
                                witness: None,
                                strict_gap: None,
                            }),
                            error: Some(e.to_string()),
                        },
                    }
                } else {
                    ScanRow {
                        n,
                        r,
                        report: Some(BoundReport {
                            params,
                            bound: theorem_bound(&params),
                            exact_max: None,
                            witness: None,
                            strict_gap: None,
                        }),
                        error: None,
                    }
                }
            }
        })
        .collect()
}
