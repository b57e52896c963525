//! Constructive chains: given a bounded forbidden family and two surviving
//! r-sets, build a sequence from one to the other in which consecutive sets
//! are disjoint and no set is forbidden.
//!
//! Dispatch mirrors the case analysis of the underlying argument:
//!
//! - disjoint endpoints are already adjacent, the chain is `[a, b]`;
//! - when `ceil(l/2) >= r` a single middle set drawn outside `a ∪ b`
//!   suffices (Case 1);
//! - otherwise the endpoints are cut into `p`-element blocks, interleaved
//!   skeletons `C_1, ..., C_{2(m+1)+1}` are formed, and each skeleton is
//!   filled up to size `r` from a prescribed pool while dodging the
//!   forbidden family (Case 2, with its two subcases and the swap repair
//!   for the one fill whose candidate count is not strict).
//!
//! All candidate iteration is canonical (ascending bitmask), so runs are
//! reproducible. The fills are searched depth-first: the counting bounds
//! make every step succeed greedily except in razor-thin `l = 1` pools,
//! where a dead end is repaired by revisiting an earlier fill choice; the
//! trace records how often that happened.

use serde::Serialize;

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::kneser::bfs_path_avoiding;
use crate::setfam::{ksubsets_of_mask, ElemSet, Family, RSet, UniverseParams};

/// Which construction path produced a chain.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTaken {
    #[serde(rename = "disjoint_endpoints")]
    DisjointEndpoints,
    #[serde(rename = "case1")]
    Case1,
    #[serde(rename = "case2_1")]
    Case2_1,
    #[serde(rename = "case2_2")]
    Case2_2,
    #[serde(rename = "case2_2_swap")]
    Case2_2Swap,
    #[serde(rename = "oracle_fallback")]
    OracleFallback,
}

/// Construction record: the case taken, the arithmetic split of the
/// intersection, and the element blocks and skeletons of Case 2.
#[derive(Clone, Debug, Serialize)]
pub struct ChainTrace {
    pub case_taken: CaseTaken,
    /// `|A ∩ B|`.
    pub t: u32,
    /// Quotient in `t = m*p + q` (Case 2; zero elsewhere).
    pub m: u32,
    /// Remainder in `t = m*p + q`, `0 <= q < p` (Case 2; zero elsewhere).
    pub q: u32,
    /// `A_1, ..., A_{m+1}` (Case 2 only).
    pub blocks_a: Vec<ElemSet>,
    /// `B_1, ..., B_{m+1}` (Case 2 only).
    pub blocks_b: Vec<ElemSet>,
    /// `C_1, ..., C_{2(m+1)+1}` (Case 2 only).
    pub skeletons: Vec<ElemSet>,
    /// Fill dead ends that forced revisiting an earlier choice.
    pub backtracks: u64,
}

impl ChainTrace {
    fn simple(case_taken: CaseTaken, t: u32) -> Self {
        ChainTrace {
            case_taken,
            t,
            m: 0,
            q: 0,
            blocks_a: Vec::new(),
            blocks_b: Vec::new(),
            skeletons: Vec::new(),
            backtracks: 0,
        }
    }
}

/// A certified sequence `S_0 = a, ..., S_f = b` with consecutive sets
/// disjoint and none forbidden.
#[derive(Clone, Debug, Serialize)]
pub struct Chain {
    pub sets: Vec<RSet>,
    pub trace: ChainTrace,
}

impl Chain {
    /// The index `f` of the final set.
    pub fn f(&self) -> usize {
        self.sets.len() - 1
    }
}

/// Knobs for [`build_chain_opts`].
#[derive(Copy, Clone, Debug)]
pub struct ChainOptions {
    /// Fall back to the breadth-first path oracle instead of erroring when
    /// the forbidden family exceeds `C(l, p)` or the construction exhausts.
    /// Every fallback is visible as `case_taken = oracle_fallback`.
    pub allow_oracle_fallback: bool,
    /// Enumeration budget for the fallback oracle.
    pub oracle_budget: u64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            allow_oracle_fallback: false,
            oracle_budget: crate::DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

/// Builds a chain from `a` to `b` avoiding `forbidden`, requiring
/// `|forbidden| <= C(l, p)`.
pub fn build_chain(
    params: &UniverseParams,
    forbidden: &Family,
    a: RSet,
    b: RSet,
) -> Result<Chain> {
    build_chain_opts(params, forbidden, a, b, &ChainOptions::default())
}

/// [`build_chain`] with explicit options.
pub fn build_chain_opts(
    params: &UniverseParams,
    forbidden: &Family,
    a: RSet,
    b: RSet,
    opts: &ChainOptions,
) -> Result<Chain> {
    check_inputs(params, forbidden, a, b)?;
    let t = a.intersection_size(b);

    let over_budget = forbidden.len() as u64 > params.binom_l_p();
    if over_budget && !opts.allow_oracle_fallback {
        return Err(Error::domain(format!(
            "forbidden family has {} sets, the chain guarantee covers at most C(l,p) = C({},{}) = {}",
            forbidden.len(),
            params.l,
            params.p,
            params.binom_l_p()
        )));
    }

    if a.is_disjoint_from(b) {
        return Ok(Chain {
            sets: vec![a, b],
            trace: ChainTrace::simple(CaseTaken::DisjointEndpoints, t),
        });
    }

    if params.l == 0 {
        // At n = 2r the disjointness graph is a perfect matching; only
        // complementary endpoints can be linked.
        return Err(Error::domain(
            "n = 2r admits chains only between complementary sets; \
             intersecting endpoints are never connected",
        ));
    }

    if over_budget {
        return oracle_fallback(params, forbidden, a, b, t, opts);
    }

    if params.l.div_ceil(2) >= params.r {
        // Case 1: one middle set drawn from the l + t elements outside a ∪ b.
        let pool = ElemSet(params.full_mask() & !(a.bits() | b.bits()));
        let middle = pick_avoiding(pool, params.r, forbidden, ElemSet::EMPTY)?;
        return Ok(Chain {
            sets: vec![a, middle, b],
            trace: ChainTrace::simple(CaseTaken::Case1, t),
        });
    }

    match case2(params, forbidden, a, b, t) {
        Err(Error::Exhaustion { .. }) if opts.allow_oracle_fallback => {
            oracle_fallback(params, forbidden, a, b, t, opts)
        }
        other => other,
    }
}

fn check_inputs(params: &UniverseParams, forbidden: &Family, a: RSet, b: RSet) -> Result<()> {
    if forbidden.universe() != params.n || forbidden.r() != params.r {
        return Err(Error::domain(format!(
            "forbidden family has (n={}, r={}), parameters say (n={}, r={})",
            forbidden.universe(),
            forbidden.r(),
            params.n,
            params.r
        )));
    }
    for (s, role) in [(a, "start"), (b, "target")] {
        if s.universe() != params.n || s.size() != params.r {
            return Err(Error::domain(format!(
                "{role} set {s} is not an {}-subset of [{}]",
                params.r, params.n
            )));
        }
        if forbidden.contains(s) {
            return Err(Error::domain(format!(
                "{role} set {s} lies in the forbidden family"
            )));
        }
    }
    if a == b {
        return Err(Error::domain("chain endpoints must differ"));
    }
    Ok(())
}

fn oracle_fallback(
    params: &UniverseParams,
    forbidden: &Family,
    a: RSet,
    b: RSet,
    t: u32,
    opts: &ChainOptions,
) -> Result<Chain> {
    match bfs_path_avoiding(params, forbidden, a, b, opts.oracle_budget)? {
        Some(path) => Ok(Chain {
            sets: path,
            trace: ChainTrace::simple(CaseTaken::OracleFallback, t),
        }),
        None => Err(Error::domain(
            "oracle fallback found no path: the endpoints are disconnected under this forbidden family",
        )),
    }
}

/// Canonically first r-set of the form `completion ∪ T` with `T` a
/// `take`-subset of `pool`, subject to not lying in `forbidden`.
///
/// Exhaustion of the pool is a diagnostic: the counting argument behind each
/// call site promises at least one survivor.
pub fn pick_avoiding(
    pool: ElemSet,
    take: u32,
    forbidden: &Family,
    completion: ElemSet,
) -> Result<RSet> {
    debug_assert_eq!(pool.bits() & completion.bits(), 0);
    for sub in ksubsets_of_mask(pool.bits(), take) {
        let candidate = completion.bits() | sub;
        if !forbidden.contains_mask(candidate) {
            return RSet::from_bits(forbidden.universe(), candidate);
        }
    }
    Err(Error::Exhaustion {
        context: format!(
            "pick_avoiding(pool={pool}, take={take}, completion={completion})"
        ),
        pool_candidates: binomial(pool.len() as u64, take as u64),
        forbidden_len: forbidden.len() as u64,
    })
}

/// True iff the chain links `a` to `b` avoiding `forbidden`: endpoints
/// match, every set is an r-subset of `[n]`, consecutive sets are disjoint,
/// and no set is forbidden. Never errors; malformed chains are just `false`.
pub fn verify_chain(
    params: &UniverseParams,
    forbidden: &Family,
    a: RSet,
    b: RSet,
    chain: &Chain,
) -> bool {
    let sets = &chain.sets;
    if sets.len() < 2 || sets[0] != a || *sets.last().unwrap() != b {
        return false;
    }
    for s in sets {
        if s.universe() != params.n
            || s.size() != params.r
            || s.bits() & !params.full_mask() != 0
            || forbidden.contains(*s)
        {
            return false;
        }
    }
    sets.windows(2).all(|w| w[0].is_disjoint_from(w[1]))
}

// ---------------------------------------------------------------------------
// Case 2
// ---------------------------------------------------------------------------

/// Mask of `elems[range]` for a sorted element slice.
fn slice_mask(elems: &[u32], from: usize, to: usize) -> u64 {
    elems[from..to]
        .iter()
        .fold(0u64, |acc, &e| acc | 1u64 << (e - 1))
}

struct Case2 <'a> {
    universe: u64,
    r: u32,
    p: u32,
    m: u32,
    subcase21: bool,
    forbidden: &'a Family,
    a_bits: u64,
    b_bits: u64,
    /// `skeletons[k-1]` holds `C_k`, `k = 1 ..= 2(m+1)+1`.
    skeletons: Vec<u64>,
    backtracks: u64,
    used_swap: bool,
}

fn case2(
    params: &UniverseParams,
    forbidden: &Family,
    a: RSet,
    b: RSet,
    t: u32,
) -> Result<Chain> {
    let (r, p) = (params.r, params.p);
    debug_assert!(p >= 1 && p < r && t >= 1 && t < r);
    let m = t / p;
    let q = t % p;
    // Subcase split: whether the leftover `r - t` private elements outstrip
    // the `p - q` block slots.
    let subcase21 = r - t < p - q;

    let x: Vec<u32> = ElemSet(a.bits() & b.bits()).elems();
    let a_priv: Vec<u32> = ElemSet(a.bits() & !b.bits()).elems();
    let b_priv: Vec<u32> = ElemSet(b.bits() & !a.bits()).elems();
    let tu = t as usize;
    let (pu, qu, mu, ru) = (p as usize, q as usize, m as usize, r as usize);
    let priv_take = if subcase21 { ru - tu } else { pu - qu };

    // A_i = x[(i-1)p .. ip) for i <= m; A_{m+1} completes the leftover x's
    // with a prefix of A's private elements.
    let mut blocks_a: Vec<u64> = (1..=mu)
        .map(|i| slice_mask(&x, (i - 1) * pu, i * pu))
        .collect();
    blocks_a.push(slice_mask(&x, mu * pu, tu) | slice_mask(&a_priv, 0, priv_take));

    // B_i = x[(m-i)p+q .. (m-i+1)p+q) for i <= m; B_{m+1} takes the bottom
    // q x's and a prefix of B's private elements.
    let mut blocks_b: Vec<u64> = (1..=mu)
        .map(|i| slice_mask(&x, (mu - i) * pu + qu, (mu - i + 1) * pu + qu))
        .collect();
    blocks_b.push(slice_mask(&x, 0, qu) | slice_mask(&b_priv, 0, priv_take));

    // C_{2i} = A \ (A_1 ∪ ... ∪ A_i); C_{2i+1} = B \ (B_1 ∪ ... ∪ B_{m-i+1});
    // the last skeleton is B itself.
    let mut skeletons = vec![0u64; 2 * (mu + 1) + 1];
    let mut cum = 0u64;
    for (i, &block) in blocks_a.iter().enumerate() {
        cum |= block;
        skeletons[2 * (i + 1) - 1] = a.bits() & !cum;
    }
    cum = 0;
    for (i, &block) in blocks_b.iter().enumerate() {
        cum |= block;
        // This union is B_1 ∪ ... ∪ B_{i+1}, which carves C_{2(m-i)+1}.
        skeletons[2 * (mu - i)] = b.bits() & !cum;
    }
    skeletons[2 * (mu + 1)] = b.bits();

    for w in skeletons.windows(2) {
        debug_assert_eq!(w[0] & w[1], 0, "consecutive skeletons must be disjoint");
    }

    let mut ctx = Case2 {
        universe: params.full_mask(),
        r,
        p,
        m,
        subcase21,
        forbidden,
        a_bits: a.bits(),
        b_bits: b.bits(),
        skeletons,
        backtracks: 0,
        used_swap: false,
    };

    let mut fills: Vec<u64> = Vec::with_capacity(2 * (mu + 1));
    if !ctx.search(1, a.bits(), &mut fills) {
        return Err(Error::Exhaustion {
            context: format!(
                "chain fills for a={a}, b={b}: t={t}, m={m}, q={q}, subcase={}, skeletons={:?}",
                if subcase21 { "2.1" } else { "2.2" },
                ctx.skeletons.iter().map(|&s| ElemSet(s)).collect::<Vec<_>>(),
            ),
            pool_candidates: 0,
            forbidden_len: forbidden.len() as u64,
        });
    }

    let case_taken = match (subcase21, ctx.used_swap) {
        (true, _) => CaseTaken::Case2_1,
        (false, false) => CaseTaken::Case2_2,
        (false, true) => CaseTaken::Case2_2Swap,
    };
    let trace = ChainTrace {
        case_taken,
        t,
        m,
        q,
        blocks_a: blocks_a.into_iter().map(ElemSet).collect(),
        blocks_b: blocks_b.into_iter().map(ElemSet).collect(),
        skeletons: ctx.skeletons.iter().map(|&s| ElemSet(s)).collect(),
        backtracks: ctx.backtracks,
    };

    let mut sets = Vec::with_capacity(fills.len() + 2);
    sets.push(a);
    for bits in fills {
        sets.push(RSet::from_bits(params.n, bits)?);
    }
    sets.push(b);
    let chain = Chain { sets, trace };
    debug_assert!(verify_chain(params, forbidden, a, b, &chain));
    Ok(chain)
}

impl Case2<'_> {
    /// Skeleton `C_k`.
    fn skeleton(&self, k: usize) -> u64 {
        self.skeletons[k - 1]
    }

    /// Depth-first fill of `S_k, ..., S_{2(m+1)}` given `prev = S_{k-1}`.
    /// `fills` holds the accepted sets `S_1 ..= S_{k-1}` (after `S_0 = A`).
    fn search(&mut self, k: usize, prev: u64, fills: &mut Vec<u64>) -> bool {
        let last_fill = 2 * (self.m as usize + 1);
        if k > last_fill {
            debug_assert_eq!(prev & self.b_bits, 0);
            return true;
        }

        let completion = self.skeleton(k);
        let take = self.r - completion.count_ones();
        let pool = if k.is_multiple_of(2) {
            // Even fills must also steer clear of the next skeleton.
            self.universe & !(prev | completion | self.skeleton(k + 1))
        } else if k == 1 {
            self.universe & !(self.a_bits | completion)
        } else {
            self.universe & !(prev | completion)
        };

        for sub in ksubsets_of_mask(pool, take) {
            let candidate = completion | sub;
            if self.forbidden.contains_mask(candidate) {
                continue;
            }
            fills.push(candidate);
            if self.search(k + 1, candidate, fills) {
                return true;
            }
            fills.pop();
            self.backtracks += 1;
        }

        // The one fill whose candidate count is not strictly larger than the
        // forbidden budget: repair by swapping an element between S_1 and S_2.
        if k == 2 && !self.subcase21 && self.swap_candidates(prev, pool, fills) {
            return true;
        }

        false
    }

    /// Subcase 2.2 repair for `S_2`: exchange one added element `a_1` of
    /// `S_1` (outside `C_3 \ C_1`) with a pool element `w_1` outside
    /// `S_0 \ C_2`; then `S_2 = C_2 ∪ {a_1} ∪ (p-1 further pool elements)`
    /// cannot coincide with any forbidden completion of `C_2`.
    fn swap_candidates(&mut self, s1: u64, pool: u64, fills: &mut Vec<u64>) -> bool {
        let c1 = self.skeleton(1);
        let c2 = self.skeleton(2);
        let c3 = self.skeleton(3);
        let added = s1 & !c1;
        let a1_cands = ElemSet(added & !(c3 & !c1)).elems();
        let w1_cands = ElemSet(pool & !(self.a_bits & !c2)).elems();

        for &w1 in &w1_cands {
            let w1_bit = 1u64 << (w1 - 1);
            for &a1 in &a1_cands {
                let a1_bit = 1u64 << (a1 - 1);
                let s1_new = (s1 & !a1_bit) | w1_bit;
                if self.forbidden.contains_mask(s1_new) {
                    continue;
                }
                for wrest in ksubsets_of_mask(pool & !w1_bit, self.p - 1) {
                    let s2 = c2 | a1_bit | wrest;
                    if self.forbidden.contains_mask(s2) {
                        continue;
                    }
                    debug_assert_eq!(s1_new & self.a_bits, 0);
                    debug_assert_eq!(s1_new & s2, 0);
                    debug_assert_eq!(s2 & c3, 0);
                    fills[0] = s1_new;
                    fills.push(s2);
                    if self.search(3, s2, fills) {
                        self.used_swap = true;
                        return true;
                    }
                    fills.pop();
                    self.backtracks += 1;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfam::make_params;

    const BUDGET: u64 = 1 << 20;

    fn rset(n: u32, elems: &[u32]) -> RSet {
        RSet::from_elems(n, elems).unwrap()
    }

    fn family(n: u32, r: u32, sets: &[&[u32]]) -> Family {
        Family::new(n, r, sets.iter().map(|s| rset(n, s))).unwrap()
    }

    fn empty(n: u32, r: u32) -> Family {
        Family::empty(n, r).unwrap()
    }

    #[test]
    fn disjoint_endpoints() {
        let p = make_params(6, 3).unwrap();
        let a = rset(6, &[1, 2, 3]);
        let b = rset(6, &[4, 5, 6]);
        let chain = build_chain(&p, &empty(6, 3), a, b).unwrap();
        assert_eq!(chain.sets, vec![a, b]);
        assert_eq!(chain.f(), 1);
        assert_eq!(chain.trace.case_taken, CaseTaken::DisjointEndpoints);
        assert!(verify_chain(&p, &empty(6, 3), a, b, &chain));
    }

    #[test]
    fn case1_canonical_middle() {
        let p = make_params(8, 2).unwrap();
        assert_eq!((p.l, p.p), (4, 2));
        let a = rset(8, &[1, 2]);
        let b = rset(8, &[1, 3]);
        let chain = build_chain(&p, &empty(8, 2), a, b).unwrap();
        assert_eq!(chain.trace.case_taken, CaseTaken::Case1);
        assert_eq!(chain.sets, vec![a, rset(8, &[4, 5]), b]);
        assert!(verify_chain(&p, &empty(8, 2), a, b, &chain));
        // The oracle agrees the endpoints connect.
        assert!(bfs_path_avoiding(&p, &empty(8, 2), a, b, BUDGET)
            .unwrap()
            .is_some());
    }

    #[test]
    fn case2_golden_run() {
        // l = 1, p = 1: t = 1 splits as m = 1, q = 0, so f = 2(m+1)+1 = 5.
        let p = make_params(7, 3).unwrap();
        let forbidden = family(7, 3, &[&[3, 4, 5]]);
        let a = rset(7, &[1, 2, 3]);
        let b = rset(7, &[1, 4, 5]);
        let chain = build_chain(&p, &forbidden, a, b).unwrap();
        assert_eq!(chain.trace.case_taken, CaseTaken::Case2_2);
        assert_eq!(
            (chain.trace.t, chain.trace.m, chain.trace.q, chain.f()),
            (1, 1, 0, 5)
        );
        assert!(verify_chain(&p, &forbidden, a, b, &chain));
        assert!(bfs_path_avoiding(&p, &forbidden, a, b, BUDGET)
            .unwrap()
            .is_some());
        // Frozen deterministic output of the canonical fill order.
        assert_eq!(
            chain.sets,
            vec![
                a,
                rset(7, &[4, 5, 6]),
                rset(7, &[1, 2, 3]),
                rset(7, &[4, 5, 6]),
                rset(7, &[2, 3, 7]),
                b
            ]
        );
    }

    #[test]
    fn case2_backtracks_out_of_the_tight_corner() {
        // Adversarial n = 2r + 1 instance: the greedy fill runs into the
        // forbidden set at S_4 and must revisit the S_3 choice.
        let p = make_params(7, 3).unwrap();
        let forbidden = family(7, 3, &[&[2, 3, 7]]);
        let a = rset(7, &[1, 2, 3]);
        let b = rset(7, &[1, 2, 4]);
        let chain = build_chain(&p, &forbidden, a, b).unwrap();
        assert!(verify_chain(&p, &forbidden, a, b, &chain));
        assert_eq!((chain.trace.t, chain.trace.m, chain.trace.q), (2, 2, 0));
        assert_eq!(chain.f(), 7);
        assert!(chain.trace.backtracks > 0);
    }

    #[test]
    fn case2_swap_repair_triggers_when_all_completions_are_forbidden() {
        // n = 10, r = 3: l = 4, p = 2. Endpoints share t = 1, so m = 0,
        // q = 1, subcase 2.2. With B's private elements at the top of the
        // universe, S_1 = {4,5,10} leaves the S_2 pool at exactly {2,6,7,8},
        // and the forbidden family below is precisely the C(4,2) = 6
        // completions of C_2 = {3} from that pool.
        let p = make_params(10, 3).unwrap();
        let a = rset(10, &[1, 2, 3]);
        let b = rset(10, &[1, 9, 10]);
        let forbidden = family(
            10,
            3,
            &[
                &[2, 3, 6],
                &[2, 3, 7],
                &[3, 6, 7],
                &[2, 3, 8],
                &[3, 6, 8],
                &[3, 7, 8],
            ],
        );
        assert_eq!(forbidden.len() as u64, p.binom_l_p());
        let chain = build_chain(&p, &forbidden, a, b).unwrap();
        assert_eq!(chain.trace.case_taken, CaseTaken::Case2_2Swap);
        assert_eq!((chain.trace.t, chain.trace.m, chain.trace.q), (1, 0, 1));
        assert!(verify_chain(&p, &forbidden, a, b, &chain));
        // The swap exchanged the pool element 6 into S_1 and pulled the
        // added element 4 down into S_2.
        assert_eq!(
            chain.sets,
            vec![a, rset(10, &[5, 6, 10]), rset(10, &[2, 3, 4]), b]
        );
        assert!(bfs_path_avoiding(&p, &forbidden, a, b, BUDGET)
            .unwrap()
            .is_some());
    }

    #[test]
    fn case2_subcase21_path() {
        // n = 13, r = 5: l = 3, p = 2. Endpoints sharing t = 4 elements
        // split as m = 2, q = 0, and r - t = 1 < p - q = 2.
        let p = make_params(13, 5).unwrap();
        assert_eq!((p.l, p.p), (3, 2));
        let a = rset(13, &[1, 2, 3, 4, 5]);
        let b = rset(13, &[1, 2, 3, 4, 6]);
        let forbidden = family(13, 5, &[&[7, 8, 9, 10, 11], &[7, 8, 9, 10, 12]]);
        let chain = build_chain(&p, &forbidden, a, b).unwrap();
        assert_eq!(chain.trace.case_taken, CaseTaken::Case2_1);
        assert_eq!((chain.trace.t, chain.trace.m, chain.trace.q), (4, 2, 0));
        assert!(verify_chain(&p, &forbidden, a, b, &chain));
        assert_eq!(chain.f(), 2 * (2 + 1) + 1);
    }

    #[test]
    fn skeleton_trace_shape() {
        let p = make_params(7, 3).unwrap();
        let a = rset(7, &[1, 2, 3]);
        let b = rset(7, &[1, 4, 5]);
        let chain = build_chain(&p, &empty(7, 3), a, b).unwrap();
        let trace = &chain.trace;
        assert_eq!(trace.blocks_a.len() as u32, trace.m + 1);
        assert_eq!(trace.blocks_b.len() as u32, trace.m + 1);
        assert_eq!(trace.skeletons.len() as u32, 2 * (trace.m + 1) + 1);
        // Block sizes: |A_i| = |B_i| = p for i <= m, the last blocks <= p.
        for blocks in [&trace.blocks_a, &trace.blocks_b] {
            for (i, blk) in blocks.iter().enumerate() {
                if i < trace.m as usize {
                    assert_eq!(blk.len(), p.p);
                } else {
                    assert!(blk.len() <= p.p);
                }
            }
        }
        // Consecutive skeletons are disjoint.
        for w in trace.skeletons.windows(2) {
            assert_eq!(w[0].bits() & w[1].bits(), 0);
        }
        // The last skeleton is B.
        assert_eq!(trace.skeletons.last().unwrap().bits(), b.bits());
    }

    #[test]
    fn l_zero_with_intersecting_endpoints_is_rejected() {
        let p = make_params(6, 3).unwrap();
        let err = build_chain(&p, &empty(6, 3), rset(6, &[1, 2, 3]), rset(6, &[1, 2, 4]));
        assert!(matches!(err, Err(Error::Domain(_))));
        // Disjoint endpoints still work at l = 0.
        let a = rset(6, &[1, 2, 3]);
        let chain = build_chain(&p, &empty(6, 3), a, a.complement_in(6).unwrap()).unwrap();
        assert_eq!(chain.f(), 1);
    }

    #[test]
    fn precondition_and_domain_errors() {
        let p = make_params(7, 3).unwrap();
        let a = rset(7, &[1, 2, 3]);
        let b = rset(7, &[1, 4, 5]);
        // C(l, p) = C(1, 1) = 1, so two forbidden sets break the guarantee.
        let big = family(7, 3, &[&[4, 5, 6], &[4, 5, 7]]);
        assert!(matches!(
            build_chain(&p, &big, a, b),
            Err(Error::Domain(_))
        ));
        // Endpoint inside the forbidden family.
        let forb = family(7, 3, &[&[1, 2, 3]]);
        assert!(matches!(
            build_chain(&p, &forb, a, b),
            Err(Error::Domain(_))
        ));
        // Equal endpoints.
        assert!(matches!(
            build_chain(&p, &empty(7, 3), a, a),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn oracle_fallback_is_opt_in_and_logged() {
        let p = make_params(7, 3).unwrap();
        let a = rset(7, &[1, 2, 3]);
        let b = rset(7, &[1, 4, 5]);
        let big = family(7, 3, &[&[4, 5, 6], &[4, 5, 7]]);
        let opts = ChainOptions {
            allow_oracle_fallback: true,
            oracle_budget: BUDGET,
        };
        let chain = build_chain_opts(&p, &big, a, b, &opts).unwrap();
        assert_eq!(chain.trace.case_taken, CaseTaken::OracleFallback);
        assert!(verify_chain(&p, &big, a, b, &chain));
    }

    #[test]
    fn pick_avoiding_examples() {
        // Pool = 2-subsets of {4..8}: 10 candidates; forbid the first 6.
        let pool = ElemSet::from_elems(&[4, 5, 6, 7, 8]);
        let all: Vec<u64> = ksubsets_of_mask(pool.bits(), 2).collect();
        assert_eq!(all.len(), 10);
        let forbidden = Family::from_masks(8, 2, all[..6].iter().copied()).unwrap();
        let picked = pick_avoiding(pool, 2, &forbidden, ElemSet::EMPTY).unwrap();
        assert_eq!(picked.bits(), all[6]);

        let none = Family::empty(8, 2).unwrap();
        let picked = pick_avoiding(pool, 2, &none, ElemSet::EMPTY).unwrap();
        assert_eq!(picked.bits(), all[0]);

        // Completion version: 1-subsets of {2,3} completing {1}.
        let completion = ElemSet::from_elems(&[1]);
        let small_pool = ElemSet::from_elems(&[2, 3]);
        let forbidden = family(8, 2, &[&[1, 2], &[1, 3]]);
        let err = pick_avoiding(small_pool, 1, &forbidden, completion);
        assert!(matches!(
            err,
            Err(Error::Exhaustion {
                pool_candidates: 2,
                forbidden_len: 2,
                ..
            })
        ));
    }

    #[test]
    fn verify_chain_rejects_malformed_chains() {
        let p = make_params(8, 2).unwrap();
        let a = rset(8, &[1, 2]);
        let b = rset(8, &[2, 3]);
        let bad = Chain {
            sets: vec![a, b],
            trace: ChainTrace::simple(CaseTaken::DisjointEndpoints, 1),
        };
        // Consecutive sets intersect at 2.
        assert!(!verify_chain(&p, &empty(8, 2), a, b, &bad));

        let c = rset(8, &[4, 5]);
        let chain = Chain {
            sets: vec![a, c, b],
            trace: ChainTrace::simple(CaseTaken::Case1, 1),
        };
        assert!(verify_chain(&p, &empty(8, 2), a, b, &chain));
        // Same chain fails once the middle set is forbidden.
        let forb = family(8, 2, &[&[4, 5]]);
        assert!(!verify_chain(&p, &forb, a, b, &chain));
        // Wrong endpoints.
        assert!(!verify_chain(&p, &empty(8, 2), b, a, &chain));
    }
}
