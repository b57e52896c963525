//! r-sets, families, predicates, and the compression (shifting) calculus.
//!
//! Elements of the ground set `[n] = {1, ..., n}` are 1-based; bit `k-1` of a
//! mask encodes element `k`. The canonical order on sets is ascending numeric
//! bitmask value, and families keep their members sorted and deduplicated in
//! that order, so membership queries are exact binary searches.

use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::MAX_UNIVERSE;

/// Mask with bits `0..n` set: the full ground set `[n]`.
pub fn full_mask(n: u32) -> u64 {
    debug_assert!(n <= MAX_UNIVERSE);
    if n == 0 {
        0
    } else {
        (1u64 << n) - 1
    }
}

fn bit(element: u32) -> u64 {
    debug_assert!(element >= 1);
    1u64 << (element - 1)
}

fn check_universe(n: u32) -> Result<()> {
    if n == 0 || n > MAX_UNIVERSE {
        return Err(Error::domain(format!(
            "universe size {n} out of range 1..={MAX_UNIVERSE}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// ElemSet: a plain subset of the ground set, no cardinality contract
// ---------------------------------------------------------------------------

/// A subset of ground-set elements with no size constraint.
///
/// Used for the element blocks and skeletons of chain construction, and for
/// candidate pools. Unlike [`RSet`] it does not carry a universe; callers
/// keep it within whatever `[n]` they work in.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_elems(elems: &[u32]) -> Self {
        let mut bits = 0u64;
        for &e in elems {
            bits |= bit(e);
        }
        ElemSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: u32) -> bool {
        element >= 1 && self.0 & bit(element) != 0
    }

    /// Elements in ascending order.
    pub fn elems(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut rest = self.0;
        while rest != 0 {
            out.push(rest.trailing_zeros() + 1);
            rest &= rest - 1;
        }
        out
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let elems = self.elems();
        let mut seq = serializer.serialize_seq(Some(elems.len()))?;
        for e in elems {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

// ---------------------------------------------------------------------------
// RSet
// ---------------------------------------------------------------------------

/// An r-element subset of `[n]`, stored as a bitmask plus its universe size.
///
/// The cardinality contract (`popcount = r`) is enforced where an `r` is in
/// scope, chiefly by [`Family`] and the enumeration routines.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RSet {
    bits: u64,
    universe_n: u32,
}

impl RSet {
    /// Builds a set from its bitmask, validating it fits inside `[n]`.
    pub fn from_bits(n: u32, bits: u64) -> Result<Self> {
        check_universe(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::domain(format!(
                "set contains elements outside the universe [{n}]"
            )));
        }
        Ok(RSet {
            bits,
            universe_n: n,
        })
    }

    /// Builds a set from 1-based element labels.
    pub fn from_elems(n: u32, elems: &[u32]) -> Result<Self> {
        check_universe(n)?;
        let mut bits = 0u64;
        for &e in elems {
            if e < 1 || e > n {
                return Err(Error::domain(format!(
                    "element {e} outside the universe [{n}]"
                )));
            }
            bits |= bit(e);
        }
        Ok(RSet {
            bits,
            universe_n: n,
        })
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn universe(self) -> u32 {
        self.universe_n
    }

    pub fn size(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn contains(self, element: u32) -> bool {
        element >= 1 && element <= self.universe_n && self.bits & bit(element) != 0
    }

    pub fn elems(self) -> Vec<u32> {
        ElemSet(self.bits).elems()
    }

    pub fn as_elemset(self) -> ElemSet {
        ElemSet(self.bits)
    }

    pub fn intersects(self, other: RSet) -> bool {
        self.bits & other.bits != 0
    }

    pub fn intersection_size(self, other: RSet) -> u32 {
        (self.bits & other.bits).count_ones()
    }

    pub fn is_disjoint_from(self, other: RSet) -> bool {
        self.bits & other.bits == 0
    }

    /// Returns `[m] \ self`, re-homed to universe `m`.
    ///
    /// All elements of `self` must lie in `[m]`; `m` may differ from the
    /// stored universe.
    pub fn complement_in(self, m: u32) -> Result<RSet> {
        check_universe(m)?;
        if self.bits & !full_mask(m) != 0 {
            return Err(Error::domain(format!(
                "set has elements outside [{m}], cannot take complement there"
            )));
        }
        Ok(RSet {
            bits: full_mask(m) & !self.bits,
            universe_n: m,
        })
    }
}

impl fmt::Debug for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", ElemSet(self.bits))
    }
}

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", ElemSet(self.bits))
    }
}

impl Serialize for RSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElemSet(self.bits).serialize(serializer)
    }
}

// ---------------------------------------------------------------------------
// UniverseParams
// ---------------------------------------------------------------------------

/// The parameter bundle `(n, r, l, p)` with `l = n - 2r` and
/// `p = min(r, ceil(l/2))`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct UniverseParams {
    pub n: u32,
    pub r: u32,
    pub l: u32,
    pub p: u32,
}

/// Serialised reports are self-describing: alongside the raw parameters we
/// embed the two binomials every statement here is phrased in.
impl Serialize for UniverseParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("UniverseParams", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("binom_n_r", &self.binom_n_r())?;
        st.serialize_field("binom_l_p", &self.binom_l_p())?;
        st.end()
    }
}

/// Validates `1 <= r`, `2r <= n`, `n <= 62` and derives `l` and `p`.
pub fn make_params(n: u32, r: u32) -> Result<UniverseParams> {
    if r < 1 {
        return Err(Error::domain("requires 1 <= r"));
    }
    if n < 2 * r {
        return Err(Error::domain(format!("requires 2r <= n (got n={n}, r={r})")));
    }
    check_universe(n)?;
    let l = n - 2 * r;
    let p = r.min(l.div_ceil(2));
    Ok(UniverseParams { n, r, l, p })
}

impl UniverseParams {
    pub fn full_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// `C(n, r)`: the number of vertices of the disjointness graph.
    pub fn binom_n_r(&self) -> u64 {
        binomial(self.n as u64, self.r as u64)
    }

    /// `C(l, p)`: the forbidden-family budget of the chain machinery.
    pub fn binom_l_p(&self) -> u64 {
        binomial(self.l as u64, self.p as u64)
    }
}

// ---------------------------------------------------------------------------
// Family
// ---------------------------------------------------------------------------

/// A deduplicated, canonically ordered family of r-sets over one universe.
#[derive(Clone, PartialEq, Eq)]
pub struct Family {
    universe_n: u32,
    r: u32,
    /// Sorted ascending, no duplicates.
    masks: Vec<u64>,
}

impl Family {
    pub fn empty(n: u32, r: u32) -> Result<Self> {
        check_universe(n)?;
        if r < 1 || r > n {
            return Err(Error::domain(format!("requires 1 <= r <= n (got r={r}, n={n})")));
        }
        Ok(Family {
            universe_n: n,
            r,
            masks: Vec::new(),
        })
    }

    /// Builds a family from member sets, sorting canonically and dropping
    /// duplicates. Every member must have exactly `r` elements inside `[n]`.
    pub fn new<I: IntoIterator<Item = RSet>>(n: u32, r: u32, members: I) -> Result<Self> {
        let mut fam = Family::empty(n, r)?;
        let mut masks: Vec<u64> = Vec::new();
        for s in members {
            fam.check_member_shape(s)?;
            masks.push(s.bits());
        }
        masks.sort_unstable();
        masks.dedup();
        fam.masks = masks;
        Ok(fam)
    }

    /// Builds a family straight from bitmasks.
    pub fn from_masks<I: IntoIterator<Item = u64>>(n: u32, r: u32, masks: I) -> Result<Self> {
        let sets = masks
            .into_iter()
            .map(|m| RSet::from_bits(n, m))
            .collect::<Result<Vec<_>>>()?;
        Family::new(n, r, sets)
    }

    fn check_member_shape(&self, s: RSet) -> Result<()> {
        if s.bits() & !full_mask(self.universe_n) != 0 {
            return Err(Error::domain(format!(
                "member {s} does not fit in the universe [{}]",
                self.universe_n
            )));
        }
        if s.size() != self.r {
            return Err(Error::domain(format!(
                "member {s} has {} elements, family requires r={}",
                s.size(),
                self.r
            )));
        }
        Ok(())
    }

    pub fn universe(&self) -> u32 {
        self.universe_n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Exact membership via binary search over the canonical order.
    pub fn contains(&self, s: RSet) -> bool {
        self.masks.binary_search(&s.bits()).is_ok()
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.masks.binary_search(&mask).is_ok()
    }

    /// Member masks in canonical (ascending numeric) order.
    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// Members in canonical order.
    pub fn members(&self) -> impl Iterator<Item = RSet> + '_ {
        let n = self.universe_n;
        self.masks.iter().map(move |&bits| RSet {
            bits,
            universe_n: n,
        })
    }

    /// Union of two families over the same universe and r.
    pub fn union(&self, other: &Family) -> Result<Family> {
        check_same_shape(self, other)?;
        let mut masks = self.masks.clone();
        masks.extend_from_slice(&other.masks);
        masks.sort_unstable();
        masks.dedup();
        Ok(Family {
            universe_n: self.universe_n,
            r: self.r,
            masks,
        })
    }

    /// Members present in both families.
    pub fn intersection(&self, other: &Family) -> Result<Family> {
        check_same_shape(self, other)?;
        let masks = self
            .masks
            .iter()
            .copied()
            .filter(|&m| other.contains_mask(m))
            .collect();
        Ok(Family {
            universe_n: self.universe_n,
            r: self.r,
            masks,
        })
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.members().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Family", 3)?;
        st.serialize_field("n", &self.universe_n)?;
        st.serialize_field("r", &self.r)?;
        let sets: Vec<RSet> = self.members().collect();
        st.serialize_field("sets", &sets)?;
        st.end()
    }
}

fn check_same_shape(f: &Family, g: &Family) -> Result<()> {
    if f.universe() != g.universe() || f.r() != g.r() {
        return Err(Error::domain(format!(
            "families live in different contexts: (n={}, r={}) vs (n={}, r={})",
            f.universe(),
            f.r(),
            g.universe(),
            g.r()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Iterator over all k-subsets of a fixed mask, in ascending numeric order
/// of the produced masks.
///
/// Runs Gosper's hack over a compressed index space and re-expands through
/// the mask's bit positions; the expansion is monotone, so compressed order
/// is mask order.
pub struct KSubsetsOfMask {
    positions: Vec<u32>,
    k: u32,
    state: u64,
    done: bool,
}

/// All k-subsets of `mask`, canonically ordered. `k = 0` yields one empty set.
pub fn ksubsets_of_mask(mask: u64, k: u32) -> KSubsetsOfMask {
    let mut positions = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        positions.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    let m = positions.len() as u32;
    let done = k > m;
    let state = if k == 0 || done { 0 } else { (1u64 << k) - 1 };
    KSubsetsOfMask {
        positions,
        k,
        state,
        done,
    }
}

impl KSubsetsOfMask {
    fn expand(&self, compressed: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = compressed;
        while rest != 0 {
            let i = rest.trailing_zeros();
            out |= 1u64 << self.positions[i as usize];
            rest &= rest - 1;
        }
        out
    }
}

impl Iterator for KSubsetsOfMask {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let m = self.positions.len() as u32;
        if self.k == 0 {
            self.done = true;
            return Some(0);
        }
        if m < 64 && self.state >= (1u64 << m) {
            self.done = true;
            return None;
        }
        let out = self.expand(self.state);
        // Gosper's hack: next k-subset in increasing numeric order.
        let x = self.state & self.state.wrapping_neg();
        let y = self.state + x;
        if y == 0 || (m < 64 && y >= (1u64 << m)) {
            self.done = true;
        } else {
            self.state = ((self.state & !y) / x) >> 1 | y;
        }
        Some(out)
    }
}

/// Streams all `C(n, r)` r-subsets of `[n]` in canonical order.
///
/// Refuses to start when `C(n, r)` exceeds `budget`.
pub fn enumerate_rsets(
    params: &UniverseParams,
    budget: u64,
) -> Result<impl Iterator<Item = RSet>> {
    let required = params.binom_n_r();
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    let n = params.n;
    Ok(ksubsets_of_mask(full_mask(n), params.r).map(move |bits| RSet {
        bits,
        universe_n: n,
    }))
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

/// True iff every unordered pair of members intersects.
///
/// Empty and singleton families are vacuously intersecting.
pub fn is_intersecting(f: &Family) -> bool {
    let masks = f.masks();
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            if a & b == 0 {
                return false;
            }
        }
    }
    true
}

/// True iff `|A ∩ B| >= t` for every `A` in `f` and `B` in `g`.
///
/// Vacuously true when either family is empty; report-producing callers
/// carry an explicit vacuity flag alongside.
pub fn are_cross_intersecting(f: &Family, g: &Family, t: u32) -> Result<bool> {
    if t < 1 {
        return Err(Error::domain("cross-intersection requires t >= 1"));
    }
    check_same_shape(f, g)?;
    for &a in f.masks() {
        for &b in g.masks() {
            if (a & b).count_ones() < t {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff the families share no member set.
pub fn are_disjoint(f: &Family, g: &Family) -> Result<bool> {
    check_same_shape(f, g)?;
    // Both mask lists are sorted; a single merge pass suffices.
    let (a, b) = (f.masks(), g.masks());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Ok(false),
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Compression (shifting)
// ---------------------------------------------------------------------------

/// The index pair `(i, j)` of a shift: replace `j` by `i` where possible.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompressionOp {
    i: u32,
    j: u32,
}

impl CompressionOp {
    /// Validates `i != j` and both indices inside `[n]`.
    pub fn new(i: u32, j: u32, n: u32) -> Result<Self> {
        check_universe(n)?;
        if i == j {
            return Err(Error::domain("compression requires i != j"));
        }
        if i < 1 || i > n || j < 1 || j > n {
            return Err(Error::domain(format!(
                "compression indices ({i}, {j}) outside the universe [{n}]"
            )));
        }
        Ok(CompressionOp { i, j })
    }

    /// The incoming element.
    pub fn i(&self) -> u32 {
        self.i
    }

    /// The outgoing element.
    pub fn j(&self) -> u32 {
        self.j
    }
}

/// The set shift: `(A \ {j}) ∪ {i}` when `j ∈ A` and `i ∉ A`, else `A`.
pub fn compress_set(op: CompressionOp, a: RSet) -> RSet {
    debug_assert!(op.i <= a.universe() && op.j <= a.universe());
    if a.contains(op.j) && !a.contains(op.i) {
        RSet {
            bits: (a.bits() & !bit(op.j)) | bit(op.i),
            universe_n: a.universe(),
        }
    } else {
        a
    }
}

/// The family shift: keeps members whose image is already present, replaces
/// the rest by their images. Preserves cardinality.
pub fn compress_family(op: CompressionOp, f: &Family) -> Family {
    let mut masks = Vec::with_capacity(f.len());
    for s in f.members() {
        let shifted = compress_set(op, s);
        if f.contains(shifted) {
            masks.push(s.bits());
        } else {
            masks.push(shifted.bits());
        }
    }
    masks.sort_unstable();
    masks.dedup();
    debug_assert_eq!(masks.len(), f.len());
    Family {
        universe_n: f.universe(),
        r: f.r(),
        masks,
    }
}

/// Family shift with membership tested against a reference family `union`
/// instead of `f` itself: the variant designed to preserve disjointness of a
/// pair, which loses the cross-intersecting property instead.
pub fn compress_family_modified(op: CompressionOp, f: &Family, union: &Family) -> Family {
    let mut masks = Vec::with_capacity(f.len());
    for s in f.members() {
        let shifted = compress_set(op, s);
        if union.contains(shifted) {
            masks.push(s.bits());
        } else {
            masks.push(shifted.bits());
        }
    }
    masks.sort_unstable();
    masks.dedup();
    Family {
        universe_n: f.universe(),
        r: f.r(),
        masks,
    }
}

// ---------------------------------------------------------------------------
// The documented compression failure on disjoint pairs
// ---------------------------------------------------------------------------

/// Outcome of running both shift variants on the witness pair at `n = 2r`.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub r: u32,
    pub n: u32,
    /// `A = {1, r+2, ..., 2r}`, a member of the first family.
    pub witness_a: RSet,
    /// `B = {2, r+2, ..., 2r}`, the sole member of the second family.
    pub witness_b: RSet,
    /// `C = {2, 3, ..., r+1}`, a member of the first family.
    pub witness_c: RSet,
    /// `δ_{1,2}(C) = {1, 3, ..., r+1}`, outside both families.
    pub shifted_c: RSet,
    pub family_a: Family,
    pub family_b: Family,
    pub before_disjoint: bool,
    pub before_cross_intersecting: bool,
    pub standard_a: Family,
    pub standard_b: Family,
    /// Sets landing in both standard images; nonempty means disjointness broke.
    pub standard_common: Family,
    pub standard_disjointness_violated: bool,
    pub modified_a: Family,
    pub modified_b: Family,
    /// A disjoint cross pair between the modified images, if any.
    pub modified_cross_witness: Option<(RSet, RSet)>,
    pub modified_cross_violated: bool,
}

/// Builds the witness pair `A = {1, r+2, ..., 2r} ∈ 𝒜`, `B = {2, r+2, ..., 2r} ∈ ℬ`,
/// `C = {2, ..., r+1} ∈ 𝒜` over `[2r]`, applies `Δ_{1,2}` in both its standard
/// and union-membership variants, and reports the two failure modes:
/// the standard shift merges the families, the modified shift leaves a
/// disjoint cross pair.
pub fn compression_failure_scenario(r: u32) -> Result<ScenarioReport> {
    if r < 2 {
        return Err(Error::domain("the failure scenario requires r >= 2"));
    }
    let n = 2 * r;
    check_universe(n)?;

    let tail: Vec<u32> = (r + 2..=2 * r).collect();
    let mut a_elems = vec![1];
    a_elems.extend_from_slice(&tail);
    let mut b_elems = vec![2];
    b_elems.extend_from_slice(&tail);
    let c_elems: Vec<u32> = (2..=r + 1).collect();

    let witness_a = RSet::from_elems(n, &a_elems)?;
    let witness_b = RSet::from_elems(n, &b_elems)?;
    let witness_c = RSet::from_elems(n, &c_elems)?;

    let op = CompressionOp::new(1, 2, n)?;
    let shifted_c = compress_set(op, witness_c);

    let family_a = Family::new(n, r, [witness_a, witness_c])?;
    let family_b = Family::new(n, r, [witness_b])?;
    let union = family_a.union(&family_b)?;
    debug_assert!(!union.contains(shifted_c));

    let before_disjoint = are_disjoint(&family_a, &family_b)?;
    let before_cross_intersecting = are_cross_intersecting(&family_a, &family_b, 1)?;

    let standard_a = compress_family(op, &family_a);
    let standard_b = compress_family(op, &family_b);
    let standard_common = standard_a.intersection(&standard_b)?;
    let standard_disjointness_violated = !standard_common.is_empty();

    let modified_a = compress_family_modified(op, &family_a, &union);
    let modified_b = compress_family_modified(op, &family_b, &union);
    let mut modified_cross_witness = None;
    'outer: for x in modified_a.members() {
        for y in modified_b.members() {
            if x.is_disjoint_from(y) {
                modified_cross_witness = Some((x, y));
                break 'outer;
            }
        }
    }
    let modified_cross_violated = modified_cross_witness.is_some();

    Ok(ScenarioReport {
        r,
        n,
        witness_a,
        witness_b,
        witness_c,
        shifted_c,
        family_a,
        family_b,
        before_disjoint,
        before_cross_intersecting,
        standard_a,
        standard_b,
        standard_common,
        standard_disjointness_violated,
        modified_a,
        modified_b,
        modified_cross_witness,
        modified_cross_violated,
    })
}

// ---------------------------------------------------------------------------
// Family text format
// ---------------------------------------------------------------------------

/// Parses a comma-separated list of 1-based elements (`"1,5,6"`), requiring
/// strictly ascending order. `line` is used for error reporting.
pub fn parse_elem_list(text: &str, line: usize) -> Result<Vec<u32>> {
    let mut elems = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(Error::parse(line, "empty element in set"));
        }
        let e: u32 = item
            .parse()
            .map_err(|_| Error::parse(line, format!("invalid element '{item}'")))?;
        if e < 1 {
            return Err(Error::parse(line, "elements are 1-based"));
        }
        if let Some(&last) = elems.last() {
            if e <= last {
                return Err(Error::parse(
                    line,
                    format!("elements must be strictly ascending (saw {last} before {e})"),
                ));
            }
        }
        elems.push(e);
    }
    Ok(elems)
}

/// Parses the family text format:
///
/// ```text
/// n=<n> r=<r>
/// 1,5,6
/// 2,5,6
/// ```
///
/// Blank lines and `#` comments are ignored. Duplicate sets are rejected
/// with the offending line number.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut header: Option<(u32, u32)> = None;
    let mut seen: Vec<(u64, usize)> = Vec::new();
    let mut members: Vec<RSet> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match header {
            None => {
                header = Some(parse_header(line, line_no)?);
            }
            Some((n, r)) => {
                let elems = parse_elem_list(line, line_no)?;
                if elems.len() != r as usize {
                    return Err(Error::parse(
                        line_no,
                        format!("set has {} elements, header says r={r}", elems.len()),
                    ));
                }
                let s = RSet::from_elems(n, &elems)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                if let Some(&(_, first)) = seen.iter().find(|&&(m, _)| m == s.bits()) {
                    return Err(Error::parse(
                        line_no,
                        format!("duplicate set {s} (first seen at line {first})"),
                    ));
                }
                seen.push((s.bits(), line_no));
                members.push(s);
            }
        }
    }

    let (n, r) = header.ok_or_else(|| Error::parse(1, "missing 'n=<n> r=<r>' header"))?;
    Family::new(n, r, members)
}

fn parse_header(line: &str, line_no: usize) -> Result<(u32, u32)> {
    let mut n = None;
    let mut r = None;
    for token in line.split_whitespace() {
        if let Some(v) = token.strip_prefix("n=") {
            n = Some(
                v.parse::<u32>()
                    .map_err(|_| Error::parse(line_no, format!("invalid n value '{v}'")))?,
            );
        } else if let Some(v) = token.strip_prefix("r=") {
            r = Some(
                v.parse::<u32>()
                    .map_err(|_| Error::parse(line_no, format!("invalid r value '{v}'")))?,
            );
        } else {
            return Err(Error::parse(
                line_no,
                format!("unexpected header token '{token}', expected 'n=<n> r=<r>'"),
            ));
        }
    }
    match (n, r) {
        (Some(n), Some(r)) => Ok((n, r)),
        _ => Err(Error::parse(line_no, "header must provide both n= and r=")),
    }
}

/// Renders a family in the text format, members in canonical order.
pub fn write_family(f: &Family) -> String {
    let mut out = format!("n={} r={}\n", f.universe(), f.r());
    for s in f.members() {
        let elems: Vec<String> = s.elems().iter().map(u32::to_string).collect();
        out.push_str(&elems.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rset(n: u32, elems: &[u32]) -> RSet {
        RSet::from_elems(n, elems).unwrap()
    }

    fn family(n: u32, r: u32, sets: &[&[u32]]) -> Family {
        Family::new(n, r, sets.iter().map(|s| rset(n, s))).unwrap()
    }

    #[test]
    fn make_params_examples() {
        let p = make_params(5, 2).unwrap();
        assert_eq!((p.l, p.p), (1, 1));
        let p = make_params(4, 2).unwrap();
        assert_eq!((p.l, p.p), (0, 0));
        let p = make_params(12, 3).unwrap();
        assert_eq!((p.l, p.p), (6, 3));
    }

    #[test]
    fn make_params_rejects_bad_inputs() {
        assert!(matches!(make_params(3, 2), Err(Error::Domain(_))));
        assert!(matches!(make_params(4, 0), Err(Error::Domain(_))));
        assert!(matches!(make_params(63, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn enumerate_rsets_canonical_order() {
        let p = make_params(4, 2).unwrap();
        let all: Vec<RSet> = enumerate_rsets(&p, 1 << 20).unwrap().collect();
        let expect: Vec<RSet> = [
            &[1u32, 2][..],
            &[1, 3],
            &[2, 3],
            &[1, 4],
            &[2, 4],
            &[3, 4],
        ]
        .iter()
        .map(|e| rset(4, e))
        .collect();
        assert_eq!(all, expect);

        let p = make_params(5, 2).unwrap();
        assert_eq!(enumerate_rsets(&p, 1 << 20).unwrap().count(), 10);
        let p = make_params(6, 3).unwrap();
        assert_eq!(enumerate_rsets(&p, 1 << 20).unwrap().count(), 20);
    }

    #[test]
    fn enumerate_rsets_respects_budget() {
        let p = make_params(10, 5).unwrap();
        assert!(matches!(
            enumerate_rsets(&p, 10).err(),
            Some(Error::Budget {
                required: 252,
                budget: 10
            })
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(rset(4, &[1, 2]).complement_in(4).unwrap(), rset(4, &[3, 4]));
        let s = rset(6, &[1, 3, 4]);
        assert_eq!(s.complement_in(6).unwrap().complement_in(6).unwrap(), s);
        let c = s.complement_in(6).unwrap();
        assert_eq!(c, rset(6, &[2, 5, 6]));
        assert!(c.contains(2) && !c.contains(1));
        // Element 5 does not fit in [4].
        assert!(rset(6, &[1, 5]).complement_in(4).is_err());
    }

    #[test]
    fn intersecting_examples() {
        let star = family(5, 2, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5]]);
        assert!(is_intersecting(&star));
        let split = family(4, 2, &[&[1, 2], &[3, 4]]);
        assert!(!is_intersecting(&split));
        assert!(is_intersecting(&Family::empty(5, 2).unwrap()));
    }

    #[test]
    fn cross_intersecting_examples() {
        let f = family(5, 2, &[&[1, 2]]);
        let g = family(5, 2, &[&[3, 4]]);
        assert!(!are_cross_intersecting(&f, &g, 1).unwrap());

        let f = family(5, 3, &[&[1, 2, 3]]);
        let g = family(5, 3, &[&[1, 2, 4]]);
        assert!(are_cross_intersecting(&f, &g, 2).unwrap());

        // Vacuous: empty side.
        let e = Family::empty(5, 2).unwrap();
        let g = family(5, 2, &[&[3, 4]]);
        assert!(are_cross_intersecting(&e, &g, 1).unwrap());

        // Mismatched universes.
        let f = family(5, 2, &[&[1, 2]]);
        let g = family(6, 2, &[&[3, 4]]);
        assert!(are_cross_intersecting(&f, &g, 1).is_err());
        assert!(are_cross_intersecting(&f, &f, 0).is_err());
    }

    #[test]
    fn disjoint_examples() {
        let f = family(5, 2, &[&[1, 2]]);
        assert!(!are_disjoint(&f, &f).unwrap());
        let g = family(5, 2, &[&[1, 3]]);
        assert!(are_disjoint(&f, &g).unwrap());
        let e = Family::empty(5, 2).unwrap();
        assert!(are_disjoint(&e, &f).unwrap());
        let h = family(6, 2, &[&[1, 3]]);
        assert!(are_disjoint(&f, &h).is_err());
    }

    #[test]
    fn compress_set_examples() {
        let op = CompressionOp::new(1, 2, 6).unwrap();
        assert_eq!(compress_set(op, rset(6, &[2, 5, 6])), rset(6, &[1, 5, 6]));
        assert_eq!(compress_set(op, rset(6, &[1, 5, 6])), rset(6, &[1, 5, 6]));
        let op = CompressionOp::new(3, 5, 6).unwrap();
        assert_eq!(compress_set(op, rset(6, &[3, 5])), rset(6, &[3, 5]));
    }

    #[test]
    fn compression_op_validation() {
        assert!(CompressionOp::new(2, 2, 6).is_err());
        assert!(CompressionOp::new(0, 2, 6).is_err());
        assert!(CompressionOp::new(1, 7, 6).is_err());
    }

    #[test]
    fn compress_family_examples() {
        let op = CompressionOp::new(1, 2, 4).unwrap();
        let f = family(4, 2, &[&[2, 3]]);
        assert_eq!(compress_family(op, &f), family(4, 2, &[&[1, 3]]));

        let f = family(4, 2, &[&[1, 3], &[2, 3]]);
        assert_eq!(compress_family(op, &f), f);

        let p = make_params(4, 2).unwrap();
        let all = Family::new(4, 2, enumerate_rsets(&p, 100).unwrap()).unwrap();
        assert_eq!(compress_family(op, &all).len(), all.len());
    }

    #[test]
    fn failure_scenario_r3_matches_the_derived_witness() {
        let rep = compression_failure_scenario(3).unwrap();
        assert_eq!(rep.witness_a, rset(6, &[1, 5, 6]));
        assert_eq!(rep.witness_b, rset(6, &[2, 5, 6]));
        assert_eq!(rep.witness_c, rset(6, &[2, 3, 4]));
        assert_eq!(rep.shifted_c, rset(6, &[1, 3, 4]));
        assert!(rep.before_disjoint && rep.before_cross_intersecting);
        assert!(rep.standard_disjointness_violated);
        // The standard images share exactly A.
        assert_eq!(rep.standard_common, family(6, 3, &[&[1, 5, 6]]));
        assert!(rep.modified_cross_violated);
        let (x, y) = rep.modified_cross_witness.unwrap();
        assert_eq!((x, y), (rset(6, &[1, 3, 4]), rset(6, &[2, 5, 6])));
    }

    #[test]
    fn failure_scenario_general_r() {
        let rep = compression_failure_scenario(4).unwrap();
        assert_eq!(rep.witness_a, rset(8, &[1, 6, 7, 8]));
        assert_eq!(rep.witness_b, rset(8, &[2, 6, 7, 8]));
        assert_eq!(rep.witness_c, rset(8, &[2, 3, 4, 5]));
        assert!(rep.standard_disjointness_violated && rep.modified_cross_violated);

        let rep = compression_failure_scenario(2).unwrap();
        assert_eq!(rep.witness_a, rset(4, &[1, 4]));
        assert_eq!(rep.witness_b, rset(4, &[2, 4]));
        assert_eq!(rep.witness_c, rset(4, &[2, 3]));
        assert!(rep.standard_disjointness_violated && rep.modified_cross_violated);

        assert!(compression_failure_scenario(1).is_err());
    }

    #[test]
    fn family_text_round_trip() {
        let f = family(6, 3, &[&[1, 5, 6], &[2, 3, 4]]);
        let text = write_family(&f);
        assert_eq!(text, "n=6 r=3\n2,3,4\n1,5,6\n");
        assert_eq!(parse_family(&text).unwrap(), f);
    }

    #[test]
    fn family_text_ignores_blanks_and_comments() {
        let text = "# construction: demo\n\nn=5 r=2\n# star\n1,2\n\n1,3\n";
        let f = parse_family(text).unwrap();
        assert_eq!(f, family(5, 2, &[&[1, 2], &[1, 3]]));
    }

    #[test]
    fn family_text_parse_errors_carry_line_numbers() {
        let err = parse_family("n=5 r=2\n1,,3\n").unwrap_err();
        assert_eq!(err, Error::parse(2, "empty element in set"));

        let err = parse_family("n=5 r=2\n1,2\n\n1,2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");

        let err = parse_family("n=5 r=2\n2,1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let err = parse_family("n=5 r=2\n1,2,3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let err = parse_family("n=5 r=2\n1,6\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let err = parse_family("# only comments\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        let err = parse_family("n=5 q=2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn ksubsets_of_sparse_mask_in_order() {
        // Subsets of {3,4,5} (mask 0b11100) of size 2.
        let mask = ElemSet::from_elems(&[3, 4, 5]).bits();
        let got: Vec<u64> = ksubsets_of_mask(mask, 2).collect();
        let expect = vec![
            ElemSet::from_elems(&[3, 4]).bits(),
            ElemSet::from_elems(&[3, 5]).bits(),
            ElemSet::from_elems(&[4, 5]).bits(),
        ];
        assert_eq!(got, expect);
        assert!(got.windows(2).all(|w| w[0] < w[1]));

        assert_eq!(ksubsets_of_mask(mask, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(ksubsets_of_mask(mask, 4).count(), 0);
    }
}
