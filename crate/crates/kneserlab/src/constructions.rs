//! Explicit disjoint cross-intersecting family pairs: star partitions, the
//! two-marked-elements pair that is near-extremal for large r, and the
//! complement-pair partitions that exhaust equality at `n = 2r`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::setfam::{
    are_cross_intersecting, are_disjoint, full_mask, ksubsets_of_mask, Family, RSet,
    UniverseParams,
};

/// A pair of families produced by one of the constructions, with provenance.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyPair {
    pub a: Family,
    pub b: Family,
    pub meta: PairMeta,
}

/// Construction name and parameter string for reports and file headers.
#[derive(Clone, Debug, Serialize)]
pub struct PairMeta {
    pub construction: String,
    pub params: String,
}

impl FamilyPair {
    /// Checks the defining contract: same context, both nonempty, disjoint,
    /// and cross-intersecting.
    pub fn validate(&self) -> Result<()> {
        if self.a.is_empty() || self.b.is_empty() {
            return Err(Error::domain("family pair must have both sides nonempty"));
        }
        if !are_disjoint(&self.a, &self.b)? {
            return Err(Error::domain("family pair sides are not disjoint"));
        }
        if !are_cross_intersecting(&self.a, &self.b, 1)? {
            return Err(Error::domain("family pair sides are not cross-intersecting"));
        }
        Ok(())
    }

    pub fn sum(&self) -> u64 {
        (self.a.len() + self.b.len()) as u64
    }
}

// ---------------------------------------------------------------------------
// Star partitions
// ---------------------------------------------------------------------------

/// How to split the star at `center` into the two sides.
#[derive(Copy, Clone)]
pub enum SplitRule<'a> {
    /// First `floor(|S|/2)` members (canonical order) to side a.
    FirstHalf,
    /// Even positions to side a, odd to side b.
    Alternating,
    /// Only the canonically first member to side a.
    SingletonVsRest,
    /// Caller-supplied predicate on `(position, member)`; `true` puts the
    /// member in side a.
    Custom(&'a dyn Fn(usize, RSet) -> bool),
}

impl SplitRule<'_> {
    fn name(&self) -> &'static str {
        match self {
            SplitRule::FirstHalf => "first-half",
            SplitRule::Alternating => "alternating",
            SplitRule::SingletonVsRest => "singleton-vs-rest",
            SplitRule::Custom(_) => "custom",
        }
    }
}

impl FromStr for SplitRule<'static> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-half" => Ok(SplitRule::FirstHalf),
            "alternating" => Ok(SplitRule::Alternating),
            "singleton-vs-rest" => Ok(SplitRule::SingletonVsRest),
            other => Err(Error::domain(format!(
                "unknown split rule '{other}' (expected first-half, alternating, or singleton-vs-rest)"
            ))),
        }
    }
}

/// Splits the full star `{S : center ∈ S}` into two nonempty families.
///
/// Any split works: all members share `center`, so the sides are
/// automatically cross-intersecting, and a partition is disjoint by
/// construction. `|a| + |b| = C(n-1, r-1)`.
pub fn star_partition(
    params: &UniverseParams,
    center: u32,
    rule: SplitRule<'_>,
) -> Result<FamilyPair> {
    if center < 1 || center > params.n {
        return Err(Error::domain(format!(
            "star center {center} outside the universe [{}]",
            params.n
        )));
    }
    let center_bit = 1u64 << (center - 1);
    let rest = params.full_mask() & !center_bit;
    let star: Vec<u64> = ksubsets_of_mask(rest, params.r - 1)
        .map(|sub| sub | center_bit)
        .collect();
    debug_assert_eq!(
        star.len() as u64,
        binomial((params.n - 1) as u64, (params.r - 1) as u64)
    );

    let mut a_masks = Vec::new();
    let mut b_masks = Vec::new();
    for (idx, &mask) in star.iter().enumerate() {
        let to_a = match rule {
            SplitRule::FirstHalf => idx < star.len() / 2,
            SplitRule::Alternating => idx % 2 == 0,
            SplitRule::SingletonVsRest => idx == 0,
            SplitRule::Custom(f) => f(idx, RSet::from_bits(params.n, mask)?),
        };
        if to_a {
            a_masks.push(mask);
        } else {
            b_masks.push(mask);
        }
    }
    if a_masks.is_empty() || b_masks.is_empty() {
        return Err(Error::domain(format!(
            "split rule '{}' leaves one side of the star empty",
            rule.name()
        )));
    }

    Ok(FamilyPair {
        a: Family::from_masks(params.n, params.r, a_masks)?,
        b: Family::from_masks(params.n, params.r, b_masks)?,
        meta: PairMeta {
            construction: "star_partition".into(),
            params: format!(
                "n={} r={} center={center} rule={}",
                params.n,
                params.r,
                rule.name()
            ),
        },
    })
}

// ---------------------------------------------------------------------------
// The large-r pair
// ---------------------------------------------------------------------------

/// The two-marked-elements pair:
///
/// - side a is `X ∪ X^c` where `X = {A ⊆ [2r] : |A| = r, 1 ∈ A, 2 ∉ A}` and
///   `X^c` holds the complements of `X` inside `[2r]`;
/// - side b is `B1 ∪ B2` with `B1 = {B ⊆ [2r] : 1, 2 ∉ B}` over `[2r]` and
///   `B2 = {B ⊆ [n] : 1, 2 ∈ B}` over the whole universe.
///
/// Sizes: `|a| = 2*C(2r-2, r-1)` and `|b| = C(2r-2, r) + C(n-2, r-2)`.
pub fn large_r_pair(params: &UniverseParams) -> Result<FamilyPair> {
    if params.r < 2 {
        return Err(Error::domain(
            "the two-marked-elements pair requires r >= 2",
        ));
    }
    let (n, r) = (params.n, params.r);
    let one = 1u64 << 0;
    let two = 1u64 << 1;
    let inner = full_mask(2 * r);

    let x: Vec<u64> = ksubsets_of_mask(inner & !(one | two), r - 1)
        .map(|sub| sub | one)
        .collect();
    let xc: Vec<u64> = x.iter().map(|&m| inner & !m).collect();
    let b1 = ksubsets_of_mask(inner & !(one | two), r);
    let b2 = ksubsets_of_mask(full_mask(n) & !(one | two), r - 2).map(|sub| sub | one | two);

    let a = Family::from_masks(n, r, x.into_iter().chain(xc))?;
    let b = Family::from_masks(n, r, b1.chain(b2))?;
    debug_assert_eq!(
        a.len() as u64,
        2 * binomial((2 * r - 2) as u64, (r - 1) as u64)
    );
    debug_assert_eq!(
        b.len() as u64,
        binomial((2 * r - 2) as u64, r as u64) + binomial((n - 2) as u64, (r - 2) as u64)
    );

    Ok(FamilyPair {
        a,
        b,
        meta: PairMeta {
            construction: "large_r_pair".into(),
            params: format!("n={n} r={r}"),
        },
    })
}

// ---------------------------------------------------------------------------
// Complement-pair partitions at n = 2r
// ---------------------------------------------------------------------------

/// Splits `C([2r], r)` along complement pairs: part `i` is
/// `{X_i, [2r] \ X_i}` with `X_i` the i-th canonical r-subset of `[2r-1]`
/// (1-based). Side a takes the selected parts, side b the rest; the sum is
/// always `C(2r, r)`.
pub fn pair_partition(r: u32, selected_parts: &[u64]) -> Result<FamilyPair> {
    if r < 1 {
        return Err(Error::domain("requires r >= 1"));
    }
    let n = 2 * r;
    if n > crate::MAX_UNIVERSE {
        return Err(Error::domain(format!(
            "universe size {n} out of range 1..={}",
            crate::MAX_UNIVERSE
        )));
    }
    let k = binomial((2 * r - 1) as u64, r as u64);

    let mut selection: Vec<u64> = selected_parts.to_vec();
    selection.sort_unstable();
    selection.dedup();
    for &i in &selection {
        if i < 1 || i > k {
            return Err(Error::domain(format!(
                "part index {i} outside 1..={k}"
            )));
        }
    }
    if selection.is_empty() || selection.len() as u64 == k {
        return Err(Error::domain(format!(
            "selection must be a nonempty proper subset of the {k} parts"
        )));
    }

    let inner = full_mask(n);
    let mut a_masks = Vec::new();
    let mut b_masks = Vec::new();
    for (idx, x) in ksubsets_of_mask(full_mask(n - 1), r).enumerate() {
        let part_no = idx as u64 + 1;
        let target = if selection.binary_search(&part_no).is_ok() {
            &mut a_masks
        } else {
            &mut b_masks
        };
        target.push(x);
        target.push(inner & !x);
    }

    let selection_str: Vec<String> = selection.iter().map(u64::to_string).collect();
    Ok(FamilyPair {
        a: Family::from_masks(n, r, a_masks)?,
        b: Family::from_masks(n, r, b_masks)?,
        meta: PairMeta {
            construction: "pair_partition".into(),
            params: format!("r={r} parts={}", selection_str.join(",")),
        },
    })
}

// ---------------------------------------------------------------------------
// Expected sizes
// ---------------------------------------------------------------------------

/// The three constructions, for size lookups and CLI dispatch.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    StarPartition,
    LargeRPair,
    PairPartition,
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star_partition" => Ok(ConstructionKind::StarPartition),
            "large_r_pair" => Ok(ConstructionKind::LargeRPair),
            "pair_partition" => Ok(ConstructionKind::PairPartition),
            other => Err(Error::domain(format!(
                "unknown construction '{other}' (expected star_partition, large_r_pair, or pair_partition)"
            ))),
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ConstructionKind::StarPartition => "star_partition",
            ConstructionKind::LargeRPair => "large_r_pair",
            ConstructionKind::PairPartition => "pair_partition",
        };
        write!(f, "{name}")
    }
}

/// Closed-form sizes for cross-checking materialised families. Sides are
/// `None` where the construction leaves them rule-dependent.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeRecord {
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub total: u64,
}

/// The closed-form sizes of a construction at the given parameters.
pub fn expected_sizes(params: &UniverseParams, construction: ConstructionKind) -> SizeRecord {
    let (n, r, l) = (params.n as u64, params.r as u64, params.l as u64);
    match construction {
        ConstructionKind::StarPartition => SizeRecord {
            a: None,
            b: None,
            total: binomial(n - 1, r - 1),
        },
        ConstructionKind::LargeRPair => {
            let a = 2 * binomial(2 * r - 2, r - 1);
            let b = binomial(2 * r - 2, r) + binomial(n - 2, r - 2);
            SizeRecord {
                a: Some(a),
                b: Some(b),
                total: binomial(n - l - 1, r) + binomial(n - l - 2, r - 1) + binomial(n - 2, r - 2),
            }
        }
        ConstructionKind::PairPartition => SizeRecord {
            a: None,
            b: None,
            total: binomial(2 * r, r),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfam::make_params;

    fn rset(n: u32, elems: &[u32]) -> RSet {
        RSet::from_elems(n, elems).unwrap()
    }

    fn family(n: u32, r: u32, sets: &[&[u32]]) -> Family {
        Family::new(n, r, sets.iter().map(|s| rset(n, s))).unwrap()
    }

    #[test]
    fn star_partition_sizes_and_contract() {
        let p = make_params(6, 2).unwrap();
        let pair = star_partition(&p, 1, SplitRule::FirstHalf).unwrap();
        assert_eq!(pair.sum(), 5);
        pair.validate().unwrap();

        let p = make_params(5, 2).unwrap();
        let pair = star_partition(&p, 3, SplitRule::Alternating).unwrap();
        assert_eq!(pair.sum(), 4);
        pair.validate().unwrap();

        let p = make_params(4, 2).unwrap();
        let pair = star_partition(&p, 1, SplitRule::SingletonVsRest).unwrap();
        assert_eq!(pair.a, family(4, 2, &[&[1, 2]]));
        assert_eq!(pair.b, family(4, 2, &[&[1, 3], &[1, 4]]));
        assert_eq!(pair.sum(), 3);
    }

    #[test]
    fn star_partition_rejects_degenerate_splits() {
        let p = make_params(6, 2).unwrap();
        assert!(star_partition(&p, 7, SplitRule::FirstHalf).is_err());
        let all_to_a = |_: usize, _: RSet| true;
        assert!(matches!(
            star_partition(&p, 1, SplitRule::Custom(&all_to_a)),
            Err(Error::Domain(_))
        ));
        // A star with a single member cannot be split.
        let p = make_params(2, 1).unwrap();
        assert!(star_partition(&p, 1, SplitRule::FirstHalf).is_err());
    }

    #[test]
    fn star_partition_custom_rule() {
        let p = make_params(6, 2).unwrap();
        let contains_two = |_: usize, s: RSet| s.contains(2);
        let pair = star_partition(&p, 1, SplitRule::Custom(&contains_two)).unwrap();
        assert_eq!(pair.a, family(6, 2, &[&[1, 2]]));
        assert_eq!(pair.sum(), 5);
        pair.validate().unwrap();
    }

    #[test]
    fn large_r_pair_8_3() {
        let p = make_params(8, 3).unwrap();
        let pair = large_r_pair(&p).unwrap();
        assert_eq!(pair.a.len(), 12);
        assert_eq!(pair.b.len(), 10);
        pair.validate().unwrap();
        let sizes = expected_sizes(&p, ConstructionKind::LargeRPair);
        assert_eq!(sizes, SizeRecord { a: Some(12), b: Some(10), total: 22 });
    }

    #[test]
    fn large_r_pair_6_2_exact_members() {
        let p = make_params(6, 2).unwrap();
        let pair = large_r_pair(&p).unwrap();
        assert_eq!(
            pair.a,
            family(6, 2, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]])
        );
        assert_eq!(pair.b, family(6, 2, &[&[1, 2], &[3, 4]]));
        pair.validate().unwrap();
        assert_eq!(pair.sum(), 6);
        // All 4 x 2 cross pairs share an element, checked on element lists.
        for a in pair.a.members() {
            for b in pair.b.members() {
                let shared = a.elems().iter().any(|e| b.elems().contains(e));
                assert!(shared, "{a} and {b} are disjoint");
            }
        }
        assert!(are_cross_intersecting(&pair.a, &pair.b, 1).unwrap());
    }

    #[test]
    fn large_r_pair_degenerates_to_equality_at_n_2r() {
        let p = make_params(6, 3).unwrap();
        let pair = large_r_pair(&p).unwrap();
        assert_eq!(pair.a.len(), 12);
        assert_eq!(pair.b.len(), 8);
        assert_eq!(pair.sum(), binomial(6, 3));
        pair.validate().unwrap();

        assert!(large_r_pair(&make_params(4, 1).unwrap()).is_err());
    }

    #[test]
    fn pair_partition_examples() {
        let pair = pair_partition(2, &[1]).unwrap();
        assert_eq!(pair.a, family(4, 2, &[&[1, 2], &[3, 4]]));
        assert_eq!(
            pair.b,
            family(4, 2, &[&[1, 3], &[2, 4], &[1, 4], &[2, 3]])
        );
        assert_eq!(pair.sum(), 6);
        pair.validate().unwrap();

        let pair = pair_partition(2, &[1, 2]).unwrap();
        assert_eq!(pair.sum(), 6);
        pair.validate().unwrap();

        let pair = pair_partition(3, &[4]).unwrap();
        assert_eq!((pair.a.len(), pair.b.len()), (2, 18));
        assert_eq!(pair.sum(), 20);
        pair.validate().unwrap();
    }

    #[test]
    fn pair_partition_rejects_bad_selections() {
        assert!(pair_partition(2, &[]).is_err());
        assert!(pair_partition(2, &[1, 2, 3]).is_err());
        assert!(pair_partition(2, &[4]).is_err());
        // r = 1 has a single part; no proper nonempty selection exists.
        assert!(pair_partition(1, &[1]).is_err());
    }

    #[test]
    fn expected_sizes_examples() {
        let p = make_params(8, 3).unwrap();
        let sizes = expected_sizes(&p, ConstructionKind::LargeRPair);
        assert_eq!(sizes.total, 22);
        assert_eq!(sizes.total, binomial(5, 3) + binomial(4, 2) + binomial(6, 1));

        let p = make_params(6, 2).unwrap();
        assert_eq!(
            expected_sizes(&p, ConstructionKind::StarPartition).total,
            5
        );
        let p = make_params(4, 2).unwrap();
        assert_eq!(
            expected_sizes(&p, ConstructionKind::PairPartition).total,
            6
        );
    }

    #[test]
    fn size_identity_holds_across_the_grid() {
        // 2*C(2r-2, r-1) + C(2r-2, r) + C(n-2, r-2) telescopes into the
        // three-binomial total.
        for r in 2..=6u32 {
            for l in 0..=4u32 {
                let p = make_params(2 * r + l, r).unwrap();
                let s = expected_sizes(&p, ConstructionKind::LargeRPair);
                assert_eq!(s.a.unwrap() + s.b.unwrap(), s.total, "r={r} l={l}");
            }
        }
    }
}
