//! Property tests pitting the bitmask implementations against independent
//! element-list oracles, plus the structural invariants of the compression
//! calculus and the constructions.

use proptest::prelude::*;

use kneserlab::constructions::{pair_partition, star_partition, SplitRule};
use kneserlab::kneser::are_adjacent;
use kneserlab::setfam::{
    are_cross_intersecting, are_disjoint, compress_family, compress_set, enumerate_rsets,
    is_intersecting, make_params, parse_family, write_family, CompressionOp, Family, RSet,
};

// ---------------------------------------------------------------------------
// Oracles on element lists, no bitmask shortcuts
// ---------------------------------------------------------------------------

fn inter_size(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|e| b.contains(e)).count()
}

fn brute_intersecting(members: &[Vec<u32>]) -> bool {
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if inter_size(a, b) == 0 {
                return false;
            }
        }
    }
    true
}

fn brute_cross(f: &[Vec<u32>], g: &[Vec<u32>], t: usize) -> bool {
    f.iter().all(|a| g.iter().all(|b| inter_size(a, b) >= t))
}

fn brute_disjoint_families(f: &[Vec<u32>], g: &[Vec<u32>]) -> bool {
    f.iter().all(|a| g.iter().all(|b| a != b))
}

fn brute_shift(i: u32, j: u32, a: &[u32]) -> Vec<u32> {
    if a.contains(&j) && !a.contains(&i) {
        let mut out: Vec<u32> = a.iter().copied().filter(|&e| e != j).collect();
        out.push(i);
        out.sort_unstable();
        out
    } else {
        a.to_vec()
    }
}

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

/// (n, r, family member masks) with n <= 8 and members drawn from C([n], r).
fn family_scenario() -> impl Strategy<Value = (u32, u32, Vec<u64>, Vec<u64>)> {
    (2u32..=8)
        .prop_flat_map(|n| (Just(n), 1..=n.saturating_sub(1).max(1)))
        .prop_flat_map(|(n, r)| {
            let all: Vec<u64> = kneserlab::setfam::ksubsets_of_mask((1u64 << n) - 1, r).collect();
            let total = all.len();
            let picks = prop::collection::vec(0..total, 0..=total.min(12));
            let picks2 = prop::collection::vec(0..total, 0..=total.min(12));
            (Just(n), Just(r), Just(all), picks, picks2).prop_map(|(n, r, all, p1, p2)| {
                let f: Vec<u64> = p1.into_iter().map(|i| all[i]).collect();
                let g: Vec<u64> = p2.into_iter().map(|i| all[i]).collect();
                (n, r, f, g)
            })
        })
}

proptest! {
    #[test]
    fn predicates_match_the_element_list_oracles((n, r, f_masks, g_masks) in family_scenario()) {
        let f = Family::from_masks(n, r, f_masks.clone()).unwrap();
        let g = Family::from_masks(n, r, g_masks.clone()).unwrap();
        let f_elems: Vec<Vec<u32>> = f.members().map(|s| s.elems()).collect();
        let g_elems: Vec<Vec<u32>> = g.members().map(|s| s.elems()).collect();

        prop_assert_eq!(is_intersecting(&f), brute_intersecting(&f_elems));
        for t in 1..=r {
            prop_assert_eq!(
                are_cross_intersecting(&f, &g, t).unwrap(),
                brute_cross(&f_elems, &g_elems, t as usize)
            );
        }
        prop_assert_eq!(
            are_disjoint(&f, &g).unwrap(),
            brute_disjoint_families(&f_elems, &g_elems)
        );
    }

    #[test]
    fn cross_intersecting_at_t1_is_no_adjacent_pair((n, r, f_masks, g_masks) in family_scenario()) {
        let f = Family::from_masks(n, r, f_masks).unwrap();
        let g = Family::from_masks(n, r, g_masks).unwrap();
        let no_adjacent = f
            .members()
            .all(|a| g.members().all(|b| !are_adjacent(a, b)));
        prop_assert_eq!(are_cross_intersecting(&f, &g, 1).unwrap(), no_adjacent);
    }

    #[test]
    fn compression_preserves_popcount_and_family_size(
        (n, r, f_masks, _) in family_scenario(),
        i in 1u32..=8,
        j in 1u32..=8,
    ) {
        prop_assume!(i != j && i <= n && j <= n);
        let op = CompressionOp::new(i, j, n).unwrap();
        let f = Family::from_masks(n, r, f_masks).unwrap();
        for s in f.members() {
            let shifted = compress_set(op, s);
            prop_assert_eq!(shifted.size(), s.size());
            prop_assert_eq!(shifted.elems(), brute_shift(i, j, &s.elems()));
        }
        prop_assert_eq!(compress_family(op, &f).len(), f.len());
    }

    #[test]
    fn complement_is_an_involution(mask in 0u64..(1 << 10)) {
        let s = RSet::from_bits(10, mask).unwrap();
        let c = s.complement_in(10).unwrap();
        prop_assert_eq!(c.size(), 10 - s.size());
        prop_assert_eq!(c.complement_in(10).unwrap(), s);
        for e in 1..=10 {
            prop_assert_eq!(c.contains(e), !s.contains(e));
        }
    }

    #[test]
    fn text_format_round_trips((n, r, f_masks, _) in family_scenario()) {
        let f = Family::from_masks(n, r, f_masks).unwrap();
        prop_assert_eq!(parse_family(&write_family(&f)).unwrap(), f);
    }

    #[test]
    fn enumeration_is_sorted_and_complete(n in 2u32..=9, r in 1u32..=4) {
        prop_assume!(r <= n);
        let params = make_params(n.max(2 * r), r).unwrap();
        let masks: Vec<u64> = enumerate_rsets(&params, 1 << 20).unwrap().map(|s| s.bits()).collect();
        prop_assert_eq!(masks.len() as u64, params.binom_n_r());
        prop_assert!(masks.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(masks.iter().all(|m| m.count_ones() == r));
    }

    #[test]
    fn star_partitions_always_satisfy_the_pair_contract(
        n in 4u32..=9,
        r in 2u32..=4,
        center in 1u32..=9,
        rule_idx in 0usize..3,
    ) {
        prop_assume!(2 * r <= n && center <= n);
        let params = make_params(n, r).unwrap();
        let rule = [SplitRule::FirstHalf, SplitRule::Alternating, SplitRule::SingletonVsRest][rule_idx];
        let pair = star_partition(&params, center, rule).unwrap();
        pair.validate().unwrap();
        prop_assert_eq!(pair.sum(), kneserlab::binomial((n - 1) as u64, (r - 1) as u64));
        // Every member contains the center.
        for s in pair.a.members().chain(pair.b.members()) {
            prop_assert!(s.contains(center));
        }
    }

    #[test]
    fn pair_partitions_always_satisfy_the_pair_contract(
        r in 2u32..=4,
        picks in prop::collection::vec(any::<bool>(), 35),
    ) {
        let k = kneserlab::binomial((2 * r - 1) as u64, r as u64);
        let selected: Vec<u64> = (1..=k).filter(|&i| picks[(i - 1) as usize]).collect();
        prop_assume!(!selected.is_empty() && (selected.len() as u64) < k);
        let pair = pair_partition(r, &selected).unwrap();
        pair.validate().unwrap();
        prop_assert_eq!(pair.sum(), kneserlab::binomial(2 * r as u64, r as u64));
    }
}
