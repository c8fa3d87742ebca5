use ideal_core::io::{load_instance_str, store_instance_string};
use ideal_core::*;
use proptest::prelude::*;

fn family_strategy(max_members: usize, atoms: usize) -> impl Strategy<Value = Vec<AtomSet>> {
    prop::collection::btree_set(1u128..(1u128 << atoms), 1..=max_members)
        .prop_map(|s| s.into_iter().map(AtomSet).collect())
}

/// Down-set sizes by enumerating every pair of members.
fn brute_down_counts(sets: &[AtomSet]) -> Vec<usize> {
    let mut out = vec![0; sets.len()];
    for (i, x) in sets.iter().enumerate() {
        for y in sets {
            if y.0 & !x.0 == 0 {
                out[i] += 1;
            }
        }
    }
    out
}

/// Longest strict chain ending at each member, by repeated relaxation.
fn brute_heights(sets: &[AtomSet]) -> Vec<usize> {
    let mut h = vec![0usize; sets.len()];
    for _ in 0..sets.len() {
        for b in 0..sets.len() {
            for a in 0..sets.len() {
                if sets[a] != sets[b] && sets[a].0 & !sets[b].0 == 0 {
                    h[b] = h[b].max(h[a] + 1);
                }
            }
        }
    }
    h
}

proptest! {
    #[test]
    fn ranks_are_heights(sets in family_strategy(10, 6)) {
        let fam = FamilySpec::from_bare(&sets);
        let r = rank_family(&fam).unwrap();
        for &(a, b) in &fam.strict_subset_edges {
            prop_assert!(r[a] < r[b]);
        }
        prop_assert_eq!(r, brute_heights(&sets));
    }

    #[test]
    fn local_smallness_matches_counting(sets in family_strategy(10, 6), bound in 1usize..8) {
        let fam = FamilySpec::from_bare(&sets);
        let res = locally_small_check(&fam, bound);
        let counts = brute_down_counts(&sets);
        prop_assert_eq!(&res.down_counts, &counts);
        prop_assert_eq!(res.ok, counts.iter().all(|&c| c <= bound));
    }

    #[test]
    fn join_realizes_union(gens in prop::collection::vec(1u128..(1 << 8), 2..6),
                           a in prop::collection::vec(0usize..6, 0..3),
                           b in prop::collection::vec(0usize..6, 0..3)) {
        let inst = IdealInstance::new(
            GroundSet::range(8),
            gens.iter().map(|&g| AtomSet(g)).collect(),
            6,
        );
        let a: Vec<usize> = a.into_iter().filter(|&i| i < gens.len()).collect();
        let b: Vec<usize> = b.into_iter().filter(|&i| i < gens.len()).collect();
        let u = inst.realize(&a).unwrap();
        let v = inst.realize(&b).unwrap();
        let w = u.join(&v);
        prop_assert!(w.stages.len() <= a.len() + b.len());
        prop_assert_eq!(w.realized, u.realized | v.realized);
        prop_assert_eq!(inst.realize(&w.stages).unwrap().realized, w.realized);
    }

    #[test]
    fn sigma_cover_is_sound(gens in prop::collection::vec(1u128..(1 << 8), 2..6), target in 0u128..(1 << 8), s in 1usize..4) {
        let inst = IdealInstance::new(GroundSet::range(8), gens.iter().map(|&g| AtomSet(g)).collect(), s);
        let t = AtomSet(target);
        match inst.in_sigma(t) {
            Some(cover) => {
                prop_assert!(cover.len() <= s);
                prop_assert!(t.is_subset(inst.realize(&cover).unwrap().realized));
            }
            None => {
                // no s-subset of generators covers the target
                let n = gens.len();
                for mask in 0u32..(1 << n) {
                    if (mask.count_ones() as usize) <= s {
                        let u = (0..n).filter(|i| mask >> i & 1 == 1).fold(0u128, |acc, i| acc | gens[i]);
                        prop_assert!(target & !u != 0);
                    }
                }
            }
        }
    }
}

#[test]
fn instance_document_roundtrip() {
    let doc = r#"{"sigma_stage_bound":2,"generators":[[0],[1],[2]],"ground":[0,1,2]}"#;
    let inst = load_instance_str(doc).unwrap();
    assert!(validate_instance(&inst).is_valid());
    let canon = store_instance_string(&inst);
    assert_eq!(
        canon,
        "{\"generators\":[[0],[1],[2]],\"ground\":[0,1,2],\"sigma_stage_bound\":2}\n"
    );
    assert_eq!(
        store_instance_string(&load_instance_str(&canon).unwrap()),
        canon
    );
}
