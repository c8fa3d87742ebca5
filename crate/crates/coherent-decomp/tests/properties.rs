use coherent_decomp::{
    decompose_bounded, decompose_locally_small, verify_coherence, Coherence, Decomposition,
    SizeLadder,
};
use ideal_core::{AtomSet, FamilySpec};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = FamilySpec> {
    (1usize..=16).prop_flat_map(|ground| {
        let mask = if ground == 16 {
            u16::MAX
        } else {
            (1u16 << ground) - 1
        };
        prop::collection::vec((1u16..=u16::MAX).prop_map(move |m| m & mask), 1..=10).prop_map(
            |masks| {
                let mut sets: Vec<AtomSet> = masks
                    .into_iter()
                    .filter(|&m| m != 0)
                    .map(|m| AtomSet::from_indices((0..16).filter(|i| m >> i & 1 == 1)))
                    .collect();
                sets.dedup();
                let mut seen = Vec::new();
                sets.retain(|s| {
                    if seen.contains(s) {
                        false
                    } else {
                        seen.push(*s);
                        true
                    }
                });
                if sets.is_empty() {
                    sets.push(AtomSet::from_indices([0]));
                }
                FamilySpec::from_bare(&sets)
            },
        )
    })
}

/// Independent threshold: scan every stage pair directly.
fn naive_threshold(dec: &Decomposition, a: usize, b: usize) -> Option<usize> {
    let n = dec.stage_count;
    (0..n).find(|&m| (m..n).all(|k| dec.stages[a][k].is_subset(dec.stages[b][k])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn locally_small_decompositions_cohere(fam in family(), stages in 1usize..=8) {
        let dec = decompose_locally_small(&fam, stages, Some(fam.len())).unwrap();
        prop_assert!(dec.structural_errors(&fam).is_empty());
        for c in verify_coherence(&fam, &dec) {
            let Coherence::Threshold { m } = c.outcome else {
                return Err(TestCaseError::fail(format!("{c:?}")));
            };
            prop_assert_eq!(Some(m), naive_threshold(&dec, c.lower, c.upper));
        }
        // determinism at the byte level
        let again = decompose_locally_small(&fam, stages, None).unwrap();
        prop_assert_eq!(serde_json::to_string(&dec).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn bounded_decompositions_respect_ladder(fam in family(), base in 1usize..=3) {
        let top = (0..fam.len()).map(|i| fam.set(i).len()).max().unwrap();
        let mut bounds = vec![base];
        while *bounds.last().unwrap() < top {
            let next = bounds.last().unwrap() * 2;
            bounds.push(next);
        }
        if bounds.len() == 1 {
            bounds.push(base + 1);
        }
        let dec = decompose_bounded(&fam, &SizeLadder { bounds: bounds.clone() }).unwrap();
        prop_assert!(dec.structural_errors(&fam).is_empty());
        for st in &dec.stages {
            for (n, s) in st.iter().enumerate() {
                prop_assert!(s.len() <= bounds[n]);
            }
        }
        for c in verify_coherence(&fam, &dec) {
            let ok = matches!(c.outcome, Coherence::Threshold { .. });
            prop_assert!(ok);
        }
    }

    #[test]
    fn corrupting_a_final_stage_is_caught(fam in family()) {
        let mut dec = decompose_locally_small(&fam, 4, None).unwrap();
        let pairs = verify_coherence(&fam, &dec);
        if let Some(p) = pairs.first() {
            let lower = fam.set(p.lower);
            let drop = lower.first().unwrap();
            let upper = fam.set(p.upper).minus(AtomSet::from_indices([drop]));
            dec.stages[p.upper][3] = upper;
            let v = verify_coherence(&fam, &dec);
            let hit = v.iter().any(|c| c.lower == p.lower && c.upper == p.upper
                && c.outcome == Coherence::Failure { n: 3, element: drop });
            prop_assert!(hit);
        }
    }
}
