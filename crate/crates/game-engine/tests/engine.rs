use game_engine::*;
use ideal_core::{AtomSet, GroundSet, IdealInstance};
use proptest::prelude::*;
use std::sync::atomic::{AtomicUsize, Ordering};

fn s(v: &[usize]) -> AtomSet {
    AtomSet::from_indices(v.iter().copied())
}

fn chain3() -> (Arena, Vec<AtomSet>) {
    let inst = IdealInstance::new(GroundSet::range(5), vec![s(&[0, 1, 2, 3]), s(&[4])], 2);
    let menu = vec![s(&[0]), s(&[0, 1]), s(&[0, 1, 2])];
    (Arena::new(GameKind::MgFamily, inst, menu.clone()), menu)
}

#[test]
fn copying_a_chain_wins() {
    let (arena, menu) = chain3();
    let cfg = PlayConfig {
        depth: 3,
        lag: 1,
        menu: menu.clone(),
    };
    let tr = run_play(&arena, &Scripted(menu.clone()), &CopyTactic, &cfg);
    assert_eq!(tr.verdict, PlayVerdict::Win);
    assert_eq!(tr.end, PlayEnd::Complete);
    assert!(recheck(&arena, &tr).is_ok());
    let tr = run_play(&arena, &Scripted(menu), &EmptyTactic, &cfg);
    assert_eq!(
        tr.verdict,
        PlayVerdict::Lose {
            uncovered: 0,
            move_index: 0
        }
    );
}

struct Drifting(AtomicUsize);

impl Tactic for Drifting {
    fn window(&self) -> usize {
        1
    }
    fn respond(&self, w: &[AtomSet], _: usize) -> Result<TwoMove, TacticError> {
        let calls = self.0.fetch_add(1, Ordering::SeqCst);
        Ok(TwoMove::plain(if calls.is_multiple_of(2) {
            w[0]
        } else {
            AtomSet::EMPTY
        }))
    }
    fn label(&self) -> String {
        "drifting".into()
    }
}

#[test]
fn impure_tactic_is_flagged() {
    let (arena, menu) = chain3();
    let cfg = PlayConfig {
        depth: 3,
        lag: 1,
        menu: menu.clone(),
    };
    let tr = run_play(&arena, &MenuOrder, &Drifting(AtomicUsize::new(0)), &cfg);
    assert!(tr.purity_violation.is_some());
    assert_eq!(
        run_play(&arena, &MenuOrder, &CopyTactic, &cfg).purity_violation,
        None
    );
}

#[test]
fn verify_examples() {
    let (arena, menu) = chain3();
    let cfg = VerifyConfig::new(3, 1, menu.clone());
    assert!(verify_tactic(&arena, &CopyTactic, &cfg).unwrap().all_wins());
    let r = verify_tactic(&arena, &EmptyTactic, &cfg).unwrap();
    let Verdict::Defeat(tr) = r.verdict else {
        panic!()
    };
    assert_eq!(tr.ones(), menu);
    assert!(recheck(&arena, &tr).is_ok());
    let mut tight = cfg.clone();
    tight.budget = 2;
    assert_eq!(
        verify_tactic(&arena, &CopyTactic, &tight),
        Err(VerifyError::Budget(2))
    );
    assert_eq!(
        verify_tactic(&arena, &CopyTactic, &VerifyConfig::new(4, 1, menu)),
        Err(VerifyError::NotExtendable { depth: 4 })
    );
}

#[test]
fn illegal_two_move_is_a_fault() {
    let (arena, menu) = chain3();
    let grab_all = FnTactic::new(1, "all", |_, _| Ok(TwoMove::plain(AtomSet::prefix(5))));
    let r = verify_tactic(&arena, &grab_all, &VerifyConfig::new(3, 1, menu)).unwrap();
    let Verdict::Defeat(tr) = r.verdict else {
        panic!()
    };
    assert_eq!(
        tr.verdict,
        PlayVerdict::Fault {
            player: Player::Two,
            inning: 1
        }
    );
}

#[test]
fn transcript_lines() {
    let (arena, menu) = chain3();
    let cfg = PlayConfig {
        depth: 3,
        lag: 1,
        menu: menu.clone(),
    };
    let tr = run_play(&arena, &Scripted(menu), &CopyTactic, &cfg);
    let text = tr.to_json_lines();
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

/// Random instance: ground of 6 atoms, a few generators, a menu of sets
/// inside the completion.
fn arena_and_menu() -> impl Strategy<Value = (GameKind, IdealInstance, Vec<AtomSet>)> {
    (
        prop::sample::select(vec![GameKind::MgFamily, GameKind::Smg, GameKind::Vsg]),
        prop::collection::vec(1u8..63, 2..4),
        prop::collection::vec(0u8..64, 3..8),
    )
        .prop_map(|(kind, gens, raw)| {
            let gens: Vec<AtomSet> = gens.iter().map(|&g| AtomSet(g as u128)).collect();
            let inst = IdealInstance::new(GroundSet::range(6), gens, 2);
            let mut menu: Vec<AtomSet> = Vec::new();
            for r in raw {
                let m = AtomSet(r as u128);
                if inst.in_sigma(m).is_some() && !menu.contains(&m) {
                    menu.push(m);
                }
            }
            (kind, inst, menu)
        })
}

fn tactic_from(seed: u64) -> FnTactic {
    FnTactic::new(2, format!("hash{seed}"), move |w, _| {
        let mut h = seed;
        for x in w {
            h = h.wrapping_mul(6364136223846793005).wrapping_add(x.0 as u64);
        }
        // a sub-move of the latest window entry
        Ok(TwoMove::plain(AtomSet(
            w.last().unwrap().0 & (h as u128 | (h >> 7) as u128),
        )))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn verification_invariants((kind, inst, menu) in arena_and_menu(), seed in any::<u64>(), lag in 0usize..3) {
        prop_assume!(!menu.is_empty());
        let family = menu.clone();
        let arena = Arena::new(kind, inst, family);
        let depth = 3;
        let cfg = VerifyConfig::new(depth, lag, menu.clone());
        let tactic = tactic_from(seed);
        let Ok(base) = verify_tactic(&arena, &tactic, &cfg) else { return Ok(()) };
        // parallel search reports the same thing
        let mut par = cfg.clone();
        par.jobs = 3;
        prop_assert_eq!(&verify_tactic(&arena, &tactic, &par).unwrap(), &base);
        // menu order changes only which defeat is reported
        let mut rev = cfg.clone();
        rev.menu.reverse();
        prop_assert_eq!(verify_tactic(&arena, &tactic, &rev).unwrap().all_wins(), base.all_wins());
        // a larger lag never turns a win into a loss
        let mut lax = cfg.clone();
        lax.lag = lag + 1;
        if base.all_wins() {
            prop_assert!(verify_tactic(&arena, &tactic, &lax).unwrap().all_wins());
        }
        if let Verdict::Defeat(tr) = &base.verdict {
            prop_assert!(recheck(&arena, tr).is_ok());
            prop_assert_eq!(tr.purity_violation, None);
            // replaying ONE's moves reproduces the transcript
            let again = run_play(&arena, &Scripted(tr.ones()), &tactic, &PlayConfig { depth, lag, menu: menu.clone() });
            prop_assert_eq!(&again.innings, &tr.innings);
        }
    }

    #[test]
    fn random_plays_recheck((kind, inst, menu) in arena_and_menu(), seed in any::<u64>()) {
        prop_assume!(!menu.is_empty());
        let arena = Arena::new(kind, inst, menu.clone());
        let cfg = PlayConfig { depth: 4, lag: 1, menu };
        let tr = run_play(&arena, &SeededRandom(seed), &tactic_from(seed), &cfg);
        prop_assert!(recheck(&arena, &tr).is_ok());
        let again = run_play(&arena, &SeededRandom(seed), &tactic_from(seed), &cfg);
        prop_assert_eq!(tr, again);
    }
}
