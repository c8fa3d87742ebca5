use game_engine::{
    recheck, verify_tactic, Arena, GameKind, Tactic, TwoMove, Verdict, VerifyConfig,
};
use ideal_core::AtomSet;
use path_partition::Palette;
use std::sync::Arc;
use tactic_lab::fixtures::{stacked_fixture, MgFixture};
use tactic_lab::*;

fn base(fx: &MgFixture) -> Arc<dyn Tactic> {
    let check = PathCheck::new(6, Palette::Count(1));
    Arc::new(build_mg_tactic(&fx.family, &fx.decomposition, &fx.coloring, 2, Some(check)).unwrap())
}

fn verify(
    kind: GameKind,
    fx: &MgFixture,
    menu: &[AtomSet],
    t: &dyn Tactic,
) -> game_engine::VerifyReport {
    let arena = Arena::new(kind, fx.instance.clone(), menu.to_vec());
    let rep = verify_tactic(
        &arena,
        t,
        &VerifyConfig {
            jobs: 4,
            ..VerifyConfig::new(6, 3, menu.to_vec())
        },
    )
    .unwrap();
    if let Verdict::Defeat(tr) = &rep.verdict {
        recheck(&arena, tr).unwrap();
    }
    rep
}

#[test]
fn strong_and_very_strong_builders_win() {
    for seed in [0, 3] {
        let fx = stacked_fixture(seed, 6);
        let menu = fx.menu();
        let maps = build_phi_maps(&fx.family);
        maps.validate(&menu).unwrap();
        let smg = build_smg_two_tactic(base(&fx), maps).unwrap();
        let rep = verify(GameKind::Smg, &fx, &menu, &smg);
        assert!(
            rep.all_wins() && rep.stats.full_depth > 0,
            "smg seed {seed}"
        );
        let vsg = build_vsg_two_tactic(base(&fx), &fx.family).unwrap();
        let rep = verify(GameKind::Vsg, &fx, &menu, &vsg);
        assert!(
            rep.all_wins() && rep.stats.full_depth > 0,
            "vsg seed {seed}"
        );
    }
}

#[test]
fn smg_answers_by_hand() {
    let chain: Vec<AtomSet> = (1..=4).map(|n| AtomSet::from_indices(0..n)).collect();
    let fam = ideal_core::FamilySpec::from_bare(&chain);
    let maps = build_phi_maps(&fam);
    let copy: Arc<dyn Tactic> = Arc::new(game_engine::CopyTactic);
    let t = build_smg_two_tactic(copy, maps.clone()).unwrap();
    let x = AtomSet::EMPTY;
    let a1 = maps.phi2(x).unwrap();
    assert_eq!(a1, chain[0]);
    // copy answers the one-step ladder with its rung
    let expect = a1 | maps.phi1(x).unwrap() | maps.phi1(a1).unwrap();
    assert_eq!(t.respond(&[x], 1).unwrap(), TwoMove::plain(expect));
    // linked ladders: only the new rung and the new Φ₁ values are added
    let y = chain[0];
    let b1 = maps.phi2(y).unwrap();
    let linked = b1 | maps.phi1(y).unwrap() | maps.phi1(b1).unwrap();
    assert_eq!(t.respond(&[x, y], 2).unwrap(), TwoMove::plain(linked));
    // unrelated windows answer as for the newest set alone
    assert_eq!(
        t.respond(&[chain[1], chain[0]], 2).unwrap(),
        t.respond(&[chain[0]], 1).unwrap()
    );
    let markov = game_engine::FnTactic::new(1, "m", |_, _| Ok(TwoMove::default())).markov();
    assert!(matches!(
        build_smg_two_tactic(Arc::new(markov), maps),
        Err(LabError::BadBase(1))
    ));
}

#[test]
fn vsg_cases() {
    let fx = stacked_fixture(1, 2);
    let menu = fx.menu();
    let t = build_vsg_two_tactic(base(&fx), &fx.family).unwrap();
    let m = Members::new(&fx.family);
    let step = |x: AtomSet| m.sets[m.least_above(x).unwrap()];
    let x = menu[0];
    let (a1, a2) = (step(x), step(step(x)));
    let psi = step(a2);
    let single = t.respond(&[x], 1).unwrap();
    let b = base(&fx);
    let f = b.respond(&[a1], 1).unwrap().t | b.respond(&[a1, a2], 2).unwrap().t;
    assert_eq!(single, TwoMove { t: f, s: psi });
    // Ψ(X) not inside Y: answer as for Y alone
    assert_eq!(
        t.respond(&[x, a1], 2).unwrap(),
        t.respond(&[a1], 1).unwrap()
    );
}

#[test]
fn round_trips_keep_winning() {
    for seed in 0..4 {
        let fx = stacked_fixture(seed, 6);
        let menu = fx.menu();
        let smg: Arc<dyn Tactic> =
            Arc::new(build_smg_two_tactic(base(&fx), build_phi_maps(&fx.family)).unwrap());
        let as_vsg = translate_smg_vsg(smg.clone(), Direction::SmgToVsg, None, &menu).unwrap();
        assert!(verify(GameKind::Vsg, &fx, &menu, as_vsg.as_ref()).all_wins());
        let chain = absorbing_chain(as_vsg.as_ref(), &fx.family, menu[0]);
        assert!(matches!(
            translate_smg_vsg(
                as_vsg.clone(),
                Direction::VsgToSmg,
                Some(chain.clone()),
                &menu
            ),
            Err(LabError::NotCofinal(_))
        ));
        let below: Vec<AtomSet> = menu
            .iter()
            .copied()
            .filter(|&x| chain.alpha(x).is_some())
            .collect();
        let back = translate_smg_vsg(as_vsg, Direction::VsgToSmg, Some(chain), &below).unwrap();
        let rep = verify(GameKind::Smg, &fx, &below, back.as_ref());
        assert!(rep.all_wins(), "seed {seed}");
        assert!(
            rep.stats.leaves > rep.stats.inconclusive,
            "seed {seed} must have decisive plays"
        );
    }
}

#[test]
fn translated_case_two_answers_with_the_escape_only() {
    let fx = stacked_fixture(2, 3);
    let menu = fx.menu();
    let smg: Arc<dyn Tactic> =
        Arc::new(build_smg_two_tactic(base(&fx), build_phi_maps(&fx.family)).unwrap());
    let as_vsg: Arc<dyn Tactic> = Arc::new(SmgAsVsg(smg));
    let chain = absorbing_chain(as_vsg.as_ref(), &fx.family, menu[0]);
    let below: Vec<AtomSet> = menu
        .iter()
        .copied()
        .filter(|&x| chain.alpha(x).is_some())
        .collect();
    let back = translate_vsg_to_smg(as_vsg, chain.clone(), &below).unwrap();
    let x = below[0];
    let a = chain.alpha(x).unwrap();
    let mv = back.respond(&[x, x], 2).unwrap();
    assert_eq!(mv.t, AtomSet::singleton(chain.escapes[a + 1]));
}
