use ootp_core::kernel::{Fuel, Rule};
use ootp_core::logic::parse_sequent;
use ootp_core::tactics::{basic_tac, rule_tac, then, GoalBundle, GoalId, ProofState};
use ootp_testkit::checks;

fn bundle(goals: &[&str]) -> GoalBundle {
    GoalBundle::from_sequents(goals.iter().map(|s| parse_sequent(s).unwrap()).collect())
}

#[test]
fn replay_reconstructs_every_step() {
    let r = checks::replay(200);
    assert!(r.ok() && r.checked >= 200, "{r}");
}

#[test]
fn tactical_laws_hold() {
    let r = checks::tactical_laws(100);
    assert!(r.ok() && r.checked >= 100, "{r}");
}

#[test]
fn random_bundles_stay_simultaneous() {
    let r = checks::simultaneity(100);
    assert!(r.ok() && r.checked > 0, "{r}");
}

#[test]
fn binding_in_one_goal_instantiates_its_siblings() {
    let b = bundle(&["P(?x) |- P(c)", "|- Q(?x)"]);
    let o = basic_tac(Some(GoalId(0)))
        .run(&b, Fuel::default())
        .next()
        .unwrap()
        .unwrap();
    assert_eq!(o.bundle.to_string(), "g1: |- Q(c)\n");
}

#[test]
fn sibling_instantiation_is_undone_by_backtracking() {
    let b = bundle(&["P(?x) |- P(a), P(b)", "Q(b) |- Q(?x)"]);
    let closes_both = then(basic_tac(Some(GoalId(0))), basic_tac(Some(GoalId(1))));
    let outs: Vec<_> = closes_both.run(&b, Fuel::default()).flatten().collect();
    assert_eq!(outs.len(), 1);
    assert_eq!(outs[0].bundle.meta_store().to_string(), "{?x := b}");
}

#[test]
fn instantiation_metas_reach_every_goal() {
    let ps = ProofState::new(parse_sequent("ALL x. P(x) |- P(a) & P(b)").unwrap());
    let ps = ps
        .apply(&rule_tac(Rule::AllL, None), Fuel::default())
        .unwrap();
    let ps = ps
        .apply(&rule_tac(Rule::ConjR, None), Fuel::default())
        .unwrap();
    assert_eq!(
        ps.bundle().to_string(),
        "g2: P(?m1), ALL x. P(x) |- P(a)\ng3: P(?m1), ALL x. P(x) |- P(b)\n"
    );
    let ps = ps.apply(&basic_tac(None), Fuel::default()).unwrap();
    assert_eq!(ps.bundle().to_string(), "g3: P(a), ALL x. P(x) |- P(b)\n");
}
