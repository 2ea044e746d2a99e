//! Randomized checks of the tactic layer, each summarized as a [`Report`].

use std::collections::BTreeSet;
use std::fmt;

use ootp_core::kernel::{Fuel, Rule, SimulTheorem};
use ootp_core::logic::{parse_sequent, print_sequent, Sequent};
use ootp_core::tactics::{
    basic_tac, depth_tac, fail_tac, id_tac, orelse, rule_tac, then, GoalBundle, GoalId, ProofState,
    TacticObject,
};
use proptest::prelude::RngExt;
use proptest::test_runner::TestRunner;

use crate::gen::{bundle, propositional_corpus, sample};
use crate::oracle::{check, truth_table, Verdict};
use crate::FO_THEOREMS;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} checked, {} failed",
            self.checked,
            self.failures.len()
        )?;
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

/// Primitive rules with an outcome on goal `g`.
fn rules_at(b: &GoalBundle, g: GoalId) -> Vec<Rule> {
    Rule::ALL
        .into_iter()
        .filter(|r| {
            rule_tac(*r, Some(g))
                .run(b, Fuel::default())
                .any(|o| o.is_ok())
        })
        .collect()
}

/// Provable starting goals: the valid part of the propositional corpus and
/// the first-order theorems.
fn provable_goals() -> Vec<Sequent> {
    let mut goals: Vec<Sequent> = propositional_corpus(600)
        .into_iter()
        .filter(|s| truth_table(s) == Some(true))
        .collect();
    goals.extend(
        FO_THEOREMS
            .iter()
            .map(|s| parse_sequent(s).expect("fixture parses")),
    );
    goals
}

/// Apply random primitive rules to provable goals, finish with `DEPTH 10`,
/// then replay the validations forwards one step at a time. After each
/// step the theorems must be exactly the goals of the bundle that step
/// started from, under the final metavariable store. Counts the random
/// applications that ended in a finished proof.
pub fn replay(applications: usize) -> Report {
    let mut report = Report::default();
    let goals = provable_goals();
    let mut runner = TestRunner::deterministic();
    let mut k = 0;
    while report.checked < applications {
        let goal = goals[k % goals.len()].clone();
        k += 1;
        let mut ps = ProofState::new(goal.clone());
        let steps = runner.rng().random_range(1..=4usize);
        let mut random_steps = 0;
        for _ in 0..steps {
            let ids = ps.bundle().goal_ids();
            if ids.is_empty() {
                break;
            }
            let g = ids[runner.rng().random_range(0..ids.len())];
            let rules = rules_at(ps.bundle(), g);
            if rules.is_empty() {
                break;
            }
            let r = rules[runner.rng().random_range(0..rules.len())];
            match ps.apply(&rule_tac(r, Some(g)), Fuel::default()) {
                Ok(next) => {
                    ps = next;
                    random_steps += 1;
                }
                Err(e) => report.fail(format!(
                    "{r} at {g} on {goal}: listed as applicable but failed: {e}"
                )),
            }
        }
        let Ok(done) = ps.apply(&depth_tac(10), Fuel::default()) else {
            continue;
        };
        if !done.bundle().is_discharged() {
            continue;
        }
        match replay_steps(&done) {
            Ok(()) => report.checked += random_steps,
            Err(m) => report.fail(format!("{goal}: {m}")),
        }
        if let Err(e) = done.qed() {
            report.fail(format!("{goal}: qed: {e}"));
        }
    }
    report
}

fn replay_steps(ps: &ProofState) -> Result<(), String> {
    let store = ps.bundle().meta_store();
    let mut thms = SimulTheorem::discharged();
    for (k, v) in ps.validations().iter().enumerate().rev() {
        thms = v
            .replay(&thms, Fuel::default())
            .map_err(|e| format!("step {k}: {e}"))?;
        let before = &ps.history()[k];
        let names: Vec<String> = thms.names().map(String::from).collect();
        let ids: Vec<String> = before.goal_ids().iter().map(|g| g.to_string()).collect();
        if names.iter().collect::<BTreeSet<_>>() != ids.iter().collect::<BTreeSet<_>>() {
            return Err(format!("step {k}: theorems for {names:?}, goals {ids:?}"));
        }
        for (id, g) in before.goals() {
            let t = thms.project(&id.to_string()).map_err(|e| e.to_string())?;
            let t = store.apply_sequent(t.sequent());
            let want = store.apply_sequent(&g.sequent);
            if t != want {
                return Err(format!(
                    "step {k}, {id}: rebuilt {} for {}",
                    print_sequent(&t),
                    print_sequent(&want)
                ));
            }
        }
    }
    Ok(())
}

/// Everything observable about one outcome sequence, truncated.
fn trace(t: &TacticObject, b: &GoalBundle) -> Vec<String> {
    t.run(b, Fuel::new(200))
        .take(40)
        .map(|r| match r {
            Ok(o) => format!(
                "{}{}{:?}",
                o.bundle,
                o.bundle.meta_store(),
                o.bundle.in_scope()
            ),
            Err(e) => format!("error: {e}"),
        })
        .collect()
}

fn random_primitive(runner: &mut TestRunner, b: &GoalBundle) -> (String, TacticObject) {
    let ids = b.goal_ids();
    let g = match runner.rng().random_range(0..3) {
        0 => None,
        _ => Some(ids[runner.rng().random_range(0..ids.len())]),
    };
    let at = g.map_or(String::new(), |g| format!(" {g}"));
    match runner.rng().random_range(0..Rule::ALL.len() + 4) {
        k if k < Rule::ALL.len() => (format!("{}{at}", Rule::ALL[k]), rule_tac(Rule::ALL[k], g)),
        k if k == Rule::ALL.len() => (format!("basic{at}"), basic_tac(g)),
        k if k == Rule::ALL.len() + 1 => ("ID".into(), id_tac()),
        k if k == Rule::ALL.len() + 2 => ("FAIL".into(), fail_tac()),
        _ => ("DEPTH 2".into(), depth_tac(2)),
    }
}

/// Identity and associativity of THEN and ORELSE, compared as outcome
/// sequences on random bundles with random primitive tactics.
pub fn tactical_laws(bundles: usize) -> Report {
    let mut report = Report::default();
    let mut runner = TestRunner::deterministic();
    for goals in sample(bundle(), bundles) {
        let b = GoalBundle::from_sequents(goals);
        let (na, a) = random_primitive(&mut runner, &b);
        let (nb, bt) = random_primitive(&mut runner, &b);
        let (nc, c) = random_primitive(&mut runner, &b);
        let laws: [(&str, TacticObject, TacticObject); 6] = [
            ("ID THEN a = a", then(id_tac(), a.clone()), a.clone()),
            ("a THEN ID = a", then(a.clone(), id_tac()), a.clone()),
            (
                "FAIL ORELSE a = a",
                orelse(fail_tac(), a.clone()),
                a.clone(),
            ),
            (
                "a ORELSE FAIL = a",
                orelse(a.clone(), fail_tac()),
                a.clone(),
            ),
            (
                "(a THEN b) THEN c = a THEN (b THEN c)",
                then(then(a.clone(), bt.clone()), c.clone()),
                then(a.clone(), then(bt.clone(), c.clone())),
            ),
            (
                "(a ORELSE b) ORELSE c = a ORELSE (b ORELSE c)",
                orelse(orelse(a.clone(), bt.clone()), c.clone()),
                orelse(a, orelse(bt, c)),
            ),
        ];
        for (law, lhs, rhs) in laws {
            if trace(&lhs, &b) != trace(&rhs, &b) {
                report.fail(format!("{law} with a={na}, b={nb}, c={nc} on\n{b}"));
            }
        }
        report.checked += 1;
    }
    report
}

/// On random bundles and rules: every outcome is closed under its own
/// store, goals the rule did not touch change only by that store, and new
/// goals get fresh names.
pub fn simultaneity(bundles: usize) -> Report {
    let mut report = Report::default();
    let mut runner = TestRunner::deterministic();
    for goals in sample(bundle(), bundles) {
        let b = GoalBundle::from_sequents(goals);
        let ids = b.goal_ids();
        let target = ids[runner.rng().random_range(0..ids.len())];
        let mut rules = Rule::ALL.to_vec();
        rules.retain(|r| *r != Rule::Basic);
        let tactics = rules
            .into_iter()
            .map(|r| (r.to_string(), rule_tac(r, Some(target))));
        let tactics = tactics.chain([("basic".to_string(), basic_tac(Some(target)))]);
        for (name, t) in tactics {
            for o in t.run(&b, Fuel::default()).take(8).flatten() {
                let nb = &o.bundle;
                let s = nb.meta_store();
                for (id, g) in nb.goals() {
                    if s.apply_sequent(&g.sequent) != g.sequent {
                        report.fail(format!(
                            "{name} at {target}: {id} not closed under the store"
                        ));
                    }
                    match b.goal(id) {
                        Some(old) if id != target => {
                            if s.apply_sequent(&old.sequent) != g.sequent {
                                report.fail(format!(
                                    "{name} at {target}: sibling {id} changed beyond the store"
                                ));
                            }
                        }
                        Some(_) => report.fail(format!("{name} at {target}: target survived")),
                        None if id < b.next_goal_id() => {
                            report.fail(format!("{name}: reused name {id}"))
                        }
                        None => {}
                    }
                }
                for id in &ids {
                    if *id != target && nb.goal(*id).is_none() {
                        report.fail(format!("{name} at {target}: sibling {id} vanished"));
                    }
                }
                report.checked += 1;
            }
        }
    }
    report
}

/// Oracle verdicts on a set of certified sequents: every one must be
/// valid. Duplicates are checked once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Soundness {
    pub distinct: usize,
    pub propositional: usize,
    pub quantified: usize,
    pub too_large: usize,
    pub invalid: Vec<String>,
}

impl Soundness {
    pub fn ok(&self) -> bool {
        self.invalid.is_empty() && self.too_large == 0
    }
}

impl fmt::Display for Soundness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} distinct theorems ({} by truth table, {} by finite models), {} too large, {} invalid",
            self.distinct,
            self.propositional,
            self.quantified,
            self.too_large,
            self.invalid.len()
        )?;
        for s in self.invalid.iter().take(10) {
            write!(f, "\n  {s}")?;
        }
        Ok(())
    }
}

pub fn soundness(theorems: impl IntoIterator<Item = Sequent>) -> Soundness {
    let mut seen = BTreeSet::new();
    let mut out = Soundness::default();
    for s in theorems {
        if !seen.insert(print_sequent(&s)) {
            continue;
        }
        out.distinct += 1;
        if crate::oracle::is_propositional(&s) {
            out.propositional += 1;
        } else {
            out.quantified += 1;
        }
        match check(&s) {
            Verdict::Valid => {}
            Verdict::TooLarge => out.too_large += 1,
            v @ Verdict::Invalid { .. } => out.invalid.push(format!("{s}: {v}")),
        }
    }
    out
}
