//! Primitive tactics: the kernel rules read backwards.

use crate::kernel::Rule;
use crate::logic::{instantiate_quant, BinOp, Formula, Sequent, Term};

use super::goal::{Goal, GoalBundle, GoalId};
use super::object::{no_outcomes, tactic_method, Outcomes, TacticObject, TacticOutcome};
use super::validation::{basic_step, rule_step, Witness};

/// Close a goal (the default one unless named) by unifying a left formula
/// with a right formula. The unifier goes into the shared store, so every
/// sibling goal sees it.
pub fn basic_tac(goal: Option<GoalId>) -> TacticObject {
    TacticObject::simple(
        "basic",
        tactic_method(move |_this, b, _fuel| boxed(basic_outcomes(b, goal))),
    )
}

pub(crate) fn basic_outcomes(b: &GoalBundle, goal: Option<GoalId>) -> Vec<TacticOutcome> {
    let Some(id) = goal.or_else(|| b.default_goal()) else {
        return Vec::new();
    };
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for (i, j, store) in b.unifiable_pairs(id) {
        if seen.contains(&store) {
            continue;
        }
        seen.push(store.clone());
        let Some(mut next) = b.with_store(store) else {
            continue;
        };
        let closed = next.goal(id).expect("goal present").sequent.clone();
        next.replace(id, Vec::new());
        out.push(TacticOutcome {
            bundle: next,
            validation: basic_step(id, closed, i, j),
        });
    }
    out
}

/// Backward application of `rule` to a goal, one outcome per applicable
/// position, leftmost first.
pub fn rule_tac(rule: Rule, goal: Option<GoalId>) -> TacticObject {
    if rule == Rule::Basic {
        return basic_tac(goal);
    }
    TacticObject::simple(
        rule.name(),
        tactic_method(move |_this, b, _fuel| boxed(rule_outcomes(b, rule, goal))),
    )
}

pub(crate) fn rule_outcomes(
    b: &GoalBundle,
    rule: Rule,
    goal: Option<GoalId>,
) -> Vec<TacticOutcome> {
    let Some(id) = goal.or_else(|| b.default_goal()) else {
        return Vec::new();
    };
    let Some(g) = b.goal(id) else {
        return Vec::new();
    };
    let side = if rule.acts_on_right() {
        &g.sequent.right
    } else {
        &g.sequent.left
    };
    (0..side.len())
        .filter(|&i| rule.matches_principal(&side[i]))
        .map(|i| apply_at(b, id, rule, i))
        .collect()
}

fn boxed(v: Vec<TacticOutcome>) -> Outcomes {
    if v.is_empty() {
        return no_outcomes();
    }
    Box::new(v.into_iter().map(Ok))
}

fn with_at(side: &[Formula], i: usize, f: Formula) -> Vec<Formula> {
    let mut v = side.to_vec();
    v[i] = f;
    v
}

fn without(side: &[Formula], i: usize) -> Vec<Formula> {
    let mut v = side.to_vec();
    v.remove(i);
    v
}

fn split(side: &[Formula], i: usize, a: Formula, b: Formula) -> Vec<Formula> {
    let mut v = with_at(side, i, a);
    v.insert(i + 1, b);
    v
}

fn appended(side: &[Formula], f: Formula) -> Vec<Formula> {
    let mut v = side.to_vec();
    v.push(f);
    v
}

fn parts(f: &Formula) -> (Formula, Formula) {
    match f {
        Formula::Conn(_, a, b) => ((**a).clone(), (**b).clone()),
        _ => unreachable!("checked by matches_principal"),
    }
}

/// Apply `rule` at index `i` of the relevant side of goal `id`.
pub(crate) fn apply_at(b: &GoalBundle, id: GoalId, rule: Rule, i: usize) -> TacticOutcome {
    let mut next = b.clone();
    let goal = b.goal(id).expect("goal present").clone();
    let Sequent { left: l, right: r } = goal.sequent.clone();
    let seq = Sequent::new;
    let mut witness = Witness::None;
    let principal = if rule.acts_on_right() {
        r[i].clone()
    } else {
        l[i].clone()
    };
    let mut bumped = goal.clone();
    let subgoals: Vec<Sequent> = match rule {
        Rule::ConjR => {
            let (a, c) = parts(&principal);
            vec![
                seq(l.clone(), with_at(&r, i, a)),
                seq(l.clone(), with_at(&r, i, c)),
            ]
        }
        Rule::ConjL => {
            let (a, c) = parts(&principal);
            vec![seq(split(&l, i, a, c), r.clone())]
        }
        Rule::DisjR => {
            let (a, c) = parts(&principal);
            vec![seq(l.clone(), split(&r, i, a, c))]
        }
        Rule::DisjL => {
            let (a, c) = parts(&principal);
            vec![
                seq(with_at(&l, i, a), r.clone()),
                seq(with_at(&l, i, c), r.clone()),
            ]
        }
        Rule::ImpR => {
            let (a, c) = parts(&principal);
            vec![seq(appended(&l, a), with_at(&r, i, c))]
        }
        Rule::ImpL => {
            let (a, c) = parts(&principal);
            let mut right = vec![a];
            right.extend(r.iter().cloned());
            vec![
                seq(without(&l, i), right),
                seq(with_at(&l, i, c), r.clone()),
            ]
        }
        Rule::NegR => {
            let Formula::Not(a) = &principal else {
                unreachable!()
            };
            vec![seq(appended(&l, (**a).clone()), without(&r, i))]
        }
        Rule::NegL => {
            let Formula::Not(a) = &principal else {
                unreachable!()
            };
            vec![seq(without(&l, i), appended(&r, (**a).clone()))]
        }
        Rule::IffR => {
            let (a, c) = parts(&principal);
            let ac = Formula::conn(BinOp::Imp, a.clone(), c.clone());
            let ca = Formula::conn(BinOp::Imp, c, a);
            vec![
                seq(l.clone(), with_at(&r, i, ac)),
                seq(l.clone(), with_at(&r, i, ca)),
            ]
        }
        Rule::IffL => {
            let (a, c) = parts(&principal);
            let ac = Formula::conn(BinOp::Imp, a.clone(), c.clone());
            let ca = Formula::conn(BinOp::Imp, c, a);
            vec![seq(split(&l, i, ac, ca), r.clone())]
        }
        Rule::AllR | Rule::ExL => {
            let p = next.fresh_param(goal.sequent.metas().into_iter().collect());
            let inst = instantiate_quant(&principal, &Term::Param(p.clone())).expect("quantifier");
            witness = Witness::Param(p);
            if rule == Rule::AllR {
                vec![seq(l.clone(), with_at(&r, i, inst))]
            } else {
                vec![seq(with_at(&l, i, inst), r.clone())]
            }
        }
        Rule::AllL | Rule::ExR => {
            let m = Term::Meta(next.fresh_meta());
            let inst = instantiate_quant(&principal, &m).expect("quantifier");
            witness = Witness::Term(m);
            bumped.bump_use(&principal);
            if rule == Rule::AllL {
                let mut left = l.clone();
                left.insert(i, inst);
                vec![seq(left, r.clone())]
            } else {
                let mut right = r.clone();
                right.insert(i, inst);
                vec![seq(l.clone(), right)]
            }
        }
        Rule::Basic => unreachable!("basic has no subgoals"),
    };
    let goals: Vec<Goal> = subgoals.iter().map(|s| bumped.derive(s.clone())).collect();
    let ids = next.replace(id, goals);
    let named = ids.into_iter().zip(subgoals).collect();
    let validation = rule_step(rule, id, goal.sequent, principal, witness, named);
    TacticOutcome {
        bundle: next,
        validation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Fuel;
    use crate::logic::parse_sequent;

    fn sq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn run(t: &TacticObject, b: &GoalBundle) -> Vec<TacticOutcome> {
        t.run(b, Fuel::default()).map(|r| r.unwrap()).collect()
    }

    fn shown(b: &GoalBundle) -> String {
        b.to_string()
    }

    #[test]
    fn conj_r_splits() {
        let out = run(
            &rule_tac(Rule::ConjR, None),
            &GoalBundle::new(sq("|- (P & Q)")),
        );
        assert_eq!(out.len(), 1);
        assert_eq!(shown(&out[0].bundle), "g1: |- P\ng2: |- Q\n");
    }

    #[test]
    fn imp_r_moves_antecedent() {
        let out = run(
            &rule_tac(Rule::ImpR, None),
            &GoalBundle::new(sq("|- P --> Q")),
        );
        assert_eq!(shown(&out[0].bundle), "g1: P |- Q\n");
    }

    #[test]
    fn inapplicable_rule_fails() {
        assert!(run(
            &rule_tac(Rule::ConjR, None),
            &GoalBundle::new(sq("|- P | Q"))
        )
        .is_empty());
    }

    #[test]
    fn basic_closes_identical_formulas() {
        let out = run(&basic_tac(None), &GoalBundle::new(sq("P |- P")));
        assert_eq!(out.len(), 1);
        assert!(out[0].bundle.is_discharged());
        assert!(run(&basic_tac(None), &GoalBundle::new(sq("P |- Q"))).is_empty());
    }

    #[test]
    fn basic_binding_reaches_siblings() {
        let b = GoalBundle::from_sequents(vec![sq("|- R"), sq("P(?x) |- P(c)"), sq("|- Q(?x)")]);
        let out = run(&basic_tac(Some(GoalId(1))), &b);
        assert_eq!(shown(&out[0].bundle), "g0: |- R\ng2: |- Q(c)\n");
    }

    #[test]
    fn quantifier_rules() {
        let out = run(
            &rule_tac(Rule::AllR, None),
            &GoalBundle::new(sq("|- ALL x. P(x)")),
        );
        assert_eq!(shown(&out[0].bundle), "g1: |- P(p1)\n");

        let out = run(
            &rule_tac(Rule::AllL, None),
            &GoalBundle::new(sq("ALL x. P(x) |- P(a)")),
        );
        assert_eq!(shown(&out[0].bundle), "g1: P(?m1), ALL x. P(x) |- P(a)\n");
        let closed = run(&basic_tac(None), &out[0].bundle);
        assert_eq!(closed[0].bundle.meta_store().to_string(), "{?m1 := a}");
    }

    #[test]
    fn one_outcome_per_position() {
        let out = run(
            &rule_tac(Rule::ConjL, None),
            &GoalBundle::new(sq("A & B, C & D |- A")),
        );
        assert_eq!(out.len(), 2);
        assert_eq!(shown(&out[1].bundle), "g1: A & B, C, D |- A\n");
    }
}
