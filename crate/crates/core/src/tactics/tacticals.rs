//! Ways of combining tactics.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::kernel::Fuel;

use super::goal::{GoalBundle, GoalId};
use super::object::{
    no_outcomes, one_outcome, tactic_method, Outcomes, TacticObject, TacticOutcome,
};
use super::validation::Validation;

pub(crate) fn unchanged(b: &GoalBundle) -> TacticOutcome {
    TacticOutcome {
        bundle: b.clone(),
        validation: Validation::identity(),
    }
}

/// Prefix every outcome of `rest` (which ran on `first.bundle`) with `first`.
pub(crate) fn after(first: TacticOutcome, rest: Outcomes) -> Outcomes {
    Box::new(rest.map(move |r| {
        r.map(|o| TacticOutcome {
            bundle: o.bundle,
            validation: first.validation.then(&o.validation),
        })
    }))
}

/// `first`'s items, or `fallback`'s if `first` has none.
pub(crate) fn or_else_lazy(
    first: Outcomes,
    fallback: impl FnOnce() -> Outcomes + Send + 'static,
) -> Outcomes {
    let mut first = first.peekable();
    if first.peek().is_some() {
        Box::new(first)
    } else {
        fallback()
    }
}

pub fn id_tac() -> TacticObject {
    TacticObject::simple(
        "ID",
        tactic_method(|_this, b, _fuel| one_outcome(unchanged(b))),
    )
}

pub fn fail_tac() -> TacticObject {
    TacticObject::simple("FAIL", tactic_method(|_this, _b, _fuel| no_outcomes()))
}

/// Run `t2` on every outcome of `t1`, in order.
pub fn then(t1: TacticObject, t2: TacticObject) -> TacticObject {
    let methods = BTreeMap::from([
        (
            "first".to_string(),
            tactic_method(move |_this, b, fuel| t1.run(b, fuel)),
        ),
        (
            "second".to_string(),
            tactic_method(move |_this, b, fuel| t2.run(b, fuel)),
        ),
        (
            "main".to_string(),
            tactic_method(|this, b, fuel| {
                let this = this.clone();
                Box::new(
                    this.invoke("first", b, fuel)
                        .flat_map(move |r| -> Outcomes {
                            match r {
                                Ok(o) => {
                                    let rest = this.invoke("second", &o.bundle, fuel);
                                    after(o, rest)
                                }
                                Err(e) => Box::new(std::iter::once(Err(e))),
                            }
                        }),
                )
            }),
        ),
    ]);
    TacticObject::new("THEN", methods)
}

/// `t1`'s outcomes, or `t2`'s if `t1` has none.
pub fn orelse(t1: TacticObject, t2: TacticObject) -> TacticObject {
    TacticObject::simple(
        "ORELSE",
        tactic_method(move |_this, b, fuel| {
            let (t2, b2) = (t2.clone(), b.clone());
            or_else_lazy(t1.run(b, fuel), move || t2.run(&b2, fuel))
        }),
    )
}

pub fn try_(t: TacticObject) -> TacticObject {
    orelse(t, id_tac())
}

/// `(t THEN REPEAT t) ORELSE ID`, where an application of `t` that leaves
/// the bundle unchanged does not count. Each repetition spends fuel.
pub fn repeat(t: TacticObject) -> TacticObject {
    let step = tactic_method(move |_this, b, fuel| {
        let input = b.clone();
        Box::new(
            t.run(b, fuel)
                .filter(move |r| r.as_ref().map_or(true, |o| o.bundle != input)),
        ) as Outcomes
    });
    let main = tactic_method(|this, b, fuel| {
        let this2 = this.clone();
        let more: Outcomes =
            Box::new(this.invoke("step", b, fuel).flat_map(move |r| -> Outcomes {
                match r {
                    Ok(o) => {
                        let rest = this2.call("main", &o.bundle, fuel);
                        after(o, rest)
                    }
                    Err(e) => Box::new(std::iter::once(Err(e))),
                }
            }));
        let b = b.clone();
        or_else_lazy(more, move || one_outcome(unchanged(&b)))
    });
    TacticObject::new(
        "REPEAT",
        BTreeMap::from([("step".to_string(), step), ("main".to_string(), main)]),
    )
}

/// Run `t` on each goal in scope in turn, lowest first. Goals created on
/// the way are not revisited.
pub fn all_goals(t: TacticObject) -> TacticObject {
    TacticObject::simple(
        "ALLGOALS",
        tactic_method(move |_this, b, fuel| {
            let ids: Arc<[GoalId]> = b.in_scope().into();
            let outer = b.scope().cloned();
            let first_new = b.next_goal_id();
            each_goal(
                t.clone(),
                ids,
                0,
                b.clone(),
                fuel,
                Arc::new((outer, first_new)),
            )
        }),
    )
}

type Rescope = Arc<(Option<std::collections::BTreeSet<GoalId>>, GoalId)>;

fn each_goal(
    t: TacticObject,
    ids: Arc<[GoalId]>,
    k: usize,
    b: GoalBundle,
    fuel: Fuel,
    rescope: Rescope,
) -> Outcomes {
    let Some(&id) = ids.get(k) else {
        let done = b.rescoped(rescope.0.as_ref(), rescope.1);
        return one_outcome(TacticOutcome {
            bundle: done,
            validation: Validation::identity(),
        });
    };
    if b.goal(id).is_none() {
        return each_goal(t, ids, k + 1, b, fuel, rescope);
    }
    let focused = b.focused(id);
    Box::new(t.run(&focused, fuel).flat_map(move |r| -> Outcomes {
        match r {
            Ok(o) => {
                let rest = each_goal(
                    t.clone(),
                    ids.clone(),
                    k + 1,
                    o.bundle.clone(),
                    fuel,
                    rescope.clone(),
                );
                after(o, rest)
            }
            Err(e) => Box::new(std::iter::once(Err(e))),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Rule;
    use crate::logic::parse_sequent;
    use crate::tactics::backward::{basic_tac, rule_tac};

    fn bundle(s: &str) -> GoalBundle {
        GoalBundle::new(parse_sequent(s).unwrap())
    }

    fn bundles(t: &TacticObject, b: &GoalBundle) -> Vec<GoalBundle> {
        t.run(b, Fuel::default())
            .map(|r| r.unwrap().bundle)
            .collect()
    }

    #[test]
    fn identity_and_failure() {
        let b = bundle("|- P & Q");
        assert_eq!(bundles(&id_tac(), &b), vec![b.clone()]);
        assert!(bundles(&fail_tac(), &b).is_empty());
    }

    #[test]
    fn laws_on_a_sample() {
        let b = bundle("A & B, C & D |- (A & C) & B");
        let t = rule_tac(Rule::ConjL, None);
        let expect = bundles(&t, &b);
        assert_eq!(bundles(&orelse(fail_tac(), t.clone()), &b), expect);
        assert_eq!(bundles(&orelse(t.clone(), fail_tac()), &b), expect);
        assert_eq!(bundles(&then(id_tac(), t.clone()), &b), expect);
        assert_eq!(bundles(&then(t.clone(), id_tac()), &b), expect);
    }

    #[test]
    fn repeat_splits_all_conjunctions() {
        let out = bundles(
            &repeat(rule_tac(Rule::ConjR, None)),
            &bundle("|- (A & B) & (C & D)"),
        );
        let shown = out[0].to_string();
        assert_eq!(shown.lines().count(), 4, "{shown}");
        for atom in ["A", "B", "C", "D"] {
            assert!(shown.contains(&format!("|- {atom}\n")));
        }
    }

    #[test]
    fn repeat_exhausts_fuel() {
        // all_l always applies again, so only fuel stops it.
        let t = repeat(rule_tac(Rule::AllL, None));
        let first = t
            .run(&bundle("ALL x. P(x) |- Q"), Fuel::new(5))
            .next()
            .unwrap();
        assert!(matches!(
            first,
            Err(crate::tactics::TacticError::FuelExhausted)
        ));
    }

    #[test]
    fn try_never_fails() {
        let b = bundle("|- P");
        assert_eq!(bundles(&try_(basic_tac(None)), &b), vec![b.clone()]);
    }

    #[test]
    fn all_goals_visits_each_goal() {
        let b = GoalBundle::from_sequents(vec![
            parse_sequent("|- A --> A").unwrap(),
            parse_sequent("|- B --> B").unwrap(),
        ]);
        let t = all_goals(then(rule_tac(Rule::ImpR, None), basic_tac(None)));
        let out = bundles(&t, &b);
        assert!(out[0].is_discharged());
    }
}
