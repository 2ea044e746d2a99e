//! Depth-first automatic prover.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::kernel::{Fuel, Rule};

use super::backward::{apply_at, basic_outcomes};
use super::goal::{GoalBundle, GoalId};
use super::object::{tactic_method, Outcomes, TacticObject, TacticOutcome};
use super::tacticals::{after, unchanged};
use super::TacticError;

/// Rules that never create metavariables, in the order they are tried.
/// The non-branching ones come first.
pub const SAFE_RULES: [Rule; 12] = [
    Rule::ConjL,
    Rule::DisjR,
    Rule::ImpR,
    Rule::NegR,
    Rule::NegL,
    Rule::IffL,
    Rule::AllR,
    Rule::ExL,
    Rule::ConjR,
    Rule::DisjL,
    Rule::ImpL,
    Rule::IffR,
];

/// How often a quantified formula may be instantiated on one branch.
pub const REUSE_CAP: u32 = 3;

type Budget = Arc<BTreeMap<GoalId, u32>>;

/// Close every goal in scope, or fail. Each goal tries `basic` first, then
/// one safe rule, then instantiation of its least used quantified formula;
/// unifiers found by `basic` are backtracked over. Every rule application
/// costs one unit of the goal's depth, which starts at `max_depth`.
pub fn depth_tac(max_depth: u32) -> TacticObject {
    let main = tactic_method(move |_this, b, fuel| {
        let budget: Budget = Arc::new(b.in_scope().into_iter().map(|g| (g, max_depth)).collect());
        search(b.clone(), budget, fuel)
    });
    TacticObject::simple(format!("DEPTH {max_depth}"), main)
}

fn search(b: GoalBundle, budget: Budget, fuel: Fuel) -> Outcomes {
    let Some(id) = budget.keys().copied().find(|g| b.goal(*g).is_some()) else {
        return Box::new(std::iter::once(Ok(unchanged(&b))));
    };
    let Ok(fuel) = fuel.spend() else {
        return Box::new(std::iter::once(Err(TacticError::FuelExhausted)));
    };
    let depth = budget[&id];
    let first_new = b.next_goal_id();
    Box::new(expand(&b, id, depth).into_iter().flat_map(move |o| {
        let mut next = (*budget).clone();
        next.remove(&id);
        for g in o.bundle.goal_ids().into_iter().filter(|g| *g >= first_new) {
            next.insert(g, depth.saturating_sub(1));
        }
        let rest = search(o.bundle.clone(), Arc::new(next), fuel);
        after(o, rest)
    }))
}

/// The alternatives for goal `id` with `depth` rule applications left.
fn expand(b: &GoalBundle, id: GoalId, depth: u32) -> Vec<TacticOutcome> {
    let mut alts = basic_outcomes(b, Some(id));
    if let Some(k) = alts
        .iter()
        .position(|o| o.bundle.meta_store() == b.meta_store())
    {
        return vec![alts.swap_remove(k)];
    }
    if depth == 0 {
        return alts;
    }
    let goal = b.goal(id).expect("goal present");
    for rule in SAFE_RULES {
        let side = if rule.acts_on_right() {
            &goal.sequent.right
        } else {
            &goal.sequent.left
        };
        if let Some(i) = side.iter().position(|f| rule.matches_principal(f)) {
            alts.push(apply_at(b, id, rule, i));
            return alts;
        }
    }
    // Instantiation keeps the quantified formula, so the order in which
    // formulas are instantiated never matters: take the least used one.
    let left = goal
        .sequent
        .left
        .iter()
        .enumerate()
        .map(|(i, f)| (Rule::AllL, i, f));
    let right = goal
        .sequent
        .right
        .iter()
        .enumerate()
        .map(|(i, f)| (Rule::ExR, i, f));
    let next = left
        .chain(right)
        .filter(|(r, _, f)| r.matches_principal(f) && goal.uses_of(f) < REUSE_CAP)
        .min_by_key(|(_, _, f)| goal.uses_of(f));
    if let Some((rule, i, _)) = next {
        alts.push(apply_at(b, id, rule, i));
    }
    alts
}
