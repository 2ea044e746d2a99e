//! Backward proof with tactic objects.
//!
//! A tactic maps a bundle of goals to a lazy sequence of outcomes. Each
//! outcome carries a [`Validation`]: a rule object that turns theorems for
//! the new goals into theorems for the old ones. Validations are the only
//! route from tactics to theorems, so every proof ends in the kernel.

mod backward;
mod depth;
mod expr;
mod goal;
mod object;
mod state;
mod tacticals;
mod validation;

pub use backward::{basic_tac, rule_tac};
pub use depth::{depth_tac, REUSE_CAP, SAFE_RULES};
pub use expr::{parse_tactic, TacticExpr, TacticParseError};
pub use goal::{Goal, GoalBundle, GoalId};
pub use object::{
    no_outcomes, one_outcome, tactic_method, Outcomes, TacticMethod, TacticObject, TacticOutcome,
};
pub use state::{prove, ProofState};
pub use tacticals::{all_goals, fail_tac, id_tac, orelse, repeat, then, try_};
pub use validation::Validation;

use crate::kernel::{Fuel, KernelError, Rule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TacticError {
    #[error("tactic failed")]
    TacticFailed,
    #[error("fuel exhausted")]
    FuelExhausted,
    #[error("unresolved metavariables: {0}")]
    ResidualMetas(String),
    #[error("{0} goal(s) still open")]
    OpenGoals(usize),
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("tactic has no method `{0}`")]
    UnknownMethod(String),
    #[error("replay produced {got}, expected {expected}")]
    ReplayMismatch { expected: String, got: String },
    #[error("kernel: {0}")]
    Kernel(#[from] KernelError),
}

pub fn all_r_tac(goal: Option<GoalId>) -> TacticObject {
    rule_tac(Rule::AllR, goal)
}

pub fn all_l_tac(goal: Option<GoalId>) -> TacticObject {
    rule_tac(Rule::AllL, goal)
}

pub fn ex_r_tac(goal: Option<GoalId>) -> TacticObject {
    rule_tac(Rule::ExR, goal)
}

pub fn ex_l_tac(goal: Option<GoalId>) -> TacticObject {
    rule_tac(Rule::ExL, goal)
}

/// Primitive tactics with at least one outcome on the default goal.
pub fn applicable(b: &GoalBundle) -> Vec<Rule> {
    Rule::ALL
        .into_iter()
        .filter(|r| rule_tac(*r, None).run(b, Fuel::default()).next().is_some())
        .collect()
}
