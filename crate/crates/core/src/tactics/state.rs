use crate::kernel::{instantiate_thm, Fuel, SimulTheorem, Theorem, DEFAULT_FUEL};
use crate::logic::Sequent;

use super::goal::{GoalBundle, GoalId};
use super::object::{TacticObject, TacticOutcome};
use super::validation::Validation;
use super::TacticError;

/// An interactive proof: the goal, every bundle seen so far, and the
/// validation of each step.
#[derive(Debug, Clone)]
pub struct ProofState {
    main_goal: Sequent,
    history: Vec<GoalBundle>,
    validations: Vec<Validation>,
}

impl ProofState {
    pub fn new(goal: Sequent) -> ProofState {
        ProofState {
            history: vec![GoalBundle::new(goal.clone())],
            main_goal: goal,
            validations: Vec::new(),
        }
    }

    pub fn main_goal(&self) -> &Sequent {
        &self.main_goal
    }

    pub fn bundle(&self) -> &GoalBundle {
        self.history.last().expect("history is never empty")
    }

    pub fn steps(&self) -> usize {
        self.validations.len()
    }

    /// Bundle before each step, then the current one.
    pub fn history(&self) -> &[GoalBundle] {
        &self.history
    }

    /// Validation of each step, oldest first.
    pub fn validations(&self) -> &[Validation] {
        &self.validations
    }

    /// Apply `t` and keep its first outcome.
    pub fn apply(&self, t: &TacticObject, fuel: Fuel) -> Result<ProofState, TacticError> {
        let o = first_outcome(t, self.bundle(), fuel, |_| true)?;
        let mut next = self.clone();
        next.history.push(o.bundle.with_scope(None));
        next.validations.push(o.validation);
        Ok(next)
    }

    pub fn undo(&self) -> Result<ProofState, TacticError> {
        if self.validations.is_empty() {
            return Err(TacticError::NothingToUndo);
        }
        let mut prev = self.clone();
        prev.history.pop();
        prev.validations.pop();
        Ok(prev)
    }

    /// Replay every validation through the kernel.
    pub fn qed(&self) -> Result<Theorem, TacticError> {
        let open = self.bundle().len();
        if open > 0 {
            return Err(TacticError::OpenGoals(open));
        }
        replay(
            &self.main_goal,
            self.validations.iter().rev(),
            self.bundle(),
        )
    }
}

/// The first outcome accepted by `keep`. Errors met on the way are
/// remembered and reported only if nothing is found.
fn first_outcome(
    t: &TacticObject,
    b: &GoalBundle,
    fuel: Fuel,
    keep: impl Fn(&TacticOutcome) -> bool,
) -> Result<TacticOutcome, TacticError> {
    let mut failure = TacticError::TacticFailed;
    for r in t.run(b, fuel) {
        match r {
            Ok(o) if keep(&o) => return Ok(o),
            Ok(_) => {}
            Err(e) => failure = e,
        }
    }
    Err(failure)
}

/// Run `validations` (last step first) starting from the empty bundle and
/// check the result against `goal` under the final store.
fn replay<'a>(
    goal: &Sequent,
    validations: impl Iterator<Item = &'a Validation>,
    last: &GoalBundle,
) -> Result<Theorem, TacticError> {
    let fuel = Fuel::new(DEFAULT_FUEL);
    let mut thms = SimulTheorem::discharged();
    for v in validations {
        thms = v.replay(&thms, fuel)?;
    }
    let t = thms.project(&GoalId(0).to_string())?;
    let t = instantiate_thm(t, last.meta_store());
    let expected = last.meta_store().apply_sequent(goal);
    let residual = t.sequent().metas();
    if !residual.is_empty() {
        let names: Vec<String> = residual.iter().map(|m| m.to_string()).collect();
        return Err(TacticError::ResidualMetas(names.join(", ")));
    }
    if *t.sequent() != expected {
        return Err(TacticError::ReplayMismatch {
            expected: expected.to_string(),
            got: t.sequent().to_string(),
        });
    }
    Ok(t)
}

/// Run `t` backwards from `goal`; on the first outcome that discharges
/// everything, rebuild the theorem forwards through the kernel.
pub fn prove(goal: &Sequent, t: &TacticObject, fuel: Fuel) -> Result<Theorem, TacticError> {
    let b = GoalBundle::new(goal.clone());
    let o = first_outcome(t, &b, fuel, |o| o.bundle.is_discharged())?;
    replay(goal, std::iter::once(&o.validation), &o.bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Rule;
    use crate::logic::parse_sequent;
    use crate::tactics::{basic_tac, depth_tac, repeat, rule_tac, then};

    fn sq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn prove_examples() {
        let t = prove(&sq("|- P --> P"), &depth_tac(5), Fuel::default()).unwrap();
        assert_eq!(t.sequent(), &sq("|- P --> P"));
        assert!(matches!(
            prove(&sq("|- P"), &depth_tac(5), Fuel::default()),
            Err(TacticError::TacticFailed)
        ));
    }

    #[test]
    fn meta_in_goal_must_be_resolved() {
        let t = prove(&sq("P(a) |- P(?x)"), &basic_tac(None), Fuel::default()).unwrap();
        assert_eq!(t.sequent(), &sq("P(a) |- P(a)"));
        let r = prove(
            &sq("Q |- Q | P(?x)"),
            &then(rule_tac(Rule::DisjR, None), basic_tac(None)),
            Fuel::default(),
        );
        assert!(matches!(r, Err(TacticError::ResidualMetas(_))), "{r:?}");
    }

    #[test]
    fn interactive_session() {
        let ps = ProofState::new(sq("|- A & B --> B & A"));
        assert!(matches!(ps.undo(), Err(TacticError::NothingToUndo)));
        let ps = ps
            .apply(&rule_tac(Rule::ImpR, None), Fuel::default())
            .unwrap();
        let ps = ps
            .apply(&rule_tac(Rule::ConjL, None), Fuel::default())
            .unwrap();
        assert!(matches!(ps.qed(), Err(TacticError::OpenGoals(1))));
        let ps = ps
            .apply(&rule_tac(Rule::ConjR, None), Fuel::default())
            .unwrap();
        let ps = ps.apply(&repeat(basic_tac(None)), Fuel::default()).unwrap();
        assert!(ps.bundle().is_discharged());
        assert_eq!(ps.qed().unwrap().sequent(), &sq("|- A & B --> B & A"));
        let back = ps.undo().unwrap();
        assert_eq!(back.bundle().len(), 2);
    }

    #[test]
    fn failed_apply_keeps_state() {
        let ps = ProofState::new(sq("|- P"));
        assert!(matches!(
            ps.apply(&basic_tac(None), Fuel::default()),
            Err(TacticError::TacticFailed)
        ));
        assert_eq!(ps.steps(), 0);
    }
}
