//! Validations: the rule objects a tactic hands back so that theorems for
//! its subgoals can be turned into theorems for its input goals.
//!
//! A validation method receives a bundle keyed by goal name (`g3`, ...)
//! holding a theorem for every goal of the tactic's output bundle and
//! returns a bundle keyed by the goals of the input bundle.

use std::collections::BTreeMap;

use crate::kernel::{
    self, make_rule_object, rule_method, Fuel, KernelError, Rule, RuleObject, SimulTheorem, Theorem,
};
use crate::logic::{unify_formulas, Formula, Param, Sequent, Substitution, Term};

use super::goal::GoalId;

const MAIN: &str = "main";

#[derive(Clone, Debug)]
pub struct Validation {
    pub rule: RuleObject,
    pub method: String,
    trivial: bool,
}

impl Validation {
    pub fn new(rule: RuleObject, method: impl Into<String>) -> Validation {
        Validation {
            rule,
            method: method.into(),
            trivial: false,
        }
    }

    pub fn replay(&self, args: &SimulTheorem, fuel: Fuel) -> Result<SimulTheorem, KernelError> {
        self.rule.apply(&self.method, args, &[], fuel)
    }

    pub fn identity() -> Validation {
        let id = rule_method(|_this, args, _terms, _fuel| Ok(args.clone()));
        Validation {
            trivial: true,
            ..single("id", id)
        }
    }

    pub fn is_identity(&self) -> bool {
        self.trivial
    }

    /// Validation of "`self`'s tactic, then `next`'s tactic on its output":
    /// runs `next` first, then `self`.
    pub fn then(&self, next: &Validation) -> Validation {
        if next.trivial {
            return self.clone();
        }
        if self.trivial {
            return next.clone();
        }
        let outer = forward(self.clone());
        let inner = forward(next.clone());
        let main = rule_method(|this, args, terms, fuel| {
            let mid = this.call("inner", args, terms, fuel)?;
            this.call("outer", &mid, terms, fuel)
        });
        let methods = BTreeMap::from([
            (MAIN.to_string(), main),
            ("inner".to_string(), inner),
            ("outer".to_string(), outer),
        ]);
        Validation::new(make_rule_object("then", methods).expect("non-empty"), MAIN)
    }
}

fn single(name: &str, body: kernel::RuleMethod) -> Validation {
    let methods = BTreeMap::from([(MAIN.to_string(), body)]);
    Validation::new(make_rule_object(name, methods).expect("non-empty"), MAIN)
}

fn forward(v: Validation) -> kernel::RuleMethod {
    rule_method(move |_this, args, terms, fuel| v.rule.apply(&v.method, args, terms, fuel))
}

/// Extra data some rules need when replayed.
#[derive(Debug, Clone)]
pub(crate) enum Witness {
    None,
    Param(Param),
    Term(Term),
}

/// One backward rule application on goal `goal`, whose sequent was `pattern`;
/// its subgoals are `subgoals` (names and sequents at creation time).
pub(crate) fn rule_step(
    rule: Rule,
    goal: GoalId,
    pattern: Sequent,
    principal: Formula,
    witness: Witness,
    subgoals: Vec<(GoalId, Sequent)>,
) -> Validation {
    let body = rule_method(move |_this, args, _terms, _fuel| {
        // Premise theorems may be more or less instantiated than the
        // patterns recorded here; unify them back together first.
        let mut premises = Vec::with_capacity(subgoals.len());
        let mut s = Substitution::new();
        for (id, pat) in &subgoals {
            let t = args.project(&id.to_string())?;
            s = unify_sequents(pat, t.sequent(), &s).ok_or_else(|| mismatch(rule, *id, pat, t))?;
            premises.push(t);
        }
        let premises: Vec<Theorem> = premises
            .into_iter()
            .map(|t| kernel::instantiate_thm(t, &s))
            .collect();
        let principal = s.apply_formula(&principal);
        let conclusion = apply_rule(rule, &premises, &principal, &witness, &s)?;
        let target = s.apply_sequent(&pattern);
        let conclusion = kernel::exchange(&conclusion, &target)?;
        Ok(pass_through(args, &subgoals).with(goal.to_string(), conclusion))
    });
    single(rule.name(), body)
}

/// Closing `goal` by `basic` once the store made left formula `i` equal to
/// right formula `j` in `closed`.
pub(crate) fn basic_step(goal: GoalId, closed: Sequent, i: usize, j: usize) -> Validation {
    let body = rule_method(move |_this, args, _terms, _fuel| {
        let mut left = closed.left.clone();
        let a = left.remove(i);
        let mut right = closed.right.clone();
        right.remove(j);
        let t = kernel::basic(left, a, right);
        let t = kernel::exchange(&t, &closed)?;
        Ok(pass_through(args, &[]).with(goal.to_string(), t))
    });
    single("basic", body)
}

fn pass_through(args: &SimulTheorem, consumed: &[(GoalId, Sequent)]) -> SimulTheorem {
    let mut out = SimulTheorem::discharged();
    for (name, t) in args.iter() {
        if !consumed.iter().any(|(id, _)| id.to_string() == name) {
            out = out.with(name, t.clone());
        }
    }
    out
}

fn mismatch(rule: Rule, id: GoalId, pat: &Sequent, t: &Theorem) -> KernelError {
    KernelError::NotApplicable {
        rule: rule.name(),
        reason: format!("theorem {} does not match subgoal {id}: {pat}", t.sequent()),
    }
}

fn unify_sequents(a: &Sequent, b: &Sequent, s: &Substitution) -> Option<Substitution> {
    if a.left.len() != b.left.len() || a.right.len() != b.right.len() {
        return None;
    }
    let mut s = s.clone();
    for (x, y) in a
        .left
        .iter()
        .zip(&b.left)
        .chain(a.right.iter().zip(&b.right))
    {
        s = unify_formulas(x, y, &s)?;
    }
    Some(s)
}

fn apply_rule(
    rule: Rule,
    p: &[Theorem],
    principal: &Formula,
    witness: &Witness,
    s: &Substitution,
) -> Result<Theorem, KernelError> {
    use kernel as k;
    let param = || match witness {
        Witness::Param(p) => Ok(p),
        _ => Err(KernelError::NotApplicable {
            rule: rule.name(),
            reason: "missing parameter".into(),
        }),
    };
    let term = || match witness {
        Witness::Term(t) => Ok(s.apply_term(t)),
        _ => Err(KernelError::NotApplicable {
            rule: rule.name(),
            reason: "missing instance".into(),
        }),
    };
    match rule {
        Rule::ConjR => k::conj_r(&p[0], &p[1], principal),
        Rule::ConjL => k::conj_l(&p[0], principal),
        Rule::DisjR => k::disj_r(&p[0], principal),
        Rule::DisjL => k::disj_l(&p[0], &p[1], principal),
        Rule::ImpR => k::imp_r(&p[0], principal),
        Rule::ImpL => k::imp_l(&p[0], &p[1], principal),
        Rule::NegR => k::neg_r(&p[0], principal),
        Rule::NegL => k::neg_l(&p[0], principal),
        Rule::IffR => k::iff_r(&p[0], &p[1], principal),
        Rule::IffL => k::iff_l(&p[0], principal),
        Rule::AllR => k::all_r(&p[0], principal, param()?),
        Rule::ExL => k::ex_l(&p[0], principal, param()?),
        Rule::AllL => k::all_l(&p[0], principal, &term()?),
        Rule::ExR => k::ex_r(&p[0], principal, &term()?),
        Rule::Basic => Err(KernelError::NotApplicable {
            rule: "basic",
            reason: "has no premises".into(),
        }),
    }
}
