//! The trusted core.
//!
//! [`Theorem`] values can only be produced by the functions of this module:
//! the primitive sequent rules in [`rules`] and instantiation. Simultaneous
//! theorems and rule objects are built on top and cannot mint theorems of
//! their own.

pub mod audit;
pub mod rules;
mod simul;
mod theorem;

pub use rules::{
    all_l, all_r, basic, conj_l, conj_r, contract, disj_l, disj_r, ex_l, ex_r, exchange, iff_l,
    iff_r, imp_l, imp_r, instantiate_thm, neg_l, neg_r, weaken, Rule,
};
pub use simul::{
    apply_rule_object, make_rule_object, rule_method, simul_pack, simul_project, Fuel, RuleMethod,
    RuleObject, SimulTheorem, DEFAULT_FUEL,
};
pub use theorem::Theorem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("{rule}: {reason}")]
    NotApplicable { rule: &'static str, reason: String },
    #[error("{rule}: parameter {param} is not fresh")]
    Freshness { rule: &'static str, param: String },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("a simultaneous theorem needs at least one component")]
    EmptyBundle,
    #[error("no component named `{0}`")]
    UnknownComponent(String),
    #[error("a rule object needs at least one method")]
    EmptyRuleObject,
    #[error("rule object `{object}` has no method `{method}`")]
    UnknownMethod { object: String, method: String },
    #[error("fuel exhausted")]
    FuelExhausted,
    #[error("no derivation: {0}")]
    NoDerivation(String),
}
