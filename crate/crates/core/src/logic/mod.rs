//! First-order syntax: terms, formulas, sequents, substitution and
//! unification, plus the concrete text syntax.

mod parse;
mod print;
mod subst;
mod syntax;

pub use parse::{parse_formula, parse_sequent, parse_term, ParseError};
pub use print::{print_formula, print_sequent, print_term};
pub use subst::{
    apply_subst, match_formula, match_sequent, match_term, unify, unify_formulas, Substitutable,
    Substitution,
};
pub(crate) use syntax::multiset_eq;
pub use syntax::{
    instantiate_quant, BinOp, Formula, MetaVar, NotQuantified, Param, Quantifier, Sequent, Term,
};
