//! Primitive forward rules of the sequent calculus.
//!
//! Every rule names its principal formula explicitly (the compound formula
//! that appears in the conclusion). Premise formulas are located by
//! position-independent search, leftmost occurrence first, and the
//! principal formula takes the place of its first component in the
//! conclusion.

use std::fmt;
use std::str::FromStr;

use crate::logic::{
    instantiate_quant, multiset_eq, BinOp, Formula, Param, Quantifier, Sequent, Substitution, Term,
};

use super::{KernelError, Theorem};

/// Names of the primitive rules, as used by tactic expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Basic,
    ConjR,
    ConjL,
    DisjR,
    DisjL,
    ImpR,
    ImpL,
    NegR,
    NegL,
    IffR,
    IffL,
    AllR,
    AllL,
    ExR,
    ExL,
}

impl Rule {
    pub const ALL: [Rule; 15] = [
        Rule::Basic,
        Rule::ConjR,
        Rule::ConjL,
        Rule::DisjR,
        Rule::DisjL,
        Rule::ImpR,
        Rule::ImpL,
        Rule::NegR,
        Rule::NegL,
        Rule::IffR,
        Rule::IffL,
        Rule::AllR,
        Rule::AllL,
        Rule::ExR,
        Rule::ExL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Basic => "basic",
            Rule::ConjR => "conj_r",
            Rule::ConjL => "conj_l",
            Rule::DisjR => "disj_r",
            Rule::DisjL => "disj_l",
            Rule::ImpR => "imp_r",
            Rule::ImpL => "imp_l",
            Rule::NegR => "neg_r",
            Rule::NegL => "neg_l",
            Rule::IffR => "iff_r",
            Rule::IffL => "iff_l",
            Rule::AllR => "all_r",
            Rule::AllL => "all_l",
            Rule::ExR => "ex_r",
            Rule::ExL => "ex_l",
        }
    }

    /// Whether the principal formula sits on the right of the turnstile.
    pub fn acts_on_right(self) -> bool {
        matches!(
            self,
            Rule::ConjR
                | Rule::DisjR
                | Rule::ImpR
                | Rule::NegR
                | Rule::IffR
                | Rule::AllR
                | Rule::ExR
        )
    }

    /// Whether `f` has the shape this rule decomposes.
    pub fn matches_principal(self, f: &Formula) -> bool {
        matches!(
            (self, f),
            (Rule::ConjR | Rule::ConjL, Formula::Conn(BinOp::And, ..))
                | (Rule::DisjR | Rule::DisjL, Formula::Conn(BinOp::Or, ..))
                | (Rule::ImpR | Rule::ImpL, Formula::Conn(BinOp::Imp, ..))
                | (Rule::IffR | Rule::IffL, Formula::Conn(BinOp::Iff, ..))
                | (Rule::NegR | Rule::NegL, Formula::Not(_))
                | (Rule::AllR | Rule::AllL, Formula::Quant(Quantifier::All, ..))
                | (Rule::ExR | Rule::ExL, Formula::Quant(Quantifier::Ex, ..))
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| KernelError::UnknownRule(s.to_string()))
    }
}

fn not_applicable(rule: &'static str, reason: impl Into<String>) -> KernelError {
    KernelError::NotApplicable {
        rule,
        reason: reason.into(),
    }
}

/// Remove the leftmost occurrence of `f`; returns the remainder and the index.
fn take(side: &[Formula], f: &Formula) -> Option<(Vec<Formula>, usize)> {
    let i = side.iter().position(|g| g == f)?;
    let mut rest = side.to_vec();
    rest.remove(i);
    Some((rest, i))
}

fn take_or(
    rule: &'static str,
    side: &[Formula],
    f: &Formula,
    which: &str,
) -> Result<(Vec<Formula>, usize), KernelError> {
    take(side, f).ok_or_else(|| not_applicable(rule, format!("{f} not found on the {which}")))
}

fn insert_at(mut side: Vec<Formula>, i: usize, f: Formula) -> Vec<Formula> {
    side.insert(i.min(side.len()), f);
    side
}

fn binary<'a>(
    rule: &'static str,
    principal: &'a Formula,
    op: BinOp,
) -> Result<(&'a Formula, &'a Formula), KernelError> {
    match principal {
        Formula::Conn(o, a, b) if *o == op => Ok((a, b)),
        _ => Err(not_applicable(
            rule,
            format!("principal formula {principal} is not `{}`", op.symbol()),
        )),
    }
}

fn quantified(rule: &'static str, principal: &Formula, q: Quantifier) -> Result<(), KernelError> {
    match principal {
        Formula::Quant(k, ..) if *k == q => Ok(()),
        _ => Err(not_applicable(
            rule,
            format!("principal formula {principal} is not `{}`", q.keyword()),
        )),
    }
}

fn same_context(rule: &'static str, a: &[Formula], b: &[Formula]) -> Result<(), KernelError> {
    if multiset_eq(a, b) {
        Ok(())
    } else {
        Err(not_applicable(
            rule,
            "premises have different side formulas",
        ))
    }
}

/// `gamma, a |- a, delta`
pub fn basic(gamma: Vec<Formula>, a: Formula, delta: Vec<Formula>) -> Theorem {
    let mut left = gamma;
    left.push(a.clone());
    let mut right = vec![a];
    right.extend(delta);
    Theorem::certify(Sequent::new(left, right), "basic")
}

/// Reorder the formulas of `t` into `target`, which must contain the same
/// formulas on each side.
pub fn exchange(t: &Theorem, target: &Sequent) -> Result<Theorem, KernelError> {
    if t.sequent() == target {
        return Ok(t.clone());
    }
    if !t.sequent().same_multiset(target) {
        return Err(not_applicable(
            "exchange",
            format!("{} is not a permutation of {}", target, t.sequent()),
        ));
    }
    Ok(Theorem::certify(target.clone(), "exchange"))
}

/// Add side formulas to both sides.
pub fn weaken(t: &Theorem, left: Vec<Formula>, right: Vec<Formula>) -> Theorem {
    let mut s = t.sequent().clone();
    s.left.extend(left);
    s.right.extend(right);
    Theorem::certify(s, "weaken")
}

/// From `G, A, A |- D` infer `G, A |- D`.
pub fn contract(t: &Theorem, f: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "contract";
    let (rest, _) = take_or(R, &t.sequent().left, f, "left")?;
    if !rest.contains(f) {
        return Err(not_applicable(
            R,
            format!("{f} occurs only once on the left"),
        ));
    }
    Ok(Theorem::certify(
        Sequent::new(rest, t.sequent().right.clone()),
        R,
    ))
}

/// From `G |- A, D` and `G |- B, D` infer `G |- A & B, D`.
pub fn conj_r(t1: &Theorem, t2: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "conj_r";
    let (a, b) = binary(R, principal, BinOp::And)?;
    let (rest1, i) = take_or(R, &t1.sequent().right, a, "right of the first premise")?;
    let (rest2, _) = take_or(R, &t2.sequent().right, b, "right of the second premise")?;
    same_context(R, &t1.sequent().left, &t2.sequent().left)?;
    same_context(R, &rest1, &rest2)?;
    let right = insert_at(rest1, i, principal.clone());
    Ok(Theorem::certify(
        Sequent::new(t1.sequent().left.clone(), right),
        R,
    ))
}

/// From `G, A, B |- D` infer `G, A & B |- D`.
pub fn conj_l(t: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "conj_l";
    let (a, b) = binary(R, principal, BinOp::And)?;
    let (rest, i) = take_or(R, &t.sequent().left, a, "left")?;
    let (rest, _) = take_or(R, &rest, b, "left")?;
    let left = insert_at(rest, i, principal.clone());
    Ok(Theorem::certify(
        Sequent::new(left, t.sequent().right.clone()),
        R,
    ))
}

/// From `G |- A, B, D` infer `G |- A | B, D`.
pub fn disj_r(t: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "disj_r";
    let (a, b) = binary(R, principal, BinOp::Or)?;
    let (rest, i) = take_or(R, &t.sequent().right, a, "right")?;
    let (rest, _) = take_or(R, &rest, b, "right")?;
    let right = insert_at(rest, i, principal.clone());
    Ok(Theorem::certify(
        Sequent::new(t.sequent().left.clone(), right),
        R,
    ))
}

/// From `G, A |- D` and `G, B |- D` infer `G, A | B |- D`.
pub fn disj_l(t1: &Theorem, t2: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "disj_l";
    let (a, b) = binary(R, principal, BinOp::Or)?;
    let (rest1, i) = take_or(R, &t1.sequent().left, a, "left of the first premise")?;
    let (rest2, _) = take_or(R, &t2.sequent().left, b, "left of the second premise")?;
    same_context(R, &rest1, &rest2)?;
    same_context(R, &t1.sequent().right, &t2.sequent().right)?;
    let left = insert_at(rest1, i, principal.clone());
    Ok(Theorem::certify(
        Sequent::new(left, t1.sequent().right.clone()),
        R,
    ))
}

/// From `G, A |- B, D` infer `G |- A --> B, D`.
pub fn imp_r(t: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "imp_r";
    let (a, b) = binary(R, principal, BinOp::Imp)?;
    let (left, _) = take_or(R, &t.sequent().left, a, "left")?;
    let (rest, i) = take_or(R, &t.sequent().right, b, "right")?;
    let right = insert_at(rest, i, principal.clone());
    Ok(Theorem::certify(Sequent::new(left, right), R))
}

/// From `G |- A, D` and `G, B |- D` infer `G, A --> B |- D`.
pub fn imp_l(t1: &Theorem, t2: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "imp_l";
    let (a, b) = binary(R, principal, BinOp::Imp)?;
    let (right1, _) = take_or(R, &t1.sequent().right, a, "right of the first premise")?;
    let (left2, i) = take_or(R, &t2.sequent().left, b, "left of the second premise")?;
    same_context(R, &t1.sequent().left, &left2)?;
    same_context(R, &right1, &t2.sequent().right)?;
    let left = insert_at(left2, i, principal.clone());
    Ok(Theorem::certify(
        Sequent::new(left, t2.sequent().right.clone()),
        R,
    ))
}

/// From `G, A |- D` infer `G |- ~A, D`.
pub fn neg_r(t: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "neg_r";
    let Formula::Not(a) = principal else {
        return Err(not_applicable(
            R,
            format!("principal formula {principal} is not a negation"),
        ));
    };
    let (left, _) = take_or(R, &t.sequent().left, a, "left")?;
    let mut right = t.sequent().right.clone();
    right.insert(0, principal.clone());
    Ok(Theorem::certify(Sequent::new(left, right), R))
}

/// From `G |- A, D` infer `G, ~A |- D`.
pub fn neg_l(t: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "neg_l";
    let Formula::Not(a) = principal else {
        return Err(not_applicable(
            R,
            format!("principal formula {principal} is not a negation"),
        ));
    };
    let (right, _) = take_or(R, &t.sequent().right, a, "right")?;
    let mut left = t.sequent().left.clone();
    left.push(principal.clone());
    Ok(Theorem::certify(Sequent::new(left, right), R))
}

/// From `G |- A --> B, D` and `G |- B --> A, D` infer `G |- A <-> B, D`.
pub fn iff_r(t1: &Theorem, t2: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "iff_r";
    let (a, b) = binary(R, principal, BinOp::Iff)?;
    let ab = Formula::imp(a.clone(), b.clone());
    let ba = Formula::imp(b.clone(), a.clone());
    let (rest1, i) = take_or(R, &t1.sequent().right, &ab, "right of the first premise")?;
    let (rest2, _) = take_or(R, &t2.sequent().right, &ba, "right of the second premise")?;
    same_context(R, &t1.sequent().left, &t2.sequent().left)?;
    same_context(R, &rest1, &rest2)?;
    let right = insert_at(rest1, i, principal.clone());
    Ok(Theorem::certify(
        Sequent::new(t1.sequent().left.clone(), right),
        R,
    ))
}

/// From `G, A --> B, B --> A |- D` infer `G, A <-> B |- D`.
pub fn iff_l(t: &Theorem, principal: &Formula) -> Result<Theorem, KernelError> {
    const R: &str = "iff_l";
    let (a, b) = binary(R, principal, BinOp::Iff)?;
    let ab = Formula::imp(a.clone(), b.clone());
    let ba = Formula::imp(b.clone(), a.clone());
    let (rest, i) = take_or(R, &t.sequent().left, &ab, "left")?;
    let (rest, _) = take_or(R, &rest, &ba, "left")?;
    let left = insert_at(rest, i, principal.clone());
    Ok(Theorem::certify(
        Sequent::new(left, t.sequent().right.clone()),
        R,
    ))
}

fn fresh_in(
    rule: &'static str,
    p: &Param,
    left: &[Formula],
    right: &[Formula],
    principal: &Formula,
) -> Result<(), KernelError> {
    if left.iter().chain(right).any(|f| f.contains_param(p)) || principal.contains_param(p) {
        return Err(KernelError::Freshness {
            rule,
            param: p.to_string(),
        });
    }
    Ok(())
}

fn closed_witness(rule: &'static str, u: &Term) -> Result<(), KernelError> {
    if u.has_bound() {
        return Err(not_applicable(
            rule,
            format!("instance {u} mentions a bound variable"),
        ));
    }
    Ok(())
}

/// From `G |- A[p], D` infer `G |- ALL x. A, D`, with `p` fresh.
pub fn all_r(t: &Theorem, principal: &Formula, p: &Param) -> Result<Theorem, KernelError> {
    const R: &str = "all_r";
    quantified(R, principal, Quantifier::All)?;
    let inst = instantiate_quant(principal, &Term::Param(p.clone())).expect("checked quantifier");
    let (rest, i) = take_or(R, &t.sequent().right, &inst, "right")?;
    fresh_in(R, p, &t.sequent().left, &rest, principal)?;
    let right = insert_at(rest, i, principal.clone());
    Ok(Theorem::certify(
        Sequent::new(t.sequent().left.clone(), right),
        R,
    ))
}

/// From `G, A[u], ALL x. A |- D` infer `G, ALL x. A |- D`.
pub fn all_l(t: &Theorem, principal: &Formula, u: &Term) -> Result<Theorem, KernelError> {
    const R: &str = "all_l";
    quantified(R, principal, Quantifier::All)?;
    closed_witness(R, u)?;
    let inst = instantiate_quant(principal, u).expect("checked quantifier");
    let (left, _) = take_or(R, &t.sequent().left, &inst, "left")?;
    if !left.contains(principal) {
        return Err(not_applicable(
            R,
            format!("{principal} not found on the left"),
        ));
    }
    Ok(Theorem::certify(
        Sequent::new(left, t.sequent().right.clone()),
        R,
    ))
}

/// From `G |- A[u], EX x. A, D` infer `G |- EX x. A, D`.
pub fn ex_r(t: &Theorem, principal: &Formula, u: &Term) -> Result<Theorem, KernelError> {
    const R: &str = "ex_r";
    quantified(R, principal, Quantifier::Ex)?;
    closed_witness(R, u)?;
    let inst = instantiate_quant(principal, u).expect("checked quantifier");
    let (right, _) = take_or(R, &t.sequent().right, &inst, "right")?;
    if !right.contains(principal) {
        return Err(not_applicable(
            R,
            format!("{principal} not found on the right"),
        ));
    }
    Ok(Theorem::certify(
        Sequent::new(t.sequent().left.clone(), right),
        R,
    ))
}

/// From `G, A[p] |- D` infer `G, EX x. A |- D`, with `p` fresh.
pub fn ex_l(t: &Theorem, principal: &Formula, p: &Param) -> Result<Theorem, KernelError> {
    const R: &str = "ex_l";
    quantified(R, principal, Quantifier::Ex)?;
    let inst = instantiate_quant(principal, &Term::Param(p.clone())).expect("checked quantifier");
    let (rest, i) = take_or(R, &t.sequent().left, &inst, "left")?;
    fresh_in(R, p, &rest, &t.sequent().right, principal)?;
    let left = insert_at(rest, i, principal.clone());
    Ok(Theorem::certify(
        Sequent::new(left, t.sequent().right.clone()),
        R,
    ))
}

/// Apply `s` to both sides. Instances of valid sequents are valid.
pub fn instantiate_thm(t: &Theorem, s: &Substitution) -> Theorem {
    if s.is_empty() {
        return t.clone();
    }
    Theorem::certify(s.apply_sequent(t.sequent()), "instantiate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, parse_sequent, MetaVar};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn basic_axiom() {
        assert_eq!(basic(vec![], f("P"), vec![]).sequent(), &seq("P |- P"));
        assert_eq!(
            basic(vec![f("Q")], f("P"), vec![f("R")]).sequent(),
            &seq("Q, P |- P, R")
        );
    }

    #[test]
    fn contraction_needs_two_copies() {
        let t = weaken(&basic(vec![], f("P"), vec![]), vec![f("P")], vec![]);
        assert_eq!(contract(&t, &f("P")).unwrap().sequent(), &seq("P |- P"));
        assert!(contract(&basic(vec![], f("P"), vec![]), &f("P")).is_err());
    }

    #[test]
    fn identity_tautology() {
        let t = imp_r(&basic(vec![], f("A"), vec![]), &f("A --> A")).unwrap();
        assert_eq!(t.sequent(), &seq("|- A --> A"));
    }

    #[test]
    fn all_r_chain_and_freshness() {
        // P(p) |- P(p)  ==>  ALL x. P(x) |- ... via all_l, then all_r on the right.
        let p = Param::new("p", 1);
        let pp = Formula::pred("P", vec![Term::Param(p.clone())]);
        let ax = basic(vec![], pp.clone(), vec![]);
        let all = f("ALL x. P(x)");
        // p occurs on the left: eigenvariable condition fails.
        let err = all_r(&ax, &all, &p).unwrap_err();
        assert!(matches!(err, KernelError::Freshness { .. }));
        // Discharge the left occurrence first.
        let t = weaken(&ax, vec![all.clone()], vec![]);
        let t = all_l(&t, &all, &Term::Param(p.clone())).unwrap();
        assert_eq!(t.sequent(), &Sequent::new(vec![all.clone()], vec![pp]));
        let t = all_r(&t, &all, &p).unwrap();
        assert_eq!(t.sequent(), &seq("ALL x. P(x) |- ALL x. P(x)"));
    }

    #[test]
    fn conj_rules() {
        let a = basic(vec![f("B")], f("A"), vec![]);
        let a = exchange(&a, &seq("A, B |- A")).unwrap();
        let b = basic(vec![f("A")], f("B"), vec![]);
        let t = conj_r(&a, &b, &f("A & B")).unwrap();
        assert_eq!(t.sequent(), &seq("A, B |- A & B"));
        let t = conj_l(&t, &f("A & B")).unwrap();
        assert_eq!(t.sequent(), &seq("A & B |- A & B"));
        // wrong principal shape
        assert!(conj_l(&t, &f("A | B")).is_err());
        // mismatched contexts
        let c = basic(vec![f("C")], f("B"), vec![]);
        assert!(conj_r(&a, &c, &f("A & B")).is_err());
    }

    #[test]
    fn disj_imp_neg_iff() {
        let t = basic(vec![], f("P"), vec![]);
        let em = neg_r(&t, &f("~P")).unwrap();
        assert_eq!(em.sequent(), &seq("|- ~P, P"));
        let em = disj_r(&exchange(&em, &seq("|- P, ~P")).unwrap(), &f("P | ~P")).unwrap();
        assert_eq!(em.sequent(), &seq("|- P | ~P"));

        let t = neg_l(&basic(vec![], f("P"), vec![]), &f("~P")).unwrap();
        assert_eq!(t.sequent(), &seq("P, ~P |-"));

        // contexts differ: P |- P  and  Q |- Q
        let t1 = basic(vec![], f("P"), vec![]);
        let t2 = basic(vec![], f("Q"), vec![]);
        assert!(imp_l(&t1, &t2, &f("P --> Q")).is_err());
        // P --> Q, P |- Q
        let t1 = basic(vec![], f("P"), vec![f("Q")]);
        let t2 = exchange(&basic(vec![f("P")], f("Q"), vec![]), &seq("Q, P |- Q")).unwrap();
        let t1 = exchange(&t1, &seq("P |- P, Q")).unwrap();
        let t = imp_l(&t1, &t2, &f("P --> Q")).unwrap();
        assert_eq!(t.sequent(), &seq("P --> Q, P |- Q"));

        // |- (P --> P) as iff halves
        let id = imp_r(&basic(vec![], f("P"), vec![]), &f("P --> P")).unwrap();
        let t = iff_r(&id, &id, &f("P <-> P")).unwrap();
        assert_eq!(t.sequent(), &seq("|- P <-> P"));
    }

    #[test]
    fn instantiate_theorem() {
        let px = f("P(?x)");
        let t = basic(vec![], px, vec![]);
        assert_eq!(instantiate_thm(&t, &Substitution::new()), t);
        let s = Substitution::from_bindings([(MetaVar::new("x", 0), Term::constant("a"))]).unwrap();
        assert_eq!(instantiate_thm(&t, &s).sequent(), &seq("P(a) |- P(a)"));
    }

    #[test]
    fn exchange_requires_permutation() {
        let t = basic(vec![f("Q")], f("P"), vec![]);
        assert!(exchange(&t, &seq("P, Q |- P")).is_ok());
        assert!(exchange(&t, &seq("P |- P")).is_err());
    }

    #[test]
    fn rule_names_round_trip() {
        for r in Rule::ALL {
            assert_eq!(r.name().parse::<Rule>().unwrap(), r);
        }
        assert!("cut".parse::<Rule>().is_err());
    }
}
