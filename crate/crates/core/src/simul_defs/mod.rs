//! Mutually recursive Horn-clause definitions as simultaneous axioms.
//!
//! A group's clauses become axiom formulas `Ax`. The group carries a
//! simultaneous theorem with one component `Ax |- A` per axiom and a rule
//! object with one method per predicate. A method derives `Ax |- p(args)`
//! for ground `args` by chaining clauses through kernel rules, reaching
//! the other predicates only through its `this` reference.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::kernel::{
    self, make_rule_object, rule_method, Fuel, KernelError, RuleMethod, RuleObject, SimulTheorem,
    Theorem,
};
use crate::logic::{instantiate_quant, Formula, Sequent, Term};

pub use parse::parse_groups;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PTerm {
    Var(String),
    App(String, Vec<PTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<PTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseDef {
    pub head: Atom,
    pub body: Vec<Atom>,
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[PTerm]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for PTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PTerm::Var(v) => f.write_str(v),
            PTerm::App(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        write_args(f, &self.args)
    }
}

impl fmt::Display for ClauseDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for (i, b) in self.body.iter().enumerate() {
            f.write_str(if i == 0 { " :- " } else { ", " })?;
            write!(f, "{b}")?;
        }
        f.write_str(".")
    }
}

impl PTerm {
    fn vars(&self, out: &mut Vec<String>) {
        match self {
            PTerm::Var(v) if !out.contains(v) => out.push(v.clone()),
            PTerm::Var(_) => {}
            PTerm::App(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }

    /// Variables become bound indices; `vars[i]` is bound by the i-th of
    /// `vars.len()` nested quantifiers.
    fn to_term(&self, vars: &[String]) -> Term {
        match self {
            PTerm::Var(v) => {
                let i = vars
                    .iter()
                    .position(|w| w == v)
                    .expect("variable collected");
                Term::Bound(vars.len() - 1 - i)
            }
            PTerm::App(name, args) => {
                Term::app(name.clone(), args.iter().map(|a| a.to_term(vars)).collect())
            }
        }
    }

    fn ground(&self, env: &BTreeMap<String, Term>) -> Term {
        match self {
            PTerm::Var(v) => env[v].clone(),
            PTerm::App(name, args) => {
                Term::app(name.clone(), args.iter().map(|a| a.ground(env)).collect())
            }
        }
    }

    fn matches(&self, t: &Term, env: &mut BTreeMap<String, Term>) -> bool {
        match (self, t) {
            (PTerm::Var(v), _) => match env.get(v) {
                Some(bound) => bound == t,
                None => {
                    env.insert(v.clone(), t.clone());
                    true
                }
            },
            (PTerm::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.matches(y, env))
            }
            _ => false,
        }
    }
}

impl Atom {
    fn to_formula(&self, vars: &[String]) -> Formula {
        Formula::pred(
            self.pred.clone(),
            self.args.iter().map(|a| a.to_term(vars)).collect(),
        )
    }

    fn ground(&self, env: &BTreeMap<String, Term>) -> Formula {
        Formula::pred(
            self.pred.clone(),
            self.args.iter().map(|a| a.ground(env)).collect(),
        )
    }
}

impl ClauseDef {
    /// Variables in order of first appearance in the head.
    fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.head.args.iter().for_each(|a| a.vars(&mut out));
        out
    }

    /// `ALL X1. ... ALL Xk. b1 & ... & bn --> head`.
    fn axiom(&self) -> Formula {
        let vars = self.vars();
        let head = self.head.to_formula(&vars);
        let mut f = match body_conj(self.body.iter().map(|b| b.to_formula(&vars)).collect()) {
            Some(body) => Formula::imp(body, head),
            None => head,
        };
        for v in vars.iter().rev() {
            f = Formula::all(v.clone(), f);
        }
        f
    }
}

/// Right-nested conjunction, or `None` for an empty body.
fn body_conj(mut atoms: Vec<Formula>) -> Option<Formula> {
    let mut f = atoms.pop()?;
    while let Some(a) = atoms.pop() {
        f = Formula::and(a, f);
    }
    Some(f)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DefError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("group `{0}` has no clauses")]
    EmptyGroup(String),
    #[error("variable {var} of `{clause}` does not occur in its head")]
    UnboundVariable { clause: String, var: String },
    #[error("predicate `{pred}` is not defined in the group")]
    UndefinedPredicate { pred: String },
    #[error("predicate `{pred}` is used with different numbers of arguments")]
    ArityMismatch { pred: String },
    #[error("kernel: {0}")]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeriveError {
    #[error("{0} is not derivable")]
    NotDerivable(String),
    #[error("fuel exhausted")]
    FuelExhausted,
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("`{pred}` takes {expected} argument(s)")]
    Arity { pred: String, expected: usize },
    #[error("arguments must be ground")]
    NotGround,
    #[error("kernel: {0}")]
    Kernel(KernelError),
}

#[derive(Debug, Clone)]
pub struct DefGroup {
    name: String,
    arities: BTreeMap<String, usize>,
    clauses: Vec<ClauseDef>,
    hyps: Arc<Vec<Formula>>,
    axioms: SimulTheorem,
    derive: RuleObject,
}

/// Data shared by the derivation methods.
struct Chain {
    clauses: Vec<ClauseDef>,
    hyps: Arc<Vec<Formula>>,
}

/// Check `clauses` and build the axiom bundle and derivation object.
pub fn declare_group(name: &str, clauses: Vec<ClauseDef>) -> Result<DefGroup, DefError> {
    if clauses.is_empty() {
        return Err(DefError::EmptyGroup(name.to_string()));
    }
    let mut arities = BTreeMap::new();
    for c in &clauses {
        let n = *arities
            .entry(c.head.pred.clone())
            .or_insert(c.head.args.len());
        if n != c.head.args.len() {
            return Err(DefError::ArityMismatch {
                pred: c.head.pred.clone(),
            });
        }
    }
    for c in &clauses {
        let head_vars = c.vars();
        for b in &c.body {
            match arities.get(&b.pred) {
                None => {
                    return Err(DefError::UndefinedPredicate {
                        pred: b.pred.clone(),
                    })
                }
                Some(&n) if n != b.args.len() => {
                    return Err(DefError::ArityMismatch {
                        pred: b.pred.clone(),
                    })
                }
                _ => {}
            }
            let mut vs = Vec::new();
            b.args.iter().for_each(|a| a.vars(&mut vs));
            if let Some(v) = vs.into_iter().find(|v| !head_vars.contains(v)) {
                return Err(DefError::UnboundVariable {
                    clause: c.to_string(),
                    var: v,
                });
            }
        }
    }

    let hyps: Arc<Vec<Formula>> = Arc::new(clauses.iter().map(ClauseDef::axiom).collect());
    let mut parts = BTreeMap::new();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, c) in clauses.iter().enumerate() {
        let k = counts.entry(&c.head.pred).or_default();
        *k += 1;
        let mut rest = (*hyps).clone();
        let a = rest.remove(i);
        let t = kernel::basic(rest, a.clone(), vec![]);
        let t = kernel::exchange(&t, &Sequent::new((*hyps).clone(), vec![a]))?;
        parts.insert(format!("{}.{}", c.head.pred, k), t);
    }
    let axioms = kernel::simul_pack(parts)?;

    let chain = Arc::new(Chain {
        clauses: clauses.clone(),
        hyps: hyps.clone(),
    });
    let methods: BTreeMap<String, RuleMethod> = arities
        .keys()
        .map(|p| (p.clone(), derive_method(chain.clone(), p.clone())))
        .collect();
    let derive = make_rule_object(name, methods)?;
    Ok(DefGroup {
        name: name.to_string(),
        arities,
        clauses,
        hyps,
        axioms,
        derive,
    })
}

/// Parse a single group from text.
pub fn parse_group(src: &str) -> Result<DefGroup, DefError> {
    let mut groups = parse_groups(src)?;
    if groups.len() != 1 {
        return Err(DefError::Syntax {
            pos: 0,
            message: format!("expected one group, found {}", groups.len()),
        });
    }
    let (name, clauses) = groups.remove(0);
    declare_group(&name, clauses)
}

impl DefGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn predicates(&self) -> BTreeSet<&str> {
        self.arities.keys().map(String::as_str).collect()
    }

    pub fn clauses(&self) -> &[ClauseDef] {
        &self.clauses
    }

    /// The axiom formulas, one per clause, in clause order.
    pub fn hypotheses(&self) -> &[Formula] {
        &self.hyps
    }

    pub fn axioms(&self) -> &SimulTheorem {
        &self.axioms
    }

    pub fn derive_object(&self) -> &RuleObject {
        &self.derive
    }
}

/// Derive `Ax |- pred(args)`. Each recursive use of another clause spends
/// one unit of fuel.
pub fn derive_ground(
    g: &DefGroup,
    pred: &str,
    args: &[Term],
    fuel: Fuel,
) -> Result<Theorem, DeriveError> {
    let Some(&n) = g.arities.get(pred) else {
        return Err(DeriveError::UnknownPredicate(pred.to_string()));
    };
    if n != args.len() {
        return Err(DeriveError::Arity {
            pred: pred.to_string(),
            expected: n,
        });
    }
    if !args.iter().all(Term::is_ground) {
        return Err(DeriveError::NotGround);
    }
    match g.derive.apply(pred, &g.axioms, args, fuel) {
        Ok(b) => Ok(b.project(pred).map_err(DeriveError::Kernel)?.clone()),
        Err(KernelError::FuelExhausted) => Err(DeriveError::FuelExhausted),
        Err(KernelError::NoDerivation(s)) => Err(DeriveError::NotDerivable(s)),
        Err(e) => Err(DeriveError::Kernel(e)),
    }
}

fn derive_method(chain: Arc<Chain>, pred: String) -> RuleMethod {
    rule_method(move |this, axioms, args, fuel| {
        let mut exhausted = false;
        'clauses: for (ci, c) in chain
            .clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.head.pred == pred)
        {
            let mut env = BTreeMap::new();
            if !c
                .head
                .args
                .iter()
                .zip(args)
                .all(|(p, t)| p.matches(t, &mut env))
            {
                continue;
            }
            let mut premises = Vec::with_capacity(c.body.len());
            for b in &c.body {
                let sub: Vec<Term> = b.args.iter().map(|a| a.ground(&env)).collect();
                match this.call(&b.pred, axioms, &sub, fuel) {
                    Ok(r) => premises.push(r.project(&b.pred)?.clone()),
                    Err(KernelError::FuelExhausted) => {
                        exhausted = true;
                        continue 'clauses;
                    }
                    Err(KernelError::NoDerivation(_)) => continue 'clauses,
                    Err(e) => return Err(e),
                }
            }
            let t = chain.forward(ci, &env, premises)?;
            return Ok(SimulTheorem::single(pred.clone(), t));
        }
        if exhausted {
            return Err(KernelError::FuelExhausted);
        }
        let goal = Formula::pred(pred.clone(), args.to_vec());
        Err(KernelError::NoDerivation(goal.to_string()))
    })
}

impl Chain {
    /// From `Ax |- b` for each body atom of clause `ci` under `env`, build
    /// `Ax |- head` using only kernel rules.
    fn forward(
        &self,
        ci: usize,
        env: &BTreeMap<String, Term>,
        premises: Vec<Theorem>,
    ) -> Result<Theorem, KernelError> {
        let c = &self.clauses[ci];
        let ax = (*self.hyps).clone();
        let head = c.head.ground(env);
        let vars = c.vars();
        let insts: Vec<Term> = vars.iter().map(|v| env[v].clone()).collect();

        // Instances of the axiom with the first j variables filled in.
        let mut stages = vec![self.hyps[ci].clone()];
        for t in &insts {
            let next = instantiate_quant(stages.last().expect("non-empty"), t).expect("quantified");
            stages.push(next);
        }
        let k = insts.len();

        // Ax, stages[k] |- head
        let mut t = match body_conj(c.body.iter().map(|b| b.ground(env)).collect()) {
            None => kernel::basic(ax.clone(), head.clone(), vec![]),
            Some(body) => {
                let proof = conj_premises(premises)?;
                let with_head = kernel::weaken(&proof, vec![], vec![head.clone()]);
                let closing = kernel::basic(ax.clone(), head.clone(), vec![]);
                kernel::imp_l(&with_head, &closing, &Formula::imp(body, head.clone()))?
            }
        };
        if k == 0 {
            t = kernel::contract(&t, &stages[0])?;
        }
        for j in (0..k).rev() {
            if j > 0 {
                t = kernel::weaken(&t, vec![stages[j].clone()], vec![]);
            }
            t = kernel::all_l(&t, &stages[j], &insts[j])?;
        }
        kernel::exchange(&t, &Sequent::new(ax, vec![head]))
    }
}

/// `Ax |- b1`, ..., `Ax |- bn` to `Ax |- b1 & (... & bn)`.
fn conj_premises(mut premises: Vec<Theorem>) -> Result<Theorem, KernelError> {
    let mut acc = premises.pop().expect("non-empty body");
    while let Some(p) = premises.pop() {
        let f = Formula::and(p.sequent().right[0].clone(), acc.sequent().right[0].clone());
        acc = kernel::conj_r(&p, &acc, &f)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EVENODD: &str = "group evenodd { even(0). even(s(N)) :- odd(N). odd(s(N)) :- even(N). }";

    fn num(n: usize) -> Term {
        (0..n).fold(Term::constant("0"), |t, _| Term::app("s", vec![t]))
    }

    #[test]
    fn evenodd_shape() {
        let g = parse_group(EVENODD).unwrap();
        assert_eq!(g.axioms().len(), 3);
        assert_eq!(
            g.derive_object().method_names().collect::<Vec<_>>(),
            vec!["even", "odd"]
        );
        assert_eq!(
            g.hypotheses()[1].to_string(),
            "ALL N. odd(N) --> even(s(N))"
        );
        let names: Vec<&str> = g.axioms().names().collect();
        assert_eq!(names, vec!["even.1", "even.2", "odd.1"]);
    }

    #[test]
    fn derivations() {
        let g = parse_group(EVENODD).unwrap();
        let t = derive_ground(&g, "even", &[num(4)], Fuel::default()).unwrap();
        assert_eq!(t.sequent().right, vec![Formula::pred("even", vec![num(4)])]);
        assert_eq!(t.sequent().left, g.hypotheses());
        assert!(matches!(
            derive_ground(&g, "even", &[num(3)], Fuel::default()),
            Err(DeriveError::NotDerivable(_))
        ));
        // Base case needs no calls at all.
        assert!(derive_ground(&g, "even", &[num(0)], Fuel::new(0)).is_ok());
    }

    #[test]
    fn fuel_bounds_recursion() {
        let g = parse_group(EVENODD).unwrap();
        assert!(derive_ground(&g, "odd", &[num(5)], Fuel::new(5)).is_ok());
        assert_eq!(
            derive_ground(&g, "odd", &[num(5)], Fuel::new(4)),
            Err(DeriveError::FuelExhausted)
        );
    }

    #[test]
    fn degenerate_and_multi_body_groups() {
        let g = parse_group("group one { p(a). }").unwrap();
        assert!(derive_ground(&g, "p", &[Term::constant("a")], Fuel::default()).is_ok());
        assert!(derive_ground(&g, "p", &[Term::constant("b")], Fuel::default()).is_err());

        let g = parse_group("group h { q :- r, t. r. t. both(X, Y) :- p(X), p(Y). p(a). p(b). }")
            .unwrap();
        assert!(derive_ground(&g, "q", &[], Fuel::default()).is_ok());
        let ab = [Term::constant("a"), Term::constant("b")];
        assert!(derive_ground(&g, "both", &ab, Fuel::default()).is_ok());
        assert!(derive_ground(
            &g,
            "both",
            &[Term::constant("a"), Term::constant("c")],
            Fuel::default()
        )
        .is_err());
    }

    #[test]
    fn declaration_errors() {
        let unbound = parse_groups("group g { p(X) :- q(Y). q(a). }")
            .unwrap()
            .remove(0);
        assert!(matches!(
            declare_group("g", unbound.1),
            Err(DefError::UnboundVariable { .. })
        ));
        let undefined = parse_groups("group g { p(X) :- r(X). }").unwrap().remove(0);
        assert!(matches!(
            declare_group("g", undefined.1),
            Err(DefError::UndefinedPredicate { .. })
        ));
        let arity = parse_groups("group g { p(a). p(a, b). }")
            .unwrap()
            .remove(0);
        assert!(matches!(
            declare_group("g", arity.1),
            Err(DefError::ArityMismatch { .. })
        ));
        assert!(matches!(
            declare_group("g", vec![]),
            Err(DefError::EmptyGroup(_))
        ));
    }

    #[test]
    fn request_errors() {
        let g = parse_group(EVENODD).unwrap();
        assert!(matches!(
            derive_ground(&g, "zero", &[], Fuel::default()),
            Err(DeriveError::UnknownPredicate(_))
        ));
        assert!(matches!(
            derive_ground(&g, "even", &[], Fuel::default()),
            Err(DeriveError::Arity { .. })
        ));
        let open = [Term::meta("x", 0)];
        assert!(matches!(
            derive_ground(&g, "even", &open, Fuel::default()),
            Err(DeriveError::NotGround)
        ));
    }
}
