use std::collections::BTreeMap;
use std::fmt;

use super::print::print_term;
use super::syntax::{Formula, MetaVar, Sequent, Term};

/// Finite map from metavariables to terms.
///
/// Kept normalized: no right-hand side mentions a metavariable of the
/// domain, so applying the substitution once is the same as applying it
/// twice.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    bindings: BTreeMap<MetaVar, Term>,
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (m, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m} := {}", print_term(t))?;
        }
        f.write_str("}")
    }
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, m: &MetaVar) -> Option<&Term> {
        self.bindings.get(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MetaVar, &Term)> {
        self.bindings.iter()
    }

    /// Build a normalized substitution from arbitrary (acyclic) bindings.
    /// Returns `None` if the bindings are cyclic.
    pub fn from_bindings(pairs: impl IntoIterator<Item = (MetaVar, Term)>) -> Option<Self> {
        let mut s = Substitution::new();
        for (m, t) in pairs {
            let t = s.apply_term(&t);
            if let Some(existing) = s.bindings.get(&m).cloned() {
                s = unify(&existing, &t, &s)?;
                continue;
            }
            if t == Term::Meta(m.clone()) {
                continue;
            }
            if t.contains_meta(&m) {
                return None;
            }
            s.bind_normalized(m, t);
        }
        Some(s)
    }

    /// Insert `m := t` where `t` is already fully applied and does not
    /// mention `m`; rewrites existing right-hand sides to stay normalized.
    fn bind_normalized(&mut self, m: MetaVar, t: Term) {
        let single = Substitution {
            bindings: BTreeMap::from([(m.clone(), t.clone())]),
        };
        for v in self.bindings.values_mut() {
            *v = single.apply_term(v);
        }
        self.bindings.insert(m, t);
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        if self.bindings.is_empty() {
            return t.clone();
        }
        match t {
            Term::Meta(m) => match self.bindings.get(m) {
                Some(v) => v.clone(),
                None => t.clone(),
            },
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| self.apply_term(a)).collect())
            }
            other => other.clone(),
        }
    }

    pub fn apply_formula(&self, f: &Formula) -> Formula {
        if self.bindings.is_empty() {
            return f.clone();
        }
        match f {
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|a| self.apply_term(a)).collect())
            }
            Formula::Not(a) => Formula::not(self.apply_formula(a)),
            Formula::Conn(op, a, b) => {
                Formula::conn(*op, self.apply_formula(a), self.apply_formula(b))
            }
            Formula::Quant(q, v, body) => Formula::quant(*q, v.clone(), self.apply_formula(body)),
        }
    }

    pub fn apply_sequent(&self, s: &Sequent) -> Sequent {
        Sequent {
            left: s.left.iter().map(|f| self.apply_formula(f)).collect(),
            right: s.right.iter().map(|f| self.apply_formula(f)).collect(),
        }
    }

    /// `self` then `other`: `compose(s1, s2)(t) == s2(s1(t))`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut bindings: BTreeMap<MetaVar, Term> = self
            .bindings
            .iter()
            .map(|(m, t)| (m.clone(), other.apply_term(t)))
            .collect();
        for (m, t) in &other.bindings {
            bindings.entry(m.clone()).or_insert_with(|| t.clone());
        }
        bindings.retain(|m, t| *t != Term::Meta(m.clone()));
        Substitution { bindings }
    }
}

/// Generic "apply a substitution" entry point over terms, formulas and sequents.
pub trait Substitutable {
    fn substitute(&self, s: &Substitution) -> Self;
}

impl Substitutable for Term {
    fn substitute(&self, s: &Substitution) -> Self {
        s.apply_term(self)
    }
}

impl Substitutable for Formula {
    fn substitute(&self, s: &Substitution) -> Self {
        s.apply_formula(self)
    }
}

impl Substitutable for Sequent {
    fn substitute(&self, s: &Substitution) -> Self {
        s.apply_sequent(self)
    }
}

pub fn apply_subst<T: Substitutable>(s: &Substitution, x: &T) -> T {
    x.substitute(s)
}

/// Most general unifier of `t1` and `t2` extending `s`, or `None` on clash
/// or occurs-check failure. Params are rigid; a metavariable never binds to
/// a term containing a bound variable.
pub fn unify(t1: &Term, t2: &Term, s: &Substitution) -> Option<Substitution> {
    let mut s = s.clone();
    unify_into(t1, t2, &mut s).then_some(s)
}

fn unify_into(t1: &Term, t2: &Term, s: &mut Substitution) -> bool {
    let a = s.apply_term(t1);
    let b = s.apply_term(t2);
    unify_walked(&a, &b, s)
}

fn unify_walked(a: &Term, b: &Term, s: &mut Substitution) -> bool {
    match (a, b) {
        (Term::Meta(m), Term::Meta(n)) if m == n => true,
        (Term::Meta(m), t) | (t, Term::Meta(m)) => {
            let t = s.apply_term(t);
            if t == Term::Meta(m.clone()) {
                return true;
            }
            if t.contains_meta(m) || t.has_bound() {
                return false;
            }
            if let Some(bound) = s.get(m).cloned() {
                return unify_walked(&bound, &t, s);
            }
            s.bind_normalized(m.clone(), t);
            true
        }
        (Term::Param(p), Term::Param(q)) => p == q,
        (Term::Bound(i), Term::Bound(j)) => i == j,
        (Term::App(f, xs), Term::App(g, ys)) => {
            if f != g || xs.len() != ys.len() {
                return false;
            }
            xs.iter().zip(ys).all(|(x, y)| unify_into(x, y, s))
        }
        _ => false,
    }
}

/// Unify two formulas structurally.
pub fn unify_formulas(f1: &Formula, f2: &Formula, s: &Substitution) -> Option<Substitution> {
    let mut s = s.clone();
    unify_formulas_into(f1, f2, &mut s).then_some(s)
}

fn unify_formulas_into(f1: &Formula, f2: &Formula, s: &mut Substitution) -> bool {
    match (f1, f2) {
        (Formula::Pred(p, xs), Formula::Pred(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify_into(x, y, s))
        }
        (Formula::Not(a), Formula::Not(b)) => unify_formulas_into(a, b, s),
        (Formula::Conn(o1, a1, b1), Formula::Conn(o2, a2, b2)) => {
            o1 == o2 && unify_formulas_into(a1, a2, s) && unify_formulas_into(b1, b2, s)
        }
        (Formula::Quant(q1, _, a), Formula::Quant(q2, _, b)) => {
            q1 == q2 && unify_formulas_into(a, b, s)
        }
        _ => false,
    }
}

/// One-way matching: extend `s` so that `s(pattern) == target`. Only
/// metavariables of `pattern` are bound; those of `target` are treated as
/// constants.
pub fn match_term(pattern: &Term, target: &Term, s: &mut Substitution) -> bool {
    match (pattern, target) {
        (Term::Meta(m), t) => match s.bindings.get(m) {
            Some(bound) => bound == t,
            None => {
                if t.has_bound() {
                    return false;
                }
                // Raw insert: the target side is never rewritten.
                s.bindings.insert(m.clone(), t.clone());
                true
            }
        },
        (Term::Param(p), Term::Param(q)) => p == q,
        (Term::Bound(i), Term::Bound(j)) => i == j,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, s))
        }
        _ => false,
    }
}

pub fn match_formula(pattern: &Formula, target: &Formula, s: &mut Substitution) -> bool {
    match (pattern, target) {
        (Formula::Pred(p, xs), Formula::Pred(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, s))
        }
        (Formula::Not(a), Formula::Not(b)) => match_formula(a, b, s),
        (Formula::Conn(o1, a1, b1), Formula::Conn(o2, a2, b2)) => {
            o1 == o2 && match_formula(a1, a2, s) && match_formula(b1, b2, s)
        }
        (Formula::Quant(q1, _, a), Formula::Quant(q2, _, b)) => q1 == q2 && match_formula(a, b, s),
        _ => false,
    }
}

/// Match a sequent pattern position by position.
pub fn match_sequent(pattern: &Sequent, target: &Sequent, s: &mut Substitution) -> bool {
    pattern.left.len() == target.left.len()
        && pattern.right.len() == target.right.len()
        && pattern
            .left
            .iter()
            .zip(&target.left)
            .all(|(p, t)| match_formula(p, t, s))
        && pattern
            .right
            .iter()
            .zip(&target.right)
            .all(|(p, t)| match_formula(p, t, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    fn m(n: &str) -> Term {
        Term::meta(n, 0)
    }

    fn mv(n: &str) -> MetaVar {
        MetaVar::new(n, 0)
    }

    #[test]
    fn unify_binds_single_meta() {
        let s = unify(&m("a"), &c("c"), &Substitution::new()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.get(&mv("a")), Some(&c("c")));
    }

    #[test]
    fn unify_decomposes_structure() {
        let t1 = Term::app("f", vec![m("a"), c("b")]);
        let t2 = Term::app("f", vec![c("c"), m("d")]);
        let s = unify(&t1, &t2, &Substitution::new()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.get(&mv("a")), Some(&c("c")));
        assert_eq!(s.get(&mv("d")), Some(&c("b")));
    }

    #[test]
    fn unify_occurs_check() {
        let t = Term::app("f", vec![m("a")]);
        assert!(unify(&m("a"), &t, &Substitution::new()).is_none());
    }

    #[test]
    fn params_are_rigid() {
        let p = Term::param("p", 1);
        assert!(unify(&p, &c("p1"), &Substitution::new()).is_none());
        assert!(unify(&p, &p, &Substitution::new()).is_some());
        assert!(unify(&m("x"), &p, &Substitution::new()).is_some());
    }

    #[test]
    fn apply_subst_examples() {
        let f = Formula::pred("P", vec![m("a"), m("b")]);
        assert_eq!(apply_subst(&Substitution::new(), &f), f);
        let s = Substitution::from_bindings([(mv("a"), c("c"))]).unwrap();
        assert_eq!(
            apply_subst(&s, &f),
            Formula::pred("P", vec![c("c"), m("b")])
        );
    }

    #[test]
    fn chained_bindings_stay_normalized() {
        let s = unify(&m("a"), &m("b"), &Substitution::new()).unwrap();
        let s = unify(&m("b"), &c("k"), &s).unwrap();
        assert_eq!(s.apply_term(&m("a")), c("k"));
        assert_eq!(s.apply_term(&s.apply_term(&m("a"))), s.apply_term(&m("a")));
    }

    #[test]
    fn meta_never_captures_bound() {
        let f1 = Formula::all("x", Formula::pred("P", vec![Term::Bound(0)]));
        let f2 = Formula::all("x", Formula::pred("P", vec![m("a")]));
        assert!(unify_formulas(&f1, &f2, &Substitution::new()).is_none());
    }

    #[test]
    fn matching_is_one_way() {
        let mut s = Substitution::new();
        assert!(match_term(
            &Term::app("f", vec![m("a")]),
            &Term::app("f", vec![m("z")]),
            &mut s
        ));
        assert_eq!(s.get(&mv("a")), Some(&m("z")));
        let mut s = Substitution::new();
        assert!(!match_term(&c("k"), &m("a"), &mut s));
    }
}
