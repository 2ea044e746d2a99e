use std::fmt;
use std::hash::{Hash, Hasher};

/// Unknown term, instantiated by unification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetaVar {
    pub name: String,
    pub serial: u32,
}

/// Eigenvariable introduced by `all_r` / `ex_l`. Rigid under unification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param {
    pub name: String,
    pub serial: u32,
}

impl MetaVar {
    pub fn new(name: impl Into<String>, serial: u32) -> Self {
        MetaVar {
            name: name.into(),
            serial,
        }
    }
}

impl Param {
    pub fn new(name: impl Into<String>, serial: u32) -> Self {
        Param {
            name: name.into(),
            serial,
        }
    }
}

impl fmt::Display for MetaVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.serial == 0 {
            write!(f, "?{}", self.name)
        } else {
            write!(f, "?{}{}", self.name, self.serial)
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, self.serial)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Meta(MetaVar),
    Param(Param),
    /// De Bruijn index; 0 is the innermost enclosing quantifier.
    Bound(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn meta(name: impl Into<String>, serial: u32) -> Term {
        Term::Meta(MetaVar::new(name, serial))
    }

    pub fn param(name: impl Into<String>, serial: u32) -> Term {
        Term::Param(Param::new(name, serial))
    }

    pub fn contains_meta(&self, m: &MetaVar) -> bool {
        match self {
            Term::Meta(n) => n == m,
            Term::App(_, args) => args.iter().any(|a| a.contains_meta(m)),
            _ => false,
        }
    }

    pub fn contains_param(&self, p: &Param) -> bool {
        match self {
            Term::Param(q) => q == p,
            Term::App(_, args) => args.iter().any(|a| a.contains_param(p)),
            _ => false,
        }
    }

    pub fn has_bound(&self) -> bool {
        match self {
            Term::Bound(_) => true,
            Term::App(_, args) => args.iter().any(Term::has_bound),
            _ => false,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::App(_, args) => args.iter().all(Term::is_ground),
            Term::Param(_) => true,
            Term::Meta(_) | Term::Bound(_) => false,
        }
    }

    pub(crate) fn collect_metas(&self, out: &mut Vec<MetaVar>) {
        match self {
            Term::Meta(m) => {
                if !out.contains(m) {
                    out.push(m.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_metas(out)),
            _ => {}
        }
    }

    pub(crate) fn collect_params(&self, out: &mut Vec<Param>) {
        match self {
            Term::Param(p) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_params(out)),
            _ => {}
        }
    }

    /// Replace `Bound(depth)` by `t` and lower every deeper index by one.
    /// `t` must be closed.
    pub(crate) fn instantiate_at(&self, depth: usize, t: &Term) -> Term {
        match self {
            Term::Bound(i) if *i == depth => t.clone(),
            Term::Bound(i) if *i > depth => Term::Bound(i - 1),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.instantiate_at(depth, t)).collect(),
            ),
            other => other.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    And,
    Or,
    Imp,
    Iff,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Imp => "-->",
            BinOp::Iff => "<->",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    All,
    Ex,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::All => "ALL",
            Quantifier::Ex => "EX",
        }
    }
}

/// First-order formula. Equality and hashing ignore the bound-variable name
/// hint, so alpha-equivalent formulas compare equal.
#[derive(Debug, Clone)]
pub enum Formula {
    Pred(String, Vec<Term>),
    Not(Box<Formula>),
    Conn(BinOp, Box<Formula>, Box<Formula>),
    Quant(Quantifier, String, Box<Formula>),
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Formula::Pred(p, a), Formula::Pred(q, b)) => p == q && a == b,
            (Formula::Not(a), Formula::Not(b)) => a == b,
            (Formula::Conn(o1, a1, b1), Formula::Conn(o2, a2, b2)) => {
                o1 == o2 && a1 == a2 && b1 == b2
            }
            (Formula::Quant(q1, _, a), Formula::Quant(q2, _, b)) => q1 == q2 && a == b,
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Formula::Pred(p, args) => {
                0u8.hash(state);
                p.hash(state);
                args.hash(state);
            }
            Formula::Not(a) => {
                1u8.hash(state);
                a.hash(state);
            }
            Formula::Conn(op, a, b) => {
                2u8.hash(state);
                op.hash(state);
                a.hash(state);
                b.hash(state);
            }
            Formula::Quant(q, _, body) => {
                3u8.hash(state);
                q.hash(state);
                body.hash(state);
            }
        }
    }
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Pred(name.into(), Vec::new())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn conn(op: BinOp, a: Formula, b: Formula) -> Formula {
        Formula::Conn(op, Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::conn(BinOp::And, a, b)
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::conn(BinOp::Or, a, b)
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::conn(BinOp::Imp, a, b)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::conn(BinOp::Iff, a, b)
    }

    pub fn quant(q: Quantifier, var: impl Into<String>, body: Formula) -> Formula {
        Formula::Quant(q, var.into(), Box::new(body))
    }

    pub fn all(var: impl Into<String>, body: Formula) -> Formula {
        Formula::quant(Quantifier::All, var, body)
    }

    pub fn ex(var: impl Into<String>, body: Formula) -> Formula {
        Formula::quant(Quantifier::Ex, var, body)
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Pred(..) => true,
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::Conn(_, a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Quant(..) => false,
        }
    }

    pub fn contains_param(&self, p: &Param) -> bool {
        match self {
            Formula::Pred(_, args) => args.iter().any(|a| a.contains_param(p)),
            Formula::Not(a) => a.contains_param(p),
            Formula::Conn(_, a, b) => a.contains_param(p) || b.contains_param(p),
            Formula::Quant(_, _, body) => body.contains_param(p),
        }
    }

    pub fn metas(&self) -> Vec<MetaVar> {
        let mut out = Vec::new();
        self.collect_metas(&mut out);
        out
    }

    pub(crate) fn collect_metas(&self, out: &mut Vec<MetaVar>) {
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|a| a.collect_metas(out)),
            Formula::Not(a) => a.collect_metas(out),
            Formula::Conn(_, a, b) => {
                a.collect_metas(out);
                b.collect_metas(out);
            }
            Formula::Quant(_, _, body) => body.collect_metas(out),
        }
    }

    pub fn params(&self) -> Vec<Param> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out
    }

    pub(crate) fn collect_params(&self, out: &mut Vec<Param>) {
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|a| a.collect_params(out)),
            Formula::Not(a) => a.collect_params(out),
            Formula::Conn(_, a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Formula::Quant(_, _, body) => body.collect_params(out),
        }
    }

    /// Number of connectives and quantifiers.
    pub fn size(&self) -> usize {
        match self {
            Formula::Pred(..) => 0,
            Formula::Not(a) => 1 + a.size(),
            Formula::Conn(_, a, b) => 1 + a.size() + b.size(),
            Formula::Quant(_, _, body) => 1 + body.size(),
        }
    }

    pub(crate) fn instantiate_at(&self, depth: usize, t: &Term) -> Formula {
        match self {
            Formula::Pred(p, args) => Formula::Pred(
                p.clone(),
                args.iter().map(|a| a.instantiate_at(depth, t)).collect(),
            ),
            Formula::Not(a) => Formula::not(a.instantiate_at(depth, t)),
            Formula::Conn(op, a, b) => {
                Formula::conn(*op, a.instantiate_at(depth, t), b.instantiate_at(depth, t))
            }
            Formula::Quant(q, v, body) => {
                Formula::quant(*q, v.clone(), body.instantiate_at(depth + 1, t))
            }
        }
    }

    /// True if some `Bound` index escapes its binders.
    pub fn has_dangling_bound(&self) -> bool {
        fn term(t: &Term, depth: usize) -> bool {
            match t {
                Term::Bound(i) => *i >= depth,
                Term::App(_, args) => args.iter().any(|a| term(a, depth)),
                _ => false,
            }
        }
        fn go(f: &Formula, depth: usize) -> bool {
            match f {
                Formula::Pred(_, args) => args.iter().any(|a| term(a, depth)),
                Formula::Not(a) => go(a, depth),
                Formula::Conn(_, a, b) => go(a, depth) || go(b, depth),
                Formula::Quant(_, _, body) => go(body, depth + 1),
            }
        }
        go(self, 0)
    }
}

/// Error from [`instantiate_quant`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a quantified formula: {0}")]
pub struct NotQuantified(pub String);

/// Strip the outer quantifier of `f`, putting `t` in place of its variable.
pub fn instantiate_quant(f: &Formula, t: &Term) -> Result<Formula, NotQuantified> {
    match f {
        Formula::Quant(_, _, body) => Ok(body.instantiate_at(0, t)),
        other => Err(NotQuantified(other.to_string())),
    }
}

/// Two-sided sequent `left |- right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    pub left: Vec<Formula>,
    pub right: Vec<Formula>,
}

impl Sequent {
    pub fn new(left: Vec<Formula>, right: Vec<Formula>) -> Self {
        Sequent { left, right }
    }

    pub fn metas(&self) -> Vec<MetaVar> {
        let mut out = Vec::new();
        for f in self.left.iter().chain(&self.right) {
            f.collect_metas(&mut out);
        }
        out
    }

    pub fn params(&self) -> Vec<Param> {
        let mut out = Vec::new();
        for f in self.left.iter().chain(&self.right) {
            f.collect_params(&mut out);
        }
        out
    }

    pub fn contains_param(&self, p: &Param) -> bool {
        self.left
            .iter()
            .chain(&self.right)
            .any(|f| f.contains_param(p))
    }

    /// Same formulas on each side, counted with multiplicity.
    pub fn same_multiset(&self, other: &Sequent) -> bool {
        multiset_eq(&self.left, &other.left) && multiset_eq(&self.right, &other.right)
    }
}

pub(crate) fn multiset_eq(a: &[Formula], b: &[Formula]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for f in a {
        for (i, g) in b.iter().enumerate() {
            if !used[i] && f == g {
                used[i] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_equivalent_formulas_are_equal() {
        let a = Formula::all("x", Formula::pred("P", vec![Term::Bound(0)]));
        let b = Formula::all("y", Formula::pred("P", vec![Term::Bound(0)]));
        assert_eq!(a, b);
    }

    #[test]
    fn instantiate_quant_replaces_bound_and_shifts() {
        // ALL x. P(x) & Q
        let f = Formula::all(
            "x",
            Formula::and(Formula::pred("P", vec![Term::Bound(0)]), Formula::atom("Q")),
        );
        let m = Term::meta("m", 1);
        let got = instantiate_quant(&f, &m).unwrap();
        assert_eq!(
            got,
            Formula::and(Formula::pred("P", vec![m]), Formula::atom("Q"))
        );

        // ALL x. EX y. R(x, y): instantiating x keeps the inner binder intact.
        let g = Formula::all(
            "x",
            Formula::ex(
                "y",
                Formula::pred("R", vec![Term::Bound(1), Term::Bound(0)]),
            ),
        );
        let got = instantiate_quant(&g, &Term::constant("a")).unwrap();
        assert_eq!(
            got,
            Formula::ex(
                "y",
                Formula::pred("R", vec![Term::constant("a"), Term::Bound(0)])
            )
        );
    }

    #[test]
    fn instantiate_quant_rejects_connectives() {
        let f = Formula::and(Formula::atom("P"), Formula::atom("Q"));
        assert!(instantiate_quant(&f, &Term::constant("a")).is_err());
    }

    #[test]
    fn multiset_equality_counts_duplicates() {
        let p = Formula::atom("P");
        let q = Formula::atom("Q");
        assert!(multiset_eq(
            &[p.clone(), q.clone()],
            &[q.clone(), p.clone()]
        ));
        assert!(!multiset_eq(&[p.clone(), p.clone()], &[p.clone(), q]));
    }
}
