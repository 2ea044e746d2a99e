//! Semantic validity by brute force: truth tables for propositional
//! sequents, every interpretation over domains of size 1 to 3 otherwise.
//! Metavariables and parameters are read as free constants, so a sequent
//! is valid only if it holds for every value they could take.

use std::collections::HashMap;
use std::fmt;

use ootp_core::logic::{BinOp, Formula, Quantifier, Sequent, Term};

/// Largest domain tried for quantified sequents.
pub const MAX_DOMAIN: usize = 3;

/// Interpretations checked per sequent before giving up.
pub const MODEL_LIMIT: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// True in every interpretation tried.
    Valid,
    /// False in an interpretation over a domain of this size.
    Invalid { domain: usize },
    /// Too many interpretations to enumerate.
    TooLarge,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => write!(f, "valid"),
            Verdict::Invalid { domain } => write!(f, "countermodel of size {domain}"),
            Verdict::TooLarge => write!(f, "too many interpretations"),
        }
    }
}

/// Whether `s` has no quantifiers and only nullary predicates.
pub fn is_propositional(s: &Sequent) -> bool {
    fn prop(f: &Formula) -> bool {
        match f {
            Formula::Pred(_, args) => args.is_empty(),
            Formula::Not(a) => prop(a),
            Formula::Conn(_, a, b) => prop(a) && prop(b),
            Formula::Quant(..) => false,
        }
    }
    s.left.iter().chain(&s.right).all(prop)
}

/// Truth-table validity of a propositional sequent, `None` otherwise.
pub fn truth_table(s: &Sequent) -> Option<bool> {
    if !is_propositional(s) {
        return None;
    }
    match models(s, &[1]) {
        Verdict::Valid => Some(true),
        Verdict::Invalid { .. } => Some(false),
        Verdict::TooLarge => None,
    }
}

/// Truth tables for propositional sequents, domains 1 to [`MAX_DOMAIN`]
/// for the rest.
pub fn check(s: &Sequent) -> Verdict {
    if is_propositional(s) {
        models(s, &[1])
    } else {
        models(s, &(1..=MAX_DOMAIN).collect::<Vec<_>>())
    }
}

/// Number of distinct predicate symbols in `s`.
pub fn predicate_symbols(s: &Sequent) -> usize {
    let mut sig = Signature::default();
    for f in s.left.iter().chain(&s.right) {
        sig.formula(f);
    }
    sig.preds.len()
}

#[derive(Default)]
struct Signature {
    preds: HashMap<String, (usize, usize)>,
    funs: HashMap<String, (usize, usize)>,
}

enum CTerm {
    Bound(usize),
    Fun(usize, Vec<CTerm>),
}

enum CForm {
    Pred(usize, Vec<CTerm>),
    Not(Box<CForm>),
    Conn(BinOp, Box<CForm>, Box<CForm>),
    Quant(Quantifier, Box<CForm>),
}

impl Signature {
    fn symbol(table: &mut HashMap<String, (usize, usize)>, name: String, arity: usize) -> usize {
        let next = table.len();
        // Overloaded arities become distinct symbols.
        table
            .entry(format!("{name}/{arity}"))
            .or_insert((next, arity))
            .0
    }

    fn term(&mut self, t: &Term) -> CTerm {
        match t {
            Term::Bound(i) => CTerm::Bound(*i),
            Term::Meta(m) => CTerm::Fun(
                Self::symbol(&mut self.funs, format!("meta {m}"), 0),
                Vec::new(),
            ),
            Term::Param(p) => CTerm::Fun(
                Self::symbol(&mut self.funs, format!("param {p}"), 0),
                Vec::new(),
            ),
            Term::App(f, args) => {
                let args: Vec<CTerm> = args.iter().map(|a| self.term(a)).collect();
                CTerm::Fun(Self::symbol(&mut self.funs, f.clone(), args.len()), args)
            }
        }
    }

    fn formula(&mut self, f: &Formula) -> CForm {
        match f {
            Formula::Pred(p, args) => {
                let args: Vec<CTerm> = args.iter().map(|a| self.term(a)).collect();
                CForm::Pred(Self::symbol(&mut self.preds, p.clone(), args.len()), args)
            }
            Formula::Not(a) => CForm::Not(Box::new(self.formula(a))),
            Formula::Conn(op, a, b) => {
                CForm::Conn(*op, Box::new(self.formula(a)), Box::new(self.formula(b)))
            }
            Formula::Quant(q, _, body) => CForm::Quant(*q, Box::new(self.formula(body))),
        }
    }
}

/// One interpretation, stored as a flat list of digits: one bit per
/// predicate cell and one domain element per function cell.
struct Model {
    n: usize,
    digits: Vec<usize>,
    radix: Vec<usize>,
    pred_offset: Vec<usize>,
    fun_offset: Vec<usize>,
}

impl Model {
    fn new(n: usize, sig: &Signature) -> Model {
        let mut pred_arity = vec![0; sig.preds.len()];
        for (i, a) in sig.preds.values() {
            pred_arity[*i] = *a;
        }
        let mut fun_arity = vec![0; sig.funs.len()];
        for (i, a) in sig.funs.values() {
            fun_arity[*i] = *a;
        }
        let mut radix = Vec::new();
        let mut pred_offset = Vec::new();
        for a in pred_arity {
            pred_offset.push(radix.len());
            radix.extend(std::iter::repeat_n(2, n.pow(a as u32)));
        }
        let mut fun_offset = Vec::new();
        for a in fun_arity {
            fun_offset.push(radix.len());
            radix.extend(std::iter::repeat_n(n, n.pow(a as u32)));
        }
        Model {
            n,
            digits: vec![0; radix.len()],
            radix,
            pred_offset,
            fun_offset,
        }
    }

    fn count(&self) -> Option<u64> {
        self.radix
            .iter()
            .try_fold(1u64, |acc, r| acc.checked_mul(*r as u64))
    }

    fn advance(&mut self) -> bool {
        for k in 0..self.digits.len() {
            self.digits[k] += 1;
            if self.digits[k] < self.radix[k] {
                return true;
            }
            self.digits[k] = 0;
        }
        false
    }

    fn cell(&self, args: &[CTerm], env: &mut Vec<usize>) -> usize {
        args.iter()
            .fold(0, |acc, a| acc * self.n + self.term(a, env))
    }

    fn term(&self, t: &CTerm, env: &mut Vec<usize>) -> usize {
        match t {
            CTerm::Bound(i) => env[env.len() - 1 - i],
            CTerm::Fun(f, args) => self.digits[self.fun_offset[*f] + self.cell(args, env)],
        }
    }

    fn holds(&self, f: &CForm, env: &mut Vec<usize>) -> bool {
        match f {
            CForm::Pred(p, args) => self.digits[self.pred_offset[*p] + self.cell(args, env)] == 1,
            CForm::Not(a) => !self.holds(a, env),
            CForm::Conn(op, a, b) => {
                let x = self.holds(a, env);
                match op {
                    BinOp::And => x && self.holds(b, env),
                    BinOp::Or => x || self.holds(b, env),
                    BinOp::Imp => !x || self.holds(b, env),
                    BinOp::Iff => x == self.holds(b, env),
                }
            }
            CForm::Quant(q, body) => {
                let mut result = *q == Quantifier::All;
                for d in 0..self.n {
                    env.push(d);
                    let v = self.holds(body, env);
                    env.pop();
                    if v != result {
                        result = v;
                        break;
                    }
                }
                result
            }
        }
    }
}

fn models(s: &Sequent, sizes: &[usize]) -> Verdict {
    let mut sig = Signature::default();
    let left: Vec<CForm> = s.left.iter().map(|f| sig.formula(f)).collect();
    let right: Vec<CForm> = s.right.iter().map(|f| sig.formula(f)).collect();
    let mut total = 0u64;
    let mut tables = Vec::new();
    for &n in sizes {
        let m = Model::new(n, &sig);
        match m.count() {
            Some(c) if total.saturating_add(c) <= MODEL_LIMIT => total += c,
            _ => return Verdict::TooLarge,
        }
        tables.push(m);
    }
    let mut env = Vec::new();
    for mut m in tables {
        loop {
            let sat = !left.iter().all(|f| m.holds(f, &mut env))
                || right.iter().any(|f| m.holds(f, &mut env));
            if !sat {
                return Verdict::Invalid { domain: m.n };
            }
            if !m.advance() {
                break;
            }
        }
    }
    Verdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use ootp_core::logic::parse_sequent;

    fn v(s: &str) -> Verdict {
        check(&parse_sequent(s).unwrap())
    }

    #[test]
    fn propositional() {
        assert_eq!(v("|- P --> P"), Verdict::Valid);
        assert_eq!(v("|- ((P --> Q) --> P) --> P"), Verdict::Valid);
        assert_eq!(v("P | Q |- P"), Verdict::Invalid { domain: 1 });
        assert_eq!(v("P, ~P |-"), Verdict::Valid);
        assert_eq!(v("|-"), Verdict::Invalid { domain: 1 });
        assert_eq!(
            truth_table(&parse_sequent("|- P <-> ~~P").unwrap()),
            Some(true)
        );
        assert_eq!(truth_table(&parse_sequent("|- P(a)").unwrap()), None);
    }

    #[test]
    fn quantified() {
        assert_eq!(v("|- (ALL x. P(x)) --> P(a)"), Verdict::Valid);
        assert_eq!(v("|- EX x. P(x) --> (ALL y. P(y))"), Verdict::Valid);
        assert_eq!(
            v("|- (EX x. ALL y. R(x,y)) --> (ALL y. EX x. R(x,y))"),
            Verdict::Valid
        );
        assert_eq!(
            v("|- (ALL y. EX x. R(x,y)) --> (EX x. ALL y. R(x,y))"),
            Verdict::Invalid { domain: 2 }
        );
        assert_eq!(v("|- P(a) --> P(b)"), Verdict::Invalid { domain: 2 });
        assert_eq!(
            v("|- (EX x. P(x)) --> (ALL x. P(x))"),
            Verdict::Invalid { domain: 2 }
        );
    }

    #[test]
    fn metas_and_params_are_free_constants() {
        assert_eq!(v("P(?x) |- P(?x)"), Verdict::Valid);
        assert_eq!(v("P(?x) |- P(?y)"), Verdict::Invalid { domain: 2 });
        assert_eq!(v("ALL x. P(x) |- P(f(?m1))"), Verdict::Valid);
    }

    #[test]
    fn functions_are_interpreted() {
        assert_eq!(
            v("ALL x. P(x) --> P(s(x)), P(z) |- P(s(s(z)))"),
            Verdict::Valid
        );
        assert_eq!(v("P(z) |- P(s(z))"), Verdict::Invalid { domain: 2 });
    }

    #[test]
    fn large_signatures_are_refused() {
        assert_eq!(v("|- R(a,b,c) | S(a,b,c) | T(a,b,c)"), Verdict::TooLarge);
        assert_eq!(
            predicate_symbols(&parse_sequent("P(a), Q |- P(b)").unwrap()),
            2
        );
    }
}
