use std::collections::BTreeSet;
use std::fmt::{self, Write};

use super::syntax::{BinOp, Formula, Sequent, Term};

fn prec(op: BinOp) -> u8 {
    match op {
        BinOp::Iff => 1,
        BinOp::Imp => 2,
        BinOp::Or => 3,
        BinOp::And => 4,
    }
}

const NOT_PREC: u8 = 5;
const ATOM_PREC: u8 = 6;

fn right_assoc(op: BinOp) -> bool {
    matches!(op, BinOp::Imp | BinOp::Iff)
}

struct Printer {
    /// Identifiers a binder name must not shadow.
    taken: BTreeSet<String>,
    scope: Vec<String>,
}

impl Printer {
    fn for_formula(f: &Formula) -> Printer {
        let mut taken = BTreeSet::from(["ALL".to_string(), "EX".to_string()]);
        collect_names(f, &mut taken);
        Printer {
            taken,
            scope: Vec::new(),
        }
    }

    fn fresh_binder(&self, hint: &str) -> String {
        let base = if hint.is_empty() || !hint.starts_with(|c: char| c.is_ascii_alphabetic()) {
            "x"
        } else {
            hint
        };
        let clash = |n: &str| self.taken.contains(n) || self.scope.iter().any(|s| s == n);
        if !clash(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !clash(n))
            .expect("unbounded search")
    }

    fn term(&self, t: &Term, out: &mut String) {
        match t {
            Term::Meta(m) => write!(out, "{m}").unwrap(),
            Term::Param(p) => write!(out, "{p}").unwrap(),
            Term::Bound(i) => match self.scope.len().checked_sub(i + 1) {
                Some(k) => out.push_str(&self.scope[k]),
                None => write!(out, "#{i}").unwrap(),
            },
            Term::App(f, args) => {
                out.push_str(f);
                self.args(args, out);
            }
        }
    }

    fn args(&self, args: &[Term], out: &mut String) {
        if args.is_empty() {
            return;
        }
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            self.term(a, out);
        }
        out.push(')');
    }

    /// `min` is the lowest precedence printable without parentheses;
    /// `rightmost` is true when nothing follows this formula in the
    /// enclosing text, so a quantifier may extend to the end.
    fn formula(&mut self, f: &Formula, min: u8, rightmost: bool, out: &mut String) {
        let (own, is_quant) = match f {
            Formula::Pred(..) => (ATOM_PREC, false),
            Formula::Not(_) => (NOT_PREC, false),
            Formula::Conn(op, ..) => (prec(*op), false),
            Formula::Quant(..) => (0, true),
        };
        let paren = if is_quant { !rightmost } else { own < min };
        if paren {
            out.push('(');
        }
        let rightmost = rightmost || paren;
        match f {
            Formula::Pred(p, args) => {
                out.push_str(p);
                self.args(args, out);
            }
            Formula::Not(a) => {
                out.push('~');
                self.formula(a, NOT_PREC, rightmost, out);
            }
            Formula::Conn(op, a, b) => {
                let p = prec(*op);
                let (lmin, rmin) = if right_assoc(*op) {
                    (p + 1, p)
                } else {
                    (p, p + 1)
                };
                self.formula(a, lmin, false, out);
                write!(out, " {} ", op.symbol()).unwrap();
                self.formula(b, rmin, rightmost, out);
            }
            Formula::Quant(q, hint, body) => {
                let name = self.fresh_binder(hint);
                write!(out, "{} {}. ", q.keyword(), name).unwrap();
                self.scope.push(name);
                self.formula(body, 0, true, out);
                self.scope.pop();
            }
        }
        if paren {
            out.push(')');
        }
    }
}

fn collect_term_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::App(f, args) => {
            out.insert(f.clone());
            args.iter().for_each(|a| collect_term_names(a, out));
        }
        Term::Param(p) => {
            out.insert(p.to_string());
        }
        _ => {}
    }
}

fn collect_names(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Pred(_, args) => args.iter().for_each(|a| collect_term_names(a, out)),
        Formula::Not(a) => collect_names(a, out),
        Formula::Conn(_, a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
        Formula::Quant(_, _, body) => collect_names(body, out),
    }
}

/// Render with minimal parentheses; the output parses back to an equal formula.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    Printer::for_formula(f).formula(f, 0, true, &mut out);
    out
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    Printer {
        taken: BTreeSet::new(),
        scope: Vec::new(),
    }
    .term(t, &mut out);
    out
}

pub fn print_sequent(s: &Sequent) -> String {
    let side = |fs: &[Formula]| fs.iter().map(print_formula).collect::<Vec<_>>().join(", ");
    match (s.left.is_empty(), s.right.is_empty()) {
        (true, true) => "|-".to_string(),
        (true, false) => format!("|- {}", side(&s.right)),
        (false, true) => format!("{} |-", side(&s.left)),
        (false, false) => format!("{} |- {}", side(&s.left), side(&s.right)),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_sequent(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse_formula;

    #[test]
    fn minimal_parens() {
        let pq = Formula::and(Formula::atom("P"), Formula::atom("Q"));
        assert_eq!(print_formula(&pq), "P & Q");
        let f = Formula::all("x", Formula::pred("P", vec![Term::Bound(0)]));
        assert_eq!(print_formula(&f), "ALL x. P(x)");
        for text in [
            "P & Q --> Q & P",
            "(P --> Q) --> P",
            "P & (Q & R)",
            "~(P | Q)",
            "~~P",
            "(ALL x. P(x)) --> P(a)",
            "P & (ALL x. Q(x)) | R",
            "P & ALL x. Q(x) | R",
            "~EX x. P(x) & Q",
            "(P <-> Q) <-> R",
        ] {
            assert_eq!(print_formula(&parse_formula(text).unwrap()), text, "{text}");
        }
    }

    #[test]
    fn shadowing_binders_are_renamed() {
        // ALL x. ALL x. R(x#outer, x#inner)
        let f = Formula::all(
            "x",
            Formula::all(
                "x",
                Formula::pred("R", vec![Term::Bound(1), Term::Bound(0)]),
            ),
        );
        let text = print_formula(&f);
        assert_eq!(text, "ALL x. ALL x1. R(x, x1)");
        assert_eq!(parse_formula(&text).unwrap(), f);

        // binder hint clashing with a free constant
        let g = Formula::all(
            "a",
            Formula::pred("R", vec![Term::Bound(0), Term::constant("a")]),
        );
        let text = print_formula(&g);
        assert_eq!(parse_formula(&text).unwrap(), g);
    }

    #[test]
    fn sequent_sides() {
        let p = Formula::atom("P");
        assert_eq!(
            print_sequent(&Sequent::new(vec![], vec![p.clone()])),
            "|- P"
        );
        assert_eq!(
            print_sequent(&Sequent::new(vec![p.clone()], vec![])),
            "P |-"
        );
        assert_eq!(
            print_sequent(&Sequent::new(vec![p.clone(), p.clone()], vec![p])),
            "P, P |- P"
        );
    }

    #[test]
    fn metas_and_params() {
        let t = Term::app(
            "f",
            vec![Term::meta("x", 0), Term::meta("m", 3), Term::param("p", 2)],
        );
        assert_eq!(print_term(&t), "f(?x, ?m3, p2)");
    }
}
