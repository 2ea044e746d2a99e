//! Recursive-descent parser for formulas and sequents.
//!
//! Precedence, tightest first: `~`, `&`, `|`, `-->`, `<->`. `&` and `|`
//! associate to the left, `-->` and `<->` to the right. `ALL x.` and `EX x.`
//! extend as far right as possible.

use std::fmt;

use super::syntax::{Formula, MetaVar, Quantifier, Sequent, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input, `None` at end of input.
    pub pos: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "syntax error at position {}: {}", p, self.message),
            None => write!(f, "syntax error at end of input: {}", self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Meta(String),
    Num(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Turnstile,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Num(s) => write!(f, "`{s}`"),
            Tok::Meta(s) => write!(f, "`?{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Not => f.write_str("`~`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Imp => f.write_str("`-->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Turnstile => f.write_str("`|-`"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub(crate) fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    let err = |pos: usize, msg: String| ParseError {
        pos: Some(pos),
        message: msg,
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let rest = &input[i..];
        let tok = if rest.starts_with("-->") {
            i += 3;
            Tok::Imp
        } else if rest.starts_with("<->") {
            i += 3;
            Tok::Iff
        } else if rest.starts_with("|-") {
            i += 2;
            Tok::Turnstile
        } else {
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '~' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '?' => {
                    i += 1;
                    let s = i;
                    if i >= bytes.len() || !is_ident_start(bytes[i] as char) {
                        return Err(err(start, "expected identifier after `?`".into()));
                    }
                    while i < bytes.len() && is_ident_char(bytes[i] as char) {
                        i += 1;
                    }
                    out.push((start, Tok::Meta(input[s..i].to_string())));
                    continue;
                }
                c if is_ident_start(c) => {
                    while i < bytes.len() && is_ident_char(bytes[i] as char) {
                        i += 1;
                    }
                    out.push((start, Tok::Ident(input[start..i].to_string())));
                    continue;
                }
                c if c.is_ascii_digit() => {
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                    out.push((start, Tok::Num(input[start..i].to_string())));
                    continue;
                }
                other => return Err(err(start, format!("unexpected character `{other}`"))),
            }
        };
        if matches!(
            tok,
            Tok::LParen | Tok::RParen | Tok::Comma | Tok::Dot | Tok::Not | Tok::And | Tok::Or
        ) {
            i += 1;
        }
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    /// Names of enclosing binders, innermost last.
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.toks.get(self.pos).map(|(p, _)| *p),
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}")),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.peek() == Some(&Tok::Iff) {
            self.pos += 1;
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Imp) {
            self.pos += 1;
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(k)) if k == "ALL" || k == "EX" => {
                let q = if k == "ALL" {
                    Quantifier::All
                } else {
                    Quantifier::Ex
                };
                self.pos += 1;
                let var = match self.next() {
                    Some(Tok::Ident(v)) if v != "ALL" && v != "EX" => v,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("bound variable name"));
                    }
                };
                self.expect(Tok::Dot, "`.` after bound variable")?;
                self.scope.push(var.clone());
                let body = self.formula();
                self.scope.pop();
                Ok(Formula::quant(q, var, body?))
            }
            Some(Tok::Ident(_)) => {
                let Some(Tok::Ident(name)) = self.next() else {
                    unreachable!()
                };
                let args = if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    self.term_list()?
                } else {
                    Vec::new()
                };
                Ok(Formula::Pred(name, args))
            }
            _ => Err(self.unexpected("formula")),
        }
    }

    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Comma) => {
                    self.pos += 1;
                    args.push(self.term()?);
                }
                Some(Tok::RParen) => {
                    self.pos += 1;
                    return Ok(args);
                }
                _ => return Err(self.unexpected("`,` or `)`")),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.next() {
            Some(Tok::Meta(name)) => Ok(Term::Meta(MetaVar::new(name, 0))),
            Some(Tok::Num(n)) => Ok(Term::constant(n)),
            Some(Tok::Ident(name)) if name != "ALL" && name != "EX" => {
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let args = self.term_list()?;
                    return Ok(Term::App(name, args));
                }
                match self.scope.iter().rev().position(|v| *v == name) {
                    Some(depth) => Ok(Term::Bound(depth)),
                    None => Ok(Term::constant(name)),
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("term"))
            }
        }
    }

    fn formula_list(&mut self, stop: Option<&Tok>) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == stop {
            return Ok(out);
        }
        out.push(self.formula()?);
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {t}"))),
        }
    }
}

fn parser(text: &str) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: lex(text)?,
        pos: 0,
        scope: Vec::new(),
    })
}

/// Parse a closed formula. `?name` denotes the metavariable `name` (serial 0);
/// the same name always denotes the same unknown.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = parser(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = parser(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parse `A, B |- C, D`. Either side may be empty; text without a turnstile
/// is read as a single formula on the right.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = parser(text)?;
    if !p.toks.iter().any(|(_, t)| *t == Tok::Turnstile) {
        let f = p.formula()?;
        p.finish()?;
        return Ok(Sequent::new(Vec::new(), vec![f]));
    }
    let left = p.formula_list(Some(&Tok::Turnstile))?;
    p.expect(Tok::Turnstile, "`|-`")?;
    let right = p.formula_list(None)?;
    p.finish()?;
    Ok(Sequent::new(left, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("P")
    }
    fn q() -> Formula {
        Formula::atom("Q")
    }

    #[test]
    fn precedence_of_and_over_implies() {
        let f = parse_formula("P & Q --> Q & P").unwrap();
        assert_eq!(
            f,
            Formula::imp(Formula::and(p(), q()), Formula::and(q(), p()))
        );
    }

    #[test]
    fn quantifier_takes_widest_scope() {
        let f = parse_formula("ALL x. P(x) --> P(a)").unwrap();
        let expected = Formula::all(
            "x",
            Formula::imp(
                Formula::pred("P", vec![Term::Bound(0)]),
                Formula::pred("P", vec![Term::constant("a")]),
            ),
        );
        assert_eq!(f, expected);
        let Formula::Quant(_, name, _) = &f else {
            panic!()
        };
        assert_eq!(name, "x");
    }

    #[test]
    fn incomplete_input_reports_end() {
        let err = parse_formula("P &").unwrap_err();
        assert_eq!(err.pos, None);
        assert!(err.to_string().contains("end of input"));
    }

    #[test]
    fn error_position_points_at_token() {
        let err = parse_formula("P & ) Q").unwrap_err();
        assert_eq!(err.pos, Some(4));
    }

    #[test]
    fn right_assoc_implication_left_assoc_and() {
        let f = parse_formula("P --> Q --> P").unwrap();
        assert_eq!(f, Formula::imp(p(), Formula::imp(q(), p())));
        let g = parse_formula("P & Q & P").unwrap();
        assert_eq!(g, Formula::and(Formula::and(p(), q()), p()));
        let h = parse_formula("~P | Q <-> P").unwrap();
        assert_eq!(h, Formula::iff(Formula::or(Formula::not(p()), q()), p()));
    }

    #[test]
    fn nested_binders_use_de_bruijn() {
        let f = parse_formula("ALL x. EX y. R(x, y, z)").unwrap();
        let expected = Formula::all(
            "x",
            Formula::ex(
                "y",
                Formula::pred(
                    "R",
                    vec![Term::Bound(1), Term::Bound(0), Term::constant("z")],
                ),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn metas_and_numerals() {
        let f = parse_formula("even(s(?n)) & P(0)").unwrap();
        assert_eq!(
            f,
            Formula::and(
                Formula::pred("even", vec![Term::app("s", vec![Term::meta("n", 0)])]),
                Formula::pred("P", vec![Term::constant("0")]),
            )
        );
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("A, B |- C, D").unwrap();
        assert_eq!(s.left.len(), 2);
        assert_eq!(s.right.len(), 2);
        let s = parse_sequent("|- P").unwrap();
        assert!(s.left.is_empty());
        let s = parse_sequent("P |-").unwrap();
        assert!(s.right.is_empty());
        let s = parse_sequent("P --> P").unwrap();
        assert_eq!(s, Sequent::new(vec![], vec![Formula::imp(p(), p())]));
        assert!(parse_sequent("P |- Q |- R").is_err());
    }
}
