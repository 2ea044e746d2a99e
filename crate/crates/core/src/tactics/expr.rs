//! Text syntax for tactics.
//!
//! ```text
//! t ::= t ORELSE t | t THEN t | REPEAT t | TRY t | ALLGOALS t
//!     | basic [g] | rule <name> [g] | <name> [g] | DEPTH n | ID | FAIL | ( t )
//! ```
//!
//! THEN binds tighter than ORELSE; both associate to the left.

use std::fmt;

use crate::kernel::Rule;

use super::goal::GoalId;
use super::object::TacticObject;
use super::{all_goals, depth_tac, fail_tac, id_tac, orelse, repeat, rule_tac, then, try_};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TacticExpr {
    Rule(Rule, Option<GoalId>),
    Depth(u32),
    Id,
    Fail,
    Then(Box<TacticExpr>, Box<TacticExpr>),
    OrElse(Box<TacticExpr>, Box<TacticExpr>),
    Repeat(Box<TacticExpr>),
    Try(Box<TacticExpr>),
    AllGoals(Box<TacticExpr>),
}

impl TacticExpr {
    pub fn build(&self) -> TacticObject {
        match self {
            TacticExpr::Rule(r, g) => rule_tac(*r, *g),
            TacticExpr::Depth(n) => depth_tac(*n),
            TacticExpr::Id => id_tac(),
            TacticExpr::Fail => fail_tac(),
            TacticExpr::Then(a, b) => then(a.build(), b.build()),
            TacticExpr::OrElse(a, b) => orelse(a.build(), b.build()),
            TacticExpr::Repeat(t) => repeat(t.build()),
            TacticExpr::Try(t) => try_(t.build()),
            TacticExpr::AllGoals(t) => all_goals(t.build()),
        }
    }
}

impl fmt::Display for TacticExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(e: &TacticExpr) -> u8 {
            match e {
                TacticExpr::OrElse(..) => 0,
                TacticExpr::Then(..) => 1,
                _ => 2,
            }
        }
        fn sub(f: &mut fmt::Formatter<'_>, e: &TacticExpr, min: u8) -> fmt::Result {
            if prec(e) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            TacticExpr::Rule(r, None) => write!(f, "{r}"),
            TacticExpr::Rule(r, Some(g)) => write!(f, "{r} {g}"),
            TacticExpr::Depth(n) => write!(f, "DEPTH {n}"),
            TacticExpr::Id => f.write_str("ID"),
            TacticExpr::Fail => f.write_str("FAIL"),
            TacticExpr::Then(a, b) => {
                sub(f, a, 1)?;
                f.write_str(" THEN ")?;
                sub(f, b, 2)
            }
            TacticExpr::OrElse(a, b) => {
                sub(f, a, 0)?;
                f.write_str(" ORELSE ")?;
                sub(f, b, 1)
            }
            TacticExpr::Repeat(t) => {
                f.write_str("REPEAT ")?;
                sub(f, t, 2)
            }
            TacticExpr::Try(t) => {
                f.write_str("TRY ")?;
                sub(f, t, 2)
            }
            TacticExpr::AllGoals(t) => {
                f.write_str("ALLGOALS ")?;
                sub(f, t, 2)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad tactic at position {pos}: {message}")]
pub struct TacticParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(u32),
    Open,
    Close,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, TacticParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '(' || c == ')' {
            chars.next();
            out.push((pos, if c == '(' { Tok::Open } else { Tok::Close }));
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                word.push(c);
                chars.next();
            }
            if word.chars().all(|c| c.is_ascii_digit()) {
                let n = word.parse().map_err(|_| TacticParseError {
                    pos,
                    message: "number too large".into(),
                })?;
                out.push((pos, Tok::Num(n)));
            } else {
                out.push((pos, Tok::Word(word)));
            }
        } else {
            return Err(TacticParseError {
                pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TacticParseError> {
        Err(TacticParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn peek_word(&self) -> Option<&str> {
        match self.toks.get(self.i) {
            Some((_, Tok::Word(w))) => Some(w),
            _ => None,
        }
    }

    fn orelse(&mut self) -> Result<TacticExpr, TacticParseError> {
        let mut t = self.then()?;
        while self.peek_word() == Some("ORELSE") {
            self.i += 1;
            t = TacticExpr::OrElse(Box::new(t), Box::new(self.then()?));
        }
        Ok(t)
    }

    fn then(&mut self) -> Result<TacticExpr, TacticParseError> {
        let mut t = self.prefix()?;
        while self.peek_word() == Some("THEN") {
            self.i += 1;
            t = TacticExpr::Then(Box::new(t), Box::new(self.prefix()?));
        }
        Ok(t)
    }

    fn prefix(&mut self) -> Result<TacticExpr, TacticParseError> {
        let wrap: fn(Box<TacticExpr>) -> TacticExpr = match self.peek_word() {
            Some("REPEAT") => TacticExpr::Repeat,
            Some("TRY") => TacticExpr::Try,
            Some("ALLGOALS") => TacticExpr::AllGoals,
            _ => return self.atom(),
        };
        self.i += 1;
        Ok(wrap(Box::new(self.prefix()?)))
    }

    fn goal(&mut self) -> Option<GoalId> {
        let g = self.peek_word()?.parse().ok()?;
        self.i += 1;
        Some(g)
    }

    fn atom(&mut self) -> Result<TacticExpr, TacticParseError> {
        let Some((_, tok)) = self.toks.get(self.i).cloned() else {
            return self.err("expected a tactic");
        };
        match tok {
            Tok::Open => {
                self.i += 1;
                let t = self.orelse()?;
                if self.toks.get(self.i).map(|t| &t.1) != Some(&Tok::Close) {
                    return self.err("expected `)`");
                }
                self.i += 1;
                Ok(t)
            }
            Tok::Word(w) => match w.as_str() {
                "ID" => {
                    self.i += 1;
                    Ok(TacticExpr::Id)
                }
                "FAIL" => {
                    self.i += 1;
                    Ok(TacticExpr::Fail)
                }
                "DEPTH" => {
                    self.i += 1;
                    match self.toks.get(self.i) {
                        Some((_, Tok::Num(n))) => {
                            let n = *n;
                            self.i += 1;
                            Ok(TacticExpr::Depth(n))
                        }
                        _ => self.err("DEPTH needs a number"),
                    }
                }
                "rule" => {
                    self.i += 1;
                    match self.peek_word().map(|w| w.parse::<Rule>()) {
                        Some(Ok(r)) => {
                            self.i += 1;
                            Ok(TacticExpr::Rule(r, self.goal()))
                        }
                        _ => self.err("expected a rule name"),
                    }
                }
                other => match other.parse::<Rule>() {
                    Ok(r) => {
                        self.i += 1;
                        Ok(TacticExpr::Rule(r, self.goal()))
                    }
                    Err(_) => self.err(format!("unknown tactic `{other}`")),
                },
            },
            Tok::Close => self.err("unexpected `)`"),
            Tok::Num(_) => self.err("unexpected number"),
        }
    }
}

pub fn parse_tactic(src: &str) -> Result<TacticExpr, TacticParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        i: 0,
        end: src.len(),
    };
    let t = p.orelse()?;
    if p.i < p.toks.len() {
        return p.err("unexpected input after tactic");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TacticExpr {
        parse_tactic(s).unwrap()
    }

    #[test]
    fn precedence() {
        let t = p("imp_r THEN basic ORELSE ID THEN FAIL");
        assert!(matches!(t, TacticExpr::OrElse(..)));
        assert_eq!(t.to_string(), "imp_r THEN basic ORELSE ID THEN FAIL");
        assert_eq!(
            p("REPEAT conj_r THEN basic"),
            p("(REPEAT conj_r) THEN basic")
        );
    }

    #[test]
    fn forms() {
        assert_eq!(
            p("rule conj_r g3"),
            TacticExpr::Rule(Rule::ConjR, Some(GoalId(3)))
        );
        assert_eq!(
            p("basic g2"),
            TacticExpr::Rule(Rule::Basic, Some(GoalId(2)))
        );
        assert_eq!(p("DEPTH 12"), TacticExpr::Depth(12));
        assert_eq!(
            p("TRY (all_l THEN basic)").to_string(),
            "TRY (all_l THEN basic)"
        );
        let t = p("(ID ORELSE FAIL) THEN ID");
        assert_eq!(parse_tactic(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_tactic("basic THEN").unwrap_err().pos, 10);
        assert_eq!(parse_tactic("imp_r THEN frob").unwrap_err().pos, 11);
        assert_eq!(parse_tactic("DEPTH x").unwrap_err().pos, 6);
        assert_eq!(parse_tactic("(ID").unwrap_err().pos, 3);
        assert_eq!(parse_tactic("ID ID").unwrap_err().pos, 3);
        assert_eq!(parse_tactic("ID $").unwrap_err().pos, 3);
    }
}
