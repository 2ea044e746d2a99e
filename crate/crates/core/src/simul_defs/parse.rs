//! `group evenodd { even(0). even(s(N)) :- odd(N). odd(s(N)) :- even(N). }`
//!
//! Identifiers starting with an uppercase letter are variables. `#` starts
//! a comment running to the end of the line.

use super::{Atom, ClauseDef, DefError, PTerm};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Open,
    Close,
    Comma,
    Dot,
    Neck,
    LBrace,
    RBrace,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, DefError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            _ if c.is_whitespace() => i += 1,
            '#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '(' | ')' | ',' | '.' | '{' | '}' => {
                i += 1;
                out.push((
                    start,
                    match c {
                        '(' => Tok::Open,
                        ')' => Tok::Close,
                        ',' => Tok::Comma,
                        '.' => Tok::Dot,
                        '{' => Tok::LBrace,
                        _ => Tok::RBrace,
                    },
                ));
            }
            ':' if bytes.get(i + 1) == Some(&b'-') => {
                i += 2;
                out.push((start, Tok::Neck));
            }
            _ if c.is_ascii_alphanumeric() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(DefError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{c}`"),
                })
            }
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
    fn err<T>(&self, message: &str) -> Result<T, DefError> {
        let pos = self.toks.get(self.i).map_or(self.end, |t| t.0);
        Err(DefError::Syntax {
            pos,
            message: message.to_string(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), DefError> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(&format!("expected {what}"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, DefError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => self.err(&format!("expected {what}")),
        }
    }

    fn args(&mut self) -> Result<Vec<PTerm>, DefError> {
        let mut args = Vec::new();
        if self.eat(&Tok::Open) {
            loop {
                args.push(self.term()?);
                if self.eat(&Tok::Close) {
                    break;
                }
                self.expect(Tok::Comma, "`,` or `)`")?;
            }
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<PTerm, DefError> {
        let name = self.ident("a term")?;
        if name.starts_with(|c: char| c.is_ascii_uppercase()) {
            return Ok(PTerm::Var(name));
        }
        Ok(PTerm::App(name, self.args()?))
    }

    fn atom(&mut self) -> Result<Atom, DefError> {
        let pred = self.ident("a predicate")?;
        if pred.starts_with(|c: char| c.is_ascii_uppercase() || c.is_ascii_digit()) {
            self.i -= 1;
            return self.err("predicate names start with a lowercase letter");
        }
        Ok(Atom {
            pred,
            args: self.args()?,
        })
    }

    fn clause(&mut self) -> Result<ClauseDef, DefError> {
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.eat(&Tok::Neck) {
            loop {
                body.push(self.atom()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::Dot, "`.` after clause")?;
        Ok(ClauseDef { head, body })
    }

    fn group(&mut self) -> Result<(String, Vec<ClauseDef>), DefError> {
        if self.ident("`group`")? != "group" {
            self.i -= 1;
            return self.err("expected `group`");
        }
        let name = self.ident("a group name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut clauses = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if self.peek().is_none() {
                return self.err("expected `}`");
            }
            clauses.push(self.clause()?);
        }
        Ok((name, clauses))
    }
}

/// Every group in `src`, in order.
pub fn parse_groups(src: &str) -> Result<Vec<(String, Vec<ClauseDef>)>, DefError> {
    let mut p = Parser {
        toks: lex(src)?,
        i: 0,
        end: src.len(),
    };
    let mut out = Vec::new();
    while p.peek().is_some() {
        out.push(p.group()?);
    }
    Ok(out)
}
