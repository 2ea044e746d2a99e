//! The goto language and its direct interpreter.
//!
//! ```text
//! var x := 0; y := 0; z := 0;
//! F:  x := x+1; goto G
//! G:  if y<z then goto F else (y := x+y; goto H)
//! H:  if z>0 then (z := z-x; goto F) else stop
//! ```

use super::int::Int;
use super::{RunResult, TranslateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Gt,
    Eq,
    Le,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Gt => ">",
            CmpOp::Eq => "=",
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
        }
    }

    pub fn holds(self, a: &Int, b: &Int) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Gt => a > b,
            CmpOp::Eq => a == b,
            CmpOp::Le => a <= b,
            CmpOp::Ge => a >= b,
        }
    }
}

/// Integer expression; variables are indices into the program's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Int),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, state: &[Int]) -> Int {
        match self {
            Expr::Num(n) => n.clone(),
            Expr::Var(i) => state[*i].clone(),
            Expr::Neg(e) => -&e.eval(state),
            Expr::Add(a, b) => &a.eval(state) + &b.eval(state),
            Expr::Sub(a, b) => &a.eval(state) - &b.eval(state),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cond<E> {
    pub op: CmpOp,
    pub lhs: E,
    pub rhs: E,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Assign(usize, Expr),
    /// Index of the target block.
    Goto(usize),
    If(Cond<Expr>, Vec<Stmt>, Option<Vec<Stmt>>),
    Stop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub label: String,
    pub stmts: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpProgram {
    pub vars: Vec<(String, Int)>,
    pub blocks: Vec<Block>,
}

impl ImpProgram {
    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(|(v, _)| v.as_str()).collect()
    }

    pub fn initial_state(&self) -> Vec<Int> {
        self.vars.iter().map(|(_, n)| n.clone()).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.blocks.iter().map(|b| b.label.as_str()).collect()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.label == label)
    }
}

// ---------------------------------------------------------------- parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Assign,
    Colon,
    Semi,
    Open,
    Close,
    Plus,
    Minus,
    Cmp(CmpOp),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, TranslateError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let start = i;
        let two = |s: &str| src[i..].starts_with(s);
        let tok = if c.is_ascii_whitespace() {
            i += 1;
            continue;
        } else if two("//") || c == '#' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
            continue;
        } else if two(":=") {
            i += 2;
            Tok::Assign
        } else if two("<=") {
            i += 2;
            Tok::Cmp(CmpOp::Le)
        } else if two(">=") {
            i += 2;
            Tok::Cmp(CmpOp::Ge)
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Num(src[start..i].to_string())
        } else {
            i += 1;
            match c {
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                '(' => Tok::Open,
                ')' => Tok::Close,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '<' => Tok::Cmp(CmpOp::Lt),
                '>' => Tok::Cmp(CmpOp::Gt),
                '=' => Tok::Cmp(CmpOp::Eq),
                _ => return Err(syntax(src, start, format!("unexpected character `{c}`"))),
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

fn syntax(src: &str, pos: usize, message: impl Into<String>) -> TranslateError {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |n| n + 1) + 1;
    TranslateError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

const KEYWORDS: [&str; 6] = ["var", "goto", "if", "then", "else", "stop"];

/// Statements before label resolution.
enum RawStmt {
    Assign(usize, Expr),
    Goto(usize, String),
    If(Cond<Expr>, Vec<RawStmt>, Option<Vec<RawStmt>>),
    Stop,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    i: usize,
    vars: Vec<(String, Int)>,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.src.len(), |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TranslateError> {
        Err(syntax(self.src, self.pos(), message))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.i + 1).map(|t| &t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == k) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn name(&mut self, what: &str) -> Result<String, TranslateError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn at_label(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()))
            && self.peek2() == Some(&Tok::Colon)
    }

    fn literal(&mut self) -> Result<Int, TranslateError> {
        let neg = self.eat(&Tok::Minus);
        match self.peek() {
            Some(Tok::Num(n)) => {
                let v: Int = n.parse().expect("digits");
                self.i += 1;
                Ok(if neg { -&v } else { v })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn decls(&mut self) -> Result<(), TranslateError> {
        if !self.keyword("var") {
            return Ok(());
        }
        loop {
            let pos = self.pos();
            let v = self.name("a variable name")?;
            if self.vars.iter().any(|(w, _)| *w == v) {
                return Err(syntax(
                    self.src,
                    pos,
                    format!("variable `{v}` declared twice"),
                ));
            }
            if !self.eat(&Tok::Assign) {
                return self.err("expected `:=`");
            }
            let n = self.literal()?;
            self.vars.push((v, n));
            self.eat(&Tok::Semi);
            if self.at_label() || self.peek().is_none() {
                return Ok(());
            }
            self.keyword("var");
        }
    }

    fn atom(&mut self) -> Result<Expr, TranslateError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Expr::Num(n.parse().expect("digits")))
            }
            Some(Tok::Minus) => {
                self.i += 1;
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            Some(Tok::Open) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::Close) {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Ident(v)) if !KEYWORDS.contains(&v.as_str()) => {
                let pos = self.pos();
                self.i += 1;
                match self.vars.iter().position(|(w, _)| *w == v) {
                    Some(k) => Ok(Expr::Var(k)),
                    None => Err(syntax(self.src, pos, format!("undeclared variable `{v}`"))),
                }
            }
            _ => self.err("expected an expression"),
        }
    }

    fn expr(&mut self) -> Result<Expr, TranslateError> {
        let mut e = self.atom()?;
        loop {
            if self.eat(&Tok::Plus) {
                e = Expr::Add(Box::new(e), Box::new(self.atom()?));
            } else if self.eat(&Tok::Minus) {
                e = Expr::Sub(Box::new(e), Box::new(self.atom()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn cond(&mut self) -> Result<Cond<Expr>, TranslateError> {
        let lhs = self.expr()?;
        let Some(Tok::Cmp(op)) = self.peek().cloned() else {
            return self.err("expected a comparison");
        };
        self.i += 1;
        Ok(Cond {
            op,
            lhs,
            rhs: self.expr()?,
        })
    }

    fn stmt(&mut self) -> Result<RawStmt, TranslateError> {
        let pos = self.pos();
        if self.keyword("stop") {
            return Ok(RawStmt::Stop);
        }
        if self.keyword("goto") {
            let l = self.name("a label")?;
            return Ok(RawStmt::Goto(pos, l));
        }
        if self.keyword("if") {
            let c = self.cond()?;
            if !self.keyword("then") {
                return self.err("expected `then`");
            }
            let t = self.branch()?;
            let e = if self.keyword("else") {
                Some(self.branch()?)
            } else {
                None
            };
            return Ok(RawStmt::If(c, t, e));
        }
        let v = self.name("a statement")?;
        let Some(k) = self.vars.iter().position(|(w, _)| *w == v) else {
            return Err(syntax(self.src, pos, format!("undeclared variable `{v}`")));
        };
        if !self.eat(&Tok::Assign) {
            return self.err("expected `:=`");
        }
        Ok(RawStmt::Assign(k, self.expr()?))
    }

    /// A single statement or a parenthesized sequence.
    fn branch(&mut self) -> Result<Vec<RawStmt>, TranslateError> {
        if self.eat(&Tok::Open) {
            let mut out = vec![self.stmt()?];
            while self.eat(&Tok::Semi) {
                if self.peek() == Some(&Tok::Close) {
                    break;
                }
                out.push(self.stmt()?);
            }
            if !self.eat(&Tok::Close) {
                return self.err("expected `)`");
            }
            Ok(out)
        } else {
            Ok(vec![self.stmt()?])
        }
    }

    fn block(&mut self) -> Result<(usize, String, Vec<RawStmt>), TranslateError> {
        let pos = self.pos();
        let label = self.name("a label")?;
        if !self.eat(&Tok::Colon) {
            return self.err("expected `:` after label");
        }
        let mut stmts = vec![self.stmt()?];
        while self.eat(&Tok::Semi) {
            if self.at_label() || self.peek().is_none() {
                break;
            }
            stmts.push(self.stmt()?);
        }
        if !(self.at_label() || self.peek().is_none()) {
            return self.err("expected `;` or a new label");
        }
        Ok((pos, label, stmts))
    }
}

fn resolve(src: &str, labels: &[String], stmts: Vec<RawStmt>) -> Result<Vec<Stmt>, TranslateError> {
    stmts
        .into_iter()
        .map(|s| {
            Ok(match s {
                RawStmt::Assign(k, e) => Stmt::Assign(k, e),
                RawStmt::Goto(pos, l) => match labels.iter().position(|m| *m == l) {
                    Some(i) => Stmt::Goto(i),
                    None => {
                        return Err(TranslateError::UndefinedLabel {
                            label: l,
                            line: syntax_line(src, pos),
                        })
                    }
                },
                RawStmt::If(c, t, e) => {
                    let e = e.map(|e| resolve(src, labels, e)).transpose()?;
                    Stmt::If(c, resolve(src, labels, t)?, e)
                }
                RawStmt::Stop => Stmt::Stop,
            })
        })
        .collect()
}

fn syntax_line(src: &str, pos: usize) -> usize {
    src[..pos].matches('\n').count() + 1
}

/// Whether running `stmts` always ends in `goto` or `stop`.
fn terminates(stmts: &[Stmt]) -> bool {
    for (i, s) in stmts.iter().enumerate() {
        match s {
            Stmt::Goto(_) | Stmt::Stop => return true,
            Stmt::If(_, t, Some(e)) if terminates(t) && terminates(e) => return true,
            Stmt::If(_, t, e) => {
                let rest = &stmts[i + 1..];
                let ok = |b: &[Stmt]| terminates(b) || terminates(&[b, rest].concat());
                if !ok(t) || !e.as_deref().is_none_or(ok) {
                    return false;
                }
            }
            Stmt::Assign(..) => {}
        }
    }
    false
}

pub fn parse_imp(src: &str) -> Result<ImpProgram, TranslateError> {
    let mut p = Parser {
        src,
        toks: lex(src)?,
        i: 0,
        vars: Vec::new(),
    };
    p.decls()?;
    let mut raw = Vec::new();
    while p.peek().is_some() {
        raw.push(p.block()?);
    }
    if raw.is_empty() {
        return Err(TranslateError::EmptyProgram);
    }
    let labels: Vec<String> = raw.iter().map(|(_, l, _)| l.clone()).collect();
    for (k, (pos, l, _)) in raw.iter().enumerate() {
        if labels[..k].contains(l) {
            return Err(syntax(src, *pos, format!("label `{l}` defined twice")));
        }
    }
    let mut blocks = Vec::new();
    for (_, label, stmts) in raw {
        let stmts = resolve(src, &labels, stmts)?;
        if !terminates(&stmts) {
            return Err(TranslateError::Fallthrough(label));
        }
        blocks.push(Block { label, stmts });
    }
    Ok(ImpProgram {
        vars: p.vars,
        blocks,
    })
}

// ---------------------------------------------------------------- running

enum Flow {
    Next,
    Jump(usize),
    Halt,
}

fn exec(stmts: &[Stmt], state: &mut [Int]) -> Flow {
    for s in stmts {
        match s {
            Stmt::Assign(k, e) => state[*k] = e.eval(state),
            Stmt::Goto(l) => return Flow::Jump(*l),
            Stmt::Stop => return Flow::Halt,
            Stmt::If(c, t, e) => {
                let branch = if c.op.holds(&c.lhs.eval(state), &c.rhs.eval(state)) {
                    Some(t)
                } else {
                    e.as_ref()
                };
                if let Some(b) = branch {
                    match exec(b, state) {
                        Flow::Next => {}
                        other => return other,
                    }
                }
            }
        }
    }
    Flow::Next
}

/// Run with mutable variables. Each block entry is one step.
pub fn interp_imp(
    p: &ImpProgram,
    entry: &str,
    init: &[Int],
    fuel: u64,
) -> Result<RunResult, TranslateError> {
    let mut at = p
        .label_index(entry)
        .ok_or_else(|| TranslateError::UnknownEntry(entry.to_string()))?;
    super::check_arity(p.vars.len(), init)?;
    let mut state = init.to_vec();
    let mut steps = 0;
    loop {
        if steps == fuel {
            return Ok(RunResult::exhausted(steps));
        }
        steps += 1;
        match exec(&p.blocks[at].stmts, &mut state) {
            Flow::Jump(l) => at = l,
            Flow::Halt => return Ok(RunResult::terminated(state, steps)),
            Flow::Next => unreachable!("parser rejects fallthrough"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::translate::{Status, SAMPLE_PROGRAM};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|n| Int::from(*n)).collect()
    }

    #[test]
    fn sample_program_parses() {
        let p = parse_imp(SAMPLE_PROGRAM).unwrap();
        assert_eq!(p.labels(), vec!["F", "G", "H"]);
        assert_eq!(p.var_names(), vec!["x", "y", "z"]);
        assert_eq!(p.initial_state(), ints(&[0, 0, 0]));
    }

    #[test]
    fn sample_runs() {
        let p = parse_imp(SAMPLE_PROGRAM).unwrap();
        let r = interp_imp(&p, "F", &ints(&[0, 0, 0]), 1000).unwrap();
        assert_eq!(r.final_state, Some(ints(&[1, 1, 0])));
        assert_eq!(r.steps, 3);
        let r = interp_imp(&p, "F", &ints(&[0, 0, 1]), 1000).unwrap();
        assert_eq!(r.status, Status::FuelExhausted);
        assert_eq!(r.steps, 1000);
        let r = interp_imp(&p, "H", &ints(&[1, 1, 0]), 10).unwrap();
        assert_eq!((r.final_state, r.steps), (Some(ints(&[1, 1, 0])), 1));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_imp(""), Err(TranslateError::EmptyProgram));
        assert_eq!(parse_imp("var x := 0;"), Err(TranslateError::EmptyProgram));
        assert!(matches!(
            parse_imp("L: goto M"),
            Err(TranslateError::UndefinedLabel { .. })
        ));
        assert_eq!(
            parse_imp("var x := 0; L: x := 1"),
            Err(TranslateError::Fallthrough("L".into()))
        );
        assert_eq!(
            parse_imp("var x := 0; L: if x > 0 then stop"),
            Err(TranslateError::Fallthrough("L".into()))
        );
        assert!(matches!(
            parse_imp("L: y := 1; stop"),
            Err(TranslateError::Syntax { .. })
        ));
        assert!(matches!(
            parse_imp("L: stop\nL: stop"),
            Err(TranslateError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_imp("L: stop stop"),
            Err(TranslateError::Syntax { col: 9, .. })
        ));
    }

    #[test]
    fn if_without_else_continues() {
        let p = parse_imp("var x := 0; L: if x > 0 then x := 0 - 5; x := x+1; stop").unwrap();
        let r = interp_imp(&p, "L", &ints(&[3]), 10).unwrap();
        assert_eq!(r.final_state, Some(ints(&[-4])));
        let r = interp_imp(&p, "L", &ints(&[-3]), 10).unwrap();
        assert_eq!(r.final_state, Some(ints(&[-2])));
    }

    #[test]
    fn unknown_entry() {
        let p = parse_imp("L: stop").unwrap();
        assert_eq!(
            interp_imp(&p, "M", &[], 5),
            Err(TranslateError::UnknownEntry("M".into()))
        );
    }
}
