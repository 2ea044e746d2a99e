//! Functional form: one function per label over the whole state tuple.

use super::imp::{Cond, ImpProgram, Stmt};
use super::int::Int;
use super::lin::Lin;
use super::{check_arity, RunResult, TranslateError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FBody {
    Call(usize, Vec<Lin>),
    Tuple(Vec<Lin>),
    If(Cond<Lin>, Box<FBody>, Box<FBody>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunProgram {
    pub params: Vec<String>,
    pub functions: Vec<(String, FBody)>,
}

fn body(stmts: &[Stmt], mut env: Vec<Lin>) -> FBody {
    for (i, s) in stmts.iter().enumerate() {
        match s {
            Stmt::Assign(k, e) => env[*k] = Lin::from_expr(e, &env),
            Stmt::Goto(l) => return FBody::Call(*l, env),
            Stmt::Stop => return FBody::Tuple(env),
            Stmt::If(c, t, e) => {
                let rest = &stmts[i + 1..];
                let cond = Cond {
                    op: c.op,
                    lhs: Lin::from_expr(&c.lhs, &env),
                    rhs: Lin::from_expr(&c.rhs, &env),
                };
                let yes = body(&[t.as_slice(), rest].concat(), env.clone());
                let no = match e {
                    Some(e) => body(&[e.as_slice(), rest].concat(), env),
                    None => body(rest, env),
                };
                return FBody::If(cond, Box::new(yes), Box::new(no));
            }
        }
    }
    unreachable!("parser rejects fallthrough")
}

pub fn translate_to_fun(p: &ImpProgram) -> FunProgram {
    let env: Vec<Lin> = (0..p.vars.len()).map(Lin::var).collect();
    FunProgram {
        params: p.vars.iter().map(|(v, _)| v.clone()).collect(),
        functions: p
            .blocks
            .iter()
            .map(|b| (b.label.clone(), body(&b.stmts, env.clone())))
            .collect(),
    }
}

/// Apply `entry` to `init`. Tail calls are followed in a loop; each
/// function entry is one step.
pub fn interp_fun(
    f: &FunProgram,
    entry: &str,
    init: &[Int],
    fuel: u64,
) -> Result<RunResult, TranslateError> {
    let mut at = f
        .functions
        .iter()
        .position(|(n, _)| n == entry)
        .ok_or_else(|| TranslateError::UnknownEntry(entry.to_string()))?;
    check_arity(f.params.len(), init)?;
    let mut args: Vec<Int> = init.to_vec();
    let mut steps = 0;
    loop {
        if steps == fuel {
            return Ok(RunResult::exhausted(steps));
        }
        steps += 1;
        let mut b = &f.functions[at].1;
        loop {
            match b {
                FBody::If(c, yes, no) => {
                    b = if c.op.holds(&c.lhs.eval(&args), &c.rhs.eval(&args)) {
                        yes
                    } else {
                        no
                    };
                }
                FBody::Call(g, exprs) => {
                    args = exprs.iter().map(|e| e.eval(&args)).collect();
                    at = *g;
                    break;
                }
                FBody::Tuple(exprs) => {
                    let out = exprs.iter().map(|e| e.eval(&args)).collect();
                    return Ok(RunResult::terminated(out, steps));
                }
            }
        }
    }
}

fn tuple(xs: &[Lin], names: &[String]) -> String {
    xs.iter()
        .map(|x| x.show(names))
        .collect::<Vec<_>>()
        .join(",")
}

fn show_body(b: &FBody, f: &FunProgram, indent: &str) -> String {
    match b {
        FBody::Call(g, xs) => format!("{}({})", f.functions[*g].0, tuple(xs, &f.params)),
        FBody::Tuple(xs) => format!("({})", tuple(xs, &f.params)),
        FBody::If(c, yes, no) => {
            let inner = format!("{indent}  ");
            let branch = |b: &FBody| match b {
                FBody::If(..) => format!("(\n{inner}  {})", show_body(b, f, &inner)),
                _ => show_body(b, f, &inner),
            };
            format!(
                "if {}{}{} then {}\n{indent}else {}",
                c.lhs.show(&f.params),
                c.op.symbol(),
                c.rhs.show(&f.params),
                branch(yes),
                branch(no)
            )
        }
    }
}

pub fn emit_fun_source(f: &FunProgram) -> String {
    let ty = match f.params.len() {
        2 => "int_pair",
        3 => "int_triple",
        _ => "int_tuple",
    };
    let fields = vec!["int"; f.params.len()].join(" * ");
    let fields = if fields.is_empty() {
        "unit".to_string()
    } else {
        fields
    };
    let mut out = format!("type {ty} = {fields}\n\n");
    for (i, (name, b)) in f.functions.iter().enumerate() {
        let (lead, pad) = if i == 0 {
            ("fun ", "      ")
        } else {
            ("and\n    ", "      ")
        };
        out.push_str(&format!(
            "{lead}{name}({}: int): {ty} =\n{pad}{}\n",
            f.params.join(","),
            show_body(b, f, pad)
        ));
    }
    if out.ends_with('\n') {
        out.pop();
        out.push_str(";\n");
    }
    out
}
