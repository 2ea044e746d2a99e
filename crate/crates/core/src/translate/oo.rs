//! Class form: immutable fields, one method per label. A method either
//! returns an object or calls a method on `this` or on a new instance.

use super::imp::{Cond, ImpProgram, Stmt};
use super::int::Int;
use super::lin::Lin;
use super::{check_arity, RunResult, TranslateError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Receiver {
    This,
    /// Constructor call on the given field values.
    New(Vec<Lin>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OBody {
    Call(Receiver, usize),
    Return(Receiver),
    If(Cond<Lin>, Box<OBody>, Box<OBody>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OOClassProgram {
    pub class: String,
    pub fields: Vec<String>,
    pub methods: Vec<(String, OBody)>,
}

fn receiver(env: &[Lin]) -> Receiver {
    if env.iter().enumerate().all(|(k, l)| l.is_var(k)) {
        Receiver::This
    } else {
        Receiver::New(env.to_vec())
    }
}

fn body(stmts: &[Stmt], mut env: Vec<Lin>) -> OBody {
    for (i, s) in stmts.iter().enumerate() {
        match s {
            Stmt::Assign(k, e) => env[*k] = Lin::from_expr(e, &env),
            Stmt::Goto(l) => return OBody::Call(receiver(&env), *l),
            Stmt::Stop => return OBody::Return(receiver(&env)),
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
                return OBody::If(cond, Box::new(yes), Box::new(no));
            }
        }
    }
    unreachable!("parser rejects fallthrough")
}

pub fn translate_to_oo(p: &ImpProgram) -> OOClassProgram {
    let env: Vec<Lin> = (0..p.vars.len()).map(Lin::var).collect();
    OOClassProgram {
        class: "C".to_string(),
        fields: p.vars.iter().map(|(v, _)| v.clone()).collect(),
        methods: p
            .blocks
            .iter()
            .map(|b| (b.label.clone(), body(&b.stmts, env.clone())))
            .collect(),
    }
}

/// Call `entry` on an instance built from `init`. Each method entry is one
/// step; objects are never modified.
pub fn interp_oo(
    c: &OOClassProgram,
    entry: &str,
    init: &[Int],
    fuel: u64,
) -> Result<RunResult, TranslateError> {
    let mut at = c
        .methods
        .iter()
        .position(|(m, _)| m == entry)
        .ok_or_else(|| TranslateError::UnknownEntry(entry.to_string()))?;
    check_arity(c.fields.len(), init)?;
    let mut this: Vec<Int> = init.to_vec();
    let mut steps = 0;
    loop {
        if steps == fuel {
            return Ok(RunResult::exhausted(steps));
        }
        steps += 1;
        let mut b = &c.methods[at].1;
        while let OBody::If(cond, yes, no) = b {
            b = if cond.op.holds(&cond.lhs.eval(&this), &cond.rhs.eval(&this)) {
                yes
            } else {
                no
            };
        }
        let (recv, next) = match b {
            OBody::Call(r, m) => (r, Some(*m)),
            OBody::Return(r) => (r, None),
            OBody::If(..) => unreachable!(),
        };
        if let Receiver::New(args) = recv {
            this = args.iter().map(|a| a.eval(&this)).collect();
        }
        match next {
            Some(m) => at = m,
            None => return Ok(RunResult::terminated(this, steps)),
        }
    }
}

fn show_receiver(r: &Receiver, c: &OOClassProgram) -> String {
    match r {
        Receiver::This => "this".to_string(),
        Receiver::New(args) => {
            let args: Vec<String> = args.iter().map(|a| a.show(&c.fields)).collect();
            format!("new {}({})", c.class, args.join(","))
        }
    }
}

fn show_body(b: &OBody, c: &OOClassProgram, indent: &str) -> String {
    match b {
        OBody::Call(r, m) => format!("{}.{}()", show_receiver(r, c), c.methods[*m].0),
        OBody::Return(r) => show_receiver(r, c),
        OBody::If(cond, yes, no) => {
            let inner = format!("{indent}  ");
            let branch = |b: &OBody| match b {
                OBody::If(..) => format!("(\n{inner}  {})", show_body(b, c, &inner)),
                _ => show_body(b, c, &inner),
            };
            format!(
                "if {} {} {} then {}\n{indent}else {}",
                cond.lhs.show(&c.fields),
                cond.op.symbol(),
                cond.rhs.show(&c.fields),
                branch(yes),
                branch(no)
            )
        }
    }
}

pub fn emit_oo_source(c: &OOClassProgram) -> String {
    let mut out = format!("class {} {{\n", c.class);
    out.push_str(&format!("  final {}: int\n\n", c.fields.join(", ")));
    let params: Vec<String> = c.fields.iter().map(|f| format!("{f}{f}")).collect();
    let inits: Vec<String> = c.fields.iter().map(|f| format!("{f} = {f}{f}")).collect();
    out.push_str("  // constructor\n");
    out.push_str(&format!(
        "  {}({}: int) {{ {} }}\n",
        c.class,
        params.join(","),
        inits.join("; ")
    ));
    for (name, b) in &c.methods {
        out.push('\n');
        match b {
            OBody::If(..) => {
                out.push_str(&format!(
                    "  {} {}() {{\n    {} }}\n",
                    c.class,
                    name,
                    show_body(b, c, "    ")
                ));
            }
            _ => out.push_str(&format!(
                "  {} {}() {{ {} }}\n",
                c.class,
                name,
                show_body(b, c, "  ")
            )),
        }
    }
    out.push_str("}\n");
    out
}
