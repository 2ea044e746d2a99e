//! Goto programs and their translations into class form and into mutually
//! recursive functions, with an interpreter for each form and a grid
//! check that the three agree.

mod fun;
mod imp;
mod int;
mod lin;
mod oo;

use std::fmt;

pub use fun::{emit_fun_source, interp_fun, translate_to_fun, FBody, FunProgram};
pub use imp::{interp_imp, parse_imp, Block, CmpOp, Cond, Expr, ImpProgram, Stmt};
pub use int::Int;
pub use lin::Lin;
pub use oo::{emit_oo_source, interp_oo, translate_to_oo, OBody, OOClassProgram, Receiver};

/// Three mutually recursive labels over three variables.
pub const SAMPLE_PROGRAM: &str = "\
var x := 0; y := 0; z := 0;
F:  x := x+1; goto G
G:  if y<z then goto F else (y := x+y; goto H)
H:  if z>0 then (z := z-x; goto F) else stop
";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}: undefined label `{label}`")]
    UndefinedLabel { label: String, line: usize },
    #[error("block `{0}` can fall through without `goto` or `stop`")]
    Fallthrough(String),
    #[error("program has no blocks")]
    EmptyProgram,
    #[error("unknown entry label `{0}`")]
    UnknownEntry(String),
    #[error("expected {expected} initial value(s), got {got}")]
    Arity { expected: usize, got: usize },
}

pub(crate) fn check_arity(expected: usize, init: &[Int]) -> Result<(), TranslateError> {
    if expected == init.len() {
        Ok(())
    } else {
        Err(TranslateError::Arity {
            expected,
            got: init.len(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Terminated,
    FuelExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub status: Status,
    /// Present iff the run terminated.
    pub final_state: Option<Vec<Int>>,
    pub steps: u64,
}

impl RunResult {
    pub(crate) fn terminated(state: Vec<Int>, steps: u64) -> RunResult {
        RunResult {
            status: Status::Terminated,
            final_state: Some(state),
            steps,
        }
    }

    pub(crate) fn exhausted(steps: u64) -> RunResult {
        RunResult {
            status: Status::FuelExhausted,
            final_state: None,
            steps,
        }
    }
}

pub fn show_state(s: &[Int]) -> String {
    let parts: Vec<String> = s.iter().map(Int::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for RunResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.final_state {
            Some(s) => write!(f, "terminated {} in {} steps", show_state(s), self.steps),
            None => write!(f, "fuel exhausted after {} steps", self.steps),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub entry: String,
    pub init: Vec<Int>,
    pub imp: RunResult,
    pub oo: RunResult,
    pub fun: RunResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EquivReport {
    pub cases: usize,
    pub terminated: usize,
    pub exhausted: usize,
    pub disagreements: Vec<Disagreement>,
}

impl EquivReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

impl fmt::Display for EquivReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cases: {}", self.cases)?;
        writeln!(f, "terminated: {}", self.terminated)?;
        writeln!(f, "fuel exhausted: {}", self.exhausted)?;
        writeln!(f, "disagreements: {}", self.disagreements.len())?;
        for d in &self.disagreements {
            writeln!(
                f,
                "{} {}: imp {}; oo {}; fun {}",
                d.entry,
                show_state(&d.init),
                d.imp,
                d.oo,
                d.fun
            )?;
        }
        Ok(())
    }
}

/// Run all three forms on every entry and every initial state in the
/// product of `ranges` (one inclusive range per variable). Runs agree when
/// status, final state and step count all match.
pub fn check_equiv(
    p: &ImpProgram,
    ranges: &[(i64, i64)],
    entries: &[&str],
    fuel: u64,
) -> Result<EquivReport, TranslateError> {
    for e in entries {
        if p.label_index(e).is_none() {
            return Err(TranslateError::UnknownEntry(e.to_string()));
        }
    }
    if ranges.len() != p.vars.len() {
        return Err(TranslateError::Arity {
            expected: p.vars.len(),
            got: ranges.len(),
        });
    }
    let oo = translate_to_oo(p);
    let fp = translate_to_fun(p);
    let mut report = EquivReport::default();
    for entry in entries {
        let mut state: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        if ranges.iter().any(|r| r.0 > r.1) {
            continue;
        }
        loop {
            let init: Vec<Int> = state.iter().map(|n| Int::from(*n)).collect();
            let a = interp_imp(p, entry, &init, fuel)?;
            let b = interp_oo(&oo, entry, &init, fuel)?;
            let c = interp_fun(&fp, entry, &init, fuel)?;
            report.cases += 1;
            match a.status {
                Status::Terminated => report.terminated += 1,
                Status::FuelExhausted => report.exhausted += 1,
            }
            if a != b || a != c {
                report.disagreements.push(Disagreement {
                    entry: entry.to_string(),
                    init,
                    imp: a,
                    oo: b,
                    fun: c,
                });
            }
            if !advance(&mut state, ranges) {
                break;
            }
        }
    }
    Ok(report)
}

/// Next grid point, last variable fastest. False after the last one.
fn advance(state: &mut [i64], ranges: &[(i64, i64)]) -> bool {
    for k in (0..state.len()).rev() {
        if state[k] < ranges[k].1 {
            state[k] += 1;
            return true;
        }
        state[k] = ranges[k].0;
    }
    false
}
