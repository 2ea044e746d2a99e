//! Command interpreter shared by proof scripts, the REPL and the session
//! server. A session holds at most one active proof and any number of
//! definition groups.

mod protocol;
mod script;

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::kernel::Fuel;
use crate::logic::{
    parse_formula, parse_sequent, print_sequent, print_term, Formula, MetaVar, ParseError,
};
use crate::simul_defs::{
    declare_group, derive_ground, parse_groups, DefError, DefGroup, DeriveError,
};
use crate::tactics::{
    applicable, parse_tactic, GoalBundle, ProofState, TacticError, TacticParseError,
};

pub use protocol::{handle, Op, Request, Response};
pub use script::{
    needs_more, parse_command, parse_script, parse_statements, run_script, run_script_with,
    Command, ScriptError, ScriptRun, Statement,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SessionError {
    #[error("no active goal")]
    NoGoal,
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    TacticSyntax(#[from] TacticParseError),
    #[error("{0}")]
    Tactic(#[from] TacticError),
    #[error("{0}")]
    Def(#[from] DefError),
    #[error("{0}")]
    Derive(#[from] DeriveError),
    #[error("expected an atom such as even(s(0))")]
    NotAnAtom,
    #[error("no loaded group defines `{0}`")]
    UnknownPredicate(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("loading files is not available in this session")]
    NoFiles,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalView {
    pub name: String,
    pub sequent: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BindingView {
    pub meta: String,
    pub term: String,
}

/// Printable snapshot of a proof state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateView {
    pub main_goal: String,
    pub goals: Vec<GoalView>,
    pub bindings: Vec<BindingView>,
    /// Unbound metavariables occurring in open goals.
    pub pending: Vec<String>,
    pub steps: usize,
}

impl StateView {
    pub fn of(ps: &ProofState) -> StateView {
        let b = ps.bundle();
        StateView {
            main_goal: print_sequent(ps.main_goal()),
            goals: b
                .goals()
                .map(|(id, g)| GoalView {
                    name: id.to_string(),
                    sequent: print_sequent(&g.sequent),
                })
                .collect(),
            bindings: b
                .bindings()
                .map(|(m, t)| BindingView {
                    meta: m.to_string(),
                    term: print_term(t),
                })
                .collect(),
            pending: pending_metas(b).iter().map(MetaVar::to_string).collect(),
            steps: ps.steps(),
        }
    }

    /// Transcript lines: one `gN:` line per goal, then bindings and
    /// pending metavariables when there are any.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .goals
            .iter()
            .map(|g| format!("{}: {}", g.name, g.sequent))
            .collect();
        if out.is_empty() {
            out.push("no goals".to_string());
        }
        if !self.bindings.is_empty() {
            let bs: Vec<String> = self
                .bindings
                .iter()
                .map(|b| format!("{} := {}", b.meta, b.term))
                .collect();
            out.push(format!("bindings: {}", bs.join(", ")));
        }
        if !self.pending.is_empty() {
            out.push(format!("pending: {}", self.pending.join(", ")));
        }
        out
    }
}

fn pending_metas(b: &GoalBundle) -> Vec<MetaVar> {
    let mut out: Vec<MetaVar> = Vec::new();
    for (_, g) in b.goals() {
        for m in g.sequent.metas() {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

pub const HELP: &str = "\
commands:
  goal <sequent>          start a proof, e.g. goal |- P & Q --> Q & P
  apply <tactic>          apply a tactic, e.g. apply imp_r THEN DEPTH 8
  undo                    take back the last apply
  qed                     check the finished proof in the kernel
  def group <name> { .. } declare a group of Horn clauses
  def file <path>         declare every group in a file
  derive <atom>           derive a ground atom from the loaded groups
  expect ok|fail          the next command must succeed or fail
  state                   show the current goals
  applicable              list rules applicable to the first goal
  help                    show this text
  quit                    leave";

#[derive(Debug, Clone)]
pub struct Session {
    proof: Option<ProofState>,
    groups: BTreeMap<String, DefGroup>,
    fuel: Fuel,
    base_dir: Option<PathBuf>,
}

impl Default for Session {
    fn default() -> Self {
        Session::new()
    }
}

impl Session {
    pub fn new() -> Session {
        Session {
            proof: None,
            groups: BTreeMap::new(),
            fuel: Fuel::default(),
            base_dir: None,
        }
    }

    /// Allow `def file`, resolving relative paths against `dir`.
    pub fn with_files(mut self, dir: impl Into<PathBuf>) -> Session {
        self.base_dir = Some(dir.into());
        self
    }

    pub fn with_fuel(mut self, fuel: Fuel) -> Session {
        self.fuel = fuel;
        self
    }

    pub fn proof(&self) -> Option<&ProofState> {
        self.proof.as_ref()
    }

    pub fn groups(&self) -> impl Iterator<Item = &DefGroup> {
        self.groups.values()
    }

    fn active(&self) -> Result<&ProofState, SessionError> {
        self.proof.as_ref().ok_or(SessionError::NoGoal)
    }

    pub fn state(&self) -> Option<StateView> {
        self.proof.as_ref().map(StateView::of)
    }

    /// Start a proof of `text`, dropping any active one.
    pub fn new_goal(&mut self, text: &str) -> Result<StateView, SessionError> {
        let ps = ProofState::new(parse_sequent(text)?);
        let view = StateView::of(&ps);
        self.proof = Some(ps);
        Ok(view)
    }

    pub fn apply(&mut self, tactic: &str) -> Result<StateView, SessionError> {
        let t = parse_tactic(tactic)?.build();
        let next = self.active()?.apply(&t, self.fuel)?;
        let view = StateView::of(&next);
        self.proof = Some(next);
        Ok(view)
    }

    pub fn undo(&mut self) -> Result<StateView, SessionError> {
        let prev = self.active()?.undo()?;
        let view = StateView::of(&prev);
        self.proof = Some(prev);
        Ok(view)
    }

    /// Replay the finished proof and close it. Returns the theorem text.
    pub fn qed(&mut self) -> Result<String, SessionError> {
        let thm = self.active()?.qed()?;
        self.proof = None;
        Ok(print_sequent(thm.sequent()))
    }

    /// Names of the primitive rules with an outcome on the first goal.
    pub fn applicable(&self) -> Result<Vec<String>, SessionError> {
        Ok(applicable(self.active()?.bundle())
            .into_iter()
            .map(|r| r.name().to_string())
            .collect())
    }

    /// Declare every group in `src`. A group replaces any earlier group of
    /// the same name.
    pub fn load_groups(&mut self, src: &str) -> Result<Vec<String>, SessionError> {
        let mut declared = Vec::new();
        for (name, clauses) in parse_groups(src)? {
            declared.push(declare_group(&name, clauses)?);
        }
        let mut lines = Vec::new();
        for g in declared {
            let preds: Vec<&str> = g.predicates().into_iter().collect();
            lines.push(format!(
                "defined {}: {} ({} axioms)",
                g.name(),
                preds.join(", "),
                g.hypotheses().len()
            ));
            self.groups.insert(g.name().to_string(), g);
        }
        Ok(lines)
    }

    pub fn load_file(&mut self, path: &str) -> Result<Vec<String>, SessionError> {
        let dir = self.base_dir.as_ref().ok_or(SessionError::NoFiles)?;
        let full = dir.join(path);
        let src = std::fs::read_to_string(&full).map_err(|e| SessionError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        self.load_groups(&src)
    }

    /// Derive a ground atom from the first group, by name, defining its
    /// predicate.
    pub fn derive(&self, atom: &str) -> Result<String, SessionError> {
        let Formula::Pred(pred, args) = parse_formula(atom)? else {
            return Err(SessionError::NotAnAtom);
        };
        let g = self
            .groups
            .values()
            .find(|g| g.predicates().contains(pred.as_str()))
            .ok_or_else(|| SessionError::UnknownPredicate(pred.clone()))?;
        let thm = derive_ground(g, &pred, &args, self.fuel)?;
        Ok(print_sequent(thm.sequent()))
    }

    /// Run one command and return the lines it prints. `Expect` and `Quit`
    /// steer the caller's loop and print nothing here.
    pub fn execute(&mut self, cmd: &Command) -> Result<Vec<String>, SessionError> {
        Ok(match cmd {
            Command::Goal(s) => self.new_goal(s)?.lines(),
            Command::Apply(t) => self.apply(t)?.lines(),
            Command::Undo => self.undo()?.lines(),
            Command::Qed => vec![format!("theorem: {}", self.qed()?)],
            Command::DefGroup(src) => self.load_groups(src)?,
            Command::DefFile(path) => self.load_file(path)?,
            Command::Derive(a) => vec![format!("theorem: {}", self.derive(a)?)],
            Command::State => match self.state() {
                Some(v) => v.lines(),
                None => vec!["no active goal".to_string()],
            },
            Command::Applicable => vec![format!("applicable: {}", self.applicable()?.join(" "))],
            Command::Help => HELP.lines().map(String::from).collect(),
            Command::Quit | Command::Expect(_) => Vec::new(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goal_apply_qed() {
        let mut s = Session::new();
        let v = s.new_goal("P |- P").unwrap();
        assert_eq!(v.lines(), vec!["g0: P |- P"]);
        assert_eq!(s.apply("basic").unwrap().lines(), vec!["no goals"]);
        assert_eq!(s.qed().unwrap(), "P |- P");
        assert_eq!(s.qed(), Err(SessionError::NoGoal));
    }

    #[test]
    fn undo_at_root_fails() {
        let mut s = Session::new();
        s.new_goal("|- P").unwrap();
        assert_eq!(
            s.undo(),
            Err(SessionError::Tactic(TacticError::NothingToUndo))
        );
    }

    #[test]
    fn applicable_rules() {
        let mut s = Session::new();
        s.new_goal("|- P & Q").unwrap();
        let rules = s.applicable().unwrap();
        assert!(rules.contains(&"conj_r".to_string()));
        assert!(!rules.contains(&"imp_r".to_string()));
    }

    #[test]
    fn bindings_and_pending_metas_are_shown() {
        let mut s = Session::new();
        s.new_goal("P(?x), Q(?y) |- P(a)").unwrap();
        let v = s.state().unwrap();
        assert_eq!(v.pending, vec!["?x", "?y"]);
        let v = s.apply("basic").unwrap();
        assert_eq!(v.lines(), vec!["no goals", "bindings: ?x := a"]);
    }

    #[test]
    fn derive_from_loaded_group() {
        let mut s = Session::new();
        let lines = s
            .load_groups("group eo { even(0). even(s(N)) :- odd(N). odd(s(N)) :- even(N). }")
            .unwrap();
        assert_eq!(lines, vec!["defined eo: even, odd (3 axioms)"]);
        assert!(s.derive("odd(s(0))").unwrap().ends_with("|- odd(s(0))"));
        assert!(matches!(
            s.derive("even(s(0))"),
            Err(SessionError::Derive(DeriveError::NotDerivable(_)))
        ));
        assert_eq!(
            s.derive("prime(s(0))"),
            Err(SessionError::UnknownPredicate("prime".into()))
        );
        assert_eq!(s.derive("~even(0)"), Err(SessionError::NotAnAtom));
    }

    #[test]
    fn files_need_a_directory() {
        assert_eq!(
            Session::new().load_file("x.defs"),
            Err(SessionError::NoFiles)
        );
    }

    #[test]
    fn state_view_round_trips_as_data() {
        let mut s = Session::new();
        s.new_goal("|- A --> A").unwrap();
        let v = s.apply("imp_r").unwrap();
        assert_eq!(
            v.goals,
            vec![GoalView {
                name: "g1".into(),
                sequent: "A |- A".into()
            }]
        );
        assert_eq!(v.steps, 1);
        assert_eq!(v.main_goal, "|- A --> A");
    }
}
