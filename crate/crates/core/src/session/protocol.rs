//! JSON messages of the session service. [`handle`] maps a request and a
//! session to a response, so the server adds only transport and locking.

use serde::{Deserialize, Serialize};

use super::{parse_command, Command, Session, StateView};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    NewGoal,
    State,
    Apply,
    Undo,
    Qed,
    Applicable,
    LoadGroup,
    /// One script command, as typed at the REPL.
    Command,
}

impl Op {
    /// Whether the op may create the session it names.
    pub fn creates_session(self) -> bool {
        matches!(self, Op::NewGoal | Op::LoadGroup | Op::Command)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub op: Op,
    pub session: String,
    #[serde(default)]
    pub payload: Payload,
}

impl Request {
    pub fn new(op: Op, session: impl Into<String>, text: Option<&str>) -> Request {
        Request {
            op,
            session: session.into(),
            payload: Payload {
                text: text.map(String::from),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Response {
    pub ok: bool,
    /// The proof state after the request, if a proof is active.
    pub state: Option<StateView>,
    pub error: Option<String>,
    /// Op-specific output: the theorem for `qed`, rule names for
    /// `applicable`, printed lines for `load_group` and `command`.
    #[serde(default)]
    pub result: Vec<String>,
}

impl Response {
    pub fn error(message: impl Into<String>, state: Option<StateView>) -> Response {
        Response {
            ok: false,
            state,
            error: Some(message.into()),
            result: Vec::new(),
        }
    }
}

pub fn handle(session: &mut Session, req: &Request) -> Response {
    let text = req.payload.text.as_deref();
    let need_text = || text.ok_or_else(|| format!("`{}` needs payload.text", op_name(req.op)));
    let result: Result<Vec<String>, String> = (|| match req.op {
        Op::NewGoal => session
            .new_goal(need_text()?)
            .map(|_| Vec::new())
            .map_err(|e| e.to_string()),
        Op::State => Ok(Vec::new()),
        Op::Apply => session
            .apply(need_text()?)
            .map(|_| Vec::new())
            .map_err(|e| e.to_string()),
        Op::Undo => session
            .undo()
            .map(|_| Vec::new())
            .map_err(|e| e.to_string()),
        Op::Qed => session.qed().map(|t| vec![t]).map_err(|e| e.to_string()),
        Op::Applicable => session.applicable().map_err(|e| e.to_string()),
        Op::LoadGroup => session.load_groups(need_text()?).map_err(|e| e.to_string()),
        Op::Command => match parse_command(need_text()?)? {
            Command::Quit | Command::Expect(_) => {
                Err("`quit` and `expect` are handled by the client".to_string())
            }
            c => session.execute(&c).map_err(|e| e.to_string()),
        },
    })();
    match result {
        Ok(result) => Response {
            ok: true,
            state: session.state(),
            error: None,
            result,
        },
        Err(e) => Response::error(e, session.state()),
    }
}

/// The wire name of `op`.
fn op_name(op: Op) -> &'static str {
    match op {
        Op::NewGoal => "new_goal",
        Op::State => "state",
        Op::Apply => "apply",
        Op::Undo => "undo",
        Op::Qed => "qed",
        Op::Applicable => "applicable",
        Op::LoadGroup => "load_group",
        Op::Command => "command",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(op: Op, text: Option<&str>) -> Request {
        Request::new(op, "s", text)
    }

    #[test]
    fn prove_over_the_protocol() {
        let mut s = Session::new();
        assert!(handle(&mut s, &req(Op::NewGoal, Some("P |- P"))).ok);
        let r = handle(&mut s, &req(Op::Apply, Some("basic")));
        assert!(r.ok);
        assert!(r.state.unwrap().goals.is_empty());
        let r = handle(&mut s, &req(Op::Qed, None));
        assert_eq!((r.ok, r.result), (true, vec!["P |- P".to_string()]));
        assert_eq!(r.state, None);
    }

    #[test]
    fn errors_keep_the_state() {
        let mut s = Session::new();
        handle(&mut s, &req(Op::NewGoal, Some("|- P & Q")));
        let r = handle(&mut s, &req(Op::Undo, None));
        assert_eq!(r.error.as_deref(), Some("nothing to undo"));
        assert_eq!(r.state.unwrap().goals[0].sequent, "|- P & Q");
        let r = handle(&mut s, &req(Op::Apply, None));
        assert_eq!(r.error.as_deref(), Some("`apply` needs payload.text"));
    }

    #[test]
    fn applicable_is_a_dry_run() {
        let mut s = Session::new();
        handle(&mut s, &req(Op::NewGoal, Some("|- P & Q")));
        let r = handle(&mut s, &req(Op::Applicable, None));
        assert!(
            r.result.contains(&"conj_r".to_string()) && !r.result.contains(&"imp_r".to_string())
        );
        assert_eq!(r.state.unwrap().steps, 0);
    }

    #[test]
    fn commands_print_like_the_repl() {
        let mut s = Session::new();
        let r = handle(&mut s, &req(Op::Command, Some("goal |- A --> A")));
        assert_eq!(r.result, vec!["g0: |- A --> A"]);
        let r = handle(&mut s, &req(Op::Command, Some("frob")));
        assert_eq!(r.error.as_deref(), Some("unknown command `frob`"));
    }
}
