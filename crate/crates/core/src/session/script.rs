//! Proof scripts: one command per line or per `;`-separated piece, with `#`
//! comments. A `def group` may span lines until its braces balance.

use std::fmt;

use super::Session;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Goal(String),
    Apply(String),
    Undo,
    Qed,
    /// Source text of one or more groups, starting at `group`.
    DefGroup(String),
    DefFile(String),
    Derive(String),
    /// `true` for `expect ok`.
    Expect(bool),
    State,
    Applicable,
    Help,
    Quit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub line: usize,
    pub text: String,
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

fn rest<'a>(word: &str, arg: &'a str) -> Result<&'a str, String> {
    if arg.is_empty() {
        Err(format!("`{word}` needs an argument"))
    } else {
        Ok(arg)
    }
}

fn bare(word: &str, arg: &str, c: Command) -> Result<Command, String> {
    if arg.is_empty() {
        Ok(c)
    } else {
        Err(format!("`{word}` takes no argument"))
    }
}

/// Parse a single command, already stripped of comments.
pub fn parse_command(text: &str) -> Result<Command, String> {
    let text = text.trim();
    let (word, arg) = match text.find(char::is_whitespace) {
        Some(i) => (&text[..i], text[i..].trim()),
        None => (text, ""),
    };
    match word {
        "goal" => Ok(Command::Goal(rest(word, arg)?.to_string())),
        "apply" => Ok(Command::Apply(rest(word, arg)?.to_string())),
        "derive" => Ok(Command::Derive(rest(word, arg)?.to_string())),
        "def" => {
            if arg.starts_with("group") {
                Ok(Command::DefGroup(arg.to_string()))
            } else if let Some(path) = arg.strip_prefix("file") {
                Ok(Command::DefFile(rest("def file", path.trim())?.to_string()))
            } else {
                Err("expected `def group <name> { ... }` or `def file <path>`".to_string())
            }
        }
        "expect" => match arg {
            "ok" => Ok(Command::Expect(true)),
            "fail" => Ok(Command::Expect(false)),
            _ => Err("expected `expect ok` or `expect fail`".to_string()),
        },
        "undo" => bare(word, arg, Command::Undo),
        "qed" => bare(word, arg, Command::Qed),
        "state" => bare(word, arg, Command::State),
        "applicable" => bare(word, arg, Command::Applicable),
        "help" => bare(word, arg, Command::Help),
        "quit" => bare(word, arg, Command::Quit),
        "" => Err("empty command".to_string()),
        _ => Err(format!("unknown command `{word}`")),
    }
}

/// Split `src` into statements. Fails on an unknown command, an unclosed
/// brace or a trailing `expect`.
pub fn parse_script(src: &str) -> Result<Vec<Statement>, ScriptError> {
    let out = parse_statements(src)?;
    if let Some(last) = out.last() {
        if matches!(last.command, Command::Expect(_)) {
            return Err(ScriptError {
                line: last.line,
                message: "`expect` must be followed by a command".to_string(),
            });
        }
    }
    Ok(out)
}

/// Like [`parse_script`], but a trailing `expect` is allowed, as when
/// reading one line at a time.
pub fn parse_statements(src: &str) -> Result<Vec<Statement>, ScriptError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 1;
    let mut depth = 0usize;
    let mut flush = |cur: &mut String, line: usize| -> Result<(), ScriptError> {
        let text = cur.trim().to_string();
        cur.clear();
        if !text.is_empty() {
            let command = parse_command(&text).map_err(|message| ScriptError { line, message })?;
            out.push(Statement {
                line,
                text,
                command,
            });
        }
        Ok(())
    };
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let code = raw.split('#').next().unwrap_or("");
        for ch in code.chars() {
            if cur.trim().is_empty() {
                start = line;
            }
            match ch {
                '{' => depth += 1,
                '}' if depth == 0 => {
                    return Err(ScriptError {
                        line,
                        message: "unmatched `}`".to_string(),
                    })
                }
                '}' => depth -= 1,
                ';' if depth == 0 => {
                    flush(&mut cur, start)?;
                    continue;
                }
                _ => {}
            }
            cur.push(ch);
        }
        if depth == 0 {
            flush(&mut cur, start)?;
        } else {
            cur.push('\n');
        }
    }
    if depth > 0 {
        return Err(ScriptError {
            line: start,
            message: "unclosed `{`".to_string(),
        });
    }
    flush(&mut cur, start)?;
    Ok(out)
}

/// Whether `src` leaves a `{` open, so an interactive reader should wait
/// for more lines.
pub fn needs_more(src: &str) -> bool {
    let depth = src
        .lines()
        .flat_map(|l| l.split('#').next().unwrap_or("").chars())
        .fold(0i64, |d, c| match c {
            '{' => d + 1,
            '}' => d - 1,
            _ => d,
        });
    depth > 0
}

/// Transcript and exit code of a script run: 0 when every command
/// succeeded and every expectation held, 1 on the first unexpected
/// outcome, 2 if the script does not parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptRun {
    pub transcript: String,
    pub exit_code: i32,
}

impl fmt::Display for ScriptRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.transcript)
    }
}

pub fn run_script(src: &str, session: &mut Session) -> ScriptRun {
    run_script_with(src, |s| {
        session.execute(&s.command).map_err(|e| e.to_string())
    })
}

/// Run a script against any statement executor, such as a remote session.
pub fn run_script_with(
    src: &str,
    mut exec: impl FnMut(&Statement) -> Result<Vec<String>, String>,
) -> ScriptRun {
    let stmts = match parse_script(src) {
        Ok(s) => s,
        Err(e) => {
            return ScriptRun {
                transcript: format!("error (line {}): {}\n", e.line, e.message),
                exit_code: 2,
            }
        }
    };
    let mut t = String::new();
    let mut expect: Option<bool> = None;
    for s in &stmts {
        if let Command::Expect(ok) = s.command {
            t.push_str(&format!("> {}\n", s.text));
            expect = Some(ok);
            continue;
        }
        t.push_str(&format!("> {}\n", first_line(&s.text)));
        if s.command == Command::Quit {
            break;
        }
        let want_ok = expect.take().unwrap_or(true);
        match exec(s) {
            Ok(lines) => {
                for l in &lines {
                    t.push_str(l);
                    t.push('\n');
                }
                if !want_ok {
                    t.push_str(&format!(
                        "error (line {}): expected failure, but the command succeeded\n",
                        s.line
                    ));
                    return ScriptRun {
                        transcript: t,
                        exit_code: 1,
                    };
                }
            }
            Err(e) if !want_ok => t.push_str(&format!("failed as expected: {e}\n")),
            Err(e) => {
                t.push_str(&format!("error (line {}): {e}\n", s.line));
                return ScriptRun {
                    transcript: t,
                    exit_code: 1,
                };
            }
        }
    }
    ScriptRun {
        transcript: t,
        exit_code: 0,
    }
}

/// Multi-line group definitions are echoed by their first line.
fn first_line(text: &str) -> String {
    match text.split_once('\n') {
        Some((head, _)) => format!("{} ...", head.trim_end()),
        None => text.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> ScriptRun {
        run_script(src, &mut Session::new())
    }

    #[test]
    fn commands_parse() {
        assert_eq!(parse_command("goal |- P"), Ok(Command::Goal("|- P".into())));
        assert_eq!(parse_command("  qed "), Ok(Command::Qed));
        assert_eq!(parse_command("expect fail"), Ok(Command::Expect(false)));
        assert_eq!(
            parse_command("def file a.defs"),
            Ok(Command::DefFile("a.defs".into()))
        );
        assert!(parse_command("qed now").is_err());
        assert!(parse_command("goal").is_err());
        assert!(parse_command("prove |- P")
            .unwrap_err()
            .contains("unknown command"));
    }

    #[test]
    fn semicolons_and_comments_split_statements() {
        let s = parse_script("goal |- P --> P   # the goal\napply DEPTH 8; qed\n\n").unwrap();
        let lines: Vec<(usize, &str)> = s.iter().map(|s| (s.line, s.text.as_str())).collect();
        assert_eq!(
            lines,
            vec![(1, "goal |- P --> P"), (2, "apply DEPTH 8"), (2, "qed")]
        );
    }

    #[test]
    fn groups_span_lines() {
        let s =
            parse_script("def group eo {\n  even(0).\n  odd(s(N)) :- even(N).\n}\nstate").unwrap();
        assert_eq!(s.len(), 2);
        assert!(matches!(&s[0].command, Command::DefGroup(g) if g.contains("odd(s(N))")));
        assert_eq!((s[0].line, s[1].line), (1, 5));
        assert_eq!(parse_script("def group g {\n p.\n").unwrap_err().line, 1);
    }

    #[test]
    fn successful_proof() {
        let r = run("goal |- P & Q --> Q & P\napply DEPTH 8; qed");
        assert_eq!(r.exit_code, 0);
        assert_eq!(
            r.transcript,
            "> goal |- P & Q --> Q & P\ng0: |- P & Q --> Q & P\n> apply DEPTH 8\nno goals\n> qed\ntheorem: |- P & Q --> Q & P\n"
        );
    }

    #[test]
    fn expected_failure() {
        let r = run("goal |- P\nexpect fail\napply DEPTH 8");
        assert_eq!(r.exit_code, 0, "{r}");
        assert!(r
            .transcript
            .ends_with("failed as expected: tactic failed\n"));
        let r = run("goal |- P --> P\nexpect fail\napply DEPTH 8");
        assert_eq!(r.exit_code, 1);
        assert!(r.transcript.contains("error (line 3): expected failure"));
    }

    #[test]
    fn malformed_tactic_reports_position() {
        let r = run("goal |- P\napply imp_r THEN frob\nqed");
        assert_eq!(r.exit_code, 1);
        assert!(
            r.transcript
                .ends_with("error (line 2): bad tactic at position 11: unknown tactic `frob`\n"),
            "{r}"
        );
    }

    #[test]
    fn parse_errors_exit_2_before_running() {
        let r = run("goal |- P\nfrobnicate\n");
        assert_eq!(
            r,
            ScriptRun {
                transcript: "error (line 2): unknown command `frobnicate`\n".into(),
                exit_code: 2
            }
        );
        assert_eq!(run("goal |- P\nexpect ok").exit_code, 2);
    }

    #[test]
    fn open_braces_need_more_input() {
        assert!(needs_more("def group eo {\n even(0)."));
        assert!(!needs_more("def group eo { even(0). }"));
        assert!(!needs_more("state # {"));
    }

    #[test]
    fn quit_stops_the_script() {
        let r = run("quit\ngoal |- P\napply basic");
        assert_eq!((r.exit_code, r.transcript.as_str()), (0, "> quit\n"));
    }

    #[test]
    fn transcripts_are_deterministic() {
        let src = "goal ALL x. P(x) |- P(a) & P(b)\napply conj_r\napply all_l g1\nstate\napply DEPTH 6\nqed";
        let a = run(src);
        assert_eq!(a.exit_code, 0, "{a}");
        assert_eq!(a, run(src));
    }
}
