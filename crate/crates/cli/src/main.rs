//! `ootp`: prove scripts, run a REPL, translate goto programs, or serve
//! proof sessions over HTTP.

use std::io::{self, BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ootp_client::{Client, ClientError, RemoteSession};
use ootp_core::session::{
    needs_more, parse_statements, run_script_with, Command, Session, Statement,
};
use ootp_core::translate::{
    check_equiv, emit_fun_source, emit_oo_source, parse_imp, translate_to_fun, translate_to_oo,
    TranslateError,
};
use tokio::runtime::Runtime;

#[derive(Parser)]
#[command(
    name = "ootp",
    version,
    about = "Simultaneous-goal prover with tactic objects"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a proof script and print its transcript.
    Prove {
        file: PathBuf,
        /// Run against a session server instead of in process.
        #[arg(long, value_name = "URL")]
        connect: Option<String>,
    },
    /// Interactive proof session.
    Repl {
        #[arg(long, value_name = "URL")]
        connect: Option<String>,
    },
    /// Translate a goto program into class or functional form.
    Translate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        /// Check that the three interpreters agree on a grid of inputs.
        #[arg(long)]
        check: bool,
        /// Inclusive range for every variable.
        #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
        /// Comma-separated entry labels; all labels by default.
        #[arg(long, value_delimiter = ',')]
        entries: Vec<String>,
        /// Write the translation here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Serve proof sessions over HTTP.
    Serve {
        #[arg(long, default_value_t = 7878)]
        port: u16,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Oo,
    Fun,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Cmd::Prove { file, connect } => prove(&file, connect.as_deref()),
        Cmd::Repl { connect } => repl(connect.as_deref()),
        Cmd::Translate {
            input,
            to,
            check,
            range,
            fuel,
            entries,
            output,
        } => translate(
            &input,
            to,
            check.then_some((range.as_str(), fuel, entries)),
            output.as_deref(),
        ),
        Cmd::Serve { port } => serve(port),
    };
    ExitCode::from(code)
}

fn runtime() -> Runtime {
    tokio::runtime::Builder::new_current_thread()
        .enable_all()
        .build()
        .expect("tokio runtime")
}

/// A unique session id for one CLI run.
fn session_id() -> String {
    let nanos = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_nanos());
    format!("cli-{}-{nanos}", std::process::id())
}

/// Runs statements against a server. File definitions are read here and
/// sent as group text, since the server has no file access.
struct Remote {
    rt: Runtime,
    session: RemoteSession,
    base_dir: PathBuf,
}

impl Remote {
    fn new(url: &str, base_dir: PathBuf) -> Remote {
        Remote {
            rt: runtime(),
            session: Client::new(url).session(session_id()),
            base_dir,
        }
    }

    fn exec(&self, s: &Statement) -> Result<Vec<String>, String> {
        let res = match &s.command {
            Command::DefFile(path) => {
                let src = std::fs::read_to_string(self.base_dir.join(path))
                    .map_err(|e| format!("cannot read {path}: {e}"))?;
                self.rt.block_on(self.session.load_group(&src))
            }
            _ => self.rt.block_on(self.session.command(&s.text)),
        };
        res.map_err(|e| match e {
            ClientError::Server(m) => m,
            e => e.to_string(),
        })
    }
}

fn script_dir(file: &Path) -> PathBuf {
    file.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn prove(file: &Path, connect: Option<&str>) -> u8 {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("ootp: cannot read {}: {e}", file.display());
            return 2;
        }
    };
    let run = match connect {
        None => {
            let mut session = Session::new().with_files(script_dir(file));
            run_script_with(&src, |s| {
                session.execute(&s.command).map_err(|e| e.to_string())
            })
        }
        Some(url) => {
            let remote = Remote::new(url, script_dir(file));
            run_script_with(&src, |s| remote.exec(s))
        }
    };
    print!("{run}");
    run.exit_code as u8
}

fn repl(connect: Option<&str>) -> u8 {
    let mut local = Session::new().with_files(".");
    let remote = connect.map(|url| Remote::new(url, PathBuf::from(".")));
    let mut exec = |s: &Statement| match &remote {
        Some(r) => r.exec(s),
        None => local.execute(&s.command).map_err(|e| e.to_string()),
    };
    let tty = io::stdin().is_terminal();
    let prompt = |more: bool| {
        if tty {
            print!("{}", if more { "...> " } else { "ootp> " });
            let _ = io::stdout().flush();
        }
    };
    let mut expect: Option<bool> = None;
    let mut buf = String::new();
    prompt(false);
    for line in io::stdin().lock().lines() {
        let Ok(line) = line else { break };
        buf.push_str(&line);
        buf.push('\n');
        if needs_more(&buf) {
            prompt(true);
            continue;
        }
        let chunk = std::mem::take(&mut buf);
        let stmts = match parse_statements(&chunk) {
            Ok(s) => s,
            Err(e) => {
                println!("error: {}", e.message);
                prompt(false);
                continue;
            }
        };
        for s in &stmts {
            match s.command {
                Command::Quit => return 0,
                Command::Expect(ok) => {
                    expect = Some(ok);
                    continue;
                }
                _ => {}
            }
            let want_ok = expect.take().unwrap_or(true);
            match exec(s) {
                Ok(lines) => {
                    for l in lines {
                        println!("{l}");
                    }
                    if !want_ok {
                        println!("error: expected failure, but the command succeeded");
                    }
                }
                Err(e) if !want_ok => println!("failed as expected: {e}"),
                Err(e) => println!("error: {e}"),
            }
        }
        prompt(false);
    }
    0
}

fn parse_range(text: &str) -> Option<(i64, i64)> {
    let (a, b) = text.split_once("..")?;
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a <= b).then_some((a, b))
}

fn translate(
    input: &Path,
    to: Target,
    check: Option<(&str, u64, Vec<String>)>,
    output: Option<&Path>,
) -> u8 {
    let src = match std::fs::read_to_string(input) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("ootp: cannot read {}: {e}", input.display());
            return 2;
        }
    };
    let p = match parse_imp(&src) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("ootp: {}: {e}", input.display());
            return 2;
        }
    };
    // Check options are validated before anything is printed.
    let check = match check {
        None => None,
        Some((range, fuel, entries)) => {
            let Some(r) = parse_range(range) else {
                eprintln!("ootp: bad range `{range}`, expected a..b with a <= b");
                return 2;
            };
            if let Some(e) = entries.iter().find(|e| p.label_index(e).is_none()) {
                eprintln!("ootp: {}", TranslateError::UnknownEntry(e.clone()));
                return 1;
            }
            Some((r, fuel, entries))
        }
    };
    let text = match to {
        Target::Oo => emit_oo_source(&translate_to_oo(&p)),
        Target::Fun => emit_fun_source(&translate_to_fun(&p)),
    };
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("ootp: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    let Some((r, fuel, entries)) = check else {
        return 0;
    };
    let entries: Vec<&str> = if entries.is_empty() {
        p.labels()
    } else {
        entries.iter().map(String::as_str).collect()
    };
    match check_equiv(&p, &vec![r; p.vars.len()], &entries, fuel) {
        Ok(report) => {
            if output.is_none() {
                println!();
            }
            print!("{report}");
            if report.agrees() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("ootp: {e}");
            1
        }
    }
}

fn serve(port: u16) -> u8 {
    match runtime().block_on(ootp_server::serve(port)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("ootp: {e}");
            1
        }
    }
}
