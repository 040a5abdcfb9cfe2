//! Batch and interactive drivers.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::config::Emit;
use crate::eval::{EvalError, Session, Value};
use crate::parse::{parse_stmt, ParseError};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("line {line}: `{text}`: {source}")]
    Parse { line: usize, text: String, source: ParseError },
    #[error("line {line}: `{text}`: {source}")]
    Eval { line: usize, text: String, source: EvalError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A script line with its comment removed, or `None` when nothing is left.
fn statement_text(line: &str) -> Option<&str> {
    let code = line.split('#').next().unwrap_or("").trim();
    (!code.is_empty()).then_some(code)
}

fn render(value: &Value, emit: Emit) -> String {
    match emit {
        Emit::Text => value.to_string(),
        Emit::Json => value.to_json(),
    }
}

/// Evaluates one script line, returning the rendered result if it held a
/// statement.
pub fn run_line(session: &mut Session, line_no: usize, line: &str) -> Result<Option<String>, RunError> {
    let Some(text) = statement_text(line) else {
        return Ok(None);
    };
    let stmt = parse_stmt(text).map_err(|mut e| {
        e.line = line_no;
        RunError::Parse { line: line_no, text: text.to_string(), source: e }
    })?;
    let value = session
        .exec(&stmt)
        .map_err(|source| RunError::Eval { line: line_no, text: text.to_string(), source })?;
    Ok(Some(render(&value, session.config.emit)))
}

/// Runs every statement in order, writing one result line each, and stops at
/// the first failure.
pub fn run_batch(session: &mut Session, input: impl BufRead, mut out: impl Write) -> Result<(), RunError> {
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if let Some(rendered) = run_line(session, i + 1, &line)? {
            writeln!(out, "{rendered}")?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Read-eval-print loop; errors are reported and the session continues.
pub fn run_repl(session: &mut Session, input: impl BufRead, mut out: impl Write, mut err: impl Write, prompt: bool) -> io::Result<()> {
    let mut lines = input.lines();
    let mut line_no = 0;
    loop {
        if prompt {
            write!(out, "> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        line_no += 1;
        match run_line(session, line_no, &line?) {
            Ok(Some(rendered)) => writeln!(out, "{rendered}")?,
            Ok(None) => {}
            Err(e) => writeln!(err, "error: {e}")?,
        }
    }
    if prompt {
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SessionConfig;

    #[test]
    fn batch_reports_the_failing_statement() {
        let mut s = Session::new(SessionConfig::default());
        let script = "f = 1 - x\n# comment\ninv(x - x)\nf\n";
        let mut out = Vec::new();
        let err = run_batch(&mut s, script.as_bytes(), &mut out).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("line 3"), "{message}");
        assert!(message.contains("inv(x - x)"), "{message}");
        assert_eq!(String::from_utf8(out).unwrap().lines().count(), 1);
    }

    #[test]
    fn repl_keeps_going_after_errors() {
        let mut s = Session::new(SessionConfig::default());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        run_repl(&mut s, "1 + * x\na = 2\na * 3\n".as_bytes(), &mut out, &mut err, false).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "2\n6\n");
        assert!(String::from_utf8(err).unwrap().contains("1:5"));
    }
}
