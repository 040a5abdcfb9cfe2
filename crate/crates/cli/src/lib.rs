//! Parser, evaluator and drivers behind the `artseries` command.

pub mod ast;
pub mod config;
pub mod eval;
pub mod parse;
pub mod session;

pub use ast::{BinOp, Expr, Func, Stmt};
pub use config::{Emit, SessionConfig};
pub use eval::{EvalError, Session, Value};
pub use parse::{parse, parse_stmt, ParseError};
pub use session::{run_batch, run_repl, RunError};
