//! Recursive-descent parser.
//!
//! ```text
//! stmt   := ident '=' expr | expr
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ['^' ('(' rational [';' integer] ')' | number)]
//! atom   := number | number'i' | 'i' | 'x' | ident | call | '(' expr ')'
//! call   := ident '(' [expr (',' expr)*] [';' integer] ')'
//! ```

use std::fmt;

use artseries::Exponent;

use crate::ast::{Arity, BinOp, Expr, Func, Stmt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Exponent),
    Imag(Exponent),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(r) => write!(f, "number {r}"),
            Tok::Imag(r) => write!(f, "imaginary {r}i"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let literal: String = chars[start..i].iter().collect();
            let value = literal.parse::<Exponent>().map_err(|_| ParseError {
                line: tl,
                col: tc,
                message: format!("malformed number {literal:?}"),
            })?;
            // `2i` is an imaginary literal unless the identifier goes on
            let imaginary = chars.get(i) == Some(&'i') && !chars.get(i + 1).is_some_and(|d| is_ident_char(*d));
            let tok = if imaginary {
                i += 1;
                Tok::Imag(value)
            } else {
                Tok::Num(value)
            };
            col += i - start;
            out.push(Token { tok, line: tl, col: tc });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(name), line: tl, col: tc });
            continue;
        }
        if "+-*/^(),;=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: tl, col: tc });
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError { line: tl, col: tc, message: format!("unexpected character {c:?}") });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError { line: t.line, col: t.col, message: message.into() }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!("expected {wanted}, found {}", self.peek().tok))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let stmt = match (self.peek().tok.clone(), self.peek_at(1).clone()) {
            (Tok::Ident(name), Tok::Sym('=')) => {
                if name == "x" || name == "i" || Func::from_name(&name).is_some() {
                    return Err(self.error_here(format!("cannot assign to reserved name '{name}'")));
                }
                self.next();
                self.next();
                Stmt::Assign(name, self.expr()?)
            }
            _ => Stmt::Expr(self.expr()?),
        };
        if self.peek().tok != Tok::End {
            return Err(self.unexpected("an operator or end of statement"));
        }
        Ok(stmt)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(acc);
            };
            acc = Expr::binary(op, acc, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(acc);
            };
            acc = Expr::binary(op, acc, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        if let Tok::Num(r) = &self.peek().tok {
            let exponent = r.clone();
            self.next();
            return Ok(Expr::Pow { base: Box::new(base), exponent, branch: None });
        }
        self.expect('(')?;
        let exponent = self.rational()?;
        let branch = if self.eat(';') { Some(self.integer()?) } else { None };
        self.expect(')')?;
        Ok(Expr::Pow { base: Box::new(base), exponent, branch })
    }

    fn rational(&mut self) -> Result<Exponent, ParseError> {
        let negative = self.eat('-');
        let Tok::Num(a) = self.peek().tok.clone() else {
            return Err(self.unexpected("a rational exponent"));
        };
        self.next();
        let mut value = a;
        if self.eat('/') {
            let Tok::Num(b) = self.peek().tok.clone() else {
                return Err(self.unexpected("a denominator"));
            };
            if b.is_zero() {
                return Err(self.error_here("zero denominator"));
            }
            self.next();
            value = value / b;
        }
        Ok(if negative { -value } else { value })
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let negative = self.eat('-');
        let value = match &self.peek().tok {
            Tok::Num(r) if r.is_integer() => r.to_i64(),
            _ => None,
        };
        let Some(n) = value else {
            return Err(self.unexpected("an integer branch index"));
        };
        self.next();
        Ok(if negative { -n } else { n })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let token = self.peek().clone();
        match token.tok {
            Tok::Num(r) => {
                self.next();
                Ok(Expr::Num(r))
            }
            Tok::Imag(r) => {
                self.next();
                Ok(Expr::Imag(r))
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.next();
                if self.peek().tok == Tok::Sym('(') {
                    return self.call(&name, token.line, token.col);
                }
                Ok(match name.as_str() {
                    "x" => Expr::X,
                    "i" => Expr::Imag(Exponent::one()),
                    _ => Expr::Name(name),
                })
            }
            _ => Err(self.unexpected("an operand")),
        }
    }

    fn call(&mut self, name: &str, line: usize, col: usize) -> Result<Expr, ParseError> {
        let func = Func::from_name(name)
            .ok_or_else(|| ParseError { line, col, message: format!("unknown function '{name}'") })?;
        self.expect('(')?;
        let mut args = Vec::new();
        let mut branch = None;
        if !matches!(self.peek().tok, Tok::Sym(')') | Tok::Sym(';')) {
            args.push(self.expr()?);
            while self.eat(',') {
                args.push(self.expr()?);
            }
        }
        if self.peek().tok == Tok::Sym(';') {
            if !func.takes_branch() {
                return Err(self.error_here(format!("{name} takes no branch index")));
            }
            self.next();
            branch = Some(self.integer()?);
        }
        self.expect(')')?;
        let ok = match func.arity() {
            Arity::Exactly(k) => args.len() == k,
            Arity::AtLeast(k) => args.len() >= k,
        };
        if !ok {
            let wanted = match func.arity() {
                Arity::Exactly(k) => format!("{k}"),
                Arity::AtLeast(k) => format!("at least {k}"),
            };
            return Err(ParseError {
                line,
                col,
                message: format!("{name} takes {wanted} argument(s), got {}", args.len()),
            });
        }
        Ok(Expr::Call { func, args, branch })
    }
}

pub fn parse_stmt(text: &str) -> Result<Stmt, ParseError> {
    let tokens = lex(text)?;
    Parser { tokens, pos: 0 }.statement()
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}
