//! Expression trees and their canonical printed form.
//!
//! Printing inserts only the parentheses the grammar needs, so
//! `parse(print(e)) == e` for every tree the parser can produce.

use std::fmt;

use artseries::Exponent;
use num::{BigInt, One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Inv,
    D,
    Compose,
    CompInv,
    Lagrange,
    Dual,
    Coeff,
    Elementary,
    Complete,
    PowerSum,
    Monomial,
    Basis,
    Omega,
    Triangular,
    Embed,
    FactSum,
    Integral,
}

/// How many positional arguments a call takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Exactly(usize),
    AtLeast(usize),
}

impl Func {
    pub const ALL: [Func; 17] = [
        Func::Inv,
        Func::D,
        Func::Compose,
        Func::CompInv,
        Func::Lagrange,
        Func::Dual,
        Func::Coeff,
        Func::Elementary,
        Func::Complete,
        Func::PowerSum,
        Func::Monomial,
        Func::Basis,
        Func::Omega,
        Func::Triangular,
        Func::Embed,
        Func::FactSum,
        Func::Integral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Inv => "inv",
            Func::D => "D",
            Func::Compose => "compose",
            Func::CompInv => "compinv",
            Func::Lagrange => "lagrange",
            Func::Dual => "dual",
            Func::Coeff => "coeff",
            Func::Elementary => "e",
            Func::Complete => "h",
            Func::PowerSum => "p",
            Func::Monomial => "m",
            Func::Basis => "basis",
            Func::Omega => "omega",
            Func::Triangular => "tri",
            Func::Embed => "embed",
            Func::FactSum => "factsum",
            Func::Integral => "integral",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn arity(self) -> Arity {
        match self {
            Func::FactSum => Arity::Exactly(0),
            Func::Inv
            | Func::D
            | Func::CompInv
            | Func::Dual
            | Func::Elementary
            | Func::Complete
            | Func::PowerSum
            | Func::Omega
            | Func::Embed
            | Func::Integral => Arity::Exactly(1),
            Func::Compose | Func::Coeff => Arity::Exactly(2),
            Func::Lagrange => Arity::Exactly(3),
            Func::Monomial => Arity::AtLeast(0),
            Func::Basis | Func::Triangular => Arity::AtLeast(1),
        }
    }

    /// Whether the call accepts a trailing `; n` branch index.
    pub fn takes_branch(self) -> bool {
        matches!(self, Func::Compose | Func::Basis)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// An unsigned decimal literal, held exactly.
    Num(Exponent),
    /// An unsigned literal times `i`.
    Imag(Exponent),
    X,
    Name(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow { base: Box<Expr>, exponent: Exponent, branch: Option<i64> },
    Call { func: Func, args: Vec<Expr>, branch: Option<i64> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    Assign(String, Expr),
    Expr(Expr),
}

impl Expr {
    pub fn binary(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Binary(op, Box::new(a), Box::new(b))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, _, _) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Pow { .. } => 4,
            _ => 5,
        }
    }
}

/// Exact decimal digits of a terminating fraction, e.g. `1/8 → 0.125`.
pub fn decimal_digits(r: &Exponent) -> Option<String> {
    let ratio = r.as_ratio();
    let (mut num, mut den) = (ratio.numer().clone(), ratio.denom().clone());
    let negative = num < BigInt::zero();
    if negative {
        num = -num;
    }
    let ten = BigInt::from(10);
    let mut places = 0usize;
    while !den.is_one() {
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        if !(&den % &two).is_zero() && !(&den % &five).is_zero() {
            return None;
        }
        // shift one decimal place into the numerator
        num *= &ten;
        let g = num::integer::gcd(num.clone(), den.clone());
        num /= &g;
        den /= &g;
        places += 1;
    }
    let digits = num.to_string();
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    };
    Some(if negative { format!("-{body}") } else { body })
}

/// `p/q` for exponent positions.
pub fn rational_text(r: &Exponent) -> String {
    r.to_string()
}

fn literal(f: &mut fmt::Formatter<'_>, r: &Exponent) -> fmt::Result {
    match decimal_digits(r) {
        Some(d) => f.write_str(&d),
        // only reachable for trees not built by the parser
        None => write!(f, "({})", rational_text(r)),
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => literal(f, r),
            Expr::Imag(r) => {
                if r.is_integer() && r.to_i64() == Some(1) {
                    f.write_str("i")
                } else {
                    literal(f, r)?;
                    f.write_str("i")
                }
            }
            Expr::X => f.write_str("x"),
            Expr::Name(n) => f.write_str(n),
            Expr::Neg(a) => {
                f.write_str("-")?;
                child(f, a, a.precedence() < 3)
            }
            Expr::Binary(op, a, b) => {
                let p = op.precedence();
                child(f, a, a.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                child(f, b, b.precedence() <= p)
            }
            Expr::Pow { base, exponent, branch } => {
                child(f, base, base.precedence() < 5)?;
                write!(f, "^({}", rational_text(exponent))?;
                if let Some(n) = branch {
                    write!(f, "; {n}")?;
                }
                f.write_str(")")
            }
            Expr::Call { func, args, branch } => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                if let Some(n) = branch {
                    write!(f, "; {n}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Assign(name, e) => write!(f, "{name} = {e}"),
            Stmt::Expr(e) => write!(f, "{e}"),
        }
    }
}
