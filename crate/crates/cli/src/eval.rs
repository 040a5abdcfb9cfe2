//! Evaluation of statements against a session environment.

use std::collections::HashMap;
use std::fmt;

use artseries::calculus::derivative;
use artseries::compose::{comp_inverse, compose, lagrange_coefficient};
use artseries::power::pow;
use artseries::profinite::{embed, factorial_sum_element, is_integral, pi_add, pi_mul, pi_neg, Pseudointeger};
use artseries::scalar::{cpow, is_negligible};
use artseries::series::format_coeff;
use artseries::symmetric::{
    basis_product, generator, omega, sym_invert, sym_mul, triangularity_check, Family, RealPartition, SymSeries,
};
use artseries::{Coeff, Exponent, ExponentMonoid, Series};
use num::BigInt;
use serde_json::json;
use thiserror::Error;

use crate::ast::{BinOp, Expr, Func, Stmt};
use crate::config::SessionConfig;

/// Integer powers up to this size are formed by repeated multiplication.
const REPEATED_PRODUCT_LIMIT: i64 = 8;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Coeff),
    Series(Series),
    Sym(SymSeries),
    Pseudo(Pseudointeger),
    /// Result of an integrality test: the integer, if any.
    Integral(Option<BigInt>),
    Bool(bool),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Series(_) => "series",
            Value::Sym(_) => "symmetric series",
            Value::Pseudo(_) => "pseudointeger",
            Value::Integral(_) => "integrality result",
            Value::Bool(_) => "boolean",
        }
    }

    /// One-line JSON. Series and symmetric series use their own schemas.
    pub fn to_json(&self) -> String {
        match self {
            Value::Scalar(c) => json!({ "re": c.re, "im": c.im }).to_string(),
            Value::Series(s) => s.to_json(),
            Value::Sym(s) => s.to_json(),
            Value::Pseudo(p) => json!({ "bound": p.bound(), "residues": p.residues() }).to_string(),
            Value::Integral(k) => json!({ "integer": k.as_ref().map(|k| k.to_string()) }).to_string(),
            Value::Bool(b) => json!({ "bool": b }).to_string(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => f.write_str(&format_coeff(*c)),
            Value::Series(s) => write!(f, "{s}"),
            Value::Sym(s) => write!(f, "{s}"),
            Value::Pseudo(p) => write!(f, "{p}"),
            Value::Integral(Some(k)) => write!(f, "{k}"),
            Value::Integral(None) => f.write_str("none"),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Domain(#[from] artseries::Error),
    #[error("unbound name '{0}'")]
    Unbound(String),
    #[error("{op} is not defined for {lhs} and {rhs}")]
    Types { op: String, lhs: &'static str, rhs: &'static str },
    #[error("{0} expects {1}")]
    Argument(&'static str, String),
    #[error("exponent {0} is outside the natural-number monoid")]
    NotNatural(String),
}

fn types(op: impl Into<String>, a: &Value, b: &Value) -> EvalError {
    EvalError::Types { op: op.into(), lhs: a.kind(), rhs: b.kind() }
}

#[derive(Clone, Debug, Default)]
pub struct Session {
    pub config: SessionConfig,
    env: HashMap<String, Value>,
}

impl Session {
    pub fn new(config: SessionConfig) -> Self {
        Session { config, env: HashMap::new() }
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }

    pub fn bind(&mut self, name: impl Into<String>, value: Value) {
        self.env.insert(name.into(), value);
    }

    /// Runs one statement; assignments also return the bound value.
    pub fn exec(&mut self, stmt: &Stmt) -> Result<Value, EvalError> {
        match stmt {
            Stmt::Assign(name, e) => {
                let v = self.eval(e)?;
                self.env.insert(name.clone(), v.clone());
                Ok(v)
            }
            Stmt::Expr(e) => self.eval(e),
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        let v = match e {
            Expr::Num(r) => Value::Scalar(Coeff::new(r.to_f64(), 0.0)),
            Expr::Imag(r) => Value::Scalar(Coeff::new(0.0, r.to_f64())),
            Expr::X => Value::Series(Series::x(self.config.orientation, self.config.window.clone())?),
            Expr::Name(n) => self.env.get(n).cloned().ok_or_else(|| EvalError::Unbound(n.clone()))?,
            Expr::Neg(a) => negate(self.eval(a)?)?,
            Expr::Binary(op, a, b) => self.binary(*op, self.eval(a)?, self.eval(b)?)?,
            Expr::Pow { base, exponent, branch } => self.power(self.eval(base)?, exponent, branch.unwrap_or(0))?,
            Expr::Call { func, args, branch } => self.call(*func, args, branch.unwrap_or(0))?,
        };
        self.check_monoid(&v)?;
        Ok(v)
    }

    fn check_monoid(&self, v: &Value) -> Result<(), EvalError> {
        if self.config.monoid != ExponentMonoid::Natural {
            return Ok(());
        }
        if let Value::Series(s) = v {
            if let Some((e, _)) = s.terms().find(|(e, _)| !e.is_integer() || e.is_negative()) {
                return Err(EvalError::NotNatural(e.to_string()));
            }
        }
        Ok(())
    }

    fn constant_series(&self, c: Coeff) -> Result<Series, EvalError> {
        Ok(Series::constant(self.config.orientation, c, self.config.window.clone())?)
    }

    fn constant_sym(&self, c: Coeff) -> SymSeries {
        SymSeries::constant(self.config.nvars, c, self.config.cutoff.clone())
    }

    fn integer_scalar(c: Coeff) -> Option<i64> {
        let r = c.re.round();
        (c.im == 0.0 && c.re == r && r.abs() < 9.0e15).then_some(r as i64)
    }

    /// Brings a scalar up to the kind of the other operand.
    fn promote(&self, a: Value, other: &Value) -> Result<Value, EvalError> {
        Ok(match (a, other) {
            (Value::Scalar(c), Value::Series(_)) => Value::Series(self.constant_series(c)?),
            (Value::Scalar(c), Value::Sym(_)) => Value::Sym(self.constant_sym(c)),
            (Value::Scalar(c), Value::Pseudo(p)) => match Self::integer_scalar(c) {
                Some(k) => Value::Pseudo(embed(k, p.bound())),
                None => Value::Scalar(c),
            },
            (a, _) => a,
        })
    }

    fn invert(&self, v: Value) -> Result<Value, EvalError> {
        Ok(match v {
            Value::Scalar(c) => {
                if is_negligible(c) {
                    return Err(artseries::Error::DivisionByZero.into());
                }
                Value::Scalar(1.0 / c)
            }
            Value::Series(s) => Value::Series(s.invert_in(self.config.monoid)?),
            Value::Sym(s) => Value::Sym(sym_invert(&s)?),
            other => return Err(EvalError::Argument("inv", format!("an invertible value, not a {}", other.kind()))),
        })
    }

    fn binary(&self, op: BinOp, a: Value, b: Value) -> Result<Value, EvalError> {
        let a = self.promote(a, &b)?;
        let b = self.promote(b, &a)?;
        let sym = op.symbol().to_string();
        Ok(match (op, a, b) {
            (BinOp::Add, Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
            (BinOp::Sub, Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x - y),
            (BinOp::Mul, Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
            (BinOp::Add, Value::Series(f), Value::Series(g)) => Value::Series(f.add(&g)?),
            (BinOp::Sub, Value::Series(f), Value::Series(g)) => Value::Series(f.sub(&g)?),
            (BinOp::Mul, Value::Series(f), Value::Series(g)) => Value::Series(f.mul(&g)?),
            (BinOp::Add, Value::Sym(f), Value::Sym(g)) => Value::Sym(f.add(&g)?),
            (BinOp::Sub, Value::Sym(f), Value::Sym(g)) => Value::Sym(f.sub(&g)?),
            (BinOp::Mul, Value::Sym(f), Value::Sym(g)) => Value::Sym(sym_mul(&f, &g)?),
            (BinOp::Add, Value::Pseudo(f), Value::Pseudo(g)) => Value::Pseudo(pi_add(&f, &g)?),
            (BinOp::Sub, Value::Pseudo(f), Value::Pseudo(g)) => Value::Pseudo(pi_add(&f, &pi_neg(&g))?),
            (BinOp::Mul, Value::Pseudo(f), Value::Pseudo(g)) => Value::Pseudo(pi_mul(&f, &g)?),
            (BinOp::Div, a @ (Value::Scalar(_) | Value::Series(_) | Value::Sym(_)), b) => {
                let inverse = self.invert(b)?;
                return self.binary(BinOp::Mul, a, inverse);
            }
            (_, a, b) => return Err(types(sym, &a, &b)),
        })
    }

    fn power(&self, base: Value, t: &Exponent, n: i64) -> Result<Value, EvalError> {
        let small = t.to_i64().filter(|k| (0..=REPEATED_PRODUCT_LIMIT).contains(k));
        if let Some(k) = small {
            let one = match &base {
                Value::Scalar(_) => Value::Scalar(Coeff::new(1.0, 0.0)),
                Value::Series(_) => Value::Series(self.constant_series(Coeff::new(1.0, 0.0))?),
                Value::Sym(_) => Value::Sym(self.constant_sym(Coeff::new(1.0, 0.0))),
                Value::Pseudo(p) => Value::Pseudo(embed(1, p.bound())),
                other => return Err(EvalError::Argument("^", format!("a numeric base, not a {}", other.kind()))),
            };
            let mut acc = one;
            for _ in 0..k {
                acc = self.binary(BinOp::Mul, acc, base.clone())?;
            }
            return Ok(acc);
        }
        Ok(match base {
            Value::Scalar(z) => Value::Scalar(cpow(z, t, n)?),
            Value::Series(g) => {
                if self.config.monoid == ExponentMonoid::Natural && (t.is_negative() || !t.is_integer()) {
                    return Err(EvalError::NotNatural(t.to_string()));
                }
                Value::Series(pow(&g, t, n)?)
            }
            Value::Sym(f) if t.is_integer() && t.is_negative() => {
                let inverse = self.invert(Value::Sym(f))?;
                return self.power(inverse, &-t.clone(), n);
            }
            Value::Pseudo(p) if t.is_integer() && !t.is_negative() => {
                let mut acc = embed(1, p.bound());
                let k = t.to_i64().ok_or_else(|| EvalError::Argument("^", "a machine-size exponent".into()))?;
                for _ in 0..k {
                    acc = pi_mul(&acc, &p)?;
                }
                Value::Pseudo(acc)
            }
            other => {
                return Err(EvalError::Argument("^", format!("an exponent {t} admissible for a {}", other.kind())));
            }
        })
    }

    fn series_arg(&self, name: &'static str, e: &Expr) -> Result<Series, EvalError> {
        match self.eval(e)? {
            Value::Series(s) => Ok(s),
            Value::Scalar(c) => self.constant_series(c),
            other => Err(EvalError::Argument(name, format!("a series, not a {}", other.kind()))),
        }
    }

    fn sym_arg(&self, name: &'static str, e: &Expr) -> Result<SymSeries, EvalError> {
        match self.eval(e)? {
            Value::Sym(s) => Ok(s),
            Value::Scalar(c) => Ok(self.constant_sym(c)),
            other => Err(EvalError::Argument(name, format!("a symmetric series, not a {}", other.kind()))),
        }
    }

    fn pseudo_arg(&self, name: &'static str, e: &Expr) -> Result<Pseudointeger, EvalError> {
        match self.eval(e)? {
            Value::Pseudo(p) => Ok(p),
            Value::Scalar(c) => match Self::integer_scalar(c) {
                Some(k) => Ok(embed(k, self.config.modulus)),
                None => Err(EvalError::Argument(name, "an integer or pseudointeger".into())),
            },
            other => Err(EvalError::Argument(name, format!("a pseudointeger, not a {}", other.kind()))),
        }
    }

    fn rational_arg(&self, name: &'static str, e: &Expr) -> Result<Exponent, EvalError> {
        constant_rational(e).ok_or_else(|| EvalError::Argument(name, format!("an exact rational constant, not {e}")))
    }

    fn integer_arg(&self, name: &'static str, e: &Expr) -> Result<i64, EvalError> {
        self.rational_arg(name, e)?
            .to_i64()
            .filter(|_| constant_rational(e).is_some_and(|r| r.is_integer()))
            .ok_or_else(|| EvalError::Argument(name, format!("an integer, not {e}")))
    }

    fn family_arg(&self, name: &'static str, e: &Expr) -> Result<Family, EvalError> {
        match e {
            Expr::Name(n) => n.parse::<Family>().map_err(|_| EvalError::Argument(name, "a family e, h or p".into())),
            _ => Err(EvalError::Argument(name, "a family e, h or p".into())),
        }
    }

    fn partition_arg(&self, name: &'static str, args: &[Expr]) -> Result<RealPartition, EvalError> {
        let parts = args.iter().map(|a| self.rational_arg(name, a)).collect::<Result<Vec<_>, _>>()?;
        Ok(RealPartition::new(parts)?)
    }

    fn call(&self, func: Func, args: &[Expr], n: i64) -> Result<Value, EvalError> {
        let cfg = &self.config;
        Ok(match func {
            Func::Inv => self.invert(self.eval(&args[0])?)?,
            Func::D => match self.eval(&args[0])? {
                Value::Scalar(_) => Value::Scalar(Coeff::new(0.0, 0.0)),
                Value::Series(s) => Value::Series(derivative(&s)),
                other => return Err(EvalError::Argument("D", format!("a series, not a {}", other.kind()))),
            },
            Func::Compose => {
                let f = self.series_arg("compose", &args[0])?;
                let g = self.series_arg("compose", &args[1])?;
                Value::Series(compose(&f, &g, n)?)
            }
            Func::CompInv => Value::Series(comp_inverse(&self.series_arg("compinv", &args[0])?)?),
            Func::Lagrange => {
                let f = self.series_arg("lagrange", &args[0])?;
                let a = self.rational_arg("lagrange", &args[1])?;
                let b = self.rational_arg("lagrange", &args[2])?;
                Value::Scalar(lagrange_coefficient(&f, &a, &b)?)
            }
            Func::Dual => Value::Series(self.series_arg("dual", &args[0])?.dualize()),
            Func::Coeff => {
                let f = self.series_arg("coeff", &args[0])?;
                Value::Scalar(f.coefficient_at(&self.rational_arg("coeff", &args[1])?)?)
            }
            Func::Elementary | Func::Complete | Func::PowerSum => {
                let family = match func {
                    Func::Elementary => Family::Elementary,
                    Func::Complete => Family::Complete,
                    _ => Family::PowerSum,
                };
                let k = self.integer_arg(func.name(), &args[0])?;
                let k = u32::try_from(k).map_err(|_| EvalError::Argument(func.name(), "a nonnegative index".into()))?;
                Value::Sym(generator(family, k, cfg.nvars, cfg.cutoff.clone()))
            }
            Func::Monomial => {
                let beta = self.partition_arg("m", args)?;
                Value::Sym(SymSeries::monomial(beta, cfg.nvars, cfg.cutoff.clone())?)
            }
            Func::Basis => {
                let family = self.family_arg("basis", &args[0])?;
                let beta = self.partition_arg("basis", &args[1..])?;
                Value::Sym(basis_product(family, &beta, n, cfg.nvars, &cfg.cutoff)?.series)
            }
            Func::Omega => Value::Sym(omega(&self.sym_arg("omega", &args[0])?)?),
            Func::Triangular => {
                let family = self.family_arg("tri", &args[0])?;
                let beta = self.partition_arg("tri", &args[1..])?;
                Value::Bool(triangularity_check(family, &beta, cfg.nvars, &cfg.cutoff)?)
            }
            Func::Embed => Value::Pseudo(embed(self.integer_arg("embed", &args[0])?, cfg.modulus)),
            Func::FactSum => Value::Pseudo(factorial_sum_element(cfg.modulus)),
            Func::Integral => Value::Integral(is_integral(&self.pseudo_arg("integral", &args[0])?)),
        })
    }
}

fn negate(v: Value) -> Result<Value, EvalError> {
    Ok(match v {
        Value::Scalar(c) => Value::Scalar(-c),
        Value::Series(s) => Value::Series(s.neg()),
        Value::Sym(s) => Value::Sym(s.neg()),
        Value::Pseudo(p) => Value::Pseudo(pi_neg(&p)),
        other => return Err(EvalError::Argument("-", format!("a numeric value, not a {}", other.kind()))),
    })
}

/// Folds an expression built from real literals with `+ - * /` exactly.
pub fn constant_rational(e: &Expr) -> Option<Exponent> {
    match e {
        Expr::Num(r) => Some(r.clone()),
        Expr::Neg(a) => constant_rational(a).map(|r| -r),
        Expr::Binary(op, a, b) => {
            let (a, b) = (constant_rational(a)?, constant_rational(b)?);
            match op {
                BinOp::Add => Some(a + b),
                BinOp::Sub => Some(a - b),
                BinOp::Mul => Some(a * b),
                BinOp::Div => (!b.is_zero()).then(|| a / b),
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse, parse_stmt};

    fn run(session: &mut Session, text: &str) -> Result<Value, EvalError> {
        session.exec(&parse_stmt(text).unwrap())
    }

    fn eval_with(config: SessionConfig, text: &str) -> Result<Value, EvalError> {
        Session::new(config).eval(&parse(text).unwrap())
    }

    #[test]
    fn geometric_series_at_window_five() {
        let cfg = SessionConfig { window: Exponent::from_int(5), ..SessionConfig::default() };
        let Value::Series(s) = eval_with(cfg, "inv(1 - x)").unwrap() else { panic!("not a series") };
        assert_eq!(s.len(), 5);
        for k in 0..5 {
            assert_eq!(s.coefficient_at(&Exponent::from_int(k)).unwrap(), Coeff::new(1.0, 0.0));
        }
    }

    #[test]
    fn catalan_through_lagrange() {
        let Value::Scalar(c) = eval_with(SessionConfig::default(), "lagrange(x - x*x, 4, 1)").unwrap() else {
            panic!("not a scalar")
        };
        assert!((c - Coeff::new(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn natural_exponents_refuse_inverting_x() {
        let cfg = SessionConfig { monoid: ExponentMonoid::Natural, ..SessionConfig::default() };
        assert!(matches!(eval_with(cfg.clone(), "inv(x)"), Err(EvalError::Domain(artseries::Error::NoExponentInverse(_)))));
        assert!(matches!(eval_with(cfg.clone(), "x^(1/2)"), Err(EvalError::NotNatural(_))));
        assert!(eval_with(cfg, "inv(1 - x)").is_ok());
    }

    #[test]
    fn assignments_persist() {
        let mut s = Session::default();
        run(&mut s, "f = 1 + x").unwrap();
        let Value::Series(sq) = run(&mut s, "f^2").unwrap() else { panic!("not a series") };
        assert_eq!(sq.coefficient_at(&Exponent::from_int(1)).unwrap(), Coeff::new(2.0, 0.0));
        assert!(matches!(run(&mut s, "g + 1"), Err(EvalError::Unbound(_))));
    }

    #[test]
    fn scalar_branches() {
        let cfg = SessionConfig::default();
        let Value::Scalar(a) = eval_with(cfg.clone(), "(-4)^(1/2; 0)").unwrap() else { panic!() };
        let Value::Scalar(b) = eval_with(cfg, "(-4)^(1/2; 1)").unwrap() else { panic!() };
        assert!((a - Coeff::new(0.0, 2.0)).norm() < 1e-12);
        assert!((b - Coeff::new(0.0, -2.0)).norm() < 1e-12);
    }

    #[test]
    fn symmetric_and_profinite_commands() {
        let cfg = SessionConfig::default();
        let Value::Sym(s) = eval_with(cfg.clone(), "m(1) * m(1) - m(2) - 2*m(1,1)").unwrap() else { panic!() };
        assert!(s.is_zero());
        assert_eq!(eval_with(cfg.clone(), "tri(e, 2, 1)").unwrap(), Value::Bool(true));
        assert_eq!(eval_with(cfg.clone(), "integral(embed(-7) * 3)").unwrap(), Value::Integral(Some(BigInt::from(-21))));
        assert_eq!(eval_with(cfg, "integral(factsum())").unwrap(), Value::Integral(None));
    }

    #[test]
    fn constant_folding_is_exact() {
        assert_eq!(constant_rational(&parse("-1/3 + 0.5").unwrap()), Some(Exponent::new(1, 6)));
        assert_eq!(constant_rational(&parse("x").unwrap()), None);
    }
}
