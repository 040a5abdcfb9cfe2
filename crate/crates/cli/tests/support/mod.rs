//! Expression trees the parser can produce, for round-trip checks.

use artseries::Exponent;
use artseries_cli::ast::Arity;
use artseries_cli::{BinOp, Expr, Func};
use proptest::prelude::*;

/// Literals the lexer reads back exactly: terminating decimals.
fn literal() -> impl Strategy<Value = Exponent> {
    (0i64..2000, prop::sample::select(vec![1i64, 2, 4, 5, 8, 10, 100])).prop_map(|(n, d)| Exponent::new(n, d))
}

fn exponent() -> impl Strategy<Value = Exponent> {
    (-30i64..30, 1i64..12).prop_map(|(n, d)| Exponent::new(n, d))
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        literal().prop_map(Expr::Num),
        literal().prop_map(Expr::Imag),
        Just(Expr::X),
        prop::sample::select(vec!["f", "g", "u", "alpha", "e", "h"]).prop_map(|n| Expr::Name(n.to_string())),
    ]
}

fn call(func: Func, pool: Vec<Expr>, branch: Option<i64>) -> Expr {
    let wanted = match func.arity() {
        Arity::Exactly(k) => k,
        Arity::AtLeast(k) => k.max(pool.len().min(3)),
    };
    let args = pool.into_iter().cycle().take(wanted).collect();
    let branch = if func.takes_branch() { branch } else { None };
    Expr::Call { func, args, branch }
}

pub fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (
                prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, a, b)| Expr::binary(op, a, b)),
            (inner.clone(), exponent(), prop::option::of(-3i64..=3))
                .prop_map(|(b, exponent, branch)| Expr::Pow { base: Box::new(b), exponent, branch }),
            (
                prop::sample::select(Func::ALL.to_vec()),
                prop::collection::vec(inner, 1..4),
                prop::option::of(-3i64..=3)
            )
                .prop_map(|(f, pool, branch)| call(f, pool, branch)),
        ]
    })
}
