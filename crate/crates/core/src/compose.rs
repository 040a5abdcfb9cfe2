//! Composition `f(g;n) = Σ_a c_a·g^{a;n}`, compositional inverses and
//! Lagrange inversion.

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::power::{self, UnitExpansion};
use crate::scalar::{self, BranchIndex, Coeff, Exponent};
use crate::series::{Orientation, Series};

/// The `n`th composition of `f` with `g`. `g` must have positive degree in
/// both orientations.
pub fn compose<C: Coefficient>(f: &Series<C>, g: &Series<C>, n: BranchIndex) -> Result<Series<C>> {
    if f.orientation() != g.orientation() {
        return Err(Error::OrientationMismatch);
    }
    let orientation = f.orientation();
    let dg = match g.leading() {
        Some((d, _)) if d.is_positive() => d.clone(),
        _ => return Err(Error::NonPositiveDegree),
    };
    // Unknown terms of f start contributing at bound·deg g; each power g^{a;n}
    // is exact up to a·deg g + (g.bound - deg g).
    let mut bound = f.bound() * &dg;
    if let Some((df, _)) = f.leading() {
        let from_g = df * &dg + g.bound() - &dg;
        bound = orientation.tighter(&bound, &from_g);
    }
    let expansion = match orientation {
        Orientation::Noetherian => UnitExpansion::new(g)?,
        Orientation::Artinian => UnitExpansion::new(&g.dualize())?,
    };
    let mut acc = Series::zero(orientation, bound.clone());
    for (a, ca) in f.terms() {
        if !orientation.in_exact_region(&(a * &dg), &bound) {
            continue;
        }
        let mut p = expansion.power(a, n)?;
        if orientation == Orientation::Artinian {
            p = p.dualize();
        }
        acc = acc.add(&p.mul_coeff(ca)?)?;
    }
    Ok(acc)
}

/// `compose(compose(f,g;m),h;m) / compose(f, compose(g,h;m);m)`, which the
/// two-sided rules force to be a constant.
pub fn associativity_defect<C: Coefficient>(f: &Series<C>, g: &Series<C>, h: &Series<C>, m: BranchIndex) -> Result<C> {
    let left = compose(&compose(f, g, m)?, h, m)?;
    let right = compose(f, &compose(g, h, m)?, m)?;
    let (_, lc) = left.leading().ok_or(Error::DivisionByZero)?;
    let (_, rc) = right.leading().ok_or(Error::DivisionByZero)?;
    let quotient = lc.mul(&rc.inverse()?)?;
    let scaled = right.mul_coeff(&quotient)?;
    if scaled.max_difference(&left) > scalar::tolerance() * (1.0 + left.distance(None)) {
        return Err(Error::NotConstant);
    }
    Ok(quotient)
}

fn positive_real_lead(f: &Series<Coeff>) -> Result<(Exponent, f64)> {
    let (d, c) = f.leading().ok_or(Error::NonPositiveDegree)?;
    if !d.is_positive() {
        return Err(Error::NonPositiveDegree);
    }
    if c.im.abs() > scalar::tolerance() || c.re <= scalar::tolerance() {
        return Err(Error::NonPositiveLeading);
    }
    Ok((d.clone(), c.re))
}

/// The 0-compositional inverse: `g` with `compose(f, g, 0) = x`.
///
/// Starts from `c·x^{1/b}` with `c = d_b^{1/b}` and repeatedly cancels the
/// first residual term of `f(g;0) - x`. A residual term at `x^e` is removed
/// by a correction at `x^{e - 1 + 1/b}` since `f(g + δx^a) - f(g)` leads
/// with `b·d_b·c^{b-1}·δ·x^{a + 1 - 1/b}`.
pub fn comp_inverse(f: &Series<Coeff>) -> Result<Series<Coeff>> {
    let orientation = f.orientation();
    let (b, lead) = positive_real_lead(f)?;
    let inv_b = Exponent::one() / &b;
    // g is exact where its residual partner x^{a+1-1/b} is exact in f(g;0).
    let g_bound = (f.bound() + Exponent::one() - &b) / &b;
    let c = lead.powf(inv_b.to_f64());
    let slope = b.to_f64() * lead * c.powf(b.to_f64() - 1.0);
    let x = Series::x(orientation, f.bound() / &b)?;

    let mut g = Series::monomial(orientation, Coeff::new(c, 0.0), inv_b.clone(), g_bound.clone())?;
    // residual exponents are visited strictly in order; a correction too
    // small to store is skipped rather than retried
    let mut last: Option<Exponent> = None;
    loop {
        let residual = compose(f, &g, 0)?.sub(&x)?;
        let next = residual
            .terms()
            .find(|(e, _)| last.as_ref().is_none_or(|prev| orientation.precedes(prev, e)))
            .map(|(e, r)| (e.clone(), *r));
        let Some((e, r)) = next else {
            break;
        };
        let a = &e - Exponent::one() + &inv_b;
        if !g.in_exact_region(&a) {
            break;
        }
        let correction = Series::monomial(orientation, -r / slope, a, g_bound.clone())?;
        g = g.add(&correction)?;
        last = Some(e);
    }
    Ok(g)
}

/// `[x^a] (f^{(-1;0)})^{b;0}`, computed as `(b/a)·[x^{a-b}](x/f)^{a;0}`.
pub fn lagrange_coefficient(f: &Series<Coeff>, a: &Exponent, b: &Exponent) -> Result<Coeff> {
    let (d, _) = positive_real_lead(f)?;
    if d != Exponent::one() {
        return Err(Error::NotDeltaSeries);
    }
    if a.is_zero() {
        return Err(Error::InvalidScalar("lagrange_coefficient needs a nonzero exponent".into()));
    }
    let x_over_f = f.invert()?.shift(&Exponent::one());
    let powered = power::pow(&x_over_f, a, 0)?;
    let c = powered.coefficient_at(&(a - b))?;
    Ok(c * (b / a).to_f64())
}
