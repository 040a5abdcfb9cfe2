//! Multivariate series as nested univariate series: a series in `x₁` whose
//! coefficients are series in `x₂`, and so on down to complex scalars.
//!
//! All levels are Noetherian. Flat terms are keyed by their exponent vectors
//! `(a₁, …, a_N)`.

use std::collections::BTreeMap;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::power;
use crate::scalar::{BranchIndex, Coeff, Exponent};
use crate::series::{Orientation, Series};

pub type FlatTerms = BTreeMap<Vec<Exponent>, Coeff>;

pub trait MultiVar: Coefficient {
    const DEPTH: usize;

    /// Builds the nested value from flat terms whose keys have length
    /// `DEPTH`; every variable gets the same window bound.
    fn from_flat(terms: Vec<(Vec<Exponent>, Coeff)>, window: &Exponent) -> Self;

    fn flatten_into(&self, prefix: &mut Vec<Exponent>, out: &mut FlatTerms);

    /// Whether the coefficient of `x^exps` is determined by the stored window.
    fn exact_at(&self, exps: &[Exponent]) -> bool;

    fn unit(window: &Exponent) -> Self {
        Self::from_flat(vec![(vec![Exponent::zero(); Self::DEPTH], Coeff::new(1.0, 0.0))], window)
    }
}

impl MultiVar for Coeff {
    const DEPTH: usize = 0;

    fn from_flat(terms: Vec<(Vec<Exponent>, Coeff)>, _window: &Exponent) -> Self {
        terms.into_iter().map(|(_, c)| c).sum()
    }

    fn flatten_into(&self, prefix: &mut Vec<Exponent>, out: &mut FlatTerms) {
        if *self != Coeff::new(0.0, 0.0) {
            *out.entry(prefix.clone()).or_default() += *self;
        }
    }

    fn exact_at(&self, _exps: &[Exponent]) -> bool {
        true
    }
}

impl<C: MultiVar> MultiVar for Series<C> {
    const DEPTH: usize = C::DEPTH + 1;

    fn from_flat(terms: Vec<(Vec<Exponent>, Coeff)>, window: &Exponent) -> Self {
        let mut groups: BTreeMap<Exponent, Vec<(Vec<Exponent>, Coeff)>> = BTreeMap::new();
        for (mut exps, c) in terms {
            let rest = exps.split_off(1);
            groups.entry(exps.pop().expect("exponent vector too short")).or_default().push((rest, c));
        }
        let map = groups.into_iter().map(|(a, rest)| (a, C::from_flat(rest, window))).collect();
        Series::from_map(Orientation::Noetherian, map, window.clone())
    }

    fn flatten_into(&self, prefix: &mut Vec<Exponent>, out: &mut FlatTerms) {
        for (a, c) in self.terms() {
            prefix.push(a.clone());
            c.flatten_into(prefix, out);
            prefix.pop();
        }
    }

    fn exact_at(&self, exps: &[Exponent]) -> bool {
        let (first, rest) = exps.split_first().expect("exponent vector too short");
        if !self.in_exact_region(first) {
            return false;
        }
        // an absent coefficient was pruned as zero and carries no window
        match self.coefficient(first) {
            Ok(Some(c)) => c.exact_at(rest),
            _ => true,
        }
    }
}

/// `g^t` on branch `n`, by repeated multiplication for nonnegative integers.
pub fn power_of<C: MultiVar>(g: &Series<C>, t: &Exponent, n: BranchIndex) -> Result<Series<C>> {
    match t.to_i64() {
        Some(k) if (0..=64).contains(&k) => {
            let mut acc = Series::<C>::unit(g.bound());
            for _ in 0..k {
                acc = acc.mul(g)?;
            }
            Ok(acc)
        }
        _ => power::pow(g, t, n),
    }
}

pub type Vars1 = Series<Coeff>;
pub type Vars2 = Series<Vars1>;
pub type Vars3 = Series<Vars2>;
pub type Vars4 = Series<Vars3>;

/// A nested series in one to four variables.
#[derive(Clone, Debug, PartialEq)]
pub enum NestedValue {
    One(Vars1),
    Two(Vars2),
    Three(Vars3),
    Four(Vars4),
}

macro_rules! each {
    ($value:expr, $s:ident => $body:expr) => {
        match $value {
            NestedValue::One($s) => $body,
            NestedValue::Two($s) => $body,
            NestedValue::Three($s) => $body,
            NestedValue::Four($s) => $body,
        }
    };
}

macro_rules! each_wrap {
    ($value:expr, $s:ident => $body:expr) => {
        match $value {
            NestedValue::One($s) => NestedValue::One($body),
            NestedValue::Two($s) => NestedValue::Two($body),
            NestedValue::Three($s) => NestedValue::Three($body),
            NestedValue::Four($s) => NestedValue::Four($body),
        }
    };
}

macro_rules! each_pair {
    ($a:expr, $b:expr, ($x:ident, $y:ident) => $body:expr) => {
        match ($a, $b) {
            (NestedValue::One($x), NestedValue::One($y)) => Ok(NestedValue::One($body)),
            (NestedValue::Two($x), NestedValue::Two($y)) => Ok(NestedValue::Two($body)),
            (NestedValue::Three($x), NestedValue::Three($y)) => Ok(NestedValue::Three($body)),
            (NestedValue::Four($x), NestedValue::Four($y)) => Ok(NestedValue::Four($body)),
            (a, b) => Err(Error::VariableMismatch(a.nvars(), b.nvars())),
        }
    };
}

impl NestedValue {
    pub fn from_flat(nvars: usize, terms: &FlatTerms, window: &Exponent) -> Result<Self> {
        let list: Vec<_> = terms.iter().map(|(e, c)| (e.clone(), *c)).collect();
        if let Some((e, _)) = list.iter().find(|(e, _)| e.len() != nvars) {
            return Err(Error::VariableMismatch(e.len(), nvars));
        }
        Ok(match nvars {
            1 => NestedValue::One(Vars1::from_flat(list, window)),
            2 => NestedValue::Two(Vars2::from_flat(list, window)),
            3 => NestedValue::Three(Vars3::from_flat(list, window)),
            4 => NestedValue::Four(Vars4::from_flat(list, window)),
            _ => return Err(Error::UnsupportedVariableCount(nvars)),
        })
    }

    pub fn unit(nvars: usize, window: &Exponent) -> Result<Self> {
        let mut terms = FlatTerms::new();
        terms.insert(vec![Exponent::zero(); nvars], Coeff::new(1.0, 0.0));
        Self::from_flat(nvars, &terms, window)
    }

    pub fn nvars(&self) -> usize {
        match self {
            NestedValue::One(_) => 1,
            NestedValue::Two(_) => 2,
            NestedValue::Three(_) => 3,
            NestedValue::Four(_) => 4,
        }
    }

    pub fn flatten(&self) -> FlatTerms {
        let mut out = FlatTerms::new();
        each!(self, s => s.flatten_into(&mut Vec::new(), &mut out));
        out
    }

    pub fn exact_at(&self, exps: &[Exponent]) -> bool {
        exps.len() == self.nvars() && each!(self, s => s.exact_at(exps))
    }

    pub fn is_zero(&self) -> bool {
        each!(self, s => s.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        each_pair!(self, other, (a, b) => a.mul(b)?)
    }

    pub fn pow(&self, t: &Exponent, n: BranchIndex) -> Result<Self> {
        Ok(each_wrap!(self, s => power_of(s, t, n)?))
    }

    pub fn max_difference(&self, other: &Self) -> Result<f64> {
        match (self, other) {
            (NestedValue::One(a), NestedValue::One(b)) => Ok(a.max_difference(b)),
            (NestedValue::Two(a), NestedValue::Two(b)) => Ok(a.max_difference(b)),
            (NestedValue::Three(a), NestedValue::Three(b)) => Ok(a.max_difference(b)),
            (NestedValue::Four(a), NestedValue::Four(b)) => Ok(a.max_difference(b)),
            (a, b) => Err(Error::VariableMismatch(a.nvars(), b.nvars())),
        }
    }
}
