//! The contract a series coefficient has to satisfy.
//!
//! Complex numbers satisfy it directly; a [`Series`] over a coefficient type
//! satisfies it again, which gives the recursive multivariate algebra
//! `K(x₁)(x₂)…` one variable at a time.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::power;
use crate::scalar::{self, BranchIndex, Coeff, Exponent};
use crate::series::Series;

pub trait Coefficient: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn add(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn scale(&self, z: Coeff) -> Self;
    fn inverse(&self) -> Result<Self>;
    /// Branch-indexed power `self^{t;n}`.
    fn power(&self, t: &Exponent, n: BranchIndex) -> Result<Self>;
    /// Argument in `[0, 2π)`; for a series, that of its leading coefficient.
    fn argument(&self) -> Result<f64>;
    fn is_negligible(&self) -> bool;
    /// Whether a stored coefficient may be dropped. A zero series still
    /// records the window on which it is known to vanish, so it stays.
    fn prunable(&self) -> bool {
        self.is_negligible()
    }
    /// Largest coefficient discrepancy against `other` (or against zero when
    /// `other` is `None`) over the region where both are known.
    fn distance(&self, other: Option<&Self>) -> f64;

    fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }
}

impl Coefficient for Coeff {
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }

    fn scale(&self, z: Coeff) -> Self {
        self * z
    }

    fn inverse(&self) -> Result<Self> {
        if self.re == 0.0 && self.im == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv())
    }

    fn power(&self, t: &Exponent, n: BranchIndex) -> Result<Self> {
        scalar::cpow(*self, t, n)
    }

    fn argument(&self) -> Result<f64> {
        let p = scalar::to_polar(*self)?;
        if p.modulus == 0.0 {
            return Err(Error::UndefinedArgument);
        }
        Ok(p.argument)
    }

    fn is_negligible(&self) -> bool {
        scalar::is_negligible(*self)
    }

    fn distance(&self, other: Option<&Self>) -> f64 {
        match other {
            Some(o) => (self - o).norm(),
            None => self.norm(),
        }
    }
}

impl<C: Coefficient> Coefficient for Series<C> {
    fn add(&self, other: &Self) -> Result<Self> {
        Series::add(self, other)
    }

    fn neg(&self) -> Self {
        Series::neg(self)
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        Series::mul(self, other)
    }

    fn scale(&self, z: Coeff) -> Self {
        self.scalar_mul(z)
    }

    fn inverse(&self) -> Result<Self> {
        self.invert()
    }

    fn power(&self, t: &Exponent, n: BranchIndex) -> Result<Self> {
        power::pow(self, t, n)
    }

    fn argument(&self) -> Result<f64> {
        power::arg_of(self)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn prunable(&self) -> bool {
        false
    }

    fn distance(&self, other: Option<&Self>) -> f64 {
        match other {
            Some(o) => self.max_difference(o),
            None => self.terms().map(|(_, c)| c.distance(None)).fold(0.0, f64::max),
        }
    }
}
