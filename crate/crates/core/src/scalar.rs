//! Exact rational exponents, complex coefficients and branch-indexed
//! scalar exponentiation.
//!
//! A nonzero complex number `z = a·e^{iθ}` with `θ ∈ [0, 2π)` has one value
//! of `z^t` for every integer branch `n`:
//!
//! ```text
//! z^{t;n} = a^t · e^{i·t·(θ + 2nπ)}
//! ```
//!
//! Exponents are exact rationals so that exponent collisions and order
//! comparisons are decided without rounding; coefficients are `Complex64`
//! compared against a global tolerance.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
pub use num::Complex;

use crate::error::{Error, Result};

pub type Coeff = Complex<f64>;

/// Integer selecting one value of a multivalued power.
pub type BranchIndex = i64;

const TAU: f64 = 2.0 * PI;
const DEFAULT_TOLERANCE: f64 = 1e-9;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Global zero/equality tolerance for coefficients.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(Ordering::Relaxed))
}

/// Sets the global tolerance. Non-positive or non-finite values are rejected.
pub fn set_tolerance(eps: f64) -> Result<()> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidScalar(format!("tolerance must be positive, got {eps}")));
    }
    TOLERANCE_BITS.store(eps.to_bits(), Ordering::Relaxed);
    Ok(())
}

pub fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

pub fn is_negligible(z: Coeff) -> bool {
    z.norm() <= tolerance()
}

/// Exact rational exponent, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(BigRational);

impl Exponent {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Exponent(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Exponent(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Exponent(r)
    }

    pub fn zero() -> Self {
        Exponent(BigRational::zero())
    }

    pub fn one() -> Self {
        Exponent(BigRational::one())
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            let n = self.0.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.0.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Exponent {
        Exponent(&self.0 - self.0.floor())
    }

    pub fn abs(&self) -> Exponent {
        Exponent(self.0.abs())
    }

    pub fn min<'a>(&'a self, other: &'a Exponent) -> &'a Exponent {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max<'a>(&'a self, other: &'a Exponent) -> &'a Exponent {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `p`, `p/q` and decimal literals such as `-0.125`; decimals are
    /// read as the exact fraction of their digits.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("not an exact rational: {s:?}"));
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(Exponent(BigRational::new(p, q)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits: BigInt = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac)
                .parse()
                .map_err(|_| bad())?;
            let scale = num::pow(BigInt::from(10), frac.len());
            let value = BigRational::new(digits, scale);
            return Ok(Exponent(if negative { -value } else { value }));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Exponent(BigRational::from_integer(n)))
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::from_int(n)
    }
}

macro_rules! exponent_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Exponent> for &Exponent {
            type Output = Exponent;
            fn $method(self, rhs: &Exponent) -> Exponent {
                Exponent((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Exponent> for Exponent {
            type Output = Exponent;
            fn $method(self, rhs: Exponent) -> Exponent {
                Exponent(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Exponent> for Exponent {
            type Output = Exponent;
            fn $method(self, rhs: &Exponent) -> Exponent {
                Exponent(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Exponent> for &Exponent {
            type Output = Exponent;
            fn $method(self, rhs: Exponent) -> Exponent {
                Exponent((&self.0).$method(rhs.0))
            }
        }
    };
}

exponent_binop!(Add, add);
exponent_binop!(Sub, sub);
exponent_binop!(Mul, mul);
exponent_binop!(Div, div);

impl AddAssign<&Exponent> for Exponent {
    fn add_assign(&mut self, rhs: &Exponent) {
        self.0 += &rhs.0;
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-&self.0)
    }
}

/// Modulus/argument form with the argument normalized to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    pub modulus: f64,
    pub argument: f64,
}

fn check_finite(z: Coeff) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidScalar(format!("non-finite value {z}")))
    }
}

/// Normalizes an angle into `[0, 2π)`; values within tolerance of `2π`
/// wrap to `0`.
pub fn normalize_angle(theta: f64) -> f64 {
    let mut a = theta.rem_euclid(TAU);
    if a >= TAU - tolerance() {
        a = 0.0;
    }
    if a == 0.0 {
        0.0
    } else {
        a
    }
}

pub fn to_polar(z: Coeff) -> Result<Polar> {
    check_finite(z)?;
    let modulus = z.norm();
    if modulus == 0.0 {
        return Ok(Polar { modulus: 0.0, argument: 0.0 });
    }
    Ok(Polar { modulus, argument: normalize_angle(z.im.atan2(z.re)) })
}

/// `z^{t;n}`.
pub fn cpow(z: Coeff, t: &Exponent, n: BranchIndex) -> Result<Coeff> {
    check_finite(z)?;
    if z.re == 0.0 && z.im == 0.0 {
        return if t.is_positive() { Ok(Coeff::new(0.0, 0.0)) } else { Err(Error::UndefinedPower) };
    }
    // Integer powers do not depend on the branch.
    if let Some(k) = t.to_i64() {
        if let Ok(k) = i32::try_from(k) {
            if k.unsigned_abs() <= 64 {
                return Ok(z.powi(k));
            }
        }
    }
    let polar = to_polar(z)?;
    let tf = t.to_f64();
    // t·2nπ reduced exactly modulo 2π before going to floating point.
    let winding = (t * Exponent::from_int(n)).fract().to_f64();
    let phase = tf * polar.argument + TAU * winding;
    Ok(Coeff::from_polar(polar.modulus.powf(tf), phase))
}

/// Branch `k` with `(z1·z2)^{t;k} = z1^{t;n}·z2^{t;m}`.
pub fn product_branch(z1: Coeff, z2: Coeff, n: BranchIndex, m: BranchIndex) -> Result<BranchIndex> {
    let a1 = nonzero_argument(z1)?;
    let a2 = nonzero_argument(z2)?;
    Ok(branch_for_argument_sum(a1, a2, n, m))
}

pub(crate) fn branch_for_argument_sum(a1: f64, a2: f64, n: BranchIndex, m: BranchIndex) -> BranchIndex {
    if a1 + a2 >= TAU - tolerance() {
        n + m + 1
    } else {
        n + m
    }
}

/// Branch `j` with `z^{st;n} = (z^{s;n})^{t;j}`.
///
/// `j = floor(s·(arg z + 2nπ)/2π)`, which reduces to `n + floor(s·arg z/2π)`
/// when `n = 0`.
pub fn iterate_branch(z: Coeff, s: &Exponent, n: BranchIndex) -> Result<BranchIndex> {
    let theta = nonzero_argument(z)?;
    Ok(branch_for_iterate(theta, s, n))
}

pub(crate) fn branch_for_iterate(theta: f64, s: &Exponent, n: BranchIndex) -> BranchIndex {
    // s·n is split into its exact integer and fractional parts so large n stay exact.
    let sn = s * Exponent::from_int(n);
    let whole = sn.floor().to_i64().expect("branch index overflow");
    let x = s.to_f64() * theta / TAU + sn.fract().to_f64();
    whole + (x + tolerance() / TAU).floor() as i64
}

fn nonzero_argument(z: Coeff) -> Result<f64> {
    let p = to_polar(z)?;
    if p.modulus == 0.0 {
        return Err(Error::InvalidScalar("zero has no branch".into()));
    }
    Ok(p.argument)
}

/// `t(t-1)···(t-m+1)` in exact arithmetic.
pub fn falling_factorial(t: &Exponent, m: u32) -> Exponent {
    let mut acc = Exponent::one();
    let mut factor = t.clone();
    let one = Exponent::one();
    for _ in 0..m {
        acc = acc * &factor;
        factor = factor - &one;
    }
    acc
}

/// Falling factorial of a complex argument.
pub fn falling_factorial_complex(t: Coeff, m: u32) -> Coeff {
    (0..m).fold(Coeff::new(1.0, 0.0), |acc, j| acc * (t - j as f64))
}

/// `t(t-1)···(t-k+1)/k!` exactly.
pub fn binomial(t: &Exponent, k: u32) -> Exponent {
    falling_factorial(t, k) / Exponent::from_ratio(BigRational::from_integer(factorial(k)))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Finite multiset: key → positive multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multiset<K: Ord> {
    entries: BTreeMap<K, u32>,
}

impl<K: Ord> Multiset<K> {
    pub fn new() -> Self {
        Multiset { entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, key: K, count: u32) {
        if count > 0 {
            *self.entries.entry(key).or_insert(0) += count;
        }
    }

    /// `|M|`, the sum of multiplicities.
    pub fn size(&self) -> u32 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, u32)> {
        self.entries.iter().map(|(k, &c)| (k, c))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<K: Ord> FromIterator<(K, u32)> for Multiset<K> {
    fn from_iter<I: IntoIterator<Item = (K, u32)>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for (k, c) in iter {
            m.insert(k, c);
        }
        m
    }
}

/// Multinomial coefficient `falling(t, |M|) / ∏ M(j)!`, exact.
pub fn multiset_binomial_exact<K: Ord>(t: &Exponent, multiset: &Multiset<K>) -> Exponent {
    let denom = multiset.iter().fold(BigInt::one(), |acc, (_, c)| acc * factorial(c));
    falling_factorial(t, multiset.size()) / Exponent::from_ratio(BigRational::from_integer(denom))
}

pub fn multiset_binomial<K: Ord>(t: &Exponent, multiset: &Multiset<K>) -> Coeff {
    Coeff::new(multiset_binomial_exact(t, multiset).to_f64(), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Coeff {
        Coeff::new(re, im)
    }

    fn close(a: Coeff, b: Coeff) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn default_tolerance_bits() {
        assert_eq!(f64::from_bits(0x3E11_2E0B_E826_D695), 1e-9);
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("3/6".parse::<Exponent>().unwrap(), Exponent::new(1, 2));
        assert_eq!("-0.125".parse::<Exponent>().unwrap(), Exponent::new(-1, 8));
        assert_eq!("0.1".parse::<Exponent>().unwrap(), Exponent::new(1, 10));
        assert_eq!("7".parse::<Exponent>().unwrap(), Exponent::from_int(7));
        assert_eq!(Exponent::new(2, -4).to_string(), "-1/2");
        assert!("1/0".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
    }

    #[test]
    fn polar_examples() {
        let p = to_polar(c(0.0, 2.0)).unwrap();
        assert!((p.modulus - 2.0).abs() < 1e-15 && (p.argument - PI / 2.0).abs() < 1e-15);
        assert_eq!(to_polar(c(0.0, 0.0)).unwrap(), Polar { modulus: 0.0, argument: 0.0 });
        let p = to_polar(c(-4.0, 0.0)).unwrap();
        assert!((p.modulus - 4.0).abs() < 1e-15 && (p.argument - PI).abs() < 1e-15);
        assert!(to_polar(c(f64::NAN, 0.0)).is_err());
        // just below the positive real axis wraps to zero
        assert_eq!(to_polar(c(1.0, -1e-17)).unwrap().argument, 0.0);
    }

    #[test]
    fn cpow_examples() {
        let half = Exponent::new(1, 2);
        assert!(close(cpow(c(-4.0, 0.0), &half, 0).unwrap(), c(0.0, 2.0)));
        assert!(close(cpow(c(-4.0, 0.0), &half, 1).unwrap(), c(0.0, -2.0)));
        let z = c(0.3, -1.7);
        for n in -3..=3 {
            assert!(close(cpow(z, &Exponent::one(), n).unwrap(), z));
        }
        assert_eq!(cpow(c(0.0, 0.0), &half, 4).unwrap(), c(0.0, 0.0));
        assert_eq!(cpow(c(0.0, 0.0), &Exponent::zero(), 0), Err(Error::UndefinedPower));
        assert_eq!(cpow(c(0.0, 0.0), &Exponent::from_int(-2), 0), Err(Error::UndefinedPower));
    }

    #[test]
    fn product_branch_examples() {
        let i = c(0.0, 1.0);
        assert_eq!(product_branch(i, i, 0, 0).unwrap(), 0);
        assert_eq!(product_branch(c(-1.0, 0.0), c(-1.0, 0.0), 0, 0).unwrap(), 1);
        assert_eq!(product_branch(c(-1.0, 0.0), c(-1.0, 0.0), 2, 3).unwrap(), 6);
        // cpow(1, 1/2, 1) = -1 = i·i
        let lhs = cpow(c(1.0, 0.0), &Exponent::new(1, 2), 1).unwrap();
        assert!(close(lhs, c(-1.0, 0.0)));
        assert!(product_branch(c(0.0, 0.0), i, 0, 0).is_err());
    }

    #[test]
    fn iterate_branch_examples() {
        assert_eq!(iterate_branch(c(2.5, 0.0), &Exponent::new(7, 3), 0).unwrap(), 0);
        assert_eq!(iterate_branch(c(-1.0, 0.0), &Exponent::from_int(3), 0).unwrap(), 1);
        assert_eq!(iterate_branch(c(-1.0, 0.0), &Exponent::new(1, 2), 0).unwrap(), 0);
        // both sides at t = 1/3
        let t = Exponent::new(1, 3);
        let s = Exponent::from_int(3);
        let lhs = cpow(c(-1.0, 0.0), &(&s * &t), 0).unwrap();
        let inner = cpow(c(-1.0, 0.0), &s, 0).unwrap();
        let rhs = cpow(inner, &t, 1).unwrap();
        assert!(close(lhs, rhs));
        assert!(iterate_branch(c(0.0, 0.0), &s, 0).is_err());
    }

    #[test]
    fn iterate_branch_nonzero_start() {
        // z = -1, s = 1/2, n = 1: the offset must account for the 2nπ winding
        let z = c(-1.0, 0.0);
        let s = Exponent::new(1, 2);
        let j = iterate_branch(z, &s, 1).unwrap();
        let t = Exponent::new(2, 7);
        let lhs = cpow(z, &(&s * &t), 1).unwrap();
        let rhs = cpow(cpow(z, &s, 1).unwrap(), &t, j).unwrap();
        assert!(close(lhs, rhs));
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(&Exponent::new(1, 2), 2), Exponent::new(-1, 4));
        assert_eq!(falling_factorial(&Exponent::new(3, 7), 0), Exponent::one());
        assert_eq!(falling_factorial(&Exponent::from_int(5), 6), Exponent::zero());
        assert!(close(falling_factorial_complex(c(0.5, 0.0), 2), c(-0.25, 0.0)));
    }

    #[test]
    fn multiset_binomial_examples() {
        let t = Exponent::new(1, 2);
        let empty: Multiset<Exponent> = Multiset::new();
        assert_eq!(multiset_binomial_exact(&t, &empty), Exponent::one());
        let one: Multiset<&str> = [("a", 1)].into_iter().collect();
        assert_eq!(multiset_binomial_exact(&t, &one), Exponent::new(1, 2));
        let two: Multiset<&str> = [("a", 2)].into_iter().collect();
        assert_eq!(multiset_binomial_exact(&t, &two), Exponent::new(-1, 8));
        assert_eq!(two.size(), 2);
    }

    #[test]
    fn tolerance_rejects_nonpositive() {
        assert!(set_tolerance(0.0).is_err());
        assert!(set_tolerance(f64::NAN).is_err());
    }
}
