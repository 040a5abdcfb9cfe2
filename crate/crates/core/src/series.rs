//! Truncation-windowed Artinian and Noetherian series.
//!
//! A [`Series`] stores finitely many terms together with a window bound.
//! For a Noetherian series every exponent below the bound is exact and
//! everything at or above it is unknown; an Artinian series is the mirror
//! image (exact above the bound). Every operation computes the window of its
//! result so that no reported coefficient can be changed by terms the inputs
//! did not carry.
//!
//! Ring operations and inversion are implemented for the Noetherian
//! orientation and reach Artinian series through [`Series::dualize`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Exponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Minimum degree; exact below the window bound.
    Noetherian,
    /// Maximum degree; exact above the window bound.
    Artinian,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Noetherian => Orientation::Artinian,
            Orientation::Artinian => Orientation::Noetherian,
        }
    }

    pub fn in_exact_region(self, exponent: &Exponent, bound: &Exponent) -> bool {
        match self {
            Orientation::Noetherian => exponent < bound,
            Orientation::Artinian => exponent > bound,
        }
    }

    /// The more restrictive of two bounds.
    pub fn tighter(self, a: &Exponent, b: &Exponent) -> Exponent {
        match self {
            Orientation::Noetherian => a.min(b).clone(),
            Orientation::Artinian => a.max(b).clone(),
        }
    }

    /// Whether `a` comes before `b` when a series is read from its leading term.
    pub fn precedes(self, a: &Exponent, b: &Exponent) -> bool {
        match self {
            Orientation::Noetherian => a < b,
            Orientation::Artinian => a > b,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Noetherian => "noetherian",
            Orientation::Artinian => "artinian",
        })
    }
}

/// Degree with sentinels for the zero series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degree {
    Finite(Exponent),
    PosInfinity,
    NegInfinity,
}

impl Degree {
    pub fn finite(&self) -> Option<&Exponent> {
        match self {
            Degree::Finite(e) => Some(e),
            _ => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(e) => write!(f, "{e}"),
            Degree::PosInfinity => f.write_str("+inf"),
            Degree::NegInfinity => f.write_str("-inf"),
        }
    }
}

/// Exponent monoid used when deciding invertibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExponentMonoid {
    #[default]
    Rational,
    /// Nonnegative integers only: just the series of degree zero invert.
    Natural,
}

#[derive(Clone, PartialEq)]
pub struct Series<C = Coeff> {
    orientation: Orientation,
    terms: BTreeMap<Exponent, C>,
    bound: Exponent,
}

fn window_violation(exponent: &Exponent, bound: &Exponent) -> Error {
    Error::WindowViolation { exponent: exponent.to_string(), bound: bound.to_string() }
}

fn accumulate<C: Coefficient>(map: &mut BTreeMap<Exponent, C>, exponent: Exponent, value: C) -> Result<()> {
    match map.get_mut(&exponent) {
        Some(existing) => *existing = existing.add(&value)?,
        None => {
            map.insert(exponent, value);
        }
    }
    Ok(())
}

impl<C: Coefficient> Series<C> {
    /// Builds a series from explicit terms, pruning negligible coefficients.
    pub fn make(
        orientation: Orientation,
        terms: impl IntoIterator<Item = (Exponent, C)>,
        bound: Exponent,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if !orientation.in_exact_region(&e, &bound) {
                return Err(window_violation(&e, &bound));
            }
            if map.contains_key(&e) {
                return Err(Error::DuplicateExponent(e.to_string()));
            }
            map.insert(e, c);
        }
        Ok(Self::from_map(orientation, map, bound))
    }

    /// Drops terms outside the exact region and negligible coefficients.
    pub(crate) fn from_map(orientation: Orientation, mut terms: BTreeMap<Exponent, C>, bound: Exponent) -> Self {
        terms.retain(|e, c| orientation.in_exact_region(e, &bound) && !c.prunable());
        Series { orientation, terms, bound }
    }

    pub fn zero(orientation: Orientation, bound: Exponent) -> Self {
        Series { orientation, terms: BTreeMap::new(), bound }
    }

    pub fn monomial(orientation: Orientation, coeff: C, exponent: Exponent, bound: Exponent) -> Result<Self> {
        Self::make(orientation, [(exponent, coeff)], bound)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn bound(&self) -> &Exponent {
        &self.bound
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &C)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No stored terms; see [`Series::is_zero`] for numerical zero.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_negligible())
    }

    pub fn in_exact_region(&self, exponent: &Exponent) -> bool {
        self.orientation.in_exact_region(exponent, &self.bound)
    }

    /// Leading term: the minimum exponent for Noetherian series, the maximum
    /// for Artinian ones.
    pub fn leading(&self) -> Option<(&Exponent, &C)> {
        match self.orientation {
            Orientation::Noetherian => self.terms.iter().find(|(_, c)| !c.is_negligible()),
            Orientation::Artinian => self.terms.iter().rev().find(|(_, c)| !c.is_negligible()),
        }
    }

    pub fn degree(&self) -> Degree {
        match (self.leading(), self.orientation) {
            (Some((e, _)), _) => Degree::Finite(e.clone()),
            (None, Orientation::Noetherian) => Degree::PosInfinity,
            (None, Orientation::Artinian) => Degree::NegInfinity,
        }
    }

    /// Degree, or the window bound for the zero series. This is the best
    /// known lower (resp. upper) limit on where the true series starts.
    pub(crate) fn degree_or_bound(&self) -> &Exponent {
        self.leading().map(|(e, _)| e).unwrap_or(&self.bound)
    }

    /// Stored coefficient of `x^a`; `None` means an exact zero.
    pub fn coefficient(&self, exponent: &Exponent) -> Result<Option<&C>> {
        if !self.in_exact_region(exponent) {
            return Err(Error::PrecisionExceeded {
                exponent: exponent.to_string(),
                bound: self.bound.to_string(),
            });
        }
        Ok(self.terms.get(exponent))
    }

    fn check_orientation(&self, other: &Self) -> Result<()> {
        if self.orientation != other.orientation {
            return Err(Error::OrientationMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_orientation(other)?;
        let bound = self.orientation.tighter(&self.bound, &other.bound);
        let mut map: BTreeMap<Exponent, C> = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            if self.orientation.in_exact_region(e, &bound) {
                accumulate(&mut map, e.clone(), c.clone())?;
            }
        }
        Ok(Self::from_map(self.orientation, map, bound))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, z: Coeff) -> Self {
        self.map_coeffs(|c| c.scale(z))
    }

    /// Multiplies every coefficient by `c` (on the left).
    pub fn mul_coeff(&self, c: &C) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, v) in &self.terms {
            map.insert(e.clone(), c.mul(v)?);
        }
        Ok(Self::from_map(self.orientation, map, self.bound.clone()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let map = self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect();
        Self::from_map(self.orientation, map, self.bound.clone())
    }

    /// Exact multiplication by `x^k`.
    pub fn shift(&self, k: &Exponent) -> Self {
        Series {
            orientation: self.orientation,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            bound: &self.bound + k,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_orientation(other)?;
        match self.orientation {
            Orientation::Noetherian => mul_noetherian(self, other),
            Orientation::Artinian => Ok(mul_noetherian(&self.dualize(), &other.dualize())?.dualize()),
        }
    }

    pub fn invert(&self) -> Result<Self> {
        match self.orientation {
            Orientation::Noetherian => invert_noetherian(self),
            Orientation::Artinian => Ok(invert_noetherian(&self.dualize())?.dualize()),
        }
    }

    /// Inversion where the exponent monoid may lack the additive inverse of
    /// the degree.
    pub fn invert_in(&self, monoid: ExponentMonoid) -> Result<Self> {
        if monoid == ExponentMonoid::Natural {
            match self.leading() {
                None => return Err(Error::DivisionByZero),
                Some((d, _)) if !d.is_zero() => return Err(Error::NoExponentInverse(d.to_string())),
                _ => {}
            }
        }
        self.invert()
    }

    /// The isomorphism `x^a ↦ x^{-a}` between the two orientations.
    pub fn dualize(&self) -> Self {
        Series {
            orientation: self.orientation.flip(),
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
            bound: -&self.bound,
        }
    }

    /// Restricts the window; the new bound may not be looser.
    pub fn truncate(&self, new_bound: &Exponent) -> Result<Self> {
        let tighter = self.orientation.tighter(&self.bound, new_bound);
        if &tighter != new_bound {
            return Err(window_violation(new_bound, &self.bound));
        }
        Ok(Self::from_map(self.orientation, self.terms.clone(), new_bound.clone()))
    }

    /// Largest coefficient discrepancy on the common exact region.
    pub fn max_difference(&self, other: &Self) -> f64 {
        if self.orientation != other.orientation {
            return f64::INFINITY;
        }
        let bound = self.orientation.tighter(&self.bound, &other.bound);
        let exponents: BTreeSet<&Exponent> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|e| self.orientation.in_exact_region(e, &bound))
            .collect();
        exponents
            .into_iter()
            .map(|e| match (self.terms.get(e), other.terms.get(e)) {
                (Some(a), b) => a.distance(b),
                (None, Some(b)) => b.distance(None),
                (None, None) => 0.0,
            })
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_difference(other) <= tol
    }
}

fn mul_noetherian<C: Coefficient>(f: &Series<C>, g: &Series<C>) -> Result<Series<C>> {
    let bound = std::cmp::min(&f.bound + g.degree_or_bound(), &g.bound + f.degree_or_bound());
    let mut map = BTreeMap::new();
    let g_first = match g.terms.keys().next() {
        Some(e) => e.clone(),
        None => return Ok(Series::zero(Orientation::Noetherian, bound)),
    };
    for (a, ca) in &f.terms {
        if a + &g_first >= bound {
            break;
        }
        for (b, cb) in &g.terms {
            let e = a + b;
            if e >= bound {
                break;
            }
            accumulate(&mut map, e, ca.mul(cb)?)?;
        }
    }
    Ok(Series::from_map(Orientation::Noetherian, map, bound))
}

/// Sums of the given positive gaps (with repetition) lying below `limit`,
/// ascending, starting with `0`.
pub(crate) fn gap_lattice(gaps: &[Exponent], limit: &Exponent) -> Vec<Exponent> {
    let mut seen = BTreeSet::new();
    let zero = Exponent::zero();
    if &zero >= limit {
        return Vec::new();
    }
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(p) = frontier.pop() {
        for g in gaps {
            let q = &p + g;
            if &q < limit && seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// Inverse by the coefficient recursion anchored at the leading term:
/// with `f = c·x^d·(1 + Σ_δ (c_δ/c) x^δ)`, each coefficient of the inverse
/// is a finite sum over earlier ones.
fn invert_noetherian<C: Coefficient>(f: &Series<C>) -> Result<Series<C>> {
    let (d, c) = f.leading().ok_or(Error::DivisionByZero)?;
    let d = d.clone();
    let inv_c = c.inverse()?;
    let relative = &f.bound - &d;
    let gaps: Vec<(Exponent, C)> = f
        .terms
        .iter()
        .filter(|(e, _)| **e > d)
        .map(|(e, c)| (e - &d, c.clone()))
        .filter(|(e, _)| e < &relative)
        .collect();
    let gap_values: Vec<Exponent> = gaps.iter().map(|(e, _)| e.clone()).collect();
    let mut h: BTreeMap<Exponent, C> = BTreeMap::new();
    for e in gap_lattice(&gap_values, &relative) {
        if e.is_zero() {
            h.insert(e, inv_c.clone());
            continue;
        }
        let mut sum: Option<C> = None;
        for (delta, cd) in &gaps {
            if delta > &e {
                continue;
            }
            if let Some(prev) = h.get(&(&e - delta)) {
                let term = cd.mul(prev)?;
                sum = Some(match sum {
                    Some(s) => s.add(&term)?,
                    None => term,
                });
            }
        }
        // intermediate values stay unpruned: tiny ones can feed large later terms
        if let Some(s) = sum {
            h.insert(e, inv_c.mul(&s)?.neg());
        }
    }
    let map = h.into_iter().map(|(e, v)| (e - &d, v)).collect();
    Ok(Series::from_map(Orientation::Noetherian, map, &relative - &d))
}

impl Series<Coeff> {
    pub fn constant(orientation: Orientation, c: Coeff, bound: Exponent) -> Result<Self> {
        Self::monomial(orientation, c, Exponent::zero(), bound)
    }

    pub fn one(orientation: Orientation, bound: Exponent) -> Result<Self> {
        Self::constant(orientation, Coeff::new(1.0, 0.0), bound)
    }

    /// The series `x`.
    pub fn x(orientation: Orientation, bound: Exponent) -> Result<Self> {
        Self::monomial(orientation, Coeff::new(1.0, 0.0), Exponent::one(), bound)
    }

    /// `[x^a]f`, zero when no term is stored.
    pub fn coefficient_at(&self, exponent: &Exponent) -> Result<Coeff> {
        Ok(self.coefficient(exponent)?.copied().unwrap_or_default())
    }

    pub fn to_doc(&self) -> SeriesDoc {
        SeriesDoc {
            orientation: self.orientation,
            window: self.bound.to_string(),
            terms: self.terms.iter().map(|(e, c)| TermDoc { exp: e.to_string(), re: c.re, im: c.im }).collect(),
        }
    }

    pub fn from_doc(doc: &SeriesDoc) -> Result<Self> {
        let bound: Exponent = doc.window.parse()?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in &doc.terms {
            if !(t.re.is_finite() && t.im.is_finite()) {
                return Err(Error::InvalidScalar(format!("non-finite coefficient at x^{}", t.exp)));
            }
            terms.push((t.exp.parse()?, Coeff::new(t.re, t.im)));
        }
        Self::make(doc.orientation, terms, bound)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("series serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SeriesDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

/// JSON shape of a series: exponents as exact fraction strings, terms
/// ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub orientation: Orientation,
    pub window: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exp: String,
    pub re: f64,
    pub im: f64,
}

/// `a`, `bi` or `(a+bi)`.
pub fn format_coeff(c: Coeff) -> String {
    match (c.re == 0.0, c.im == 0.0) {
        (_, true) => format!("{}", c.re),
        (true, false) => format!("{}i", c.im),
        (false, false) => format!("({}{:+}i)", c.re, c.im),
    }
}

fn format_power(e: &Exponent) -> String {
    if *e == Exponent::one() {
        "x".to_string()
    } else if e.is_integer() && !e.is_negative() {
        format!("x^{e}")
    } else {
        format!("x^({e})")
    }
}

impl fmt::Display for Series<Coeff> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let (sign, c) = if c.im == 0.0 && c.re < 0.0 && !first { (" - ", -c) } else { (if first { "" } else { " + " }, *c) };
            f.write_str(sign)?;
            first = false;
            let body = format_coeff(c);
            if e.is_zero() {
                f.write_str(&body)?;
            } else if c == Coeff::new(1.0, 0.0) {
                f.write_str(&format_power(e))?;
            } else if c == Coeff::new(-1.0, 0.0) {
                write!(f, "-{}", format_power(e))?;
            } else {
                write!(f, "{body}{}", format_power(e))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({})", format_power(&self.bound))
    }
}

impl<C: Coefficient> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Series")
            .field("orientation", &self.orientation)
            .field("window", &self.bound)
            .field("terms", &self.terms)
            .finish()
    }
}
