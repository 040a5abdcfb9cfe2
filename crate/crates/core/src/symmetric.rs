//! Symmetric series in `N` variables indexed by real partitions.
//!
//! A [`SymSeries`] stores coefficients on the monomial basis `m_β` and is
//! exact for partitions of weight below its cutoff. Real-exponent products of
//! the generators `e_k`, `h_k`, `p_k` are computed in the nested multivariate
//! representation and collected back onto the monomial basis.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nested::{FlatTerms, NestedValue};
use crate::scalar::{self, BranchIndex, Coeff, Exponent};
use crate::series::format_coeff;

/// A nonincreasing list of positive rational parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RealPartition(Vec<Exponent>);

impl RealPartition {
    /// Zero parts are dropped; negative or increasing parts are rejected.
    pub fn new(parts: Vec<Exponent>) -> Result<Self> {
        if let Some(p) = parts.iter().find(|p| p.is_negative()) {
            return Err(Error::InvalidPartition(format!("negative part {p}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts must be nonincreasing".into()));
        }
        Ok(RealPartition(parts.into_iter().filter(|p| !p.is_zero()).collect()))
    }

    pub fn from_ints(parts: &[i64]) -> Result<Self> {
        Self::new(parts.iter().map(|&p| Exponent::from_int(p)).collect())
    }

    pub fn empty() -> Self {
        RealPartition(Vec::new())
    }

    /// The partition whose parts are the sorted entries of `exps`, if all are
    /// nonnegative.
    pub fn canonical(exps: &[Exponent]) -> Option<Self> {
        if exps.iter().any(|e| e.is_negative()) {
            return None;
        }
        let mut parts: Vec<Exponent> = exps.iter().filter(|e| !e.is_zero()).cloned().collect();
        parts.sort_by(|a, b| b.cmp(a));
        Some(RealPartition(parts))
    }

    pub fn parts(&self) -> &[Exponent] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> Exponent {
        self.0.iter().fold(Exponent::zero(), |acc, p| acc + p)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Exponent::is_integer)
    }

    /// `β_k - β_{k+1}` for `k = 1..ℓ`, with `β_{ℓ+1} = 0`.
    pub fn differences(&self) -> Vec<Exponent> {
        let zero = Exponent::zero();
        (0..self.0.len()).map(|k| &self.0[k] - self.0.get(k + 1).unwrap_or(&zero)).collect()
    }

    /// The parts padded with zeros to `nvars` slots.
    pub fn padded(&self, nvars: usize) -> Result<Vec<Exponent>> {
        if self.len() > nvars {
            return Err(Error::TooFewVariables { len: self.len(), nvars });
        }
        let mut v = self.0.clone();
        v.resize(nvars, Exponent::zero());
        Ok(v)
    }

    /// `∏ m_i!` over the multiplicities of equal parts: the coefficient of
    /// `m_λ` in `p_λ`.
    fn multiplicity_factorials(&self) -> f64 {
        let mut product = 1.0;
        let mut run = 0.0;
        for (i, p) in self.0.iter().enumerate() {
            run = if i > 0 && &self.0[i - 1] == p { run + 1.0 } else { 1.0 };
            product *= run;
        }
        product
    }
}

impl fmt::Display for RealPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Integer partitions of `n` with at most `max_len` parts, in decreasing
/// lexicographic order.
pub fn integer_partitions(n: u32, max_len: usize) -> Vec<RealPartition> {
    fn go(rest: u32, cap: u32, max_len: usize, cur: &mut Vec<i64>, out: &mut Vec<RealPartition>) {
        if rest == 0 {
            out.push(RealPartition::from_ints(cur).expect("valid partition"));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=rest.min(cap)).rev() {
            cur.push(p as i64);
            go(rest - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_len, &mut Vec::new(), &mut out);
    out
}

/// All distinct permutations of `β` padded into `nvars` slots.
pub fn monomial_expand(beta: &RealPartition, nvars: usize) -> Result<Vec<Vec<Exponent>>> {
    let mut v = beta.padded(nvars)?;
    v.sort();
    let mut out = vec![v.clone()];
    // lexicographic next-permutation walk visits each distinct arrangement once
    while let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    Ok(out)
}

/// `m_β` as a nested series in `nvars` variables.
pub fn monomial_nested(beta: &RealPartition, nvars: usize, window: &Exponent) -> Result<NestedValue> {
    let terms: FlatTerms = monomial_expand(beta, nvars)?.into_iter().map(|e| (e, Coeff::new(1.0, 0.0))).collect();
    NestedValue::from_flat(nvars, &terms, window)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Elementary,
    Complete,
    PowerSum,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::Elementary => "e",
            Family::Complete => "h",
            Family::PowerSum => "p",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(Family::Elementary),
            "h" => Ok(Family::Complete),
            "p" => Ok(Family::PowerSum),
            other => Err(Error::Malformed(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymSeries {
    nvars: usize,
    coeffs: BTreeMap<RealPartition, Coeff>,
    cutoff: Exponent,
}

impl SymSeries {
    pub fn new(nvars: usize, coeffs: impl IntoIterator<Item = (RealPartition, Coeff)>, cutoff: Exponent) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::Malformed("a symmetric series needs at least one variable".into()));
        }
        let mut map: BTreeMap<RealPartition, Coeff> = BTreeMap::new();
        for (beta, c) in coeffs {
            if beta.len() > nvars {
                return Err(Error::TooFewVariables { len: beta.len(), nvars });
            }
            let w = beta.weight();
            if w >= cutoff {
                return Err(Error::WindowViolation { exponent: w.to_string(), bound: cutoff.to_string() });
            }
            *map.entry(beta).or_default() += c;
        }
        Ok(Self::from_map(nvars, map, cutoff))
    }

    fn from_map(nvars: usize, mut coeffs: BTreeMap<RealPartition, Coeff>, cutoff: Exponent) -> Self {
        coeffs.retain(|b, c| !scalar::is_negligible(*c) && b.len() <= nvars && b.weight() < cutoff);
        SymSeries { nvars, coeffs, cutoff }
    }

    pub fn zero(nvars: usize, cutoff: Exponent) -> Self {
        Self::from_map(nvars, BTreeMap::new(), cutoff)
    }

    pub fn constant(nvars: usize, c: Coeff, cutoff: Exponent) -> Self {
        Self::from_map(nvars, BTreeMap::from([(RealPartition::empty(), c)]), cutoff)
    }

    pub fn monomial(beta: RealPartition, nvars: usize, cutoff: Exponent) -> Result<Self> {
        Self::new(nvars, [(beta, Coeff::new(1.0, 0.0))], cutoff)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cutoff(&self) -> &Exponent {
        &self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RealPartition, &Coeff)> + '_ {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `m_β`; zero if absent or if `ℓ(β) > N` (where `m_β = 0`).
    pub fn coefficient(&self, beta: &RealPartition) -> Result<Coeff> {
        let w = beta.weight();
        if w >= self.cutoff {
            return Err(Error::PrecisionExceeded { exponent: w.to_string(), bound: self.cutoff.to_string() });
        }
        Ok(self.coeffs.get(beta).copied().unwrap_or_default())
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut map = self.coeffs.clone();
        for (b, c) in &other.coeffs {
            *map.entry(b.clone()).or_default() += c;
        }
        Ok(Self::from_map(self.nvars, map, std::cmp::min(&self.cutoff, &other.cutoff).clone()))
    }

    pub fn scale(&self, z: Coeff) -> Self {
        Self::from_map(self.nvars, self.coeffs.iter().map(|(b, c)| (b.clone(), c * z)).collect(), self.cutoff.clone())
    }

    pub fn neg(&self) -> Self {
        self.scale(Coeff::new(-1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// The monomial expansion in `N` variables.
    pub fn to_flat(&self) -> FlatTerms {
        let mut out = FlatTerms::new();
        for (beta, c) in &self.coeffs {
            for e in monomial_expand(beta, self.nvars).expect("stored partitions fit") {
                *out.entry(e).or_default() += c;
            }
        }
        out
    }

    /// Reads the coefficient of each canonical (nonincreasing) monomial of a
    /// symmetric flat expansion.
    fn from_symmetric_flat(nvars: usize, flat: &FlatTerms, cutoff: Exponent) -> Self {
        let map = flat
            .iter()
            .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]) && !e.iter().any(Exponent::is_negative))
            .map(|(e, c)| (RealPartition::canonical(e).expect("nonnegative"), *c))
            .collect();
        Self::from_map(nvars, map, cutoff)
    }

    pub fn max_difference(&self, other: &Self) -> f64 {
        let cutoff = std::cmp::min(&self.cutoff, &other.cutoff);
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .filter(|b| &b.weight() < cutoff)
            .map(|b| {
                let a = self.coeffs.get(b).copied().unwrap_or_default();
                let c = other.coeffs.get(b).copied().unwrap_or_default();
                (a - c).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.nvars == other.nvars && self.max_difference(other) <= tol
    }

    pub fn to_doc(&self) -> SymDoc {
        SymDoc {
            nvars: self.nvars,
            cutoff: self.cutoff.to_string(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, c)| SymTermDoc { partition: b.parts().iter().map(|p| p.to_string()).collect(), re: c.re, im: c.im })
                .collect(),
        }
    }

    pub fn from_doc(doc: &SymDoc) -> Result<Self> {
        let cutoff: Exponent = doc.cutoff.parse()?;
        let mut terms = Vec::with_capacity(doc.coeffs.len());
        for t in &doc.coeffs {
            let parts = t.partition.iter().map(|p| p.parse()).collect::<Result<Vec<Exponent>>>()?;
            let beta = RealPartition::new(parts)?;
            if terms.iter().any(|(b, _)| b == &beta) {
                return Err(Error::DuplicateExponent(beta.to_string()));
            }
            terms.push((beta, Coeff::new(t.re, t.im)));
        }
        Self::new(doc.nvars, terms, cutoff)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("symmetric series serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SymDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

impl fmt::Display for SymSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (beta, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if *c == Coeff::new(1.0, 0.0) {
                write!(f, "m{beta}")?;
            } else {
                write!(f, "{}·m{beta}", format_coeff(*c))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(weight {})", self.cutoff)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymDoc {
    pub nvars: usize,
    pub cutoff: String,
    pub coeffs: Vec<SymTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymTermDoc {
    pub partition: Vec<String>,
    pub re: f64,
    pub im: f64,
}

fn flat_mul(a: &FlatTerms, b: &FlatTerms, cutoff: &Exponent) -> FlatTerms {
    let mut out = FlatTerms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<Exponent> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let total = e.iter().fold(Exponent::zero(), |acc, x| acc + x);
            if &total < cutoff {
                *out.entry(e).or_default() += ca * cb;
            }
        }
    }
    out
}

pub fn sym_mul(f: &SymSeries, g: &SymSeries) -> Result<SymSeries> {
    f.check_vars(g)?;
    let cutoff = std::cmp::min(&f.cutoff, &g.cutoff).clone();
    let product = flat_mul(&f.to_flat(), &g.to_flat(), &cutoff);
    Ok(SymSeries::from_symmetric_flat(f.nvars, &product, cutoff))
}

/// The multiplicative inverse; requires a nonzero constant term.
pub fn sym_invert(f: &SymSeries) -> Result<SymSeries> {
    let c = f.coeffs.get(&RealPartition::empty()).copied().unwrap_or_default();
    if scalar::is_negligible(c) {
        return Err(Error::DivisionByZero);
    }
    // f = c(1 + u) with u of positive weight, so Σ (-u)^k terminates
    let one = SymSeries::constant(f.nvars, Coeff::new(1.0, 0.0), f.cutoff.clone());
    let minus_u = one.sub(&f.scale(1.0 / c))?;
    let mut term = one.clone();
    let mut acc = one;
    loop {
        term = sym_mul(&term, &minus_u)?;
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc.scale(1.0 / c))
}

/// Coefficient of `y^n` in `∏_i Σ_{j ∈ steps} x_i^j y^j`.
fn generating_coefficient(n: u32, nvars: usize, cutoff: &Exponent, unbounded_steps: bool) -> FlatTerms {
    let n = n as usize;
    let mut polys: Vec<FlatTerms> = vec![FlatTerms::new(); n + 1];
    polys[0].insert(vec![Exponent::zero(); nvars], Coeff::new(1.0, 0.0));
    for i in 0..nvars {
        let mut next = vec![FlatTerms::new(); n + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let max_j = if unbounded_steps { k } else { k.min(1) };
            for j in 0..=max_j {
                for (e, c) in &polys[k - j] {
                    let mut e = e.clone();
                    e[i] = &e[i] + Exponent::from_int(j as i64);
                    *slot.entry(e).or_default() += c;
                }
            }
        }
        polys = next;
    }
    let mut top = polys.swap_remove(n);
    top.retain(|e, _| &e.iter().fold(Exponent::zero(), |acc, x| acc + x) < cutoff);
    top
}

/// `e_n`: the `y^n` coefficient of `∏(1 + x_i y)`.
pub fn elementary(n: u32, nvars: usize, cutoff: Exponent) -> SymSeries {
    let flat = generating_coefficient(n, nvars, &cutoff, false);
    SymSeries::from_symmetric_flat(nvars, &flat, cutoff)
}

/// `h_n`: the `y^n` coefficient of `∏(1 - x_i y)^{-1}`.
pub fn complete(n: u32, nvars: usize, cutoff: Exponent) -> SymSeries {
    let flat = generating_coefficient(n, nvars, &cutoff, true);
    SymSeries::from_symmetric_flat(nvars, &flat, cutoff)
}

/// `p_n = Σ x_i^n`.
pub fn powersum(n: u32, nvars: usize, cutoff: Exponent) -> SymSeries {
    if n == 0 {
        return SymSeries::constant(nvars, Coeff::new(nvars as f64, 0.0), cutoff);
    }
    let beta = RealPartition::from_ints(&[n as i64]).expect("single part");
    SymSeries::from_map(nvars, BTreeMap::from([(beta, Coeff::new(1.0, 0.0))]), cutoff)
}

pub fn generator(family: Family, n: u32, nvars: usize, cutoff: Exponent) -> SymSeries {
    match family {
        Family::Elementary => elementary(n, nvars, cutoff),
        Family::Complete => complete(n, nvars, cutoff),
        Family::PowerSum => powersum(n, nvars, cutoff),
    }
}

/// Per-variable window for the nested computation at a graded cutoff.
fn nested_window(cutoff: &Exponent) -> Exponent {
    let floor = Exponent::from_int(2);
    std::cmp::max(cutoff * Exponent::from_int(2) + Exponent::from_int(2), floor)
}

/// `∏_k g_k^{s_k}` on branch `n` in the nested representation, where
/// `s_k = exps[k - 1]`.
pub fn generator_product(
    family: Family,
    exps: &[Exponent],
    n: BranchIndex,
    nvars: usize,
    cutoff: &Exponent,
) -> Result<NestedValue> {
    let window = nested_window(cutoff);
    let mut acc = NestedValue::unit(nvars, &window)?;
    for (i, s) in exps.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let k = i as u32 + 1;
        let w = std::cmp::max(window.clone(), Exponent::from_int(k as i64 + 1));
        let g = generator(family, k, nvars, w.clone());
        let nested = NestedValue::from_flat(nvars, &g.to_flat(), &w)?;
        acc = acc.mul(&nested.pow(s, n)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    /// Largest gap between coefficients of permuted monomials.
    pub max_defect: f64,
    /// Terms with a negative exponent, which no `m_β` can hold.
    pub off_partition_terms: usize,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisProduct {
    pub series: SymSeries,
    pub report: SymmetryReport,
}

/// Collects a nested result onto the monomial basis below `cutoff`, with a
/// diagnostic of how far it is from symmetric.
pub fn collect_symmetric(value: &NestedValue, cutoff: &Exponent) -> Result<BasisProduct> {
    let nvars = value.nvars();
    let flat = value.flatten();
    let mut off = 0;
    let mut seen = BTreeSet::new();
    let mut scale: f64 = 0.0;
    for (e, c) in &flat {
        if scalar::is_negligible(*c) {
            continue;
        }
        scale = scale.max(c.norm());
        match RealPartition::canonical(e) {
            None => off += 1,
            Some(beta) if &beta.weight() < cutoff => {
                seen.insert(beta);
            }
            Some(_) => {}
        }
    }
    let series = SymSeries::from_symmetric_flat(nvars, &flat, cutoff.clone());
    let mut defect: f64 = 0.0;
    for beta in &seen {
        let c = series.coeffs.get(beta).copied().unwrap_or_default();
        for perm in monomial_expand(beta, nvars)? {
            if value.exact_at(&perm) {
                let d = flat.get(&perm).copied().unwrap_or_default();
                defect = defect.max((d - c).norm());
            }
        }
    }
    let symmetric = off == 0 && defect <= scalar::tolerance() * (1.0 + scale);
    Ok(BasisProduct { series, report: SymmetryReport { max_defect: defect, off_partition_terms: off, symmetric } })
}

/// `e_β`, `h_β` or `p_β`: `∏_k g_k^{β_k - β_{k+1}}` on branch `n`.
pub fn basis_product(
    family: Family,
    beta: &RealPartition,
    n: BranchIndex,
    nvars: usize,
    cutoff: &Exponent,
) -> Result<BasisProduct> {
    let value = generator_product(family, &beta.differences(), n, nvars, cutoff)?;
    if beta.is_integral() && &beta.weight() < cutoff {
        // the product is homogeneous of weight |β|; every monomial there must be known
        let w = beta.weight();
        let weight = w.to_i64().expect("integral weight") as u32;
        for lambda in integer_partitions(weight, nvars) {
            if !value.exact_at(&lambda.padded(nvars)?) {
                return Err(Error::PrecisionExceeded { exponent: w.to_string(), bound: nested_window(cutoff).to_string() });
            }
        }
    }
    collect_symmetric(&value, cutoff)
}

/// Largest coefficient gap between `∏ g^s · ∏ g^t` and `∏ g^{s+t}`.
pub fn exponential_law_defect(
    family: Family,
    s: &[Exponent],
    t: &[Exponent],
    n: BranchIndex,
    nvars: usize,
    cutoff: &Exponent,
) -> Result<f64> {
    let len = s.len().max(t.len());
    let get = |v: &[Exponent], i: usize| v.get(i).cloned().unwrap_or_else(Exponent::zero);
    let sum: Vec<Exponent> = (0..len).map(|i| get(s, i) + get(t, i)).collect();
    let left = generator_product(family, s, n, nvars, cutoff)?.mul(&generator_product(family, t, n, nvars, cutoff)?)?;
    let right = generator_product(family, &sum, n, nvars, cutoff)?;
    left.max_difference(&right)
}

/// `p_λ = ∏ p_{λ_i}` for an integer partition.
pub fn powersum_product(lambda: &RealPartition, nvars: usize, cutoff: &Exponent) -> Result<SymSeries> {
    let mut acc = SymSeries::constant(nvars, Coeff::new(1.0, 0.0), cutoff.clone());
    for part in lambda.parts() {
        let k = part.to_i64().filter(|k| *k > 0).ok_or_else(|| Error::UnsupportedBasis(lambda.to_string()))?;
        acc = sym_mul(&acc, &powersum(k as u32, nvars, cutoff.clone()))?;
    }
    Ok(acc)
}

/// Coordinates of `f` on the products `p_λ` with `ℓ(λ) ≤ N`.
///
/// `p_λ` is `∏m_i!·m_λ` plus monomials of strictly shorter partitions, so
/// solving from the longest partitions down is a triangular elimination.
pub fn to_powersum_basis(f: &SymSeries) -> Result<BTreeMap<RealPartition, Coeff>> {
    if let Some((beta, _)) = f.coeffs.iter().find(|(b, _)| !b.is_integral()) {
        return Err(Error::UnsupportedBasis(beta.to_string()));
    }
    let mut residual = f.coeffs.clone();
    let mut result = BTreeMap::new();
    for len in (0..=f.nvars).rev() {
        let layer: Vec<(RealPartition, Coeff)> =
            residual.iter().filter(|(b, _)| b.len() == len).map(|(b, c)| (b.clone(), *c)).collect();
        for (lambda, a) in layer {
            let p = powersum_product(&lambda, f.nvars, &f.cutoff)?;
            let x = a / lambda.multiplicity_factorials();
            for (gamma, c) in &p.coeffs {
                *residual.entry(gamma.clone()).or_default() -= x * c;
            }
            residual.remove(&lambda);
            result.insert(lambda, x);
        }
    }
    result.retain(|_, c| !scalar::is_negligible(*c));
    Ok(result)
}

pub fn from_powersum_basis(coords: &BTreeMap<RealPartition, Coeff>, nvars: usize, cutoff: &Exponent) -> Result<SymSeries> {
    let mut acc = SymSeries::zero(nvars, cutoff.clone());
    for (lambda, a) in coords {
        acc = acc.add(&powersum_product(lambda, nvars, cutoff)?.scale(*a))?;
    }
    Ok(acc)
}

/// The involution `p_λ ↦ (-1)^{|λ| - ℓ(λ)} p_λ` on the integer span.
pub fn omega(f: &SymSeries) -> Result<SymSeries> {
    let coords = to_powersum_basis(f)?
        .into_iter()
        .map(|(lambda, a)| {
            let parity = lambda.weight().to_i64().expect("integral") - lambda.len() as i64;
            let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
            (lambda, a * sign)
        })
        .collect();
    from_powersum_basis(&coords, f.nvars, &f.cutoff)
}

/// Whether `basis_product(family, β)` is `m_β` plus monomials of partitions
/// strictly below `β` in lexicographic order.
pub fn triangularity_check(family: Family, beta: &RealPartition, nvars: usize, cutoff: &Exponent) -> Result<bool> {
    if !beta.is_integral() {
        return Err(Error::UnsupportedBasis(beta.to_string()));
    }
    let product = basis_product(family, beta, 0, nvars, cutoff)?.series;
    let tol = scalar::tolerance();
    // m_β vanishes when it needs more than N variables
    let lead = if beta.len() <= nvars { Coeff::new(1.0, 0.0) } else { Coeff::default() };
    if (product.coefficient(beta)? - lead).norm() > tol {
        return Ok(false);
    }
    let lower = product.terms().all(|(gamma, c)| gamma <= beta || c.norm() <= tol);
    Ok(lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> Exponent {
        Exponent::from_int(n)
    }

    fn q(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    fn part(parts: &[i64]) -> RealPartition {
        RealPartition::from_ints(parts).unwrap()
    }

    fn re(x: f64) -> Coeff {
        Coeff::new(x, 0.0)
    }

    #[test]
    fn partitions_validate() {
        assert!(RealPartition::new(vec![z(1), z(2)]).is_err());
        assert!(RealPartition::new(vec![z(1), q(-1, 2)]).is_err());
        assert_eq!(RealPartition::new(vec![z(2), z(0)]).unwrap(), part(&[2]));
        assert_eq!(part(&[3, 1, 1]).differences(), vec![z(2), z(0), z(1)]);
        assert_eq!(part(&[2, 2, 1]).multiplicity_factorials(), 2.0);
        assert_eq!(integer_partitions(4, 4).len(), 5);
        assert_eq!(integer_partitions(4, 2), vec![part(&[4]), part(&[3, 1]), part(&[2, 2])]);
    }

    #[test]
    fn monomial_expansion_examples() {
        assert_eq!(monomial_expand(&part(&[1]), 2).unwrap().len(), 2);
        let m11 = monomial_expand(&part(&[1, 1]), 3).unwrap();
        assert_eq!(m11, vec![vec![z(0), z(1), z(1)], vec![z(1), z(0), z(1)], vec![z(1), z(1), z(0)]]);
        let half = RealPartition::new(vec![q(3, 2), q(1, 2)]).unwrap();
        assert_eq!(monomial_expand(&half, 2).unwrap(), vec![vec![q(1, 2), q(3, 2)], vec![q(3, 2), q(1, 2)]]);
        assert_eq!(monomial_expand(&part(&[1, 1, 1]), 2), Err(Error::TooFewVariables { len: 3, nvars: 2 }));
    }

    #[test]
    fn products_and_generators() {
        let m1 = SymSeries::monomial(part(&[1]), 3, z(5)).unwrap();
        let sq = sym_mul(&m1, &m1).unwrap();
        let expect = SymSeries::new(3, [(part(&[2]), re(1.0)), (part(&[1, 1]), re(2.0))], z(5)).unwrap();
        assert!(sq.approx_eq(&expect, 1e-12));

        assert!(elementary(2, 3, z(5)).approx_eq(&SymSeries::monomial(part(&[1, 1]), 3, z(5)).unwrap(), 0.0));
        let h2 = SymSeries::new(3, [(part(&[2]), re(1.0)), (part(&[1, 1]), re(1.0))], z(5)).unwrap();
        assert!(complete(2, 3, z(5)).approx_eq(&h2, 0.0));
        assert!(powersum(3, 3, z(5)).approx_eq(&SymSeries::monomial(part(&[3]), 3, z(5)).unwrap(), 0.0));

        let e1 = elementary(1, 3, z(5));
        let newton = sym_mul(&e1, &e1).unwrap().sub(&elementary(2, 3, z(5)).scale(re(2.0))).unwrap();
        assert!(newton.approx_eq(&powersum(2, 3, z(5)), 1e-12));
    }

    #[test]
    fn basis_products() {
        let cutoff = z(5);
        let e11 = basis_product(Family::Elementary, &part(&[1, 1]), 0, 3, &cutoff).unwrap();
        assert!(e11.report.symmetric);
        assert!(e11.series.approx_eq(&elementary(2, 3, cutoff.clone()), 1e-12));
        let h1 = basis_product(Family::Complete, &part(&[1]), 0, 3, &cutoff).unwrap();
        assert!(h1.series.approx_eq(&SymSeries::monomial(part(&[1]), 3, cutoff.clone()).unwrap(), 1e-12));
        // (x1 + x2 + x3)^3 by the multinomial theorem
        let p3 = basis_product(Family::PowerSum, &part(&[3]), 0, 3, &cutoff).unwrap().series;
        let multinomial =
            SymSeries::new(3, [(part(&[3]), re(1.0)), (part(&[2, 1]), re(3.0)), (part(&[1, 1, 1]), re(6.0))], cutoff).unwrap();
        assert!(p3.approx_eq(&multinomial, 1e-12));
    }

    #[test]
    fn fractional_power_reports_asymmetry() {
        let beta = RealPartition::new(vec![q(1, 2)]).unwrap();
        let r = basis_product(Family::Elementary, &beta, 0, 2, &z(3)).unwrap();
        assert!(!r.report.symmetric);
        assert!(r.report.off_partition_terms > 0);
    }

    #[test]
    fn omega_examples() {
        let cutoff = z(5);
        assert!(omega(&powersum(3, 3, cutoff.clone())).unwrap().approx_eq(&powersum(3, 3, cutoff.clone()), 1e-12));
        assert!(omega(&powersum(2, 3, cutoff.clone())).unwrap().approx_eq(&powersum(2, 3, cutoff.clone()).neg(), 1e-12));
        let e2 = elementary(2, 3, cutoff.clone());
        assert!(omega(&e2).unwrap().approx_eq(&complete(2, 3, cutoff.clone()), 1e-12));
        let odd = SymSeries::monomial(RealPartition::new(vec![q(1, 2)]).unwrap(), 2, cutoff).unwrap();
        assert!(matches!(omega(&odd), Err(Error::UnsupportedBasis(_))));
    }

    #[test]
    fn triangularity_examples() {
        let cutoff = z(5);
        assert!(triangularity_check(Family::Elementary, &part(&[1, 1]), 3, &cutoff).unwrap());
        assert!(triangularity_check(Family::Complete, &part(&[2]), 3, &cutoff).unwrap());
        assert!(triangularity_check(Family::PowerSum, &part(&[2]), 3, &cutoff).unwrap());
        assert!(!triangularity_check(Family::PowerSum, &part(&[1, 1]), 3, &cutoff).unwrap());
    }

    #[test]
    fn inverse_needs_constant() {
        let cutoff = z(4);
        let f = SymSeries::constant(2, re(2.0), cutoff.clone()).add(&elementary(1, 2, cutoff.clone())).unwrap();
        let g = sym_invert(&f).unwrap();
        let one = SymSeries::constant(2, re(1.0), cutoff.clone());
        assert!(sym_mul(&f, &g).unwrap().approx_eq(&one, 1e-12));
        assert_eq!(sym_invert(&elementary(1, 2, cutoff)), Err(Error::DivisionByZero));
    }

    #[test]
    fn json_round_trip() {
        let f = SymSeries::new(2, [(RealPartition::new(vec![q(3, 2), q(1, 2)]).unwrap(), Coeff::new(0.1, -2.0))], z(4)).unwrap();
        let text = f.to_json();
        assert!(text.contains("\"partition\":[\"3/2\",\"1/2\"]"));
        assert_eq!(SymSeries::from_json(&text).unwrap(), f);
    }
}
