//! Branch-indexed real powers of series.
//!
//! For a nonzero series `g` of degree `d` with leading coefficient `c`,
//! write `g = c·x^d·(1 + u)` where every exponent of `u` lies strictly on
//! the far side of zero. Then
//!
//! ```text
//! g^{t;n} = c^{t;n} · x^{dt} · Σ_k  t(t-1)···(t-k+1)/k! · u^k
//! ```
//!
//! and the sum is finite inside any window because the degree of `u^k`
//! grows linearly in `k`. [`pow`] evaluates it through the equivalent
//! coefficient recursion; [`pow_multiset_oracle`] evaluates the same power
//! by summing over multisets of support exponents and serves as an
//! independent check.

use std::collections::BTreeMap;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::scalar::{self, BranchIndex, Coeff, Exponent, Multiset};
use crate::series::{self, Orientation, Series};

/// Argument of the leading coefficient.
pub fn arg_of<C: Coefficient>(f: &Series<C>) -> Result<f64> {
    let (_, c) = f.leading().ok_or(Error::UndefinedArgument)?;
    c.argument()
}

/// A nonzero Noetherian series factored as `lead·x^degree·(1 + u)`.
///
/// Powers `w = (1 + u)^t` come from `(1 + u)·θw = t·(θu)·w` with the Euler
/// operator `θ = x·d/dx`, which on coefficients reads
/// `e·w_e = Σ_δ u_δ·w_{e-δ}·((t+1)δ - e)`. Unlike summing `u^k`, this never
/// forms large intermediate powers that cancel.
pub(crate) struct UnitExpansion<C> {
    degree: Exponent,
    lead: C,
    relative: Exponent,
    gaps: Vec<(Exponent, C)>,
    lattice: Vec<Exponent>,
}

impl<C: Coefficient> UnitExpansion<C> {
    pub(crate) fn new(g: &Series<C>) -> Result<Self> {
        debug_assert_eq!(g.orientation(), Orientation::Noetherian);
        let (d, c) = g.leading().ok_or(Error::UndefinedPower)?;
        let degree = d.clone();
        let lead = c.clone();
        let relative = g.bound() - &degree;
        let inv = lead.inverse()?;
        let mut gaps = Vec::new();
        for (e, v) in g.terms() {
            let gap = e - &degree;
            if gap.is_positive() && gap < relative {
                gaps.push((gap, inv.mul(v)?));
            }
        }
        let values: Vec<Exponent> = gaps.iter().map(|(e, _)| e.clone()).collect();
        let lattice = series::gap_lattice(&values, &relative);
        Ok(UnitExpansion { degree, lead, relative, gaps, lattice })
    }

    pub(crate) fn power(&self, t: &Exponent, n: BranchIndex) -> Result<Series<C>> {
        let lead_t = self.lead.power(t, n)?;
        let t1 = t + Exponent::one();
        let mut w: BTreeMap<Exponent, C> = BTreeMap::new();
        for e in &self.lattice {
            if e.is_zero() {
                w.insert(e.clone(), lead_t.clone());
                continue;
            }
            let mut sum: Option<C> = None;
            for (delta, ud) in &self.gaps {
                if delta > e {
                    continue;
                }
                let Some(prev) = w.get(&(e - delta)) else { continue };
                let weight = (&t1 * delta - e) / e;
                if weight.is_zero() {
                    continue;
                }
                let term = ud.mul(prev)?.scale(Coeff::new(weight.to_f64(), 0.0));
                sum = Some(match sum {
                    Some(s) => s.add(&term)?,
                    None => term,
                });
            }
            // intermediate values stay unpruned; only the result is pruned
            if let Some(s) = sum {
                w.insert(e.clone(), s);
            }
        }
        Ok(Series::from_map(Orientation::Noetherian, w, self.relative.clone()).shift(&(&self.degree * t)))
    }
}

/// `g^{t;n}` by the coefficient recursion of the binomial form.
pub fn pow<C: Coefficient>(g: &Series<C>, t: &Exponent, n: BranchIndex) -> Result<Series<C>> {
    if g.is_zero() {
        return if t.is_positive() {
            Ok(Series::zero(g.orientation(), t * g.bound()))
        } else {
            Err(Error::UndefinedPower)
        };
    }
    match g.orientation() {
        Orientation::Noetherian => UnitExpansion::new(g)?.power(t, n),
        Orientation::Artinian => Ok(UnitExpansion::new(&g.dualize())?.power(t, n)?.dualize()),
    }
}

/// `g^{t;n}` by direct summation over multisets of shifted support
/// exponents. Exponential in the support size; meant for small inputs.
pub fn pow_multiset_oracle(g: &Series<Coeff>, t: &Exponent, n: BranchIndex) -> Result<Series<Coeff>> {
    if g.orientation() == Orientation::Artinian {
        return Ok(pow_multiset_oracle(&g.dualize(), t, n)?.dualize());
    }
    let Some((d, c)) = g.leading() else {
        return if t.is_positive() {
            Ok(Series::zero(g.orientation(), t * g.bound()))
        } else {
            Err(Error::UndefinedPower)
        };
    };
    let d = d.clone();
    let c = *c;
    let relative = g.bound() - &d;
    let ratios: Vec<(Exponent, Coeff)> =
        g.terms().filter(|(e, _)| **e != d).map(|(e, v)| (e - &d, v / c)).filter(|(e, _)| e < &relative).collect();

    let mut sums: BTreeMap<Exponent, Coeff> = BTreeMap::new();
    let mut counts = vec![0u32; ratios.len()];
    enumerate_multisets(&ratios, 0, Exponent::zero(), &relative, &mut counts, &mut |counts, total| {
        let multiset: Multiset<usize> = counts.iter().copied().enumerate().collect();
        let mut value = scalar::multiset_binomial(t, &multiset);
        for (i, &k) in counts.iter().enumerate() {
            value *= ratios[i].1.powu(k);
        }
        *sums.entry(total.clone()).or_default() += value;
    });

    let lead_t = scalar::cpow(c, t, n)?;
    let shift = &d * t;
    let terms: Vec<(Exponent, Coeff)> = sums.into_iter().map(|(e, v)| (&e + &shift, v * lead_t)).collect();
    Series::make(Orientation::Noetherian, terms, &shift + &relative)
}

fn enumerate_multisets(
    ratios: &[(Exponent, Coeff)],
    index: usize,
    total: Exponent,
    limit: &Exponent,
    counts: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32], &Exponent),
) {
    if index == ratios.len() {
        visit(counts, &total);
        return;
    }
    let step = &ratios[index].0;
    let mut running = total;
    let mut k = 0;
    while &running < limit {
        counts[index] = k;
        enumerate_multisets(ratios, index + 1, running.clone(), limit, counts, visit);
        running += step;
        k += 1;
    }
    counts[index] = 0;
}

/// Branch `n` with `(f·g)^{t;n} = f^{t;j}·g^{t;k}`.
pub fn pow_product_branch<C: Coefficient>(f: &Series<C>, g: &Series<C>, j: BranchIndex, k: BranchIndex) -> Result<BranchIndex> {
    Ok(scalar::branch_for_argument_sum(arg_of(f)?, arg_of(g)?, j, k))
}

/// Branch `m` with `f^{st;n} = (f^{s;n})^{t;m}`.
pub fn pow_iterate_branch<C: Coefficient>(f: &Series<C>, s: &Exponent, n: BranchIndex) -> Result<BranchIndex> {
    Ok(scalar::branch_for_iterate(arg_of(f)?, s, n))
}
