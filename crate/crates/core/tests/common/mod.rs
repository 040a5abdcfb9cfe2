//! Random inputs and comparison helpers shared by the integration tests.
#![allow(dead_code)]

use artseries::{Coeff, Exponent, Orientation, Series};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn z(n: i64) -> Exponent {
    Exponent::from_int(n)
}

pub fn q(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

pub fn re(x: f64) -> Coeff {
    Coeff::new(x, 0.0)
}

/// `p/q` with `q ∈ {1, 2, 3}` and `lo ≤ p/q < hi`.
pub fn exponent(rng: &mut StdRng, lo: i64, hi: i64) -> Exponent {
    let d = [1, 2, 3][rng.gen_range(0..3)];
    q(rng.gen_range(lo * d..hi * d), d)
}

pub fn coeff(rng: &mut StdRng, radius: f64) -> Coeff {
    Coeff::new(rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius))
}

/// Modulus in `[1, 2]` with any argument.
pub fn unit_coeff(rng: &mut StdRng) -> Coeff {
    Coeff::from_polar(rng.gen_range(1.0..=2.0), rng.gen_range(-3.0..=3.0))
}

pub fn positive_coeff(rng: &mut StdRng) -> Coeff {
    re(rng.gen_range(0.5..=2.0))
}

/// A Noetherian series of degree `lead_exp` (if given a lead) plus up to
/// `extra` higher terms with small coefficients, mirrored for Artinian.
pub fn series_with_lead(
    rng: &mut StdRng,
    orientation: Orientation,
    lead_exp: Exponent,
    lead: Coeff,
    extra: usize,
    spread: i64,
    bound: &Exponent,
) -> Series {
    let mut terms = vec![(lead_exp.clone(), lead)];
    for _ in 0..extra {
        let gap = exponent(rng, 0, spread);
        if gap.is_zero() {
            continue;
        }
        let e = &lead_exp + &gap;
        if terms.iter().any(|(x, _)| *x == e) {
            continue;
        }
        terms.push((e, coeff(rng, 0.5)));
    }
    // build the Noetherian mirror and dualize for Artinian
    let nb = match orientation {
        Orientation::Noetherian => bound.clone(),
        Orientation::Artinian => -bound.clone(),
    };
    let noeth = terms.into_iter().filter(|(e, _)| e < &nb).collect::<Vec<_>>();
    let s = Series::make(Orientation::Noetherian, noeth, nb).expect("generated terms fit");
    match orientation {
        Orientation::Noetherian => s,
        Orientation::Artinian => s.dualize(),
    }
}

/// Up to `size` support points anywhere in `[-2, 6)`.
pub fn series(rng: &mut StdRng, orientation: Orientation, size: usize, bound: &Exponent) -> Series {
    let lead_exp = exponent(rng, -2, 2);
    let lead = unit_coeff(rng);
    let extra = rng.gen_range(0..size);
    series_with_lead(rng, orientation, lead_exp, lead, extra, 4, bound)
}

/// A nonzero series with a unit leading term at exponent 0.
pub fn unit_series(rng: &mut StdRng, orientation: Orientation, size: usize, bound: &Exponent) -> Series {
    let lead = unit_coeff(rng);
    let extra = rng.gen_range(0..size);
    series_with_lead(rng, orientation, Exponent::zero(), lead, extra, 4, bound)
}

/// A Noetherian series of positive degree `d ∈ {1/3, 1/2, 1, 3/2, 2}`.
pub fn positive_degree_series(rng: &mut StdRng, size: usize, bound: &Exponent, lead: Coeff) -> Series {
    let d = [q(1, 3), q(1, 2), z(1), q(3, 2), z(2)][rng.gen_range(0..5)].clone();
    let extra = rng.gen_range(0..size);
    series_with_lead(rng, Orientation::Noetherian, d, lead, extra, 3, bound)
}

/// `c·x + …` with a positive real `c`.
pub fn delta_series(rng: &mut StdRng, size: usize, bound: &Exponent) -> Series {
    let lead = positive_coeff(rng);
    let extra = rng.gen_range(0..size);
    series_with_lead(rng, Orientation::Noetherian, z(1), lead, extra, 3, bound)
}

/// Sum of coefficient moduli: the scale at which rounding is measured.
pub fn l1(f: &Series) -> f64 {
    f.terms().map(|(_, c)| c.norm()).sum()
}

/// `|f - g| ≤ ε·(1 + scale)` on the common window.
pub fn close(f: &Series, g: &Series, scale: f64, eps: f64) -> bool {
    f.max_difference(g) <= eps * (1.0 + scale)
}

pub fn close_c(a: Coeff, b: Coeff, scale: f64, eps: f64) -> bool {
    (a - b).norm() <= eps * (1.0 + scale)
}

/// Upper bound on how many coefficients a window of these generated series
/// holds, so on how many ε-sized coefficients pruning may drop.
pub const PRUNED_TERMS: f64 = 64.0;

/// First-order effect on `g^t` of perturbing each coefficient of `g` by ε:
/// `|t|·‖g^{t-1}‖` per unit of ℓ¹ perturbation.
pub fn power_sensitivity(g: &Series, t: &Exponent, n: i64) -> f64 {
    let lower = artseries::power::pow(g, &(t - Exponent::one()), n).expect("power of nonzero series");
    t.to_f64().abs() * l1(&lower) * PRUNED_TERMS
}
