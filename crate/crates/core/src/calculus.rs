//! The formal derivative `D x^a = a·x^{a-1}`.

use crate::coefficient::Coefficient;
use crate::scalar::{Coeff, Exponent};
use crate::series::Series;

/// Termwise derivative. The window bound moves down by one in both
/// orientations.
pub fn derivative<C: Coefficient>(f: &Series<C>) -> Series<C> {
    let one = Exponent::one();
    let terms = f
        .terms()
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, c)| (a - &one, c.scale(Coeff::new(a.to_f64(), 0.0))))
        .collect();
    Series::from_map(f.orientation(), terms, f.bound() - &one)
}
