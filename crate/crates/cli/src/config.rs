use std::str::FromStr;

use artseries::{Exponent, ExponentMonoid, Orientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Emit {
    #[default]
    Text,
    Json,
}

impl FromStr for Emit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Emit::Text),
            "json" => Ok(Emit::Json),
            other => Err(format!("unknown output format {other:?}; expected text or json")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SessionConfig {
    pub orientation: Orientation,
    /// Window bound given to `x` and to constants.
    pub window: Exponent,
    pub tolerance: f64,
    pub monoid: ExponentMonoid,
    pub emit: Emit,
    /// Variable count for symmetric series.
    pub nvars: usize,
    /// Graded cutoff for symmetric series.
    pub cutoff: Exponent,
    /// Modulus bound for pseudointegers.
    pub modulus: u64,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            orientation: Orientation::Noetherian,
            window: Exponent::from_int(12),
            tolerance: artseries::scalar::default_tolerance(),
            monoid: ExponentMonoid::Rational,
            emit: Emit::Text,
            nvars: 3,
            cutoff: Exponent::from_int(5),
            modulus: 24,
        }
    }
}

impl SessionConfig {
    /// Default window for an orientation: `12`, or its mirror `-12`.
    pub fn default_window(orientation: Orientation) -> Exponent {
        match orientation {
            Orientation::Noetherian => Exponent::from_int(12),
            Orientation::Artinian => Exponent::from_int(-12),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(format!("tolerance must be positive, got {}", self.tolerance));
        }
        if !(1..=4).contains(&self.nvars) {
            return Err(format!("symmetric variable count must be 1 to 4, got {}", self.nvars));
        }
        if self.modulus == 0 {
            return Err("modulus bound must be positive".into());
        }
        Ok(())
    }
}

pub fn parse_orientation(s: &str) -> Result<Orientation, String> {
    match s {
        "noetherian" => Ok(Orientation::Noetherian),
        "artinian" => Ok(Orientation::Artinian),
        other => Err(format!("unknown orientation {other:?}; expected noetherian or artinian")),
    }
}

pub fn parse_monoid(s: &str) -> Result<ExponentMonoid, String> {
    match s {
        "Q" | "q" => Ok(ExponentMonoid::Rational),
        "N" | "n" => Ok(ExponentMonoid::Natural),
        other => Err(format!("unknown exponent monoid {other:?}; expected Q or N")),
    }
}

pub fn parse_exponent(s: &str) -> Result<Exponent, String> {
    s.parse::<Exponent>().map_err(|e| e.to_string())
}
