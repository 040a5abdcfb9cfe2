//! Pseudointegers: compatible residue systems `(k_n)` with `0 ≤ k_n < n`,
//! truncated at a modulus bound `M`.
//!
//! Compatibility follows the projections `ℤ/nmℤ → ℤ/nℤ`: `k_{nm} ≡ k_n (mod n)`
//! whenever `nm ≤ M`.

use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pseudointeger {
    bound: u64,
    /// `residues[n - 1] = k_n`.
    residues: Vec<u64>,
}

impl Pseudointeger {
    /// Validates ranges and compatibility.
    pub fn new(residues: Vec<u64>) -> Result<Self> {
        if residues.is_empty() {
            return Err(Error::Malformed("pseudointeger needs bound at least 1".into()));
        }
        for (i, &k) in residues.iter().enumerate() {
            if k > i as u64 {
                return Err(Error::Malformed(format!("residue {k} out of range modulo {}", i + 1)));
            }
        }
        let p = Pseudointeger { bound: residues.len() as u64, residues };
        if !p.is_compatible() {
            return Err(Error::Malformed("residues are not pairwise consistent".into()));
        }
        Ok(p)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `k_n` for `1 ≤ n ≤ bound`.
    pub fn residue(&self, n: u64) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.residues.get(i as usize)).copied()
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_compatible(&self) -> bool {
        let m = self.bound;
        (1..=m).all(|n| (1..=m / n).all(|j| self.residues[(n * j - 1) as usize] % n == self.residues[(n - 1) as usize]))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u128, u128, u128) -> u128) -> Result<Self> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch(self.bound, other.bound));
        }
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .enumerate()
            .map(|(i, (&a, &b))| {
                let n = i as u128 + 1;
                op(a as u128, b as u128, n) as u64
            })
            .collect();
        Ok(Pseudointeger { bound: self.bound, residues })
    }
}

/// The image of an integer: `k_n = k mod n`.
pub fn embed(k: i64, bound: u64) -> Pseudointeger {
    assert!(bound >= 1, "modulus bound must be positive");
    let residues = (1..=bound).map(|n| k.rem_euclid(n as i64) as u64).collect();
    Pseudointeger { bound, residues }
}

pub fn pi_add(a: &Pseudointeger, b: &Pseudointeger) -> Result<Pseudointeger> {
    a.zip_with(b, |x, y, n| (x + y) % n)
}

pub fn pi_mul(a: &Pseudointeger, b: &Pseudointeger) -> Result<Pseudointeger> {
    a.zip_with(b, |x, y, n| (x * y) % n)
}

pub fn pi_neg(a: &Pseudointeger) -> Pseudointeger {
    let residues = a.residues.iter().enumerate().map(|(i, &k)| (i as u64 + 1 - k) % (i as u64 + 1)).collect();
    Pseudointeger { bound: a.bound, residues }
}

/// `k_n = (1! + 2! + … + n!) mod n`: compatible, yet not the image of any
/// integer in the full inverse limit.
pub fn factorial_sum_element(bound: u64) -> Pseudointeger {
    assert!(bound >= 1, "modulus bound must be positive");
    let residues = (1..=bound)
        .map(|n| {
            let n = n as u128;
            let mut fact = 1u128;
            let mut sum = 0u128;
            for j in 1..=n {
                fact = fact * j % n;
                sum = (sum + fact) % n;
            }
            sum as u64
        })
        .collect();
    Pseudointeger { bound, residues }
}

pub fn lcm_up_to(bound: u64) -> BigInt {
    (1..=bound).fold(BigInt::one(), |acc, n| acc.lcm(&BigInt::from(n)))
}

/// Chinese-remainder representative of the residues in `(-L/2, L/2]` with
/// `L = lcm(1..M)`, or `None` if the residues are inconsistent.
pub fn crt_representative(a: &Pseudointeger) -> Option<BigInt> {
    let modulus = lcm_up_to(a.bound);
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for n in 1..=a.bound {
        let k = BigInt::from(a.residues[(n - 1) as usize]);
        let nb = BigInt::from(n);
        // solve x + m·s ≡ k (mod n)
        let g = m.gcd(&nb);
        let diff = (&k - &x).mod_floor(&nb);
        if !(&diff % &g).is_zero() {
            return None;
        }
        let n_red = &nb / &g;
        let m_red = (&m / &g).mod_floor(&n_red);
        let s = if n_red.is_one() { BigInt::zero() } else { (&diff / &g * mod_inverse(&m_red, &n_red)?).mod_floor(&n_red) };
        x += &m * s;
        m = m.lcm(&nb);
        x = x.mod_floor(&m);
    }
    debug_assert_eq!(m, modulus);
    if &x * 2 > modulus {
        x -= &modulus;
    }
    Some(x)
}

fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(n);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(n))
}

/// The integer this element embeds, if it is recognizably one.
///
/// Every compatible system at a finite bound is matched by some residue
/// class modulo `L = lcm(1..M)`; the element is reported integral when the
/// centered representative `k` of that class is small, `k² ≤ L`.
pub fn is_integral(a: &Pseudointeger) -> Option<BigInt> {
    let k = crt_representative(a)?;
    let limit = lcm_up_to(a.bound);
    if &k * &k <= limit {
        Some(k)
    } else {
        None
    }
}

impl fmt::Display for Pseudointeger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, k) in self.residues.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} mod {}", i + 1)?;
        }
        f.write_str("]")?;
        if let Some(k) = is_integral(self) {
            write!(f, " = {k}")?;
        }
        Ok(())
    }
}
