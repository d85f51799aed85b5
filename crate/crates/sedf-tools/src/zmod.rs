//! Exact arithmetic in `Z_n`: canonical sorted sets of residues, affine maps
//! `x -> alpha*x + beta` with unit `alpha`, and unit enumeration.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZmodError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("element {0} out of range for modulus {1}")]
    OutOfRange(u64, u64),
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(u64, u64),
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Multiplicative inverse of `x` modulo `v`, if `gcd(x, v) = 1`.
pub fn mod_inv(x: u64, v: u64) -> Option<u64> {
    if v == 0 {
        return None;
    }
    if v == 1 {
        return Some(0);
    }
    // extended Euclid on (x mod v, v)
    let (mut r0, mut r1) = (i128::from(x % v), i128::from(v));
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    if r0 != 1 {
        return None;
    }
    let v = i128::from(v);
    Some(((s0 % v + v) % v) as u64)
}

/// All units of `Z_v` in ascending order. Empty for `v = 1`.
pub fn units(v: u64) -> Vec<u64> {
    (1..v).filter(|&m| gcd(m, v) == 1).collect()
}

/// A subset of `Z_n`, stored sorted ascending and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ResidueSet {
    modulus: u64,
    elems: Vec<u64>,
}

impl ResidueSet {
    pub fn new(modulus: u64, elems: impl IntoIterator<Item = u64>) -> Result<Self, ZmodError> {
        if modulus == 0 {
            return Err(ZmodError::ZeroModulus);
        }
        let mut elems: Vec<u64> = elems.into_iter().collect();
        for &x in &elems {
            if x >= modulus {
                return Err(ZmodError::OutOfRange(x, modulus));
            }
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(ResidueSet { modulus, elems })
    }

    /// Builds a set from arbitrary integers, reducing them modulo `modulus`.
    pub fn from_unreduced(
        modulus: u64,
        elems: impl IntoIterator<Item = u64>,
    ) -> Result<Self, ZmodError> {
        if modulus == 0 {
            return Err(ZmodError::ZeroModulus);
        }
        Self::new(modulus, elems.into_iter().map(|x| x % modulus))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_disjoint(&self, other: &ResidueSet) -> bool {
        self.elems.iter().all(|&x| !other.contains(x))
    }

    /// The translate `S + g`.
    pub fn translate(&self, g: u64) -> ResidueSet {
        let v = self.modulus;
        let mut elems: Vec<u64> = self.elems.iter().map(|&x| (x + g % v) % v).collect();
        elems.sort_unstable();
        ResidueSet { modulus: v, elems }
    }

    /// The set `-S`.
    pub fn negate(&self) -> ResidueSet {
        let v = self.modulus;
        let mut elems: Vec<u64> = self.elems.iter().map(|&x| (v - x) % v).collect();
        elems.sort_unstable();
        ResidueSet { modulus: v, elems }
    }

    /// Closed under negation?
    pub fn is_symmetric(&self) -> bool {
        self.elems
            .iter()
            .all(|&x| self.contains((self.modulus - x) % self.modulus))
    }

    /// Lexicographic comparison of the sorted element lists. The shorter
    /// sequence precedes when one is a prefix of the other.
    pub fn lex_compare(&self, other: &ResidueSet) -> Result<Ordering, ZmodError> {
        if self.modulus != other.modulus {
            return Err(ZmodError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(self.elems.cmp(&other.elems))
    }
}

impl std::fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// The map `x -> mult*x + shift (mod modulus)` with `gcd(mult, modulus) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    mult: u64,
    shift: u64,
    modulus: u64,
}

impl AffineMap {
    pub fn new(mult: u64, shift: u64, modulus: u64) -> Result<Self, ZmodError> {
        if modulus == 0 {
            return Err(ZmodError::ZeroModulus);
        }
        let mult = mult % modulus;
        let shift = shift % modulus;
        if gcd(mult, modulus) != 1 && modulus != 1 {
            return Err(ZmodError::NotAUnit(mult, modulus));
        }
        Ok(AffineMap {
            mult,
            shift,
            modulus,
        })
    }

    pub fn identity(modulus: u64) -> Result<Self, ZmodError> {
        Self::new(1, 0, modulus)
    }

    pub fn mult(&self) -> u64 {
        self.mult
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn apply(&self, x: u64) -> u64 {
        ((u128::from(self.mult) * u128::from(x % self.modulus) + u128::from(self.shift))
            % u128::from(self.modulus)) as u64
    }

    /// Sorted image of a set; cardinality is preserved since `mult` is a unit.
    pub fn apply_set(&self, s: &ResidueSet) -> Result<ResidueSet, ZmodError> {
        if s.modulus() != self.modulus {
            return Err(ZmodError::ModulusMismatch(self.modulus, s.modulus()));
        }
        let mut elems: Vec<u64> = s.elems().iter().map(|&x| self.apply(x)).collect();
        elems.sort_unstable();
        Ok(ResidueSet {
            modulus: self.modulus,
            elems,
        })
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = mod_inv(self.mult, self.modulus).expect("mult is a unit by construction");
        let v = u128::from(self.modulus);
        // x -> inv*(x - shift) = inv*x - inv*shift
        let shift = ((u128::from(inv) * (v - u128::from(self.shift))) % v) as u64;
        AffineMap {
            mult: inv,
            shift,
            modulus: self.modulus,
        }
    }

    /// `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap, ZmodError> {
        if self.modulus != other.modulus {
            return Err(ZmodError::ModulusMismatch(self.modulus, other.modulus));
        }
        let v = u128::from(self.modulus);
        let mult = ((u128::from(self.mult) * u128::from(other.mult)) % v) as u64;
        let shift =
            ((u128::from(self.mult) * u128::from(other.shift) + u128::from(self.shift)) % v) as u64;
        Ok(AffineMap {
            mult,
            shift,
            modulus: self.modulus,
        })
    }
}

impl std::fmt::Display for AffineMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.mult, self.shift) {
            (1, 0) => write!(f, "X"),
            (1, s) => write!(f, "X+{s}"),
            (m, 0) => write!(f, "{m}X"),
            (m, s) => write!(f, "{m}X+{s}"),
        }
    }
}
