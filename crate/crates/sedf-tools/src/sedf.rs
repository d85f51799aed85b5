//! SEDFs in `Z_n`: verification of the external-difference property, the
//! symmetric normal form, canonical forms under the affine group and side
//! swap, equivalence testing and the near-factorization view.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::zmod::{units, AffineMap, ResidueSet, ZmodError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SedfError {
    #[error(transparent)]
    Zmod(#[from] ZmodError),
    #[error("the two sets must be disjoint; {0} appears in both")]
    NotDisjoint(u64),
    #[error("no translate of this pair is closed under negation")]
    NoSymmetricTranslate,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("the pair is not a near-factorization: {0:?}")]
    NotNearFactorization(SedfCheck),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SedfCheck {
    Valid,
    RepeatedDifference(u64),
    MissingDifference(u64),
}

impl SedfCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, SedfCheck::Valid)
    }
}

/// A pair of disjoint subsets of `Z_n` intended to satisfy the single
/// coverage external-difference property.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SedfRepr", into = "SedfRepr")]
pub struct Sedf {
    n: u64,
    set_a: ResidueSet,
    set_b: ResidueSet,
}

#[derive(Serialize, Deserialize)]
struct SedfRepr {
    n: u64,
    #[serde(rename = "A")]
    a: Vec<u64>,
    #[serde(rename = "B")]
    b: Vec<u64>,
}

impl TryFrom<SedfRepr> for Sedf {
    type Error = SedfError;

    fn try_from(r: SedfRepr) -> Result<Self, Self::Error> {
        Sedf::new(r.n, r.a, r.b)
    }
}

impl From<Sedf> for SedfRepr {
    fn from(s: Sedf) -> SedfRepr {
        SedfRepr {
            n: s.n,
            a: s.set_a.elems().to_vec(),
            b: s.set_b.elems().to_vec(),
        }
    }
}

/// Witness of affine equivalence: apply `map` to both sets of the first
/// SEDF (and swap the sides if flagged) to obtain the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WitnessRepr", into = "WitnessRepr")]
pub struct EquivalenceWitness {
    pub map: AffineMap,
    pub swapped: bool,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    alpha: u64,
    beta: u64,
    #[serde(default)]
    modulus: u64,
    swapped: bool,
}

impl TryFrom<WitnessRepr> for EquivalenceWitness {
    type Error = ZmodError;

    fn try_from(r: WitnessRepr) -> Result<Self, Self::Error> {
        Ok(EquivalenceWitness {
            map: AffineMap::new(r.alpha, r.beta, r.modulus)?,
            swapped: r.swapped,
        })
    }
}

impl From<EquivalenceWitness> for WitnessRepr {
    fn from(w: EquivalenceWitness) -> WitnessRepr {
        WitnessRepr {
            alpha: w.map.mult(),
            beta: w.map.shift(),
            modulus: w.map.modulus(),
            swapped: w.swapped,
        }
    }
}

impl EquivalenceWitness {
    pub fn apply(&self, s: &Sedf) -> Result<Sedf, SedfError> {
        let a = self.map.apply_set(&s.set_a)?;
        let b = self.map.apply_set(&s.set_b)?;
        let (set_a, set_b) = if self.swapped { (b, a) } else { (a, b) };
        Ok(Sedf {
            n: s.n,
            set_a,
            set_b,
        })
    }
}

impl Sedf {
    pub fn new(
        n: u64,
        a: impl IntoIterator<Item = u64>,
        b: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SedfError> {
        let set_a = ResidueSet::new(n, a)?;
        let set_b = ResidueSet::new(n, b)?;
        if let Some(&x) = set_a.elems().iter().find(|&&x| set_b.contains(x)) {
            return Err(SedfError::NotDisjoint(x));
        }
        Ok(Sedf { n, set_a, set_b })
    }

    pub fn from_sets(set_a: ResidueSet, set_b: ResidueSet) -> Result<Self, SedfError> {
        if set_a.modulus() != set_b.modulus() {
            return Err(SedfError::ModulusMismatch(set_a.modulus(), set_b.modulus()));
        }
        if let Some(&x) = set_a.elems().iter().find(|&&x| set_b.contains(x)) {
            return Err(SedfError::NotDisjoint(x));
        }
        Ok(Sedf {
            n: set_a.modulus(),
            set_a,
            set_b,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn set_a(&self) -> &ResidueSet {
        &self.set_a
    }

    pub fn set_b(&self) -> &ResidueSet {
        &self.set_b
    }

    /// Checks that `{y - x : y in B, x in A}` covers every nonzero residue
    /// exactly once, reporting the first repeated or missing difference.
    /// For two sets with `|A||B| = n - 1` the opposite direction is the
    /// negation of this one, so one direction suffices; debug builds check
    /// both.
    pub fn verify(&self) -> SedfCheck {
        let check = self.verify_direction(&self.set_b, &self.set_a);
        debug_assert_eq!(
            check.is_valid(),
            self.verify_direction(&self.set_a, &self.set_b).is_valid()
        );
        check
    }

    fn verify_direction(&self, from: &ResidueSet, to: &ResidueSet) -> SedfCheck {
        let n = self.n as usize;
        let mut seen = vec![false; n];
        for &y in from.elems() {
            for &x in to.elems() {
                let d = ((y + self.n - x) % self.n) as usize;
                if d == 0 || seen[d] {
                    return SedfCheck::RepeatedDifference(d as u64);
                }
                seen[d] = true;
            }
        }
        for (d, hit) in seen.iter().enumerate().skip(1) {
            if !hit {
                return SedfCheck::MissingDifference(d as u64);
            }
        }
        SedfCheck::Valid
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_valid()
    }

    /// Smallest translation `g` making both `A + g` and `B + g` closed under
    /// negation. Such a translate exists for every valid SEDF of this family.
    pub fn symmetrize(&self) -> Result<(Sedf, u64), SedfError> {
        for g in 0..self.n {
            let a = self.set_a.translate(g);
            if !a.is_symmetric() {
                continue;
            }
            let b = self.set_b.translate(g);
            if b.is_symmetric() {
                return Ok((
                    Sedf {
                        n: self.n,
                        set_a: a,
                        set_b: b,
                    },
                    g,
                ));
            }
        }
        Err(SedfError::NoSymmetricTranslate)
    }

    /// Minimal sorted image of `set` over all affine maps, together with
    /// every map attaining it. The minimum always maps some element to 0, so
    /// only maps of the form `x -> alpha*(x - s)` need to be scanned.
    fn min_image(set: &ResidueSet, unit_list: &[u64]) -> (ResidueSet, Vec<AffineMap>) {
        let n = set.modulus();
        let mut best: Option<ResidueSet> = None;
        let mut maps = Vec::new();
        for &alpha in unit_list {
            for &s in set.elems() {
                let beta = (n - alpha * s % n) % n;
                let f = AffineMap::new(alpha, beta, n).expect("alpha is a unit");
                let image = f.apply_set(set).expect("same modulus");
                match &best {
                    Some(b) => match image.elems().cmp(b.elems()) {
                        std::cmp::Ordering::Less => {
                            best = Some(image);
                            maps.clear();
                            maps.push(f);
                        }
                        std::cmp::Ordering::Equal => maps.push(f),
                        std::cmp::Ordering::Greater => {}
                    },
                    None => {
                        best = Some(image);
                        maps.push(f);
                    }
                }
            }
        }
        (best.expect("set is nonempty"), maps)
    }

    /// Lexicographically minimal representative of the orbit of this SEDF
    /// under the affine group and side swap. Among the maps minimizing the
    /// first set, the image of the second set is minimized as a tie-break, so
    /// the result is constant on equivalence classes and idempotent.
    pub fn canonical_form(&self) -> (Sedf, EquivalenceWitness) {
        let unit_list = units(self.n);
        let unit_list = if unit_list.is_empty() { vec![0] } else { unit_list };

        let candidate = |first: &ResidueSet, second: &ResidueSet| -> (Sedf, AffineMap) {
            let (first_min, maps) = Self::min_image(first, &unit_list);
            let mut best_map = maps[0];
            let mut best_second = maps[0].apply_set(second).expect("same modulus");
            for f in maps.into_iter().skip(1) {
                let img = f.apply_set(second).expect("same modulus");
                if img.elems() < best_second.elems() {
                    best_second = img;
                    best_map = f;
                }
            }
            (
                Sedf {
                    n: self.n,
                    set_a: first_min,
                    set_b: best_second,
                },
                best_map,
            )
        };

        let (cand_a, map_a) = candidate(&self.set_a, &self.set_b);
        let (cand_b, map_b) = candidate(&self.set_b, &self.set_a);
        let key = |s: &Sedf| (s.set_a.elems().to_vec(), s.set_b.elems().to_vec());
        if key(&cand_a) <= key(&cand_b) {
            (
                cand_a,
                EquivalenceWitness {
                    map: map_a,
                    swapped: false,
                },
            )
        } else {
            (
                cand_b,
                EquivalenceWitness {
                    map: map_b,
                    swapped: true,
                },
            )
        }
    }

    /// A witness carrying `self` to `other`, when their canonical forms agree.
    pub fn equivalent(&self, other: &Sedf) -> Result<Option<EquivalenceWitness>, SedfError> {
        if self.n != other.n {
            return Err(SedfError::ModulusMismatch(self.n, other.n));
        }
        let (c1, w1) = self.canonical_form();
        let (c2, w2) = other.canonical_form();
        if c1 != c2 {
            return Ok(None);
        }
        // other = w2^{-1}(w1(self))
        let map = w2.map.inverse().compose(&w1.map)?;
        let witness = EquivalenceWitness {
            map,
            swapped: w1.swapped != w2.swapped,
        };
        debug_assert_eq!(witness.apply(self).unwrap(), *other);
        Ok(Some(witness))
    }

    /// The pair `(A, -B)`, whose sumset covers `Z_n \ {0}` exactly once; the
    /// coverage is verified before returning.
    pub fn to_near_factorization(&self) -> Result<(ResidueSet, ResidueSet), SedfError> {
        let check = self.verify();
        if !check.is_valid() {
            return Err(SedfError::NotNearFactorization(check));
        }
        Ok((self.set_a.clone(), self.set_b.negate()))
    }
}

impl std::fmt::Display for Sedf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.set_a, self.set_b)
    }
}
