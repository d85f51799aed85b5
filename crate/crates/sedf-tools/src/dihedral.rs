//! Dihedral groups `D_n`, near-factorizations and SEDFs therein: the tile
//! construction, the reflection/rotation SEDF construction, verification,
//! and the explicit equivalence witness between the two.
//!
//! Elements are kept in the normal form `a^ε b^i` (with `a² = e`, `bⁿ = e`,
//! `aba = b⁻¹`); the multiplication rule below is derived once from
//! `bⁱa = ab⁻ⁱ`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DihedralError {
    #[error("group order parameter n must be positive")]
    ZeroOrder,
    #[error("rotation exponent {rot} out of range for D_{n}")]
    RotationOutOfRange { rot: u64, n: u64 },
    #[error("k = {k} does not divide 2n-1 = {m}")]
    DivisibilityFailed { k: u64, m: u64 },
    #[error("k = {k} must be odd and at least 3")]
    InvalidK { k: u64 },
    #[error("flip must be 0 or 1, got {0}")]
    InvalidFlip(u64),
    #[error("unparseable dihedral element: {0:?}")]
    ParseElement(String),
    #[error("witness equalities failed for k = {k}")]
    WitnessFailed { k: u64 },
}

/// The element `a^ε bⁱ` of `D_n`; `flip` is ε, `rot` is `i` reduced mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DihedralElementRepr", into = "DihedralElementRepr")]
pub struct DihedralElement {
    pub flip: bool,
    pub rot: u64,
}

#[derive(Serialize, Deserialize)]
struct DihedralElementRepr {
    flip: u64,
    rot: u64,
}

impl TryFrom<DihedralElementRepr> for DihedralElement {
    type Error = DihedralError;

    fn try_from(r: DihedralElementRepr) -> Result<Self, DihedralError> {
        match r.flip {
            0 => Ok(DihedralElement::rotation(r.rot)),
            1 => Ok(DihedralElement::reflection(r.rot)),
            other => Err(DihedralError::InvalidFlip(other)),
        }
    }
}

impl From<DihedralElement> for DihedralElementRepr {
    fn from(g: DihedralElement) -> Self {
        DihedralElementRepr {
            flip: g.flip as u64,
            rot: g.rot,
        }
    }
}

impl DihedralElement {
    pub fn identity() -> Self {
        DihedralElement {
            flip: false,
            rot: 0,
        }
    }

    /// `bⁱ`
    pub fn rotation(i: u64) -> Self {
        DihedralElement { flip: false, rot: i }
    }

    /// `abⁱ`
    pub fn reflection(i: u64) -> Self {
        DihedralElement { flip: true, rot: i }
    }

    /// Parses the text forms `e`, `a`, `b`, `ab`, `b^i`, `ab^i`.
    pub fn parse(s: &str) -> Result<Self, DihedralError> {
        let err = || DihedralError::ParseElement(s.to_string());
        let s = s.trim();
        if s == "e" {
            return Ok(Self::identity());
        }
        let (flip, rest) = match s.strip_prefix('a') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        if rest.is_empty() {
            return if flip { Ok(Self::reflection(0)) } else { Err(err()) };
        }
        let exp = match rest.strip_prefix('b') {
            Some("") => 1,
            Some(tail) => tail
                .strip_prefix('^')
                .and_then(|e| e.parse::<u64>().ok())
                .ok_or_else(err)?,
            None => return Err(err()),
        };
        Ok(DihedralElement { flip, rot: exp })
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.flip, self.rot) {
            (false, 0) => write!(f, "e"),
            (true, 0) => write!(f, "a"),
            (false, 1) => write!(f, "b"),
            (true, 1) => write!(f, "ab"),
            (false, i) => write!(f, "b^{i}"),
            (true, i) => write!(f, "ab^{i}"),
        }
    }
}

/// `(ε₁,i₁)·(ε₂,i₂) = (ε₁⊕ε₂, i₂ + (−1)^{ε₂}·i₁ mod n)`, from `bⁱa = ab⁻ⁱ`.
pub fn dihedral_mul(g: DihedralElement, h: DihedralElement, n: u64) -> DihedralElement {
    let g_rot = g.rot % n;
    let rot = if h.flip {
        (h.rot % n + n - g_rot) % n
    } else {
        (g_rot + h.rot) % n
    };
    DihedralElement {
        flip: g.flip ^ h.flip,
        rot,
    }
}

/// `(0,i)⁻¹ = (0,−i)`; `(1,i)⁻¹ = (1,i)`.
pub fn dihedral_inv(g: DihedralElement, n: u64) -> DihedralElement {
    if g.flip {
        DihedralElement {
            flip: true,
            rot: g.rot % n,
        }
    } else {
        DihedralElement {
            flip: false,
            rot: (n - g.rot % n) % n,
        }
    }
}

/// Sorts into the fixed normal order (rotations ascending, then reflections
/// ascending) and removes duplicates.
fn normalize(mut set: Vec<DihedralElement>) -> Vec<DihedralElement> {
    set.sort_unstable();
    set.dedup();
    set
}

fn validate_set(n: u64, set: &[DihedralElement]) -> Result<(), DihedralError> {
    for g in set {
        if g.rot >= n {
            return Err(DihedralError::RotationOutOfRange { rot: g.rot, n });
        }
    }
    Ok(())
}

fn mul_sets(
    left: &[DihedralElement],
    mid: &[DihedralElement],
    right: &[DihedralElement],
    n: u64,
) -> Vec<DihedralElement> {
    let mut out = Vec::with_capacity(mid.len());
    for &x in mid {
        let mut y = x;
        for &l in left {
            y = dihedral_mul(l, y, n);
        }
        for &r in right {
            y = dihedral_mul(y, r, n);
        }
        out.push(y);
    }
    normalize(out)
}

fn inv_set(set: &[DihedralElement], n: u64) -> Vec<DihedralElement> {
    normalize(set.iter().map(|&g| dihedral_inv(g, n)).collect())
}

fn format_set(set: &[DihedralElement]) -> String {
    let body: Vec<String> = set.iter().map(|g| g.to_string()).collect();
    format!("{{{}}}", body.join(","))
}

/// A pair of subsets of `D_n`, candidate near-factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DihedralSubsetPairRepr", into = "DihedralSubsetPairRepr")]
pub struct DihedralSubsetPair {
    n: u64,
    s: Vec<DihedralElement>,
    t: Vec<DihedralElement>,
}

#[derive(Serialize, Deserialize)]
struct DihedralSubsetPairRepr {
    n: u64,
    #[serde(rename = "S")]
    s: Vec<DihedralElement>,
    #[serde(rename = "T")]
    t: Vec<DihedralElement>,
}

impl TryFrom<DihedralSubsetPairRepr> for DihedralSubsetPair {
    type Error = DihedralError;

    fn try_from(r: DihedralSubsetPairRepr) -> Result<Self, DihedralError> {
        DihedralSubsetPair::new(r.n, r.s, r.t)
    }
}

impl From<DihedralSubsetPair> for DihedralSubsetPairRepr {
    fn from(p: DihedralSubsetPair) -> Self {
        DihedralSubsetPairRepr {
            n: p.n,
            s: p.s,
            t: p.t,
        }
    }
}

impl DihedralSubsetPair {
    pub fn new(
        n: u64,
        s: Vec<DihedralElement>,
        t: Vec<DihedralElement>,
    ) -> Result<Self, DihedralError> {
        if n == 0 {
            return Err(DihedralError::ZeroOrder);
        }
        validate_set(n, &s)?;
        validate_set(n, &t)?;
        Ok(DihedralSubsetPair {
            n,
            s: normalize(s),
            t: normalize(t),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn s(&self) -> &[DihedralElement] {
        &self.s
    }

    pub fn t(&self) -> &[DihedralElement] {
        &self.t
    }
}

impl fmt::Display for DihedralSubsetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D_{}: S={} T={}",
            self.n,
            format_set(&self.s),
            format_set(&self.t)
        )
    }
}

/// Outcome of checking whether `(S, T)` is a near-factorization of `D_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NearFactorizationCheck {
    Valid,
    /// `|S|·|T|` differs from `2n − 1`
    SizeMismatch { expected: u64, got: u64 },
    /// some product `st` equals the identity
    CoversIdentity,
    /// some element is hit by two distinct products
    RepeatedProduct(DihedralElement),
}

impl NearFactorizationCheck {
    pub fn is_valid(&self) -> bool {
        *self == NearFactorizationCheck::Valid
    }
}

/// Checks that the `|S|·|T|` products `st` are pairwise distinct and equal
/// `D_n ∖ {e}`.
pub fn verify_near_factorization(p: &DihedralSubsetPair) -> NearFactorizationCheck {
    let n = p.n;
    let expected = 2 * n - 1;
    let got = (p.s.len() * p.t.len()) as u64;
    if got != expected {
        return NearFactorizationCheck::SizeMismatch { expected, got };
    }
    let mut seen = vec![false; 2 * n as usize];
    for &s in &p.s {
        for &t in &p.t {
            let prod = dihedral_mul(s, t, n);
            if prod == DihedralElement::identity() {
                return NearFactorizationCheck::CoversIdentity;
            }
            let idx = (prod.flip as usize) * n as usize + prod.rot as usize;
            if seen[idx] {
                return NearFactorizationCheck::RepeatedProduct(prod);
            }
            seen[idx] = true;
        }
    }
    NearFactorizationCheck::Valid
}

/// The tile construction: for odd `k` dividing `2n − 1`, the pair
/// `A = {bⁱ : 1 ≤ i ≤ (k−1)/2} ∪ {abⁱ : 0 ≤ i ≤ (k−1)/2}` and
/// `B = {b^{ik} : 0 ≤ ik < n} ∪ {ab^{ik} : 0 < ik < n}` is a
/// near-factorization of `D_n` with `|A| = k`, `|B| = (2n−1)/k`.
pub fn cghk_construction(n: u64, k: u64) -> Result<DihedralSubsetPair, DihedralError> {
    if n == 0 {
        return Err(DihedralError::ZeroOrder);
    }
    let m = 2 * n - 1;
    if k == 0 || m % k != 0 {
        return Err(DihedralError::DivisibilityFailed { k, m });
    }
    let half = (k - 1) / 2;
    let mut a = Vec::with_capacity(k as usize);
    for i in 1..=half {
        a.push(DihedralElement::rotation(i));
    }
    for i in 0..=half {
        a.push(DihedralElement::reflection(i));
    }
    let mut b = Vec::new();
    let mut ik = 0;
    while ik < n {
        b.push(DihedralElement::rotation(ik));
        if ik > 0 {
            b.push(DihedralElement::reflection(ik));
        }
        ik += k;
    }
    let pair = DihedralSubsetPair::new(n, a, b)?;
    debug_assert!(verify_near_factorization(&pair).is_valid());
    Ok(pair)
}

/// The two blocks of the `(k²+1, 2, k, 1)`-SEDF in `D_{(k²+1)/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralSedf {
    pub n: u64,
    pub a1: Vec<DihedralElement>,
    pub a2: Vec<DihedralElement>,
}

impl DihedralSedf {
    /// The associated near-factorization `(A₁, A₂⁻¹)`.
    pub fn to_near_factorization(&self) -> DihedralSubsetPair {
        DihedralSubsetPair::new(self.n, self.a1.clone(), inv_set(&self.a2, self.n))
            .expect("blocks already validated")
    }
}

impl fmt::Display for DihedralSedf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D_{}: A1={} A2={}",
            self.n,
            format_set(&self.a1),
            format_set(&self.a2)
        )
    }
}

/// The reflection/rotation SEDF construction in `D_{(k²+1)/2}` for odd
/// `k ≥ 3`: `A₁ = {bⁱ : 0 ≤ i ≤ (k−1)/2} ∪ {abⁱ : 0 ≤ i ≤ (k−3)/2}`,
/// `A₂ = {b^{ik} : 1 ≤ i ≤ (k−1)/2} ∪ {ab^{ik+(k−1)/2} : 0 ≤ i ≤ (k−1)/2}`.
pub fn hjn_construction(k: u64) -> Result<DihedralSedf, DihedralError> {
    if k < 3 || k % 2 == 0 {
        return Err(DihedralError::InvalidK { k });
    }
    let n = (k * k + 1) / 2;
    let half = (k - 1) / 2;
    let mut a1 = Vec::with_capacity(k as usize);
    for i in 0..=half {
        a1.push(DihedralElement::rotation(i));
    }
    for i in 0..half {
        a1.push(DihedralElement::reflection(i));
    }
    let mut a2 = Vec::with_capacity(k as usize);
    for i in 1..=half {
        a2.push(DihedralElement::rotation(i * k % n));
    }
    for i in 0..=half {
        a2.push(DihedralElement::reflection((i * k + half) % n));
    }
    let sedf = DihedralSedf {
        n,
        a1: normalize(a1),
        a2: normalize(a2),
    };
    debug_assert!(verify_near_factorization(&sedf.to_near_factorization()).is_valid());
    Ok(sedf)
}

/// The explicit equivalence between the two constructions at the same `k`.
#[derive(Debug, Clone)]
pub struct WitnessTranscript {
    pub k: u64,
    pub n: u64,
    /// `h = ab^{(k−1)/2}`
    pub h: DihedralElement,
    /// `A₁·h`, equal to the tile construction's `A`
    pub a1_h: Vec<DihedralElement>,
    /// `h·A₂⁻¹`, equal to the tile construction's `B`
    pub h_a2_inv: Vec<DihedralElement>,
    pub tile_pair: DihedralSubsetPair,
}

impl fmt::Display for WitnessTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h = {}", self.h)?;
        writeln!(
            f,
            "A1*h     = {} = A",
            format_set(&self.a1_h)
        )?;
        write!(
            f,
            "h*A2^-1  = {} = B",
            format_set(&self.h_a2_inv)
        )
    }
}

/// Verifies `A₁·h = A` and `h·A₂⁻¹ = B` with `h = ab^{(k−1)/2}`, where
/// `(A₁, A₂)` is the SEDF construction and `(A, B)` the tile construction
/// at `n = (k²+1)/2`.
pub fn equivalence_witness(k: u64) -> Result<WitnessTranscript, DihedralError> {
    let sedf = hjn_construction(k)?;
    let n = sedf.n;
    let tile_pair = cghk_construction(n, k)?;
    let h = DihedralElement::reflection((k - 1) / 2);
    let a1_h = mul_sets(&[], &sedf.a1, &[h], n);
    let h_a2_inv = mul_sets(&[h], &inv_set(&sedf.a2, n), &[], n);
    if a1_h != tile_pair.s || h_a2_inv != tile_pair.t {
        return Err(DihedralError::WitnessFailed { k });
    }
    Ok(WitnessTranscript {
        k,
        n,
        h,
        a1_h,
        h_a2_inv,
        tile_pair,
    })
}

/// A transformation carrying one near-factorization to another:
/// `(S, T) → (g·S'·h, h⁻¹·T'·g⁻¹)` where `(S', T')` is `(S, T)` itself or,
/// when `inverted`, `(T⁻¹, S⁻¹)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairWitness {
    pub g: DihedralElement,
    pub h: DihedralElement,
    pub inverted: bool,
}

fn all_elements(n: u64) -> Vec<DihedralElement> {
    let mut out = Vec::with_capacity(2 * n as usize);
    for i in 0..n {
        out.push(DihedralElement::rotation(i));
    }
    for i in 0..n {
        out.push(DihedralElement::reflection(i));
    }
    out
}

/// Brute-force scan over all `(g, h) ∈ D_n²` and the inversion variant for a
/// transformation carrying `p1` to `p2`; returns the first witness in the
/// fixed scan order. Pairs failing verification are never equivalent.
pub fn near_factorizations_equivalent(
    p1: &DihedralSubsetPair,
    p2: &DihedralSubsetPair,
) -> Option<PairWitness> {
    if p1.n != p2.n {
        return None;
    }
    if !verify_near_factorization(p1).is_valid() || !verify_near_factorization(p2).is_valid() {
        return None;
    }
    let n = p1.n;
    let elements = all_elements(n);
    for inverted in [false, true] {
        let (s, t) = if inverted {
            (inv_set(&p1.t, n), inv_set(&p1.s, n))
        } else {
            (p1.s.clone(), p1.t.clone())
        };
        if s.len() != p2.s.len() || t.len() != p2.t.len() {
            continue;
        }
        for &g in &elements {
            let g_inv = dihedral_inv(g, n);
            for &h in &elements {
                if mul_sets(&[g], &s, &[h], n) != p2.s {
                    continue;
                }
                let h_inv = dihedral_inv(h, n);
                if mul_sets(&[h_inv], &t, &[g_inv], n) == p2.t {
                    return Some(PairWitness { g, h, inverted });
                }
            }
        }
    }
    None
}
