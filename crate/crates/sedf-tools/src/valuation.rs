//! Alpha-valuations of complete bipartite graphs `K_{a,b}`: verification,
//! the reversal involution, blowup/projection operations, structure
//! detection and full decomposition into blowup steps.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sedf::Sedf;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("both sides must be nonempty")]
    EmptySide,
    #[error("label {0} exceeds the edge count {1}")]
    LabelOutOfRange(u64, u64),
    #[error("label {0} appears on both sides")]
    SidesIntersect(u64),
    #[error("duplicate label {0} within one side")]
    DuplicateLabel(u64),
    #[error("every small-side label must be below every large-side label")]
    ThresholdViolated,
    #[error("blowup factor must be at least 2, got {0}")]
    BadBlowupFactor(u64),
    #[error("valuation is not of type {0:?}")]
    StructureMismatch(BlowupKind),
    #[error("no type I or type II structure present; input is not a valid alpha-valuation")]
    StructureViolation,
    #[error("dimension mismatch: K_{{{0},{1}}} vs K_{{{2},{3}}}")]
    DimensionMismatch(u64, u64, u64, u64),
    #[error("to_sedf requires a square valuation, got K_{{{0},{1}}}")]
    NotSquare(u64, u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlowupKind {
    I,
    II,
}

/// One blowup operation: expand the small side (kind I) or the large side
/// (kind II) by runs of `ell` consecutive labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlowupStep {
    kind: BlowupKind,
    ell: u64,
}

impl BlowupStep {
    pub fn new(kind: BlowupKind, ell: u64) -> Result<Self, ValuationError> {
        if ell < 2 {
            return Err(ValuationError::BadBlowupFactor(ell));
        }
        Ok(BlowupStep { kind, ell })
    }

    pub fn kind(&self) -> BlowupKind {
        self.kind
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureReport {
    Trivial,
    TypeI { ell: u64 },
    TypeII { ell: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationCheck {
    Valid,
    RepeatedDifference(u64),
    MissingDifference(u64),
}

impl ValuationCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValuationCheck::Valid)
    }
}

/// A labeled bipartition of `K_{a,b}` within `{0, ..., ab}`. The small side
/// holds the `a` labels below the threshold, the large side the `b` labels
/// above it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ValuationRepr", into = "ValuationRepr")]
pub struct Valuation {
    small: Vec<u64>,
    large: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ValuationRepr {
    a: u64,
    b: u64,
    small: Vec<u64>,
    large: Vec<u64>,
}

impl TryFrom<ValuationRepr> for Valuation {
    type Error = ValuationError;

    fn try_from(r: ValuationRepr) -> Result<Self, Self::Error> {
        let v = Valuation::new(r.small, r.large)?;
        if v.a() != r.a || v.b() != r.b {
            return Err(ValuationError::DimensionMismatch(r.a, r.b, v.a(), v.b()));
        }
        Ok(v)
    }
}

impl From<Valuation> for ValuationRepr {
    fn from(v: Valuation) -> ValuationRepr {
        ValuationRepr {
            a: v.a(),
            b: v.b(),
            small: v.small,
            large: v.large,
        }
    }
}

impl Valuation {
    /// Structural construction: checks label ranges, disjointness and the
    /// threshold property. Difference coverage is checked by [`Self::verify`].
    pub fn new(
        small: impl IntoIterator<Item = u64>,
        large: impl IntoIterator<Item = u64>,
    ) -> Result<Self, ValuationError> {
        let mut small: Vec<u64> = small.into_iter().collect();
        let mut large: Vec<u64> = large.into_iter().collect();
        small.sort_unstable();
        large.sort_unstable();
        if small.is_empty() || large.is_empty() {
            return Err(ValuationError::EmptySide);
        }
        for side in [&small, &large] {
            for w in side.windows(2) {
                if w[0] == w[1] {
                    return Err(ValuationError::DuplicateLabel(w[0]));
                }
            }
        }
        let edges = small.len() as u64 * large.len() as u64;
        for &x in small.iter().chain(large.iter()) {
            if x > edges {
                return Err(ValuationError::LabelOutOfRange(x, edges));
            }
        }
        if let Ok(i) = large.binary_search(small.last().unwrap()) {
            return Err(ValuationError::SidesIntersect(large[i]));
        }
        if small.last().unwrap() >= large.first().unwrap() {
            return Err(ValuationError::ThresholdViolated);
        }
        // threshold separates the sides, so intersection is impossible here
        Ok(Valuation { small, large })
    }

    /// The trivial valuation of `K_{1,1}`.
    pub fn trivial() -> Valuation {
        Valuation {
            small: vec![0],
            large: vec![1],
        }
    }

    pub fn a(&self) -> u64 {
        self.small.len() as u64
    }

    pub fn b(&self) -> u64 {
        self.large.len() as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.a() * self.b()
    }

    pub fn small(&self) -> &[u64] {
        &self.small
    }

    pub fn large(&self) -> &[u64] {
        &self.large
    }

    /// Checks that the cross differences cover `{1, ..., ab}` exactly once,
    /// reporting the first duplicated or missing difference.
    pub fn verify(&self) -> ValuationCheck {
        let n = self.edge_count() as usize;
        let mut seen = vec![false; n + 1];
        for &u in &self.large {
            for &w in &self.small {
                let d = (u - w) as usize;
                if seen[d] {
                    return ValuationCheck::RepeatedDifference(d as u64);
                }
                seen[d] = true;
            }
        }
        for (d, hit) in seen.iter().enumerate().skip(1) {
            if !hit {
                return ValuationCheck::MissingDifference(d as u64);
            }
        }
        ValuationCheck::Valid
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_valid()
    }

    /// Relabels every vertex by `x -> ab - x`; the sides swap roles, giving a
    /// valuation of `K_{b,a}`.
    pub fn phi(&self) -> Valuation {
        let n = self.edge_count();
        let flip = |side: &[u64]| {
            let mut out: Vec<u64> = side.iter().map(|&x| n - x).collect();
            out.reverse();
            out
        };
        Valuation {
            small: flip(&self.large),
            large: flip(&self.small),
        }
    }

    /// Equal, or related by the `phi` relabeling.
    pub fn equivalent(&self, other: &Valuation) -> Result<bool, ValuationError> {
        if self.a() == other.a() && self.b() == other.b() && self == other {
            return Ok(true);
        }
        if self.b() == other.a() && self.a() == other.b() {
            return Ok(&self.phi() == other);
        }
        if self.a() == other.a() && self.b() == other.b() {
            return Ok(false);
        }
        Err(ValuationError::DimensionMismatch(
            self.a(),
            self.b(),
            other.a(),
            other.b(),
        ))
    }

    /// Multiplies all labels by `ell`, then expands the chosen side into runs
    /// of `ell` consecutive labels.
    pub fn blowup(&self, step: BlowupStep) -> Valuation {
        let ell = step.ell;
        match step.kind {
            BlowupKind::I => {
                let small = self
                    .small
                    .iter()
                    .flat_map(|&s| (0..ell).map(move |j| ell * s + j))
                    .collect();
                let large = self.large.iter().map(|&y| ell * y).collect();
                Valuation { small, large }
            }
            BlowupKind::II => {
                let small = self.small.iter().map(|&s| ell * s).collect();
                let large = self
                    .large
                    .iter()
                    .flat_map(|&y| (0..ell).rev().map(move |j| ell * y - j))
                    .collect();
                Valuation { small, large }
            }
        }
    }

    /// Length of the maximal run of consecutive integers in `small` ending at
    /// its maximum.
    fn small_run_len(&self) -> u64 {
        let x = *self.small.last().unwrap();
        let mut ell = 1;
        while ell <= x && self.small.binary_search(&(x - ell)).is_ok() {
            ell += 1;
        }
        ell
    }

    /// Length of the maximal run of consecutive integers in `large` starting
    /// at its minimum.
    fn large_run_len(&self) -> u64 {
        let y = self.large[0];
        let mut ell = 1;
        while self.large.binary_search(&(y + ell)).is_ok() {
            ell += 1;
        }
        ell
    }

    fn is_type_i(&self, ell: u64) -> bool {
        if ell < 2 || self.a() % ell != 0 {
            return false;
        }
        if self.large.iter().any(|&y| y % ell != 0) {
            return false;
        }
        // small must be a disjoint union of ell-runs, each starting at a
        // multiple of ell
        self.small.chunks(ell as usize).all(|run| {
            run[0] % ell == 0 && run.iter().enumerate().all(|(j, &x)| x == run[0] + j as u64)
        })
    }

    fn is_type_ii(&self, ell: u64) -> bool {
        if ell < 2 || self.b() % ell != 0 {
            return false;
        }
        if self.small.iter().any(|&x| x % ell != 0) {
            return false;
        }
        // large must be a disjoint union of ell-runs, each ending at a
        // multiple of ell
        self.large.chunks(ell as usize).all(|run| {
            let last = run[run.len() - 1];
            last % ell == 0 && run.iter().enumerate().all(|(j, &x)| x == last + 1 + j as u64 - ell)
        })
    }

    /// Classifies a valid valuation as trivial, type I or type II, with the
    /// maximal boundary run length `ell`. For a valid alpha-valuation of a
    /// complete bipartite graph exactly one type applies; failure of both is
    /// the runtime witness that the input was not valid.
    pub fn detect_structure(&self) -> Result<StructureReport, ValuationError> {
        if self.a() == 1 && self.b() == 1 {
            return Ok(StructureReport::Trivial);
        }
        let ell_i = self.small_run_len();
        let ell_ii = self.large_run_len();
        match (self.is_type_i(ell_i), self.is_type_ii(ell_ii)) {
            (true, false) => Ok(StructureReport::TypeI { ell: ell_i }),
            (false, true) => Ok(StructureReport::TypeII { ell: ell_ii }),
            _ => Err(ValuationError::StructureViolation),
        }
    }

    /// Inverse of blowup: collapse the runs of the requested side. Returns
    /// the smaller valuation and the run length `ell` that was removed.
    pub fn project(&self, kind: BlowupKind) -> Result<(Valuation, u64), ValuationError> {
        let structure = self.detect_structure()?;
        let ell = match (kind, structure) {
            (BlowupKind::I, StructureReport::TypeI { ell }) => ell,
            (BlowupKind::II, StructureReport::TypeII { ell }) => ell,
            _ => return Err(ValuationError::StructureMismatch(kind)),
        };
        let v = match kind {
            BlowupKind::I => Valuation {
                small: self
                    .small
                    .chunks(ell as usize)
                    .map(|run| run[0] / ell)
                    .collect(),
                large: self.large.iter().map(|&y| y / ell).collect(),
            },
            BlowupKind::II => Valuation {
                small: self.small.iter().map(|&x| x / ell).collect(),
                large: self
                    .large
                    .chunks(ell as usize)
                    .map(|run| run[run.len() - 1] / ell)
                    .collect(),
            },
        };
        Ok((v, ell))
    }

    /// Repeatedly projects down to `K_{1,1}` and returns the blowup steps
    /// that rebuild `self`, in application order. The kinds strictly
    /// alternate because detection always uses the maximal run length.
    pub fn decompose(&self) -> Result<Vec<BlowupStep>, ValuationError> {
        let mut current = self.clone();
        let mut steps = Vec::new();
        loop {
            match current.detect_structure()? {
                StructureReport::Trivial => break,
                StructureReport::TypeI { .. } => {
                    let (next, ell) = current.project(BlowupKind::I)?;
                    steps.push(BlowupStep {
                        kind: BlowupKind::I,
                        ell,
                    });
                    current = next;
                }
                StructureReport::TypeII { .. } => {
                    let (next, ell) = current.project(BlowupKind::II)?;
                    steps.push(BlowupStep {
                        kind: BlowupKind::II,
                        ell,
                    });
                    current = next;
                }
            }
        }
        steps.reverse();
        debug_assert!(steps.windows(2).all(|w| w[0].kind != w[1].kind));
        Ok(steps)
    }

    /// Folds the steps over the trivial valuation of `K_{1,1}`.
    pub fn compose(steps: &[BlowupStep]) -> Valuation {
        steps
            .iter()
            .fold(Valuation::trivial(), |v, &step| v.blowup(step))
    }

    /// A square valuation read as a pair of subsets of `Z_{a^2+1}`.
    pub fn to_sedf(&self) -> Result<Sedf, ValuationError> {
        if self.a() != self.b() {
            return Err(ValuationError::NotSquare(self.a(), self.b()));
        }
        let n = self.a() * self.a() + 1;
        Ok(Sedf::new(n, self.small.iter().copied(), self.large.iter().copied())
            .expect("valuation labels form disjoint sets below a^2+1"))
    }
}

/// Parses either the explicit form `"II:4,I:4"` or the shorthand `"(4,4)"`,
/// which denotes a strictly alternating sequence starting with kind II.
pub fn parse_sequence(text: &str) -> Result<Vec<BlowupStep>, String> {
    let text = text.trim();
    if text.is_empty() || text == "()" {
        return Ok(Vec::new());
    }
    if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let mut steps = Vec::new();
        for (i, part) in inner.split(',').enumerate() {
            let ell: u64 = part
                .trim()
                .parse()
                .map_err(|_| format!("bad blowup factor {part:?}"))?;
            let kind = if i % 2 == 0 {
                BlowupKind::II
            } else {
                BlowupKind::I
            };
            steps.push(BlowupStep::new(kind, ell).map_err(|e| e.to_string())?);
        }
        return Ok(steps);
    }
    let mut steps = Vec::new();
    for part in text.split(',') {
        let (kind, ell) = part
            .trim()
            .split_once(':')
            .ok_or_else(|| format!("expected KIND:ELL, got {part:?}"))?;
        let kind = match kind.trim() {
            "I" | "i" => BlowupKind::I,
            "II" | "ii" => BlowupKind::II,
            other => return Err(format!("unknown blowup kind {other:?}")),
        };
        let ell: u64 = ell
            .trim()
            .parse()
            .map_err(|_| format!("bad blowup factor {ell:?}"))?;
        steps.push(BlowupStep::new(kind, ell).map_err(|e| e.to_string())?);
    }
    Ok(steps)
}

/// Renders a step sequence; strictly alternating sequences that start with
/// kind II use the compact `"(l1,...,lm)"` form.
pub fn render_sequence(steps: &[BlowupStep]) -> String {
    let alternating_from_ii = steps
        .iter()
        .enumerate()
        .all(|(i, s)| s.kind == if i % 2 == 0 { BlowupKind::II } else { BlowupKind::I });
    if alternating_from_ii {
        let ells: Vec<String> = steps.iter().map(|s| s.ell.to_string()).collect();
        format!("({})", ells.join(","))
    } else {
        steps
            .iter()
            .map(|s| format!("{:?}:{}", s.kind, s.ell))
            .collect::<Vec<_>>()
            .join(",")
    }
}
