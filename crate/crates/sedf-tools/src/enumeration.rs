//! Exhaustive, isomorph-rejected enumeration of all `(a^2+1, 2, a, 1)`-SEDFs
//! in `Z_{a^2+1}`.
//!
//! Every such SEDF has a symmetric translate, so candidates are generated as
//! unions of negation orbits `P_x = {x, -x}`, filtered to the lexicographic
//! minimum of their orbit under unit multiplication, completed to mates via
//! an exact-cover search over the pair-indexed incidence matrix, and finally
//! deduplicated by affine canonical form.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::cover::{exact_covers, CoverColumn};
use crate::sedf::{EquivalenceWitness, Sedf};
use crate::valuation::{render_sequence, BlowupKind, BlowupStep, Valuation};
use crate::zmod::{gcd, ResidueSet};

/// The negation orbit `P_x = {x, -x}` in `Z_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricPair {
    index: u64,
    modulus: u64,
}

impl SymmetricPair {
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn size(&self) -> usize {
        if self.index == 0 || 2 * self.index % self.modulus == 0 {
            1
        } else {
            2
        }
    }

    pub fn elems(&self) -> Vec<u64> {
        let neg = (self.modulus - self.index) % self.modulus;
        if neg == self.index {
            vec![self.index]
        } else {
            vec![self.index, neg]
        }
    }
}

/// Reduces `x` to its pair index `min(x, v - x)`.
pub fn pair_index(x: u64, v: u64) -> u64 {
    let x = x % v;
    x.min(v - x)
}

fn pair_count(a: u64) -> u64 {
    if a % 2 == 0 {
        a * a / 2
    } else {
        (a * a + 1) / 2
    }
}

/// The pair universe `P_1, ..., P_r`: all size-two pairs for even `a`, plus
/// the final size-one pair `P_{(a^2+1)/2}` for odd `a`.
pub fn pair_universe(a: u64) -> Vec<SymmetricPair> {
    let v = a * a + 1;
    (1..=pair_count(a))
        .map(|index| SymmetricPair { index, modulus: v })
        .collect()
}

/// Pair indices of a symmetric set, sorted ascending (0 included when the
/// set contains 0).
pub fn pair_indices(set: &ResidueSet) -> Vec<u64> {
    let v = set.modulus();
    let mut out: Vec<u64> = set.elems().iter().map(|&x| pair_index(x, v)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The pair-indexed incidence matrix `M_A`: rows over all pairs `P_d`,
/// columns over the pairs not in `A`, entries counting the pairs of `A`
/// equal to `P_{d+y}` or `P_{d-y}`.
#[derive(Debug, Clone)]
pub struct KmMatrix {
    rows: Vec<u64>,
    cols: Vec<u64>,
    entries: Vec<u8>,
}

impl KmMatrix {
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn cols(&self) -> &[u64] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.cols.len() + col]
    }
}

/// Builds `M_A` for a symmetric candidate given by its pair indices.
pub fn build_matrix(a_pairs: &[u64], a: u64) -> KmMatrix {
    let v = a * a + 1;
    let r = pair_count(a);
    debug_assert!(r <= 128);
    let mut in_a = 0u128;
    for &x in a_pairs {
        debug_assert!(x <= r);
        in_a |= 1 << x;
    }
    let rows: Vec<u64> = (1..=r).collect();
    let cols: Vec<u64> = (1..=r).filter(|y| in_a >> y & 1 == 0).collect();
    let mut entries = vec![0u8; rows.len() * cols.len()];
    for (i, &d) in rows.iter().enumerate() {
        for (j, &y) in cols.iter().enumerate() {
            let f1 = pair_index(d + y, v);
            let f2 = pair_index(d + v - y, v);
            let mut e = (in_a >> f1 & 1) as u8;
            if f2 != f1 {
                e += (in_a >> f2 & 1) as u8;
            }
            entries[i * cols.len() + j] = e;
        }
    }
    KmMatrix {
        rows,
        cols,
        entries,
    }
}

/// All (0,1) column-selection vectors solving `M_A U^T = J^T`, reported as
/// sorted lists of selected pair indices. Columns containing a 2 are removed
/// before the search; if that leaves an uncoverable row there is no solution.
pub fn solve_exact_cover(m: &KmMatrix) -> Vec<Vec<u64>> {
    let ncols = m.cols.len();
    let mut cols = Vec::with_capacity(ncols);
    let mut coverable = 0u128;
    'col: for (j, &y) in m.cols.iter().enumerate() {
        let mut rows = 0u128;
        for i in 0..m.rows.len() {
            match m.entries[i * ncols + j] {
                0 => {}
                1 => rows |= 1 << i,
                _ => continue 'col,
            }
        }
        coverable |= rows;
        cols.push(CoverColumn { label: y, rows });
    }
    let full = if m.rows.is_empty() {
        0
    } else {
        (1u128 << m.rows.len()) - 1
    };
    if coverable != full {
        return Vec::new();
    }
    exact_covers(&cols, full)
}

/// Expands a solution's pair indices into the mate set `B`.
fn assemble_pairs(v: u64, indices: &[u64]) -> ResidueSet {
    let mut elems = Vec::with_capacity(2 * indices.len());
    for &y in indices {
        elems.push(y);
        let neg = (v - y) % v;
        if neg != y {
            elems.push(neg);
        }
    }
    ResidueSet::new(v, elems).expect("pair indices are in range")
}

/// All mates of a symmetric candidate `A`; every returned pair passes the
/// SEDF verification.
pub fn mates(a_set: &ResidueSet, a: u64) -> Vec<ResidueSet> {
    let v = a * a + 1;
    let m = build_matrix(&pair_indices(a_set), a);
    solve_exact_cover(&m)
        .into_iter()
        .map(|sol| assemble_pairs(v, &sol))
        .filter(|b| {
            Sedf::from_sets(a_set.clone(), b.clone())
                .map(|s| s.is_valid())
                .unwrap_or(false)
        })
        .collect()
}

#[derive(Debug, Clone)]
struct EnumCtx {
    a: u64,
    v: u64,
    /// largest pair index of a size-two pair: floor((v-1)/2)
    v0: u64,
    /// number of size-two pairs selecting `A`: floor(a/2)
    a0: usize,
    odd: bool,
    /// units in `2..=v/2`; `m` and `v-m` act identically on symmetric sets
    units_half: Vec<u64>,
    /// disables the unit filter (slow path used to test its soundness)
    use_filter: bool,
}

impl EnumCtx {
    fn new(a: u64) -> Self {
        Self::with_filter(a, true)
    }

    fn with_filter(a: u64, use_filter: bool) -> Self {
        let v = a * a + 1;
        EnumCtx {
            a,
            v,
            v0: (v - 1) / 2,
            a0: (a / 2) as usize,
            odd: a % 2 == 1,
            units_half: (2..=v / 2).filter(|&m| gcd(m, v) == 1).collect(),
            use_filter,
        }
    }
}

/// True when no unit multiple of the symmetric set with nonzero pair indices
/// `t` (sorted) is lexicographically smaller. Comparison happens on sorted
/// pair-index lists, which is equivalent to comparing the expanded sets.
fn passes_unit_filter(ctx: &EnumCtx, t: &[u64]) -> bool {
    if !ctx.use_filter || t.is_empty() {
        return true;
    }
    let first = t[0];
    let mut img = vec![0u64; t.len()];
    for &m in &ctx.units_half {
        let mut min = u64::MAX;
        for (slot, &x) in img.iter_mut().zip(t) {
            let f = pair_index(m * x, ctx.v);
            *slot = f;
            min = min.min(f);
        }
        if min > first {
            continue;
        }
        img.sort_unstable();
        if img.as_slice() < t {
            return false;
        }
    }
    true
}

/// Expands nonzero pair indices into the candidate `A` (with 0 for odd `a`).
fn assemble_candidate(ctx: &EnumCtx, t: &[u64]) -> ResidueSet {
    let mut elems: Vec<u64> = Vec::with_capacity(ctx.a as usize);
    if ctx.odd {
        elems.push(0);
    }
    for &x in t {
        elems.push(x);
        elems.push(ctx.v - x);
    }
    ResidueSet::new(ctx.v, elems).expect("candidate elements are in range")
}

/// One contiguous slice of the candidate stream: `T` ranges over
/// `prefix ∪ (choose k from pool)` in lexicographic order.
#[derive(Debug, Clone)]
struct Shard {
    prefix: Vec<u64>,
    pool: Vec<u64>,
    k: usize,
}

/// Shards covering the full `T` stream in lexicographic order. Candidates
/// whose first element exceeds 1 while containing a unit are omitted
/// entirely: the inverse of that unit maps it to a set starting with pair
/// index 1, which is lexicographically smaller, so the unit filter would
/// discard them anyway.
fn shards(ctx: &EnumCtx) -> Vec<Shard> {
    if ctx.a0 == 0 {
        return vec![Shard {
            prefix: Vec::new(),
            pool: Vec::new(),
            k: 0,
        }];
    }
    if !ctx.use_filter {
        // slow path: the full T stream, still in lexicographic order
        return (1..=ctx.v0)
            .map(|t1| Shard {
                prefix: vec![t1],
                pool: (t1 + 1..=ctx.v0).collect(),
                k: ctx.a0 - 1,
            })
            .collect();
    }
    let non_units: Vec<u64> = (2..=ctx.v0).filter(|&x| gcd(x, ctx.v) != 1).collect();
    let mut out = Vec::new();
    if ctx.a0 == 1 {
        out.push(Shard {
            prefix: vec![1],
            pool: Vec::new(),
            k: 0,
        });
        for &t1 in &non_units {
            out.push(Shard {
                prefix: vec![t1],
                pool: Vec::new(),
                k: 0,
            });
        }
        return out;
    }
    for t2 in 2..=ctx.v0 {
        out.push(Shard {
            prefix: vec![1, t2],
            pool: (t2 + 1..=ctx.v0).collect(),
            k: ctx.a0 - 2,
        });
    }
    for (i, &t1) in non_units.iter().enumerate() {
        out.push(Shard {
            prefix: vec![t1],
            pool: non_units[i + 1..].to_vec(),
            k: ctx.a0 - 1,
        });
    }
    out
}

/// Visits all k-subsets of `pool` in lexicographic order, appended to
/// `prefix`.
fn for_each_t(shard: &Shard, mut f: impl FnMut(&[u64])) {
    let k = shard.k;
    if shard.pool.len() < k {
        return;
    }
    let mut t = shard.prefix.clone();
    t.resize(shard.prefix.len() + k, 0);
    if k == 0 {
        f(&t);
        return;
    }
    let base = shard.prefix.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        for (j, &i) in idx.iter().enumerate() {
            t[base + j] = shard.pool[i];
        }
        f(&t);
        // advance the index vector
        let mut j = k;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if idx[j] != shard.pool.len() - k + j {
                break;
            }
            if j == 0 {
                return;
            }
        }
        idx[j] += 1;
        for l in j + 1..k {
            idx[l] = idx[l - 1] + 1;
        }
    }
}

/// The isomorph-rejected candidate stream: each symmetric `A` built from an
/// `a0`-subset `T` of pair indices, in lexicographic order of `T`, skipping
/// every `A` with a lexicographically smaller unit multiple.
pub fn candidate_sets(a: u64) -> impl Iterator<Item = ResidueSet> {
    let ctx = EnumCtx::new(a);
    shards(&ctx).into_iter().flat_map(move |shard| {
        let mut out = Vec::new();
        for_each_t(&shard, |t| {
            if passes_unit_filter(&ctx, t) {
                out.push(assemble_candidate(&ctx, t));
            }
        });
        out.into_iter()
    })
}

/// One inequivalent SEDF class found by the enumeration.
#[derive(Debug, Clone)]
pub struct SedfClass {
    /// lexicographically minimal representative of the class
    pub canonical: Sedf,
    /// the first symmetric pair of the candidate stream yielding this class
    pub symmetric: Sedf,
    /// affine map (plus optional side swap) from `symmetric` to `canonical`
    pub witness: EquivalenceWitness,
    /// a blowup sequence composing to this class, filled by `alpha_coverage`
    pub blowup_sequence: Option<String>,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub a: u64,
    pub classes: Vec<SedfClass>,
    pub candidates_scanned: u64,
    pub solution_count: u64,
    pub elapsed: Duration,
}

impl EnumerationReport {
    pub fn canonical_sedfs(&self) -> Vec<&Sedf> {
        self.classes.iter().map(|c| &c.canonical).collect()
    }
}

struct ShardResult {
    found: Vec<(Sedf, Sedf, EquivalenceWitness)>,
    scanned: u64,
    solutions: u64,
}

fn process_shard(ctx: &EnumCtx, shard: &Shard) -> ShardResult {
    let mut result = ShardResult {
        found: Vec::new(),
        scanned: 0,
        solutions: 0,
    };
    for_each_t(shard, |t| {
        if !passes_unit_filter(ctx, t) {
            return;
        }
        result.scanned += 1;
        let mut a_pairs: Vec<u64> = Vec::with_capacity(t.len() + 1);
        if ctx.odd {
            a_pairs.push(0);
        }
        a_pairs.extend_from_slice(t);
        let matrix = build_matrix(&a_pairs, ctx.a);
        let solutions = solve_exact_cover(&matrix);
        if solutions.is_empty() {
            return;
        }
        let a_set = assemble_candidate(ctx, t);
        for sol in solutions {
            let b_set = assemble_pairs(ctx.v, &sol);
            let symmetric = Sedf::from_sets(a_set.clone(), b_set)
                .expect("mate is disjoint from the candidate");
            assert!(symmetric.is_valid(), "exact-cover mate failed verification");
            result.solutions += 1;
            let (canonical, witness) = symmetric.canonical_form();
            result.found.push((canonical, symmetric, witness));
        }
    });
    result
}

fn enumerate_impl(a: u64) -> EnumerationReport {
    enumerate_with_ctx(EnumCtx::new(a))
}

/// Slow-path enumeration with the unit filter disabled; exists so tests can
/// confirm that the filter never changes the canonical output.
pub fn enumerate_sedfs_unfiltered(a: u64) -> EnumerationReport {
    assert!(a >= 1);
    enumerate_with_ctx(EnumCtx::with_filter(a, false))
}

fn enumerate_with_ctx(ctx: EnumCtx) -> EnumerationReport {
    let start = Instant::now();
    let a = ctx.a;
    let shard_list = shards(&ctx);
    let results: Vec<ShardResult> = shard_list
        .par_iter()
        .map(|shard| process_shard(&ctx, shard))
        .collect();

    let mut candidates_scanned = 0;
    let mut solution_count = 0;
    let mut classes: std::collections::BTreeMap<Sedf, (Sedf, EquivalenceWitness)> =
        std::collections::BTreeMap::new();
    for r in results {
        candidates_scanned += r.scanned;
        solution_count += r.solutions;
        for (canonical, symmetric, witness) in r.found {
            classes.entry(canonical).or_insert((symmetric, witness));
        }
    }
    EnumerationReport {
        a,
        classes: classes
            .into_iter()
            .map(|(canonical, (symmetric, witness))| SedfClass {
                canonical,
                symmetric,
                witness,
                blowup_sequence: None,
            })
            .collect(),
        candidates_scanned,
        solution_count,
        elapsed: start.elapsed(),
    }
}

/// Enumerates all inequivalent `(a^2+1, 2, a, 1)`-SEDFs in `Z_{a^2+1}`.
/// `workers = 0` uses the default thread pool; the output is deterministic
/// and independent of the worker count.
pub fn enumerate_sedfs(a: u64, workers: usize) -> EnumerationReport {
    assert!(a >= 1);
    if workers == 0 {
        enumerate_impl(a)
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool construction")
            .install(|| enumerate_impl(a))
    }
}

/// Ordered factorizations of `n` into factors at least 2; `n = 1` has the
/// empty factorization.
pub fn ordered_factorizations(n: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for d in 2..=n {
        if n % d == 0 {
            for rest in ordered_factorizations(n / d) {
                let mut seq = Vec::with_capacity(rest.len() + 1);
                seq.push(d);
                seq.extend(rest);
                out.push(seq);
            }
        }
    }
    out
}

fn interleave(first: &[u64], second: &[u64], first_kind: BlowupKind) -> Option<Vec<BlowupStep>> {
    if first.len() != second.len() && first.len() != second.len() + 1 {
        return None;
    }
    let second_kind = match first_kind {
        BlowupKind::I => BlowupKind::II,
        BlowupKind::II => BlowupKind::I,
    };
    let mut steps = Vec::with_capacity(first.len() + second.len());
    for i in 0..first.len() {
        steps.push(BlowupStep::new(first_kind, first[i]).ok()?);
        if i < second.len() {
            steps.push(BlowupStep::new(second_kind, second[i]).ok()?);
        }
    }
    Some(steps)
}

/// For each canonical class of the report, searches the alternating blowup
/// sequences whose type I and type II factor products both equal `a` for one
/// composing to that class. A class left at `None` is not realized by any
/// alpha-valuation, which would settle the existence question negatively.
pub fn alpha_coverage(report: &EnumerationReport) -> Vec<(Sedf, Option<Vec<BlowupStep>>)> {
    let factorizations = ordered_factorizations(report.a);
    let mut sequences: Vec<Vec<BlowupStep>> = Vec::new();
    for f_ii in &factorizations {
        for f_i in &factorizations {
            for (first, second, kind) in [
                (f_ii, f_i, BlowupKind::II),
                (f_i, f_ii, BlowupKind::I),
            ] {
                if let Some(steps) = interleave(first, second, kind) {
                    sequences.push(steps);
                }
            }
        }
    }
    // shortest sequences first so the witness for each class is as compact
    // as possible; ties broken by factor values, type-II starts first
    sequences.sort_by_key(|steps| {
        (
            steps.len(),
            steps.iter().map(|s| s.ell()).collect::<Vec<_>>(),
            steps.first().map(|s| s.kind()) == Some(BlowupKind::I),
        )
    });
    sequences.dedup();

    let mut out: Vec<(Sedf, Option<Vec<BlowupStep>>)> = report
        .classes
        .iter()
        .map(|c| (c.canonical.clone(), None))
        .collect();
    let mut remaining = out.len();
    for steps in sequences {
        let valuation = Valuation::compose(&steps);
        let sedf = valuation
            .to_sedf()
            .expect("equal factor products give a square valuation");
        let (canonical, _) = sedf.canonical_form();
        for entry in out.iter_mut() {
            if entry.0 == canonical && entry.1.is_none() {
                entry.1 = Some(steps.clone());
                remaining -= 1;
            }
        }
        if remaining == 0 {
            break;
        }
    }
    out
}

/// Runs `alpha_coverage` and stores the rendered sequences on the report.
pub fn annotate_alpha_coverage(report: &mut EnumerationReport) {
    let coverage = alpha_coverage(report);
    for (class, (canonical, steps)) in report.classes.iter_mut().zip(coverage) {
        debug_assert_eq!(class.canonical, canonical);
        class.blowup_sequence = steps.map(|s| render_sequence(&s));
    }
}
