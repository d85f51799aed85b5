//! Acceptance suite: one test per correctness guarantee the toolkit makes,
//! each printing a PASS line (visible with `--nocapture`). The frozen class
//! data below is
//! the complete list of inequivalent (a^2+1, 2, a, 1)-SEDFs for a <= 14,
//! with, for each class, a blowup sequence that composes and canonicalizes
//! to exactly that class.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use sedf_tools::dihedral::{
    cghk_construction, equivalence_witness, hjn_construction, near_factorizations_equivalent,
    verify_near_factorization, DihedralElement,
};
use sedf_tools::enumeration::{
    alpha_coverage, build_matrix, enumerate_sedfs, solve_exact_cover, EnumerationReport,
};
use sedf_tools::sedf::Sedf;
use sedf_tools::valuation::{parse_sequence, BlowupKind, Valuation};
use sedf_tools::zmod::{AffineMap, ResidueSet};

struct PublishedClass {
    a: u64,
    set_a: &'static [u64],
    set_b: &'static [u64],
    sequence: &'static str,
}

const PUBLISHED: &[PublishedClass] = &[
    PublishedClass { a: 3, set_a: &[0, 1, 2], set_b: &[3, 6, 9], sequence: "(3,3)" },
    PublishedClass { a: 4, set_a: &[0, 1, 2, 3], set_b: &[4, 8, 12, 16], sequence: "(4,4)" },
    PublishedClass { a: 4, set_a: &[0, 1, 4, 5], set_b: &[6, 8, 14, 16], sequence: "(2,2,2,2)" },
    PublishedClass { a: 5, set_a: &[0, 1, 2, 3, 4], set_b: &[5, 10, 15, 20, 25], sequence: "(5,5)" },
    PublishedClass { a: 6, set_a: &[0, 1, 2, 3, 4, 5], set_b: &[6, 12, 18, 24, 30, 36], sequence: "(6,6)" },
    PublishedClass { a: 6, set_a: &[0, 1, 2, 6, 7, 8], set_b: &[9, 12, 21, 24, 33, 36], sequence: "(3,2,2,3)" },
    PublishedClass { a: 7, set_a: &[0, 1, 2, 3, 4, 5, 6], set_b: &[7, 14, 21, 28, 35, 42, 49], sequence: "(7,7)" },
    PublishedClass { a: 8, set_a: &[0, 1, 2, 3, 4, 5, 6, 7], set_b: &[8, 16, 24, 32, 40, 48, 56, 64], sequence: "(8,8)" },
    PublishedClass { a: 8, set_a: &[0, 1, 2, 3, 8, 9, 10, 11], set_b: &[12, 16, 28, 32, 44, 48, 60, 64], sequence: "(2,2,4,4)" },
    PublishedClass { a: 8, set_a: &[0, 1, 4, 5, 16, 17, 20, 21], set_b: &[22, 24, 30, 32, 54, 56, 62, 64], sequence: "(2,2,2,2,2,2)" },
    PublishedClass { a: 9, set_a: &[0, 1, 2, 3, 4, 5, 6, 7, 8], set_b: &[9, 18, 27, 36, 45, 54, 63, 72, 81], sequence: "(9,9)" },
    PublishedClass { a: 9, set_a: &[0, 1, 2, 9, 10, 11, 18, 19, 20], set_b: &[21, 24, 27, 48, 51, 54, 75, 78, 81], sequence: "(3,3,3,3)" },
    PublishedClass { a: 10, set_a: &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9], set_b: &[10, 20, 30, 40, 50, 60, 70, 80, 90, 100], sequence: "(10,10)" },
    PublishedClass { a: 10, set_a: &[0, 1, 2, 3, 4, 10, 11, 12, 13, 14], set_b: &[15, 20, 35, 40, 55, 60, 75, 80, 95, 100], sequence: "(5,2,2,5)" },
    PublishedClass { a: 11, set_a: &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10], set_b: &[11, 22, 33, 44, 55, 66, 77, 88, 99, 110, 121], sequence: "(11,11)" },
    PublishedClass { a: 12, set_a: &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11], set_b: &[12, 24, 36, 48, 60, 72, 84, 96, 108, 120, 132, 144], sequence: "(12,12)" },
    PublishedClass { a: 12, set_a: &[0, 1, 2, 3, 4, 5, 12, 13, 14, 15, 16, 17], set_b: &[18, 24, 42, 48, 66, 72, 90, 96, 114, 120, 138, 144], sequence: "(6,2,2,6)" },
    PublishedClass { a: 12, set_a: &[0, 1, 2, 3, 4, 5, 18, 19, 20, 21, 22, 23], set_b: &[24, 30, 36, 60, 66, 72, 96, 102, 108, 132, 138, 144], sequence: "(4,2,3,6)" },
    PublishedClass { a: 12, set_a: &[0, 1, 2, 3, 4, 5, 24, 25, 26, 27, 28, 29], set_b: &[30, 36, 42, 48, 78, 84, 90, 96, 126, 132, 138, 144], sequence: "(3,2,4,6)" },
    PublishedClass { a: 12, set_a: &[0, 1, 2, 3, 12, 13, 14, 15, 24, 25, 26, 27], set_b: &[28, 32, 36, 64, 68, 72, 100, 104, 108, 136, 140, 144], sequence: "(4,3,3,4)" },
    PublishedClass { a: 12, set_a: &[0, 1, 2, 6, 7, 8, 24, 25, 26, 30, 31, 32], set_b: &[33, 36, 45, 48, 81, 84, 93, 96, 129, 132, 141, 144], sequence: "(3,2,2,2,2,3)" },
    PublishedClass { a: 12, set_a: &[0, 1, 2, 6, 7, 8, 36, 37, 38, 42, 43, 44], set_b: &[45, 48, 57, 60, 69, 72, 117, 120, 129, 132, 141, 144], sequence: "(2,2,3,2,2,3)" },
    PublishedClass { a: 13, set_a: &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12], set_b: &[13, 26, 39, 52, 65, 78, 91, 104, 117, 130, 143, 156, 169], sequence: "(13,13)" },
    PublishedClass { a: 14, set_a: &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13], set_b: &[14, 28, 42, 56, 70, 84, 98, 112, 126, 140, 154, 168, 182, 196], sequence: "(14,14)" },
    PublishedClass { a: 14, set_a: &[0, 1, 2, 3, 4, 5, 6, 14, 15, 16, 17, 18, 19, 20], set_b: &[21, 28, 49, 56, 77, 84, 105, 112, 133, 140, 161, 168, 189, 196], sequence: "(7,2,2,7)" },
];

fn published_for(a: u64) -> Vec<&'static PublishedClass> {
    PUBLISHED.iter().filter(|c| c.a == a).collect()
}

fn published_sedf(c: &PublishedClass) -> Sedf {
    Sedf::new(
        c.a * c.a + 1,
        c.set_a.iter().copied(),
        c.set_b.iter().copied(),
    )
    .unwrap()
}

/// Enumeration reports are shared across tests to avoid recomputing a = 12.
fn cached_report(a: u64) -> Arc<EnumerationReport> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Arc<EnumerationReport>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(a)
        .or_insert_with(|| Arc::new(enumerate_sedfs(a, 0)))
        .clone()
}

/// Criterion 1: enumeration counts and exact canonical forms match the
/// published classification for a <= 12.
#[test]
fn enumeration_matches_published_classification() {
    assert_eq!(
        cached_report(1).canonical_sedfs(),
        vec![&Sedf::new(2, [0], [1]).unwrap()]
    );
    assert_eq!(
        cached_report(2).canonical_sedfs(),
        vec![&Sedf::new(5, [0, 1], [2, 4]).unwrap()]
    );
    for a in 3..=12 {
        let expected: Vec<Sedf> = published_for(a).iter().map(|c| published_sedf(c)).collect();
        let report = cached_report(a);
        assert_eq!(
            report.classes.len(),
            expected.len(),
            "class count mismatch at a = {a}"
        );
        for (class, want) in report.classes.iter().zip(&expected) {
            assert_eq!(&class.canonical, want, "canonical mismatch at a = {a}");
            // the recorded witness really carries the symmetric rep there
            assert_eq!(class.witness.apply(&class.symmetric).unwrap(), class.canonical);
            assert!(class.symmetric.is_valid());
            assert!(class.symmetric.set_a().is_symmetric());
            assert!(class.symmetric.set_b().is_symmetric());
        }
    }
    println!("PASS: enumeration counts and canonical forms match the published classification (a <= 12)");
}

/// Criterion 2 (long run, flagged): the a = 13 and a = 14 classifications.
#[test]
#[ignore = "long run: takes hours; run with --ignored"]
fn enumeration_matches_published_classification_long() {
    for a in [13, 14] {
        let expected: Vec<Sedf> = published_for(a).iter().map(|c| published_sedf(c)).collect();
        let report = cached_report(a);
        assert_eq!(report.classes.len(), expected.len());
        for (class, want) in report.classes.iter().zip(&expected) {
            assert_eq!(&class.canonical, want, "canonical mismatch at a = {a}");
        }
        for c in published_for(a) {
            let steps = parse_sequence(c.sequence).unwrap();
            let (canon, _) = Valuation::compose(&steps)
                .to_sedf()
                .unwrap()
                .canonical_form();
            assert_eq!(canon, published_sedf(c));
        }
    }
    println!("PASS: long-run classification matches for a = 13, 14");
}

/// Exhaustive sweep over all disjoint a-subset pairs of Z_{a^2+1}, with no
/// symmetry or normalization assumptions, canonicalized and deduplicated.
fn brute_force_canonicals(a: u64) -> Vec<Sedf> {
    let v = a * a + 1;
    let k = a as usize;
    let mut out = std::collections::BTreeSet::new();
    let mut a_set = vec![0u64; k];
    let mut idx: Vec<u64> = (0..a).collect();
    loop {
        a_set.copy_from_slice(&idx);
        let mut used = vec![false; v as usize];
        let mut b = Vec::with_capacity(k);
        extend_mates(v, &a_set, 0, &mut b, &mut used, &mut out);
        // advance the A combination
        let mut j = k;
        loop {
            if j == 0 {
                return out.into_iter().collect();
            }
            j -= 1;
            if idx[j] != v - a + j as u64 {
                break;
            }
            if j == 0 {
                return out.into_iter().collect();
            }
        }
        idx[j] += 1;
        for l in j + 1..k {
            idx[l] = idx[l - 1] + 1;
        }
    }
}

fn extend_mates(
    v: u64,
    a_set: &[u64],
    start: u64,
    b: &mut Vec<u64>,
    used: &mut [bool],
    out: &mut std::collections::BTreeSet<Sedf>,
) {
    if b.len() == a_set.len() {
        // |B - A| = a^2 = v - 1 distinct nonzero differences: a valid pair
        let s = Sedf::new(v, a_set.iter().copied(), b.iter().copied()).unwrap();
        debug_assert!(s.is_valid());
        out.insert(s.canonical_form().0);
        return;
    }
    'next: for y in start..v {
        let mut marked = Vec::with_capacity(a_set.len());
        for &x in a_set {
            let d = ((y + v) - x) % v;
            if d == 0 || used[d as usize] {
                for &m in &marked {
                    used[m as usize] = false;
                }
                continue 'next;
            }
            used[d as usize] = true;
            marked.push(d);
        }
        b.push(y);
        extend_mates(v, a_set, y + 1, b, used, out);
        b.pop();
        for &m in &marked {
            used[m as usize] = false;
        }
    }
}

/// Criterion 3: for a <= 5 the pipeline equals a brute-force sweep that
/// makes no symmetry assumptions.
#[test]
fn brute_force_oracle_agreement() {
    for a in 1..=5 {
        let oracle = brute_force_canonicals(a);
        let report = cached_report(a);
        let pipeline: Vec<Sedf> = report.classes.iter().map(|c| c.canonical.clone()).collect();
        assert_eq!(pipeline, oracle, "oracle mismatch at a = {a}");
    }
    println!("PASS: brute-force oracle agrees with the pipeline for a = 1..=5");
}

/// Criterion 4: every class at a <= 12 is realized by some blowup sequence,
/// and the frozen per-row sequences reproduce their rows exactly.
#[test]
fn blowup_sequences_cover_all_classes() {
    for a in 1..=12 {
        let report = cached_report(a);
        let coverage = alpha_coverage(&report);
        for (canonical, steps) in &coverage {
            assert!(
                steps.is_some(),
                "no blowup sequence found for ({canonical}) at a = {a}"
            );
        }
    }
    for c in PUBLISHED.iter().filter(|c| c.a <= 12) {
        let steps = parse_sequence(c.sequence).unwrap();
        let (canon, _) = Valuation::compose(&steps)
            .to_sedf()
            .unwrap()
            .canonical_form();
        assert_eq!(
            canon,
            published_sedf(c),
            "sequence {} does not reproduce its class",
            c.sequence
        );
    }
    println!("PASS: blowup sequences cover every class for a <= 12 and reproduce each frozen row");
}

/// Criterion 5: the two worked incidence matrices and their exact-cover
/// solutions, entry for entry.
#[test]
fn worked_matrices_reproduced() {
    // a = 4, A = {P_1, P_3}: rows P_1..P_8, columns P_2,P_4,P_5,P_6,P_7,P_8
    let m4 = build_matrix(&[1, 3], 4);
    assert_eq!(m4.rows(), (1..=8).collect::<Vec<_>>());
    assert_eq!(m4.cols(), &[2, 4, 5, 6, 7, 8]);
    let expected4: [[u8; 6]; 8] = [
        [2, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [1, 1, 0, 1, 0, 0],
        [0, 0, 1, 0, 1, 0],
        [1, 1, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1],
        [0, 1, 0, 1, 1, 1],
        [0, 0, 1, 1, 1, 1],
    ];
    for (i, row) in expected4.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            assert_eq!(m4.entry(i, j), e, "a=4 matrix mismatch at ({i},{j})");
        }
    }
    // U = (0,1,1,0,0,0): select columns P_4 and P_5
    assert_eq!(solve_exact_cover(&m4), vec![vec![4, 5]]);

    // a = 3, A = {P_0, P_1}: rows P_1..P_5, columns P_2..P_5
    let m3 = build_matrix(&[0, 1], 3);
    assert_eq!(m3.rows(), &[1, 2, 3, 4, 5]);
    assert_eq!(m3.cols(), &[2, 3, 4, 5]);
    let expected3: [[u8; 4]; 5] = [
        [1, 0, 0, 0],
        [1, 1, 0, 0],
        [1, 1, 1, 0],
        [0, 1, 1, 1],
        [0, 0, 1, 1],
    ];
    for (i, row) in expected3.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            assert_eq!(m3.entry(i, j), e, "a=3 matrix mismatch at ({i},{j})");
        }
    }
    // U = (0,0,0,1,1): select columns P_2 and P_5
    assert_eq!(solve_exact_cover(&m3), vec![vec![2, 5]]);
    println!("PASS: worked incidence matrices and exact-cover solutions reproduced");
}

/// Criterion 6: the published affine witnesses validate.
#[test]
fn published_affine_witnesses_validate() {
    // 6X+11 carries the symmetric form of class 4.2 to its canonical form
    let sym = Sedf::new(17, [1, 4, 13, 16], [2, 8, 9, 15]).unwrap();
    let map = AffineMap::new(6, 11, 17).unwrap();
    assert_eq!(
        map.apply_set(sym.set_a()).unwrap(),
        ResidueSet::new(17, [0, 1, 4, 5]).unwrap()
    );
    assert_eq!(
        map.apply_set(sym.set_b()).unwrap(),
        ResidueSet::new(17, [6, 8, 14, 16]).unwrap()
    );

    // 9X maps {0,2,4,6} to {0,1,2,3} in Z_17
    let nine_x = AffineMap::new(9, 0, 17).unwrap();
    assert_eq!(
        nine_x
            .apply_set(&ResidueSet::new(17, [0, 2, 4, 6]).unwrap())
            .unwrap(),
        ResidueSet::new(17, [0, 1, 2, 3]).unwrap()
    );

    // 6X+2 carries the (2,3,3,2) composition to the (3,2,2,3) one in Z_37
    let s2332 = Sedf::new(37, [0, 1, 6, 7, 12, 13], [14, 16, 18, 32, 34, 36]).unwrap();
    let s3223 = Sedf::new(37, [0, 1, 2, 6, 7, 8], [9, 12, 21, 24, 33, 36]).unwrap();
    let map37 = AffineMap::new(6, 2, 37).unwrap();
    assert_eq!(map37.apply_set(s2332.set_a()).unwrap(), *s3223.set_a());
    assert_eq!(map37.apply_set(s2332.set_b()).unwrap(), *s3223.set_b());

    // translation by 7 symmetrizes ({0,1,2,3},{4,8,12,16})
    let rosa = Sedf::new(17, [0, 1, 2, 3], [4, 8, 12, 16]).unwrap();
    let (sym_rosa, g) = rosa.symmetrize().unwrap();
    assert_eq!(g, 7);
    assert!(sym_rosa.set_a().is_symmetric() && sym_rosa.set_b().is_symmetric());
    assert_eq!(*sym_rosa.set_a(), ResidueSet::new(17, [7, 8, 9, 10]).unwrap());
    println!("PASS: published affine witnesses validate");
}

fn runner() -> proptest::test_runner::TestRunner {
    proptest::test_runner::TestRunner::new(proptest::test_runner::Config {
        cases: 10_000,
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    })
}

fn alternating_steps(
    first_kind: BlowupKind,
    ells: &[u64],
) -> Vec<sedf_tools::valuation::BlowupStep> {
    use sedf_tools::valuation::BlowupStep;
    ells.iter()
        .enumerate()
        .map(|(i, &ell)| {
            let kind = match (first_kind, i % 2) {
                (BlowupKind::I, 0) | (BlowupKind::II, 1) => BlowupKind::I,
                _ => BlowupKind::II,
            };
            BlowupStep::new(kind, ell).unwrap()
        })
        .collect()
}

/// Criterion 7: randomized property suites, 10^4 cases each.
#[test]
fn randomized_property_suites() {
    use proptest::prelude::*;
    use sedf_tools::valuation::{BlowupStep, StructureReport};

    let alt_strategy = (any::<bool>(), proptest::collection::vec(2u64..=4, 0..=5));

    // compose/decompose round trip: strictly alternating sequences decompose
    // back to themselves, and the rebuilt valuation is identical
    runner()
        .run(&alt_strategy, |(start_ii, ells)| {
            let kind = if start_ii { BlowupKind::II } else { BlowupKind::I };
            let steps = alternating_steps(kind, &ells);
            let v = Valuation::compose(&steps);
            let decomposed = v.decompose().unwrap();
            prop_assert_eq!(&decomposed, &steps);
            prop_assert_eq!(Valuation::compose(&decomposed), v);
            Ok(())
        })
        .unwrap();

    // arbitrary (not necessarily alternating) sequences still yield valid
    // valuations whose decomposition rebuilds the same valuation, with the
    // type I factor product equal to a and the type II product equal to b
    let any_steps = proptest::collection::vec((any::<bool>(), 2u64..=4), 0..=5);
    runner()
        .run(&any_steps, |raw| {
            let steps: Vec<BlowupStep> = raw
                .iter()
                .map(|&(is_ii, ell)| {
                    let kind = if is_ii { BlowupKind::II } else { BlowupKind::I };
                    BlowupStep::new(kind, ell).unwrap()
                })
                .collect();
            let v = Valuation::compose(&steps);
            // no repeated or missing difference, ever
            prop_assert!(v.is_valid());
            let prod = |k: BlowupKind| -> u64 {
                steps
                    .iter()
                    .filter(|s| s.kind() == k)
                    .map(|s| s.ell())
                    .product()
            };
            prop_assert_eq!(v.a(), prod(BlowupKind::I));
            prop_assert_eq!(v.b(), prod(BlowupKind::II));
            prop_assert_eq!(Valuation::compose(&v.decompose().unwrap()), v);
            Ok(())
        })
        .unwrap();

    // phi is an involution and exchanges the two structural types,
    // preserving the run length
    runner()
        .run(&alt_strategy, |(start_ii, ells)| {
            let kind = if start_ii { BlowupKind::II } else { BlowupKind::I };
            let v = Valuation::compose(&alternating_steps(kind, &ells));
            let p = v.phi();
            prop_assert_eq!(p.phi(), v.clone());
            let (s, sp) = (v.detect_structure().unwrap(), p.detect_structure().unwrap());
            match (s, sp) {
                (StructureReport::Trivial, StructureReport::Trivial) => {}
                (StructureReport::TypeI { ell: x }, StructureReport::TypeII { ell: y })
                | (StructureReport::TypeII { ell: x }, StructureReport::TypeI { ell: y }) => {
                    prop_assert_eq!(x, y)
                }
                other => prop_assert!(false, "phi broke the type exchange: {:?}", other),
            }
            Ok(())
        })
        .unwrap();

    // blowup followed by projection of the same kind is the identity
    let blowup_strategy = (alt_strategy.clone(), any::<bool>(), 2u64..=4);
    runner()
        .run(&blowup_strategy, |((start_ii, ells), step_ii, ell)| {
            let kind = if start_ii { BlowupKind::II } else { BlowupKind::I };
            let base = Valuation::compose(&alternating_steps(kind, &ells));
            let step_kind = if step_ii { BlowupKind::II } else { BlowupKind::I };
            let step = BlowupStep::new(step_kind, ell).unwrap();
            let blown = base.blowup(step);
            prop_assert!(blown.is_valid());
            let (back, got_ell) = blown.project(step_kind).unwrap();
            // consecutive same-kind blowups merge, so projection may return
            // the combined factor; it always lands back on a valuation that
            // reproduces the blown-up one
            prop_assert!(got_ell % ell == 0);
            prop_assert_eq!(
                back.blowup(BlowupStep::new(step_kind, got_ell).unwrap()),
                blown.clone()
            );
            if base.detect_structure().unwrap()
                != match step_kind {
                    BlowupKind::I => StructureReport::TypeI { ell: got_ell },
                    BlowupKind::II => StructureReport::TypeII { ell: got_ell },
                }
            {
                // no merge happened: exact round trip
                if got_ell == ell {
                    prop_assert_eq!(back, base);
                }
            }
            Ok(())
        })
        .unwrap();

    // canonical_form is invariant under random affine maps and side swaps
    let class_pool: Vec<Sedf> = (1..=5)
        .flat_map(|a| {
            cached_report(a)
                .classes
                .iter()
                .map(|c| c.canonical.clone())
                .collect::<Vec<_>>()
        })
        .collect();
    let pool_len = class_pool.len();
    let invariance = (0..pool_len, any::<u64>(), any::<u64>(), any::<bool>());
    runner()
        .run(&invariance, |(idx, alpha_seed, beta_seed, swap)| {
            let base = &class_pool[idx];
            let n = base.modulus();
            let unit_list = sedf_tools::zmod::units(n);
            let alpha = unit_list[(alpha_seed % unit_list.len() as u64) as usize];
            let beta = beta_seed % n;
            let map = AffineMap::new(alpha, beta, n).unwrap();
            let moved = Sedf::from_sets(
                map.apply_set(base.set_a()).unwrap(),
                map.apply_set(base.set_b()).unwrap(),
            )
            .unwrap();
            let moved = if swap {
                Sedf::from_sets(moved.set_b().clone(), moved.set_a().clone()).unwrap()
            } else {
                moved
            };
            let (canon, witness) = moved.canonical_form();
            prop_assert_eq!(&canon, base);
            prop_assert_eq!(witness.apply(&moved).unwrap(), canon);
            Ok(())
        })
        .unwrap();

    println!("PASS: randomized property suites (10^4 cases each)");
}

/// Criterion 8: dihedral constructions verify across the sweep, and the two
/// D_13 constructions are equivalent via h = ab^2.
#[test]
fn dihedral_constructions_and_equivalence() {
    // the tile construction verifies for every k | 2n-1 with n <= 61
    for n in 1..=61u64 {
        let m = 2 * n - 1;
        for k in 1..=m {
            if m % k != 0 {
                continue;
            }
            let pair = cghk_construction(n, k).unwrap();
            assert!(
                verify_near_factorization(&pair).is_valid(),
                "tile construction failed at n = {n}, k = {k}"
            );
        }
    }
    // the SEDF construction and its witness succeed for odd k in 3..=13
    for k in (3..=13u64).step_by(2) {
        let sedf = hjn_construction(k).unwrap();
        assert!(verify_near_factorization(&sedf.to_near_factorization()).is_valid());
        let transcript = equivalence_witness(k).unwrap();
        assert_eq!(transcript.h, DihedralElement::reflection((k - 1) / 2));
    }
    // the two D_13 constructions are equivalent, witness h = ab^2
    let w5 = equivalence_witness(5).unwrap();
    assert_eq!(w5.h, DihedralElement::parse("ab^2").unwrap());
    let tile = cghk_construction(13, 5).unwrap();
    let nf = hjn_construction(5).unwrap().to_near_factorization();
    assert!(near_factorizations_equivalent(&tile, &nf).is_some());
    println!("PASS: dihedral constructions verify and the D_13 pair is equivalent via h = ab^2");
}
