mod common;

use std::collections::HashSet;

use common::*;
use qsync::cyclic::search_pairs;
use qsync::family::{
    admissible_specs, build_code, build_code_with, build_initial, gauge_fix, CodeSpec, DistanceMode, Family, GaugeFix,
    InitialCode,
};
use qsync::gf2::BitVector;
use qsync::pairing::build_pairing_basis;
use qsync::pauli::PhaseMode;

fn bits_of(len: usize, value: u64) -> BitVector {
    BitVector::from_raw(len, value as u128).unwrap()
}

#[test]
fn hamming_q2_parameters() {
    let (pair, basis) = hamming_pair();
    let spec = CodeSpec::new(Family::Q2).with_shift(1, 1);
    let inst = build_code_with(&pair, &basis, &spec, DistanceMode::Skip).unwrap();
    assert_eq!(inst.params.to_string(), "((9,1,3,·))");
    // Z(p~) rows plus the two ancilla rows; q~ is empty
    assert_eq!(inst.groups.stabilizers.len(), 5);
    assert_eq!(inst.groups.num_qubits, 9);
    assert_eq!(inst.params.m, 0);
}

#[test]
fn hamming_q1_parameters() {
    let (pair, basis) = hamming_pair();
    let inst = build_code_with(&pair, &basis, &CodeSpec::new(Family::Q1), DistanceMode::Skip).unwrap();
    assert_eq!(inst.params.to_string(), "((7,1,6,·))");
    assert_eq!(inst.params.r, 2 * pair.gap());
}

#[test]
fn zero_message_q5_has_positive_phases() {
    let (pair, basis) = hamming_pair();
    let inst = build_code_with(&pair, &basis, &CodeSpec::new(Family::Q5), DistanceMode::Skip).unwrap();
    assert!(inst.groups.stabilizers.iter().all(|s| s.phase() == 0));
    let q03 = build_initial(&pair, &basis, InitialCode::XzFixed, DistanceMode::Skip).unwrap();
    assert!(inst.groups.inner_stabilizer().equals(&q03.groups.inner_stabilizer(), PhaseMode::Exact));
}

#[test]
fn gauge_fixing_chain_matches_direct_builds() {
    for (pair, basis) in [hamming_pair(), distance_three_pair()] {
        let build = |which| build_initial(&pair, &basis, which, DistanceMode::Skip).unwrap();
        let (q01, q02, q03) = (build(InitialCode::Subsystem), build(InitialCode::ZFixed), build(InitialCode::XzFixed));
        for (from, fix, to) in [(&q01, GaugeFix::ZTtilde, &q02), (&q02, GaugeFix::XTtilde, &q03)] {
            let fixed = gauge_fix(from, fix).unwrap();
            assert!(fixed.groups.inner_stabilizer().equals(&to.groups.inner_stabilizer(), PhaseMode::Exact));
            assert!(fixed.groups.inner_gauge().equals(&to.groups.inner_gauge(), PhaseMode::Ignore));
            assert_eq!(fixed.kind, to.kind);
        }
    }
}

#[test]
fn hybrid_gauge_fixing_matches_direct_builds() {
    let (pair, basis) = hamming_pair();
    let c = bits_of(3, 0b101);
    let q7 = build_code_with(&pair, &basis, &CodeSpec::new(Family::Q7).with_c(c), DistanceMode::Skip).unwrap();
    let q5 = build_code_with(&pair, &basis, &CodeSpec::new(Family::Q5).with_c(c), DistanceMode::Skip).unwrap();
    let fixed = gauge_fix(&q7, GaugeFix::XPtildeExtended).unwrap();
    assert_eq!(fixed.family(), Some(Family::Q5));
    assert!(fixed.groups.inner_stabilizer().equals(&q5.groups.inner_stabilizer(), PhaseMode::Exact));
    assert!(fixed.groups.outer_stabilizer().equals(&q5.groups.outer_stabilizer(), PhaseMode::Ignore));

    let spec = CodeSpec::new(Family::Q6).with_y(1).with_c(bits_of(1, 1)).with_shift(1, 0);
    let q6 = build_code_with(&pair, &basis, &spec, DistanceMode::Skip).unwrap();
    let spec4 = CodeSpec { family: Family::Q4, ..spec };
    let q4 = build_code_with(&pair, &basis, &spec4, DistanceMode::Skip).unwrap();
    let fixed = gauge_fix(&q6, GaugeFix::XPtildeExtended).unwrap();
    assert_eq!(fixed.family(), Some(Family::Q4));
    assert!(fixed.groups.inner_stabilizer().equals(&q4.groups.inner_stabilizer(), PhaseMode::Exact));
    assert!(fixed.groups.outer_stabilizer().equals(&q4.groups.outer_stabilizer(), PhaseMode::Ignore));
}

#[test]
fn fixing_twice_is_an_error() {
    let (pair, basis) = hamming_pair();
    let q02 = build_initial(&pair, &basis, InitialCode::ZFixed, DistanceMode::Skip).unwrap();
    assert!(gauge_fix(&q02, GaugeFix::ZTtilde).is_err());
    let q2 = build_code_with(&pair, &basis, &CodeSpec::new(Family::Q2), DistanceMode::Skip).unwrap();
    assert!(gauge_fix(&q2, GaugeFix::XPtildeExtended).is_err());
}

#[test]
fn unshifted_view_is_verbatim() {
    let (pair, basis) = hamming_pair();
    for family in Family::ALL {
        for spec in admissible_specs(&pair, family) {
            let inst = build_code_with(&pair, &basis, &spec, DistanceMode::Skip).unwrap();
            let view = inst.shifted_generator_view(0).unwrap();
            assert_eq!(view.stabilizers, inst.groups.stabilizers);
            assert_eq!(view.gauge, inst.groups.gauge);
        }
    }
}

#[test]
fn shifted_q3_phases() {
    let (pair, basis) = hamming_pair();
    let spec = CodeSpec::new(Family::Q3).with_shift(1, 1);
    let inst = build_code_with(&pair, &basis, &spec, DistanceMode::Skip).unwrap();
    let view = inst.shifted_generator_view(1).unwrap();
    let q1 = bits(&basis.rows.d_extra[0]);
    let shifted = naive_shift(&q1, -1);
    let z_rows: Vec<_> = view.stabilizers.iter().filter(|s| s.x().is_zero() && s.z().len() == 9).collect();
    let p_tilde = &basis.rows.c_dual_extra;
    for p in p_tilde {
        let row = inst.extension.z_row(p, 1).unwrap();
        let op = z_rows.iter().find(|s| s.z() == row).expect("Z(p~) row in view");
        assert_eq!(op.phase(), 2 * dot(&bits(p), &shifted));
    }
    // the shift flips at least one sign, so this is not a trivial check
    assert!(p_tilde.iter().any(|p| dot(&bits(p), &shifted) != dot(&bits(p), &q1)));
}

#[test]
fn shifted_stabilizers_agree_for_every_alpha() {
    let (pair, basis) = hamming_pair();
    for family in [Family::Q2, Family::Q3, Family::Q4, Family::Q6] {
        for spec in admissible_specs(&pair, family) {
            let inst = build_code_with(&pair, &basis, &spec, DistanceMode::Skip).unwrap();
            for alpha in -(spec.a_l as i32)..=spec.a_r as i32 {
                let (stab, _, modulo) = inst.shift_equivalence(alpha).unwrap();
                assert!(stab && modulo, "{family} {spec:?} alpha {alpha}");
            }
            assert!(inst.shifted_generator_view(spec.a_r as i32 + 1).is_err());
        }
    }
}

#[test]
fn tradeoff_examples() {
    let (pair, basis) = hamming_pair();
    let q2 = build_code_with(&pair, &basis, &CodeSpec::new(Family::Q2).with_shift(1, 1), DistanceMode::Skip).unwrap();
    assert_eq!((q2.params.r, q2.params.m, q2.params.d_sync_max), (3, 0, 3));
    let q1 = build_code_with(&pair, &basis, &CodeSpec::new(Family::Q1), DistanceMode::Skip).unwrap();
    assert_eq!((q1.params.r, q1.params.m, q1.params.d_sync_max), (6, 0, 1));
    let q6 = build_code_with(&pair, &basis, &CodeSpec::new(Family::Q6).with_y(1), DistanceMode::Skip).unwrap();
    assert_eq!((q6.params.r, q6.params.m, q6.params.d_sync_max), (3, 1, 2));
    assert!(q1.tradeoff_check() && q2.tradeoff_check() && q6.tradeoff_check());
}

#[test]
fn spec_rejections() {
    let (pair, basis) = hamming_pair();
    let q6 = CodeSpec::new(Family::Q6).with_y(pair.gap() - 1);
    let err = build_code(&pair, &basis, &q6).unwrap_err().to_string();
    assert!(err.contains("Q7"), "{err}");
    assert!(build_code(&pair, &basis, &CodeSpec::new(Family::Q2).with_shift(2, 1)).is_err());
    assert!(build_code(&pair, &basis, &CodeSpec::new(Family::Q1).with_shift(0, 1)).is_err());
    assert!(build_code(&pair, &basis, &CodeSpec::new(Family::Q3).with_b(bits_of(2, 1))).is_err());
    assert!(build_code(&pair, &basis, &CodeSpec::new(Family::Q2).with_y(1)).is_err());
}

#[test]
fn every_family_satisfies_structure_and_tradeoff() {
    for n in [7usize, 15, 21] {
        for pair in search_pairs(n).unwrap().into_iter().take(4) {
            let basis = build_pairing_basis(&pair).unwrap();
            for family in Family::ALL {
                for spec in admissible_specs(&pair, family) {
                    let inst = build_code_with(&pair, &basis, &spec, DistanceMode::Skip).unwrap();
                    let failed: Vec<_> = inst.groups.structure_checks().into_iter().filter(|(_, ok)| !ok).collect();
                    assert!(failed.is_empty(), "n={n} {spec:?}: {failed:?}");
                    assert!(inst.tradeoff_check(), "n={n} {spec:?}");
                    assert!(inst.parameters_match_prediction(), "n={n} {spec:?} {}", inst.params);
                }
            }
        }
    }
}

#[test]
fn distinct_messages_give_distinct_phases() {
    let (pair, basis) = hamming_pair();
    let gap = pair.gap();
    for family in [Family::Q3, Family::Q5, Family::Q7, Family::Q4, Family::Q6] {
        let y = if family.uses_y() { 1 } else { 0 };
        let (lb, lc) = (family.b_len(gap), family.c_len(gap, y));
        let mut seen = HashSet::new();
        for b in 0..1u64 << lb {
            for c in 0..1u64 << lc {
                let spec = CodeSpec::new(family).with_y(y).with_b(bits_of(lb, b)).with_c(bits_of(lc, c));
                let inst = build_code_with(&pair, &basis, &spec, DistanceMode::Skip).unwrap();
                assert!(seen.insert(inst.groups.phase_signature()), "{family} b={b} c={c}");
            }
        }
        assert_eq!(seen.len(), 1 << (lb + lc));
    }
}

/// Distance by scanning every Pauli on n qubits: commutes with every
/// stabilizer element that commutes with all translations, and lies outside
/// the span of stabilizers and gauge (rank test).
fn brute_distance(n: usize, stabs: &[Vec<u8>], gauge: &[Vec<u8>], translations: &[Vec<u8>]) -> Option<u32> {
    let symp = |a: &[u8], b: &[u8]| dot(&a[..n], &b[n..]) ^ dot(&a[n..], &b[..n]);
    let outer: Vec<Vec<u8>> =
        codewords(stabs, 2 * n).into_iter().filter(|s| translations.iter().all(|t| symp(s, t) == 0)).collect();
    let all = [stabs, gauge].concat();
    let base = naive_rank(&all);
    let mut best = None;
    for x in 0u32..1 << n {
        for z in 0u32..1 << n {
            let row: Vec<u8> = (0..n).map(|i| (x >> i & 1) as u8).chain((0..n).map(|i| (z >> i & 1) as u8)).collect();
            if outer.iter().any(|s| symp(s, &row) == 1) {
                continue;
            }
            if naive_rank(&[all.as_slice(), std::slice::from_ref(&row)].concat()) == base {
                continue;
            }
            let w = (0..n).filter(|&i| row[i] == 1 || row[n + i] == 1).count() as u32;
            best = Some(best.map_or(w, |b: u32| b.min(w)));
        }
    }
    best
}

#[test]
fn small_distances_match_exhaustive_oracle() {
    let (pair, basis) = hamming_pair();
    let row = |op: &qsync::pauli::PauliOperator| [bits(&op.x()), bits(&op.z())].concat();
    for family in [Family::Q1, Family::Q5, Family::Q7] {
        let inst = build_code(&pair, &basis, &CodeSpec::new(family)).unwrap();
        assert!(!inst.params.d_claimed);
        let g = &inst.groups;
        let rows = |ops: &[qsync::pauli::PauliOperator]| ops.iter().map(row).collect::<Vec<_>>();
        let oracle = brute_distance(7, &rows(&g.stabilizers), &rows(&g.gauge), &rows(&g.translations));
        assert_eq!(inst.params.d, oracle, "{family}");
    }
}
