mod common;

use common::*;
use proptest::prelude::*;
use qsync::channel::{build_sync_table, Decoder, FrameState, SyncVariant};
use qsync::family::{admissible_specs, build_code_with, DistanceMode, Family};
use qsync::gf2::{BinaryPolynomial, BitVector};
use qsync::pauli::{PauliGroupSpan, PauliOperator, PhaseMode};

fn polynomial(max_deg: u32) -> impl Strategy<Value = BinaryPolynomial> {
    any::<u64>().prop_map(move |v| BinaryPolynomial::from_coeffs((v as u128) & ((1u128 << (max_deg + 1)) - 1)))
}

fn bitvec(n: usize) -> impl Strategy<Value = BitVector> {
    any::<u64>().prop_map(move |v| BitVector::from_raw(n, (v as u128) & ((1u128 << n) - 1)).unwrap())
}

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (bitvec(n), bitvec(n), 0u8..4).prop_map(|(x, z, p)| PauliOperator::new(x, z, p).unwrap())
}

proptest! {
    #[test]
    fn mul_mod_matches_schoolbook(a in polynomial(40), b in polynomial(40), n in 1usize..=64) {
        let got = a.mul_mod(&b, n).unwrap();
        let expect = naive_mod_cyclic(&naive_mul(&coeffs(&a), &coeffs(&b)), n);
        prop_assert_eq!(coeffs(&got), expect);
    }

    #[test]
    fn divmod_matches_long_division(a in polynomial(60), b in polynomial(30)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        let (eq, er) = naive_divmod(&coeffs(&a), &coeffs(&b));
        prop_assert_eq!(coeffs(&q), eq);
        prop_assert_eq!(coeffs(&r), er);
        prop_assert_eq!(q * b + r, a);
    }

    #[test]
    fn reverse_is_an_involution(a in polynomial(20), extra in 0u32..10) {
        let d = a.degree().finite().unwrap_or(0) + extra;
        let r = a.reverse_coefficients(d).unwrap();
        prop_assert_eq!(r.reverse_coefficients(d).unwrap(), a);
    }

    #[test]
    fn shifts_compose(v in bitvec(21), a in -30i64..30, b in -30i64..30) {
        prop_assert_eq!(v.cyclic_shift(a).cyclic_shift(b), v.cyclic_shift(a + b));
        prop_assert_eq!(bits(&v.cyclic_shift(a)), naive_shift(&bits(&v), a));
        prop_assert_eq!(v.cyclic_shift(21), v);
    }

    #[test]
    fn shift_is_multiplication_by_x(v in bitvec(15), a in 0i64..15) {
        let xa = BinaryPolynomial::from_coeffs(1u128 << a);
        let p = BinaryPolynomial::devectorize(&v).mul_mod(&xa, 15).unwrap();
        prop_assert_eq!(p.vectorize(15).unwrap(), v.cyclic_shift(a));
    }

    #[test]
    fn symplectic_form_is_symmetric_and_alternating(a in pauli(6), b in pauli(6)) {
        prop_assert_eq!(a.symplectic(&b), b.symplectic(&a));
        prop_assert_eq!(a.symplectic(&a), 0);
        // commuting operators give the same product in either order
        let (ab, ba) = (a.mul(&b), b.mul(&a));
        prop_assert_eq!(ab.x(), ba.x());
        prop_assert_eq!(ab.phase() == ba.phase(), a.commutes_with(&b));
    }

    #[test]
    fn products_match_dense_matrices(a in pauli(3), b in pauli(3)) {
        let dense = matmul(&pauli_matrix(&a), &pauli_matrix(&b));
        prop_assert!(approx_eq(&dense, &pauli_matrix(&a.mul(&b))));
    }

    #[test]
    fn centralizer_commutes_with_generators(gens in prop::collection::vec(pauli(5), 0..5)) {
        let g = PauliGroupSpan::new(5, gens.clone()).unwrap();
        let c = g.centralizer();
        for x in c.generators() {
            prop_assert!(gens.iter().all(|y| y.commutes_with(x)));
        }
        // dimension count: rank G + rank C(G) = 2n + dim(G ∩ C(G)) is bounded by 2n + rank G
        prop_assert!(c.rank() >= 10 - g.rank());
    }

    #[test]
    fn span_membership_is_closed_under_products(gens in prop::collection::vec(pauli(4), 1..5), mask in any::<u8>()) {
        let g = PauliGroupSpan::new(4, gens.clone()).unwrap();
        let prod = gens.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1)
            .fold(PauliOperator::identity(4), |acc, (_, p)| acc.mul(p));
        prop_assert!(g.contains(&prod, PhaseMode::Ignore));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tradeoff_holds_for_random_specs(family_idx in 0usize..7, pick in any::<usize>(), pair_idx in any::<usize>()) {
        let pairs = qsync::cyclic::search_pairs(21).unwrap();
        let pair = &pairs[pair_idx % pairs.len()];
        let basis = qsync::pairing::build_pairing_basis(pair).unwrap();
        let family = Family::ALL[family_idx];
        let specs = admissible_specs(pair, family);
        prop_assume!(!specs.is_empty());
        let spec = &specs[pick % specs.len()];
        let inst = build_code_with(pair, &basis, spec, DistanceMode::Skip).unwrap();
        prop_assert!(inst.tradeoff_check());
        prop_assert!(inst.parameters_match_prediction());
        if matches!(family, Family::Q2 | Family::Q3) {
            prop_assert!(build_sync_table(&inst, SyncVariant::A).unwrap().is_injective());
        }
        if family.uses_y() {
            prop_assert!(build_sync_table(&inst, SyncVariant::C).unwrap().is_injective());
        }
    }

    #[test]
    fn clean_frames_decode_at_every_shift(pick in any::<usize>(), alpha_pick in any::<usize>(), b in any::<u64>()) {
        let (pair, basis) = distance_three_pair();
        let specs = admissible_specs(&pair, Family::Q3);
        let spec = specs[pick % specs.len()].clone();
        let gap = pair.gap();
        let spec = spec.with_b(BitVector::from_raw(gap, (b as u128) & ((1 << gap) - 1)).unwrap());
        let inst = build_code_with(&pair, &basis, &spec, DistanceMode::Skip).unwrap();
        let width = spec.a_l + spec.a_r + 1;
        let alpha = (alpha_pick % width) as i32 - spec.a_l as i32;
        let total = inst.extension.total();
        let frame = FrameState::new(&inst, alpha, BitVector::zeros(total), BitVector::zeros(total)).unwrap();
        let r = Decoder::new(&inst).unwrap().decode(&frame).unwrap();
        prop_assert!(r.success());
        prop_assert_eq!(r.recovered_alpha, Some(alpha));
    }
}
