mod common;

use common::*;
use qsync::gf2::{BinaryPolynomial, BitVector};
use qsync::Error;

#[test]
fn hamming_generator_times_check_vanishes_mod_x7() {
    let a = poly("1+x+x^3");
    let b = poly("1+x+x^2+x^4");
    let oracle = naive_mod_cyclic(&naive_mul(&coeffs(&a), &coeffs(&b)), 7);
    assert!(oracle.is_empty());
    assert!(a.mul_mod(&b, 7).unwrap().is_zero());
}

#[test]
fn mul_mod_matches_folding_oracle() {
    let x = poly("x");
    let a = poly("1+x^6");
    let oracle = naive_mod_cyclic(&naive_mul(&coeffs(&x), &coeffs(&a)), 7);
    assert_eq!(oracle, vec![1, 1]);
    assert_eq!(x.mul_mod(&a, 7).unwrap(), poly("1+x"));
    let one = poly("1");
    assert_eq!(one.mul_mod(&a, 7).unwrap(), a);
}

#[test]
fn divmod_of_x7_plus_1() {
    let (q_oracle, r_oracle) = naive_divmod(&cyclic_modulus(7), &coeffs(&poly("1+x+x^3")));
    assert!(r_oracle.is_empty());
    assert_eq!(naive_mul(&q_oracle, &coeffs(&poly("1+x+x^3"))), cyclic_modulus(7));
    let (q, r) = BinaryPolynomial::cyclic_modulus(7).unwrap().divmod(&poly("1+x+x^3")).unwrap();
    assert_eq!(coeffs(&q), q_oracle);
    assert_eq!(q, poly("1+x+x^2+x^4"));
    assert!(r.is_zero());
}

#[test]
fn divmod_trivial_cases() {
    let a = poly("1+x^2+x^5");
    assert_eq!(a.divmod(&poly("1")).unwrap(), (a, BinaryPolynomial::ZERO));
    let small = poly("1+x^2");
    assert_eq!(small.divmod(&poly("1+x^3")).unwrap(), (BinaryPolynomial::ZERO, small));
    assert!(matches!(a.divmod(&BinaryPolynomial::ZERO), Err(Error::DivisionByZero)));
}

#[test]
fn vectorize_round_trip() {
    assert_eq!(poly("1+x+x^3").vectorize(7).unwrap(), bv("1101000"));
    assert_eq!(poly("x^6").vectorize(7).unwrap(), bv("0000001"));
    assert!(BinaryPolynomial::devectorize(&BitVector::zeros(7)).is_zero());
    assert!(poly("x^7").vectorize(7).is_err());
}

#[test]
fn cyclic_shift_examples() {
    let v = bv("1101000");
    assert_eq!(v.cyclic_shift(2), bv("0011010"));
    assert_eq!(from_bits(&naive_shift(&bits(&v), 2)), bv("0011010"));
    assert_eq!(v.cyclic_shift(0), v);
    assert_eq!(bv("1000000").cyclic_shift(-1), bv("0000001"));
}

#[test]
fn reverse_coefficients_examples() {
    assert_eq!(poly("1+x+x^2+x^4").reverse_coefficients(4).unwrap(), poly("1+x^2+x^3+x^4"));
    let pal = poly("1+x^2+x^4");
    assert_eq!(pal.reverse_coefficients(4).unwrap(), pal);
    let p = poly("1+x+x^5");
    assert_eq!(p.reverse_coefficients(7).unwrap().reverse_coefficients(7).unwrap(), p);
    assert!(p.reverse_coefficients(3).is_err());
}

#[test]
fn parser_rejects_malformed_input() {
    assert!(BinaryPolynomial::parse("1+x+x").is_err());
    assert!(BinaryPolynomial::parse("1++x").is_err());
    assert!(BinaryPolynomial::parse("y^2").is_err());
    assert!(BinaryPolynomial::parse("").is_err());
    assert_eq!(BinaryPolynomial::parse("0").unwrap(), BinaryPolynomial::ZERO);
    assert_eq!(poly("x^3 + 1 + x").to_string(), "1+x+x^3");
}

#[test]
fn x_n_minus_1_factors_multiply_back() {
    for n in [7usize, 9, 15, 21, 23, 31] {
        let m = BinaryPolynomial::cyclic_modulus(n).unwrap();
        let factors = qsync::gf2::poly::factor(&m).unwrap();
        let product = factors.iter().fold(vec![1u8], |acc, f| naive_mul(&acc, &coeffs(f)));
        assert_eq!(product, cyclic_modulus(n), "n = {n}");
    }
}
