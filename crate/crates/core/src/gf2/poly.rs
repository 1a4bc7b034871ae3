use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use super::bitvec::{mask, BitVector};
use crate::error::{Error, Result};

/// Largest supported cyclic length.
pub const MAX_N: usize = 64;

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Polynomial over GF(2) of degree at most 127. Bit `i` is the coefficient of `x^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryPolynomial(u128);

fn check_modulus(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        Err(Error::InvalidModulus(n))
    } else {
        Ok(())
    }
}

/// Carry-less product; `None` when the result would overflow 128 coefficients.
fn clmul(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    let da = 127 - a.leading_zeros();
    let db = 127 - b.leading_zeros();
    if da + db > 127 {
        return None;
    }
    let mut acc = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    Some(acc)
}

/// Reduces coefficients modulo x^n - 1 by folding exponents.
fn fold(mut c: u128, n: usize) -> u128 {
    let m = mask(n);
    let mut out = 0u128;
    while c != 0 {
        out ^= c & m;
        c = if n >= 128 { 0 } else { c >> n };
    }
    out
}

impl BinaryPolynomial {
    pub const ZERO: BinaryPolynomial = BinaryPolynomial(0);
    pub const ONE: BinaryPolynomial = BinaryPolynomial(1);
    pub const X: BinaryPolynomial = BinaryPolynomial(2);

    pub fn from_coeffs(bits: u128) -> Self {
        BinaryPolynomial(bits)
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        let mut c = 0u128;
        for &e in exps {
            if e > 127 {
                return Err(Error::DegreeTooLarge { degree: e, len: 128 });
            }
            if c >> e & 1 == 1 {
                return Err(Error::Parse { what: "polynomial", detail: format!("duplicate exponent {e}") });
            }
            c |= 1u128 << e;
        }
        Ok(BinaryPolynomial(c))
    }

    /// x^n - 1, which equals x^n + 1 over GF(2).
    pub fn cyclic_modulus(n: usize) -> Result<Self> {
        check_modulus(n)?;
        Ok(BinaryPolynomial((1u128 << n) | 1))
    }

    pub fn coeffs(&self) -> u128 {
        self.0
    }

    pub fn coeff(&self, i: u32) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn degree(&self) -> Degree {
        if self.0 == 0 {
            Degree::NegInfinity
        } else {
            Degree::Finite(127 - self.0.leading_zeros())
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        clmul(self.0, other.0).map(BinaryPolynomial).ok_or_else(|| {
            let d = self.degree().finite().unwrap_or(0) + other.degree().finite().unwrap_or(0);
            Error::DegreeTooLarge { degree: d, len: 128 }
        })
    }

    /// Quotient and remainder with deg(remainder) < deg(divisor).
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().finite().ok_or(Error::DivisionByZero)?;
        let mut rem = self.0;
        let mut quo = 0u128;
        while rem != 0 {
            let dr = 127 - rem.leading_zeros();
            if dr < dd {
                break;
            }
            let s = dr - dd;
            quo ^= 1u128 << s;
            rem ^= divisor.0 << s;
        }
        Ok((BinaryPolynomial(quo), BinaryPolynomial(rem)))
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.divmod(self)?.1.is_zero())
    }

    /// Remainder modulo x^n - 1.
    pub fn reduce(&self, n: usize) -> Result<Self> {
        check_modulus(n)?;
        Ok(BinaryPolynomial(fold(self.0, n)))
    }

    /// Product in Z2[x]/(x^n - 1).
    pub fn mul_mod(&self, other: &Self, n: usize) -> Result<Self> {
        check_modulus(n)?;
        let a = fold(self.0, n);
        let b = fold(other.0, n);
        // both factors have degree < 64, so the product fits
        let prod = clmul(a, b).expect("reduced operands fit in 128 bits");
        Ok(BinaryPolynomial(fold(prod, n)))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (*self, *other);
        while !b.is_zero() {
            let r = a.divmod(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a
    }

    /// Coefficient vector of length `n`; requires deg < n.
    pub fn vectorize(&self, n: usize) -> Result<BitVector> {
        check_modulus(n)?;
        if let Degree::Finite(d) = self.degree() {
            if d as usize >= n {
                return Err(Error::DegreeTooLarge { degree: d, len: n });
            }
        }
        BitVector::from_raw(n, self.0)
    }

    pub fn devectorize(v: &BitVector) -> Self {
        BinaryPolynomial(v.bits())
    }

    /// Reverses coefficients `0..=d`: returns x^d p(1/x). Requires deg p <= d.
    pub fn reverse_coefficients(&self, d: u32) -> Result<Self> {
        if let Degree::Finite(dp) = self.degree() {
            if dp > d {
                return Err(Error::DegreeTooLarge { degree: dp, len: d as usize + 1 });
            }
        }
        let mut out = 0u128;
        for i in 0..=d {
            if self.coeff(i) {
                out |= 1u128 << (d - i);
            }
        }
        Ok(BinaryPolynomial(out))
    }

    /// Parses `"1+x+x^3"`-style input. Whitespace is ignored; a repeated term is an error.
    pub fn parse(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |detail: String| Error::Parse { what: "polynomial", detail };
        if cleaned.is_empty() {
            return Err(err("empty input".into()));
        }
        if cleaned == "0" {
            return Ok(BinaryPolynomial::ZERO);
        }
        let mut c = 0u128;
        for term in cleaned.split('+') {
            let e: u32 = match term {
                "" => return Err(err(format!("empty term in {s:?}"))),
                "1" => 0,
                "x" => 1,
                t if t.starts_with("x^") => t[2..].parse().map_err(|_| err(format!("bad exponent in term {t:?}")))?,
                t => return Err(err(format!("unrecognized term {t:?}"))),
            };
            if e > 127 {
                return Err(Error::DegreeTooLarge { degree: e, len: 128 });
            }
            if c >> e & 1 == 1 {
                return Err(err(format!("duplicate term x^{e} in {s:?}")));
            }
            c |= 1u128 << e;
        }
        Ok(BinaryPolynomial(c))
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn add(self, rhs: Self) -> Self {
        BinaryPolynomial(self.0 ^ rhs.0)
    }
}

impl Mul for BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("polynomial product exceeds degree 127")
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        for i in 0..128u32 {
            if self.coeff(i) {
                if !first {
                    f.write_str("+")?;
                }
                first = false;
                match i {
                    0 => f.write_str("1")?,
                    1 => f.write_str("x")?,
                    _ => write!(f, "x^{i}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

/// Factors a nonzero polynomial into irreducibles (with multiplicity, ascending
/// by degree then coefficients) by trial division.
pub fn factor(p: &BinaryPolynomial) -> Result<Vec<BinaryPolynomial>> {
    let mut rest = *p;
    let mut deg = rest.degree().finite().ok_or(Error::DivisionByZero)?;
    let mut factors = Vec::new();
    let mut d = 1u32;
    while deg > 0 {
        if 2 * d > deg {
            factors.push(rest);
            break;
        }
        let mut found = false;
        // candidates of degree exactly d with nonzero constant term (plus x itself)
        for low in 0..(1u128 << d) {
            let cand = BinaryPolynomial((1u128 << d) | low);
            if low & 1 == 0 && !(d == 1 && low == 0) {
                continue;
            }
            let (q, r) = rest.divmod(&cand)?;
            if r.is_zero() {
                factors.push(cand);
                rest = q;
                deg = rest.degree().finite().expect("nonzero quotient");
                found = true;
                break;
            }
        }
        if !found {
            d += 1;
        }
    }
    factors.sort();
    Ok(factors)
}
