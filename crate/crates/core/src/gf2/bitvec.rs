use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest vector a `BitVector` can hold.
pub const MAX_BITS: usize = 128;

/// Fixed-length vector over GF(2). Bit `i` is coordinate `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitVector {
    len: usize,
    bits: u128,
}

pub(crate) fn mask(len: usize) -> u128 {
    if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_BITS, "BitVector length {len} exceeds {MAX_BITS}");
        BitVector { len, bits: 0 }
    }

    pub fn from_raw(len: usize, bits: u128) -> Result<Self> {
        if len > MAX_BITS {
            return Err(Error::OutOfRange { index: len, len: MAX_BITS });
        }
        if bits & !mask(len) != 0 {
            let top = 127 - bits.leading_zeros() as usize;
            return Err(Error::OutOfRange { index: top, len });
        }
        Ok(BitVector { len, bits })
    }

    pub(crate) fn raw(len: usize, bits: u128) -> Self {
        debug_assert!(bits & !mask(len) == 0);
        BitVector { len, bits }
    }

    pub fn unit(len: usize, index: usize) -> Result<Self> {
        if index >= len {
            return Err(Error::OutOfRange { index, len });
        }
        Ok(BitVector::raw(len, 1u128 << index))
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.bits |= 1u128 << i;
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, coordinate 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_BITS {
            return Err(Error::Parse { what: "bit vector", detail: format!("length {} exceeds {MAX_BITS}", s.len()) });
        }
        let mut v = BitVector::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.bits |= 1u128 << i,
                other => {
                    return Err(Error::Parse { what: "bit vector", detail: format!("unexpected character {other:?}") })
                }
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "index {index} out of range for length {}", self.len);
        self.bits >> index & 1 == 1
    }

    pub fn with_bit(mut self, index: usize, value: bool) -> Self {
        assert!(index < self.len, "index {index} out of range for length {}", self.len);
        if value {
            self.bits |= 1u128 << index;
        } else {
            self.bits &= !(1u128 << index);
        }
        self
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.bits >> i & 1 == 1).collect()
    }

    pub fn try_add(&self, other: &BitVector) -> Result<BitVector> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len, right: other.len });
        }
        Ok(BitVector::raw(self.len, self.bits ^ other.bits))
    }

    pub fn try_dot(&self, other: &BitVector) -> Result<u8> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len, right: other.len });
        }
        Ok(((self.bits & other.bits).count_ones() & 1) as u8)
    }

    /// Dot product. Panics on a length mismatch; use `try_dot` for fallible input.
    pub fn dot(&self, other: &BitVector) -> u8 {
        self.try_dot(other).expect("dot product of vectors with different lengths")
    }

    /// Right cyclic shift by `alpha` (negative shifts to the left): output
    /// coordinate `i` takes input coordinate `i - alpha mod len`.
    pub fn cyclic_shift(&self, alpha: i64) -> BitVector {
        let n = self.len;
        if n == 0 {
            return *self;
        }
        let s = alpha.rem_euclid(n as i64) as usize;
        if s == 0 {
            return *self;
        }
        let m = mask(n);
        let bits = ((self.bits << s) | (self.bits >> (n - s))) & m;
        BitVector::raw(n, bits)
    }

    /// First `count` coordinates.
    pub fn head(&self, count: usize) -> BitVector {
        assert!(count <= self.len);
        BitVector::raw(count, self.bits & mask(count))
    }

    /// Last `count` coordinates.
    pub fn tail(&self, count: usize) -> BitVector {
        assert!(count <= self.len);
        let start = self.len - count;
        BitVector::raw(count, (self.bits >> start) & mask(count))
    }

    pub fn concat(&self, other: &BitVector) -> Result<BitVector> {
        let len = self.len + other.len;
        if len > MAX_BITS {
            return Err(Error::OutOfRange { index: len, len: MAX_BITS });
        }
        let hi = if other.len == 0 { 0 } else { other.bits << self.len };
        Ok(BitVector::raw(len, self.bits | hi))
    }

    /// Places this vector at `offset` inside a zero vector of length `len`.
    pub fn embed(&self, offset: usize, len: usize) -> Result<BitVector> {
        if offset + self.len > len || len > MAX_BITS {
            return Err(Error::OutOfRange { index: offset + self.len, len });
        }
        let bits = if self.len == 0 { 0 } else { self.bits << offset };
        Ok(BitVector::raw(len, bits))
    }

    /// Coordinates `[offset, offset + count)`.
    pub fn slice(&self, offset: usize, count: usize) -> BitVector {
        assert!(offset + count <= self.len);
        let bits = if count == 0 { 0 } else { (self.bits >> offset) & mask(count) };
        BitVector::raw(count, bits)
    }
}

impl Add for BitVector {
    type Output = BitVector;
    fn add(self, rhs: BitVector) -> BitVector {
        self.try_add(&rhs).expect("sum of vectors with different lengths")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_matches_definition() {
        let v = BitVector::parse("1101000").unwrap();
        assert_eq!(v.cyclic_shift(1).to_string(), "0110100");
        assert_eq!(v.cyclic_shift(-1).to_string(), "1010001");
        assert_eq!(v.cyclic_shift(7), v);
    }

    #[test]
    fn mismatched_lengths_are_errors() {
        let a = BitVector::zeros(3);
        let b = BitVector::zeros(4);
        assert!(matches!(a.try_add(&b), Err(Error::LengthMismatch { .. })));
        assert!(matches!(a.try_dot(&b), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn head_tail_concat() {
        let v = BitVector::parse("1100101").unwrap();
        assert_eq!(v.head(2).to_string(), "11");
        assert_eq!(v.tail(3).to_string(), "101");
        assert_eq!(v.tail(2).concat(&v).unwrap().concat(&v.head(1)).unwrap().to_string(), "0111001011");
    }
}
