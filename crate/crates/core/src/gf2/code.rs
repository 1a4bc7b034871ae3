use std::fmt;

use super::bitvec::BitVector;
use super::linalg::{self, Basis};
use crate::error::{Error, Result};

/// Largest dimension enumerated exhaustively.
pub const EXHAUSTIVE_BOUND: usize = 24;

/// Binary linear code stored as its canonical reduced echelon basis, so two
/// codes are equal exactly when their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    basis: Vec<BitVector>,
}

impl LinearCode {
    pub fn from_generators(n: usize, gens: &[BitVector]) -> Result<Self> {
        for g in gens {
            if g.len() != n {
                return Err(Error::LengthMismatch { left: n, right: g.len() });
            }
        }
        let b = Basis::from_rows(gens.iter().map(|g| g.bits()));
        Ok(Self::from_basis(n, &b))
    }

    fn from_basis(n: usize, b: &Basis<u128>) -> Self {
        let basis = b.rows().into_iter().map(|r| BitVector::from_raw(n, r).expect("row fits length")).collect();
        LinearCode { n, basis }
    }

    pub fn zero(n: usize) -> Self {
        LinearCode { n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        let gens: Vec<BitVector> = (0..n).map(|i| BitVector::unit(n, i).expect("index < n")).collect();
        Self::from_generators(n, &gens).expect("unit vectors have length n")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    fn reducer(&self) -> Basis<u128> {
        Basis::from_rows(self.basis.iter().map(|b| b.bits()))
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: v.len() });
        }
        Ok(self.reducer().contains(v.bits()))
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        let r = other.reducer();
        Ok(self.basis.iter().all(|b| r.contains(b.bits())))
    }

    pub fn dual(&self) -> LinearCode {
        let ns = self.reducer().null_space(&linalg::classical_columns(self.n));
        Self::from_basis(self.n, &Basis::from_rows(ns))
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        let gens: Vec<BitVector> = self.basis.iter().chain(&other.basis).copied().collect();
        Self::from_generators(self.n, &gens)
    }

    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        let a: Vec<u128> = self.basis.iter().map(|b| b.bits()).collect();
        let b: Vec<u128> = other.basis.iter().map(|b| b.bits()).collect();
        let i = linalg::intersection(&a, &b, &linalg::classical_columns(self.n));
        Ok(Self::from_basis(self.n, &Basis::from_rows(i)))
    }

    /// Exhaustive minimum nonzero weight; `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<u32>> {
        self.min_weight_excluding(&LinearCode::zero(self.n))
    }

    /// Minimum weight of `self \ excluded`; `None` when `self` is inside `excluded`.
    pub fn min_weight_excluding(&self, excluded: &LinearCode) -> Result<Option<u32>> {
        if self.dim() > EXHAUSTIVE_BOUND {
            return Err(Error::DimensionTooLarge { dim: self.dim(), bound: EXHAUSTIVE_BOUND });
        }
        if excluded.n != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: excluded.n });
        }
        let gens: Vec<u128> = self.basis.iter().map(|b| b.bits()).collect();
        Ok(linalg::min_weight_outside(&gens, &excluded.reducer(), 0))
    }

    /// Minimum distance found from the check side: the smallest number of
    /// parity-check columns summing to zero. Exhaustive over column subsets,
    /// so it suits high-rate codes where the codeword enumeration is too large.
    pub fn min_distance_from_checks(&self, max_weight: u32) -> Option<u32> {
        if self.dim() == 0 {
            return None;
        }
        let checks = self.dual();
        let cols: Vec<u128> = (0..self.n)
            .map(|c| {
                checks.basis.iter().enumerate().fold(0u128, |acc, (r, row)| acc | ((row.get(c) as u128) << r))
            })
            .collect();
        (1..=max_weight.min(self.n as u32)).find(|&w| subsets_sum_to_zero(&cols, w as usize))
    }

    /// Minimum distance using codeword enumeration when the dimension allows,
    /// and the check-column search otherwise.
    pub fn min_distance_auto(&self) -> Result<Option<u32>> {
        if self.dim() <= EXHAUSTIVE_BOUND {
            self.min_distance()
        } else if self.n - self.dim() <= EXHAUSTIVE_BOUND {
            Ok(self.min_distance_from_checks(self.n as u32))
        } else {
            Err(Error::DimensionTooLarge { dim: self.dim().min(self.n - self.dim()), bound: EXHAUSTIVE_BOUND })
        }
    }
}

fn subsets_sum_to_zero(cols: &[u128], w: usize) -> bool {
    fn rec(cols: &[u128], start: usize, left: usize, acc: u128) -> bool {
        if left == 0 {
            return acc == 0;
        }
        (start..=cols.len() - left).any(|i| rec(cols, i + 1, left - 1, acc ^ cols[i]))
    }
    w <= cols.len() && rec(cols, 0, w, 0)
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}]{{", self.n, self.dim())?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}
