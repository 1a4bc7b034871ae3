//! Cyclic codes over GF(2), nested pairs of them, and the shift-row bases
//! used by the pairing and code-family modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::code::LinearCode;
use crate::gf2::poly::{factor, MAX_N};
use crate::gf2::{BinaryPolynomial, BitVector};

/// Cyclic code of length `n` generated by a divisor `p` of x^n - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCode {
    n: usize,
    generator: BinaryPolynomial,
    check: BinaryPolynomial,
    k: usize,
}

impl CyclicCode {
    /// Builds the code generated by `p`. The zero polynomial and any `p` of
    /// degree `n` or more (in particular x^n - 1 itself) are rejected.
    pub fn from_generator_poly(n: usize, p: BinaryPolynomial) -> Result<Self> {
        let modulus = BinaryPolynomial::cyclic_modulus(n)?;
        let dp = p.degree().finite().ok_or_else(|| Error::NotAGenerator("the zero polynomial".into()))?;
        if dp as usize >= n {
            return Err(Error::NotAGenerator(format!("{p} (degree {dp} >= n = {n})")));
        }
        Self::build(n, p, &modulus)
    }

    fn build(n: usize, p: BinaryPolynomial, modulus: &BinaryPolynomial) -> Result<Self> {
        let (check, rem) = modulus.divmod(&p)?;
        if !rem.is_zero() {
            return Err(Error::NotAGenerator(p.to_string()));
        }
        let dp = p.degree().finite().expect("nonzero generator") as usize;
        Ok(CyclicCode { n, generator: p, check, k: n - dp })
    }

    /// The zero code, generated by x^n - 1.
    pub fn zero_code(n: usize) -> Result<Self> {
        let modulus = BinaryPolynomial::cyclic_modulus(n)?;
        Self::build(n, modulus, &modulus)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> BinaryPolynomial {
        self.generator
    }

    /// Check polynomial (x^n - 1) / p.
    pub fn check_poly(&self) -> BinaryPolynomial {
        self.check
    }

    /// Reversed check polynomial: coefficients `0..=k` of the check polynomial reversed.
    pub fn reversed_check_poly(&self) -> BinaryPolynomial {
        self.check.reverse_coefficients(self.k as u32).expect("check polynomial has degree k")
    }

    /// Generator rows: the coefficient vector of `p` shifted by `0..k`.
    pub fn generator_rows(&self) -> Vec<BitVector> {
        if self.k == 0 {
            return Vec::new();
        }
        let v = self.generator.vectorize(self.n).expect("generator degree below n");
        (0..self.k).map(|i| v.cyclic_shift(i as i64)).collect()
    }

    /// Check rows: the reversed check polynomial shifted by `0..n-k`.
    pub fn check_rows(&self) -> Vec<BitVector> {
        if self.k == self.n {
            return Vec::new();
        }
        let v = self.reversed_check_poly().vectorize(self.n).expect("reversed check polynomial has degree k < n");
        (0..self.n - self.k).map(|i| v.cyclic_shift(i as i64)).collect()
    }

    pub fn as_linear_code(&self) -> LinearCode {
        LinearCode::from_generators(self.n, &self.generator_rows()).expect("rows have length n")
    }

    /// Dual code, generated by the reversed check polynomial.
    pub fn dual(&self) -> Result<CyclicCode> {
        if self.k == self.n {
            return CyclicCode::zero_code(self.n);
        }
        let modulus = BinaryPolynomial::cyclic_modulus(self.n)?;
        Self::build(self.n, self.reversed_check_poly(), &modulus)
    }

    pub fn min_distance(&self) -> Result<Option<u32>> {
        self.as_linear_code().min_distance_auto()
    }
}

/// Nested pair C ⊂ D of cyclic codes with C⊥ ⊂ C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCodePair {
    pub c: CyclicCode,
    pub d: CyclicCode,
}

impl CyclicCodePair {
    pub fn new(c: CyclicCode, d: CyclicCode) -> Result<Self> {
        if c.n != d.n {
            return Err(Error::LengthMismatch { left: c.n, right: d.n });
        }
        let n = c.n;
        if c.k >= d.k {
            return Err(Error::InvalidPair(format!("k_c = {} must be below k_d = {}", c.k, d.k)));
        }
        if 2 * c.k <= n {
            return Err(Error::InvalidPair(format!("2 k_c - n = {} must be at least 1", 2 * c.k as i64 - n as i64)));
        }
        let cl = c.as_linear_code();
        if !cl.is_subcode_of(&d.as_linear_code())? {
            return Err(Error::InvalidPair("C is not contained in D".into()));
        }
        if !cl.dual().is_subcode_of(&cl)? {
            return Err(Error::InvalidPair("C does not contain its dual".into()));
        }
        Ok(CyclicCodePair { c, d })
    }

    pub fn from_polys(n: usize, p: BinaryPolynomial, q: BinaryPolynomial) -> Result<Self> {
        Self::new(CyclicCode::from_generator_poly(n, p)?, CyclicCode::from_generator_poly(n, q)?)
    }

    pub fn n(&self) -> usize {
        self.c.n
    }

    pub fn k_c(&self) -> usize {
        self.c.k
    }

    pub fn k_d(&self) -> usize {
        self.d.k
    }

    /// k_d - k_c.
    pub fn gap(&self) -> usize {
        self.d.k - self.c.k
    }

    /// 2 k_c - n, the number of logical qubits.
    pub fn logical_count(&self) -> usize {
        2 * self.c.k - self.c.n
    }

    /// Splits the shift rows of both codes into the nested layers
    /// D⊥ ⊂ C⊥ ⊂ C ⊂ D and checks each layer's span by rank.
    pub fn decompose(&self) -> Result<GeneratorBasis> {
        let n = self.n();
        let gap = self.gap();
        let d_checks = self.d.check_rows();
        let c_checks = self.c.check_rows();
        let c_gens = self.c.generator_rows();
        let d_gens = self.d.generator_rows();
        let basis = GeneratorBasis {
            n,
            d_dual: d_checks[..n - self.k_d()].to_vec(),
            c_dual_extra: c_checks[..gap].to_vec(),
            c_extra: c_gens[..self.logical_count()].to_vec(),
            d_extra: d_gens[..gap].to_vec(),
        };
        let layers = [
            ("D dual", basis.d_dual.clone(), self.d.as_linear_code().dual()),
            ("C dual", [basis.d_dual.clone(), basis.c_dual_extra.clone()].concat(), self.c.as_linear_code().dual()),
            (
                "C",
                [basis.d_dual.clone(), basis.c_dual_extra.clone(), basis.c_extra.clone()].concat(),
                self.c.as_linear_code(),
            ),
            (
                "D",
                [basis.d_dual.clone(), basis.c_dual_extra.clone(), basis.c_extra.clone(), basis.d_extra.clone()]
                    .concat(),
                self.d.as_linear_code(),
            ),
        ];
        for (name, rows, target) in layers {
            let span = LinearCode::from_generators(n, &rows)?;
            if span.dim() != rows.len() || span != target {
                return Err(Error::InvalidPair(format!(
                    "shift rows do not form a basis of {name} (rank {} of {} rows, target dimension {})",
                    span.dim(),
                    rows.len(),
                    target.dim()
                )));
            }
        }
        Ok(basis)
    }
}

/// Shift-row basis adapted to the chain D⊥ ⊂ C⊥ ⊂ C ⊂ D.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorBasis {
    pub n: usize,
    /// n - k_d check rows of D; they span D⊥.
    pub d_dual: Vec<BitVector>,
    /// First k_d - k_c check rows of C; together with `d_dual` they span C⊥.
    pub c_dual_extra: Vec<BitVector>,
    /// First 2k_c - n generator rows of C; with the rows above they span C.
    pub c_extra: Vec<BitVector>,
    /// First k_d - k_c generator rows of D; with the rows above they span D.
    pub d_extra: Vec<BitVector>,
}

/// Summary of a pair found by [`search_pairs`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSummary {
    pub n: usize,
    pub p: String,
    pub q: String,
    pub k_c: usize,
    pub k_d: usize,
    pub d_c: Option<u32>,
    pub d_d: Option<u32>,
}

fn divisors(factors: &[BinaryPolynomial]) -> Vec<BinaryPolynomial> {
    // group equal factors so each divisor is produced once
    let mut groups: Vec<(BinaryPolynomial, usize)> = Vec::new();
    for f in factors {
        match groups.last_mut() {
            Some((g, m)) if g == f => *m += 1,
            _ => groups.push((*f, 1)),
        }
    }
    let mut out = vec![BinaryPolynomial::ONE];
    for (f, mult) in groups {
        let mut next = Vec::new();
        for d in &out {
            let mut acc = *d;
            next.push(acc);
            for _ in 0..mult {
                acc = acc * f;
                next.push(acc);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Every valid pair of length `n`, ordered by (k_c, k_d, p, q).
pub fn search_pairs(n: usize) -> Result<Vec<CyclicCodePair>> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidModulus(n));
    }
    let modulus = BinaryPolynomial::cyclic_modulus(n)?;
    let divs: Vec<BinaryPolynomial> =
        divisors(&factor(&modulus)?).into_iter().filter(|d| d.degree().finite().is_some_and(|x| (x as usize) < n)).collect();
    let mut candidates_c = Vec::new();
    for p in &divs {
        let c = CyclicCode::from_generator_poly(n, *p)?;
        if 2 * c.dim() <= n {
            continue;
        }
        let cl = c.as_linear_code();
        if cl.dual().is_subcode_of(&cl)? {
            candidates_c.push(c);
        }
    }
    let mut pairs = Vec::new();
    for c in candidates_c {
        for q in &divs {
            if q == &c.generator || !q.divides(&c.generator)? {
                continue;
            }
            let d = CyclicCode::from_generator_poly(n, *q)?;
            pairs.push(CyclicCodePair::new(c.clone(), d)?);
        }
    }
    pairs.sort_by_key(|pr| (pr.k_c(), pr.k_d(), pr.c.generator, pr.d.generator));
    Ok(pairs)
}

impl CyclicCodePair {
    pub fn summary(&self) -> Result<PairSummary> {
        Ok(PairSummary {
            n: self.n(),
            p: self.c.generator.to_string(),
            q: self.d.generator.to_string(),
            k_c: self.k_c(),
            k_d: self.k_d(),
            d_c: self.c.min_distance()?,
            d_d: self.d.min_distance()?,
        })
    }
}
