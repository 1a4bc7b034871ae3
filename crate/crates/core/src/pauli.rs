//! Pauli operators in binary symplectic form with exact phases, and spans of
//! Pauli operators (stabilizer and gauge groups).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::code::EXHAUSTIVE_BOUND;
use crate::gf2::linalg::{self, Basis, Row, SymRow, TrackedBasis};
use crate::gf2::BitVector;

/// Operator `i^phase · X(x) · Z(z)` on `x.len()` qubits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliOperator {
    pub fn new(x: BitVector, z: BitVector, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: z.len() });
        }
        Ok(PauliOperator { x, z, phase: phase % 4 })
    }

    pub fn identity(n: usize) -> Self {
        PauliOperator { x: BitVector::zeros(n), z: BitVector::zeros(n), phase: 0 }
    }

    pub fn x_type(v: BitVector) -> Self {
        PauliOperator { x: v, z: BitVector::zeros(v.len()), phase: 0 }
    }

    pub fn z_type(v: BitVector) -> Self {
        PauliOperator { x: BitVector::zeros(v.len()), z: v, phase: 0 }
    }

    /// Sign factor (-1)^bit.
    pub fn with_sign(mut self, negative: bool) -> Self {
        self.phase = (self.phase + if negative { 2 } else { 0 }) % 4;
        self
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> BitVector {
        self.x
    }

    pub fn z(&self) -> BitVector {
        self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn row(&self) -> SymRow {
        SymRow::new(self.x.bits(), self.z.bits())
    }

    pub(crate) fn from_row(n: usize, r: SymRow, phase: u8) -> Self {
        PauliOperator {
            x: BitVector::from_raw(n, r.x).expect("row fits"),
            z: BitVector::from_raw(n, r.z).expect("row fits"),
            phase: phase % 4,
        }
    }

    pub fn weight(&self) -> u32 {
        self.row().weight()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// 0 when the operators commute, 1 when they anticommute.
    pub fn symplectic(&self, other: &PauliOperator) -> u8 {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        self.symplectic(other) == 0
    }

    pub fn try_mul(&self, other: &PauliOperator) -> Result<PauliOperator> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::LengthMismatch { left: self.num_qubits(), right: other.num_qubits() });
        }
        // X(x1)Z(z1)X(x2)Z(z2) = (-1)^{z1.x2} X(x1+x2)Z(z1+z2)
        let phase = (self.phase + other.phase + 2 * self.z.dot(&other.x)) % 4;
        Ok(PauliOperator { x: self.x + other.x, z: self.z + other.z, phase })
    }

    pub fn mul(&self, other: &PauliOperator) -> PauliOperator {
        self.try_mul(other).expect("product of operators on different qubit counts")
    }

    /// P · Q · P† for this Pauli P: Q picks up a sign when they anticommute.
    pub fn conjugate(&self, q: &PauliOperator) -> PauliOperator {
        q.with_sign(self.symplectic(q) == 1)
    }

    /// Places the operator on qubits `[offset, offset + n)` of an `total`-qubit register.
    pub fn embed(&self, offset: usize, total: usize) -> Result<PauliOperator> {
        Ok(PauliOperator { x: self.x.embed(offset, total)?, z: self.z.embed(offset, total)?, phase: self.phase })
    }

    /// Overall coefficient in front of the I/X/Y/Z string, as a power of i.
    fn string_phase(&self) -> u8 {
        // X Z = -i Y on each qubit carrying both parts
        let ys = (self.x.bits() & self.z.bits()).count_ones() as u8;
        (self.phase + 3 * (ys % 4)) % 4
    }

    pub fn parse(s: &str) -> Result<PauliOperator> {
        let s = s.trim();
        let (phase, body) = if let Some(r) = s.strip_prefix("-i") {
            (3u8, r)
        } else if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else {
            (0, s)
        };
        let n = body.len();
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        let mut ys = 0u8;
        for (i, ch) in body.chars().enumerate() {
            match ch {
                'I' => {}
                'X' => x = x.with_bit(i, true),
                'Z' => z = z.with_bit(i, true),
                'Y' => {
                    x = x.with_bit(i, true);
                    z = z.with_bit(i, true);
                    ys += 1;
                }
                other => return Err(Error::Parse { what: "Pauli string", detail: format!("unexpected {other:?}") }),
            }
        }
        // Y = i X Z
        Ok(PauliOperator { x, z, phase: (phase + ys % 4) % 4 })
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.string_phase() as usize])?;
        for i in 0..self.num_qubits() {
            let c = match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// Whether span comparisons look at phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMode {
    Exact,
    Ignore,
}

/// Group generated by a list of Pauli operators on `n` qubits.
#[derive(Clone)]
pub struct PauliGroupSpan {
    n: usize,
    generators: Vec<PauliOperator>,
    tracked: TrackedBasis<SymRow>,
}

impl PauliGroupSpan {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        for g in &generators {
            if g.num_qubits() != n {
                return Err(Error::LengthMismatch { left: n, right: g.num_qubits() });
            }
        }
        let rows: Vec<SymRow> = generators.iter().map(|g| g.row()).collect();
        Ok(PauliGroupSpan { n, tracked: TrackedBasis::new(&rows), generators })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Rank of the symplectic image (phases ignored).
    pub fn rank(&self) -> usize {
        self.tracked.rank()
    }

    pub fn basis(&self) -> Basis<SymRow> {
        self.tracked.basis()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    /// Product of generators in index order.
    fn product(&self, indices: &[usize]) -> PauliOperator {
        indices.iter().fold(PauliOperator::identity(self.n), |acc, &i| acc.mul(&self.generators[i]))
    }

    /// The group element with the same symplectic image as `op`, formed as a
    /// product of generators. For abelian groups without -I the result is unique.
    pub fn element_for(&self, op: &PauliOperator) -> Option<PauliOperator> {
        if op.num_qubits() != self.n {
            return None;
        }
        self.tracked.decompose(op.row()).map(|idx| self.product(&idx))
    }

    /// Generator indices whose product matches `op` in the given mode.
    pub fn decompose(&self, op: &PauliOperator, mode: PhaseMode) -> Option<Vec<usize>> {
        if op.num_qubits() != self.n {
            return None;
        }
        let idx = self.tracked.decompose(op.row())?;
        match mode {
            PhaseMode::Ignore => Some(idx),
            PhaseMode::Exact => (self.product(&idx).phase == op.phase).then_some(idx),
        }
    }

    pub fn contains(&self, op: &PauliOperator, mode: PhaseMode) -> bool {
        match mode {
            PhaseMode::Ignore => op.num_qubits() == self.n && self.tracked.contains(op.row()),
            PhaseMode::Exact => self.element_for(op).is_some_and(|e| e.phase == op.phase),
        }
    }

    /// True when a nontrivial multiple of the identity (-I or ±iI) lies in the
    /// group. Only meaningful for abelian groups.
    pub fn contains_nontrivial_identity(&self) -> bool {
        self.tracked.relations().iter().any(|rel| self.product(rel).phase != 0)
    }

    /// Whether every generator of `other` lies in this group.
    pub fn contains_group(&self, other: &PauliGroupSpan, mode: PhaseMode) -> bool {
        other.n == self.n && other.generators.iter().all(|g| self.contains(g, mode))
    }

    pub fn equals(&self, other: &PauliGroupSpan, mode: PhaseMode) -> bool {
        self.n == other.n && self.contains_group(other, mode) && other.contains_group(self, mode)
    }

    /// Centralizer in the n-qubit Pauli group, generators with phase +1.
    pub fn centralizer(&self) -> PauliGroupSpan {
        let swapped = Basis::from_rows(self.tracked.basis().rows().into_iter().map(|r| r.swapped()));
        let gens = swapped
            .null_space(&linalg::symplectic_columns(self.n))
            .into_iter()
            .map(|r| PauliOperator::from_row(self.n, r, 0))
            .collect();
        PauliGroupSpan::new(self.n, gens).expect("same qubit count")
    }

    /// Group generated by both generator lists.
    pub fn join(&self, other: &PauliGroupSpan) -> Result<PauliGroupSpan> {
        if other.n != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        PauliGroupSpan::new(self.n, self.generators.iter().chain(&other.generators).copied().collect())
    }

    /// Intersection of symplectic images, generators with phase +1.
    pub fn intersection_ignoring_phase(&self, other: &PauliGroupSpan) -> Result<PauliGroupSpan> {
        if other.n != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        let a = self.tracked.basis().rows();
        let b = other.tracked.basis().rows();
        let gens = linalg::intersection(&a, &b, &linalg::symplectic_columns(self.n))
            .into_iter()
            .map(|r| PauliOperator::from_row(self.n, r, 0))
            .collect();
        PauliGroupSpan::new(self.n, gens)
    }

    /// Elements of this group commuting with every operator in `ops`, as
    /// generator products so phases are inherited from this group.
    pub fn commutant_of(&self, ops: &[PauliOperator]) -> PauliGroupSpan {
        // coordinates of group elements in terms of a reduced basis of the image
        let basis_ops: Vec<PauliOperator> = self
            .tracked
            .basis()
            .rows()
            .into_iter()
            .map(|r| self.element_for(&PauliOperator::from_row(self.n, r, 0)).expect("row lies in span"))
            .collect();
        let k = basis_ops.len();
        assert!(k <= 128, "commutant supports groups of rank at most 128");
        // linear map: coefficient vector c (bits over basis_ops) -> commutation with each op
        let constraints: Vec<u128> = ops
            .iter()
            .map(|t| basis_ops.iter().enumerate().fold(0u128, |acc, (i, b)| acc | ((b.symplectic(t) as u128) << i)))
            .collect();
        let kernel = Basis::from_rows(constraints).null_space(&linalg::classical_columns(k));
        let gens = kernel
            .into_iter()
            .map(|c| {
                (0..k)
                    .filter(|&i| c >> i & 1 == 1)
                    .fold(PauliOperator::identity(self.n), |acc, i| acc.mul(&basis_ops[i]))
            })
            .collect();
        PauliGroupSpan::new(self.n, gens).expect("same qubit count")
    }

    /// Minimum weight over elements of this group outside `excluded` (phases
    /// ignored). Exhaustive, so the rank must not exceed the enumeration bound.
    pub fn min_weight_outside(&self, excluded: &PauliGroupSpan) -> Result<Option<u32>> {
        self.min_weight_of_coset_outside(&PauliOperator::identity(self.n), excluded)
    }

    /// Minimum weight over `offset · self` with elements of `excluded` skipped.
    pub fn min_weight_of_coset_outside(
        &self,
        offset: &PauliOperator,
        excluded: &PauliGroupSpan,
    ) -> Result<Option<u32>> {
        if self.rank() > EXHAUSTIVE_BOUND {
            return Err(Error::DimensionTooLarge { dim: self.rank(), bound: EXHAUSTIVE_BOUND });
        }
        if excluded.n != self.n || offset.num_qubits() != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: excluded.n });
        }
        let gens = self.tracked.basis().rows();
        Ok(linalg::min_weight_outside(&gens, &excluded.tracked.basis(), offset.row()))
    }
}

impl fmt::Debug for PauliGroupSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators.iter().map(|g| g.to_string())).finish()
    }
}
