//! Row reduction over GF(2) for packed rows.
//!
//! Two row types are used throughout: `u128` for classical vectors and
//! [`SymRow`] for the binary symplectic image `(x | z)` of a Pauli operator.

use rayon::prelude::*;

/// A packed GF(2) row. Column indices are `u32`; the lowest set column is the pivot.
pub trait Row: Copy + Eq + Default + Send + Sync + std::fmt::Debug {
    fn xor(self, other: Self) -> Self;
    fn is_zero(&self) -> bool;
    fn pivot(&self) -> Option<u32>;
    fn bit(&self, col: u32) -> bool;
    fn unit(col: u32) -> Self;
    /// Hamming weight for classical rows, Pauli weight for symplectic rows.
    fn weight(&self) -> u32;
}

impl Row for u128 {
    fn xor(self, other: Self) -> Self {
        self ^ other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn pivot(&self) -> Option<u32> {
        (*self != 0).then(|| self.trailing_zeros())
    }
    fn bit(&self, col: u32) -> bool {
        col < 128 && self >> col & 1 == 1
    }
    fn unit(col: u32) -> Self {
        1u128 << col
    }
    fn weight(&self) -> u32 {
        self.count_ones()
    }
}

/// Symplectic row: columns `0..128` are the X part, `128..256` the Z part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct SymRow {
    pub x: u128,
    pub z: u128,
}

impl SymRow {
    pub fn new(x: u128, z: u128) -> Self {
        SymRow { x, z }
    }

    /// Symplectic form x1.z2 + z1.x2.
    pub fn symplectic(&self, other: &SymRow) -> u8 {
        (((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) & 1) as u8
    }

    /// Row whose standard dot product with `v` equals `self.symplectic(v)`.
    pub fn swapped(&self) -> SymRow {
        SymRow { x: self.z, z: self.x }
    }
}

impl Row for SymRow {
    fn xor(self, other: Self) -> Self {
        SymRow { x: self.x ^ other.x, z: self.z ^ other.z }
    }
    fn is_zero(&self) -> bool {
        self.x == 0 && self.z == 0
    }
    fn pivot(&self) -> Option<u32> {
        if self.x != 0 {
            Some(self.x.trailing_zeros())
        } else if self.z != 0 {
            Some(128 + self.z.trailing_zeros())
        } else {
            None
        }
    }
    fn bit(&self, col: u32) -> bool {
        if col < 128 {
            self.x >> col & 1 == 1
        } else {
            col < 256 && self.z >> (col - 128) & 1 == 1
        }
    }
    fn unit(col: u32) -> Self {
        if col < 128 {
            SymRow { x: 1u128 << col, z: 0 }
        } else {
            SymRow { x: 0, z: 1u128 << (col - 128) }
        }
    }
    fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }
}

/// Valid columns of a symplectic row on `n` qubits.
pub fn symplectic_columns(n: usize) -> Vec<u32> {
    (0..n as u32).chain((0..n as u32).map(|c| 128 + c)).collect()
}

/// Valid columns of a classical row of length `n`.
pub fn classical_columns(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

/// Fully reduced echelon basis. Every row has a distinct pivot (its lowest set
/// column) and no other row has a one in that column, so the reduced form of a
/// subspace is unique once rows are sorted by pivot.
#[derive(Debug, Clone, Default)]
pub struct Basis<R: Row> {
    rows: Vec<R>,
}

impl<R: Row> Basis<R> {
    pub fn new() -> Self {
        Basis { rows: Vec::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = R>>(rows: I) -> Self {
        let mut b = Basis::new();
        for r in rows {
            b.insert(r);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduced rows sorted by pivot.
    pub fn rows(&self) -> Vec<R> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.pivot());
        rows
    }

    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.rows.iter().map(|r| r.pivot().expect("nonzero row")).collect();
        p.sort_unstable();
        p
    }

    /// Residual of `r` after clearing every pivot column.
    pub fn reduce(&self, mut r: R) -> R {
        for row in &self.rows {
            let p = row.pivot().expect("nonzero row");
            if r.bit(p) {
                r = r.xor(*row);
            }
        }
        r
    }

    pub fn contains(&self, r: R) -> bool {
        self.reduce(r).is_zero()
    }

    /// Inserts `r`; returns false when it was already in the span.
    pub fn insert(&mut self, r: R) -> bool {
        let r = self.reduce(r);
        let Some(p) = r.pivot() else { return false };
        for row in &mut self.rows {
            if row.bit(p) {
                *row = row.xor(r);
            }
        }
        self.rows.push(r);
        true
    }

    pub fn contains_all(&self, other: &Basis<R>) -> bool {
        other.rows.iter().all(|r| self.contains(*r))
    }

    pub fn same_span(&self, other: &Basis<R>) -> bool {
        self.rank() == other.rank() && self.contains_all(other)
    }

    /// Null space of the rows under the standard dot product, restricted to `columns`.
    pub fn null_space(&self, columns: &[u32]) -> Vec<R> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for &c in columns {
            if pivots.binary_search(&c).is_ok() {
                continue;
            }
            let mut v = R::unit(c);
            for row in &self.rows {
                if row.bit(c) {
                    v = v.xor(R::unit(row.pivot().expect("nonzero row")));
                }
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a list of rows.
pub fn rank<R: Row>(rows: &[R]) -> usize {
    Basis::from_rows(rows.iter().copied()).rank()
}

/// Intersection of two subspaces of the space spanned by `columns`.
pub fn intersection<R: Row>(a: &[R], b: &[R], columns: &[u32]) -> Vec<R> {
    let da = Basis::from_rows(a.iter().copied()).null_space(columns);
    let db = Basis::from_rows(b.iter().copied()).null_space(columns);
    Basis::from_rows(da.into_iter().chain(db)).null_space(columns)
}

/// Basis that remembers how each reduced row was formed from the inserted
/// generators, so a member can be written as a product of generators.
#[derive(Debug, Clone)]
pub struct TrackedBasis<R: Row> {
    rows: Vec<(R, Vec<u64>)>,
    generators: usize,
    relations: Vec<Vec<u64>>,
}

fn combo_unit(words: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; words];
    v[i / 64] |= 1 << (i % 64);
    v
}

fn combo_xor(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

/// Indices set in a combination bitset.
pub fn combo_indices(c: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in c.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let t = bits.trailing_zeros() as usize;
            out.push(w * 64 + t);
            bits &= bits - 1;
        }
    }
    out
}

impl<R: Row> TrackedBasis<R> {
    pub fn new(generators: &[R]) -> Self {
        let words = generators.len().div_ceil(64).max(1);
        let mut tb = TrackedBasis { rows: Vec::new(), generators: generators.len(), relations: Vec::new() };
        for (i, g) in generators.iter().enumerate() {
            let (r, c) = tb.reduce_tracked(*g, combo_unit(words, i));
            match r.pivot() {
                None => tb.relations.push(c),
                Some(p) => {
                    for (row, rc) in &mut tb.rows {
                        if row.bit(p) {
                            *row = row.xor(r);
                            combo_xor(rc, &c);
                        }
                    }
                    tb.rows.push((r, c));
                }
            }
        }
        tb
    }

    fn reduce_tracked(&self, mut r: R, mut c: Vec<u64>) -> (R, Vec<u64>) {
        for (row, rc) in &self.rows {
            if r.bit(row.pivot().expect("nonzero row")) {
                r = r.xor(*row);
                combo_xor(&mut c, rc);
            }
        }
        (r, c)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Generator indices whose sum is `r`, or `None` when `r` is outside the span.
    pub fn decompose(&self, r: R) -> Option<Vec<usize>> {
        let words = self.generators.div_ceil(64).max(1);
        let (res, c) = self.reduce_tracked(r, vec![0u64; words]);
        res.is_zero().then(|| combo_indices(&c))
    }

    pub fn contains(&self, r: R) -> bool {
        let mut r = r;
        for (row, _) in &self.rows {
            if r.bit(row.pivot().expect("nonzero row")) {
                r = r.xor(*row);
            }
        }
        r.is_zero()
    }

    /// Basis of the linear relations among generators (subsets summing to zero).
    pub fn relations(&self) -> Vec<Vec<usize>> {
        self.relations.iter().map(|c| combo_indices(c)).collect()
    }

    pub fn basis(&self) -> Basis<R> {
        Basis::from_rows(self.rows.iter().map(|(r, _)| *r))
    }
}

/// Exhaustive minimum weight over `offset + span(generators)` with elements of
/// `excluded` skipped. `None` when every element is excluded.
///
/// Enumerates in Gray-code order, tracking the residual modulo `excluded`
/// incrementally so membership costs one comparison per element.
pub fn min_weight_outside<R: Row>(generators: &[R], excluded: &Basis<R>, offset: R) -> Option<u32> {
    let basis: Vec<R> = Basis::from_rows(generators.iter().copied()).rows();
    let k = basis.len();
    let residuals: Vec<R> = basis.iter().map(|b| excluded.reduce(*b)).collect();
    let start_res = excluded.reduce(offset);

    // split the top bits across threads once the enumeration is large
    let split = if k >= 16 { 6.min(k) } else { 0 };
    let low = k - split;
    let run = |prefix: u64| -> Option<u32> {
        let mut v = offset;
        let mut res = start_res;
        for j in 0..split {
            if prefix >> j & 1 == 1 {
                v = v.xor(basis[low + j]);
                res = res.xor(residuals[low + j]);
            }
        }
        let mut best: Option<u32> = None;
        let mut consider = |v: &R, res: &R| {
            if !res.is_zero() {
                let w = v.weight();
                if best.is_none_or(|b| w < b) {
                    best = Some(w);
                }
            }
        };
        consider(&v, &res);
        let total: u64 = 1u64 << low;
        for step in 1..total {
            let bit = step.trailing_zeros() as usize;
            v = v.xor(basis[bit]);
            res = res.xor(residuals[bit]);
            consider(&v, &res);
        }
        best
    };
    if split == 0 {
        run(0)
    } else {
        (0..1u64 << split).into_par_iter().filter_map(run).min()
    }
}
