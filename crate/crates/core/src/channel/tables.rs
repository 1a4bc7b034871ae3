use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{ExtendedCodeInstance, Family};
use crate::gf2::BitVector;

/// Component-wise dot products of `word` with each row.
pub fn syndrome(rows: &[BitVector], word: &BitVector) -> Result<BitVector> {
    let mut s = BitVector::zeros(rows.len());
    for (i, r) in rows.iter().enumerate() {
        s = s.with_bit(i, r.try_dot(word)? == 1);
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SyncVariant {
    /// Shift only, marker q_1.
    A,
    /// Message only: a combination of q_1..q_{k_d-k_c}.
    B,
    /// Shift together with the y-bit message carried beside the marker.
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SyncKey {
    pub alpha: i32,
    pub message: BitVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct SyncLookupTable {
    pub variant: SyncVariant,
    /// (syndrome, decoded key) in domain order.
    pub entries: Vec<(BitVector, SyncKey)>,
    #[serde(skip)]
    index: HashMap<BitVector, usize>,
}

impl SyncLookupTable {
    fn from_entries(variant: SyncVariant, entries: Vec<(BitVector, SyncKey)>) -> Result<Self> {
        let mut index = HashMap::with_capacity(entries.len());
        for (i, (s, key)) in entries.iter().enumerate() {
            if let Some(j) = index.insert(*s, i) {
                let other = &entries[j].1;
                return Err(Error::TableCollision(format!(
                    "variant {variant:?}: (alpha={}, message={}) and (alpha={}, message={}) share syndrome {s}",
                    other.alpha, other.message, key.alpha, key.message
                )));
            }
        }
        Ok(SyncLookupTable { variant, entries, index })
    }

    pub fn lookup(&self, syndrome: &BitVector) -> Option<&SyncKey> {
        self.index.get(syndrome).map(|&i| &self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_injective(&self) -> bool {
        self.index.len() == self.entries.len()
    }
}

fn all_messages(len: usize) -> Vec<BitVector> {
    (0..1u128 << len).map(|v| BitVector::from_raw(len, v).expect("fits")).collect()
}

fn combo(bits: &BitVector, rows: &[BitVector], n: usize) -> BitVector {
    rows.iter().take(bits.len()).enumerate().fold(BitVector::zeros(n), |acc, (i, r)| if bits.get(i) { acc + *r } else { acc })
}

/// Syndrome rows restricted to the first k_d - k_c checks of C, or all of them.
fn check_rows(instance: &ExtendedCodeInstance, full: bool) -> Vec<BitVector> {
    let first = &instance.basis.rows.c_dual_extra;
    if !full {
        return first.clone();
    }
    let count = instance.basis.rows.d_dual.len() + first.len();
    (0..count).map(|j| first[0].cyclic_shift(j as i64)).collect()
}

fn table_with_rows(instance: &ExtendedCodeInstance, variant: SyncVariant, rows: &[BitVector]) -> Result<SyncLookupTable> {
    let n = instance.n();
    let gap = instance.gap();
    let q = &instance.basis.rows.d_extra;
    let ext = instance.extension;
    let family = instance.family();
    let shifts: Vec<i32> = (-(ext.a_l as i32)..=ext.a_r as i32).collect();
    let mut entries = Vec::new();
    match variant {
        SyncVariant::A => {
            if !matches!(family, Some(Family::Q2 | Family::Q3)) {
                return Err(Error::InvalidSpec("variant A tables apply to Q2 and Q3".into()));
            }
            for &alpha in &shifts {
                let s = syndrome(rows, &q[0].cyclic_shift(-(alpha as i64)))?;
                entries.push((s, SyncKey { alpha, message: BitVector::zeros(0) }));
            }
        }
        SyncVariant::B => {
            for m in all_messages(gap) {
                let s = syndrome(rows, &combo(&m, q, n))?;
                entries.push((s, SyncKey { alpha: 0, message: m }));
            }
        }
        SyncVariant::C => {
            if !matches!(family, Some(Family::Q4 | Family::Q6)) {
                return Err(Error::InvalidSpec("variant C tables apply to Q4 and Q6".into()));
            }
            for c in all_messages(instance.y) {
                let marker = q[0] + combo(&c, &q[1..], n);
                for &alpha in &shifts {
                    let s = syndrome(rows, &marker.cyclic_shift(-(alpha as i64)))?;
                    entries.push((s, SyncKey { alpha, message: c }));
                }
            }
        }
    }
    SyncLookupTable::from_entries(variant, entries)
}

/// Lookup table over the variant's full domain; fails on any collision.
pub fn build_sync_table(instance: &ExtendedCodeInstance, variant: SyncVariant) -> Result<SyncLookupTable> {
    table_with_rows(instance, variant, &check_rows(instance, false))
}

/// The same table using every check row of C.
pub fn build_full_row_table(instance: &ExtendedCodeInstance, variant: SyncVariant) -> Result<SyncLookupTable> {
    table_with_rows(instance, variant, &check_rows(instance, true))
}

/// The first k_d - k_c check rows separate the domain whenever all rows do.
pub fn reduced_rows_suffice(instance: &ExtendedCodeInstance, variant: SyncVariant) -> bool {
    match build_full_row_table(instance, variant) {
        Ok(_) => build_sync_table(instance, variant).is_ok(),
        Err(_) => true,
    }
}

/// Minimum-weight error per syndrome of a set of check rows. Ties go to the
/// lexicographically smallest support.
#[derive(Debug, Clone)]
pub struct CosetLeaderTable {
    rows: Vec<BitVector>,
    n: usize,
    leaders: Vec<Option<BitVector>>,
}

/// Largest number of check rows indexed directly.
const MAX_TABLE_ROWS: usize = 24;

impl CosetLeaderTable {
    pub fn new(n: usize, rows: &[BitVector]) -> Result<Self> {
        if rows.len() > MAX_TABLE_ROWS {
            return Err(Error::DimensionTooLarge { dim: rows.len(), bound: MAX_TABLE_ROWS });
        }
        let mut leaders = vec![None; 1usize << rows.len()];
        let reachable = 1usize << crate::gf2::linalg::rank(&rows.iter().map(|r| r.bits()).collect::<Vec<_>>());
        let mut filled = 0usize;
        let mut support: Vec<usize> = Vec::new();
        'weights: for w in 0..=n {
            support.clear();
            support.extend(0..w);
            loop {
                let e = support.iter().fold(BitVector::zeros(n), |acc, &i| acc.with_bit(i, true));
                let s = syndrome(rows, &e)?.bits() as usize;
                if leaders[s].is_none() {
                    leaders[s] = Some(e);
                    filled += 1;
                    if filled == reachable {
                        break 'weights;
                    }
                }
                if !next_combination(&mut support, n) {
                    break;
                }
            }
        }
        Ok(CosetLeaderTable { rows: rows.to_vec(), n, leaders })
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leader(&self, syndrome: &BitVector) -> Option<BitVector> {
        self.leaders.get(syndrome.bits() as usize).copied().flatten()
    }
}

/// Advances `c` to the next w-subset of 0..n in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let w = c.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if c[i] < n - w + i {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
