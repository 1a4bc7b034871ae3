//! Symplectic pairing of the logical and gauge directions of a cyclic code pair.
//!
//! The logical procedure turns the extra rows of C into pairs `(s_x, s_z)` with
//! `s_x[i] . s_z[j] = δ_ij`. The gauge procedure pairs the extra rows of C⊥
//! with the logical-cleaned extra rows of D, producing `(t, t_x, t_z)`.

use serde::{Deserialize, Serialize};

use crate::cyclic::{CyclicCodePair, GeneratorBasis};
use crate::error::{Error, Result};
use crate::gf2::code::LinearCode;
use crate::gf2::BitVector;
use crate::pauli::PauliOperator;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingResult {
    /// X-side logical vectors.
    pub logical_x: Vec<BitVector>,
    /// Z-side logical vectors, paired index by index with `logical_x`.
    pub logical_z: Vec<BitVector>,
    /// Extra rows of D with their logical components removed.
    pub cleaned_d_extra: Vec<BitVector>,
    /// Gauge vectors drawn from C⊥.
    pub gauge_dual: Vec<BitVector>,
    /// X-side partners of `gauge_dual`.
    pub gauge_x: Vec<BitVector>,
    /// Z-side partners of `gauge_dual`.
    pub gauge_z: Vec<BitVector>,
}

/// Pairs the 2k_c - n extra rows of C into logical vectors.
pub fn pair_logical(rows: &[BitVector]) -> Result<(Vec<BitVector>, Vec<BitVector>)> {
    for (i, w) in rows.iter().enumerate() {
        if rows.iter().all(|v| w.dot(v) == 0) {
            return Err(Error::DegeneratePairing(format!("input row {} is orthogonal to every row", i + 1)));
        }
    }
    let mut w = rows.to_vec();
    let mut sx = Vec::new();
    let mut sz = Vec::new();
    while !w.is_empty() {
        if let Some(j) = w.iter().position(|v| v.dot(v) == 1) {
            // self-dual direction: pair the vector with itself
            let wj = w[j];
            sx.push(wj);
            sz.push(wj);
            w = w
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &wk)| if wk.dot(&wj) == 1 { wk + wj } else { wk })
                .collect();
        } else {
            let w1 = w[0];
            let j = w
                .iter()
                .position(|v| w1.dot(v) == 1)
                .ok_or_else(|| Error::DegeneratePairing("remaining row is orthogonal to every other row".into()))?;
            let wj = w[j];
            sx.push(w1);
            sz.push(wj);
            sx.push(wj);
            sz.push(w1);
            let mut next = Vec::with_capacity(w.len() - 2);
            for (k, &wk) in w.iter().enumerate() {
                if k == 0 || k == j {
                    continue;
                }
                let mut v = wk;
                if k > j && wk.dot(&w1) == 1 {
                    v = v + wj;
                }
                if wk.dot(&wj) == 1 {
                    v = v + w1;
                }
                next.push(v);
            }
            w = next;
        }
        let (lx, lz) = (sx.len(), sz.len());
        for v in &w {
            if sx[lx - 1].dot(v) == 1 || sz[lz - 1].dot(v) == 1 {
                return Err(Error::PairingProperty("remaining row not orthogonal to the new logical pair".into()));
            }
        }
    }
    Ok((sx, sz))
}

/// Removes the logical components of each row: q + Σ_l (q . s_x[l]) s_z[l].
pub fn clean_rows(rows: &[BitVector], sx: &[BitVector], sz: &[BitVector]) -> Result<Vec<BitVector>> {
    let mut out = Vec::with_capacity(rows.len());
    for q in rows {
        let a = sx.iter().zip(sz).fold(*q, |acc, (x, z)| if q.dot(x) == 1 { acc + *z } else { acc });
        let b = sx.iter().zip(sz).fold(*q, |acc, (x, z)| if q.dot(z) == 1 { acc + *x } else { acc });
        if a != b {
            return Err(Error::PairingProperty(format!("cleaning {q} depends on which logical side is used")));
        }
        out.push(a);
    }
    Ok(out)
}

/// Pairs the extra rows of C⊥ with the cleaned extra rows of D.
pub fn pair_gauge(
    dual_rows: &[BitVector],
    cleaned: &[BitVector],
) -> Result<(Vec<BitVector>, Vec<BitVector>, Vec<BitVector>)> {
    let n = dual_rows.first().or(cleaned.first()).map_or(0, |v| v.len());
    let dual_span = LinearCode::from_generators(n, dual_rows)?;
    let mut w: Vec<BitVector> = dual_rows.iter().chain(cleaned).copied().collect();
    let (mut t, mut tx, mut tz) = (Vec::new(), Vec::new(), Vec::new());
    while !w.is_empty() {
        let w1 = w[0];
        if !dual_span.contains(&w1)? {
            return Err(Error::PairingProperty(format!("leading row {w1} left the span of the dual rows")));
        }
        if w1.dot(&w1) == 1 {
            return Err(Error::PairingProperty(format!("leading row {w1} is not self-orthogonal")));
        }
        let j = w
            .iter()
            .position(|v| w1.dot(v) == 1)
            .ok_or_else(|| Error::DegeneratePairing(format!("row {w1} is orthogonal to every remaining row")))?;
        let wj = w[j];
        let mut next = Vec::with_capacity(w.len() - 2);
        if wj.dot(&wj) == 0 {
            t.push(w1);
            tx.push(wj);
            tz.push(wj);
            for (k, &wk) in w.iter().enumerate() {
                if k == 0 || k == j {
                    continue;
                }
                let mut v = wk;
                if k > j && wk.dot(&w1) == 1 {
                    v = v + wj;
                }
                if wk.dot(&wj) == 1 {
                    v = v + w1;
                }
                next.push(v);
            }
        } else {
            let sum = w1 + wj;
            t.push(w1);
            tx.push(wj);
            tz.push(sum);
            for (k, &wk) in w.iter().enumerate() {
                if k == 0 || k == j {
                    continue;
                }
                let mut v = wk;
                if wk.dot(&wj) == 1 {
                    v = v + w1;
                }
                if wk.dot(&w1) == 1 {
                    v = v + sum;
                }
                next.push(v);
            }
        }
        w = next;
    }
    Ok((t, tx, tz))
}

/// Runs both procedures and checks every pairing property.
pub fn op_pairing(basis: &GeneratorBasis) -> Result<PairingResult> {
    let (logical_x, logical_z) = pair_logical(&basis.c_extra)?;
    let cleaned_d_extra = clean_rows(&basis.d_extra, &logical_x, &logical_z)?;
    let (gauge_dual, gauge_x, gauge_z) = pair_gauge(&basis.c_dual_extra, &cleaned_d_extra)?;
    let result = PairingResult { logical_x, logical_z, cleaned_d_extra, gauge_dual, gauge_x, gauge_z };
    let failures = result.property_failures(basis)?;
    if !failures.is_empty() {
        return Err(Error::PairingProperty(failures.join(", ")));
    }
    Ok(result)
}

/// Shift-row basis of a pair together with its pairing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingBasis {
    pub rows: GeneratorBasis,
    pub pairing: PairingResult,
}

pub fn build_pairing_basis(pair: &CyclicCodePair) -> Result<PairingBasis> {
    let rows = pair.decompose()?;
    let pairing = op_pairing(&rows)?;
    Ok(PairingBasis { rows, pairing })
}

fn gram_is(a: &[BitVector], b: &[BitVector], expect: impl Fn(usize, usize) -> u8) -> bool {
    a.iter().enumerate().all(|(i, u)| b.iter().enumerate().all(|(j, v)| u.dot(v) == expect(i, j)))
}

fn delta(i: usize, j: usize) -> u8 {
    (i == j) as u8
}

fn zero(_: usize, _: usize) -> u8 {
    0
}

impl PairingResult {
    /// Every pairing property as a (name, holds) pair, in a fixed order.
    pub fn property_checks(&self, basis: &GeneratorBasis) -> Result<Vec<(&'static str, bool)>> {
        let n = basis.n;
        let span = |rows: &[&[BitVector]]| -> Result<LinearCode> { LinearCode::from_generators(n, &rows.concat()) };
        let (q, sx, sz) = (&basis.d_dual, &self.logical_x, &self.logical_z);
        let (t, tx, tz) = (&self.gauge_dual, &self.gauge_x, &self.gauge_z);
        let qp = &self.cleaned_d_extra;

        let p = span(&[&basis.c_extra])?;
        let pq = span(&[&basis.c_dual_extra, qp])?;
        let spans = span(&[sx])? == p
            && span(&[sz])? == p
            && sx.len() == basis.c_extra.len()
            && span(&[t])? == span(&[&basis.c_dual_extra])?
            && t.len() == basis.c_dual_extra.len()
            && span(&[t, tx])? == pq
            && span(&[t, tz])? == pq;

        let c_dual = span(&[q, &basis.c_dual_extra])?;
        let c = span(&[q, &basis.c_dual_extra, &basis.c_extra])?;
        let d = span(&[q, &basis.c_dual_extra, &basis.c_extra, &basis.d_extra])?;
        let rebuild = span(&[q, t])? == c_dual
            && span(&[q, t, sx])? == c
            && span(&[q, t, sz])? == c
            && span(&[q, t, sx, tx])? == d
            && span(&[q, t, sz, tz])? == d;

        let everything: Vec<BitVector> = [q.as_slice(), t, sx, sz, tx, tz].concat();
        Ok(vec![
            ("pairing.spans", spans),
            ("pairing.rebuild-codes", rebuild),
            ("pairing.d-dual-orthogonal", gram_is(q, &everything, zero)),
            ("pairing.gauge-orthogonal", gram_is(t, t, zero) && gram_is(t, sx, zero) && gram_is(t, sz, zero)),
            ("pairing.logical-duality", gram_is(sx, sz, delta)),
            ("pairing.gauge-duality", gram_is(t, tx, delta) && gram_is(t, tz, delta)),
            ("pairing.cross-orthogonal", gram_is(sx, tz, zero) && gram_is(sz, tx, zero)),
            ("pairing.partner-orthogonal", gram_is(tx, tz, zero)),
        ])
    }

    /// Names of the violated pairing properties (empty when all hold).
    pub fn property_failures(&self, basis: &GeneratorBasis) -> Result<Vec<&'static str>> {
        Ok(self.property_checks(basis)?.into_iter().filter(|(_, ok)| !ok).map(|(name, _)| name).collect())
    }

    /// Operators of the initial code that should come in anticommuting pairs:
    /// (X(s_x), Z(s_z)), (X(t), Z(t_z)) and (Z(t), X(t_x)).
    pub fn anticommuting_pairs(&self) -> Vec<(PauliOperator, PauliOperator)> {
        let mut out = Vec::new();
        for (x, z) in self.logical_x.iter().zip(&self.logical_z) {
            out.push((PauliOperator::x_type(*x), PauliOperator::z_type(*z)));
        }
        for (t, tz) in self.gauge_dual.iter().zip(&self.gauge_z) {
            out.push((PauliOperator::x_type(*t), PauliOperator::z_type(*tz)));
        }
        for (t, tx) in self.gauge_dual.iter().zip(&self.gauge_x) {
            out.push((PauliOperator::z_type(*t), PauliOperator::x_type(*tx)));
        }
        out
    }

    /// True when the pair list forms a symplectic basis: each operator
    /// anticommutes with its own partner only.
    pub fn pairs_are_symplectic(&self) -> bool {
        let pairs = self.anticommuting_pairs();
        for (i, (a, b)) in pairs.iter().enumerate() {
            if a.commutes_with(b) {
                return false;
            }
            for (j, (c, d)) in pairs.iter().enumerate() {
                if i != j
                    && (!a.commutes_with(c) || !a.commutes_with(d) || !b.commutes_with(c) || !b.commutes_with(d))
                {
                    return false;
                }
            }
        }
        true
    }
}
