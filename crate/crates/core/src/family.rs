//! The seven code families built from a cyclic pair, their initial codes,
//! gauge fixing between them, and the shifted generator views used to check
//! that misaligned windows see the same stabilizer group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cyclic::CyclicCodePair;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::pairing::PairingBasis;
use crate::pauli::{PauliGroupSpan, PauliOperator, PhaseMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
    Q6,
    Q7,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::Q1, Family::Q2, Family::Q3, Family::Q4, Family::Q5, Family::Q6, Family::Q7];

    /// Families that tolerate a misaligned block boundary.
    pub fn is_synchronizable(self) -> bool {
        matches!(self, Family::Q2 | Family::Q3 | Family::Q4 | Family::Q6)
    }

    /// Families parameterized by the sacrificed sync distance `y`.
    pub fn uses_y(self) -> bool {
        matches!(self, Family::Q4 | Family::Q6)
    }

    /// Length of the X-side message `b` for a pair with the given gap.
    pub fn b_len(self, gap: usize) -> usize {
        match self {
            Family::Q3 | Family::Q4 | Family::Q5 => gap,
            _ => 0,
        }
    }

    /// Length of the Z-side message `c`.
    pub fn c_len(self, gap: usize, y: usize) -> usize {
        match self {
            Family::Q4 | Family::Q6 => y,
            Family::Q5 | Family::Q7 => gap,
            _ => 0,
        }
    }

    /// Largest synchronization distance the family supports.
    pub fn max_sync_distance(self, gap: usize, y: usize) -> usize {
        match self {
            Family::Q2 | Family::Q3 => gap,
            Family::Q4 | Family::Q6 => gap - y,
            Family::Q1 | Family::Q5 | Family::Q7 => 1,
        }
    }

    /// Initial code the encoder starts from.
    pub fn initial_code(self) -> InitialCode {
        match self {
            Family::Q1 => InitialCode::Subsystem,
            Family::Q2 | Family::Q6 | Family::Q7 => InitialCode::ZFixed,
            Family::Q3 | Family::Q4 | Family::Q5 => InitialCode::XzFixed,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse { what: "family", detail: format!("{s:?} (expected Q1..Q7)") })
    }
}

/// The three CSS codes the encoders start from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InitialCode {
    /// Subsystem code with all gauge pairs free (same groups as Q1).
    Subsystem,
    /// Z(t~) fixed: Z(p~) joins the stabilizer.
    ZFixed,
    /// X(t~) fixed as well: a subspace code.
    XzFixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodeKind {
    Family(Family),
    Initial(InitialCode),
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeKind::Family(fam) => write!(f, "{fam}"),
            CodeKind::Initial(InitialCode::Subsystem) => f.write_str("Q0_1"),
            CodeKind::Initial(InitialCode::ZFixed) => f.write_str("Q0_2"),
            CodeKind::Initial(InitialCode::XzFixed) => f.write_str("Q0_3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub family: Family,
    pub a_l: usize,
    pub a_r: usize,
    pub y: usize,
    pub message_b: Option<BitVector>,
    pub message_c: Option<BitVector>,
}

impl CodeSpec {
    pub fn new(family: Family) -> Self {
        CodeSpec { family, a_l: 0, a_r: 0, y: 0, message_b: None, message_c: None }
    }

    pub fn with_shift(mut self, a_l: usize, a_r: usize) -> Self {
        self.a_l = a_l;
        self.a_r = a_r;
        self
    }

    pub fn with_y(mut self, y: usize) -> Self {
        self.y = y;
        self
    }

    pub fn with_b(mut self, b: BitVector) -> Self {
        self.message_b = Some(b);
        self
    }

    pub fn with_c(mut self, c: BitVector) -> Self {
        self.message_c = Some(c);
        self
    }

    /// Checks this `CodeSpec` against the pair; returns the (b, c) messages with
    /// missing ones filled by zeros.
    pub fn validate(&self, pair: &CyclicCodePair) -> Result<(BitVector, BitVector)> {
        let gap = pair.gap();
        let f = self.family;
        let shift = self.a_l + self.a_r;
        if f.uses_y() {
            if gap >= 1 && self.y == gap - 1 {
                return Err(Error::InvalidSpec(format!(
                    "{f} with y = k_d - k_c - 1 = {} degenerates to Q7: the marker X(q_1) can carry one more \
                     classical bit instead; use Q7 (or Q5) for this pair",
                    self.y
                )));
            }
            if self.y < 1 || self.y + 2 > gap {
                return Err(Error::InvalidSpec(format!("{f} needs 1 <= y <= k_d - k_c - 2 = {}", gap as i64 - 2)));
            }
        } else if self.y != 0 {
            return Err(Error::InvalidSpec(format!("{f} takes no y parameter")));
        }
        if f.is_synchronizable() {
            let bound = gap - if f.uses_y() { self.y } else { 0 };
            if shift >= bound {
                return Err(Error::InvalidSpec(format!("{f} needs a_l + a_r < {bound}, got {shift}")));
            }
        } else if shift != 0 {
            return Err(Error::InvalidSpec(format!("{f} is not synchronizable; a_l and a_r must be 0")));
        }
        let n = pair.n();
        let check = |name: &str, msg: &Option<BitVector>, len: usize| -> Result<BitVector> {
            match msg {
                None => Ok(BitVector::zeros(len)),
                Some(v) if v.len() == len => Ok(*v),
                Some(v) if len == 0 && v.is_zero() => Ok(BitVector::zeros(0)),
                Some(v) => Err(Error::InvalidSpec(format!(
                    "{f} message {name} must have length {len}, got {} (n = {n})",
                    v.len()
                ))),
            }
        };
        let b = check("b", &self.message_b, f.b_len(gap))?;
        let c = check("c", &self.message_c, f.c_len(gap, self.y))?;
        Ok((b, c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PauliKind {
    X,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Stabilizer,
    Gauge,
    Translation,
}

/// One generator family entry before the block extension: a pure X or Z
/// operator on the n-qubit block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutRow {
    pub kind: PauliKind,
    pub role: Role,
    pub vector: BitVector,
    pub label: String,
}

/// Placement of the n-qubit block inside the extended register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub n: usize,
    pub a_l: usize,
    pub a_r: usize,
}

impl Extension {
    pub fn total(&self) -> usize {
        self.n + self.a_l + self.a_r
    }

    fn check_alpha(&self, alpha: i32) -> Result<()> {
        if alpha < -(self.a_l as i32) || alpha > self.a_r as i32 {
            return Err(Error::ShiftOutOfRange { alpha, min: -(self.a_l as i32), max: self.a_r as i32 });
        }
        Ok(())
    }

    /// X part seen through a window shifted by `alpha`: the last a_l+alpha
    /// bits of v, then v, then the first a_r-alpha bits of v.
    pub fn x_row(&self, v: &BitVector, alpha: i32) -> Result<BitVector> {
        self.check_alpha(alpha)?;
        let left = (self.a_l as i32 + alpha) as usize;
        let right = (self.a_r as i32 - alpha) as usize;
        v.tail(left).concat(v)?.concat(&v.head(right))
    }

    /// Z part seen through a window shifted by `alpha`: v padded with zeros.
    pub fn z_row(&self, v: &BitVector, alpha: i32) -> Result<BitVector> {
        self.check_alpha(alpha)?;
        v.embed((self.a_l as i32 + alpha) as usize, self.total())
    }

    /// Z rows tying each ancilla to the block qubit that was its CNOT control.
    pub fn ancilla_rows(&self) -> Vec<PauliOperator> {
        let total = self.total();
        let pair = |a: usize, b: usize| {
            let v = BitVector::unit(total, a).expect("in range") + BitVector::unit(total, b).expect("in range");
            PauliOperator::z_type(v)
        };
        let mut rows: Vec<PauliOperator> = (0..self.a_l).map(|i| pair(i, self.n + i)).collect();
        rows.extend((0..self.a_r).map(|i| pair(self.a_l + i, self.a_l + self.n + i)));
        rows
    }

    /// CNOT (control, target) pairs of the encoder, 0-indexed, in encoder order.
    pub fn cnots(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.a_r).map(|i| (self.a_l + i, self.a_l + self.n + i)).collect();
        out.extend((0..self.a_l).rev().map(|i| (self.n + i, i)));
        out
    }
}

/// Generator lists of a (hybrid) subsystem code on `num_qubits` qubits.
///
/// The inner stabilizer group is generated by `stabilizers`; the inner gauge
/// group adds `gauge` and iI. The outer groups are the elements of the inner
/// ones that commute with every translation operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeGroups {
    pub num_qubits: usize,
    pub stabilizers: Vec<PauliOperator>,
    pub gauge: Vec<PauliOperator>,
    pub logicals: Vec<(PauliOperator, PauliOperator)>,
    pub translations: Vec<PauliOperator>,
}

impl CodeGroups {
    pub fn inner_stabilizer(&self) -> PauliGroupSpan {
        PauliGroupSpan::new(self.num_qubits, self.stabilizers.clone()).expect("uniform qubit count")
    }

    pub fn inner_gauge(&self) -> PauliGroupSpan {
        let gens = self.stabilizers.iter().chain(&self.gauge).copied().collect();
        PauliGroupSpan::new(self.num_qubits, gens).expect("uniform qubit count")
    }

    pub fn outer_stabilizer(&self) -> PauliGroupSpan {
        self.inner_stabilizer().commutant_of(&self.translations)
    }

    pub fn outer_gauge(&self) -> PauliGroupSpan {
        self.inner_gauge().commutant_of(&self.translations)
    }

    pub fn translation_group(&self) -> PauliGroupSpan {
        PauliGroupSpan::new(self.num_qubits, self.translations.clone()).expect("uniform qubit count")
    }

    /// Number of gauge qubits r.
    pub fn gauge_qubits(&self) -> usize {
        (self.inner_gauge().rank() - self.inner_stabilizer().rank()) / 2
    }

    /// Number of classical bits m.
    pub fn classical_bits(&self) -> usize {
        self.inner_stabilizer().rank() - self.outer_stabilizer().rank()
    }

    /// Number of logical qubits k.
    pub fn logical_qubits(&self) -> usize {
        self.num_qubits - self.inner_stabilizer().rank() - self.gauge_qubits()
    }

    /// Exhaustive distance: minimum weight of the outer centralizer outside
    /// the inner gauge group.
    pub fn distance(&self) -> Result<Option<u32>> {
        let cs = self.outer_stabilizer().centralizer();
        let g0 = self.inner_gauge();
        if !self.is_css() {
            return cs.min_weight_outside(&g0);
        }
        // a mixed logical outside G0 has an X or Z half outside G0 of no larger weight
        let n = self.num_qubits;
        let mut best: Option<u32> = None;
        for x_side in [true, false] {
            let units = (0..n)
                .map(|i| {
                    let e = BitVector::unit(n, i).expect("in range");
                    if x_side { PauliOperator::x_type(e) } else { PauliOperator::z_type(e) }
                })
                .collect();
            let half = cs.intersection_ignoring_phase(&PauliGroupSpan::new(n, units)?)?;
            if let Some(w) = half.min_weight_outside(&g0)? {
                best = Some(best.map_or(w, |b| b.min(w)));
            }
        }
        Ok(best)
    }

    /// Whether every generator is X-type or Z-type.
    pub fn is_css(&self) -> bool {
        self.stabilizers
            .iter()
            .chain(&self.gauge)
            .chain(&self.translations)
            .all(|g| g.x().is_zero() || g.z().is_zero())
    }

    /// The same distance assembled from the inner centralizer and the
    /// translation cosets: min weight over (C(S0) \ G0) and every nontrivial
    /// coset t·C(S0) with t a product of translation operators.
    pub fn distance_from_cosets(&self) -> Result<Option<u32>> {
        // C(S0) together with every translation coset, searched in one pass;
        // coset elements lie outside C(S0) and so outside G0
        let cs0 = self.inner_stabilizer().centralizer();
        let gens: Vec<PauliOperator> = cs0.generators().iter().chain(&self.translations).copied().collect();
        PauliGroupSpan::new(self.num_qubits, gens)?.min_weight_outside(&self.inner_gauge())
    }

    /// Rank enumerated by `distance_from_cosets`.
    pub fn coset_search_rank(&self) -> usize {
        let cs0 = self.inner_stabilizer().centralizer();
        let gens: Vec<PauliOperator> = cs0.generators().iter().chain(&self.translations).copied().collect();
        PauliGroupSpan::new(self.num_qubits, gens).map(|g| g.rank()).unwrap_or(usize::MAX)
    }

    /// Named structural checks; each entry is (name, holds).
    pub fn structure_checks(&self) -> Vec<(&'static str, bool)> {
        let s0 = self.inner_stabilizer();
        let g0 = self.inner_gauge();
        let s = self.outer_stabilizer();
        let g = self.outer_gauge();
        let mut out = Vec::new();
        out.push(("stabilizer.abelian", s0.is_abelian()));
        out.push(("stabilizer.no-minus-identity", !s0.contains_nontrivial_identity()));
        out.push(("stabilizer.outer-inside-inner", s0.contains_group(&s, PhaseMode::Exact)));
        let all_gauge = self.stabilizers.iter().chain(&self.gauge);
        out.push(("gauge.commutes-with-stabilizer", all_gauge.clone().all(|a| self.stabilizers.iter().all(|b| a.commutes_with(b)))));
        let l = &self.logicals;
        let mut logical_ok = true;
        for (i, (x, z)) in l.iter().enumerate() {
            logical_ok &= !x.commutes_with(z);
            for (j, (x2, z2)) in l.iter().enumerate() {
                if i != j {
                    logical_ok &= x.commutes_with(x2) && x.commutes_with(z2) && z.commutes_with(x2);
                }
            }
            for g in all_gauge.clone().chain(&self.translations) {
                logical_ok &= x.commutes_with(g) && z.commutes_with(g);
            }
        }
        out.push(("logicals.symplectic", logical_ok));
        let t = &self.translations;
        let t_commute = t.iter().all(|a| s.generators().iter().all(|b| a.commutes_with(b)));
        // translations must flip independent sets of inner stabilizer signs
        let cs0 = s0.centralizer();
        let with_t = cs0.join(&self.translation_group()).expect("same size");
        let independent = with_t.rank() - cs0.rank() == t.len();
        out.push(("translations.commute-with-outer", t_commute));
        out.push(("translations.independent", independent));
        // group identities of a hybrid subsystem code (phases ignored)
        let identities = |stab: &PauliGroupSpan, gauge: &PauliGroupSpan| -> bool {
            let cg = gauge.centralizer();
            let center = gauge.intersection_ignoring_phase(&cg).expect("same size");
            let joined = gauge.join(&cg).expect("same size");
            center.equals(stab, PhaseMode::Ignore) && joined.equals(&stab.centralizer(), PhaseMode::Ignore)
        };
        out.push(("groups.inner-identities", identities(&s0, &g0)));
        out.push(("groups.outer-identities", identities(&s, &g)));
        out
    }

    /// Phases of the inner stabilizer generators, one entry per generator.
    pub fn phase_signature(&self) -> Vec<u8> {
        self.stabilizers.iter().map(|s| s.phase()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    /// Total number of physical qubits.
    pub num_qubits: usize,
    pub k: usize,
    pub m: usize,
    pub r: usize,
    pub d: Option<u32>,
    /// True when `d` is the classical distance of D rather than an exhaustive result.
    pub d_claimed: bool,
    pub d_sync: usize,
    pub d_sync_max: usize,
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match (self.d, self.d_claimed) {
            (Some(d), false) => d.to_string(),
            (Some(d), true) => format!("{d}*"),
            (None, _) => "·".into(),
        };
        if self.m == 0 {
            write!(f, "(({},{},{},{}))", self.num_qubits, self.k, self.r, d)
        } else {
            write!(f, "(({},{}:{},{},{}))", self.num_qubits, self.k, self.m, self.r, d)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    /// Exhaustive search when the rank allows, claimed classical distance otherwise.
    Auto,
    /// Leave `d` empty.
    Skip,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtendedCodeInstance {
    pub kind: CodeKind,
    pub extension: Extension,
    pub y: usize,
    pub message_b: BitVector,
    pub message_c: BitVector,
    pub groups: CodeGroups,
    pub params: CodeParameters,
    /// Block-level generator families; absent after gauge fixing.
    pub layout: Option<Vec<LayoutRow>>,
    /// Phase argument of X-type rows (before shifting).
    pub x_phase: BitVector,
    /// Phase argument of Z-type rows (before shifting).
    pub z_phase: BitVector,
    pub basis: PairingBasis,
    /// SHA-256 over the pair polynomials and the basis vectors.
    pub provenance: String,
}

fn labelled(rows: &[BitVector], kind: PauliKind, role: Role, name: &str, offset: usize) -> Vec<LayoutRow> {
    let prefix = match kind {
        PauliKind::X => "X",
        PauliKind::Z => "Z",
    };
    rows.iter()
        .enumerate()
        .map(|(i, v)| LayoutRow { kind, role, vector: *v, label: format!("{prefix}({name}{})", i + 1 + offset) })
        .collect()
}

type AddRows<'a> = dyn FnMut(&[BitVector], PauliKind, Role, &str, usize) + 'a;

/// Block-level generator families of a family or initial code.
pub fn layout_rows(kind: CodeKind, basis: &PairingBasis, y: usize) -> Vec<LayoutRow> {
    use PauliKind::{X, Z};
    use Role::{Gauge, Stabilizer, Translation};
    let r = &basis.rows;
    let p = &basis.pairing;
    let q_tilde = &r.d_dual;
    let p_tilde = &r.c_dual_extra;
    let q_clean = &p.cleaned_d_extra;
    let mut rows = Vec::new();
    let mut add = |v: &[BitVector], k: PauliKind, role: Role, name: &str, offset: usize| {
        rows.extend(labelled(v, k, role, name, offset));
    };
    let subsystem = |add: &mut AddRows| {
        add(q_tilde, X, Stabilizer, "q~", 0);
        add(q_tilde, Z, Stabilizer, "q~", 0);
        add(&p.gauge_dual, X, Gauge, "t~", 0);
        add(&p.gauge_dual, Z, Gauge, "t~", 0);
        add(&p.gauge_x, X, Gauge, "tx", 0);
        add(&p.gauge_z, Z, Gauge, "tz", 0);
    };
    let z_fixed = |add: &mut AddRows| {
        add(q_tilde, X, Stabilizer, "q~", 0);
        add(q_tilde, Z, Stabilizer, "q~", 0);
        add(p_tilde, Z, Stabilizer, "p~", 0);
        add(p_tilde, X, Gauge, "p~", 0);
        add(q_clean, Z, Gauge, "q'", 0);
    };
    let xz_fixed = |add: &mut AddRows| {
        add(q_tilde, X, Stabilizer, "q~", 0);
        add(p_tilde, X, Stabilizer, "p~", 0);
        add(q_tilde, Z, Stabilizer, "q~", 0);
        add(p_tilde, Z, Stabilizer, "p~", 0);
    };
    let y_range = if q_clean.len() > y { &q_clean[1..=y] } else { &q_clean[..0] };
    match kind {
        CodeKind::Initial(InitialCode::Subsystem) | CodeKind::Family(Family::Q1) => subsystem(&mut add),
        CodeKind::Initial(InitialCode::ZFixed) | CodeKind::Family(Family::Q2) => z_fixed(&mut add),
        CodeKind::Initial(InitialCode::XzFixed) => xz_fixed(&mut add),
        CodeKind::Family(Family::Q3) => {
            xz_fixed(&mut add);
            add(q_clean, Z, Translation, "q'", 0);
        }
        CodeKind::Family(Family::Q4) => {
            xz_fixed(&mut add);
            add(q_clean, Z, Translation, "q'", 0);
            add(y_range, X, Translation, "q'", 1);
        }
        CodeKind::Family(Family::Q5) => {
            xz_fixed(&mut add);
            add(q_clean, Z, Translation, "q'", 0);
            add(q_clean, X, Translation, "q'", 0);
        }
        CodeKind::Family(Family::Q6) => {
            z_fixed(&mut add);
            add(y_range, X, Translation, "q'", 1);
        }
        CodeKind::Family(Family::Q7) => {
            z_fixed(&mut add);
            add(q_clean, X, Translation, "q'", 0);
        }
    }
    rows
}

/// Phase arguments (X rows, Z rows) for the family and messages.
pub fn phase_vectors(kind: CodeKind, basis: &PairingBasis, b: &BitVector, c: &BitVector) -> (BitVector, BitVector) {
    let n = basis.rows.n;
    let q = &basis.rows.d_extra;
    let combo = |bits: &BitVector, rows: &[BitVector]| {
        rows.iter().take(bits.len()).enumerate().fold(BitVector::zeros(n), |acc, (i, r)| if bits.get(i) { acc + *r } else { acc })
    };
    let zero = BitVector::zeros(n);
    let Some(q1) = q.first().copied() else { return (zero, zero) };
    let CodeKind::Family(f) = kind else { return (zero, zero) };
    let x = match f {
        Family::Q3 | Family::Q4 | Family::Q5 => combo(b, q),
        _ => zero,
    };
    let z = match f {
        Family::Q1 => zero,
        Family::Q2 | Family::Q3 => q1,
        Family::Q4 | Family::Q6 => q1 + combo(c, &q[1..]),
        Family::Q5 | Family::Q7 => combo(c, q),
    };
    (x, z)
}

/// Stabilizer and gauge generators seen through a window shifted by `alpha`.
#[derive(Debug, Clone)]
pub struct ShiftedView {
    pub alpha: i32,
    pub stabilizers: Vec<PauliOperator>,
    pub gauge: Vec<PauliOperator>,
    /// Z(s^z) rows placed in the same window. Gauge groups of different
    /// shifts agree only modulo these logical operators.
    pub logical_z: Vec<PauliOperator>,
}

fn emit(
    layout: &[LayoutRow],
    ext: &Extension,
    extended: bool,
    x_phase: &BitVector,
    z_phase: &BitVector,
    alpha: i32,
) -> Result<(Vec<PauliOperator>, Vec<PauliOperator>, Vec<PauliOperator>)> {
    let xp = x_phase.cyclic_shift(-(alpha as i64));
    let zp = z_phase.cyclic_shift(-(alpha as i64));
    let (mut stab, mut gauge, mut trans) = (Vec::new(), Vec::new(), Vec::new());
    for row in layout {
        let op = match row.kind {
            PauliKind::X => {
                let v = if extended { ext.x_row(&row.vector, alpha)? } else { row.vector };
                PauliOperator::x_type(v).with_sign(row.role != Role::Translation && row.vector.dot(&xp) == 1)
            }
            PauliKind::Z => {
                let v = if extended { ext.z_row(&row.vector, alpha)? } else { row.vector };
                PauliOperator::z_type(v).with_sign(row.role != Role::Translation && row.vector.dot(&zp) == 1)
            }
        };
        match row.role {
            Role::Stabilizer => stab.push(op),
            Role::Gauge => gauge.push(op),
            Role::Translation => trans.push(op),
        }
    }
    if extended {
        stab.extend(ext.ancilla_rows());
    }
    Ok((stab, gauge, trans))
}

fn provenance(pair: &CyclicCodePair, basis: &PairingBasis) -> String {
    let mut h = Sha256::new();
    h.update(format!("n={};p={};q={}\n", pair.n(), pair.c.generator(), pair.d.generator()));
    let r = &basis.rows;
    let p = &basis.pairing;
    let lists: [&[BitVector]; 10] = [
        &r.d_dual,
        &r.c_dual_extra,
        &r.c_extra,
        &r.d_extra,
        &p.logical_x,
        &p.logical_z,
        &p.cleaned_d_extra,
        &p.gauge_dual,
        &p.gauge_x,
        &p.gauge_z,
    ];
    for list in lists {
        for v in list {
            h.update(v.to_string());
            h.update(",");
        }
        h.update(";");
    }
    hex::encode(h.finalize())
}

fn parameters(groups: &CodeGroups, kind: CodeKind, ext: &Extension, y: usize, gap: usize, d_d: Option<u32>, mode: DistanceMode) -> CodeParameters {
    let (d, d_claimed) = match mode {
        DistanceMode::Skip => (None, false),
        DistanceMode::Auto => match groups.distance() {
            Ok(d) => (d, false),
            Err(_) => (d_d, true),
        },
    };
    let d_sync_max = match kind {
        CodeKind::Family(f) => f.max_sync_distance(gap, y),
        CodeKind::Initial(_) => 1,
    };
    CodeParameters {
        num_qubits: groups.num_qubits,
        k: groups.logical_qubits(),
        m: groups.classical_bits(),
        r: groups.gauge_qubits(),
        d,
        d_claimed,
        d_sync: ext.a_l + ext.a_r + 1,
        d_sync_max,
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    pair: &CyclicCodePair,
    basis: &PairingBasis,
    kind: CodeKind,
    ext: Extension,
    y: usize,
    b: BitVector,
    c: BitVector,
    mode: DistanceMode,
) -> Result<ExtendedCodeInstance> {
    let layout = layout_rows(kind, basis, y);
    let (x_phase, z_phase) = phase_vectors(kind, basis, &b, &c);
    let extended = matches!(kind, CodeKind::Family(f) if f.is_synchronizable());
    let (stabilizers, gauge, translations) = emit(&layout, &ext, extended, &x_phase, &z_phase, 0)?;
    let logicals = basis
        .pairing
        .logical_x
        .iter()
        .zip(&basis.pairing.logical_z)
        .map(|(x, z)| -> Result<(PauliOperator, PauliOperator)> {
            if extended {
                Ok((PauliOperator::x_type(ext.x_row(x, 0)?), PauliOperator::z_type(ext.z_row(z, 0)?)))
            } else {
                Ok((PauliOperator::x_type(*x), PauliOperator::z_type(*z)))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let groups = CodeGroups { num_qubits: ext.total(), stabilizers, gauge, logicals, translations };
    let d_d = if matches!(mode, DistanceMode::Auto) { pair.d.min_distance().ok().flatten() } else { None };
    let params = parameters(&groups, kind, &ext, y, pair.gap(), d_d, mode);
    Ok(ExtendedCodeInstance {
        kind,
        extension: ext,
        y,
        message_b: b,
        message_c: c,
        groups,
        params,
        layout: Some(layout),
        x_phase,
        z_phase,
        basis: basis.clone(),
        provenance: provenance(pair, basis),
    })
}

/// Builds a family member; the distance is searched exhaustively when possible.
pub fn build_code(pair: &CyclicCodePair, basis: &PairingBasis, spec: &CodeSpec) -> Result<ExtendedCodeInstance> {
    build_code_with(pair, basis, spec, DistanceMode::Auto)
}

pub fn build_code_with(
    pair: &CyclicCodePair,
    basis: &PairingBasis,
    spec: &CodeSpec,
    mode: DistanceMode,
) -> Result<ExtendedCodeInstance> {
    if basis.rows.n != pair.n() {
        return Err(Error::LengthMismatch { left: pair.n(), right: basis.rows.n });
    }
    let (b, c) = spec.validate(pair)?;
    let ext = Extension { n: pair.n(), a_l: spec.a_l, a_r: spec.a_r };
    assemble(pair, basis, CodeKind::Family(spec.family), ext, spec.y, b, c, mode)
}

/// Builds one of the n-qubit initial codes with all phases +1.
pub fn build_initial(pair: &CyclicCodePair, basis: &PairingBasis, which: InitialCode, mode: DistanceMode) -> Result<ExtendedCodeInstance> {
    let n = pair.n();
    let ext = Extension { n, a_l: 0, a_r: 0 };
    assemble(pair, basis, CodeKind::Initial(which), ext, 0, BitVector::zeros(0), BitVector::zeros(0), mode)
}

impl ShiftedView {
    pub fn stabilizer_span(&self, num_qubits: usize) -> PauliGroupSpan {
        PauliGroupSpan::new(num_qubits, self.stabilizers.clone()).expect("uniform size")
    }

    pub fn gauge_span(&self, num_qubits: usize) -> PauliGroupSpan {
        PauliGroupSpan::new(num_qubits, self.stabilizers.iter().chain(&self.gauge).copied().collect()).expect("uniform size")
    }

    /// Gauge group joined with the logical Z rows of this window.
    pub fn gauge_modulo_logical_z(&self, num_qubits: usize) -> PauliGroupSpan {
        let gens = self.stabilizers.iter().chain(&self.gauge).chain(&self.logical_z).copied().collect();
        PauliGroupSpan::new(num_qubits, gens).expect("uniform size")
    }
}

impl ExtendedCodeInstance {
    /// Compares the view at `alpha` with the view at 0: (stabilizers equal
    /// phase-exact, gauge groups equal, gauge groups equal modulo logical Z).
    pub fn shift_equivalence(&self, alpha: i32) -> Result<(bool, bool, bool)> {
        let total = self.extension.total();
        let base = self.shifted_generator_view(0)?;
        let view = self.shifted_generator_view(alpha)?;
        let stab = view.stabilizer_span(total).equals(&self.groups.inner_stabilizer(), PhaseMode::Exact)
            && base.stabilizer_span(total).equals(&self.groups.inner_stabilizer(), PhaseMode::Exact);
        let gauge = view.gauge_span(total).equals(&self.groups.inner_gauge(), PhaseMode::Ignore);
        let modulo = view.gauge_modulo_logical_z(total).equals(&base.gauge_modulo_logical_z(total), PhaseMode::Ignore);
        Ok((stab, gauge, modulo))
    }

    pub fn n(&self) -> usize {
        self.extension.n
    }

    pub fn family(&self) -> Option<Family> {
        match self.kind {
            CodeKind::Family(f) => Some(f),
            CodeKind::Initial(_) => None,
        }
    }

    pub fn is_extended(&self) -> bool {
        self.family().is_some_and(|f| f.is_synchronizable())
    }

    pub fn gap(&self) -> usize {
        self.basis.rows.c_dual_extra.len()
    }

    /// Generators seen by a receiver whose window is shifted by `alpha`.
    pub fn shifted_generator_view(&self, alpha: i32) -> Result<ShiftedView> {
        let layout = self
            .layout
            .as_ref()
            .ok_or_else(|| Error::InvalidSpec("gauge-fixed instances carry no generator layout".into()))?;
        let ext = if self.is_extended() { self.extension } else { Extension { a_l: 0, a_r: 0, ..self.extension } };
        ext.check_alpha(alpha)?;
        let (stabilizers, gauge, _) = emit(layout, &ext, self.is_extended(), &self.x_phase, &self.z_phase, alpha)?;
        let logical_z = self
            .basis
            .pairing
            .logical_z
            .iter()
            .map(|v| Ok(PauliOperator::z_type(if self.is_extended() { ext.z_row(v, alpha)? } else { *v })))
            .collect::<Result<Vec<_>>>()?;
        Ok(ShiftedView { alpha, stabilizers, gauge, logical_z })
    }

    /// r + m + d_sync_max against 2(k_d - k_c), plus one for non-synchronizable codes.
    pub fn tradeoff_check(&self) -> bool {
        let p = &self.params;
        let target = 2 * self.gap() + usize::from(!self.is_extended());
        p.r + p.m + p.d_sync_max == target
    }

    /// Parameters the family row predicts: (N, k, m, r).
    pub fn predicted_parameters(&self) -> (usize, usize, usize, usize) {
        let n = self.n();
        let gap = self.gap();
        let k = self.basis.rows.c_extra.len();
        let nn = self.extension.total();
        let y = self.y;
        match self.kind {
            CodeKind::Family(Family::Q1) | CodeKind::Initial(InitialCode::Subsystem) => (n, k, 0, 2 * gap),
            CodeKind::Family(Family::Q2) => (nn, k, 0, gap),
            CodeKind::Family(Family::Q3) => (nn, k, gap, 0),
            CodeKind::Family(Family::Q4) => (nn, k, gap + y, 0),
            CodeKind::Family(Family::Q5) => (n, k, 2 * gap, 0),
            CodeKind::Family(Family::Q6) => (nn, k, y, gap),
            CodeKind::Family(Family::Q7) => (n, k, gap, gap),
            CodeKind::Initial(InitialCode::ZFixed) => (n, k, 0, gap),
            CodeKind::Initial(InitialCode::XzFixed) => (n, k, 0, 0),
        }
    }

    pub fn parameters_match_prediction(&self) -> bool {
        let p = &self.params;
        (p.num_qubits, p.k, p.m, p.r) == self.predicted_parameters()
    }
}

/// Gauge operators that can be promoted to stabilizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaugeFix {
    /// Z(t~_j) on the subsystem initial code.
    ZTtilde,
    /// X(t~_j) on the Z-fixed initial code.
    XTtilde,
    /// Extended X(p~_j), turning Q6 into Q4 and Q7 into Q5.
    XPtildeExtended,
}

/// Promotes the chosen gauge operators to stabilizers (with sign +1). Their
/// partners leave the gauge group; for the hybrid conversions they become
/// translation operators.
pub fn gauge_fix(instance: &ExtendedCodeInstance, which: GaugeFix) -> Result<ExtendedCodeInstance> {
    let basis = &instance.basis;
    let (ops, target, to_translations): (Vec<PauliOperator>, CodeKind, bool) = match which {
        GaugeFix::ZTtilde => (
            basis.pairing.gauge_dual.iter().map(|v| PauliOperator::z_type(*v)).collect(),
            CodeKind::Initial(InitialCode::ZFixed),
            false,
        ),
        GaugeFix::XTtilde => (
            basis.pairing.gauge_dual.iter().map(|v| PauliOperator::x_type(*v)).collect(),
            CodeKind::Initial(InitialCode::XzFixed),
            false,
        ),
        GaugeFix::XPtildeExtended => {
            let target = match instance.kind {
                CodeKind::Family(Family::Q6) => CodeKind::Family(Family::Q4),
                CodeKind::Family(Family::Q7) => CodeKind::Family(Family::Q5),
                other => {
                    return Err(Error::OperatorNotGauge(format!("extended X(p~) fixing applies to Q6 and Q7, not {other}")))
                }
            };
            let ext = instance.extension;
            let ops = basis
                .rows
                .c_dual_extra
                .iter()
                .map(|v| -> Result<PauliOperator> {
                    let row = if instance.is_extended() { ext.x_row(v, 0)? } else { *v };
                    Ok(PauliOperator::x_type(row))
                })
                .collect::<Result<Vec<_>>>()?;
            (ops, target, true)
        }
    };
    let groups = &instance.groups;
    let s0 = groups.inner_stabilizer();
    let g0 = groups.inner_gauge();
    for op in &ops {
        if op.num_qubits() != groups.num_qubits || !g0.contains(op, PhaseMode::Ignore) {
            return Err(Error::OperatorNotGauge(format!("{op} is not in the gauge group")));
        }
        if s0.contains(op, PhaseMode::Ignore) {
            return Err(Error::OperatorNotGauge(format!("{op} is already a stabilizer")));
        }
    }
    let mut stabilizers = groups.stabilizers.clone();
    stabilizers.extend(ops.iter().copied());
    let new_gauge = g0.commutant_of(&ops);
    let mut translations = groups.translations.clone();
    if to_translations {
        // partners: old gauge generators outside the new gauge group, kept independent
        let mut span = new_gauge.clone();
        for g in &groups.gauge {
            if !span.contains(g, PhaseMode::Ignore) {
                translations.push(g.with_phase(0));
                span = span.join(&PauliGroupSpan::new(groups.num_qubits, vec![*g])?)?;
            }
        }
    }
    let s_new = PauliGroupSpan::new(groups.num_qubits, stabilizers.clone())?;
    let gauge: Vec<PauliOperator> =
        new_gauge.generators().iter().filter(|g| !s_new.contains(g, PhaseMode::Ignore)).copied().collect();
    let fixed = CodeGroups { num_qubits: groups.num_qubits, stabilizers, gauge, logicals: groups.logicals.clone(), translations };
    let y = if target == CodeKind::Family(Family::Q4) { instance.y } else { 0 };
    let params = parameters(&fixed, target, &instance.extension, y, instance.gap(), None, DistanceMode::Skip);
    let message_b = match target {
        CodeKind::Family(f) => BitVector::zeros(f.b_len(instance.gap())),
        CodeKind::Initial(_) => BitVector::zeros(0),
    };
    Ok(ExtendedCodeInstance {
        kind: target,
        extension: instance.extension,
        y,
        message_b,
        message_c: instance.message_c,
        groups: fixed,
        params,
        layout: None,
        x_phase: BitVector::zeros(instance.n()),
        z_phase: instance.z_phase,
        basis: instance.basis.clone(),
        provenance: instance.provenance.clone(),
    })
}

/// Every admissible spec of a family for the pair, with zero messages.
pub fn admissible_specs(pair: &CyclicCodePair, family: Family) -> Vec<CodeSpec> {
    let gap = pair.gap();
    let mut out = Vec::new();
    let ys: Vec<usize> = if family.uses_y() { (1..gap.saturating_sub(1)).collect() } else { vec![0] };
    for y in ys {
        let bound = if family.is_synchronizable() { gap - y } else { 1 };
        for total in 0..bound {
            for a_l in 0..=total {
                out.push(CodeSpec::new(family).with_shift(a_l, total - a_l).with_y(y));
            }
        }
    }
    out
}
