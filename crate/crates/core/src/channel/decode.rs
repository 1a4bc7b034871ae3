use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sim::FrameState;
use super::tables::{build_sync_table, CosetLeaderTable, SyncLookupTable, SyncVariant};
use crate::error::{Error, Result};
use crate::family::{Extension, ExtendedCodeInstance, Family};
use crate::gf2::BitVector;
use crate::pauli::{PauliGroupSpan, PauliOperator, PhaseMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualClass {
    Identity,
    Stabilizer,
    Gauge,
    LogicalFailure,
    /// Decoding stopped before Pauli correction (synchronization failed).
    NotReached,
}

impl ResidualClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ResidualClass::Identity => "identity",
            ResidualClass::Stabilizer => "stabilizer",
            ResidualClass::Gauge => "gauge",
            ResidualClass::LogicalFailure => "logical-failure",
            ResidualClass::NotReached => "not-reached",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodeReport {
    pub recovered_alpha: Option<i32>,
    pub recovered_b: Option<BitVector>,
    pub recovered_c: Option<BitVector>,
    /// Product of every correction applied, in physical coordinates.
    pub correction: PauliOperator,
    pub residual_class: ResidualClass,
    pub sync_ok: bool,
    pub classical_ok: bool,
    pub quantum_ok: bool,
    /// Reason decoding stopped early.
    pub failure: Option<String>,
}

impl DecodeReport {
    pub fn success(&self) -> bool {
        self.sync_ok && self.classical_ok && self.quantum_ok
    }
}

/// Tables for one code spec; reusable across frames and messages.
#[derive(Debug, Clone)]
pub struct Decoder {
    family: Family,
    extension: Extension,
    q_tilde: Vec<BitVector>,
    p_tilde: Vec<BitVector>,
    leaders: CosetLeaderTable,
    sync_table: Option<SyncLookupTable>,
    message_table: Option<SyncLookupTable>,
}

/// Measurement outcomes on the current error frame.
struct Oracle {
    total: usize,
    s0: PauliGroupSpan,
    e_x: BitVector,
    e_z: BitVector,
    rng: ChaCha8Rng,
}

impl Oracle {
    /// Places `v` at `offset`; `None` when part of it leaves the register.
    fn place(&self, v: &BitVector, offset: i64) -> Option<BitVector> {
        let mut out = BitVector::zeros(self.total);
        for i in v.support() {
            let p = offset + i as i64;
            if p < 0 || p >= self.total as i64 {
                return None;
            }
            out = out.with_bit(p as usize, true);
        }
        Some(out)
    }

    /// Outcome bit (1 for eigenvalue -1) of measuring a Hermitian Pauli.
    fn measure(&mut self, op: Option<PauliOperator>) -> bool {
        let Some(op) = op else { return self.rng.gen() };
        match self.s0.element_for(&op) {
            Some(elem) => {
                let sign = elem.phase() != op.phase();
                let flip = (op.x().dot(&self.e_z) ^ op.z().dot(&self.e_x)) == 1;
                sign ^ flip
            }
            // not fixed by the code state: a fair coin
            None => self.rng.gen(),
        }
    }

    fn measure_z_rows(&mut self, rows: &[BitVector], offset: i64) -> BitVector {
        let mut s = BitVector::zeros(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let op = self.place(r, offset).map(PauliOperator::z_type);
            s = s.with_bit(i, self.measure(op));
        }
        s
    }

    fn measure_ops(&mut self, ops: &[PauliOperator]) -> BitVector {
        let mut s = BitVector::zeros(ops.len());
        for (i, op) in ops.iter().enumerate() {
            s = s.with_bit(i, self.measure(Some(*op)));
        }
        s
    }

    /// Applies X or Z on the in-register part of `v` placed at `offset`.
    fn correct(&mut self, v: &BitVector, offset: i64, x_type: bool, record: &mut PauliOperator) {
        let mut c = BitVector::zeros(self.total);
        for i in v.support() {
            let p = offset + i as i64;
            if (0..self.total as i64).contains(&p) {
                c = c.with_bit(p as usize, true);
            }
        }
        let op = if x_type {
            self.e_x = self.e_x + c;
            PauliOperator::x_type(c)
        } else {
            self.e_z = self.e_z + c;
            PauliOperator::z_type(c)
        };
        *record = record.mul(&op);
    }
}

impl Decoder {
    pub fn new(instance: &ExtendedCodeInstance) -> Result<Self> {
        let family = instance
            .family()
            .ok_or_else(|| Error::InvalidSpec(format!("{} is not a family member", instance.kind)))?;
        let rows = &instance.basis.rows;
        let leaders = CosetLeaderTable::new(instance.n(), &rows.d_dual)?;
        let sync_table = match family {
            Family::Q2 | Family::Q3 => Some(build_sync_table(instance, SyncVariant::A)?),
            Family::Q4 | Family::Q6 => Some(build_sync_table(instance, SyncVariant::C)?),
            _ => None,
        };
        let message_table = match family {
            Family::Q3 | Family::Q4 | Family::Q5 | Family::Q7 => Some(build_sync_table(instance, SyncVariant::B)?),
            _ => None,
        };
        Ok(Decoder {
            family,
            extension: instance.extension,
            q_tilde: rows.d_dual.clone(),
            p_tilde: rows.c_dual_extra.clone(),
            leaders,
            sync_table,
            message_table,
        })
    }

    pub fn sync_table(&self) -> Option<&SyncLookupTable> {
        self.sync_table.as_ref()
    }

    pub fn message_table(&self) -> Option<&SyncLookupTable> {
        self.message_table.as_ref()
    }

    fn window_x_correction(&self, oracle: &mut Oracle, offset: i64, record: &mut PauliOperator) {
        let s = oracle.measure_z_rows(&self.q_tilde, offset);
        if let Some(e) = self.leaders.leader(&s) {
            oracle.correct(&e, offset, true, record);
        }
    }

    fn lookup_message(&self, s: &BitVector) -> Option<BitVector> {
        self.message_table.as_ref().and_then(|t| t.lookup(s)).map(|k| k.message)
    }

    pub fn decode(&self, frame: &FrameState<'_>) -> Result<DecodeReport> {
        let instance = frame.instance;
        if instance.family() != Some(self.family) || instance.extension != self.extension {
            return Err(Error::InvalidSpec("frame instance does not match the decoder".into()));
        }
        let ext = self.extension;
        let total = ext.total();
        let extended = self.family.is_synchronizable();
        let mut oracle = Oracle {
            total,
            s0: instance.groups.inner_stabilizer(),
            e_x: frame.e_x,
            e_z: frame.e_z,
            rng: ChaCha8Rng::seed_from_u64(frame.outcome_seed),
        };
        let mut correction = PauliOperator::identity(total);
        let mut report = DecodeReport {
            recovered_alpha: None,
            recovered_b: None,
            recovered_c: None,
            correction,
            residual_class: ResidualClass::NotReached,
            sync_ok: false,
            classical_ok: false,
            quantum_ok: false,
            failure: None,
        };
        let alpha = frame.true_alpha as i64;
        let mut c_from_sync = None;

        if extended {
            // the receiver's window starts a_l + alpha qubits into the register
            let window = ext.a_l as i64 + alpha;
            self.window_x_correction(&mut oracle, window, &mut correction);
            let s = oracle.measure_z_rows(&self.p_tilde, window);
            let table = self.sync_table.as_ref().expect("synchronizable families carry a sync table");
            let Some(key) = table.lookup(&s) else {
                report.correction = correction;
                report.failure = Some(format!("uncorrectable synchronization: syndrome {s} not in table"));
                return Ok(report);
            };
            report.recovered_alpha = Some(key.alpha);
            if self.family.uses_y() {
                c_from_sync = Some(key.message);
            }
        } else {
            // no synchronization step: the receiver assumes alignment
            report.recovered_alpha = Some(0);
        }
        if report.recovered_alpha != Some(frame.true_alpha) {
            report.correction = correction;
            report.failure = Some(format!(
                "synchronization failure: recovered alpha {} but true alpha {}",
                report.recovered_alpha.unwrap_or_default(),
                frame.true_alpha
            ));
            return Ok(report);
        }
        report.sync_ok = true;

        // X correction on the two overlapping n-qubit windows
        self.window_x_correction(&mut oracle, 0, &mut correction);
        if extended && ext.a_l + ext.a_r > 0 {
            self.window_x_correction(&mut oracle, (ext.a_l + ext.a_r) as i64, &mut correction);
        }

        // Z correction from the extended X(q~) syndromes
        let ext_rows = |rows: &[BitVector]| -> Result<Vec<PauliOperator>> {
            rows.iter()
                .map(|v| Ok(PauliOperator::x_type(if extended { ext.x_row(v, 0)? } else { *v })))
                .collect()
        };
        let s = oracle.measure_ops(&ext_rows(&self.q_tilde)?);
        if let Some(e) = self.leaders.leader(&s) {
            oracle.correct(&e, ext.a_l as i64, false, &mut correction);
        }

        let gap = self.p_tilde.len();
        let b_len = self.family.b_len(gap);
        if b_len > 0 {
            let s = oracle.measure_ops(&ext_rows(&self.p_tilde)?);
            report.recovered_b = self.lookup_message(&s);
        }
        report.recovered_c = match self.family {
            Family::Q4 | Family::Q6 => c_from_sync,
            Family::Q5 | Family::Q7 => {
                let s = oracle.measure_z_rows(&self.p_tilde, 0);
                self.lookup_message(&s)
            }
            _ => None,
        };
        let b_ok = b_len == 0 || report.recovered_b == Some(frame.encoded_b);
        let c_ok = frame.encoded_c.is_empty() || report.recovered_c == Some(frame.encoded_c);
        report.classical_ok = b_ok && c_ok;

        let residual = PauliOperator::new(oracle.e_x, oracle.e_z, 0)?;
        report.residual_class = if residual.is_identity_up_to_phase() {
            ResidualClass::Identity
        } else if oracle.s0.contains(&residual, PhaseMode::Ignore) {
            ResidualClass::Stabilizer
        } else if instance.groups.inner_gauge().contains(&residual, PhaseMode::Ignore) {
            ResidualClass::Gauge
        } else {
            ResidualClass::LogicalFailure
        };
        report.quantum_ok = report.residual_class != ResidualClass::LogicalFailure;
        report.correction = correction;
        Ok(report)
    }
}

/// Builds the decoder for the frame's instance and decodes once.
pub fn decode(frame: &FrameState<'_>) -> Result<DecodeReport> {
    Decoder::new(frame.instance)?.decode(frame)
}
