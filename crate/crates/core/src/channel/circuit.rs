use crate::cyclic::CyclicCodePair;
use crate::error::{Error, Result};
use crate::family::{build_code_with, build_initial, CodeSpec, DistanceMode, ExtendedCodeInstance, Family};
use crate::gf2::BitVector;
use crate::pairing::PairingBasis;
use crate::pauli::{PauliGroupSpan, PauliOperator, PhaseMode};

/// Outcome of running the encoder symbolically.
#[derive(Debug, Clone)]
pub struct CircuitReport {
    pub ok: bool,
    pub diffs: Vec<String>,
    pub stabilizers: Vec<PauliOperator>,
    pub gauge: Vec<PauliOperator>,
}

/// Conjugation by CNOT(control, target) on the (x|z) representation.
pub fn apply_cnot(op: &PauliOperator, control: usize, target: usize) -> PauliOperator {
    let (x, z) = (op.x(), op.z());
    let x = x.with_bit(target, x.get(target) ^ x.get(control));
    let z = z.with_bit(control, z.get(control) ^ z.get(target));
    PauliOperator::new(x, z, op.phase()).expect("same length")
}

fn message_operators(instance: &ExtendedCodeInstance) -> Vec<PauliOperator> {
    let n = instance.n();
    let q = &instance.basis.rows.d_extra;
    let combo = |bits: &BitVector, rows: &[BitVector]| {
        rows.iter().take(bits.len()).enumerate().fold(BitVector::zeros(n), |acc, (i, r)| if bits.get(i) { acc + *r } else { acc })
    };
    let Some(family) = instance.family() else { return Vec::new() };
    let mut ops = Vec::new();
    if family.b_len(instance.gap()) > 0 {
        ops.push(PauliOperator::z_type(combo(&instance.message_b, q)));
    }
    match family {
        Family::Q4 | Family::Q6 => ops.push(PauliOperator::x_type(combo(&instance.message_c, &q[1..]))),
        Family::Q5 | Family::Q7 => ops.push(PauliOperator::x_type(combo(&instance.message_c, q))),
        _ => {}
    }
    if family.is_synchronizable() {
        ops.push(PauliOperator::x_type(q[0]));
    }
    ops
}

/// Runs the encoder with the CNOTs in their listed order.
pub fn verify_encoding_circuit(pair: &CyclicCodePair, basis: &PairingBasis, spec: &CodeSpec) -> Result<CircuitReport> {
    let count = spec.a_l + spec.a_r;
    verify_encoding_circuit_with_order(pair, basis, spec, &(0..count).collect::<Vec<_>>())
}

/// Starts from the initial code with +1 phases, applies the message and
/// marker operators, adjoins the ancillas in |0> and applies the CNOTs in
/// `order`, then compares with the family's generator display.
pub fn verify_encoding_circuit_with_order(
    pair: &CyclicCodePair,
    basis: &PairingBasis,
    spec: &CodeSpec,
    order: &[usize],
) -> Result<CircuitReport> {
    let target = build_code_with(pair, basis, spec, DistanceMode::Skip)?;
    let initial = build_initial(pair, basis, spec.family.initial_code(), DistanceMode::Skip)?;
    let ext = target.extension;
    let cnots = ext.cnots();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..cnots.len()).collect::<Vec<_>>() {
        return Err(Error::InvalidSpec(format!("CNOT order must permute 0..{}", cnots.len())));
    }
    let total = ext.total();
    let encode = |ops: &[PauliOperator], ancillas: bool| -> Result<Vec<PauliOperator>> {
        let mut out = Vec::new();
        for op in ops {
            let conj = message_operators(&target).iter().fold(*op, |acc, m| m.conjugate(&acc));
            out.push(conj.embed(ext.a_l, total)?);
        }
        if ancillas {
            let positions = (0..ext.a_l).chain(ext.a_l + ext.n..total);
            out.extend(positions.map(|i| PauliOperator::z_type(BitVector::unit(total, i).expect("in range"))));
        }
        for &k in order {
            let (c, t) = cnots[k];
            out = out.iter().map(|op| apply_cnot(op, c, t)).collect();
        }
        Ok(out)
    };
    let stabilizers = encode(&initial.groups.stabilizers, true)?;
    let gauge = encode(&initial.groups.gauge, false)?;

    let mut diffs = Vec::new();
    let s_engine = PauliGroupSpan::new(total, stabilizers.clone())?;
    let s_target = target.groups.inner_stabilizer();
    if !s_engine.equals(&s_target, PhaseMode::Exact) {
        diffs.push("inner stabilizer spans differ (phase-exact)".to_string());
    }
    let g_engine = PauliGroupSpan::new(total, stabilizers.iter().chain(&gauge).copied().collect())?;
    if !g_engine.equals(&target.groups.inner_gauge(), PhaseMode::Ignore) {
        diffs.push("inner gauge spans differ".to_string());
    }
    if stabilizers.len() != target.groups.stabilizers.len() {
        diffs.push(format!("{} stabilizer rows vs {}", stabilizers.len(), target.groups.stabilizers.len()));
    }
    for (i, (a, b)) in stabilizers.iter().zip(&target.groups.stabilizers).enumerate() {
        if a != b {
            diffs.push(format!("stabilizer {i}: circuit {a} vs display {b}"));
        }
    }
    if gauge.len() != target.groups.gauge.len() {
        diffs.push(format!("{} gauge rows vs {}", gauge.len(), target.groups.gauge.len()));
    }
    for (i, (a, b)) in gauge.iter().zip(&target.groups.gauge).enumerate() {
        if a != b {
            diffs.push(format!("gauge {i}: circuit {a} vs display {b}"));
        }
    }
    Ok(CircuitReport { ok: diffs.is_empty(), diffs, stabilizers, gauge })
}

/// A Z error on an ancilla equals a Z error on its paired block qubit up to
/// a stabilizer with sign +1.
pub fn ancilla_z_equivalence(instance: &ExtendedCodeInstance) -> bool {
    let ext = instance.extension;
    let total = ext.total();
    let s0 = instance.groups.inner_stabilizer();
    let pairs = (0..ext.a_l).map(|i| (i, ext.n + i)).chain((0..ext.a_r).map(|i| (ext.a_l + ext.n + i, ext.a_l + i)));
    pairs.into_iter().all(|(anc, block)| {
        let v = BitVector::unit(total, anc).expect("in range") + BitVector::unit(total, block).expect("in range");
        s0.contains(&PauliOperator::z_type(v), PhaseMode::Exact)
    })
}
