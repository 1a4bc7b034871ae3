use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::decode::{DecodeReport, Decoder, ResidualClass};
use crate::error::{Error, Result};
use crate::family::ExtendedCodeInstance;
use crate::gf2::BitVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ShiftDistribution {
    Fixed(i32),
    /// Uniform over the inclusive range.
    Uniform { min: i32, max: i32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub p_x: f64,
    pub p_z: f64,
    pub shift: ShiftDistribution,
    /// Allows shifts outside the code's window (negative testing).
    pub adversarial: bool,
}

impl ChannelModel {
    pub fn clean() -> Self {
        ChannelModel { p_x: 0.0, p_z: 0.0, shift: ShiftDistribution::Fixed(0), adversarial: false }
    }

    fn validate(&self, instance: &ExtendedCodeInstance) -> Result<()> {
        for p in [self.p_x, self.p_z] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidSpec(format!("error probability {p} outside [0, 1]")));
            }
        }
        let (lo, hi) = match self.shift {
            ShiftDistribution::Fixed(a) => (a, a),
            ShiftDistribution::Uniform { min, max } if min <= max => (min, max),
            ShiftDistribution::Uniform { min, max } => {
                return Err(Error::InvalidSpec(format!("empty shift range {min}..={max}")))
            }
        };
        let ext = instance.extension;
        let (min, max) =
            if instance.is_extended() { (-(ext.a_l as i32), ext.a_r as i32) } else { (0, 0) };
        if !self.adversarial {
            for alpha in [lo, hi] {
                if alpha < min || alpha > max {
                    return Err(Error::ShiftOutOfRange { alpha, min, max });
                }
            }
        }
        Ok(())
    }
}

/// A transmitted block: the true shift, the Pauli error frame on the
/// extended register and the messages carried by the instance.
#[derive(Debug, Clone)]
pub struct FrameState<'a> {
    pub true_alpha: i32,
    pub e_x: BitVector,
    pub e_z: BitVector,
    pub encoded_b: BitVector,
    pub encoded_c: BitVector,
    pub instance: &'a ExtendedCodeInstance,
    /// Seed for measurement outcomes that are not fixed by the code state.
    pub outcome_seed: u64,
    /// Set when the shift lies outside the code's window.
    pub out_of_window: bool,
}

impl<'a> FrameState<'a> {
    /// A frame with the given shift and error vectors.
    pub fn new(instance: &'a ExtendedCodeInstance, alpha: i32, e_x: BitVector, e_z: BitVector) -> Result<Self> {
        let total = instance.extension.total();
        for v in [&e_x, &e_z] {
            if v.len() != total {
                return Err(Error::LengthMismatch { left: total, right: v.len() });
            }
        }
        let ext = instance.extension;
        let out_of_window = if instance.is_extended() {
            alpha < -(ext.a_l as i32) || alpha > ext.a_r as i32
        } else {
            alpha != 0
        };
        Ok(FrameState {
            true_alpha: alpha,
            e_x,
            e_z,
            encoded_b: instance.message_b,
            encoded_c: instance.message_c,
            instance,
            outcome_seed: 0,
            out_of_window,
        })
    }
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn sample_frame<'a>(instance: &'a ExtendedCodeInstance, channel: &ChannelModel, rng: &mut ChaCha8Rng) -> Result<FrameState<'a>> {
    let alpha = match channel.shift {
        ShiftDistribution::Fixed(a) => a,
        ShiftDistribution::Uniform { min, max } => rng.gen_range(min..=max),
    };
    let total = instance.extension.total();
    let mut e_x = BitVector::zeros(total);
    let mut e_z = BitVector::zeros(total);
    for i in 0..total {
        e_x = e_x.with_bit(i, rng.gen_bool(channel.p_x));
        e_z = e_z.with_bit(i, rng.gen_bool(channel.p_z));
    }
    let mut frame = FrameState::new(instance, alpha, e_x, e_z)?;
    frame.outcome_seed = rng.gen();
    Ok(frame)
}

/// Samples one frame; deterministic in `seed`.
pub fn transmit<'a>(instance: &'a ExtendedCodeInstance, channel: &ChannelModel, seed: u64) -> Result<FrameState<'a>> {
    channel.validate(instance)?;
    sample_frame(instance, channel, &mut trial_rng(seed, 0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub alpha: i32,
    pub x_errors: u32,
    pub z_errors: u32,
    pub recovered_alpha: Option<i32>,
    pub sync_ok: bool,
    pub classical_ok: bool,
    pub quantum_ok: bool,
    pub residual: ResidualClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub schema_version: u32,
    pub code: String,
    pub n: usize,
    pub num_qubits: usize,
    pub a_l: usize,
    pub a_r: usize,
    pub trials: u64,
    pub seed: u64,
    pub p_x: f64,
    pub p_z: f64,
    pub sync_successes: u64,
    pub classical_successes: u64,
    pub quantum_successes: u64,
    pub full_successes: u64,
    pub sync_rate: f64,
    pub classical_rate: f64,
    pub quantum_rate: f64,
    pub full_rate: f64,
}

/// Runs `trials` independent transmissions in parallel. Trial `i` draws from
/// stream `i` of a generator seeded with `seed`, so results do not depend on
/// scheduling.
pub fn simulate(
    instance: &ExtendedCodeInstance,
    decoder: &Decoder,
    channel: &ChannelModel,
    trials: u64,
    seed: u64,
) -> Result<(SimulationSummary, Vec<TrialRecord>)> {
    channel.validate(instance)?;
    let records = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<TrialRecord> {
            let frame = sample_frame(instance, channel, &mut trial_rng(seed, trial))?;
            let report: DecodeReport = decoder.decode(&frame)?;
            Ok(TrialRecord {
                trial,
                alpha: frame.true_alpha,
                x_errors: frame.e_x.weight(),
                z_errors: frame.e_z.weight(),
                recovered_alpha: report.recovered_alpha,
                sync_ok: report.sync_ok,
                classical_ok: report.classical_ok,
                quantum_ok: report.quantum_ok,
                residual: report.residual_class,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let count = |f: fn(&TrialRecord) -> bool| records.iter().filter(|r| f(r)).count() as u64;
    let sync = count(|r| r.sync_ok);
    let classical = count(|r| r.classical_ok);
    let quantum = count(|r| r.quantum_ok);
    let full = count(|r| r.sync_ok && r.classical_ok && r.quantum_ok);
    let rate = |c: u64| if trials == 0 { 0.0 } else { c as f64 / trials as f64 };
    let ext = instance.extension;
    let summary = SimulationSummary {
        schema_version: 1,
        code: instance.kind.to_string(),
        n: ext.n,
        num_qubits: ext.total(),
        a_l: ext.a_l,
        a_r: ext.a_r,
        trials,
        seed,
        p_x: channel.p_x,
        p_z: channel.p_z,
        sync_successes: sync,
        classical_successes: classical,
        quantum_successes: quantum,
        full_successes: full,
        sync_rate: rate(sync),
        classical_rate: rate(classical),
        quantum_rate: rate(quantum),
        full_rate: rate(full),
    };
    Ok((summary, records))
}
