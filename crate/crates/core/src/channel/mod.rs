//! Transmission, syndrome tables, the encoding circuit and decoding.
//!
//! Simulation is symbolic: the transmitted state is tracked as a Pauli error
//! frame on top of a code state of the instance, and each measurement outcome
//! is a GF(2) function of the frame and the instance's stabilizer phases.

pub mod circuit;
pub mod decode;
pub mod sim;
pub mod tables;

pub use circuit::{ancilla_z_equivalence, verify_encoding_circuit, verify_encoding_circuit_with_order, CircuitReport};
pub use decode::{decode, DecodeReport, Decoder, ResidualClass};
pub use sim::{simulate, transmit, ChannelModel, FrameState, ShiftDistribution, SimulationSummary, TrialRecord};
pub use tables::{build_sync_table, syndrome, CosetLeaderTable, SyncKey, SyncLookupTable, SyncVariant};
