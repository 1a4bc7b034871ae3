//! Synchronizable hybrid subsystem codes built from pairs of cyclic codes.
//!
//! The crate is organised bottom-up:
//! - [`gf2`]: bit vectors, polynomials over GF(2), linear codes and row reduction
//! - [`cyclic`]: cyclic codes, nested pairs C ⊂ D, and pair search
//! - [`pauli`]: Pauli operators and the groups they generate
//! - [`pairing`]: the logical and gauge pairing procedures
//! - [`family`]: the seven code families and their generator layouts
//! - [`css`]: CSS-style constructions from classical codes
//! - [`channel`]: sync tables, the encoding circuit, the channel and the decoder
//! - [`verify`]: named invariant checks shared by the CLI and the test suites

pub mod channel;
pub mod css;
pub mod cyclic;
pub mod error;
pub mod family;
pub mod gf2;
pub mod pairing;
pub mod pauli;
pub mod verify;

pub use error::{Error, Result};
