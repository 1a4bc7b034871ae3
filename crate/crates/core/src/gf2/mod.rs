pub mod bitvec;
pub mod code;
pub mod linalg;
pub mod poly;

pub use bitvec::BitVector;
pub use code::LinearCode;
pub use poly::{BinaryPolynomial, Degree};
