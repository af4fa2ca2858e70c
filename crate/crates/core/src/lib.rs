//! Two-dimensional quasi-cyclic LDPC codes built by stacking `p x p x p`
//! permutation tensors.
//!
//! The crate constructs the parity-check tensor of three code families
//! ([`construct`]), unfolds it to an ordinary parity-check matrix and audits
//! it ([`graph`]), certifies and simulates burst-erasure recovery
//! ([`erasure`]), and derives entanglement-assisted quantum CSS codes from it
//! ([`quantum`]). All matrix algebra is dense GF(2) ([`gf2`]).
//!
//! ```
//! use qc2d::construct::{default_config, prime_family, Family, GridDims};
//! use qc2d::graph::{girth, BlockTensor};
//!
//! let cfg = default_config(Family::Prime, GridDims::prime(3)?, None)?;
//! let tensor = BlockTensor::new(prime_family(3, &cfg)?);
//! let h = tensor.unfold();
//! assert_eq!((h.rows(), h.cols()), (27, 81));
//! assert!(girth(&h).exceeds(4));
//! # Ok::<(), qc2d::Error>(())
//! ```

pub mod alist;
pub mod cli;
pub mod construct;
pub mod erasure;
mod error;
pub mod gf2;
pub mod graph;
pub mod manifest;
pub mod quantum;
pub mod tensor;

pub use error::{Error, Result};
