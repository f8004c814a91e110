//! Rank estimates, uncertainty-principle thresholds and generic-signal
//! representability experiments for redundant dictionaries.
//!
//! All numerical code is generic over the real scalar type (`f32` or `f64`)
//! and operates on complex matrices. [`Dictionary64`] and friends fix the
//! scalar to `f64`, which is what the experiments and the CLI use.

pub mod dictionary;
pub mod error;
pub mod gap_bounds;
pub mod generic_experiments;
pub mod linalg;
pub mod random_sets;
pub mod rng;
pub mod scalar;
pub mod schatten_rank;

pub use dictionary::{AtomSet, Dictionary, DictionaryKind, Provenance};
pub use error::{Error, Result};
pub use scalar::{CMatrix, CVector, Real};

pub type Dictionary64 = Dictionary<f64>;
pub type Dictionary32 = Dictionary<f32>;
pub type CMatrix64 = CMatrix<f64>;
pub type CVector64 = CVector<f64>;
