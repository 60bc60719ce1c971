//! Finite-dimensional quantum channels and Lindbladians: representations,
//! class certificates, spectral diagnosis of non-diagonalizability, and
//! procedures that move any channel or generator to a nearby member of the
//! same class whose eigenvalues are all simple.

pub mod bounds;
pub mod channels;
pub mod config;
pub mod constructions;
pub mod document;
pub mod error;
pub mod numerics;
pub mod regularize;
pub mod sampling;
mod serde_util;

pub use num_complex::Complex64;

pub use channels::{
    certify, ChoiMatrix, ClassCertificate, ClassFlags, KrausSet, MapKind, PauliTransferMatrix, Superoperator,
};
pub use config::Tolerances;
pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, Spectrum, SpectrumReport};
