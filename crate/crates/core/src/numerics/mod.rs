//! Dense complex linear-algebra kernels.

mod eig;
mod expm;
mod hermitian;
mod lu;
mod matrix;
mod spectrum;
mod svd;

pub use eig::{eig, eigenvalues, RESIDUAL_TOL};
pub use expm::{expm, THETA_13};
pub use hermitian::{eigh, min_eigh, psd_sqrt_and_inv, HermitianEigen};
pub use lu::det;
pub use matrix::{ComplexMatrix, I, ONE, ZERO};
pub use spectrum::{
    cluster, greedy_match, min_gap, multiset_distance, multisets_match, spectrum_report, Cluster, ClusterReport,
    Spectrum, SpectrumReport,
};
pub use svd::{op_norm, rank_tol, singular_values, svd_norms, trace_norm, Norms};

