use serde::Serialize;

use scf_core::config::{CLUSTER_TOL, RANK_TAU};
use scf_core::document::{to_canonical_json, ChannelDocument};
use scf_core::numerics::spectrum_report;
use scf_core::regularize::{PathScanReport, RegularizationReport};
use scf_core::{ClassCertificate, Result, SpectrumReport, Superoperator};

/// Machine-readable result of one command, printed as canonical JSON.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Vec<String>,
    /// Spectrum of the map the command produced or inspected.
    pub spectrum: SpectrumReport,
    /// Certificate of the same map.
    pub certificates: ClassCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularization: Option<RegularizationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<PathScanReport>,
    /// Output document, embedded when no output file was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<ChannelDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_file: Option<String>,
}

pub fn spectrum_of(s: &Superoperator, gap_tol: f64) -> Result<SpectrumReport> {
    spectrum_report(s.matrix(), CLUSTER_TOL, RANK_TAU, gap_tol)
}

impl ReportDocument {
    pub fn print(&self) {
        println!("{}", to_canonical_json(self));
    }
}
