//! Channel data model: representations, conversions and certificates.

mod certify;
mod choi;
mod ptm;
mod superop;

pub use certify::{
    certify, positivity_min_sample, ClassCertificate, ClassFlags, MapKind, POSITIVITY_REFINEMENT_STEPS,
    POSITIVITY_SAMPLES,
};
pub use choi::{ChoiMatrix, KrausSet};
pub use ptm::{pauli, PauliTransferMatrix};
pub use superop::Superoperator;

pub(crate) use certify::Residuals;

/// Any of the supported channel representations.
#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    Superop(Superoperator),
    Choi(ChoiMatrix),
    Kraus(KrausSet),
    Ptm(PauliTransferMatrix),
}

impl Representation {
    pub fn to_superop(&self) -> Superoperator {
        match self {
            Representation::Superop(s) => s.clone(),
            Representation::Choi(c) => c.to_superop(),
            Representation::Kraus(k) => k.to_superop(),
            Representation::Ptm(p) => p.to_superop(),
        }
    }
}

impl From<Superoperator> for Representation {
    fn from(s: Superoperator) -> Self {
        Representation::Superop(s)
    }
}

impl From<ChoiMatrix> for Representation {
    fn from(c: ChoiMatrix) -> Self {
        Representation::Choi(c)
    }
}

impl From<KrausSet> for Representation {
    fn from(k: KrausSet) -> Self {
        Representation::Kraus(k)
    }
}

impl From<PauliTransferMatrix> for Representation {
    fn from(p: PauliTransferMatrix) -> Self {
        Representation::Ptm(p)
    }
}

/// Converts any representation to a superoperator.
pub fn to_superop(x: impl Into<Representation>) -> Superoperator {
    x.into().to_superop()
}
