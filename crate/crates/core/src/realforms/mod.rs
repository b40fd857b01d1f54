//! Automorphism matrices `D`, `D'`, `D''`, the conjugations they generate,
//! and the real forms those conjugations select.

mod autos;
mod classify;
mod count;
mod spec;
mod witness;

use thiserror::Error;

pub use autos::{
    canonical_d, check_auto_conditions, check_reality, enumerate_autos, square_sign, AutoCertificate, AutoCondition,
    AutoFamily, AutoMatrix, Base, FamilyKind, Sign, SignVector,
};
pub use classify::{
    classify, plane_conjugation_matrix, signature_in_basis, Classification, RealFormKind, RealFormLabel,
};
pub use count::{count_real_forms, enumerate_specs, expected_count, RealFormClass, RealFormCount};
pub use spec::{parse_autos, ConjugationSpec};
pub use witness::{
    builtin_witnesses, check_equivalence_witness, check_sostar, dsecond_reduction_witness, dsecond_unit_witness,
    odd_sharp_witness, pairing_witness, scaled_m_second, sigma_witness, symplectic_j, SoStarReport, WitnessCertificate,
    WitnessEntry, WitnessLevel,
};

use crate::check::Mismatch;
use crate::linalg::LinalgError;
use crate::rmatrix::RMatrixError;
use crate::scalars::{ConjRegime, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealFormsError {
    #[error("N must be at least 3, got {0}")]
    BadN(usize),
    #[error("D'' matrices exist only for even N")]
    BadFamily,
    #[error("invalid sign vector {0:?}")]
    BadSignVector(String),
    #[error("base {base} requires the other regime than {regime}")]
    RegimeMismatch { base: Base, regime: ConjRegime },
    #[error("invalid conjugation spec: {0}")]
    BadSpec(String),
    #[error("condition {condition} failed")]
    ConditionFailed {
        condition: AutoCondition,
        witness: Option<Box<Mismatch>>,
    },
    #[error("composed automorphism squares to -1; no plane conjugation")]
    NoPlaneConjugation,
    #[error("conjugation cannot be classified")]
    Unclassifiable,
    #[error("witness matrix is not an automorphism")]
    WitnessNotAutomorphism,
    #[error("witness identity failed")]
    IdentityFailed(Option<Box<Mismatch>>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<RMatrixError> for RealFormsError {
    fn from(e: RMatrixError) -> Self {
        match e {
            RMatrixError::BadN(n) => RealFormsError::BadN(n),
            RMatrixError::Linalg(l) => RealFormsError::Linalg(l),
        }
    }
}
