//! Quantum orthogonal planes as quadratic rewriting systems.

mod plane;
mod poly;
mod rewrite;

use thiserror::Error;

pub use plane::{
    check_star_consistency, conj_poly, plane_relations, quotient_check, quotient_check_with, quotient_system,
    QuotientReport, QuotientSign, StarFailure, StarReport,
};
pub use poly::{NcPoly, Word};
pub use rewrite::{check_confluence, complete, normal_form, Confluence, OverlapWitness, RewriteSystem};

use crate::rmatrix::RMatrixError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QPlaneError {
    #[error("N must be at least 3, got {0}")]
    BadN(usize),
    #[error("extracted {rules} rules but rank(P_A) = {rank}")]
    RankMismatch { rules: usize, rank: usize },
    #[error("completion did not terminate within {0} rounds")]
    CompletionFailed(usize),
    #[error(transparent)]
    RMatrix(RMatrixError),
}

impl From<RMatrixError> for QPlaneError {
    fn from(e: RMatrixError) -> Self {
        match e {
            RMatrixError::BadN(n) => QPlaneError::BadN(n),
            other => QPlaneError::RMatrix(other),
        }
    }
}
