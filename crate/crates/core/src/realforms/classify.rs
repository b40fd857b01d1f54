use std::fmt;

use serde::Serialize;

use super::autos::{square_sign, Base};
use super::spec::ConjugationSpec;
use super::witness::{check_sostar, SoStarReport};
use super::RealFormsError;
use crate::linalg::{antilinear_fixed_basis, signature, Signature, SqMat};
use crate::rmatrix::RData;
use crate::scalars::ConjRegime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealFormKind {
    /// `l >= m`.
    SO {
        l: usize,
        m: usize,
    },
    SOStar(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RealFormLabel {
    pub kind: RealFormKind,
    pub regime: ConjRegime,
}

impl fmt::Display for RealFormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RealFormKind::SO { l, m } => write!(f, "SO({l},{m})"),
            RealFormKind::SOStar(n) => write!(f, "SO*({n})"),
        }
    }
}

impl Serialize for RealFormLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub label: RealFormLabel,
    /// Raw signature of the metric in the real basis (orthogonal case only).
    pub signature: Option<Signature>,
    /// `K bar(K) = I` for the full q-dependent `K`, under the spec's regime.
    pub symbolic_involution: Option<bool>,
    /// The real basis `M` at `q = 1`.
    pub basis: Option<SqMat>,
    pub sostar: Option<SoStarReport>,
}

/// `K` with `x* = K x` on the quantum plane: `C^t G` for `*`, `G` for `x`.
pub fn plane_conjugation_matrix(spec: &ConjugationSpec, rdata: &RData) -> Result<SqMat, RealFormsError> {
    let g = spec.composed();
    if square_sign(&g)? != Some(1) {
        return Err(RealFormsError::NoPlaneConjugation);
    }
    match spec.base {
        Base::Star => Ok(rdata.metric_t().matmul(&g)?),
        Base::Cross => Ok(g),
    }
}

/// Signature of `(M^-1)^t C M^-1`, the metric in the coordinates `x' = M x`.
pub fn signature_in_basis(c: &SqMat, m: &SqMat) -> Result<Signature, RealFormsError> {
    let minv = m.inverse()?;
    let s = SqMat::product(&[&minv.transpose(), c, &minv])?;
    Ok(signature(&s)?)
}

pub fn classify(spec: &ConjugationSpec, rdata: &RData) -> Result<Classification, RealFormsError> {
    let n = rdata.dim();
    let g = spec.composed();
    match square_sign(&g)? {
        Some(1) => {
            let k = plane_conjugation_matrix(spec, rdata)?;
            let symbolic = k.matmul(&k.bar(spec.regime))?.is_identity();
            let k1 = k.classical_limit()?;
            let m = antilinear_fixed_basis(&k1, spec.regime)?;
            let sig = signature_in_basis(&rdata.metric.classical_limit()?, &m)?;
            let (l, m_) = (sig.positive.max(sig.negative), sig.positive.min(sig.negative));
            Ok(Classification {
                label: RealFormLabel {
                    kind: RealFormKind::SO { l, m: m_ },
                    regime: spec.regime,
                },
                signature: Some(sig),
                symbolic_involution: Some(symbolic),
                basis: Some(m),
                sostar: None,
            })
        }
        Some(-1) if spec.base == Base::Star && n.is_multiple_of(2) => {
            let report = check_sostar(rdata, &g, None)?;
            if !report.pass() {
                return Err(RealFormsError::Unclassifiable);
            }
            Ok(Classification {
                label: RealFormLabel {
                    kind: RealFormKind::SOStar(n),
                    regime: spec.regime,
                },
                signature: None,
                symbolic_involution: None,
                basis: None,
                sostar: Some(report),
            })
        }
        _ => Err(RealFormsError::Unclassifiable),
    }
}
