use std::fmt;

use serde::Serialize;

use super::autos::{canonical_d, AutoMatrix, Base, SignVector};
use super::RealFormsError;
use crate::linalg::SqMat;
use crate::rmatrix::GroupShape;
use crate::scalars::ConjRegime;

/// A base conjugation composed with automorphisms: `T -> G T^base G^-1`
/// with `G` the product of `autos` in list order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugationSpec {
    pub base: Base,
    pub autos: Vec<AutoMatrix>,
    pub regime: ConjRegime,
    #[serde(skip)]
    dim: usize,
}

impl ConjugationSpec {
    pub fn new(base: Base, autos: Vec<AutoMatrix>, regime: ConjRegime, n: usize) -> Result<Self, RealFormsError> {
        GroupShape::new(n)?;
        if base.regime() != regime {
            return Err(RealFormsError::RegimeMismatch { base, regime });
        }
        if autos.iter().any(|a| a.mat.dim() != n) {
            return Err(RealFormsError::BadSpec(format!(
                "automorphism dimension differs from N={n}"
            )));
        }
        Ok(Self {
            base,
            autos,
            regime,
            dim: n,
        })
    }

    /// Shorthand using the regime implied by `base`.
    pub fn with_autos(base: Base, autos: Vec<AutoMatrix>, n: usize) -> Result<Self, RealFormsError> {
        Self::new(base, autos, base.regime(), n)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `G = D_1 D_2 ... D_k`.
    pub fn composed(&self) -> SqMat {
        self.autos.iter().fold(SqMat::identity(self.dim), |g, a| {
            g.matmul(&a.mat).expect("dimensions checked")
        })
    }

    /// Parses `base:star|cross;autos:canonical,dprime:+-..,dsecond:+-..;regime:real|unit`.
    /// The `autos` and `regime` fields may be omitted.
    pub fn parse(text: &str, n: usize) -> Result<Self, RealFormsError> {
        let bad = |msg: &str| RealFormsError::BadSpec(format!("{msg}: {text}"));
        let mut base = None;
        let mut autos = Vec::new();
        let mut regime = None;
        for field in text.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field.split_once(':').ok_or_else(|| bad("missing ':'"))?;
            match key.trim() {
                "base" => {
                    base = Some(match value.trim() {
                        "star" => Base::Star,
                        "cross" => Base::Cross,
                        _ => return Err(bad("unknown base")),
                    })
                }
                "autos" => autos = parse_autos(value, n)?,
                "regime" => {
                    regime = Some(match value.trim() {
                        "real" => ConjRegime::RealQ,
                        "unit" => ConjRegime::UnitModulusQ,
                        _ => return Err(bad("unknown regime")),
                    })
                }
                _ => return Err(bad("unknown field")),
            }
        }
        let base = base.ok_or_else(|| bad("missing base"))?;
        Self::new(base, autos, regime.unwrap_or(base.regime()), n)
    }
}

/// Comma-separated automorphism list, e.g. `canonical,dprime:+--+`.
pub fn parse_autos(value: &str, n: usize) -> Result<Vec<AutoMatrix>, RealFormsError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|tok| match tok.split_once(':') {
            None if tok == "canonical" => canonical_d(n),
            Some(("dprime", e)) => AutoMatrix::dprime(e.parse::<SignVector>()?, n),
            Some(("dsecond", e)) => AutoMatrix::dsecond(e.parse::<SignVector>()?, n),
            _ => Err(RealFormsError::BadSpec(format!("unknown automorphism {tok}"))),
        })
        .collect()
}

impl fmt::Display for ConjugationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base:{};autos:", self.base)?;
        for (k, a) in self.autos.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", a.family)?;
        }
        write!(f, ";regime:{}", self.regime)
    }
}
