//! Equivalences between conjugations, `T -> A T A^-1` intertwining two of them,
//! and the SO*(2n) structure check.

use serde::Serialize;

use super::autos::{
    canonical_d, commutes_with_r, enumerate_autos, metric_factor, AutoFamily, AutoMatrix, Base, FamilyKind, Sign,
    SignVector,
};
use super::spec::ConjugationSpec;
use super::RealFormsError;
use crate::check::CheckOutcome;
use crate::linalg::SqMat;
use crate::rmatrix::{GroupShape, RData};
use crate::scalars::{ConjRegime, GaussRat, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessLevel {
    /// Generic `q`.
    Exact,
    /// `q = 1`, where `R` is the identity.
    Classical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCertificate {
    /// `c` in `[C^t] G_1 A = c bar(A) [C^t] G_2`.
    #[serde(serialize_with = "as_text")]
    pub scalar: Scalar,
    /// `lambda` in `A^t C A = lambda C`.
    #[serde(serialize_with = "as_text")]
    pub metric_factor: Scalar,
}

fn as_text<S: serde::Serializer>(v: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn metric_at(rdata: &RData, level: WitnessLevel) -> Result<SqMat, RealFormsError> {
    Ok(match level {
        WitnessLevel::Exact => rdata.metric.clone(),
        WitnessLevel::Classical => rdata.metric.classical_limit()?,
    })
}

/// `[C^t] G_1 A = c bar(A) [C^t] G_2` for some scalar `c`; `C^t` present for the `*` base.
pub(crate) fn intertwining_scalar(
    base: Base,
    regime: ConjRegime,
    g1: &SqMat,
    g2: &SqMat,
    a: &SqMat,
    c: &SqMat,
) -> Result<Result<Scalar, CheckOutcome>, RealFormsError> {
    let abar = a.bar(regime);
    let (lhs, rhs) = match base {
        Base::Cross => (g1.matmul(a)?, abar.matmul(g2)?),
        Base::Star => {
            let ct = c.transpose();
            (SqMat::product(&[&ct, g1, a])?, SqMat::product(&[&abar, &ct, g2])?)
        }
    };
    Ok(match lhs.proportionality(&rhs) {
        Some(k) => Ok(k),
        None => Err(CheckOutcome::compare(&lhs, &rhs)),
    })
}

/// Whether `T -> A T A^-1` is an automorphism (up to rescaling of `A`) at the given level.
pub(crate) fn automorphism_factor(
    a: &SqMat,
    rdata: &RData,
    level: WitnessLevel,
) -> Result<Option<Scalar>, RealFormsError> {
    let c = metric_at(rdata, level)?;
    let Some(lambda) = metric_factor(a, &c)? else {
        return Ok(None);
    };
    if level == WitnessLevel::Exact && !commutes_with_r(a, &rdata.r)?.pass {
        return Ok(None);
    }
    Ok(Some(lambda))
}

/// Verifies that `A` intertwines the two conjugations and is itself an automorphism.
pub fn check_equivalence_witness(
    a: &SqMat,
    spec1: &ConjugationSpec,
    spec2: &ConjugationSpec,
    rdata: &RData,
    level: WitnessLevel,
) -> Result<WitnessCertificate, RealFormsError> {
    if spec1.base != spec2.base || spec1.regime != spec2.regime {
        return Err(RealFormsError::BadSpec("witness specs differ in base or regime".into()));
    }
    a.inverse()?;
    let c = metric_at(rdata, level)?;
    let (g1, g2) = match level {
        WitnessLevel::Exact => (spec1.composed(), spec2.composed()),
        WitnessLevel::Classical => (spec1.composed().classical_limit()?, spec2.composed().classical_limit()?),
    };
    let scalar = intertwining_scalar(spec1.base, spec1.regime, &g1, &g2, a, &c)?
        .map_err(|out| RealFormsError::IdentityFailed(out.witness.map(Box::new)))?;
    let metric_factor = automorphism_factor(a, rdata, level)?.ok_or(RealFormsError::WitnessNotAutomorphism)?;
    Ok(WitnessCertificate { scalar, metric_factor })
}

fn gauss(re: i64, im: i64) -> Scalar {
    Scalar::from_gauss(&GaussRat::from_int(re) + &(&GaussRat::i() * &GaussRat::from_int(im)))
}

/// `diag(i, ..., i, 1, -i, ..., -i)` for odd `N`.
pub fn odd_sharp_witness(n: usize) -> SqMat {
    let h = n / 2;
    SqMat::from_diag((1..=n).map(|j| match j {
        j if j <= h => gauss(0, 1),
        j if j == h + 1 => Scalar::one(),
        _ => gauss(0, -1),
    }))
}

/// `diag(-1, ..., -1, 1, ..., 1)` for even `N`.
pub fn pairing_witness(n: usize) -> SqMat {
    SqMat::from_diag((1..=n).map(|j| Scalar::from_int(if j <= n / 2 { -1 } else { 1 })))
}

/// `diag(sigma(eps_j))`: `1` for `+`, `i` for `-` with `j < j'`, `-i` for `-` with `j > j'`.
pub fn sigma_witness(eps: &SignVector) -> SqMat {
    let n = eps.len();
    SqMat::from_diag((1..=n).map(|j| match eps.at(j) {
        Sign::Plus => Scalar::one(),
        Sign::Minus if j < n + 1 - j => gauss(0, 1),
        Sign::Minus => gauss(0, -1),
    }))
}

/// `diag(1 - i eps_j)`, a multiple of `diag(exp(-i eps_j pi / 4))`.
pub fn dsecond_unit_witness(eps: &SignVector) -> SqMat {
    SqMat::from_diag(eps.signs().iter().map(|s| gauss(1, -s.value())))
}

/// Permutation swapping `j` and `j'` wherever `eps_j = -1`, `j < n`.
pub fn dsecond_reduction_witness(eps: &SignVector) -> SqMat {
    let n = eps.len();
    let perm: Vec<usize> = (1..=n)
        .map(|j| {
            let lo = j.min(n + 1 - j);
            if lo < n / 2 && eps.at(lo) == Sign::Minus {
                n + 1 - j
            } else {
                j
            }
        })
        .collect();
    SqMat::permutation(&perm)
}

/// `sqrt(2) M''`: rows `e_k + e_k'` for `k = 1..n`, then `i (e_k - e_k')`.
pub fn scaled_m_second(n: usize) -> SqMat {
    let h = n / 2;
    let mut m = SqMat::zeros(n);
    for k in 1..=h {
        m.set(k, k, Scalar::one());
        m.set(k, n + 1 - k, Scalar::one());
        m.set(h + k, k, gauss(0, 1));
        m.set(h + k, n + 1 - k, gauss(0, -1));
    }
    m
}

/// The standard symplectic block `[[0, 1], [-1, 0]]`.
pub fn symplectic_j(n: usize) -> SqMat {
    let h = n / 2;
    let mut j = SqMat::zeros(n);
    for k in 1..=h {
        j.set(k, h + k, Scalar::one());
        j.set(h + k, k, Scalar::from_int(-1));
    }
    j
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoStarReport {
    /// `(M''^-1)^t C M''^-1 = I` at `q = 1`.
    pub metric: CheckOutcome,
    /// `bar(M'') C^t D''_1 M''^-1 = u J` with `|u| = 1`.
    pub transport: CheckOutcome,
    #[serde(serialize_with = "opt_text")]
    pub transport_unit: Option<Scalar>,
    /// The given `D''` reduces to `D''_1` at `q = 1`.
    pub reduction: CheckOutcome,
}

fn opt_text<S: serde::Serializer>(v: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

impl SoStarReport {
    pub fn pass(&self) -> bool {
        self.metric.pass && self.transport.pass && self.reduction.pass
    }
}

/// Sign vector of `D'' = +-i diag(eps)`, normalized to `eps_n = +1`.
fn dsecond_signs(d: &SqMat) -> Option<SignVector> {
    let n = d.dim();
    let mut eps = Vec::with_capacity(n);
    for j in 1..=n {
        if d.row(j).len() != 1 {
            return None;
        }
        let v = d.get(j, j);
        eps.push(if v == gauss(0, 1) {
            Sign::Plus
        } else if v == gauss(0, -1) {
            Sign::Minus
        } else {
            return None;
        });
    }
    if eps[n / 2 - 1] == Sign::Minus {
        eps.iter_mut().for_each(|s| *s = s.flip());
    }
    Some(SignVector::new(eps))
}

/// SO*(2n) structure of the `*` conjugation twisted by `dsec`, at `q = 1`.
///
/// `m_override` replaces the scaled basis `sqrt(2) M''`.
pub fn check_sostar(rdata: &RData, dsec: &SqMat, m_override: Option<&SqMat>) -> Result<SoStarReport, RealFormsError> {
    let n = rdata.dim();
    if n % 2 == 1 {
        return Err(RealFormsError::BadFamily);
    }
    let b = m_override.cloned().unwrap_or_else(|| scaled_m_second(n));
    let c1 = rdata.metric.classical_limit()?;
    let half_id = SqMat::identity(n).scale(&Scalar::from_gauss(GaussRat::from_ratio(1, 2)));

    let (metric, transport, transport_unit) = match b.inverse() {
        Ok(binv) => {
            let metric = CheckOutcome::compare(&SqMat::product(&[&binv.transpose(), &c1, &binv])?, &half_id);
            let d1 = AutoMatrix::dsecond_first(n)?.mat;
            let w = SqMat::product(&[&b.bar(ConjRegime::RealQ), &c1.transpose(), &d1, &binv])?;
            let j = symplectic_j(n);
            let unit = w
                .proportionality(&j)
                .filter(|u| (u * &u.bar(ConjRegime::RealQ)).is_one());
            let transport = match unit {
                Some(_) => CheckOutcome::passed(),
                None => CheckOutcome::compare(&w, &j),
            };
            (metric, transport, unit)
        }
        Err(_) => (CheckOutcome::failed(None), CheckOutcome::failed(None), None),
    };

    let reduction = match dsecond_signs(&dsec.classical_limit()?) {
        None => CheckOutcome::failed(None),
        Some(eps) => {
            let a = dsecond_reduction_witness(&eps);
            let d1 = AutoMatrix::dsecond_first(n)?.mat;
            let auto_ok = automorphism_factor(&a, rdata, WitnessLevel::Classical)?.is_some();
            match intertwining_scalar(Base::Star, ConjRegime::RealQ, dsec, &d1, &a, &c1)? {
                Ok(_) if auto_ok => CheckOutcome::passed(),
                Ok(_) => CheckOutcome::failed(None),
                Err(out) => out,
            }
        }
    };
    Ok(SoStarReport {
        metric,
        transport,
        transport_unit,
        reduction,
    })
}

/// One of the built-in equivalences between conjugations.
#[derive(Debug, Clone)]
pub struct WitnessEntry {
    pub name: &'static str,
    pub a: SqMat,
    pub spec1: ConjugationSpec,
    pub spec2: ConjugationSpec,
    pub level: WitnessLevel,
}

/// Flip every sign except the fixed middle ones.
pub(crate) fn partner(eps: &SignVector, shape: &GroupShape) -> SignVector {
    let n = shape.dim();
    let fixed = |j: usize| match shape.middle() {
        Some(m) => j == m,
        None => j == shape.half() || j == shape.half() + 1,
    };
    SignVector::new(
        (1..=n)
            .map(|j| if fixed(j) { eps.at(j) } else { eps.at(j).flip() })
            .collect(),
    )
}

pub fn builtin_witnesses(n: usize) -> Result<Vec<WitnessEntry>, RealFormsError> {
    let shape = GroupShape::new(n)?;
    let d = canonical_d(n)?;
    let cross = |autos: Vec<AutoMatrix>| ConjugationSpec::with_autos(Base::Cross, autos, n);
    let star = |autos: Vec<AutoMatrix>| ConjugationSpec::with_autos(Base::Star, autos, n);
    let mut out = Vec::new();

    if shape.is_odd() {
        out.push(WitnessEntry {
            name: "odd-sharp",
            a: odd_sharp_witness(n),
            spec1: cross(vec![d.clone()])?,
            spec2: cross(vec![])?,
            level: WitnessLevel::Exact,
        });
    }
    for dp in enumerate_autos(n, FamilyKind::DPrime)? {
        let AutoFamily::DPrime(eps) = &dp.family else {
            unreachable!()
        };
        let a = sigma_witness(eps);
        out.push(WitnessEntry {
            name: "dprime-sigma",
            a: a.clone(),
            spec1: cross(vec![dp.clone()])?,
            spec2: cross(vec![])?,
            level: WitnessLevel::Exact,
        });
        out.push(WitnessEntry {
            name: "dprime-sigma-sharp",
            a,
            spec1: cross(vec![d.clone(), dp.clone()])?,
            spec2: cross(vec![d.clone()])?,
            level: WitnessLevel::Exact,
        });
        if !shape.is_odd() {
            let other = AutoMatrix::dprime(partner(eps, &shape), n)?;
            out.push(WitnessEntry {
                name: "dprime-pairing",
                a: pairing_witness(n),
                spec1: star(vec![d.clone(), dp.clone()])?,
                spec2: star(vec![d.clone(), other])?,
                level: WitnessLevel::Exact,
            });
        }
    }
    if !shape.is_odd() {
        let d1 = AutoMatrix::dsecond_first(n)?;
        for ds in enumerate_autos(n, FamilyKind::DSecond)? {
            let AutoFamily::DSecond(eps) = &ds.family else {
                unreachable!()
            };
            out.push(WitnessEntry {
                name: "dsecond-unit",
                a: dsecond_unit_witness(eps),
                spec1: cross(vec![ds.clone()])?,
                spec2: cross(vec![])?,
                level: WitnessLevel::Exact,
            });
            out.push(WitnessEntry {
                name: "dsecond-reduction",
                a: dsecond_reduction_witness(eps),
                spec1: star(vec![ds.clone()])?,
                spec2: star(vec![d1.clone()])?,
                level: WitnessLevel::Classical,
            });
        }
    }
    Ok(out)
}
