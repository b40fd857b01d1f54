use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::RealFormsError;
use crate::check::{CheckOutcome, Mismatch};
use crate::linalg::SqMat;
use crate::rmatrix::{GroupShape, RData};
use crate::scalars::{ConjRegime, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Full-length sign vector `(eps_1, ..., eps_N)`, ordered lexicographically with `+` first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `eps_j`, 1-based.
    pub fn at(&self, j: usize) -> Sign {
        self.0[j - 1]
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = RealFormsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(RealFormsError::BadSignVector(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    CanonicalSharp,
    DPrime,
    DSecond,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AutoFamily {
    CanonicalSharp,
    DPrime(SignVector),
    DSecond(SignVector),
}

impl AutoFamily {
    pub fn kind(&self) -> FamilyKind {
        match self {
            AutoFamily::CanonicalSharp => FamilyKind::CanonicalSharp,
            AutoFamily::DPrime(_) => FamilyKind::DPrime,
            AutoFamily::DSecond(_) => FamilyKind::DSecond,
        }
    }
}

impl fmt::Display for AutoFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutoFamily::CanonicalSharp => f.write_str("canonical"),
            AutoFamily::DPrime(e) => write!(f, "dprime:{e}"),
            AutoFamily::DSecond(e) => write!(f, "dsecond:{e}"),
        }
    }
}

/// A constant matrix `D` generating the involutive automorphism `T -> D T D^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoMatrix {
    pub family: AutoFamily,
    pub mat: SqMat,
    /// `D^2 = square_sign * I`.
    pub square_sign: i8,
}

impl Serialize for AutoMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.family.to_string())
    }
}

/// Swaps `n` and `n+1` for even `N`; flips the sign of the middle coordinate for odd `N`.
pub fn canonical_d(n: usize) -> Result<AutoMatrix, RealFormsError> {
    let shape = GroupShape::new(n)?;
    let mat = match shape.middle() {
        Some(m) => SqMat::from_diag((1..=n).map(|j| Scalar::from_int(if j == m { -1 } else { 1 }))),
        None => {
            let h = shape.half();
            let perm: Vec<usize> = (1..=n)
                .map(|j| match j {
                    j if j == h => h + 1,
                    j if j == h + 1 => h,
                    j => j,
                })
                .collect();
            SqMat::permutation(&perm)
        }
    };
    Ok(AutoMatrix {
        family: AutoFamily::CanonicalSharp,
        mat,
        square_sign: 1,
    })
}

fn validate_dprime(eps: &SignVector, shape: &GroupShape) -> bool {
    let n = shape.dim();
    if eps.len() != n {
        return false;
    }
    let mirrored = (1..=n).all(|j| eps.at(j) == eps.at(shape.prime(j)));
    let middle_ok = match shape.middle() {
        Some(m) => eps.at(m) == Sign::Plus,
        None => eps.at(shape.half()) == Sign::Plus,
    };
    mirrored && middle_ok
}

fn validate_dsecond(eps: &SignVector, shape: &GroupShape) -> bool {
    let n = shape.dim();
    if shape.is_odd() || eps.len() != n {
        return false;
    }
    let anti = (1..=n).all(|j| eps.at(j) == eps.at(shape.prime(j)).flip());
    anti && eps.at(shape.half()) == Sign::Plus
}

impl AutoMatrix {
    /// `D' = diag(eps)`.
    pub fn dprime(eps: SignVector, n: usize) -> Result<Self, RealFormsError> {
        let shape = GroupShape::new(n)?;
        if !validate_dprime(&eps, &shape) {
            return Err(RealFormsError::BadSignVector(eps.to_string()));
        }
        let mat = SqMat::from_diag(eps.signs().iter().map(|s| Scalar::from_int(s.value())));
        Ok(Self {
            family: AutoFamily::DPrime(eps),
            mat,
            square_sign: 1,
        })
    }

    /// `D'' = i diag(eps)`, even `N` only.
    pub fn dsecond(eps: SignVector, n: usize) -> Result<Self, RealFormsError> {
        let shape = GroupShape::new(n)?;
        if shape.is_odd() {
            return Err(RealFormsError::BadFamily);
        }
        if !validate_dsecond(&eps, &shape) {
            return Err(RealFormsError::BadSignVector(eps.to_string()));
        }
        let i = Scalar::i();
        let mat = SqMat::from_diag(eps.signs().iter().map(|s| &i * &Scalar::from_int(s.value())));
        Ok(Self {
            family: AutoFamily::DSecond(eps),
            mat,
            square_sign: -1,
        })
    }

    /// `D''_1 = i diag(1, ..., 1, -1, ..., -1)`.
    pub fn dsecond_first(n: usize) -> Result<Self, RealFormsError> {
        let h = n / 2;
        let eps = (1..=n).map(|j| if j <= h { Sign::Plus } else { Sign::Minus }).collect();
        Self::dsecond(SignVector(eps), n)
    }

    pub fn from_family(family: AutoFamily, n: usize) -> Result<Self, RealFormsError> {
        match family {
            AutoFamily::CanonicalSharp => canonical_d(n),
            AutoFamily::DPrime(e) => Self::dprime(e, n),
            AutoFamily::DSecond(e) => Self::dsecond(e, n),
        }
    }
}

/// Every member of a family, in lexicographic sign-vector order.
pub fn enumerate_autos(n: usize, kind: FamilyKind) -> Result<Vec<AutoMatrix>, RealFormsError> {
    let shape = GroupShape::new(n)?;
    let h = shape.half();
    if kind == FamilyKind::CanonicalSharp {
        return Ok(vec![canonical_d(n)?]);
    }
    if kind == FamilyKind::DSecond && shape.is_odd() {
        return Err(RealFormsError::BadFamily);
    }
    let free = if kind == FamilyKind::DPrime && shape.is_odd() {
        h
    } else {
        h - 1
    };
    let mut out = Vec::with_capacity(1 << free);
    for bits in 0u64..(1u64 << free) {
        let mut eps = vec![Sign::Plus; n];
        for j in 1..=free {
            if bits >> (free - j) & 1 == 1 {
                eps[j - 1] = Sign::Minus;
            }
        }
        match kind {
            FamilyKind::DPrime => {
                for j in 1..=free {
                    eps[shape.prime(j) - 1] = eps[j - 1];
                }
                out.push(AutoMatrix::dprime(SignVector(eps), n)?);
            }
            FamilyKind::DSecond => {
                for j in 1..=h {
                    eps[shape.prime(j) - 1] = eps[j - 1].flip();
                }
                out.push(AutoMatrix::dsecond(SignVector(eps), n)?);
            }
            FamilyKind::CanonicalSharp => unreachable!(),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AutoCondition {
    /// `D^t C D = C` and `D C D^t = C`.
    #[serde(rename = "DCD")]
    Dcd,
    /// `R D_1 D_2 = D_2 D_1 R`.
    #[serde(rename = "RDD")]
    Rdd,
    /// `D^2 = +-I`.
    #[serde(rename = "square")]
    Square,
}

impl fmt::Display for AutoCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AutoCondition::Dcd => "DCD",
            AutoCondition::Rdd => "RDD",
            AutoCondition::Square => "square",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AutoCertificate {
    pub square_sign: i8,
}

/// `R (A x A) = (A x A) R`.
pub(crate) fn commutes_with_r(a: &SqMat, r: &SqMat) -> Result<CheckOutcome, RealFormsError> {
    let aa = a.kron(a);
    Ok(CheckOutcome::compare(&r.matmul(&aa)?, &aa.matmul(r)?))
}

/// `A^t C A = lambda C` and `A C A^t = lambda C`; returns `lambda`.
pub(crate) fn metric_factor(a: &SqMat, c: &SqMat) -> Result<Option<Scalar>, RealFormsError> {
    let at = a.transpose();
    let left = SqMat::product(&[&at, c, a])?;
    let right = SqMat::product(&[a, c, &at])?;
    match left.proportionality(c) {
        Some(l) if right.proportionality(c).as_ref() == Some(&l) => Ok(Some(l)),
        _ => Ok(None),
    }
}

/// `D^2 = +I` or `-I`.
pub fn square_sign(d: &SqMat) -> Result<Option<i8>, RealFormsError> {
    let sq = d.matmul(d)?;
    if sq.is_identity() {
        Ok(Some(1))
    } else if sq.neg().is_identity() {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

fn condition_failed(condition: AutoCondition, witness: Option<Mismatch>) -> RealFormsError {
    RealFormsError::ConditionFailed {
        condition,
        witness: witness.map(Box::new),
    }
}

/// The three automorphism conditions, checked in the order DCD, RDD, square.
pub fn check_auto_conditions(d: &SqMat, rdata: &RData) -> Result<AutoCertificate, RealFormsError> {
    let c = &rdata.metric;
    let dt = d.transpose();
    let left = SqMat::product(&[&dt, c, d])?;
    let dcd = CheckOutcome::compare(&left, c);
    if !dcd.pass {
        return Err(condition_failed(AutoCondition::Dcd, dcd.witness));
    }
    let right = SqMat::product(&[d, c, &dt])?;
    let dcd = CheckOutcome::compare(&right, c);
    if !dcd.pass {
        return Err(condition_failed(AutoCondition::Dcd, dcd.witness));
    }
    let rdd = commutes_with_r(d, &rdata.r)?;
    if !rdd.pass {
        return Err(condition_failed(AutoCondition::Rdd, rdd.witness));
    }
    match square_sign(d)? {
        Some(square_sign) => Ok(AutoCertificate { square_sign }),
        None => {
            let sq = d.matmul(d)?;
            let minus = sq.get(1, 1) == Scalar::from_int(-1);
            let target = if minus {
                SqMat::identity(d.dim()).neg()
            } else {
                SqMat::identity(d.dim())
            };
            let witness = CheckOutcome::compare(&sq, &target).witness;
            Err(condition_failed(AutoCondition::Square, witness))
        }
    }
}

/// Base conjugation on the quantum group: `T^x = T`, or `T^* = C^t T C^t` via the metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Cross,
    Star,
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::Cross => "cross",
            Base::Star => "star",
        })
    }
}

impl Base {
    /// The regime this base conjugation requires.
    pub fn regime(self) -> ConjRegime {
        match self {
            Base::Cross => ConjRegime::UnitModulusQ,
            Base::Star => ConjRegime::RealQ,
        }
    }
}

/// Compatibility of `D` with the base conjugation:
/// for `x`, `bar(D) = D` with `D^2 = I` or `bar(D) = -D` with `D^2 = -I`;
/// for `*`, `bar(D) = C^t D C^t`.
pub fn check_reality(d: &SqMat, base: Base, rdata: &RData) -> Result<CheckOutcome, RealFormsError> {
    let barred = d.bar(base.regime());
    match base {
        Base::Cross => match square_sign(d)? {
            Some(1) => Ok(CheckOutcome::compare(&barred, d)),
            Some(_) => Ok(CheckOutcome::compare(&barred, &d.neg())),
            None => Ok(CheckOutcome::failed(None)),
        },
        Base::Star => {
            let ct = rdata.metric_t();
            Ok(CheckOutcome::compare(&barred, &SqMat::product(&[&ct, d, &ct])?))
        }
    }
}
