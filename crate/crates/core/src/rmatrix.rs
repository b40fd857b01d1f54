//! The R-matrix data of SO_q(N): the vector rho, the antidiagonal metric C,
//! the R-matrix, the braid matrix `R^ = P R` and its three projectors.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::check::CheckOutcome;
use crate::linalg::{pair_index, LinalgError, SqMat};
use crate::scalars::{ConjRegime, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RMatrixError {
    #[error("N must be at least 3, got {0}")]
    BadN(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Size data for SO_q(N): `N = 2n` or `N = 2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupShape {
    dim: usize,
}

impl GroupShape {
    pub fn new(dim: usize) -> Result<Self, RMatrixError> {
        if dim < 3 {
            return Err(RMatrixError::BadN(dim));
        }
        Ok(Self { dim })
    }

    /// `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n = floor(N / 2)`.
    pub fn half(&self) -> usize {
        self.dim / 2
    }

    pub fn is_odd(&self) -> bool {
        self.dim % 2 == 1
    }

    /// The self-primed index `(N + 1) / 2` for odd `N`.
    pub fn middle(&self) -> Option<usize> {
        self.is_odd().then_some(self.dim.div_ceil(2))
    }

    /// `a' = N + 1 - a`.
    pub fn prime(&self, a: usize) -> usize {
        self.dim + 1 - a
    }
}

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub fn from_twice(twice: i32) -> Self {
        Self(twice)
    }

    pub fn twice(self) -> i32 {
        self.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

pub fn build_rho(n: usize) -> Result<Vec<HalfInt>, RMatrixError> {
    let shape = GroupShape::new(n)?;
    let big_n = n as i32;
    Ok((1..=n)
        .map(|a| {
            let a2 = 2 * a as i32;
            // N/2 - a before the middle, 0 at it (odd N), N/2 - a + 1 after.
            let twice = match shape.middle() {
                Some(m) if a == m => 0,
                _ if 2 * a <= n => big_n - a2,
                _ => big_n - a2 + 2,
            };
            HalfInt(twice)
        })
        .collect())
}

/// `C_{ab} = q^{-rho_a} delta_{b a'}`.
pub fn build_metric(n: usize) -> Result<SqMat, RMatrixError> {
    let shape = GroupShape::new(n)?;
    let rho = build_rho(n)?;
    let mut c = SqMat::zeros(n);
    for a in 1..=n {
        c.set(a, shape.prime(a), Scalar::s_pow(-rho[a - 1].twice()));
    }
    Ok(c)
}

/// The R-matrix as an `N^2 x N^2` matrix, row `(a, b)`, column `(c, d)`
/// holding `R^{ab}_{cd}`.
pub fn build_r(n: usize) -> Result<SqMat, RMatrixError> {
    let shape = GroupShape::new(n)?;
    let rho = build_rho(n)?;
    let p = |a: usize| shape.prime(a);
    let idx = |a: usize, b: usize| pair_index(a, b, n);
    // q^{rho_a - rho_b}
    let qrho = |a: usize, b: usize| Scalar::s_pow(rho[a - 1].twice() - rho[b - 1].twice());
    let q = Scalar::q();
    let qinv = Scalar::q_pow(-1);
    let lambda = &q - &qinv;

    let mut r = SqMat::zeros(n * n);
    for a in 1..=n {
        for b in 1..=n {
            if a == b {
                let v = if Some(a) == shape.middle() {
                    Scalar::one()
                } else {
                    q.clone()
                };
                r.set(idx(a, a), idx(a, a), v);
            } else if b == p(a) {
                r.set(idx(a, b), idx(a, b), qinv.clone());
            } else {
                r.set(idx(a, b), idx(a, b), Scalar::one());
                if a > b {
                    r.set(idx(a, b), idx(b, a), lambda.clone());
                }
            }
        }
    }
    for a in 1..=n {
        if a > p(a) {
            let v = &lambda * &(&Scalar::one() - &qrho(a, p(a)));
            r.add_to(idx(a, p(a)), idx(p(a), a), &v);
        }
        for b in 1..=n {
            if a > b && p(a) != b {
                let v = -(&lambda * &qrho(a, b));
                r.add_to(idx(a, p(a)), idx(b, p(b)), &v);
            }
        }
    }
    Ok(r)
}

/// Everything that depends only on `N`.
#[derive(Debug, Clone)]
pub struct RData {
    pub shape: GroupShape,
    pub rho: Vec<HalfInt>,
    pub metric: SqMat,
    pub r: SqMat,
}

impl RData {
    pub fn new(n: usize) -> Result<Self, RMatrixError> {
        Ok(Self {
            shape: GroupShape::new(n)?,
            rho: build_rho(n)?,
            metric: build_metric(n)?,
            r: build_r(n)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    /// `C^t`.
    pub fn metric_t(&self) -> SqMat {
        self.metric.transpose()
    }
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` on the threefold tensor space.
/// A failing witness uses flat indices into the `N^3`-dimensional space.
pub fn check_ybe(r: &SqMat, n: usize) -> Result<CheckOutcome, RMatrixError> {
    if r.dim() != n * n {
        return Err(LinalgError::DimMismatch {
            left: r.dim(),
            right: n * n,
        }
        .into());
    }
    let r12 = r.embed_slots(&[1, 2], n, 3)?;
    let r13 = r.embed_slots(&[1, 3], n, 3)?;
    let r23 = r.embed_slots(&[2, 3], n, 3)?;
    let lhs = SqMat::product(&[&r12, &r13, &r23])?;
    let rhs = SqMat::product(&[&r23, &r13, &r12])?;
    Ok(CheckOutcome::compare(&lhs, &rhs))
}

#[derive(Debug, Clone)]
pub struct Projectors {
    pub p0: SqMat,
    pub pa: SqMat,
    pub ps: SqMat,
    pub rhat: SqMat,
}

/// `R^ = P R` with `R^{ab}_{cd} = R^{ba}_{cd}`.
pub fn braid_matrix(r: &SqMat, n: usize) -> Result<SqMat, RMatrixError> {
    Ok(SqMat::flip(n).matmul(r)?)
}

/// Trace projector `P0`, q-antisymmetrizer `P_A` (with `r = q`) and
/// `P_S = 1 - P_A - P0`.
pub fn build_projectors(n: usize) -> Result<Projectors, RMatrixError> {
    let c = build_metric(n)?;
    let c_inv = c.inverse()?;
    let rhat = braid_matrix(&build_r(n)?, n)?;
    let nn = n * n;

    let norm = c
        .entries()
        .fold(Scalar::zero(), |acc, (e, f, v)| &acc + &(v * &c_inv.get(e, f)));
    let norm_inv = norm.inv().expect("metric trace is nonzero");
    let mut p0 = SqMat::zeros(nn);
    for (a, b, cab) in c_inv.entries() {
        for (cc, d, ccd) in c.entries() {
            p0.set(pair_index(a, b, n), pair_index(cc, d, n), &(cab * ccd) * &norm_inv);
        }
    }

    let q = Scalar::q();
    let coeff_p0 = &q - &Scalar::q_pow(1 - n as i32);
    let bracket = SqMat::identity(nn).scale(&q).sub(&rhat)?.sub(&p0.scale(&coeff_p0))?;
    let pref = (&q + &Scalar::q_pow(-1)).inv().expect("q + 1/q is nonzero");
    let pa = bracket.scale(&pref);
    let ps = SqMat::identity(nn).sub(&pa)?.sub(&p0)?;
    Ok(Projectors { p0, pa, ps, rhat })
}

/// `(R^ - q)(R^ + q^-1)(R^ - q^{1-N}) = 0`.
pub fn check_char_eq(rhat: &SqMat, n: usize) -> Result<CheckOutcome, RMatrixError> {
    let id = SqMat::identity(rhat.dim());
    let f1 = rhat.sub(&id.scale(&Scalar::q()))?;
    let f2 = rhat.add(&id.scale(&Scalar::q_pow(-1)))?;
    let f3 = rhat.sub(&id.scale(&Scalar::q_pow(1 - n as i32)))?;
    let prod = SqMat::product(&[&f1, &f2, &f3])?;
    Ok(CheckOutcome::compare(&prod, &SqMat::zeros(rhat.dim())))
}

/// Reality of R: `bar(R) = R^-1` for `|q| = 1`, `bar(R^{ab}_{cd}) = R^{dc}_{ba}` for real `q`.
pub fn check_r_reality(r: &SqMat, regime: ConjRegime, n: usize) -> Result<CheckOutcome, RMatrixError> {
    let barred = r.bar(regime);
    match regime {
        ConjRegime::UnitModulusQ => {
            let inv = r.inverse()?;
            Ok(CheckOutcome::compare(&barred, &inv))
        }
        ConjRegime::RealQ => {
            let mut reflected = SqMat::zeros(r.dim());
            for (row, col, v) in r.entries() {
                let (d, c) = ((row - 1) / n + 1, (row - 1) % n + 1);
                let (b, a) = ((col - 1) / n + 1, (col - 1) % n + 1);
                reflected.set(pair_index(a, b, n), pair_index(c, d, n), v.clone());
            }
            Ok(CheckOutcome::compare(&barred, &reflected))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twice(v: &[HalfInt]) -> Vec<i32> {
        v.iter().map(|h| h.twice()).collect()
    }

    #[test]
    fn rho_values() {
        assert_eq!(twice(&build_rho(4).unwrap()), vec![2, 0, 0, -2]);
        assert_eq!(twice(&build_rho(5).unwrap()), vec![3, 1, 0, -1, -3]);
        assert_eq!(twice(&build_rho(3).unwrap()), vec![1, 0, -1]);
        for n in 3..=9 {
            let rho = build_rho(n).unwrap();
            let shape = GroupShape::new(n).unwrap();
            for a in 1..=n {
                assert_eq!(rho[a - 1].twice() + rho[shape.prime(a) - 1].twice(), 0);
            }
        }
        assert_eq!(build_rho(2), Err(RMatrixError::BadN(2)));
    }

    #[test]
    fn metric_entries() {
        let c3 = build_metric(3).unwrap();
        assert_eq!(c3.get(1, 3), Scalar::s_pow(-1));
        assert_eq!(c3.get(2, 2), Scalar::one());
        assert_eq!(c3.get(3, 1), Scalar::s_pow(1));
        let c4 = build_metric(4).unwrap();
        assert_eq!(c4.get(1, 4), Scalar::q_pow(-1));
        assert_eq!(c4.get(2, 3), Scalar::one());
        assert_eq!(c4.get(3, 2), Scalar::one());
        assert_eq!(c4.get(4, 1), Scalar::q());
        assert_eq!(c4.nnz(), 4);
    }

    #[test]
    fn r3_entries() {
        let r = build_r(3).unwrap();
        let i = |a, b| pair_index(a, b, 3);
        assert_eq!(r.get(i(1, 1), i(1, 1)), Scalar::q());
        assert_eq!(r.get(i(2, 2), i(2, 2)), Scalar::one());
        assert_eq!(r.get(i(1, 3), i(1, 3)), Scalar::q_pow(-1));
        let lambda = Scalar::q() - Scalar::q_pow(-1);
        let expected = &lambda * &(Scalar::one() - Scalar::q_pow(-1));
        assert_eq!(r.get(i(3, 1), i(1, 3)), expected);
    }

    #[test]
    fn r_classical_limit_is_identity() {
        for n in 3..=6 {
            assert!(build_r(n).unwrap().classical_limit().unwrap().is_identity());
        }
    }

    #[test]
    fn corrupted_r_breaks_ybe() {
        let mut r = build_r(4).unwrap();
        let i = pair_index(1, 1, 4);
        r.set(i, i, Scalar::q() + Scalar::one());
        let out = check_ybe(&r, 4).unwrap();
        assert!(!out.pass);
        assert!(out.witness.is_some());
    }

    #[test]
    fn unflipped_r_fails_cubic() {
        let r = build_r(3).unwrap();
        assert!(!check_char_eq(&r, 3).unwrap().pass);
    }

    #[test]
    fn corrupted_r_fails_reality() {
        let mut r = build_r(4).unwrap();
        let i = pair_index(1, 2, 4);
        let v = &r.get(i, i) * &Scalar::i();
        r.set(i, i, v);
        assert!(!check_r_reality(&r, ConjRegime::RealQ, 4).unwrap().pass);
    }
}
