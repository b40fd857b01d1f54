use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{LinalgError, SqMat};

/// Counts of positive and negative squares of a nondegenerate real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

/// Signature by symmetric Gaussian elimination (Lagrange's method).
///
/// Pivot rule: the first nonzero diagonal entry of the remaining block; if the
/// diagonal vanishes, the first nonzero off-diagonal pair `(i, j)` is folded
/// into position `i` by adding row/column `j` to row/column `i`, which leaves
/// `2 a_ij` on the diagonal.
#[allow(clippy::needless_range_loop)]
pub fn signature(s: &SqMat) -> Result<Signature, LinalgError> {
    let n = s.dim();
    let mut a = vec![vec![BigRational::zero(); n]; n];
    for (r, c, v) in s.entries() {
        let g = v.as_constant().ok_or(LinalgError::NotReal)?;
        if !g.is_real() {
            return Err(LinalgError::NotReal);
        }
        a[r - 1][c - 1] = g.re().clone();
    }
    for i in 0..n {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(LinalgError::NotSymmetric);
            }
        }
    }

    let mut sig = Signature {
        positive: 0,
        negative: 0,
    };
    for k in 0..n {
        let diag = (k..n).find(|&i| !a[i][i].is_zero());
        let pivot = match diag {
            Some(i) => i,
            None => {
                let pair = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero());
                let Some((i, j)) = pair else {
                    return Err(LinalgError::Degenerate);
                };
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                i
            }
        };
        if pivot != k {
            a.swap(pivot, k);
            for row in a.iter_mut() {
                row.swap(pivot, k);
            }
        }
        let p = a[k][k].clone();
        for j in k + 1..n {
            if a[j][k].is_zero() {
                continue;
            }
            let f = &a[j][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[j][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][j] -= v;
            }
        }
        if p.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    fn diag(v: &[i64]) -> SqMat {
        SqMat::from_diag(v.iter().map(|&x| Scalar::from_int(x)))
    }

    #[test]
    fn diagonal_forms() {
        let s = signature(&diag(&[1, 1, 1, 1])).unwrap();
        assert_eq!((s.positive, s.negative), (4, 0));
        let s = signature(&diag(&[1, 1, -1, 1])).unwrap();
        assert_eq!((s.positive, s.negative), (3, 1));
    }

    #[test]
    fn antidiagonal_is_split() {
        let m = SqMat::permutation(&[4, 3, 2, 1]);
        let s = signature(&m).unwrap();
        assert_eq!((s.positive, s.negative), (2, 2));
    }

    #[test]
    fn errors() {
        let m = SqMat::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(signature(&m), Err(LinalgError::NotSymmetric));
        assert_eq!(signature(&diag(&[1, 0])), Err(LinalgError::Degenerate));
        assert_eq!(signature(&SqMat::from_diag([Scalar::i()])), Err(LinalgError::NotReal));
        assert_eq!(signature(&SqMat::from_diag([Scalar::q()])), Err(LinalgError::NotReal));
    }
}
