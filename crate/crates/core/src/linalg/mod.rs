//! Exact sparse square matrices over [`Scalar`].
//!
//! All public indices are 1-based. Tensor products use row-major composite
//! indices: `(a, b) -> (a-1) N + b` and `(a, b, c) -> ((a-1) N + (b-1)) N + c`.

mod elim;
mod fixed_basis;
mod signature;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalars::{ConjRegime, GaussRat, Scalar, ScalarError};

pub use elim::{row_reduce, RowReduction};
pub use fixed_basis::antilinear_fixed_basis;
pub use signature::{signature, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("symmetric form is degenerate")]
    Degenerate,
    #[error("matrix has non-real or non-constant entries")]
    NotReal,
    #[error("antilinear map is not an involution (K * bar(K) != I)")]
    NotInvolution,
    #[error("could not select a full-rank fixed basis")]
    RankDeficient,
    #[error("entry ({row},{col}) is not a constant")]
    NotConstant { row: usize, col: usize },
    #[error("invalid tensor slot specification")]
    BadSlot,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A 1-based index into a tensor power of an `N`-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeIndex {
    parts: Vec<usize>,
    width: usize,
}

impl CompositeIndex {
    pub fn new(parts: Vec<usize>, width: usize) -> Self {
        assert!(
            parts.iter().all(|&p| (1..=width).contains(&p)),
            "index part out of range"
        );
        Self { parts, width }
    }

    pub fn from_flat(flat: usize, width: usize, arity: usize) -> Self {
        let mut rest = flat - 1;
        let mut parts = vec![0; arity];
        for slot in (0..arity).rev() {
            parts[slot] = rest % width + 1;
            rest /= width;
        }
        Self { parts, width }
    }

    pub fn flat(&self) -> usize {
        self.parts.iter().fold(0, |acc, &p| acc * self.width + (p - 1)) + 1
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }
}

impl fmt::Display for CompositeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Shorthand for the flat index of `(a, b)` in an `N^2`-dimensional space.
pub fn pair_index(a: usize, b: usize, width: usize) -> usize {
    (a - 1) * width + b
}

/// Sparse square matrix. Absent entries are zero; stored entries never are.
#[derive(Clone, PartialEq, Eq)]
pub struct SqMat {
    dim: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl SqMat {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diag((0..dim).map(|_| Scalar::one()))
    }

    pub fn from_diag<I: IntoIterator<Item = Scalar>>(diag: I) -> Self {
        let diag: Vec<Scalar> = diag.into_iter().collect();
        let mut m = Self::zeros(diag.len());
        for (i, v) in diag.into_iter().enumerate() {
            m.set(i + 1, i + 1, v);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Scalar>(dim: usize, mut f: F) -> Self {
        let mut m = Self::zeros(dim);
        for r in 1..=dim {
            for c in 1..=dim {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Dense construction from integer rows; handy for fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |r, c| Scalar::from_int(rows[r - 1][c - 1]))
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{perm[j-1]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = Self::zeros(perm.len());
        for (j, &target) in perm.iter().enumerate() {
            m.set(target, j + 1, Scalar::one());
        }
        m
    }

    /// The flip `P(e_a (x) e_b) = e_b (x) e_a` on `N^2` dimensions.
    pub fn flip(width: usize) -> Self {
        let mut m = Self::zeros(width * width);
        for a in 1..=width {
            for b in 1..=width {
                m.set(pair_index(b, a, width), pair_index(a, b, width), Scalar::one());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entry(row, col).cloned().unwrap_or_default()
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&Scalar> {
        self.rows[row - 1].get(&col)
    }

    pub fn set(&mut self, row: usize, col: usize, v: Scalar) {
        assert!((1..=self.dim).contains(&row) && (1..=self.dim).contains(&col));
        if v.is_zero() {
            self.rows[row - 1].remove(&col);
        } else {
            self.rows[row - 1].insert(col, v);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, v: &Scalar) {
        let cur = self.get(row, col);
        self.set(row, col, &cur + v);
    }

    pub fn row(&self, row: usize) -> &BTreeMap<usize, Scalar> {
        &self.rows[row - 1]
    }

    /// All nonzero entries in `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r + 1, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    fn check_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let mut out = Self::zeros(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.rows[k - 1] {
                    let p = a * b;
                    match acc.get_mut(c) {
                        Some(v) => *v += &p,
                        None => {
                            acc.insert(*c, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[r] = acc;
        }
        Ok(out)
    }

    /// Left-to-right product of a non-empty chain.
    pub fn product(chain: &[&SqMat]) -> Result<Self, LinalgError> {
        let (first, rest) = chain.split_first().expect("empty product");
        rest.iter().try_fold((*first).clone(), |acc, m| acc.matmul(m))
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_to(r, c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        self.map(|v| v * k)
    }

    pub fn map<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> Self {
        let mut out = Self::zeros(self.dim);
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for (r, c, v) in self.entries() {
            out.set(c, r, v.clone());
        }
        out
    }

    /// Entrywise bar conjugation.
    pub fn bar(&self, regime: ConjRegime) -> Self {
        self.map(|v| v.bar(regime))
    }

    /// Entrywise evaluation at `s = 1`.
    pub fn classical_limit(&self) -> Result<Self, ScalarError> {
        let mut out = Self::zeros(self.dim);
        for (r, c, v) in self.entries() {
            out.set(r, c, Scalar::from_gauss(v.classical_limit()?));
        }
        Ok(out)
    }

    /// Entries as Gaussian rationals; fails on any `s`- or `t`-dependence.
    pub fn constant_entries(&self) -> Result<Vec<Vec<GaussRat>>, LinalgError> {
        let mut out = vec![vec![GaussRat::zero(); self.dim]; self.dim];
        for (r, c, v) in self.entries() {
            out[r - 1][c - 1] = v.as_constant().ok_or(LinalgError::NotConstant { row: r, col: c })?;
        }
        Ok(out)
    }

    pub fn trace(&self) -> Scalar {
        (1..=self.dim).fold(Scalar::zero(), |acc, i| &acc + &self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.first_difference(&Self::identity(self.dim)).is_none()
    }

    /// First `(row, col)` where the two matrices differ, scanning rows in order.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((0, 0));
        }
        for r in 0..self.dim {
            let (a, b) = (&self.rows[r], &other.rows[r]);
            if a == b {
                continue;
            }
            let cols: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
            for c in cols {
                if a.get(&c) != b.get(&c) {
                    return Some((r + 1, c));
                }
            }
        }
        None
    }

    /// `Some(c)` when `self = c * other` for a single scalar `c` (both nonzero).
    pub fn proportionality(&self, other: &Self) -> Option<Scalar> {
        if self.dim != other.dim || other.is_zero() {
            return None;
        }
        let (r, c, v) = other.entries().next()?;
        let factor = self.get(r, c).checked_div(v).ok()?;
        if factor.is_zero() {
            return None;
        }
        (other.scale(&factor) == *self).then_some(factor)
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let d = other.dim;
        let mut out = Self::zeros(self.dim * d);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in other.entries() {
                out.set((r1 - 1) * d + r2, (c1 - 1) * d + c2, a * b);
            }
        }
        out
    }

    /// Embeds `self` into an `arity`-fold tensor power of a `width`-dimensional
    /// space. A `width`-dimensional matrix occupies `slot`; a `width^2`-dimensional
    /// one occupies `slot` and `slot + 1`.
    pub fn kron_embed(&self, slot: usize, width: usize, arity: usize) -> Result<Self, LinalgError> {
        if self.dim == width {
            self.embed_slots(&[slot], width, arity)
        } else if self.dim == width * width {
            self.embed_slots(&[slot, slot + 1], width, arity)
        } else {
            Err(LinalgError::DimMismatch {
                left: self.dim,
                right: width,
            })
        }
    }

    /// General embedding acting on the listed 1-based slots (in that order).
    /// Non-adjacent slots are allowed, e.g. `R_13` is `embed_slots(&[1, 3], N, 3)`.
    pub fn embed_slots(&self, slots: &[usize], width: usize, arity: usize) -> Result<Self, LinalgError> {
        let k = slots.len();
        let expected = width.pow(k as u32);
        if self.dim != expected {
            return Err(LinalgError::DimMismatch {
                left: self.dim,
                right: expected,
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        if slots.iter().any(|&s| s == 0 || s > arity || !seen.insert(s)) {
            return Err(LinalgError::BadSlot);
        }
        let total = width.pow(arity as u32);
        let mut out = Self::zeros(total);
        for row in 1..=total {
            let ridx = CompositeIndex::from_flat(row, width, arity);
            let sub_parts: Vec<usize> = slots.iter().map(|&s| ridx.parts[s - 1]).collect();
            let sub_row = CompositeIndex::new(sub_parts, width).flat();
            for (sub_col, v) in &self.rows[sub_row - 1] {
                let cidx = CompositeIndex::from_flat(*sub_col, width, k);
                let mut parts = ridx.parts.clone();
                for (j, &s) in slots.iter().enumerate() {
                    parts[s - 1] = cidx.parts[j];
                }
                out.set(row, CompositeIndex::new(parts, width).flat(), v.clone());
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        elim::inverse(self)
    }

    pub fn rank(&self) -> usize {
        elim::rank(self)
    }
}

impl fmt::Debug for SqMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SqMat(dim={})", self.dim)?;
        for (r, c, v) in self.entries() {
            writeln!(f, "  [{r},{c}] {v}")?;
        }
        Ok(())
    }
}

/// JSON matrix dump: `{ "dim": n, "entries": [[row, col, "scalar"], ...] }`.
impl Serialize for SqMat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<(usize, usize, String)> = self.entries().map(|(r, c, v)| (r, c, v.to_string())).collect();
        let mut st = serializer.serialize_struct("SqMat", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composite_index_round_trip() {
        let idx = CompositeIndex::new(vec![2, 1, 3], 3);
        assert_eq!(idx.flat(), 12);
        assert_eq!(CompositeIndex::from_flat(12, 3, 3), idx);
        assert_eq!(pair_index(2, 1, 4), 5);
    }

    #[test]
    fn identity_embeds_to_identity() {
        let e = SqMat::identity(3).kron_embed(2, 3, 3).unwrap();
        assert!(e.is_identity());
        assert_eq!(e.dim(), 27);
    }

    #[test]
    fn embedding_first_slot_matches_kron() {
        let a = SqMat::from_int_rows(&[&[1, 2], &[3, 4]]);
        let e = a.kron_embed(1, 2, 2).unwrap();
        assert_eq!(e, a.kron(&SqMat::identity(2)));
        let e2 = a.kron_embed(2, 2, 2).unwrap();
        assert_eq!(e2, SqMat::identity(2).kron(&a));
    }

    #[test]
    fn bad_embedding_is_rejected() {
        let a = SqMat::identity(3);
        assert!(matches!(a.kron_embed(1, 2, 2), Err(LinalgError::DimMismatch { .. })));
        assert_eq!(a.kron_embed(3, 3, 2), Err(LinalgError::BadSlot));
    }

    #[test]
    fn matmul_dim_mismatch() {
        let r = SqMat::identity(2).matmul(&SqMat::identity(3));
        assert_eq!(r, Err(LinalgError::DimMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn json_dump_shape() {
        let m = SqMat::from_int_rows(&[&[0, 1], &[2, 0]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"dim":2,"entries":[[1,2,"1/1*s^0"],[2,1,"2/1*s^0"]]}"#);
    }

    #[test]
    fn proportional_matrices() {
        let a = SqMat::from_int_rows(&[&[0, 1], &[2, 0]]);
        let b = a.scale(&Scalar::i());
        assert_eq!(b.proportionality(&a), Some(Scalar::i()));
        assert_eq!(SqMat::identity(2).proportionality(&a), None);
    }
}
