//! Outcome of an exact matrix identity check.

use serde::Serialize;

use crate::linalg::{CompositeIndex, SqMat};
use crate::scalars::Scalar;

/// First entry where the two sides of an identity disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub left: Scalar,
    pub right: Scalar,
}

impl Mismatch {
    /// Row and column as tensor indices of an `arity`-fold product of `width`-dimensional spaces.
    pub fn composite(&self, width: usize, arity: usize) -> (CompositeIndex, CompositeIndex) {
        (
            CompositeIndex::from_flat(self.row, width, arity),
            CompositeIndex::from_flat(self.col, width, arity),
        )
    }
}

impl Serialize for Mismatch {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Mismatch", 4)?;
        st.serialize_field("row", &self.row)?;
        st.serialize_field("col", &self.col)?;
        st.serialize_field("left", &self.left.to_string())?;
        st.serialize_field("right", &self.right.to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub pass: bool,
    pub witness: Option<Mismatch>,
}

impl CheckOutcome {
    pub fn passed() -> Self {
        Self {
            pass: true,
            witness: None,
        }
    }

    pub fn failed(witness: Option<Mismatch>) -> Self {
        Self { pass: false, witness }
    }

    pub fn from_bool(pass: bool) -> Self {
        Self { pass, witness: None }
    }

    /// Exact comparison of two matrices, reporting the first differing entry.
    pub fn compare(left: &SqMat, right: &SqMat) -> Self {
        match left.first_difference(right) {
            None => Self::passed(),
            Some((0, 0)) => Self::failed(None),
            Some((row, col)) => Self::failed(Some(Mismatch {
                row,
                col,
                left: left.get(row, col),
                right: right.get(row, col),
            })),
        }
    }

    /// Conjunction; keeps the first witness.
    pub fn and(self, other: Self) -> Self {
        if !self.pass {
            self
        } else {
            other
        }
    }
}
