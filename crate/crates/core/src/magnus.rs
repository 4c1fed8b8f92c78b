//! Extended Magnus representation.
//!
//! The matrix of a Whitehead move `W: G -> G'` is the Fox Jacobian of
//! `N(W)`: entry `(i, j)` is the derivative of the `i`-th generator of `G'`
//! by the `j`-th generator of `G`. Along a sequence the chain rule gives
//! `M(s then W) = M(W)|_{N(s)} * M(s)`. The abelianized mode pushes every
//! entry into `Z[H]`.

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use crate::fatgraph::{Dart, FatGraph, FatGraphError, MoveSequence};
use crate::freegroup::{EndoMap, GroupRingElement, LaurentElement};
use crate::nielsen::nielsen_of_move;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MagnusError {
    #[error(transparent)]
    Graph(#[from] FatGraphError),
    #[error("cannot combine free and abelianized matrices")]
    ModeMismatch,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MagnusMode {
    /// Entries in `Z[F_2g]`.
    Free,
    /// Entries in `Z[H]`, Laurent polynomials in the generator classes.
    Abelianized,
}

/// Square matrix over `Z[F_2g]` or `Z[H]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MagnusMatrix {
    Free(Vec<Vec<GroupRingElement>>),
    Abelianized(Vec<Vec<LaurentElement>>),
}

trait Ring: Clone {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Ring for GroupRingElement {
    fn zero() -> Self {
        GroupRingElement::zero()
    }
    fn add(&self, other: &Self) -> Self {
        GroupRingElement::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        GroupRingElement::mul(self, other)
    }
}

impl Ring for LaurentElement {
    fn zero() -> Self {
        LaurentElement::zero()
    }
    fn add(&self, other: &Self) -> Self {
        LaurentElement::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentElement::mul(self, other)
    }
}

fn matmul<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|k| (0..n).fold(R::zero(), |acc, j| acc.add(&a[i][j].mul(&b[j][k])))).collect()).collect()
}

impl MagnusMatrix {
    pub fn identity(rank: usize, mode: MagnusMode) -> Self {
        match mode {
            MagnusMode::Free => MagnusMatrix::Free(
                (0..rank).map(|i| (0..rank).map(|j| GroupRingElement::from_int(i64::from(i == j))).collect()).collect(),
            ),
            MagnusMode::Abelianized => MagnusMatrix::Abelianized(
                (0..rank)
                    .map(|i| (0..rank).map(|j| LaurentElement::from_int(rank, i64::from(i == j))).collect())
                    .collect(),
            ),
        }
    }

    pub fn mode(&self) -> MagnusMode {
        match self {
            MagnusMatrix::Free(_) => MagnusMode::Free,
            MagnusMatrix::Abelianized(_) => MagnusMode::Abelianized,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            MagnusMatrix::Free(m) => m.len(),
            MagnusMatrix::Abelianized(m) => m.len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == MagnusMatrix::identity(self.rank(), self.mode())
    }

    /// Entry `(i, j)`, 0-based, in its text form.
    pub fn entry_string(&self, i: usize, j: usize) -> String {
        match self {
            MagnusMatrix::Free(m) => m[i][j].to_string(),
            MagnusMatrix::Abelianized(m) => m[i][j].to_string(),
        }
    }

    /// Pushes a free-mode matrix into `Z[H]`; abelianized input is returned
    /// unchanged.
    pub fn abelianize(&self) -> MagnusMatrix {
        match self {
            MagnusMatrix::Free(m) => {
                let n = m.len();
                MagnusMatrix::Abelianized(m.iter().map(|r| r.iter().map(|e| e.abelianize(n)).collect()).collect())
            }
            MagnusMatrix::Abelianized(_) => self.clone(),
        }
    }

    /// Integer matrix obtained by sending every group element to 1.
    pub fn augmentation(&self) -> Vec<Vec<BigInt>> {
        match self {
            MagnusMatrix::Free(m) => m.iter().map(|r| r.iter().map(|e| e.augmentation()).collect()).collect(),
            MagnusMatrix::Abelianized(m) => m.iter().map(|r| r.iter().map(|e| e.augmentation()).collect()).collect(),
        }
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &MagnusMatrix) -> Result<MagnusMatrix, MagnusError> {
        if self.rank() != other.rank() {
            return Err(MagnusError::RankMismatch { left: self.rank(), right: other.rank() });
        }
        match (self, other) {
            (MagnusMatrix::Free(a), MagnusMatrix::Free(b)) => Ok(MagnusMatrix::Free(matmul(a, b))),
            (MagnusMatrix::Abelianized(a), MagnusMatrix::Abelianized(b)) => Ok(MagnusMatrix::Abelianized(matmul(a, b))),
            _ => Err(MagnusError::ModeMismatch),
        }
    }

    /// Rewrites every entry through `n`, which expresses the letters the
    /// entries are written in by words in older letters.
    pub fn substitute(&self, n: &EndoMap) -> Result<MagnusMatrix, MagnusError> {
        if self.rank() != n.rank() {
            return Err(MagnusError::RankMismatch { left: self.rank(), right: n.rank() });
        }
        Ok(match self {
            MagnusMatrix::Free(m) => {
                MagnusMatrix::Free(m.iter().map(|r| r.iter().map(|e| e.substitute(n.images())).collect()).collect())
            }
            MagnusMatrix::Abelianized(m) => {
                let rows = n.abelianization();
                MagnusMatrix::Abelianized(
                    m.iter().map(|r| r.iter().map(|e| e.substitute_linear(&rows)).collect()).collect(),
                )
            }
        })
    }

    /// Row-major array of serialized entries.
    pub fn to_json(&self) -> Value {
        let n = self.rank();
        Value::Array(
            (0..n).map(|i| Value::Array((0..n).map(|j| Value::String(self.entry_string(i, j))).collect())).collect(),
        )
    }
}

/// Fox Jacobian of an endomorphism.
pub fn magnus_of_endo(n: &EndoMap, mode: MagnusMode) -> MagnusMatrix {
    let m = MagnusMatrix::Free(n.fox_jacobian());
    match mode {
        MagnusMode::Free => m,
        MagnusMode::Abelianized => m.abelianize(),
    }
}

/// Matrix of the Whitehead move on the edge of `d`.
pub fn magnus_of_move(g: &FatGraph, d: Dart, mode: MagnusMode) -> Result<MagnusMatrix, MagnusError> {
    Ok(magnus_of_endo(&nielsen_of_move(g, d)?, mode))
}

/// Matrix of a sequence, accumulated move by move with the chain rule.
pub fn magnus_of_sequence(s: &MoveSequence, mode: MagnusMode) -> Result<MagnusMatrix, MagnusError> {
    let rank = 2 * s.start().genus()?;
    let mut acc = MagnusMatrix::identity(rank, mode);
    let mut prefix = EndoMap::identity(rank);
    for (k, step) in s.steps().iter().enumerate() {
        let n = nielsen_of_move(s.source(k), step.dart)?;
        let m = magnus_of_endo(&n, mode);
        acc = m.substitute(&prefix)?.mul(&acc)?;
        prefix = prefix.then(&n).map_err(|_| FatGraphError::NonComposable(k))?;
    }
    Ok(acc)
}
