//! Exact rational arithmetic and the linear algebra every other module
//! builds on.

mod linalg;
pub mod lp;
mod rat;

pub use linalg::{affine_dim, complement_basis, rank_of, RMat, RVec};
pub use rat::{rat, ParseRatError, Rat};

use lp::LpOutcome;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis rows are linearly dependent")]
    DependentBasis,
    #[error("matrix is not symmetric positive definite")]
    NotPositiveDefinite,
}

/// Finds `λ ≥ 0` with `A λ = b`, or `None` when infeasible.
///
/// The result is the basic solution reached by the two-phase simplex under
/// Bland's rule, so it is deterministic in the column order.
pub fn solve_nonneg(a: &RMat, b: &RVec) -> Result<Option<RVec>, ExactError> {
    if a.nrows() != b.dim() {
        return Err(ExactError::DimensionMismatch {
            expected: a.nrows(),
            found: b.dim(),
        });
    }
    if a.ncols() == 0 {
        return Ok(b.is_zero().then(|| RVec::zeros(0)));
    }
    Ok(match lp::simplex(a.rows(), b, None) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    })
}

/// [`solve_nonneg`] with the matrix given by its columns.
pub fn nonneg_combination(columns: &[RVec], b: &RVec) -> Result<Option<RVec>, ExactError> {
    if let Some(bad) = columns.iter().find(|c| c.dim() != b.dim()) {
        return Err(ExactError::DimensionMismatch {
            expected: b.dim(),
            found: bad.dim(),
        });
    }
    solve_nonneg(&RMat::from_cols(columns, b.dim()), b)
}

/// A symmetric positive definite bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpdForm {
    matrix: RMat,
}

impl SpdForm {
    /// Checks symmetry and positivity of every leading principal minor.
    pub fn new(matrix: RMat) -> Result<Self, ExactError> {
        if !matrix.is_symmetric() || !matrix.leading_minors().iter().all(Rat::is_positive) {
            return Err(ExactError::NotPositiveDefinite);
        }
        Ok(SpdForm { matrix })
    }

    pub fn identity(n: usize) -> Self {
        SpdForm {
            matrix: RMat::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &RMat {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == RMat::identity(self.dim())
    }

    /// `xᵀ B y`
    pub fn apply(&self, x: &RVec, y: &RVec) -> Rat {
        x.dot(&self.matrix.mul_vec(y))
    }

    /// `B x`, the vector representing `B(x, ·)`.
    pub fn lower(&self, x: &RVec) -> RVec {
        self.matrix.mul_vec(x)
    }

    /// The inverse form (positive definite whenever `self` is).
    pub fn inverse(&self) -> SpdForm {
        let inv = self
            .matrix
            .inverse()
            .expect("positive definite forms are invertible");
        SpdForm { matrix: inv }
    }
}

/// Projection of `x` onto `span(basis)` that is orthogonal with respect to
/// `form`: the unique `s` in the span with `B(x - s, b) = 0` for every row.
pub fn project_b(x: &RVec, basis: &RMat, form: &SpdForm) -> Result<RVec, ExactError> {
    let n = form.dim();
    if x.dim() != n {
        return Err(ExactError::DimensionMismatch {
            expected: n,
            found: x.dim(),
        });
    }
    if basis.nrows() == 0 {
        return Ok(RVec::zeros(n));
    }
    if basis.ncols() != n {
        return Err(ExactError::DimensionMismatch {
            expected: n,
            found: basis.ncols(),
        });
    }
    let lowered: Vec<RVec> = basis.rows().iter().map(|r| form.lower(r)).collect();
    let gram = RMat::from_rows(
        lowered
            .iter()
            .map(|bl| basis.rows().iter().map(|r| r.dot(bl)).collect())
            .collect(),
    );
    let rhs: RVec = lowered.iter().map(|bl| x.dot(bl)).collect();
    let inv = gram.inverse().ok_or(ExactError::DependentBasis)?;
    let alpha = inv.mul_vec(&rhs);
    Ok(basis.tmul_vec(&alpha))
}
