use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ExactError, Rat};

/// A dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RVec(Vec<Rat>);

impl RVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        RVec(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RVec(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rat::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RVec(xs.iter().map(|&x| Rat::from_int(x)).collect())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn dot(&self, other: &RVec) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = Rat::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, other: &RVec) -> RVec {
        RVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RVec) -> RVec {
        RVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rat) -> RVec {
        RVec(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> RVec {
        RVec(self.0.iter().map(|a| -a).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Rat, other: &RVec) -> RVec {
        RVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    /// The primitive integer vector on the same open ray; `None` for zero.
    pub fn primitive(&self) -> Option<RVec> {
        if self.is_zero() {
            return None;
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        Some(RVec(
            ints.into_iter().map(|x| Rat::from_bigint(x / &g)).collect(),
        ))
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> Rat {
        self.0.iter().map(Rat::abs).max().unwrap_or_else(Rat::zero)
    }
}

impl Index<usize> for RVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for RVec {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl FromIterator<Rat> for RVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        RVec(iter.into_iter().collect())
    }
}

impl fmt::Debug for RVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A rectangular matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RMat {
    rows: Vec<RVec>,
    cols: usize,
}

impl RMat {
    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: Vec<RVec>) -> Self {
        let cols = rows.first().map_or(0, RVec::dim);
        assert!(rows.iter().all(|r| r.dim() == cols), "ragged matrix");
        RMat { rows, cols }
    }

    pub fn with_cols(rows: Vec<RVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.dim() == cols), "ragged matrix");
        RMat { rows, cols }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[RVec], dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        RMat {
            rows,
            cols: cols.len(),
        }
    }

    pub fn identity(n: usize) -> Self {
        RMat {
            rows: (0..n).map(|i| RVec::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMat {
            rows: vec![RVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RVec {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<RVec> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.rows[i][j] = v;
    }

    pub fn col(&self, j: usize) -> RVec {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> RMat {
        let rows = (0..self.cols).map(|j| self.col(j)).collect();
        RMat {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn mul_vec(&self, v: &RVec) -> RVec {
        self.rows.iter().map(|r| r.dot(v)).collect()
    }

    /// `selfᵀ v`, i.e. the combination of rows weighted by `v`.
    pub fn tmul_vec(&self, v: &RVec) -> RVec {
        let mut acc = RVec::zeros(self.cols);
        for (r, c) in self.rows.iter().zip(v.iter()) {
            if !c.is_zero() {
                acc = acc.add_scaled(c, r);
            }
        }
        acc
    }

    pub fn mul(&self, other: &RMat) -> RMat {
        assert_eq!(self.cols, other.nrows());
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| t.rows.iter().map(|c| r.dot(c)).collect())
            .collect();
        RMat {
            rows,
            cols: other.cols,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows() == self.cols
            && (0..self.cols).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    /// Exact rank by fraction-free (Bareiss) elimination over the integers.
    pub fn rank(&self) -> usize {
        let mut m = self.integer_rows();
        bareiss_rank(&mut m)
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| {
                let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
                r.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect()
    }

    /// Determinant of a square matrix.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Rat {
        assert_eq!(self.nrows(), self.cols, "determinant of non-square matrix");
        let n = self.cols;
        let mut m: Vec<Vec<Rat>> = self.rows.iter().map(|r| r.coords().to_vec()).collect();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &piv;
                for k in c..n {
                    let sub = &f * &m[c][k];
                    m[r][k] -= sub;
                }
            }
        }
        det
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RMat, Vec<usize>) {
        let mut m: Vec<Vec<Rat>> = self.rows.iter().map(|r| r.coords().to_vec()).collect();
        let pivots = rref_in_place(&mut m, self.cols);
        let rows = m.into_iter().map(RVec::new).collect();
        (
            RMat {
                rows,
                cols: self.cols,
            },
            pivots,
        )
    }

    /// A basis of `{x : self · x = 0}`, one vector per free column, in
    /// increasing order of the free column.
    pub fn nullspace(&self) -> Vec<RVec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        (0..self.cols)
            .filter(|&j| is_pivot[j].is_none())
            .map(|free| {
                let mut v = RVec::zeros(self.cols);
                v[free] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, free);
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b`, free variables set to zero.
    pub fn solve(&self, b: &RVec) -> Result<Option<RVec>, ExactError> {
        self.solve_with_rank(b).map(|(x, _)| x)
    }

    /// Like [`RMat::solve`], also reporting the rank of `self`. The solution
    /// is unique exactly when the rank equals the column count.
    pub fn solve_with_rank(&self, b: &RVec) -> Result<(Option<RVec>, usize), ExactError> {
        if b.dim() != self.nrows() {
            return Err(ExactError::DimensionMismatch {
                expected: self.nrows(),
                found: b.dim(),
            });
        }
        let mut m: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .zip(b.iter())
            .map(|(r, bi)| {
                let mut row = r.coords().to_vec();
                row.push(bi.clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut m, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok((None, pivots.len() - 1));
        }
        let mut x = RVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = m[i][self.cols].clone();
        }
        Ok((Some(x), pivots.len()))
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RMat> {
        let n = self.cols;
        if self.nrows() != n {
            return None;
        }
        let mut m: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.coords().to_vec();
                row.extend(RVec::unit(n, i).into_coords());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut m, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = m.into_iter().map(|r| RVec::new(r[n..].to_vec())).collect();
        Some(RMat { rows, cols: n })
    }

    /// The leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<Rat> {
        (1..=self.cols.min(self.nrows()))
            .map(|k| {
                let sub = RMat {
                    rows: self.rows[..k]
                        .iter()
                        .map(|r| RVec::new(r.coords()[..k].to_vec()))
                        .collect(),
                    cols: k,
                };
                sub.det()
            })
            .collect()
    }
}

/// Gauss–Jordan over the first `ncols` columns. Returns pivot columns.
#[allow(clippy::needless_range_loop)]
fn rref_in_place(m: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(p, row);
        let inv = m[row][c].recip();
        if !inv.is_one() {
            for k in c..width {
                if !m[row][k].is_zero() {
                    m[row][k] *= &inv;
                }
            }
        }
        for r in 0..nrows {
            if r == row || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..width {
                if m[row][k].is_zero() {
                    continue;
                }
                let sub = &f * &m[row][k];
                m[r][k] -= sub;
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        for r in rank + 1..nrows {
            for k in c + 1..ncols {
                let v = &m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k];
                m[r][k] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank of a list of vectors (as rows).
pub fn rank_of(vectors: &[RVec]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RMat::from_rows(vectors.to_vec()).rank()
}

/// Affine dimension of a point set (`-1` for the empty set).
pub fn affine_dim(points: &[RVec]) -> isize {
    match points.split_first() {
        None => -1,
        Some((first, rest)) => {
            let diffs: Vec<RVec> = rest.iter().map(|p| p.sub(first)).collect();
            rank_of(&diffs) as isize
        }
    }
}

/// A rational basis of the orthogonal complement `{x : ⟨v, x⟩ = 0 ∀v}`.
pub fn complement_basis(vectors: &[RVec], dim: usize) -> Vec<RVec> {
    if vectors.is_empty() {
        return (0..dim).map(|i| RVec::unit(dim, i)).collect();
    }
    RMat::with_cols(vectors.to_vec(), dim).nullspace()
}
