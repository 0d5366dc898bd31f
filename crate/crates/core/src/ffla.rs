//! Dense linear algebra over a [`FieldSpec`]: reduced row echelon form, rank,
//! null spaces and linear solves.
//!
//! Pivoting is deterministic (leftmost column, topmost nonzero row), so every
//! derived object such as a kernel basis is reproducible bit for bit.

use crate::gf::{Fe, FieldSpec};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FflaError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Row-major dense matrix over GF(q).
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
    field: Arc<FieldSpec>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix {}x{} over GF({})", self.rows, self.cols, self.field.size())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of [`FqMatrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Fe>),
    /// A particular solution; the solution set is this plus a kernel of the
    /// given dimension.
    Underdetermined { particular: Vec<Fe>, nullity: usize },
}

impl FqMatrix {
    pub fn zeros(field: &Arc<FieldSpec>, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
            field: Arc::clone(field),
        }
    }

    pub fn identity(field: &Arc<FieldSpec>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(field: &Arc<FieldSpec>, cols: usize, rows: Vec<Vec<Fe>>) -> Result<Self, FflaError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(FflaError::DimensionMismatch(format!(
                "row of length {} in matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
            field: Arc::clone(field),
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fe]> {
        // chunks_exact panics on zero chunk size
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FflaError> {
        if self.cols != other.rows {
            return Err(FflaError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![Fe::ZERO; other.cols];
            for k in 0..self.cols {
                self.field.axpy(&mut acc, self.get(r, k), other.row(k));
            }
            out.row_mut(r).copy_from_slice(&acc);
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>, FflaError> {
        if v.len() != self.cols {
            return Err(FflaError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.row_iter().map(|row| self.field.dot(row, v)).collect())
    }

    /// `v M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Fe]) -> Result<Vec<Fe>, FflaError> {
        if v.len() != self.rows {
            return Err(FflaError::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut acc = vec![Fe::ZERO; self.cols];
        for (r, &c) in v.iter().enumerate() {
            self.field.axpy(&mut acc, c, self.row(r));
        }
        Ok(acc)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, FflaError> {
        if self.cols != other.cols {
            return Err(FflaError::DimensionMismatch(format!(
                "stacking {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            field: Arc::clone(&self.field),
        })
    }

    pub fn push_row(&mut self, row: &[Fe]) -> Result<(), FflaError> {
        if row.len() != self.cols {
            return Err(FflaError::DimensionMismatch(format!(
                "row of length {} in matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let field = Arc::clone(&self.field);
        let mut pivots = Vec::new();
        let mut pr = 0;
        let mut pivot_row = vec![Fe::ZERO; self.cols];
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(src) = (pr..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if src != pr {
                for j in 0..self.cols {
                    self.data.swap(src * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = field.inv(self.get(pr, c)).expect("pivot is nonzero");
            field.scale(self.row_mut(pr), inv);
            pivot_row.copy_from_slice(self.row(pr));
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                let f = self.get(r, c);
                if !f.is_zero() {
                    field.axpy(self.row_mut(r), field.neg(f), &pivot_row);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column in ascending
    /// column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Solves `M x = b`.
    pub fn solve(&self, b: &[Fe]) -> Result<Solution, FflaError> {
        if b.len() != self.rows {
            return Err(FflaError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(&self.field, self.rows, self.cols + 1);
        for (r, &br) in b.iter().enumerate() {
            aug.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            aug.set(r, self.cols, br);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Err(FflaError::Inconsistent);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(i, self.cols);
        }
        let nullity = self.cols - pivots.len();
        Ok(if nullity == 0 {
            Solution::Unique(x)
        } else {
            Solution::Underdetermined { particular: x, nullity }
        })
    }

    /// Whether `v` lies in the row space, i.e. appending it leaves the rank
    /// unchanged.
    pub fn row_space_contains(&self, v: &[Fe]) -> Result<bool, FflaError> {
        let mut ext = self.clone();
        ext.push_row(v)?;
        Ok(ext.rank() == self.rank())
    }
}

fn kernel_from_rref(r: &FqMatrix, pivots: &[usize]) -> Vec<Vec<Fe>> {
    let field = r.field();
    let mut is_pivot = vec![false; r.cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..r.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Fe::ZERO; r.cols];
            v[free] = Fe::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(r.get(i, free));
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u32, m: u32) -> Arc<FieldSpec> {
        Arc::new(build_field(p, m, None).unwrap())
    }

    fn random_matrix(f: &Arc<FieldSpec>, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> FqMatrix {
        let data = (0..rows)
            .map(|_| (0..cols).map(|_| Fe::from_raw(rng.random_range(0..f.size()))).collect())
            .collect();
        FqMatrix::from_rows(f, cols, data).unwrap()
    }

    /// Random matrix of rank at most `k`: product of `rows x k` and `k x cols`.
    fn low_rank(f: &Arc<FieldSpec>, rows: usize, cols: usize, k: usize, rng: &mut ChaCha8Rng) -> FqMatrix {
        random_matrix(f, rows, k, rng).mul(&random_matrix(f, k, cols, rng)).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let f = field(5, 1);
        let id = FqMatrix::identity(&f, 4);
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2, 3]);
        assert!(id.kernel_basis().is_empty());

        let z = FqMatrix::zeros(&f, 3, 5);
        let (r, piv) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());
        assert_eq!(z.kernel_basis().len(), 5);
    }

    #[test]
    fn rref_idempotent_and_deterministic() {
        let f = field(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let m = low_rank(&f, 6, 6, rng.random_range(0..7), &mut rng);
            let (r, piv) = m.rref();
            let (r2, piv2) = r.rref();
            assert_eq!(r, r2);
            assert_eq!(piv, piv2);
            assert_eq!(m.rref(), (r, piv));
        }
    }

    #[test]
    fn rank_nullity_and_kernel_annihilates() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for f in [field(5, 1), field(2, 4)] {
            for (rows, cols) in [(3, 7), (10, 10), (40, 25), (300, 150)] {
                let k = rng.random_range(0..=rows.min(cols));
                let m = low_rank(&f, rows, cols, k, &mut rng);
                let rank = m.rank();
                assert!(rank <= k);
                let ker = m.kernel_basis();
                assert_eq!(rank + ker.len(), cols);
                for v in &ker {
                    assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
                }
                if !ker.is_empty() {
                    let kmat = FqMatrix::from_rows(&f, cols, ker.clone()).unwrap();
                    assert_eq!(kmat.rank(), ker.len());
                }
            }
        }
    }

    #[test]
    fn solve_recovers_planted_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = field(2, 4);
        for &(rows, cols) in &[(12, 8), (8, 12), (30, 30)] {
            let m = random_matrix(&f, rows, cols, &mut rng);
            let x: Vec<Fe> = (0..cols).map(|_| Fe::from_raw(rng.random_range(0..16))).collect();
            let b = m.mul_vec(&x).unwrap();
            let sol = m.solve(&b).unwrap();
            let (y, nullity) = match sol {
                Solution::Unique(y) => (y, 0),
                Solution::Underdetermined { particular, nullity } => (particular, nullity),
            };
            assert_eq!(nullity, cols - m.rank());
            assert_eq!(m.mul_vec(&y).unwrap(), b);
            // difference from the planted solution lies in the kernel
            let diff: Vec<Fe> = x.iter().zip(&y).map(|(&a, &b)| f.sub(a, b)).collect();
            assert!(m.mul_vec(&diff).unwrap().iter().all(|v| v.is_zero()));
            if nullity == 0 {
                assert_eq!(y, x);
            }
        }
    }

    #[test]
    fn inconsistent_system() {
        let f = field(5, 1);
        let m = FqMatrix::from_rows(&f, 2, vec![vec![Fe::ONE, Fe::ONE], vec![Fe::from_raw(2), Fe::from_raw(2)]]).unwrap();
        assert_eq!(m.solve(&[Fe::ONE, Fe::ONE]), Err(FflaError::Inconsistent));
        assert!(matches!(
            m.solve(&[Fe::ONE, Fe::from_raw(2)]),
            Ok(Solution::Underdetermined { nullity: 1, .. })
        ));
    }

    #[test]
    fn dimension_errors() {
        let f = field(5, 1);
        let a = FqMatrix::zeros(&f, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.mul_vec(&[Fe::ZERO; 2]).is_err());
        assert!(a.solve(&[Fe::ZERO; 3]).is_err());
        assert!(FqMatrix::from_rows(&f, 2, vec![vec![Fe::ZERO]]).is_err());
    }
}
