//! Dense exact matrices over an [`ExactField`]: rank, kernel, cokernel,
//! solving.
//!
//! Pivoting always takes the first nonzero entry in column order, so kernel
//! and cokernel bases are deterministic and reproducible across runs.

use crate::error::{Error, Result};
use crate::field::{ExactField, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: ExactField,
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zero(field: ExactField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: ExactField, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: ExactField, rows: Vec<Vec<FieldElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(field: ExactField, rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut FieldElem {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn submatrix_rows(&self, range: std::ops::Range<usize>) -> Matrix {
        Matrix {
            field: self.field,
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = f.mul(a, other.at(k, c));
                    let cur = f.add(out.at(r, c), &prod);
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} cols, vector has {}",
                self.cols,
                v.len()
            )));
        }
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = f.zero();
            for c in 0..self.cols {
                acc = f.add(&acc, &f.mul(self.at(r, c), &v[c]));
            }
            out[r] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix add".into()));
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(Matrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &FieldElem) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    /// Rank by plain elimination, without kernel or cokernel bookkeeping.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut data = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivot_row = 0usize;
        for col in 0..cols {
            let Some(src) =
                (pivot_row..rows).find(|&i| !f.is_zero(&data[i * cols + col]))
            else {
                continue;
            };
            if src != pivot_row {
                for c in col..cols {
                    data.swap(src * cols + c, pivot_row * cols + c);
                }
            }
            let inv = f.inv(&data[pivot_row * cols + col]).unwrap();
            for i in pivot_row + 1..rows {
                let lead = &data[i * cols + col];
                if f.is_zero(lead) {
                    continue;
                }
                let factor = f.mul(lead, &inv);
                for c in col..cols {
                    let v = f.sub(
                        &data[i * cols + c],
                        &f.mul(&factor, &data[pivot_row * cols + c]),
                    );
                    data[i * cols + c] = v;
                }
            }
            pivot_row += 1;
            if pivot_row == rows {
                break;
            }
        }
        pivot_row
    }

    /// Row reduction with full bookkeeping: rank, a kernel basis (columns
    /// of the returned matrix) and a cokernel projection Q of full row
    /// rank with Q * M = 0.
    pub fn rank_profile(&self) -> RankProfile {
        let f = self.field;
        let mut r = self.clone();
        let mut t = Matrix::identity(f, self.rows);
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            // first nonzero entry in column order
            let Some(src) = (pivot_row..self.rows).find(|&i| !f.is_zero(r.at(i, col))) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..self.cols {
                    r.data.swap(src * self.cols + c, pivot_row * self.cols + c);
                }
                for c in 0..self.rows {
                    t.data.swap(src * self.rows + c, pivot_row * self.rows + c);
                }
            }
            let inv = f.inv(r.at(pivot_row, col)).unwrap();
            for c in 0..self.cols {
                let v = f.mul(r.at(pivot_row, c), &inv);
                r.set(pivot_row, c, v);
            }
            for c in 0..self.rows {
                let v = f.mul(t.at(pivot_row, c), &inv);
                t.set(pivot_row, c, v);
            }
            for i in 0..self.rows {
                if i == pivot_row || f.is_zero(r.at(i, col)) {
                    continue;
                }
                let factor = r.at(i, col).clone();
                for c in 0..self.cols {
                    let v = f.sub(r.at(i, c), &f.mul(&factor, r.at(pivot_row, c)));
                    r.set(i, c, v);
                }
                for c in 0..self.rows {
                    let v = f.sub(t.at(i, c), &f.mul(&factor, t.at(pivot_row, c)));
                    t.set(i, c, v);
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        let rank = pivots.len();

        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut kernel = Matrix::zero(f, self.cols, free_cols.len());
        for (j, &fc) in free_cols.iter().enumerate() {
            kernel.set(fc, j, f.one());
            for &(pr, pc) in &pivots {
                kernel.set(pc, j, f.neg(r.at(pr, fc)));
            }
        }

        let coker = t.submatrix_rows(rank..self.rows);

        RankProfile { rank, kernel, coker_projection: coker, rref: r, transform: t, pivots }
    }

    /// One particular solution of `self * x = b`, free variables set to
    /// zero under first-nonzero pivoting; `None` when inconsistent.
    pub fn solve(&self, b: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, rhs has {}",
                self.rows,
                b.len()
            )));
        }
        let f = self.field;
        let mut aug = Matrix::zero(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let profile = aug.rank_profile();
        if profile.pivots.iter().any(|&(_, c)| c == self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for &(pr, pc) in &profile.pivots {
            x[pc] = profile.rref.at(pr, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, when it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let profile = self.rank_profile();
        if profile.rank != self.rows {
            return None;
        }
        // T * M = RREF; pivot (pr, pc) says row pr of T is the pc-th row
        // of the inverse
        let f = self.field;
        let mut inv = Matrix::zero(f, self.rows, self.rows);
        for &(pr, pc) in &profile.pivots {
            for c in 0..self.rows {
                inv.set(pc, c, profile.transform.at(pr, c).clone());
            }
        }
        Some(inv)
    }
}

/// Output of [`Matrix::rank_profile`].
#[derive(Clone, Debug)]
pub struct RankProfile {
    pub rank: usize,
    /// cols x nullity matrix whose columns span the kernel.
    pub kernel: Matrix,
    /// (rows - rank) x rows matrix of full row rank annihilating the
    /// column span; its rows descend to a basis of the cokernel.
    pub coker_projection: Matrix,
    pub rref: Matrix,
    /// Full row-operation matrix with `transform * M = rref`.
    pub transform: Matrix,
    pub pivots: Vec<(usize, usize)>,
}

impl RankProfile {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.cols
    }

    pub fn coker_dim(&self) -> usize {
        self.coker_projection.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ExactField {
        ExactField::rationals()
    }

    #[test]
    fn identity_has_full_rank() {
        let m = Matrix::identity(q(), 2);
        let p = m.rank_profile();
        assert_eq!(p.rank, 2);
        assert_eq!(p.kernel_dim(), 0);
        assert_eq!(p.coker_dim(), 0);
    }

    #[test]
    fn zero_matrix_profile() {
        let m = Matrix::zero(q(), 3, 2);
        let p = m.rank_profile();
        assert_eq!(p.rank, 0);
        assert_eq!(p.kernel_dim(), 2);
        assert_eq!(p.coker_dim(), 3);
    }

    #[test]
    fn rank_one_kernel_and_cokernel() {
        let m = Matrix::from_i64_rows(q(), &[&[1, 2], &[2, 4]]);
        let p = m.rank_profile();
        assert_eq!(p.rank, 1);
        assert_eq!(p.kernel_dim(), 1);
        assert_eq!(p.coker_dim(), 1);
        // kernel vector proportional to (2, -1)
        let v = p.kernel.col(0);
        let f = q();
        let cross = f.sub(
            &f.mul(&v[0], &f.from_i64(-1)),
            &f.mul(&v[1], &f.from_i64(2)),
        );
        assert!(f.is_zero(&cross));
        assert!(m.mul(&p.kernel).unwrap().is_zero());
        assert!(p.coker_projection.mul(&m).unwrap().is_zero());
        assert_eq!(p.coker_projection.rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let id = Matrix::identity(f, 2);
        let b = vec![f.one(), f.zero()];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));

        let a = Matrix::from_i64_rows(f, &[&[1, 1]]);
        let sol = a.solve(&[f.one()]).unwrap().unwrap();
        assert_eq!(sol, vec![f.one(), f.zero()]);

        let z = Matrix::zero(f, 2, 2);
        assert_eq!(z.solve(&[f.one(), f.zero()]).unwrap(), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = ExactField::prime(7).unwrap();
        let m = Matrix::from_i64_rows(f, &[&[1, 2, 0], &[0, 1, 5], &[3, 0, 1]]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 3));
        assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(f, 3));
    }

    #[test]
    fn transpose_rank_equal() {
        let f = ExactField::prime(3).unwrap();
        let m = Matrix::from_i64_rows(f, &[&[1, 2, 0], &[2, 1, 1]]);
        assert_eq!(m.rank(), m.transpose().rank());
    }
}
