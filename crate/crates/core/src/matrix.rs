//! Dense matrices over an exact field, with the deterministic kernel /
//! cokernel / solve conventions that the rest of the crate relies on.
//!
//! All bases produced here are canonical: RREF pivots in column order,
//! free variables set to zero in solves, kernel vectors ordered by free
//! column. Identical inputs give bit-identical outputs.

use crate::field::{Field, Scalar};
use crate::{Error, Result};

/// A row-major matrix whose entries all share one field tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from a scalar grid; all entries must share one field tag.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
                entries.push(e.clone());
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            field,
            entries,
        })
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            for &e in *row {
                entries.push(field.from_i64(e));
            }
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            field,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch in set");
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        assert_eq!(c.field(), self.field, "field mismatch in scale");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with the row-major index convention
    /// `(i ⊗ j) ↦ i · cols_b + j` on both rows and columns, so that
    /// `(a ⊗ b)(x ⊗ y) = a x ⊗ b y` for column vectors.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Matrix::zero(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + k, j * other.cols + l, a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut out = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack col counts differ".into()));
        }
        let mut out = Matrix::zero(self.field, self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out.set(self.rows + i, j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn column(&self, j: usize) -> Matrix {
        let mut c = Matrix::zero(self.field, self.rows, 1);
        for i in 0..self.rows {
            c.set(i, 0, self.get(i, j).clone());
        }
        c
    }

    pub fn set_column(&mut self, j: usize, col: &Matrix) {
        assert_eq!(col.rows, self.rows);
        assert_eq!(col.cols, 1);
        for i in 0..self.rows {
            self.set(i, j, col.get(i, 0).clone());
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zero(self.field, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Gather the listed columns into a new matrix, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.field, self.rows, idx.len());
        for (oj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, oj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form via Gauss–Jordan elimination.
    /// Returns `(rref, pivot columns, rank)`.
    pub fn rref(&self) -> (Matrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // first nonzero entry at or below row r
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv();
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    m.row_sub_scaled(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, r)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(c);
            self.set(r, j, v);
        }
    }

    /// row i -= factor * row r
    fn row_sub_scaled(&mut self, i: usize, r: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j).sub(&self.get(r, j).mul(factor));
            self.set(i, j, v);
        }
    }

    /// Columns form the canonical basis of the right kernel: one vector
    /// per free column of the RREF, ordered by free column index, with a
    /// `1` in the free coordinate.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots, _) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut out = Matrix::zero(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.field.one());
            for (row, &p) in pivots.iter().enumerate() {
                out.set(p, k, r.get(row, f).neg());
            }
        }
        out
    }

    /// Solve `self · X = b`; `None` when inconsistent. The particular
    /// solution sets all free variables to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.field != b.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs rhs {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b)?;
        let (r, pivots, _) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zero(self.field, self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Indices of a canonical independent subset of the columns (the
    /// pivot columns of the RREF), a basis of the column space.
    pub fn column_space_pivots(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn column_space_basis(&self) -> Matrix {
        self.select_columns(&self.column_space_pivots())
    }

    /// Surjection onto the cokernel: a `(rows − rank) × rows` matrix `C`
    /// with `C · self = 0`, full row rank, in the canonical complement
    /// basis (the left kernel of `self` in kernel-basis convention).
    pub fn cokernel_projection(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// A right inverse of a surjective matrix (free variables zero).
    pub fn right_inverse(&self) -> Result<Matrix> {
        self.solve(&Matrix::identity(self.field, self.rows))?
            .ok_or_else(|| Error::Internal("right_inverse of non-surjective matrix".into()))
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square".into()));
        }
        let inv = self.right_inverse()?;
        debug_assert!(inv.mul(self)?.eq(&Matrix::identity(self.field, self.rows)));
        Ok(inv)
    }

    /// Flatten column-major into a single column: coordinate
    /// `j * rows + i` holds entry `(i, j)`.
    pub fn vectorize(&self) -> Matrix {
        let mut v = Matrix::zero(self.field, self.rows * self.cols, 1);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.set(j * self.rows + i, 0, self.get(i, j).clone());
            }
        }
        v
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn unvectorize(v: &Matrix, rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, rows * cols);
        let mut m = Matrix::zero(v.field, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.set(i, j, v.get(j * rows + i, 0).clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F5: Field = Field::Prime(5);

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(F5, 2);
        let (r, pivots, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rank, 2);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zero(Field::Rationals, 3, 4);
        let (r, pivots, rank) = z.rref();
        assert_eq!(r, z);
        assert!(pivots.is_empty());
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        // [[1,2],[2,4]] over Q: rank 1, pivot column 0
        let m = Matrix::from_i64(Field::Rationals, &[&[1, 2], &[2, 4]]);
        let (_, pivots, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_i64(Field::Rationals, &[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());
        // canonical vector is (-2, 1)
        assert_eq!(k, Matrix::from_i64(Field::Rationals, &[&[-2], &[1]]));
    }

    #[test]
    fn kernel_identity_and_zero() {
        assert_eq!(Matrix::identity(F5, 3).kernel_basis().cols(), 0);
        let k = Matrix::zero(F5, 4, 4).kernel_basis();
        assert_eq!(k.cols(), 4);
        assert_eq!(k, Matrix::identity(F5, 4));
    }

    #[test]
    fn solve_cases() {
        let id = Matrix::identity(F5, 3);
        let b = Matrix::from_i64(F5, &[&[1], &[2], &[3]]);
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let z = Matrix::zero(F5, 2, 2);
        let nb = Matrix::from_i64(F5, &[&[1], &[0]]);
        assert!(z.solve(&nb).unwrap().is_none());

        // underdetermined: free variables set to zero
        let a = Matrix::from_i64(Field::Rationals, &[&[1, 1]]);
        let b = Matrix::from_i64(Field::Rationals, &[&[3]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64(Field::Rationals, &[&[3], &[0]]));
    }

    #[test]
    fn cokernel_cases() {
        assert_eq!(Matrix::identity(F5, 3).cokernel_projection().rows(), 0);
        let z = Matrix::zero(F5, 3, 2);
        assert_eq!(z.cokernel_projection(), Matrix::identity(F5, 3));
        // rank-1 2x2: 1x2 projection annihilating the image
        let m = Matrix::from_i64(F5, &[&[1, 2], &[2, 4]]);
        let c = m.cokernel_projection();
        assert_eq!(c.rows(), 1);
        assert!(c.mul(&m).unwrap().is_zero());
        assert_eq!(c.rank(), 1);
    }

    #[test]
    fn kron_cases() {
        let id2 = Matrix::identity(F5, 2);
        let id3 = Matrix::identity(F5, 3);
        assert_eq!(id2.kron(&id3).unwrap(), Matrix::identity(F5, 6));
        let a = Matrix::from_i64(F5, &[&[1, 2], &[3, 4]]);
        let one = Matrix::from_i64(F5, &[&[1]]);
        assert_eq!(a.kron(&one).unwrap(), a);
        let two = Matrix::from_i64(F5, &[&[2]]);
        let three = Matrix::from_i64(F5, &[&[3]]);
        assert_eq!(two.kron(&three).unwrap(), Matrix::from_i64(F5, &[&[6 % 5]]));
    }

    #[test]
    fn field_mismatch_reported() {
        let a = Matrix::identity(F5, 2);
        let b = Matrix::identity(Field::Rationals, 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch)));
        assert!(matches!(a.kron(&b), Err(Error::FieldMismatch)));
        assert!(matches!(a.solve(&b), Err(Error::FieldMismatch)));
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0i64..5, r * c).prop_map(move |vals| {
                let mut m = Matrix::zero(F5, r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, F5.from_i64(vals[i * c + j]));
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn cokernel_laws(m in arb_matrix()) {
            let c = m.cokernel_projection();
            prop_assert!(c.mul(&m).unwrap().is_zero());
            prop_assert_eq!(c.rows(), m.rows() - m.rank());
            prop_assert_eq!(c.rank(), c.rows());
        }

        #[test]
        fn solve_iff_rank_condition(m in arb_matrix(), v in proptest::collection::vec(0i64..5, 1..5)) {
            let mut b = Matrix::zero(F5, m.rows(), 1);
            for (i, &x) in v.iter().take(m.rows()).enumerate() {
                b.set(i, 0, F5.from_i64(x));
            }
            let aug = m.hstack(&b).unwrap();
            let sol = m.solve(&b).unwrap();
            prop_assert_eq!(sol.is_some(), m.rank() == aug.rank());
            if let Some(x) = sol {
                prop_assert_eq!(m.mul(&x).unwrap(), b);
            }
        }

        #[test]
        fn kron_bilinear(a in arb_matrix(), b in arb_matrix(), c in arb_matrix()) {
            if a.rows() == b.rows() && a.cols() == b.cols() {
                let lhs = a.add(&b).unwrap().kron(&c).unwrap();
                let rhs = a.kron(&c).unwrap().add(&b.kron(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
