//! Finite-dimensional associative unital algebras given by structure
//! constants.

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::{Error, Result};
use std::sync::Arc;

/// An algebra of dimension `d` with basis `b_0, …, b_{d−1}` and
/// multiplication `b_i · b_j = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    pub field: Field,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `c[(i*d + j)*d + k]` is the coefficient of `b_k` in `b_i b_j`.
    structure: Vec<Scalar>,
    /// Coordinates of the unit element, as a `d × 1` column.
    pub unit: Matrix,
}

impl Algebra {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        structure: Vec<Scalar>,
        unit: Matrix,
    ) -> Result<Algebra> {
        let dim = labels.len();
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(
                "structure constant array has wrong length".into(),
            ));
        }
        if structure.iter().any(|s| s.field() != field) || unit.field() != field {
            return Err(Error::FieldMismatch);
        }
        if unit.rows() != dim || unit.cols() != 1 {
            return Err(Error::DimensionMismatch("unit vector has wrong shape".into()));
        }
        let a = Algebra {
            field,
            dim,
            labels,
            structure,
            unit,
        };
        a.validate()?;
        Ok(a)
    }

    /// The ground field viewed as a one-dimensional algebra.
    pub fn ground_field(field: Field) -> Arc<Algebra> {
        Arc::new(
            Algebra::new(
                field,
                vec!["1".into()],
                vec![field.one()],
                Matrix::identity(field, 1),
            )
            .expect("ground field is an algebra"),
        )
    }

    /// The dual numbers `k[t]/t²` with basis `{1, t}`.
    pub fn dual_numbers(field: Field) -> Arc<Algebra> {
        Arc::new(Algebra::truncated_polynomial(field, 2))
    }

    /// `k[t]/tⁿ` with basis `{1, t, …, t^{n−1}}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Algebra {
        assert!(n >= 1);
        let mut structure = vec![field.zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    structure[(i * n + j) * n + (i + j)] = field.one();
                }
            }
        }
        let mut unit = Matrix::zero(field, n, 1);
        unit.set(0, 0, field.one());
        let labels = (0..n)
            .map(|i| if i == 0 { "1".to_string() } else { format!("t^{i}") })
            .collect();
        Algebra::new(field, labels, structure, unit).expect("truncated polynomial algebra")
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `b_i · b_j` as a column.
    pub fn basis_product(&self, i: usize, j: usize) -> Matrix {
        let mut v = Matrix::zero(self.field, self.dim, 1);
        for k in 0..self.dim {
            v.set(k, 0, self.structure_constant(i, j, k).clone());
        }
        v
    }

    /// Product of two coordinate columns.
    pub fn multiply(&self, x: &Matrix, y: &Matrix) -> Result<Matrix> {
        let mut out = Matrix::zero(self.field, self.dim, 1);
        for i in 0..self.dim {
            let xi = x.get(i, 0);
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let yj = y.get(j, 0);
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                out = out.add(&self.basis_product(i, j).scale(&c))?;
            }
        }
        Ok(out)
    }

    /// Matrix of right multiplication by `b`: `x ↦ x · b` on coordinates.
    pub fn right_mult(&self, b: &Matrix) -> Result<Matrix> {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let mut e = Matrix::zero(self.field, self.dim, 1);
            e.set(j, 0, self.field.one());
            let col = self.multiply(&e, b)?;
            m.set_column(j, &col);
        }
        Ok(m)
    }

    /// Matrix of left multiplication by `b`: `x ↦ b · x`.
    pub fn left_mult(&self, b: &Matrix) -> Result<Matrix> {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let mut e = Matrix::zero(self.field, self.dim, 1);
            e.set(j, 0, self.field.one());
            let col = self.multiply(b, &e)?;
            m.set_column(j, &col);
        }
        Ok(m)
    }

    /// Check associativity on all basis triples and that the unit is a
    /// two-sided identity.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        let basis = |i: usize| {
            let mut e = Matrix::zero(self.field, self.dim, 1);
            e.set(i, 0, self.field.one());
            e
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let lhs = self.multiply(&self.basis_product(i, j), &basis(k))?;
                    let rhs = self.multiply(&basis(i), &self.basis_product(j, k))?;
                    if lhs != rhs {
                        violations.push(format!("associativity fails at basis triple ({i},{j},{k})"));
                    }
                }
            }
        }
        for i in 0..self.dim {
            let e = basis(i);
            if self.multiply(&self.unit, &e)? != e {
                violations.push(format!("unit is not a left identity on basis {i}"));
            }
            if self.multiply(&e, &self.unit)? != e {
                violations.push(format!("unit is not a right identity on basis {i}"));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// The opposite algebra: same space, reversed multiplication.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let mut structure = vec![self.field.zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    structure[(i * d + j) * d + k] = self.structure_constant(j, i, k).clone();
                }
            }
        }
        Algebra {
            field: self.field,
            dim: d,
            labels: self.labels.clone(),
            structure,
            unit: self.unit.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F5: Field = Field::Prime(5);

    #[test]
    fn ground_field_is_valid() {
        let k = Algebra::ground_field(F5);
        assert_eq!(k.dim, 1);
        k.validate().unwrap();
    }

    #[test]
    fn dual_numbers_multiplication() {
        let a = Algebra::dual_numbers(F5);
        a.validate().unwrap();
        // t * t = 0
        let t = Matrix::from_i64(F5, &[&[0], &[1]]);
        assert!(a.multiply(&t, &t).unwrap().is_zero());
        // right multiplication by t is nilpotent
        let rt = a.right_mult(&t).unwrap();
        assert!(rt.mul(&rt).unwrap().is_zero());
        assert_eq!(rt.rank(), 1);
    }

    #[test]
    fn opposite_is_valid_and_involutive() {
        let a = Algebra::truncated_polynomial(F5, 3);
        let op = a.opposite();
        op.validate().unwrap();
        assert_eq!(op.opposite(), a);
    }

    #[test]
    fn bad_structure_constants_rejected() {
        // 1-dim "algebra" where b*b = 2b but unit claims b: fails unit law
        let field = F5;
        let res = Algebra::new(
            field,
            vec!["b".into()],
            vec![field.from_i64(2)],
            Matrix::identity(field, 1),
        );
        assert!(matches!(res, Err(Error::Validation(_))));
    }
}
