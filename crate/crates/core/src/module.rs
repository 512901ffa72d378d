//! Right modules over a finite-dimensional algebra, their morphisms, and
//! the basic constructions: free modules, sub/quotient modules, direct
//! sums, Hom spaces, projectivity certificates, and duals.
//!
//! Elements are coordinate columns. The action of a basis element `b` is a
//! matrix `act(b)` with `x · b = act(b) x`; since `x · (bc) = (x·b) · c`,
//! action matrices compose contravariantly:
//! `act(b_j) · act(b_i) = Σ_k c_{ij}^k act(b_k)`.

use crate::algebra::Algebra;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct Module {
    pub algebra: Arc<Algebra>,
    pub dim: usize,
    /// One `dim × dim` matrix per algebra basis element.
    pub action: Vec<Matrix>,
}

impl Module {
    pub fn new(algebra: Arc<Algebra>, action: Vec<Matrix>) -> Result<Module> {
        let dim = action.first().map_or(0, |m| m.rows());
        let m = Module {
            algebra,
            dim,
            action,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    pub fn zero(algebra: Arc<Algebra>) -> Module {
        let d = algebra.dim;
        let field = algebra.field;
        Module {
            algebra,
            dim: 0,
            action: vec![Matrix::zero(field, 0, 0); d],
        }
    }

    /// The free right module `A^n` with the right regular action. Basis
    /// index `(s, t) ↦ s·dim(A) + t` stands for `e_s ⊗ b_t`.
    pub fn free(algebra: Arc<Algebra>, n: usize) -> Module {
        let field = algebra.field;
        let d = algebra.dim;
        let mut action = Vec::with_capacity(d);
        for t in 0..d {
            let mut e = Matrix::zero(field, d, 1);
            e.set(t, 0, field.one());
            let r = algebra.right_mult(&e).expect("right_mult");
            let blocks: Vec<&Matrix> = std::iter::repeat(&r).take(n).collect();
            action.push(Matrix::block_diag(field, &blocks));
        }
        Module {
            algebra,
            dim: n * d,
            action,
        }
    }

    /// Action matrix of a general algebra element given by coordinates.
    pub fn act(&self, b: &Matrix) -> Result<Matrix> {
        let mut out = Matrix::zero(self.field(), self.dim, self.dim);
        for t in 0..self.algebra.dim {
            let c = b.get(t, 0);
            if c.is_zero() {
                continue;
            }
            out = out.add(&self.action[t].scale(c))?;
        }
        Ok(out)
    }

    /// Check the module laws: unit acts as identity, and the action is
    /// compatible with the structure constants.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        let d = self.algebra.dim;
        if self.action.len() != d {
            return Err(Error::DimensionMismatch(
                "one action matrix per algebra basis element required".into(),
            ));
        }
        for (t, m) in self.action.iter().enumerate() {
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix {t} has wrong shape"
                )));
            }
            if m.field() != self.field() {
                return Err(Error::FieldMismatch);
            }
        }
        if self.act(&self.algebra.unit)? != Matrix::identity(self.field(), self.dim) {
            violations.push("unit does not act as identity".into());
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.action[j].mul(&self.action[i])?;
                let rhs = self.act(&self.algebra.basis_product(i, j))?;
                if lhs != rhs {
                    violations.push(format!("action law fails on basis pair ({i},{j})"));
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// The submodule spanned by the columns of `basis` (which must be
    /// independent and action-stable), with its inclusion.
    pub fn submodule(&self, basis: &Matrix) -> Result<(Module, ModuleMorphism)> {
        let mut action = Vec::with_capacity(self.algebra.dim);
        for t in 0..self.algebra.dim {
            let img = self.action[t].mul(basis)?;
            let restricted = basis
                .solve(&img)?
                .ok_or_else(|| Error::Internal("subspace is not action-stable".into()))?;
            action.push(restricted);
        }
        let sub = Module {
            algebra: self.algebra.clone(),
            dim: basis.cols(),
            action,
        };
        let incl = ModuleMorphism::new(sub.clone(), self.clone(), basis.clone())?;
        Ok((sub, incl))
    }

    /// The quotient along a surjection `proj` whose rows give the chosen
    /// complement coordinates, with its projection morphism.
    pub fn quotient(&self, proj: &Matrix) -> Result<(Module, ModuleMorphism)> {
        let section = proj.right_inverse()?;
        let mut action = Vec::with_capacity(self.algebra.dim);
        for t in 0..self.algebra.dim {
            action.push(proj.mul(&self.action[t])?.mul(&section)?);
        }
        let quot = Module {
            algebra: self.algebra.clone(),
            dim: proj.rows(),
            action,
        };
        quot.validate().map_err(|_| {
            Error::Internal("projection kernel is not action-stable".into())
        })?;
        let pr = ModuleMorphism::new(self.clone(), quot.clone(), proj.clone())?;
        Ok((quot, pr))
    }

    /// Direct sum with inclusion and projection morphisms.
    pub fn direct_sum(summands: &[&Module]) -> Result<(Module, Vec<ModuleMorphism>, Vec<ModuleMorphism>)> {
        let algebra = summands
            .first()
            .map(|m| m.algebra.clone())
            .expect("direct_sum of at least one summand");
        let field = algebra.field;
        if summands.iter().any(|m| m.algebra != algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let total: usize = summands.iter().map(|m| m.dim).sum();
        let mut action = Vec::with_capacity(algebra.dim);
        for t in 0..algebra.dim {
            let blocks: Vec<&Matrix> = summands.iter().map(|m| &m.action[t]).collect();
            action.push(Matrix::block_diag(field, &blocks));
        }
        let sum = Module {
            algebra,
            dim: total,
            action,
        };
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for m in summands {
            let mut incl = Matrix::zero(field, total, m.dim);
            let mut proj = Matrix::zero(field, m.dim, total);
            for j in 0..m.dim {
                incl.set(offset + j, j, field.one());
                proj.set(j, offset + j, field.one());
            }
            inclusions.push(ModuleMorphism::new((*m).clone(), sum.clone(), incl)?);
            projections.push(ModuleMorphism::new(sum.clone(), (*m).clone(), proj)?);
            offset += m.dim;
        }
        Ok((sum, inclusions, projections))
    }

    /// Deterministic generating set: coordinate vectors taken greedily in
    /// index order, skipping those already in the submodule generated so
    /// far.
    pub fn generators(&self) -> Vec<usize> {
        let field = self.field();
        let mut gens = Vec::new();
        let mut span = Matrix::zero(field, self.dim, 0);
        for i in 0..self.dim {
            let mut e = Matrix::zero(field, self.dim, 1);
            e.set(i, 0, field.one());
            if span.cols() > 0 && span.solve(&e).expect("same field").is_some() {
                continue;
            }
            gens.push(i);
            // A-span of e: images under all basis action matrices
            for t in 0..self.algebra.dim {
                let img = self.action[t].mul(&e).expect("act");
                span = span.hstack(&img).expect("hstack");
            }
            span = span.column_space_basis();
        }
        gens
    }

    /// A surjection from a free module onto `self`, covering the
    /// deterministic generating set.
    pub fn free_cover(&self) -> Result<(Module, ModuleMorphism)> {
        let gens = self.generators();
        let free = Module::free(self.algebra.clone(), gens.len());
        let d = self.algebra.dim;
        let field = self.field();
        let mut mat = Matrix::zero(field, self.dim, gens.len() * d);
        for (s, &g) in gens.iter().enumerate() {
            let mut e = Matrix::zero(field, self.dim, 1);
            e.set(g, 0, field.one());
            for t in 0..d {
                let col = self.action[t].mul(&e)?;
                mat.set_column(s * d + t, &col);
            }
        }
        let cover = ModuleMorphism::new(free.clone(), self.clone(), mat)?;
        Ok((free, cover))
    }

    /// Projectivity test: does the free cover split? Returns the section
    /// as certificate.
    pub fn is_projective(&self) -> Result<Option<ModuleMorphism>> {
        if self.dim == 0 {
            let z = ModuleMorphism::zero(self.clone(), Module::free(self.algebra.clone(), 0));
            return Ok(Some(z));
        }
        let (free, cover) = self.free_cover()?;
        let section = solve_linear_maps(
            self,
            &free,
            &[(
                cover.matrix.clone(),
                Matrix::identity(self.field(), self.dim),
                Matrix::identity(self.field(), self.dim),
            )],
        )?;
        match section {
            Some(s) => Ok(Some(ModuleMorphism::new(self.clone(), free, s)?)),
            None => Ok(None),
        }
    }

    /// The dual module over the opposite algebra: transposed actions on
    /// the dual space.
    pub fn dualize(&self) -> Module {
        let op = Arc::new(self.algebra.opposite());
        Module {
            algebra: op,
            dim: self.dim,
            action: self.action.iter().map(Matrix::transpose).collect(),
        }
    }
}

/// An `A`-linear map, stored as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMorphism {
    pub source: Module,
    pub target: Module,
    pub matrix: Matrix,
}

impl ModuleMorphism {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<ModuleMorphism> {
        if source.algebra != target.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix {}x{} between modules of dims {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim,
                target.dim
            )));
        }
        for t in 0..source.algebra.dim {
            let lhs = matrix.mul(&source.action[t])?;
            let rhs = target.action[t].mul(&matrix)?;
            if lhs != rhs {
                return Err(Error::Validation(vec![format!(
                    "morphism is not linear over basis element {t}"
                )]));
            }
        }
        Ok(ModuleMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(m: &Module) -> ModuleMorphism {
        ModuleMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.field(), m.dim),
        }
    }

    pub fn zero(source: Module, target: Module) -> ModuleMorphism {
        let matrix = Matrix::zero(source.field(), target.dim, source.dim);
        ModuleMorphism {
            source,
            target,
            matrix,
        }
    }

    /// `self ∘ other` (first `other`, then `self`).
    pub fn compose(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch(
                "composition endpoints do not match".into(),
            ));
        }
        Ok(ModuleMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        Ok(ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Kernel as a submodule with inclusion.
    pub fn kernel(&self) -> Result<(Module, ModuleMorphism)> {
        self.source.submodule(&self.matrix.kernel_basis())
    }

    /// Cokernel as a quotient with projection.
    pub fn cokernel(&self) -> Result<(Module, ModuleMorphism)> {
        self.target.quotient(&self.matrix.cokernel_projection())
    }

    /// Contravariant dual: transpose between the dual modules.
    pub fn dualize(&self) -> ModuleMorphism {
        ModuleMorphism {
            source: self.target.dualize(),
            target: self.source.dualize(),
            matrix: self.matrix.transpose(),
        }
    }
}

/// Basis of `Hom_A(m, n)`, solved from the linearity system. Morphisms are
/// returned in the canonical kernel-basis order.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleMorphism>> {
    if m.algebra != n.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let field = m.field();
    let unknowns = n.dim * m.dim;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    // vec(F·act_m(t) − act_n(t)·F) = [(act_m(t)ᵀ ⊗ I) − (I ⊗ act_n(t))] vec(F)
    let mut system = Matrix::zero(field, 0, unknowns);
    let id_n = Matrix::identity(field, n.dim);
    let id_m = Matrix::identity(field, m.dim);
    for t in 0..m.algebra.dim {
        let lhs = m.action[t].transpose().kron(&id_n)?;
        let rhs = id_m.kron(&n.action[t])?;
        system = system.vstack(&lhs.sub(&rhs)?)?;
    }
    let kernel = system.kernel_basis();
    let mut basis = Vec::with_capacity(kernel.cols());
    for j in 0..kernel.cols() {
        let mat = Matrix::unvectorize(&kernel.column(j), n.dim, m.dim);
        basis.push(ModuleMorphism::new(m.clone(), n.clone(), mat)?);
    }
    Ok(basis)
}

/// Express a morphism matrix in a basis of morphism matrices; errors if
/// the map is not in the span (i.e. not `A`-linear).
pub fn hom_coordinates(basis: &[Matrix], matrix: &Matrix) -> Result<Matrix> {
    let field = matrix.field();
    let mut span = Matrix::zero(field, matrix.rows() * matrix.cols(), basis.len());
    for (j, b) in basis.iter().enumerate() {
        span.set_column(j, &b.vectorize());
    }
    span.solve(&matrix.vectorize())?
        .ok_or_else(|| Error::Internal("matrix is not in the Hom-space span".into()))
}

/// Solve for an `A`-linear map `F : m → n` subject to linear constraints
/// `L_i · F · R_i = C_i`. Returns the deterministic particular solution's
/// matrix, or `None` if the system is inconsistent.
pub fn solve_linear_maps(
    m: &Module,
    n: &Module,
    constraints: &[(Matrix, Matrix, Matrix)],
) -> Result<Option<Matrix>> {
    let field = m.field();
    let unknowns = n.dim * m.dim;
    let id_n = Matrix::identity(field, n.dim);
    let id_m = Matrix::identity(field, m.dim);
    let mut system = Matrix::zero(field, 0, unknowns);
    let mut rhs = Matrix::zero(field, 0, 1);
    for t in 0..m.algebra.dim {
        let lhs = m.action[t]
            .transpose()
            .kron(&id_n)?
            .sub(&id_m.kron(&n.action[t])?)?;
        rhs = rhs.vstack(&Matrix::zero(field, lhs.rows(), 1))?;
        system = system.vstack(&lhs)?;
    }
    for (l, r, c) in constraints {
        // vec(L·F·R) = (Rᵀ ⊗ L) vec(F)
        let block = r.transpose().kron(l)?;
        system = system.vstack(&block)?;
        rhs = rhs.vstack(&c.vectorize())?;
    }
    system.solve(&rhs).map(|o| o.map(|v| Matrix::unvectorize(&v, n.dim, m.dim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    const F5: Field = Field::Prime(5);

    fn simple_over_dual_numbers() -> (Arc<Algebra>, Module) {
        let a = Algebra::dual_numbers(F5);
        // k = A/(t): 1-dim, t acts by zero
        let action = vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)];
        let k = Module::new(a.clone(), action).unwrap();
        (a, k)
    }

    #[test]
    fn free_module_cases() {
        let a = Algebra::ground_field(F5);
        assert_eq!(Module::free(a.clone(), 0).dim, 0);
        assert_eq!(Module::free(a, 1).dim, 1);
        let d = Algebra::dual_numbers(F5);
        let f = Module::free(d, 1);
        assert_eq!(f.dim, 2);
        f.validate().unwrap();
        // t acts nilpotently on the regular module
        assert!(f.action[1].mul(&f.action[1]).unwrap().is_zero());
        assert_eq!(f.action[1].rank(), 1);
    }

    #[test]
    fn hom_space_dims() {
        let k = Algebra::ground_field(F5);
        let m = Module::free(k.clone(), 2);
        let n = Module::free(k.clone(), 3);
        assert_eq!(hom_space(&m, &n).unwrap().len(), 6);
        assert_eq!(hom_space(&m, &m).unwrap().len(), 4);

        let (a, simple) = simple_over_dual_numbers();
        let reg = Module::free(a, 1);
        // Hom(k, A) has dim 1 (image must be the socle)
        assert_eq!(hom_space(&simple, &reg).unwrap().len(), 1);
        assert_eq!(hom_space(&simple, &simple).unwrap().len(), 1);
        // Hom(A, k) has dim 1
        assert_eq!(hom_space(&reg, &simple).unwrap().len(), 1);
    }

    #[test]
    fn projectivity() {
        let (a, simple) = simple_over_dual_numbers();
        let reg = Module::free(a.clone(), 1);
        assert!(reg.is_projective().unwrap().is_some());
        assert!(Module::zero(a).is_projective().unwrap().is_some());
        assert!(simple.is_projective().unwrap().is_none());
    }

    #[test]
    fn projectivity_certificate_splits() {
        let a = Algebra::dual_numbers(F5);
        let m = Module::free(a, 2);
        let section = m.is_projective().unwrap().unwrap();
        let (free, cover) = m.free_cover().unwrap();
        assert_eq!(section.target, free);
        let round = cover.compose(&section).unwrap();
        assert_eq!(round.matrix, Matrix::identity(F5, m.dim));
    }

    #[test]
    fn dual_of_regular_dual_numbers_is_regular() {
        let a = Algebra::dual_numbers(F5);
        let reg = Module::free(a, 1);
        let dual = reg.dualize();
        dual.validate().unwrap();
        // self-injective: D(A) ≅ A over A^op; both are 2-dim with t² = 0
        assert_eq!(dual.dim, 2);
        assert_eq!(dual.action[1].rank(), 1);
        assert!(dual.action[1].mul(&dual.action[1]).unwrap().is_zero());
    }

    #[test]
    fn generators_of_direct_sum() {
        let (a, simple) = simple_over_dual_numbers();
        let reg = Module::free(a, 1);
        let (sum, _, _) = Module::direct_sum(&[&reg, &simple]).unwrap();
        // one generator for the free part, one for the simple part
        assert_eq!(sum.generators().len(), 2);
        let (_, cover) = sum.free_cover().unwrap();
        assert_eq!(cover.matrix.rank(), sum.dim);
    }

    #[test]
    fn kernel_and_cokernel_of_morphism() {
        let (a, simple) = simple_over_dual_numbers();
        let reg = Module::free(a, 1);
        let f = hom_space(&reg, &simple).unwrap().remove(0);
        let (ker, incl) = f.kernel().unwrap();
        assert_eq!(ker.dim, 1);
        assert!(f.compose(&incl).unwrap().is_zero());
        let (coker, proj) = f.cokernel().unwrap();
        assert_eq!(coker.dim, 0);
        assert!(proj.compose(&f).unwrap().is_zero());
    }
}
