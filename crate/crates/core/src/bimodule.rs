//! Bimodules and the adjoint functor pair they induce: the right exact
//! tensor functor `-⊗_A N : Mod-A → Mod-B` and the left exact hom functor
//! `Hom_B(N, -) : Mod-B → Mod-A`, together with the natural adjunction
//! bijection between the two structure-map forms.

use crate::algebra::Algebra;
use crate::matrix::Matrix;
use crate::module::{hom_coordinates, hom_space, Module, ModuleMorphism};
use crate::{Error, Result};
use std::sync::Arc;

/// An `A`–`B` bimodule: left `A`-action and right `B`-action commuting on
/// the same space.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    pub left_algebra: Arc<Algebra>,
    pub right_algebra: Arc<Algebra>,
    pub dim: usize,
    /// Left action: `λ(b_i) λ(b_j) = Σ_k c_{ij}^k λ(b_k)`.
    pub left_action: Vec<Matrix>,
    /// Right action, contravariant as in [`Module`].
    pub right_action: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(
        left_algebra: Arc<Algebra>,
        right_algebra: Arc<Algebra>,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Bimodule> {
        let dim = right_action.first().map_or(0, |m| m.rows());
        let b = Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left_action,
            right_action,
        };
        b.validate()?;
        Ok(b)
    }

    /// `A` as the regular `A`–`A` bimodule.
    pub fn regular(a: Arc<Algebra>) -> Bimodule {
        let d = a.dim;
        let field = a.field;
        let mut left = Vec::with_capacity(d);
        let mut right = Vec::with_capacity(d);
        for t in 0..d {
            let mut e = Matrix::zero(field, d, 1);
            e.set(t, 0, field.one());
            left.push(a.left_mult(&e).expect("left_mult"));
            right.push(a.right_mult(&e).expect("right_mult"));
        }
        Bimodule {
            left_algebra: a.clone(),
            right_algebra: a,
            dim: d,
            left_action: left,
            right_action: right,
        }
    }

    /// `k^m` as a bimodule over the ground field on both sides.
    pub fn vect(k: Arc<Algebra>, m: usize) -> Bimodule {
        assert_eq!(k.dim, 1, "vect bimodule needs the ground field algebra");
        let id = Matrix::identity(k.field, m);
        Bimodule {
            left_algebra: k.clone(),
            right_algebra: k,
            dim: m,
            left_action: vec![id.clone()],
            right_action: vec![id],
        }
    }

    /// View a right `A`-module `P` as a `k`–`A` bimodule (trivial left
    /// action of the ground field).
    pub fn from_right_module(k: Arc<Algebra>, p: &Module) -> Bimodule {
        assert_eq!(k.dim, 1);
        Bimodule {
            left_algebra: k,
            right_algebra: p.algebra.clone(),
            dim: p.dim,
            left_action: vec![Matrix::identity(p.field(), p.dim)],
            right_action: p.action.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        // the right structure is a module over B
        let right = self.as_right_module();
        if let Err(Error::Validation(v)) = right.validate() {
            violations.extend(v.into_iter().map(|s| format!("right action: {s}")));
        }
        // the left structure is a module over A^op
        let left = self.left_as_module();
        if let Err(Error::Validation(v)) = left.validate() {
            violations.extend(v.into_iter().map(|s| format!("left action: {s}")));
        }
        for l in &self.left_action {
            for r in &self.right_action {
                if l.mul(r)? != r.mul(l)? {
                    violations.push("left and right actions do not commute".into());
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// Forget the left action: a right `B`-module.
    pub fn as_right_module(&self) -> Module {
        Module {
            algebra: self.right_algebra.clone(),
            dim: self.dim,
            action: self.right_action.clone(),
        }
    }

    /// The left `A`-structure as a right module over `A^op` (same
    /// matrices; the law transposes into the contravariant convention).
    pub fn left_as_module(&self) -> Module {
        Module {
            algebra: Arc::new(self.left_algebra.opposite()),
            dim: self.dim,
            action: self.left_action.clone(),
        }
    }

    /// The same space as a `B^op`–`A^op` bimodule, used by the duality
    /// equivalence: the old right action becomes the new left action and
    /// vice versa.
    pub fn swap_sides(&self) -> Bimodule {
        Bimodule {
            left_algebra: Arc::new(self.right_algebra.opposite()),
            right_algebra: Arc::new(self.left_algebra.opposite()),
            dim: self.dim,
            left_action: self.right_action.clone(),
            right_action: self.left_action.clone(),
        }
    }

    /// `-⊗N` is exact iff `N` is projective as a left `A`-module.
    pub fn tensor_exact(&self) -> Result<Option<ModuleMorphism>> {
        self.left_as_module().is_projective()
    }

    /// `Hom(N,-)` is exact iff `N` is projective as a right `B`-module.
    pub fn hom_exact(&self) -> Result<Option<ModuleMorphism>> {
        self.as_right_module().is_projective()
    }
}

/// The tensor product `M ⊗_A N` as a right `B`-module, together with the
/// surjection from `M ⊗_k N` (balancing-map cokernel) and its chosen
/// section. Basis index `(i, j) ↦ i·dim(N) + j` on the ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorImage {
    pub module: Module,
    /// `module.dim × (dim M · dim N)` surjection.
    pub projection: Matrix,
    /// Right inverse of `projection`.
    pub section: Matrix,
}

/// `Hom_B(N, Y)` as a right `A`-module, with the solved basis of `B`-linear
/// maps identifying coordinates with actual matrices `N → Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomImage {
    pub module: Module,
    /// `module.dim` matrices of shape `dim Y × dim N`.
    pub basis: Vec<Matrix>,
}

/// Compute `M ⊗_A N` as the cokernel of the balancing map
/// `x ⊗ a ⊗ n ↦ xa ⊗ n − x ⊗ an`.
pub fn tensor_over(m: &Module, bim: &Bimodule) -> Result<TensorImage> {
    if m.algebra != bim.left_algebra {
        return Err(Error::AlgebraMismatch);
    }
    let field = m.field();
    let n = bim.dim;
    let id_m = Matrix::identity(field, m.dim);
    let id_n = Matrix::identity(field, n);
    let mut relations = Matrix::zero(field, m.dim * n, 0);
    for t in 0..m.algebra.dim {
        let balance = m.action[t]
            .kron(&id_n)?
            .sub(&id_m.kron(&bim.left_action[t])?)?;
        relations = relations.hstack(&balance)?;
    }
    let projection = relations.cokernel_projection();
    let section = projection.right_inverse()?;
    let mut action = Vec::with_capacity(bim.right_algebra.dim);
    for t in 0..bim.right_algebra.dim {
        let ambient = id_m.kron(&bim.right_action[t])?;
        action.push(projection.mul(&ambient)?.mul(&section)?);
    }
    let module = Module::new(bim.right_algebra.clone(), action)?;
    Ok(TensorImage {
        module,
        projection,
        section,
    })
}

/// Compute `Hom_B(N, Y)` with its right `A`-action `(f·a)(n) = f(a·n)`.
pub fn hom_from(bim: &Bimodule, y: &Module) -> Result<HomImage> {
    if y.algebra != bim.right_algebra {
        return Err(Error::AlgebraMismatch);
    }
    let n_right = bim.as_right_module();
    let basis: Vec<Matrix> = hom_space(&n_right, y)?
        .into_iter()
        .map(|f| f.matrix)
        .collect();
    let hdim = basis.len();
    let field = y.field();
    let mut action = Vec::with_capacity(bim.left_algebra.dim);
    for t in 0..bim.left_algebra.dim {
        let mut act = Matrix::zero(field, hdim, hdim);
        for (s, f) in basis.iter().enumerate() {
            let moved = f.mul(&bim.left_action[t])?;
            let coords = hom_coordinates(&basis, &moved)?;
            act.set_column(s, &coords);
        }
        action.push(act);
    }
    let module = Module::new(bim.left_algebra.clone(), action)?;
    Ok(HomImage { module, basis })
}

impl HomImage {
    /// Realize a coordinate column as an actual matrix `N → Y`.
    pub fn realize(&self, coords: &Matrix) -> Result<Matrix> {
        let field = coords.field();
        let (rows, cols) = match self.basis.first() {
            Some(b) => (b.rows(), b.cols()),
            None => return Ok(Matrix::zero(field, 0, 0)),
        };
        let mut out = Matrix::zero(field, rows, cols);
        for (s, b) in self.basis.iter().enumerate() {
            out = out.add(&b.scale(coords.get(s, 0)))?;
        }
        Ok(out)
    }
}

/// A bimodule functor in one of its two forms.
#[derive(Clone, Debug, PartialEq)]
pub enum BimoduleFunctor {
    /// `-⊗_A N : Mod-A → Mod-B`, right exact.
    Tensor(Arc<Bimodule>),
    /// `Hom_B(N, -) : Mod-B → Mod-A`, left exact.
    Hom(Arc<Bimodule>),
}

/// The image of a module under a bimodule functor, carrying the
/// identification data needed to act on morphisms.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctorImage {
    Tensor(TensorImage),
    Hom(HomImage),
}

impl FunctorImage {
    pub fn module(&self) -> &Module {
        match self {
            FunctorImage::Tensor(t) => &t.module,
            FunctorImage::Hom(h) => &h.module,
        }
    }
}

impl BimoduleFunctor {
    pub fn source_algebra(&self) -> Arc<Algebra> {
        match self {
            BimoduleFunctor::Tensor(b) => b.left_algebra.clone(),
            BimoduleFunctor::Hom(b) => b.right_algebra.clone(),
        }
    }

    pub fn target_algebra(&self) -> Arc<Algebra> {
        match self {
            BimoduleFunctor::Tensor(b) => b.right_algebra.clone(),
            BimoduleFunctor::Hom(b) => b.left_algebra.clone(),
        }
    }

    pub fn apply(&self, m: &Module) -> Result<FunctorImage> {
        match self {
            BimoduleFunctor::Tensor(b) => Ok(FunctorImage::Tensor(tensor_over(m, b)?)),
            BimoduleFunctor::Hom(b) => Ok(FunctorImage::Hom(hom_from(b, m)?)),
        }
    }

    /// The induced map `F(f) : F(src) → F(tgt)` for `f : src → tgt`,
    /// where the images were produced by [`BimoduleFunctor::apply`].
    pub fn map(
        &self,
        src: &FunctorImage,
        tgt: &FunctorImage,
        f: &ModuleMorphism,
    ) -> Result<ModuleMorphism> {
        match (self, src, tgt) {
            (BimoduleFunctor::Tensor(b), FunctorImage::Tensor(s), FunctorImage::Tensor(t)) => {
                let id_n = Matrix::identity(f.matrix.field(), b.dim);
                let ambient = f.matrix.kron(&id_n)?;
                let mat = t.projection.mul(&ambient)?.mul(&s.section)?;
                ModuleMorphism::new(s.module.clone(), t.module.clone(), mat)
            }
            (BimoduleFunctor::Hom(_), FunctorImage::Hom(s), FunctorImage::Hom(t)) => {
                let field = f.matrix.field();
                let mut mat = Matrix::zero(field, t.basis.len(), s.basis.len());
                for (j, g) in s.basis.iter().enumerate() {
                    let moved = f.matrix.mul(g)?;
                    let coords = hom_coordinates(&t.basis, &moved)?;
                    mat.set_column(j, &coords);
                }
                ModuleMorphism::new(s.module.clone(), t.module.clone(), mat)
            }
            _ => Err(Error::Internal("functor image kind mismatch".into())),
        }
    }

    /// Exactness certificate: projectivity of the bimodule on the side
    /// the functor contracts.
    pub fn is_exact(&self) -> Result<bool> {
        match self {
            BimoduleFunctor::Tensor(b) => Ok(b.tensor_exact()?.is_some()),
            BimoduleFunctor::Hom(b) => Ok(b.hom_exact()?.is_some()),
        }
    }
}

/// Adjunction, ♯ direction: turn `f : M⊗_A N → Y` into `f♯ : M → Hom_B(N, Y)`.
pub fn transpose_psi_to_phi(
    m: &Module,
    tensor: &TensorImage,
    hom: &HomImage,
    f: &ModuleMorphism,
) -> Result<ModuleMorphism> {
    let field = m.field();
    let n_dim = if m.dim == 0 {
        0
    } else {
        tensor.projection.cols() / m.dim
    };
    let mut phi = Matrix::zero(field, hom.basis.len(), m.dim);
    for s in 0..m.dim {
        // the map n ↦ f(q(e_s ⊗ n)) as a matrix Y.dim × N.dim
        let mut g = Matrix::zero(field, f.target.dim, n_dim);
        for t in 0..n_dim {
            let col = f.matrix.mul(&tensor.projection.column(s * n_dim + t))?;
            g.set_column(t, &col);
        }
        let coords = hom_coordinates(&hom.basis, &g)?;
        phi.set_column(s, &coords);
    }
    ModuleMorphism::new(m.clone(), hom.module.clone(), phi)
}

/// Adjunction, ♭ direction: turn `f : M → Hom_B(N, Y)` into
/// `f♭ : M⊗_A N → Y`.
pub fn transpose_phi_to_psi(
    m: &Module,
    tensor: &TensorImage,
    hom: &HomImage,
    y: &Module,
    f: &ModuleMorphism,
) -> Result<ModuleMorphism> {
    let field = m.field();
    let n_dim = if m.dim == 0 {
        match hom.basis.first() {
            Some(b) => b.cols(),
            None => 0,
        }
    } else {
        tensor.projection.cols() / m.dim
    };
    // the bilinear map on M ⊗_k N
    let mut big = Matrix::zero(field, y.dim, m.dim * n_dim);
    for s in 0..m.dim {
        let realized = hom.realize(&f.matrix.column(s))?;
        for t in 0..n_dim {
            big.set_column(s * n_dim + t, &realized.column(t));
        }
    }
    let mat = big.mul(&tensor.section)?;
    // well-definedness: the bilinear map must kill the balancing relations
    if mat.mul(&tensor.projection)? != big {
        return Err(Error::Internal(
            "adjoint transpose does not descend to the tensor quotient".into(),
        ));
    }
    ModuleMorphism::new(tensor.module.clone(), y.clone(), mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    const F5: Field = Field::Prime(5);

    fn simple() -> (Arc<Algebra>, Module) {
        let a = Algebra::dual_numbers(F5);
        let k = Module::new(
            a.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        (a, k)
    }

    #[test]
    fn tensor_with_regular_is_identity_on_dims() {
        let (a, k) = simple();
        let reg = Bimodule::regular(a.clone());
        let free = Module::free(a, 2);
        assert_eq!(tensor_over(&free, &reg).unwrap().module.dim, free.dim);
        assert_eq!(tensor_over(&k, &reg).unwrap().module.dim, 1);
    }

    #[test]
    fn tensor_of_simples_over_dual_numbers() {
        // k ⊗_{k[t]/t²} k has dim 1 (balancing map has rank 1 on a 2-dim space)
        let (a, k) = simple();
        let bim = Bimodule::new(
            a.clone(),
            Algebra::ground_field(F5),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
            vec![Matrix::identity(F5, 1)],
        )
        .unwrap();
        let t = tensor_over(&k, &bim).unwrap();
        assert_eq!(t.module.dim, 1);
    }

    #[test]
    fn vect_dims_multiply() {
        let k = Algebra::ground_field(F5);
        let bim = Bimodule::vect(k.clone(), 3);
        let m = Module::free(k.clone(), 2);
        let t = tensor_over(&m, &bim).unwrap();
        assert_eq!(t.module.dim, 6);
        let h = hom_from(&bim, &Module::free(k, 4)).unwrap();
        assert_eq!(h.module.dim, 12);
    }

    #[test]
    fn hom_from_regular_recovers_module() {
        let (a, k) = simple();
        let reg = Bimodule::regular(a.clone());
        // Hom_A(A, Y) ≅ Y
        let free = Module::free(a, 1);
        assert_eq!(hom_from(&reg, &free).unwrap().module.dim, 2);
        assert_eq!(hom_from(&reg, &k).unwrap().module.dim, 1);
    }

    #[test]
    fn hom_of_simples_over_dual_numbers() {
        let (a, k) = simple();
        let bim = Bimodule::new(
            Algebra::ground_field(F5),
            a,
            vec![Matrix::identity(F5, 1)],
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        // Hom_{k[t]/t²}(k, k) has dim 1
        assert_eq!(hom_from(&bim, &k).unwrap().module.dim, 1);
    }

    #[test]
    fn adjunction_dimension_and_round_trip() {
        // over k with dims (2, 3, 5): both Hom spaces have dim 2·3·5
        let k = Algebra::ground_field(F5);
        let m = Module::free(k.clone(), 2);
        let bim = Arc::new(Bimodule::vect(k.clone(), 3));
        let y = Module::free(k.clone(), 5);
        let tensor = tensor_over(&m, &bim).unwrap();
        let hom = hom_from(&bim, &y).unwrap();
        let psi_side = hom_space(&tensor.module, &y).unwrap();
        let phi_side = hom_space(&m, &hom.module).unwrap();
        assert_eq!(psi_side.len(), 30);
        assert_eq!(phi_side.len(), 30);
        for f in &psi_side {
            let phi = transpose_psi_to_phi(&m, &tensor, &hom, f).unwrap();
            let back = transpose_phi_to_psi(&m, &tensor, &hom, &y, &phi).unwrap();
            assert_eq!(back.matrix, f.matrix);
        }
    }

    #[test]
    fn adjunction_round_trip_nontrivial_algebra() {
        let (a, k) = simple();
        let kfield = Algebra::ground_field(F5);
        // P = A as k–A bimodule; M over k, Y over A
        let reg = Module::free(a.clone(), 1);
        let bim = Arc::new(Bimodule::from_right_module(kfield.clone(), &reg));
        let m = Module::free(kfield, 1);
        let tensor = tensor_over(&m, &bim).unwrap();
        assert_eq!(tensor.module.dim, 2);
        let hom = hom_from(&bim, &k).unwrap();
        let psi_side = hom_space(&tensor.module, &k).unwrap();
        let phi_side = hom_space(&m, &hom.module).unwrap();
        assert_eq!(psi_side.len(), phi_side.len());
        for f in &psi_side {
            let phi = transpose_psi_to_phi(&m, &tensor, &hom, f).unwrap();
            let back = transpose_phi_to_psi(&m, &tensor, &hom, &k, &phi).unwrap();
            assert_eq!(back.matrix, f.matrix);
        }
    }

    #[test]
    fn zero_map_transposes_to_zero() {
        let k = Algebra::ground_field(F5);
        let m = Module::free(k.clone(), 2);
        let bim = Arc::new(Bimodule::vect(k.clone(), 2));
        let y = Module::free(k, 2);
        let tensor = tensor_over(&m, &bim).unwrap();
        let hom = hom_from(&bim, &y).unwrap();
        let zero = ModuleMorphism::zero(tensor.module.clone(), y.clone());
        let phi = transpose_psi_to_phi(&m, &tensor, &hom, &zero).unwrap();
        assert!(phi.is_zero());
    }

    #[test]
    fn functor_morphism_action_is_functorial() {
        let (a, k) = simple();
        let functor = BimoduleFunctor::Tensor(Arc::new(Bimodule::regular(a.clone())));
        let free = Module::free(a, 1);
        let img_free = functor.apply(&free).unwrap();
        let img_k = functor.apply(&k).unwrap();
        let f = hom_space(&free, &k).unwrap().remove(0);
        let mapped = functor.map(&img_free, &img_k, &f).unwrap();
        let id = functor
            .map(&img_free, &img_free, &ModuleMorphism::identity(&free))
            .unwrap();
        assert_eq!(id.matrix, Matrix::identity(F5, img_free.module().dim));
        assert_eq!(mapped.matrix.rank(), f.matrix.rank());
    }

    #[test]
    fn exactness_certificates() {
        let a = Algebra::dual_numbers(F5);
        let reg = Arc::new(Bimodule::regular(a.clone()));
        assert!(BimoduleFunctor::Tensor(reg.clone()).is_exact().unwrap());
        assert!(BimoduleFunctor::Hom(reg).is_exact().unwrap());

        // k as a k[t]/t²–k bimodule: not projective on the dual-numbers side
        let k = Algebra::ground_field(F5);
        let bim = Arc::new(
            Bimodule::new(
                a,
                k,
                vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
                vec![Matrix::identity(F5, 1)],
            )
            .unwrap(),
        );
        assert!(!BimoduleFunctor::Tensor(bim.clone()).is_exact().unwrap());
        assert!(BimoduleFunctor::Hom(bim).is_exact().unwrap());
    }
}
