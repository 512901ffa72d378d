//! Ext groups of modules via the deterministic projective resolution, with
//! functorial induced maps and transport along exact bimodule functors.
//!
//! A `k`-cochain on the resolution `P_• = A^{g_•}` with values in `N` is a
//! generator-image matrix `G : N.dim × g_k`; its vectorization is the
//! coordinate column used by all the matrices here. Ext classes are held
//! as chosen representative cocycles and compared modulo coboundaries by
//! rank computations, never as quotient-space elements.

use crate::bimodule::{BimoduleFunctor, FunctorImage};
use crate::matrix::Matrix;
use crate::module::{Module, ModuleMorphism};
use crate::resolution::{
    extend_from_generators, extension_operator, generator_columns, lift_chain_map,
    ProjectiveResolution, ResolutionLike,
};
use crate::{Error, Result};
use std::sync::Arc;

/// One graded piece of an Ext computation.
#[derive(Clone, Debug)]
pub struct ExtDegree {
    pub dim: usize,
    /// Representative cocycles, one column per Ext basis class.
    pub reps: Matrix,
    /// Basis of the cocycle space `ker D^k`.
    pub cocycles: Matrix,
    /// Independent coboundaries (pivot columns of `D^{k-1}`).
    pub coboundaries: Matrix,
}

/// `Ext^k_A(M, N)` for `k = 0..=max_degree`, on a fixed resolution of `M`.
#[derive(Clone, Debug)]
pub struct ExtComputation {
    pub resolution: Arc<ProjectiveResolution>,
    pub target: Module,
    pub max_degree: usize,
    /// Cochain differentials `D^k : C^k → C^{k+1}` for `k = 0..=max_degree`.
    pub differentials: Vec<Matrix>,
    pub degrees: Vec<ExtDegree>,
}

impl ExtComputation {
    /// The resolution must reach degree `max_degree + 1`.
    pub fn new(
        resolution: Arc<ProjectiveResolution>,
        target: Module,
        max_degree: usize,
    ) -> Result<ExtComputation> {
        if resolution.of.algebra != target.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if resolution.len() < max_degree + 2 {
            return Err(Error::DimensionMismatch(format!(
                "resolution of length {} cannot support Ext up to degree {max_degree}",
                resolution.len()
            )));
        }
        let algebra = resolution.algebra();
        let field = algebra.field;
        let n = target.dim;
        let mut differentials = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let g_next = resolution.gens[k + 1];
            let gencols = generator_columns(algebra, g_next);
            let m = resolution.differentials[k].matrix.mul(&gencols)?;
            let ext_op = extension_operator(algebra, &target, resolution.gens[k]);
            let id_n = Matrix::identity(field, n);
            differentials.push(m.transpose().kron(&id_n)?.mul(&ext_op)?);
        }
        let mut degrees = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let cocycles = differentials[k].kernel_basis();
            let coboundaries = if k == 0 {
                Matrix::zero(field, cocycles.rows(), 0)
            } else {
                let prev = &differentials[k - 1];
                prev.select_columns(&prev.column_space_pivots())
            };
            // greedily keep cocycle columns that grow the rank beyond the
            // coboundaries
            let mut kept = coboundaries.clone();
            let mut reps = Matrix::zero(field, cocycles.rows(), 0);
            for j in 0..cocycles.cols() {
                let cand = kept.hstack(&cocycles.column(j))?;
                if cand.rank() > kept.rank() {
                    reps = reps.hstack(&cocycles.column(j))?;
                    kept = cand;
                }
            }
            degrees.push(ExtDegree {
                dim: reps.cols(),
                reps,
                cocycles,
                coboundaries,
            });
        }
        Ok(ExtComputation {
            resolution,
            target,
            max_degree,
            differentials,
            degrees,
        })
    }

    pub fn dim(&self, k: usize) -> usize {
        self.degrees[k].dim
    }

    /// View a cochain coordinate column as a generator-image matrix.
    pub fn cocycle_matrix(&self, k: usize, v: &Matrix) -> Matrix {
        Matrix::unvectorize(v, self.target.dim, self.resolution.gens[k])
    }

    /// Coordinates of a cocycle's class in the chosen Ext basis.
    pub fn class_coords(&self, k: usize, cocycle: &Matrix) -> Result<Matrix> {
        if !self.differentials[k].mul(cocycle)?.is_zero() {
            return Err(Error::Internal("cochain is not a cocycle".into()));
        }
        let deg = &self.degrees[k];
        if deg.dim == 0 {
            return Ok(Matrix::zero(cocycle.field(), 0, 1));
        }
        let basis = deg.reps.hstack(&deg.coboundaries)?;
        let coords = basis
            .solve(cocycle)?
            .ok_or_else(|| Error::Internal("cocycle not spanned by reps + coboundaries".into()))?;
        Ok(coords.submatrix(0..deg.dim, 0..1))
    }
}

/// Convenience: `dim Ext^k_A(M, N)` with representatives, on fresh
/// deterministic resolutions.
pub fn ext_dim(k: usize, m: &Module, n: &Module) -> Result<(usize, ExtComputation)> {
    let res = Arc::new(ProjectiveResolution::new(m.clone(), k + 1)?);
    let ext = ExtComputation::new(res, n.clone(), k)?;
    Ok((ext.dim(k), ext))
}

/// Matrix of the map `Ext^k(M, N) → Ext^k(M, N')` induced by
/// post-composition with `g : N → N'`. Both computations must share the
/// same resolution.
pub fn induced_post(
    src: &ExtComputation,
    tgt: &ExtComputation,
    g: &ModuleMorphism,
    k: usize,
) -> Result<Matrix> {
    let field = g.matrix.field();
    let mut out = Matrix::zero(field, tgt.dim(k), src.dim(k));
    for j in 0..src.dim(k) {
        let cocycle = src.cocycle_matrix(k, &src.degrees[k].reps.column(j));
        let moved = g.matrix.mul(&cocycle)?;
        let coords = tgt.class_coords(k, &moved.vectorize())?;
        out.set_column(j, &coords);
    }
    Ok(out)
}

/// Matrix of the map `Ext^k(M, N) → Ext^k(M', N)` induced by
/// pre-composition along `f : M' → M`, given a chain lift of `f` from the
/// target computation's resolution to the source's.
pub fn induced_pre(
    src: &ExtComputation,
    tgt: &ExtComputation,
    lift: &[Matrix],
    k: usize,
) -> Result<Matrix> {
    let field = src.target.field();
    let algebra = tgt.resolution.algebra();
    let mut out = Matrix::zero(field, tgt.dim(k), src.dim(k));
    for j in 0..src.dim(k) {
        let gen_images = src.cocycle_matrix(k, &src.degrees[k].reps.column(j));
        let full = extend_from_generators(src.resolution.algebra(), &src.target, &gen_images)?;
        let pulled = full.mul(&lift[k])?;
        let restricted = pulled.mul(&generator_columns(algebra, tgt.resolution.gens[k]))?;
        let coords = tgt.class_coords(k, &restricted.vectorize())?;
        out.set_column(j, &coords);
    }
    Ok(out)
}

/// Chain lift of `f : M' → M` between the deterministic resolutions,
/// suitable for [`induced_pre`].
pub fn lift_morphism(
    src_of_mprime: &ProjectiveResolution,
    tgt_of_m: &ProjectiveResolution,
    f: &Matrix,
    upto: usize,
) -> Result<Vec<Matrix>> {
    lift_chain_map(src_of_mprime, &tgt_of_m.as_complex(), f, upto)
}

/// Transport of Ext classes along an exact bimodule functor `F`: the
/// functor is applied to the source resolution (an exact, generally
/// non-projective resolution of `F M`), and a chain map from a projective
/// resolution is lifted through it.
pub struct FunctorTransport {
    pub functor: BimoduleFunctor,
    pub src_res: Arc<ProjectiveResolution>,
    /// `F M` with its identification data.
    pub fm: FunctorImage,
    /// `F P_k` for each degree.
    pub applied_terms: Vec<FunctorImage>,
    /// Chain map `lift[k] : lift_source.terms[k] → F P_k`.
    pub lift: Vec<Matrix>,
}

impl FunctorTransport {
    /// `lift_source` is a projective resolution over the functor's target
    /// algebra and `f0 : lift_source.of → F M` the base morphism (the
    /// identity for plain transport, a structure map for combined
    /// transport-and-precomposition).
    pub fn new(
        functor: BimoduleFunctor,
        src_res: Arc<ProjectiveResolution>,
        lift_source: &ProjectiveResolution,
        f0: &Matrix,
        upto: usize,
    ) -> Result<FunctorTransport> {
        if src_res.len() < upto + 1 {
            return Err(Error::DimensionMismatch(
                "source resolution too short for transport".into(),
            ));
        }
        let fm = functor.apply(&src_res.of)?;
        let mut applied_terms = Vec::with_capacity(upto + 1);
        for k in 0..=upto {
            applied_terms.push(functor.apply(&src_res.terms[k])?);
        }
        let mut maps = Vec::with_capacity(upto);
        for k in 1..=upto {
            let d = functor.map(
                &applied_terms[k],
                &applied_terms[k - 1],
                &src_res.differentials[k - 1],
            )?;
            maps.push(d.matrix);
        }
        let aug = functor
            .map(&applied_terms[0], &fm, &src_res.augmentation)?
            .matrix;
        let complex = ResolutionLike {
            of: fm.module().clone(),
            terms: applied_terms.iter().map(|i| i.module().clone()).collect(),
            maps,
            aug,
        };
        let lift = lift_chain_map(lift_source, &complex, f0, upto).map_err(|e| match e {
            Error::LiftFailure(msg) => {
                Error::FunctorNotExact(format!("transport lift failed ({msg})"))
            }
            other => other,
        })?;
        Ok(FunctorTransport {
            functor,
            src_res,
            fm,
            applied_terms,
            lift,
        })
    }

    /// Carry a cocycle `P_k → N` (as generator images) to a cocycle
    /// `lift_source_k → F N` (as generator images over the target
    /// algebra). `n_img` must be the canonical `F N`.
    pub fn transport_cocycle(
        &self,
        k: usize,
        n: &Module,
        n_img: &FunctorImage,
        gen_images: &Matrix,
    ) -> Result<Matrix> {
        let src_algebra = self.src_res.algebra();
        let full = extend_from_generators(src_algebra, n, gen_images)?;
        let morph = ModuleMorphism::new(self.src_res.terms[k].clone(), n.clone(), full)?;
        let mapped = self.functor.map(&self.applied_terms[k], n_img, &morph)?;
        let composed = mapped.matrix.mul(&self.lift[k])?;
        let tgt_algebra = self.functor.target_algebra();
        let g = composed.cols() / tgt_algebra.dim;
        composed.mul(&generator_columns(&tgt_algebra, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bimodule::Bimodule;
    use crate::field::Field;
    use crate::module::hom_space;

    const F5: Field = Field::Prime(5);

    fn dual_numbers_simple() -> (Arc<Algebra>, Module) {
        let a = Algebra::dual_numbers(F5);
        let k = Module::new(
            a.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        (a, k)
    }

    #[test]
    fn ext_of_simple_is_one_dimensional_in_all_degrees() {
        let (_, k) = dual_numbers_simple();
        let res = Arc::new(ProjectiveResolution::new(k.clone(), 5).unwrap());
        let ext = ExtComputation::new(res, k, 4).unwrap();
        for deg in 0..=4 {
            assert_eq!(ext.dim(deg), 1, "Ext^{deg}(k,k)");
        }
    }

    #[test]
    fn ext_vanishes_on_free_source() {
        let (a, k) = dual_numbers_simple();
        let free = Module::free(a, 2);
        let res = Arc::new(ProjectiveResolution::new(free, 4).unwrap());
        let ext = ExtComputation::new(res, k, 3).unwrap();
        assert_eq!(ext.dim(0), 2);
        for deg in 1..=3 {
            assert_eq!(ext.dim(deg), 0);
        }
    }

    #[test]
    fn ext_zero_agrees_with_hom_space() {
        let (a, k) = dual_numbers_simple();
        let reg = Module::free(a.clone(), 1);
        for (m, n) in [(&k, &reg), (&reg, &k), (&k, &k), (&reg, &reg)] {
            let res = Arc::new(ProjectiveResolution::new(m.clone(), 2).unwrap());
            let ext = ExtComputation::new(res, n.clone(), 1).unwrap();
            assert_eq!(ext.dim(0), hom_space(m, n).unwrap().len());
        }
    }

    #[test]
    fn ext_over_field_vanishes_positively() {
        let k = Algebra::ground_field(F5);
        let m = Module::free(k.clone(), 3);
        let n = Module::free(k, 2);
        let res = Arc::new(ProjectiveResolution::new(m, 4).unwrap());
        let ext = ExtComputation::new(res, n, 3).unwrap();
        assert_eq!(ext.dim(0), 6);
        for deg in 1..=3 {
            assert_eq!(ext.dim(deg), 0);
        }
    }

    #[test]
    fn ext_additive_in_source() {
        let (_, k) = dual_numbers_simple();
        let (sum, _, _) = Module::direct_sum(&[&k, &k]).unwrap();
        let res = Arc::new(ProjectiveResolution::new(sum, 3).unwrap());
        let ext = ExtComputation::new(res, k.clone(), 2).unwrap();
        for deg in 0..=2 {
            assert_eq!(ext.dim(deg), 2);
        }
    }

    #[test]
    fn induced_post_identity_is_identity() {
        let (_, k) = dual_numbers_simple();
        let res = Arc::new(ProjectiveResolution::new(k.clone(), 3).unwrap());
        let ext = ExtComputation::new(res, k.clone(), 2).unwrap();
        let idmap = ModuleMorphism::identity(&k);
        for deg in 0..=2 {
            let m = induced_post(&ext, &ext, &idmap, deg).unwrap();
            assert_eq!(m, Matrix::identity(F5, ext.dim(deg)));
        }
    }

    #[test]
    fn induced_pre_into_free_kills_ext_one() {
        // pre-composition along k ↪ A sends Ext¹(k,k) into Ext¹(A,k) = 0
        let (a, k) = dual_numbers_simple();
        let reg = Module::free(a, 1);
        let socle = hom_space(&k, &reg).unwrap().remove(0);
        let res_k = Arc::new(ProjectiveResolution::new(k.clone(), 3).unwrap());
        let res_a = Arc::new(ProjectiveResolution::new(reg.clone(), 3).unwrap());
        let ext_src = ExtComputation::new(res_a.clone(), k.clone(), 2).unwrap();
        let ext_tgt = ExtComputation::new(res_k.clone(), k.clone(), 2).unwrap();
        let lift = lift_morphism(&res_k, &res_a, &socle.matrix, 2).unwrap();
        let m1 = induced_pre(&ext_src, &ext_tgt, &lift, 1).unwrap();
        // Ext¹(A,k) = 0, so the matrix has zero columns
        assert_eq!(m1.cols(), 0);
        assert_eq!(ext_src.dim(1), 0);
    }

    #[test]
    fn transport_along_regular_bimodule_is_identity_on_dims() {
        let (a, k) = dual_numbers_simple();
        let functor = BimoduleFunctor::Tensor(Arc::new(Bimodule::regular(a.clone())));
        let res = Arc::new(ProjectiveResolution::new(k.clone(), 4).unwrap());
        let fm = functor.apply(&k).unwrap();
        let q_res = ProjectiveResolution::new(fm.module().clone(), 4).unwrap();
        let id0 = Matrix::identity(F5, fm.module().dim);
        let transport =
            FunctorTransport::new(functor.clone(), res.clone(), &q_res, &id0, 3).unwrap();
        let ext_src = ExtComputation::new(res, k.clone(), 2).unwrap();
        let n_img = functor.apply(&k).unwrap();
        let ext_tgt =
            ExtComputation::new(Arc::new(q_res), n_img.module().clone(), 2).unwrap();
        for deg in 0..=2 {
            let mut mapped = Matrix::zero(F5, ext_tgt.dim(deg), 0);
            for j in 0..ext_src.dim(deg) {
                let g = ext_src.cocycle_matrix(deg, &ext_src.degrees[deg].reps.column(j));
                let moved = transport.transport_cocycle(deg, &k, &n_img, &g).unwrap();
                let coords = ext_tgt.class_coords(deg, &moved.vectorize()).unwrap();
                mapped = mapped.hstack(&coords).unwrap();
            }
            // the regular bimodule is the identity functor: dims match and
            // the transported classes stay independent
            assert_eq!(ext_src.dim(deg), ext_tgt.dim(deg));
            assert_eq!(mapped.rank(), ext_src.dim(deg));
        }
    }
}
