//! Projective resolutions by iterated free covers, and chain-map lifting
//! against exact complexes.
//!
//! Free modules `A^g` use the basis layout `(s, t) ↦ s·dim(A) + t`; an
//! `A`-linear map out of `A^g` is determined by its generator images (the
//! images of `e_s ⊗ 1`), which is the coordinate system used throughout
//! the Ext machinery.

use crate::algebra::Algebra;
use crate::matrix::Matrix;
use crate::module::{Module, ModuleMorphism};
use crate::{Error, Result};

/// Columns are the free generators `e_s ⊗ 1` of `A^g` in coordinates.
pub fn generator_columns(algebra: &Algebra, g: usize) -> Matrix {
    let d = algebra.dim;
    let field = algebra.field;
    let mut m = Matrix::zero(field, g * d, g);
    for s in 0..g {
        for t in 0..d {
            m.set(s * d + t, s, algebra.unit.get(t, 0).clone());
        }
    }
    m
}

/// Extend generator images (a `target.dim × g` matrix) to the full matrix
/// of the induced `A`-linear map `A^g → target`: the column for basis
/// element `e_s ⊗ b_t` is `act(b_t) · G[:, s]`.
pub fn extend_from_generators(
    algebra: &Algebra,
    target: &Module,
    gen_images: &Matrix,
) -> Result<Matrix> {
    let g = gen_images.cols();
    let d = algebra.dim;
    let mut full = Matrix::zero(target.field(), target.dim, g * d);
    for s in 0..g {
        let col = gen_images.column(s);
        for t in 0..d {
            let img = target.action[t].mul(&col)?;
            full.set_column(s * d + t, &img);
        }
    }
    Ok(full)
}

/// The linear operator `vec(G) ↦ vec(full(G))` of
/// [`extend_from_generators`], used to assemble cochain differentials.
pub fn extension_operator(algebra: &Algebra, target: &Module, g: usize) -> Matrix {
    let d = algebra.dim;
    let n = target.dim;
    let field = target.field();
    let mut op = Matrix::zero(field, g * d * n, g * n);
    for s in 0..g {
        for t in 0..d {
            for i in 0..n {
                for j in 0..n {
                    let v = target.action[t].get(i, j);
                    if !v.is_zero() {
                        op.set((s * d + t) * n + i, s * n + j, v.clone());
                    }
                }
            }
        }
    }
    op
}

/// Restrict a full matrix `A^g → target` to its generator images.
pub fn restrict_to_generators(algebra: &Algebra, full: &Matrix) -> Result<Matrix> {
    let d = algebra.dim;
    let g = full.cols() / d.max(1);
    full.mul(&generator_columns(algebra, g))
}

/// A projective resolution `… → P_1 → P_0 → M → 0` with free terms,
/// deterministic generator choices, and verified exactness.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveResolution {
    pub of: Module,
    pub terms: Vec<Module>,
    /// Generator counts `g_k` with `terms[k] = A^{g_k}`.
    pub gens: Vec<usize>,
    /// `differentials[k-1]` is `d_k : terms[k] → terms[k-1]`, `k ≥ 1`.
    pub differentials: Vec<ModuleMorphism>,
    pub augmentation: ModuleMorphism,
}

impl ProjectiveResolution {
    /// Build `length + 1` terms (degrees `0..=length`).
    pub fn new(of: Module, length: usize) -> Result<ProjectiveResolution> {
        let mut terms = Vec::with_capacity(length + 1);
        let mut gens = Vec::with_capacity(length + 1);
        let mut differentials = Vec::with_capacity(length);
        let (free0, cover0) = of.free_cover()?;
        gens.push(free0.dim / of.algebra.dim.max(1));
        let mut prev_cover = cover0.clone();
        terms.push(free0);
        let augmentation = cover0;
        for _ in 1..=length {
            // the kernel of the previous cover sits inside the previous
            // free term; covering it freely gives the next differential
            let (kernel, incl) = prev_cover.kernel()?;
            let (free, cover) = kernel.free_cover()?;
            gens.push(free.dim / kernel.algebra.dim.max(1));
            let d = incl.compose(&cover)?;
            differentials.push(ModuleMorphism::new(
                free.clone(),
                terms.last().expect("nonempty").clone(),
                d.matrix,
            )?);
            terms.push(free);
            prev_cover = cover;
        }
        let res = ProjectiveResolution {
            of,
            terms,
            gens,
            differentials,
            augmentation,
        };
        res.verify()?;
        Ok(res)
    }

    /// Rank checks: augmentation surjective, consecutive composites zero,
    /// and exactness at every interior degree.
    pub fn verify(&self) -> Result<()> {
        let mut violations = Vec::new();
        if self.augmentation.matrix.rank() != self.of.dim {
            violations.push("augmentation is not surjective".into());
        }
        if let Some(d1) = self.differentials.first() {
            if !self.augmentation.compose(d1)?.is_zero() {
                violations.push("aug ∘ d_1 ≠ 0".into());
            }
            if d1.matrix.rank() + self.augmentation.matrix.rank() != self.terms[0].dim {
                violations.push("complex not exact at degree 0".into());
            }
        }
        for k in 1..self.differentials.len() {
            let dk = &self.differentials[k - 1];
            let dk1 = &self.differentials[k];
            if !dk.compose(dk1)?.is_zero() {
                violations.push(format!("d_{} ∘ d_{} ≠ 0", k, k + 1));
            }
            if dk1.matrix.rank() + dk.matrix.rank() != self.terms[k].dim {
                violations.push(format!("complex not exact at degree {k}"));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "resolution verification failed: {}",
                violations.join("; ")
            )))
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.of.algebra
    }

    pub fn as_complex(&self) -> ResolutionLike {
        ResolutionLike {
            of: self.of.clone(),
            terms: self.terms.clone(),
            maps: self.differentials.iter().map(|d| d.matrix.clone()).collect(),
            aug: self.augmentation.matrix.clone(),
        }
    }
}

/// An exact complex `… → T_1 → T_0 → M → 0` with arbitrary module terms,
/// as a lifting target.
#[derive(Clone, Debug)]
pub struct ResolutionLike {
    pub of: Module,
    pub terms: Vec<Module>,
    /// `maps[k-1] : terms[k] → terms[k-1]`.
    pub maps: Vec<Matrix>,
    pub aug: Matrix,
}

/// Lift `f0 : src.of → tgt.of` to a chain map `u_k : src.terms[k] →
/// tgt.terms[k]` for `k = 0..=upto`, solving degreewise in generator-image
/// coordinates. Existence is guaranteed when the target complex is exact;
/// failure signals a broken hypothesis.
pub fn lift_chain_map(
    src: &ProjectiveResolution,
    tgt: &ResolutionLike,
    f0: &Matrix,
    upto: usize,
) -> Result<Vec<Matrix>> {
    let algebra = src.algebra();
    let field = algebra.field;
    let d = algebra.dim;
    let mut lifts: Vec<Matrix> = Vec::with_capacity(upto + 1);
    for k in 0..=upto {
        if k >= src.terms.len() || k >= tgt.terms.len() {
            return Err(Error::LiftFailure(format!(
                "complexes too short to lift to degree {k}"
            )));
        }
        let g = src.gens[k];
        let tgt_term = &tgt.terms[k];
        let (l, rhs) = if k == 0 {
            (tgt.aug.clone(), f0.mul(&src.augmentation.matrix)?)
        } else {
            (
                tgt.maps[k - 1].clone(),
                lifts[k - 1].mul(&src.differentials[k - 1].matrix)?,
            )
        };
        // unknown U: tgt_term.dim × g generator images; constraint
        // L · full(U) = RHS in vectorized form
        let ext_op = extension_operator(algebra, tgt_term, g);
        let id = Matrix::identity(field, g * d);
        let system = id.kron(&l)?.mul(&ext_op)?;
        let sol = system
            .solve(&rhs.vectorize())?
            .ok_or_else(|| Error::LiftFailure(format!("no lift at degree {k}")))?;
        let u = Matrix::unvectorize(&sol, tgt_term.dim, g);
        lifts.push(extend_from_generators(algebra, tgt_term, &u)?);
    }
    Ok(lifts)
}
