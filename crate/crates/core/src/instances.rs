//! Prebuilt diagram families and an independent oracle for the ground-field
//! case.
//!
//! A "Vect diagram" decorates every vertex with the ground field and every
//! arrow with `𝕜^{m_a}`; its representations are classical quiver
//! representations (with each arrow expanded into `m_a` parallel arrows).
//! For those, `dim Hom` is recomputed here by a direct commuting-square
//! solve that shares no code with `hom_rep`, and `dim Ext¹` comes from the
//! Euler form of the expanded quiver — the comparison oracle for the
//! homological machinery. The framed and chain families exercise mixed
//! Vect/algebra vertices.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::diagram::{Arrow, Diagram, Quiver};
use crate::ext::ExtComputation;
use crate::field::Field;
use crate::les::{les, LesReport, LesVariant};
use crate::matrix::Matrix;
use crate::module::Module;
use crate::rep::{hom_rep, RepMorphism, Representation};
use crate::resolution::ProjectiveResolution;
use crate::{Error, Result};
use rand::Rng;
use std::sync::Arc;

/// A diagram whose vertices all carry the ground field.
#[derive(Clone, Debug)]
pub struct VectDiagram {
    pub diagram: Arc<Diagram>,
    pub multiplicities: Vec<usize>,
}

pub fn vect_diagram(field: Field, quiver: Quiver, multiplicities: Vec<usize>) -> Result<VectDiagram> {
    if multiplicities.len() != quiver.arrows.len() {
        return Err(Error::DimensionMismatch(
            "one multiplicity per arrow required".into(),
        ));
    }
    let k = Algebra::ground_field(field);
    let algebras = vec![k.clone(); quiver.num_vertices];
    let bimodules = multiplicities
        .iter()
        .map(|&m| Arc::new(Bimodule::vect(k.clone(), m)))
        .collect();
    Ok(VectDiagram {
        diagram: Arc::new(Diagram::new(quiver, algebras, bimodules)?),
        multiplicities,
    })
}

/// Reinterpret a general diagram as a Vect diagram, if every vertex
/// algebra is the ground field.
pub fn as_vect(diagram: &Arc<Diagram>) -> Result<VectDiagram> {
    for (v, a) in diagram.algebras.iter().enumerate() {
        if a.dim != 1 {
            return Err(Error::NotVectDiagram(format!(
                "vertex {v} carries an algebra of dimension {}",
                a.dim
            )));
        }
    }
    Ok(VectDiagram {
        diagram: diagram.clone(),
        multiplicities: diagram.bimodules.iter().map(|b| b.dim).collect(),
    })
}

/// `⟨x, y⟩ = Σ_i x_iy_i − Σ_a m_a x_{s(a)} y_{t(a)}`.
pub fn euler_form(v: &VectDiagram, xdims: &[usize], ydims: &[usize]) -> i64 {
    let mut form: i64 = xdims
        .iter()
        .zip(ydims)
        .map(|(&a, &b)| (a * b) as i64)
        .sum();
    for (a, arr) in v.diagram.quiver.arrows.iter().enumerate() {
        form -= (v.multiplicities[a] * xdims[arr.source] * ydims[arr.target]) as i64;
    }
    form
}

/// `(dim Hom, dim Ext¹)` by a direct commuting-square solve plus the Euler
/// form — an independent code path from the representation machinery. In
/// the hereditary ground-field case `Ext^{k≥2} = 0`.
pub fn euler_oracle(
    v: &VectDiagram,
    x: &Representation,
    y: &Representation,
) -> Result<(usize, usize)> {
    if x.diagram != v.diagram || y.diagram != v.diagram {
        return Err(Error::DiagramMismatch);
    }
    let field = v.diagram.field();
    let nv = v.diagram.quiver.num_vertices;
    let xdims: Vec<usize> = x.dims();
    let ydims: Vec<usize> = y.dims();
    let mut offsets = vec![0usize];
    for vtx in 0..nv {
        offsets.push(offsets[vtx] + xdims[vtx] * ydims[vtx]);
    }
    let unknowns = offsets[nv];
    let mut rows: Vec<Matrix> = Vec::new();
    for (a, arr) in v.diagram.quiver.arrows.iter().enumerate() {
        let (i, j) = (arr.source, arr.target);
        let m = v.multiplicities[a];
        for t in 0..m {
            // slice out the t-th parallel arrow from the structure matrices
            let slice = |mat: &Matrix, rows_n: usize, cols_n: usize| {
                let mut s = Matrix::zero(field, rows_n, cols_n);
                for r in 0..rows_n {
                    for c in 0..cols_n {
                        s.set(r, c, mat.get(r, c * m + t).clone());
                    }
                }
                s
            };
            let xs = slice(&x.psi_maps[a].matrix, xdims[j], xdims[i]);
            let ys = slice(&y.psi_maps[a].matrix, ydims[j], ydims[i]);
            let n_rows = ydims[j] * xdims[i];
            if n_rows == 0 {
                continue;
            }
            let mut row = Matrix::zero(field, n_rows, unknowns);
            if xdims[j] * ydims[j] > 0 {
                let block = xs.transpose().kron(&Matrix::identity(field, ydims[j]))?;
                for c in 0..block.cols() {
                    row.set_column(offsets[j] + c, &block.column(c));
                }
            }
            if xdims[i] * ydims[i] > 0 {
                let block = Matrix::identity(field, xdims[i]).kron(&ys)?;
                for c in 0..block.cols() {
                    let cur = row.column(offsets[i] + c);
                    row.set_column(offsets[i] + c, &cur.sub(&block.column(c))?);
                }
            }
            rows.push(row);
        }
    }
    let hom = if unknowns == 0 {
        0
    } else if rows.is_empty() {
        unknowns
    } else {
        let mut system = rows[0].clone();
        for r in &rows[1..] {
            system = system.vstack(r)?;
        }
        unknowns - system.rank()
    };
    let ext1 = hom as i64 - euler_form(v, &xdims, &ydims);
    if ext1 < 0 {
        return Err(Error::Internal("negative Ext¹ from Euler form".into()));
    }
    Ok((hom, ext1 as usize))
}

/// The quiver shapes used by the sampling suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectShape {
    A2,
    A3,
    Kronecker2,
    Square,
}

impl VectShape {
    pub const ALL: [VectShape; 4] = [
        VectShape::A2,
        VectShape::A3,
        VectShape::Kronecker2,
        VectShape::Square,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VectShape::A2 => "a2",
            VectShape::A3 => "a3",
            VectShape::Kronecker2 => "kronecker2",
            VectShape::Square => "square",
        }
    }

    pub fn quiver(self) -> Quiver {
        let arrow = |label: &str, source, target| Arrow {
            label: label.into(),
            source,
            target,
        };
        match self {
            VectShape::A2 => Quiver::new(2, vec![arrow("a", 0, 1)]),
            VectShape::A3 => Quiver::new(3, vec![arrow("a", 0, 1), arrow("b", 1, 2)]),
            // one arrow of multiplicity 2 models the Kronecker quiver
            VectShape::Kronecker2 => Quiver::new(2, vec![arrow("a", 0, 1)]),
            VectShape::Square => Quiver::new(
                4,
                vec![
                    arrow("a", 0, 1),
                    arrow("b", 0, 2),
                    arrow("c", 1, 3),
                    arrow("d", 2, 3),
                ],
            ),
        }
        .expect("static quiver")
    }

    /// Default multiplicities (`2` on the Kronecker arrow, `1` elsewhere).
    pub fn default_multiplicities(self) -> Vec<usize> {
        match self {
            VectShape::Kronecker2 => vec![2],
            other => vec![1; other.quiver().arrows.len()],
        }
    }

    pub fn diagram(self, field: Field) -> VectDiagram {
        vect_diagram(field, self.quiver(), self.default_multiplicities()).expect("static diagram")
    }
}

/// Uniformly random scalar.
pub fn random_scalar<R: Rng>(rng: &mut R, field: Field) -> crate::Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zero(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, random_scalar(rng, field));
        }
    }
    m
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random representation of a Vect diagram with vertex dimensions up to
/// `max_dim`.
pub fn random_vect_rep<R: Rng>(
    rng: &mut R,
    v: &VectDiagram,
    max_dim: usize,
) -> Result<Representation> {
    let field = v.diagram.field();
    let dims: Vec<usize> = (0..v.diagram.quiver.num_vertices)
        .map(|_| rng.gen_range(0..=max_dim))
        .collect();
    let modules: Vec<Module> = dims
        .iter()
        .enumerate()
        .map(|(vtx, &n)| Module::free(v.diagram.algebras[vtx].clone(), n))
        .collect();
    let mats = v
        .diagram
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            random_matrix(
                rng,
                field,
                dims[arr.target],
                dims[arr.source] * v.multiplicities[a],
            )
        })
        .collect();
    Representation::from_psi(v.diagram.clone(), modules, mats)
}

/// Random morphism `X → Y` as a random combination of the Hom basis;
/// `None` when the Hom space is zero.
pub fn random_hom_combination<R: Rng>(
    rng: &mut R,
    x: &Representation,
    y: &Representation,
) -> Result<Option<RepMorphism>> {
    let basis = hom_rep(x, y)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let field = x.diagram.field();
    let nv = x.diagram.quiver.num_vertices;
    let mut comps: Vec<Matrix> = (0..nv)
        .map(|v| Matrix::zero(field, y.modules[v].dim, x.modules[v].dim))
        .collect();
    for b in &basis {
        let c = random_scalar(rng, field);
        for v in 0..nv {
            comps[v] = comps[v].add(&b.components[v].matrix.scale(&c))?;
        }
    }
    Ok(Some(RepMorphism::new(x.clone(), y.clone(), comps)?))
}

/// Random module over `𝕜[t]/t²`: a direct sum of free and simple summands
/// in scrambled coordinates.
pub fn random_dual_numbers_module<R: Rng>(
    rng: &mut R,
    algebra: &Arc<Algebra>,
    max_summands: usize,
) -> Result<Module> {
    let field = algebra.field;
    let free_count = rng.gen_range(0..=max_summands);
    let simple_count = rng.gen_range(0..=max_summands);
    let dim = 2 * free_count + simple_count;
    if dim == 0 {
        return Ok(Module::zero(algebra.clone()));
    }
    let simple = Module::new(
        algebra.clone(),
        vec![Matrix::identity(field, 1), Matrix::zero(field, 1, 1)],
    )?;
    let free = Module::free(algebra.clone(), 1);
    let mut parts: Vec<&Module> = Vec::new();
    for _ in 0..free_count {
        parts.push(&free);
    }
    for _ in 0..simple_count {
        parts.push(&simple);
    }
    let (sum, _, _) = Module::direct_sum(&parts)?;
    let p = random_invertible(rng, field, dim);
    let p_inv = p.inverse()?;
    let action = sum
        .action
        .iter()
        .map(|m| p.mul(m).and_then(|pm| pm.mul(&p_inv)))
        .collect::<Result<Vec<_>>>()?;
    Module::new(algebra.clone(), action)
}

/// The framed family: quiver `0 → 1` with the ground field at the frame
/// vertex, `A` at the module vertex, and the framing module `P` as the
/// connecting bimodule (`Ψ_a = -⊗P`, `Φ_a = Hom_A(P,-)`).
#[derive(Clone, Debug)]
pub struct FramedDiagram {
    pub diagram: Arc<Diagram>,
    pub algebra: Arc<Algebra>,
    pub framing: Module,
}

pub fn build_framed(algebra: Arc<Algebra>, framing: &Module) -> Result<FramedDiagram> {
    if framing.algebra != algebra {
        return Err(Error::AlgebraMismatch);
    }
    let field = algebra.field;
    let k = Algebra::ground_field(field);
    let quiver = Quiver::new(
        2,
        vec![Arrow {
            label: "a".into(),
            source: 0,
            target: 1,
        }],
    )?;
    let bim = Bimodule::from_right_module(k.clone(), framing);
    let diagram = Diagram::new(quiver, vec![k, algebra.clone()], vec![Arc::new(bim)])?;
    Ok(FramedDiagram {
        diagram: Arc::new(diagram),
        algebra,
        framing: framing.clone(),
    })
}

/// A framed representation is a triple `(V, E, s)` with `V` a vector
/// space, `E` an `A`-module and `s : V ⊗ P → E` (`Ψ`-form).
pub fn framed_rep(
    fd: &FramedDiagram,
    v_dim: usize,
    e: Module,
    s: Matrix,
) -> Result<Representation> {
    let v = Module::free(fd.diagram.algebras[0].clone(), v_dim);
    Representation::from_psi(fd.diagram.clone(), vec![v, e], vec![s])
}

#[derive(Clone, Debug)]
pub struct FramedLes {
    pub psi_report: LesReport,
    /// Present when `P` is projective, so `Φ_a` is exact too.
    pub phi_report: Option<LesReport>,
    /// `dim Ext^k_A(E, F)` of the underlying modules, `k = 0..=max_degree`.
    pub module_ext_dims: Vec<usize>,
    /// `Ext^k_R = Ext^k_A(E, F)` for `k ≥ 2` (the stable-range identity).
    pub tail_agrees: bool,
}

pub fn framed_les(
    fd: &FramedDiagram,
    x: &Representation,
    y: &Representation,
    max_degree: usize,
) -> Result<FramedLes> {
    if x.diagram != fd.diagram || y.diagram != fd.diagram {
        return Err(Error::DiagramMismatch);
    }
    let psi_report = les(LesVariant::PsiForm, x, y, max_degree)?;
    let phi_report = match les(LesVariant::PhiForm, x, y, max_degree) {
        Ok(r) => Some(r),
        Err(Error::HypothesisViolated { .. }) => None,
        Err(e) => return Err(e),
    };
    let res = Arc::new(ProjectiveResolution::new(
        x.modules[1].clone(),
        max_degree + 1,
    )?);
    let ext = ExtComputation::new(res, y.modules[1].clone(), max_degree)?;
    let module_ext_dims: Vec<usize> = (0..=max_degree).map(|k| ext.dim(k)).collect();
    let tail_agrees = (2..=max_degree).all(|k| psi_report.rep_ext_dims[k] == module_ext_dims[k]);
    Ok(FramedLes {
        psi_report,
        phi_report,
        module_ext_dims,
        tail_agrees,
    })
}

/// The chain family: vertex `0` carries `A`, vertices `1..=n` carry the
/// ground field; the connector sits on `0 → 1` and the tail arrows carry
/// the regular (identity-functor) bimodule.
pub fn build_chain(
    algebra: Arc<Algebra>,
    n: usize,
    connector: &Module,
) -> Result<Arc<Diagram>> {
    if connector.algebra != algebra {
        return Err(Error::AlgebraMismatch);
    }
    let field = algebra.field;
    let k = Algebra::ground_field(field);
    let mut arrows = Vec::new();
    for i in 0..n {
        arrows.push(Arrow {
            label: format!("a{i}"),
            source: i,
            target: i + 1,
        });
    }
    let quiver = Quiver::new(n + 1, arrows)?;
    let mut algebras = vec![algebra.clone()];
    algebras.extend(std::iter::repeat(k.clone()).take(n));
    let mut bimodules = Vec::new();
    for i in 0..n {
        if i == 0 {
            // A–𝕜 connector: left action from the A-module structure
            let left = connector
                .action
                .iter()
                .map(Matrix::transpose)
                .collect::<Vec<_>>();
            let bim = Bimodule::new(
                algebra.clone(),
                k.clone(),
                left,
                vec![Matrix::identity(field, connector.dim)],
            )?;
            bimodules.push(Arc::new(bim));
        } else {
            bimodules.push(Arc::new(Bimodule::regular(k.clone())));
        }
    }
    Ok(Arc::new(Diagram::new(quiver, algebras, bimodules)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::les::ext_dim_rep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const F5: Field = Field::Prime(5);

    fn vect_rep_fixed(v: &VectDiagram, dims: &[usize], mats: Vec<Matrix>) -> Representation {
        let modules = dims
            .iter()
            .enumerate()
            .map(|(vtx, &n)| Module::free(v.diagram.algebras[vtx].clone(), n))
            .collect();
        Representation::from_psi(v.diagram.clone(), modules, mats).unwrap()
    }

    #[test]
    fn euler_oracle_anchor_a2() {
        let v = VectShape::A2.diagram(F5);
        let x = vect_rep_fixed(&v, &[1, 0], vec![Matrix::zero(F5, 0, 1)]);
        let y = vect_rep_fixed(&v, &[0, 1], vec![Matrix::zero(F5, 1, 0)]);
        assert_eq!(euler_oracle(&v, &x, &y).unwrap(), (0, 1));
        // simple at one vertex against itself
        assert_eq!(euler_oracle(&v, &x, &x).unwrap(), (1, 0));
    }

    #[test]
    fn euler_oracle_anchor_kronecker() {
        let v = VectShape::Kronecker2.diagram(F5);
        let x = vect_rep_fixed(&v, &[1, 0], vec![Matrix::zero(F5, 0, 2)]);
        let y = vect_rep_fixed(&v, &[0, 1], vec![Matrix::zero(F5, 1, 0)]);
        assert_eq!(euler_oracle(&v, &x, &y).unwrap(), (0, 2));
    }

    #[test]
    fn oracle_agrees_with_les_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for shape in VectShape::ALL {
            let v = shape.diagram(F5);
            for _ in 0..6 {
                let x = random_vect_rep(&mut rng, &v, 3).unwrap();
                let y = random_vect_rep(&mut rng, &v, 3).unwrap();
                let (hom, ext1) = euler_oracle(&v, &x, &y).unwrap();
                let report = les(LesVariant::PsiForm, &x, &y, 2).unwrap();
                assert_eq!(report.rep_ext_dims[0], hom, "{}", shape.name());
                assert_eq!(report.rep_ext_dims[1], ext1, "{}", shape.name());
                assert_eq!(report.rep_ext_dims[2], 0, "{}", shape.name());
            }
        }
    }

    #[test]
    fn framed_dual_numbers_has_periodic_ext() {
        let dual = Algebra::dual_numbers(F5);
        let p = Module::free(dual.clone(), 1);
        let fd = build_framed(dual.clone(), &p).unwrap();
        let simple = Module::new(
            dual.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        // E = F = k, V = W = 𝕜, s : V ⊗ P ≅ A → k the evaluation cover
        let t_img = crate::bimodule::tensor_over(
            &Module::free(fd.diagram.algebras[0].clone(), 1),
            &fd.diagram.bimodules[0],
        )
        .unwrap();
        let hom = crate::module::hom_space(&t_img.module, &simple).unwrap();
        let x = framed_rep(&fd, 1, simple.clone(), hom[0].matrix.clone()).unwrap();
        let fl = framed_les(&fd, &x, &x, 4).unwrap();
        assert!(fl.phi_report.is_some(), "regular P is projective");
        for k in 2..=4 {
            assert_eq!(fl.psi_report.rep_ext_dims[k], 1, "degree {k}");
            assert_eq!(fl.module_ext_dims[k], 1);
        }
        assert!(fl.tail_agrees);
        let phi = fl.phi_report.unwrap();
        assert_eq!(phi.rep_ext_dims, fl.psi_report.rep_ext_dims);
    }

    #[test]
    fn framed_with_zero_frame_reduces_to_module_ext() {
        let dual = Algebra::dual_numbers(F5);
        let p = Module::free(dual.clone(), 1);
        let fd = build_framed(dual.clone(), &p).unwrap();
        let simple = Module::new(
            dual.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        let x = framed_rep(&fd, 0, simple, Matrix::zero(F5, 1, 0)).unwrap();
        let fl = framed_les(&fd, &x, &x, 3).unwrap();
        assert_eq!(
            fl.psi_report.rep_ext_dims,
            fl.module_ext_dims,
            "V = 0 collapses to module Ext"
        );
    }

    #[test]
    fn framed_nonprojective_p_rejects_phi_form() {
        let dual = Algebra::dual_numbers(F5);
        let simple = Module::new(
            dual.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        let fd = build_framed(dual.clone(), &simple).unwrap();
        let x = framed_rep(&fd, 0, simple.clone(), Matrix::zero(F5, 1, 0)).unwrap();
        let err = les(LesVariant::PhiForm, &x, &x, 1).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated { .. }));
        // the Ψ-form still works: -⊗P is exact over the ground field side
        let fl = framed_les(&fd, &x, &x, 2).unwrap();
        assert!(fl.phi_report.is_none());
    }

    #[test]
    fn chain_over_ground_field_matches_a3_oracle() {
        let k = Algebra::ground_field(F5);
        let connector = Module::free(k.clone(), 1);
        let chain = build_chain(k, 2, &connector).unwrap();
        let v = as_vect(&chain).unwrap();
        assert_eq!(v.multiplicities, vec![1, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let x = random_vect_rep(&mut rng, &v, 2).unwrap();
            let y = random_vect_rep(&mut rng, &v, 2).unwrap();
            let (hom, ext1) = euler_oracle(&v, &x, &y).unwrap();
            assert_eq!(ext_dim_rep(0, &x, &y, LesVariant::PsiForm).unwrap(), hom);
            assert_eq!(ext_dim_rep(1, &x, &y, LesVariant::PsiForm).unwrap(), ext1);
        }
    }

    #[test]
    fn chain_rep_dualizes_with_same_dims() {
        let k = Algebra::ground_field(F5);
        let connector = Module::free(k.clone(), 2);
        let chain = build_chain(k, 2, &connector).unwrap();
        let v = as_vect(&chain).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random_vect_rep(&mut rng, &v, 3).unwrap();
        let y = random_vect_rep(&mut rng, &v, 3).unwrap();
        let dx = x.dualize().unwrap();
        let dy = y.dualize().unwrap();
        assert_eq!(dx.dims(), x.dims());
        assert_eq!(
            hom_rep(&x, &y).unwrap().len(),
            hom_rep(&dy, &dx).unwrap().len()
        );
    }

    #[test]
    fn not_vect_diagram_rejected() {
        let dual = Algebra::dual_numbers(F5);
        let p = Module::free(dual.clone(), 1);
        let fd = build_framed(dual, &p).unwrap();
        assert!(matches!(
            as_vect(&fd.diagram),
            Err(Error::NotVectDiagram(_))
        ));
    }

    #[test]
    fn random_dual_module_is_valid() {
        let dual = Algebra::dual_numbers(F5);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let m = random_dual_numbers_module(&mut rng, &dual, 2).unwrap();
            m.validate().unwrap();
        }
    }
}
