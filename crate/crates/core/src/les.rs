//! Long exact sequences connecting vertexwise Ext groups with Ext in the
//! representation category, and the Ext dimensions extracted from them.
//!
//! For representations `X, Y` the sequence has the shape
//!
//! ```text
//! 0 → Hom_R(X,Y) → E⁰ →δ⁰ F⁰ → Ext¹_R(X,Y) → E¹ →δ¹ F¹ → …
//! ```
//!
//! with `E^k = ⊕_i Ext^k(X_i, Y_i)` and, per arrow `a : i → j`, the node
//! `F^k_a = Ext^k(Ψ_aX_i, Y_j)` (`Ψ`-form, needs every `Ψ_a` exact) or
//! `Ext^k(X_i, Φ_aY_j)` (`Φ`-form, needs every `Φ_a` exact). `Ext^k_R` is
//! defined computationally by extraction: `dim Hom_R = dim ker δ⁰` and
//! `dim Ext^k_R = dim coker δ^{k−1} + dim ker δ^k`.

use crate::bimodule::FunctorImage;
use crate::diagram::Diagram;
use crate::ext::{ExtComputation, FunctorTransport};
use crate::matrix::Matrix;
use crate::module::Module;
use crate::rep::{hom_rep, Representation};
use crate::resolution::{
    extend_from_generators, generator_columns, lift_chain_map, ProjectiveResolution,
};
use crate::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LesVariant {
    PsiForm,
    PhiForm,
}

impl LesVariant {
    pub fn name(self) -> &'static str {
        match self {
            LesVariant::PsiForm => "psi",
            LesVariant::PhiForm => "phi",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LesReport {
    pub variant: LesVariant,
    pub max_degree: usize,
    /// `dim Ext^k(X_i, Y_i)` per degree, per vertex.
    pub vertex_ext_dims: Vec<Vec<usize>>,
    /// `dim F^k_a` per degree, per arrow.
    pub arrow_ext_dims: Vec<Vec<usize>>,
    /// Connecting matrices `δ^k : E^k → F^k`.
    pub deltas: Vec<Matrix>,
    pub delta_ranks: Vec<usize>,
    /// Extracted `dim Ext^k_R(X, Y)` for `k = 0..=max_degree`.
    pub rep_ext_dims: Vec<usize>,
    /// Independently computed `dim Hom_R(X, Y)` from the joint linear
    /// system; must equal `rep_ext_dims[0]`.
    pub hom_rep_dim: usize,
    /// Rank-balance verdict at every node of the sequence, in order
    /// `Hom_R, E⁰, F⁰, Ext¹_R, E¹, F¹, …`.
    pub node_verdicts: Vec<bool>,
}

impl LesReport {
    pub fn all_nodes_exact(&self) -> bool {
        self.node_verdicts.iter().all(|&b| b)
    }
}

fn check_hypotheses(diagram: &Diagram, variant: LesVariant) -> Result<()> {
    for (a, arr) in diagram.quiver.arrows.iter().enumerate() {
        let (psi_ok, phi_ok) = diagram.exactness_certificate(a)?;
        match variant {
            LesVariant::PsiForm if !psi_ok => {
                return Err(Error::HypothesisViolated {
                    arrow: arr.label.clone(),
                    side: "Ψ (tensor)".into(),
                });
            }
            LesVariant::PhiForm if !phi_ok => {
                return Err(Error::HypothesisViolated {
                    arrow: arr.label.clone(),
                    side: "Φ (hom)".into(),
                });
            }
            _ => {}
        }
    }
    Ok(())
}

/// Build the long exact sequence data for `X, Y` up to `max_degree`.
pub fn les(
    variant: LesVariant,
    x: &Representation,
    y: &Representation,
    max_degree: usize,
) -> Result<LesReport> {
    if x.diagram != y.diagram {
        return Err(Error::DiagramMismatch);
    }
    let diagram = &x.diagram;
    check_hypotheses(diagram, variant)?;
    let field = diagram.field();
    let nv = diagram.quiver.num_vertices;
    let na = diagram.quiver.arrows.len();

    // deterministic projective resolutions of every X_i
    let vertex_res: Vec<Arc<ProjectiveResolution>> = (0..nv)
        .map(|i| Ok(Arc::new(ProjectiveResolution::new(x.modules[i].clone(), max_degree + 1)?)))
        .collect::<Result<_>>()?;
    let vertex_ext: Vec<ExtComputation> = (0..nv)
        .map(|i| ExtComputation::new(vertex_res[i].clone(), y.modules[i].clone(), max_degree))
        .collect::<Result<_>>()?;

    // per-arrow machinery
    struct ArrowData {
        ext: ExtComputation,
        /// + term: transport from the `E`-node it applies to.
        transport: FunctorTransport,
        /// − term: chain lift for pre-composition (`Ψ`-form only).
        pre_lift: Option<Vec<Matrix>>,
        /// canonical functor image of the `Y`-module being transported.
        n_img: FunctorImage,
    }
    let mut arrows = Vec::with_capacity(na);
    for (a, arr) in diagram.quiver.arrows.iter().enumerate() {
        let (i, j) = (arr.source, arr.target);
        match variant {
            LesVariant::PsiForm => {
                let q_res = Arc::new(ProjectiveResolution::new(
                    x.psi_images[a].module.clone(),
                    max_degree + 1,
                )?);
                let ext = ExtComputation::new(q_res.clone(), y.modules[j].clone(), max_degree)?;
                let functor = diagram.psi(a);
                let f0 = Matrix::identity(field, q_res.of.dim);
                let transport =
                    FunctorTransport::new(functor, vertex_res[i].clone(), &q_res, &f0, max_degree)?;
                let pre_lift = lift_chain_map(
                    &q_res,
                    &vertex_res[j].as_complex(),
                    &x.psi_maps[a].matrix,
                    max_degree,
                )?;
                arrows.push(ArrowData {
                    ext,
                    transport,
                    pre_lift: Some(pre_lift),
                    n_img: FunctorImage::Tensor(y.psi_images[a].clone()),
                });
            }
            LesVariant::PhiForm => {
                let target = y.phi_images[a].module.clone();
                let ext = ExtComputation::new(vertex_res[i].clone(), target, max_degree)?;
                let functor = diagram.phi(a);
                let transport = FunctorTransport::new(
                    functor,
                    vertex_res[j].clone(),
                    &vertex_res[i],
                    &x.phi_maps[a].matrix,
                    max_degree,
                )?;
                arrows.push(ArrowData {
                    ext,
                    transport,
                    pre_lift: None,
                    n_img: FunctorImage::Hom(y.phi_images[a].clone()),
                });
            }
        }
    }

    let vertex_ext_dims: Vec<Vec<usize>> = (0..=max_degree)
        .map(|k| vertex_ext.iter().map(|e| e.dim(k)).collect())
        .collect();
    let arrow_ext_dims: Vec<Vec<usize>> = (0..=max_degree)
        .map(|k| arrows.iter().map(|a| a.ext.dim(k)).collect())
        .collect();

    let mut deltas = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let e_dim: usize = vertex_ext_dims[k].iter().sum();
        let f_dim: usize = arrow_ext_dims[k].iter().sum();
        let mut delta = Matrix::zero(field, f_dim, e_dim);
        let mut col = 0usize;
        for i in 0..nv {
            for basis_idx in 0..vertex_ext[i].dim(k) {
                let gen_images =
                    vertex_ext[i].cocycle_matrix(k, &vertex_ext[i].degrees[k].reps.column(basis_idx));
                let mut row = 0usize;
                for (a, arr) in diagram.quiver.arrows.iter().enumerate() {
                    let data = &arrows[a];
                    let fa = data.ext.dim(k);
                    let mut contrib = Matrix::zero(field, fa, 1);
                    match variant {
                        LesVariant::PsiForm => {
                            if arr.source == i {
                                // transport along Ψ_a, post-compose with Y_a^♭
                                let moved = data.transport.transport_cocycle(
                                    k,
                                    &y.modules[i],
                                    &data.n_img,
                                    &gen_images,
                                )?;
                                let posted = y.psi_maps[a].matrix.mul(&moved)?;
                                contrib =
                                    contrib.add(&data.ext.class_coords(k, &posted.vectorize())?)?;
                            }
                            if arr.target == i {
                                // pre-compose with X_a^♭ through the chain lift
                                let lift = data.pre_lift.as_ref().expect("psi lift");
                                let full = extend_from_generators(
                                    &diagram.algebras[i],
                                    &y.modules[i],
                                    &gen_images,
                                )?;
                                let pulled = full.mul(&lift[k])?;
                                let restricted = pulled.mul(&generator_columns(
                                    data.ext.resolution.algebra(),
                                    data.ext.resolution.gens[k],
                                ))?;
                                contrib = contrib
                                    .sub(&data.ext.class_coords(k, &restricted.vectorize())?)?;
                            }
                        }
                        LesVariant::PhiForm => {
                            if arr.source == i {
                                // post-compose with Y_a^♯ on the shared resolution
                                let posted = y.phi_maps[a].matrix.mul(&gen_images)?;
                                contrib =
                                    contrib.add(&data.ext.class_coords(k, &posted.vectorize())?)?;
                            }
                            if arr.target == i {
                                // transport along Φ_a over the base map X_a^♯
                                let moved = data.transport.transport_cocycle(
                                    k,
                                    &y.modules[i],
                                    &data.n_img,
                                    &gen_images,
                                )?;
                                contrib =
                                    contrib.sub(&data.ext.class_coords(k, &moved.vectorize())?)?;
                            }
                        }
                    }
                    for r in 0..fa {
                        delta.set(row + r, col, contrib.get(r, 0).clone());
                    }
                    row += fa;
                }
                col += 1;
            }
        }
        deltas.push(delta);
    }

    let delta_ranks: Vec<usize> = deltas.iter().map(|d| d.rank()).collect();
    let mut rep_ext_dims = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let e_dim: usize = vertex_ext_dims[k].iter().sum();
        let ker = e_dim - delta_ranks[k];
        if k == 0 {
            rep_ext_dims.push(ker);
        } else {
            let f_prev: usize = arrow_ext_dims[k - 1].iter().sum();
            let coker = f_prev - delta_ranks[k - 1];
            rep_ext_dims.push(coker + ker);
        }
    }

    let hom_rep_dim = hom_rep(x, y)?.len();

    // rank balance at every node of the sequence
    let mut node_verdicts = Vec::new();
    for k in 0..=max_degree {
        let e_dim: usize = vertex_ext_dims[k].iter().sum();
        let f_dim: usize = arrow_ext_dims[k].iter().sum();
        let ker = e_dim - delta_ranks[k];
        let coker_prev = if k == 0 {
            0
        } else {
            arrow_ext_dims[k - 1].iter().sum::<usize>() - delta_ranks[k - 1]
        };
        // node Ext^k_R: incoming coker δ^{k-1}, outgoing ker δ^k
        let ext_node = coker_prev + ker == rep_ext_dims[k]
            && (k > 0 || rep_ext_dims[0] == hom_rep_dim);
        node_verdicts.push(ext_node);
        // node E^k: incoming ker δ^k, outgoing rank δ^k
        node_verdicts.push(ker + delta_ranks[k] == e_dim);
        // node F^k: incoming rank δ^k, outgoing onto coker δ^k
        node_verdicts.push(delta_ranks[k] + (f_dim - delta_ranks[k]) == f_dim);
    }

    Ok(LesReport {
        variant,
        max_degree,
        vertex_ext_dims,
        arrow_ext_dims,
        deltas,
        delta_ranks,
        rep_ext_dims,
        hom_rep_dim,
        node_verdicts,
    })
}

/// `dim Ext^k_R(X, Y)` by the extraction formula.
pub fn ext_dim_rep(
    k: usize,
    x: &Representation,
    y: &Representation,
    variant: LesVariant,
) -> Result<usize> {
    Ok(les(variant, x, y, k)?.rep_ext_dims[k])
}

/// Pick a variant whose exactness hypotheses certify, preferring `Ψ`.
pub fn usable_variant(diagram: &Diagram) -> Result<LesVariant> {
    if check_hypotheses(diagram, LesVariant::PsiForm).is_ok() {
        Ok(LesVariant::PsiForm)
    } else {
        check_hypotheses(diagram, LesVariant::PhiForm)?;
        Ok(LesVariant::PhiForm)
    }
}

/// `Ext¹_R(σ_!P, Y) = 0` across the sample family; returns the index of
/// the first failing sample, if any.
pub fn projectivity_test(
    diagram: &Arc<Diagram>,
    vertex: usize,
    p: &Module,
    samples: &[Representation],
    variant: LesVariant,
) -> Result<Option<usize>> {
    let sigma = crate::sigma::sigma_shriek(diagram, vertex, p)?;
    for (idx, y) in samples.iter().enumerate() {
        if ext_dim_rep(1, &sigma.rep, y, variant)? != 0 {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

/// `Ext¹_R(Y, σ_*I) = 0` across the sample family.
pub fn injectivity_test(
    diagram: &Arc<Diagram>,
    vertex: usize,
    i_mod: &Module,
    samples: &[Representation],
    variant: LesVariant,
) -> Result<Option<usize>> {
    let sigma = crate::sigma::sigma_star(diagram, vertex, i_mod)?;
    for (idx, y) in samples.iter().enumerate() {
        if ext_dim_rep(1, y, &sigma.rep, variant)? != 0 {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

/// When both `Ψ_a` and `Φ_a` are exact, `Ext^k(Ψ_aM, N) ≅ Ext^k(M, Φ_aN)`;
/// compare the dimensions up to `max_degree`.
pub fn both_exact_iso_check(
    diagram: &Diagram,
    arrow: usize,
    m: &Module,
    n: &Module,
    max_degree: usize,
) -> Result<bool> {
    let (psi_ok, phi_ok) = diagram.exactness_certificate(arrow)?;
    if !psi_ok || !phi_ok {
        return Err(Error::FunctorNotExact(format!(
            "arrow `{}` is not exact on both sides",
            diagram.quiver.arrows[arrow].label
        )));
    }
    let psi_m = crate::bimodule::tensor_over(m, &diagram.bimodules[arrow])?;
    let phi_n = crate::bimodule::hom_from(&diagram.bimodules[arrow], n)?;
    let left_res = Arc::new(ProjectiveResolution::new(psi_m.module, max_degree + 1)?);
    let left = ExtComputation::new(left_res, n.clone(), max_degree)?;
    let right_res = Arc::new(ProjectiveResolution::new(m.clone(), max_degree + 1)?);
    let right = ExtComputation::new(right_res, phi_n.module, max_degree)?;
    Ok((0..=max_degree).all(|k| left.dim(k) == right.dim(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bimodule::Bimodule;
    use crate::diagram::{Arrow, Quiver};
    use crate::field::Field;

    const F5: Field = Field::Prime(5);

    fn a2_vect(m: usize) -> Arc<Diagram> {
        let q = Quiver::new(
            2,
            vec![Arrow {
                label: "a".into(),
                source: 0,
                target: 1,
            }],
        )
        .unwrap();
        let k = Algebra::ground_field(F5);
        Arc::new(
            Diagram::new(
                q,
                vec![k.clone(), k.clone()],
                vec![Arc::new(Bimodule::vect(k, m))],
            )
            .unwrap(),
        )
    }

    fn vect_rep(d: &Arc<Diagram>, dims: &[usize], mats: Vec<Matrix>) -> Representation {
        let modules = dims
            .iter()
            .enumerate()
            .map(|(v, &n)| Module::free(d.algebras[v].clone(), n))
            .collect();
        Representation::from_psi(d.clone(), modules, mats).unwrap()
    }

    #[test]
    fn a2_hom_zero_ext_one() {
        let d = a2_vect(1);
        let x = vect_rep(&d, &[1, 0], vec![Matrix::zero(F5, 0, 1)]);
        let y = vect_rep(&d, &[0, 1], vec![Matrix::zero(F5, 1, 0)]);
        for variant in [LesVariant::PsiForm, LesVariant::PhiForm] {
            let report = les(variant, &x, &y, 2).unwrap();
            assert_eq!(report.rep_ext_dims, vec![0, 1, 0], "{variant:?}");
            assert_eq!(report.hom_rep_dim, 0);
            assert!(report.all_nodes_exact());
        }
    }

    #[test]
    fn kronecker_ext_one_is_two() {
        let d = a2_vect(2);
        let x = vect_rep(&d, &[1, 0], vec![Matrix::zero(F5, 0, 2)]);
        let y = vect_rep(&d, &[0, 1], vec![Matrix::zero(F5, 1, 0)]);
        for variant in [LesVariant::PsiForm, LesVariant::PhiForm] {
            let report = les(variant, &x, &y, 2).unwrap();
            assert_eq!(report.rep_ext_dims, vec![0, 2, 0], "{variant:?}");
        }
    }

    #[test]
    fn arrowless_quiver_ext_is_componentwise() {
        let q = Quiver::new(2, Vec::new()).unwrap();
        let dual = Algebra::dual_numbers(F5);
        let d = Arc::new(Diagram::new(q, vec![dual.clone(), dual.clone()], Vec::new()).unwrap());
        let simple = Module::new(
            dual.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        let x = Representation::from_psi(
            d.clone(),
            vec![simple.clone(), Module::free(dual.clone(), 1)],
            Vec::new(),
        )
        .unwrap();
        let y = Representation::from_psi(
            d.clone(),
            vec![simple.clone(), simple],
            Vec::new(),
        )
        .unwrap();
        let report = les(LesVariant::PsiForm, &x, &y, 3).unwrap();
        // vertex 0 contributes Ext^k(k,k) = 1 in all degrees, vertex 1
        // contributes Ext^0(A,k) = 1 only
        assert_eq!(report.rep_ext_dims, vec![2, 1, 1, 1]);
        assert_eq!(report.hom_rep_dim, 2);
    }

    #[test]
    fn hom_dim_always_matches_joint_system() {
        let d = a2_vect(2);
        let cases = [
            vect_rep(&d, &[1, 1], vec![Matrix::from_i64(F5, &[&[1, 0]])]),
            vect_rep(&d, &[2, 1], vec![Matrix::from_i64(F5, &[&[1, 0, 0, 1]])]),
            vect_rep(&d, &[1, 2], vec![Matrix::from_i64(F5, &[&[1, 0], &[0, 1]])]),
        ];
        for x in &cases {
            for y in &cases {
                for variant in [LesVariant::PsiForm, LesVariant::PhiForm] {
                    let report = les(variant, x, y, 1).unwrap();
                    assert_eq!(report.rep_ext_dims[0], report.hom_rep_dim);
                    assert!(report.all_nodes_exact());
                }
            }
        }
    }

    #[test]
    fn induced_from_regular_is_projective() {
        // σ_! of a free module has vanishing Ext¹ against everything
        let q = Quiver::new(
            2,
            vec![Arrow {
                label: "a".into(),
                source: 0,
                target: 1,
            }],
        )
        .unwrap();
        let dual = Algebra::dual_numbers(F5);
        let d = Arc::new(
            Diagram::new(
                q,
                vec![dual.clone(), dual.clone()],
                vec![Arc::new(Bimodule::regular(dual.clone()))],
            )
            .unwrap(),
        );
        let simple = Module::new(
            dual.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        let t_img = crate::bimodule::tensor_over(&Module::free(dual.clone(), 1), &d.bimodules[0]).unwrap();
        let hom = crate::module::hom_space(&t_img.module, &simple).unwrap();
        let samples = vec![
            Representation::zero(d.clone()),
            Representation::from_psi(
                d.clone(),
                vec![Module::free(dual.clone(), 1), simple.clone()],
                vec![hom[0].matrix.clone()],
            )
            .unwrap(),
            // Y = (k, 0): detects the non-projectivity of σ_!(k)
            Representation::from_psi(
                d.clone(),
                vec![simple.clone(), Module::zero(dual.clone())],
                vec![Matrix::zero(F5, 0, 1)],
            )
            .unwrap(),
        ];
        let p = Module::free(dual.clone(), 1);
        assert_eq!(
            projectivity_test(&d, 0, &p, &samples, LesVariant::PsiForm).unwrap(),
            None
        );
        // non-projective inducing module: σ_!(simple) has a nonvanishing
        // Ext¹ against some sample
        let witness = projectivity_test(&d, 0, &simple, &samples, LesVariant::PsiForm).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn coinduced_from_dual_free_is_injective() {
        let q = Quiver::new(
            2,
            vec![Arrow {
                label: "a".into(),
                source: 0,
                target: 1,
            }],
        )
        .unwrap();
        let dual = Algebra::dual_numbers(F5);
        let d = Arc::new(
            Diagram::new(
                q,
                vec![dual.clone(), dual.clone()],
                vec![Arc::new(Bimodule::regular(dual.clone()))],
            )
            .unwrap(),
        );
        // 𝕜[t]/t² is self-injective: the regular module works as I
        let i_mod = Module::free(dual.clone(), 1);
        let simple = Module::new(
            dual.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        let t_img = crate::bimodule::tensor_over(&Module::free(dual.clone(), 1), &d.bimodules[0]).unwrap();
        let hom = crate::module::hom_space(&t_img.module, &simple).unwrap();
        let samples = vec![Representation::from_psi(
            d.clone(),
            vec![Module::free(dual.clone(), 1), simple],
            vec![hom[0].matrix.clone()],
        )
        .unwrap()];
        assert_eq!(
            injectivity_test(&d, 1, &i_mod, &samples, LesVariant::PsiForm).unwrap(),
            None
        );
    }

    #[test]
    fn hypothesis_violation_names_arrow_and_side() {
        // 𝕜 as a bimodule over 𝕜[t]/t² on both sides: neither functor
        // is exact
        let q = Quiver::new(
            2,
            vec![Arrow {
                label: "a".into(),
                source: 0,
                target: 1,
            }],
        )
        .unwrap();
        let dual = Algebra::dual_numbers(F5);
        let aug = Bimodule::new(
            dual.clone(),
            dual.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        let d = Arc::new(
            Diagram::new(q, vec![dual.clone(), dual.clone()], vec![Arc::new(aug)]).unwrap(),
        );
        let x = Representation::zero(d.clone());
        let err = les(LesVariant::PsiForm, &x, &x, 1).unwrap_err();
        match err {
            Error::HypothesisViolated { arrow, side } => {
                assert_eq!(arrow, "a");
                assert!(side.contains("Ψ"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn both_exact_iso_on_regular_bimodule() {
        let d = a2_vect(3);
        let m = Module::free(d.algebras[0].clone(), 2);
        let n = Module::free(d.algebras[1].clone(), 1);
        assert!(both_exact_iso_check(&d, 0, &m, &n, 2).unwrap());
        let q = Quiver::new(
            2,
            vec![Arrow {
                label: "a".into(),
                source: 0,
                target: 1,
            }],
        )
        .unwrap();
        let dual = Algebra::dual_numbers(F5);
        let dd = Arc::new(
            Diagram::new(
                q,
                vec![dual.clone(), dual.clone()],
                vec![Arc::new(Bimodule::regular(dual.clone()))],
            )
            .unwrap(),
        );
        let simple = Module::new(
            dual.clone(),
            vec![Matrix::identity(F5, 1), Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        assert!(both_exact_iso_check(&dd, 0, &simple, &simple, 3).unwrap());
    }
}
