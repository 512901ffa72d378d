//! The standard resolution `0 → ⊕_a σ_!(Ψ_aX_i) →β ⊕_i σ_!(X_i) →γ X → 0`
//! and its coresolution mirror, with exactness verified by componentwise
//! rank checks.
//!
//! The `β` component on the `(a, p)` summand is `(Id, −Ψ_pX_a)`: the
//! identity into the extended-path summand of `σ_!(X_i)` minus the
//! path-pushed structure map into the same-path summand of `σ_!(X_j)`.
//! Path modules coincide on the nose (functors are folded arrow by
//! arrow), so the `Id` blocks are literal identity matrices.

use crate::matrix::Matrix;
use crate::module::ModuleMorphism;
use crate::rep::{RepMorphism, Representation};
use crate::sigma::{shriek_assemble, sigma_shriek, sigma_star, star_assemble, PathSum};
use crate::{Error, Result};

/// `0 → left →β middle →γ X → 0`.
#[derive(Clone, Debug)]
pub struct StandardResolution {
    pub of: Representation,
    pub left: Representation,
    pub middle: Representation,
    pub beta: RepMorphism,
    pub gamma: RepMorphism,
    /// `σ_!(Ψ_aX_i)` per arrow.
    pub left_sigmas: Vec<PathSum>,
    /// `σ_!(X_i)` per vertex.
    pub mid_sigmas: Vec<PathSum>,
}

/// `0 → X →γ middle →β right → 0`.
#[derive(Clone, Debug)]
pub struct StandardCoresolution {
    pub of: Representation,
    pub middle: Representation,
    pub right: Representation,
    pub gamma: RepMorphism,
    pub beta: RepMorphism,
    /// `σ_*(X_i)` per vertex.
    pub mid_sigmas: Vec<PathSum>,
    /// `σ_*(Φ_aX_j)` per arrow.
    pub right_sigmas: Vec<PathSum>,
}

fn sum_reps(
    diagram: &std::sync::Arc<crate::diagram::Diagram>,
    parts: &[&Representation],
) -> Result<(Representation, Vec<RepMorphism>, Vec<RepMorphism>)> {
    if parts.is_empty() {
        let zero = Representation::zero(diagram.clone());
        return Ok((zero, Vec::new(), Vec::new()));
    }
    Representation::direct_sum(parts)
}

pub fn standard_resolution(x: &Representation) -> Result<StandardResolution> {
    let diagram = x.diagram.clone();
    let nv = diagram.quiver.num_vertices;
    let mid_sigmas: Vec<PathSum> = (0..nv)
        .map(|i| sigma_shriek(&diagram, i, &x.modules[i]))
        .collect::<Result<_>>()?;
    let left_sigmas: Vec<PathSum> = diagram
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| sigma_shriek(&diagram, arr.target, &x.psi_images[a].module))
        .collect::<Result<_>>()?;
    let mid_parts: Vec<&Representation> = mid_sigmas.iter().map(|s| &s.rep).collect();
    let (middle, mid_incls, mid_projs) = sum_reps(&diagram, &mid_parts)?;
    let left_parts: Vec<&Representation> = left_sigmas.iter().map(|s| &s.rep).collect();
    let (left, _left_incls, left_projs) = sum_reps(&diagram, &left_parts)?;

    // γ: on the σ_!(X_i) summand, push the identity of X_i along every path
    let mut gamma_mats: Vec<Matrix> = (0..nv)
        .map(|k| Matrix::zero(diagram.field(), x.modules[k].dim, middle.modules[k].dim))
        .collect();
    for i in 0..nv {
        let assembled = shriek_assemble(&mid_sigmas[i], x, &ModuleMorphism::identity(&x.modules[i]))?;
        for k in 0..nv {
            let term = assembled.components[k]
                .matrix
                .mul(&mid_projs[i].components[k].matrix)?;
            gamma_mats[k] = gamma_mats[k].add(&term)?;
        }
    }
    let gamma = RepMorphism::new(middle.clone(), x.clone(), gamma_mats)?;

    // β: (Id, −Ψ_pX_a) on the (a, p) summand
    let mut beta_mats: Vec<Matrix> = (0..nv)
        .map(|k| Matrix::zero(diagram.field(), middle.modules[k].dim, left.modules[k].dim))
        .collect();
    for (a, arr) in diagram.quiver.arrows.iter().enumerate() {
        let (i, j) = (arr.source, arr.target);
        for k in 0..nv {
            for (idx, p) in left_sigmas[a].paths[k].iter().enumerate() {
                // column factor: project onto the (a, p) summand
                let col = left_sigmas[a].projs[k][idx]
                    .matrix
                    .mul(&left_projs[a].components[k].matrix)?;
                // Id into the extended-path summand of σ_!(X_i)
                let mut extended = crate::diagram::Path {
                    source: i,
                    target: k,
                    arrows: Vec::with_capacity(p.len() + 1),
                };
                extended.arrows.push(a);
                extended.arrows.extend_from_slice(&p.arrows);
                let eidx = mid_sigmas[i].paths[k]
                    .iter()
                    .position(|q| q == &extended)
                    .ok_or_else(|| Error::Internal("extended path missing in σ_!(X_i)".into()))?;
                let id_part = mid_incls[i].components[k]
                    .matrix
                    .mul(&mid_sigmas[i].incls[k][eidx].matrix)?
                    .mul(&col)?;
                // −Ψ_p(X_a^♭) into the same-path summand of σ_!(X_j)
                let pidx = mid_sigmas[j].paths[k]
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| Error::Internal("path missing in σ_!(X_j)".into()))?;
                let pushed = diagram.psi_path_map(
                    p,
                    &left_sigmas[a].path_images[k][idx],
                    &mid_sigmas[j].path_images[k][pidx],
                    &x.psi_maps[a],
                )?;
                let map_part = mid_incls[j].components[k]
                    .matrix
                    .mul(&mid_sigmas[j].incls[k][pidx].matrix)?
                    .mul(&pushed.matrix)?
                    .mul(&col)?;
                beta_mats[k] = beta_mats[k].add(&id_part)?.sub(&map_part)?;
            }
        }
    }
    let beta = RepMorphism::new(left.clone(), middle.clone(), beta_mats)?;

    let res = StandardResolution {
        of: x.clone(),
        left,
        middle,
        beta,
        gamma,
        left_sigmas,
        mid_sigmas,
    };
    res.verify()?;
    Ok(res)
}

impl StandardResolution {
    /// `γβ = 0`, `β` injective, `γ` surjective, and exactness in the
    /// middle — all componentwise by ranks.
    pub fn verify(&self) -> Result<()> {
        let mut violations = Vec::new();
        if !self.gamma.compose(&self.beta)?.is_zero() {
            violations.push("γ ∘ β ≠ 0".to_string());
        }
        for v in 0..self.of.modules.len() {
            let rb = self.beta.components[v].matrix.rank();
            let rg = self.gamma.components[v].matrix.rank();
            if rb != self.left.modules[v].dim {
                violations.push(format!("β not injective at vertex {v}"));
            }
            if rg != self.of.modules[v].dim {
                violations.push(format!("γ not surjective at vertex {v}"));
            }
            if rb + rg != self.middle.modules[v].dim {
                violations.push(format!("not exact in the middle at vertex {v}"));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "standard resolution verification failed: {}",
                violations.join("; ")
            )))
        }
    }
}

pub fn standard_coresolution(x: &Representation) -> Result<StandardCoresolution> {
    let diagram = x.diagram.clone();
    let nv = diagram.quiver.num_vertices;
    let mid_sigmas: Vec<PathSum> = (0..nv)
        .map(|i| sigma_star(&diagram, i, &x.modules[i]))
        .collect::<Result<_>>()?;
    let right_sigmas: Vec<PathSum> = diagram
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| sigma_star(&diagram, arr.source, &x.phi_images[a].module))
        .collect::<Result<_>>()?;
    let mid_parts: Vec<&Representation> = mid_sigmas.iter().map(|s| &s.rep).collect();
    let (middle, mid_incls, mid_projs) = sum_reps(&diagram, &mid_parts)?;
    let right_parts: Vec<&Representation> = right_sigmas.iter().map(|s| &s.rep).collect();
    let (right, right_incls, _right_projs) = sum_reps(&diagram, &right_parts)?;

    // γ: pull the identity of X_i back along every path into σ_*(X_i)
    let mut gamma_mats: Vec<Matrix> = (0..nv)
        .map(|k| Matrix::zero(diagram.field(), middle.modules[k].dim, x.modules[k].dim))
        .collect();
    for i in 0..nv {
        let assembled = star_assemble(&mid_sigmas[i], x, &ModuleMorphism::identity(&x.modules[i]))?;
        for k in 0..nv {
            let term = mid_incls[i].components[k]
                .matrix
                .mul(&assembled.components[k].matrix)?;
            gamma_mats[k] = gamma_mats[k].add(&term)?;
        }
    }
    let gamma = RepMorphism::new(x.clone(), middle.clone(), gamma_mats)?;

    // β: (Id, −Φ_pX_a) out of the path summands of the middle term
    let mut beta_mats: Vec<Matrix> = (0..nv)
        .map(|k| Matrix::zero(diagram.field(), right.modules[k].dim, middle.modules[k].dim))
        .collect();
    for (a, arr) in diagram.quiver.arrows.iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        for k in 0..nv {
            for (idx, p) in right_sigmas[a].paths[k].iter().enumerate() {
                // row factor: include the (a, p) summand into the right term
                let row = right_incls[a].components[k]
                    .matrix
                    .mul(&right_sigmas[a].incls[k][idx].matrix)?;
                // Id from the prolonged-path summand of σ_*(X_t)
                let mut prolonged = crate::diagram::Path {
                    source: k,
                    target: t,
                    arrows: p.arrows.clone(),
                };
                prolonged.arrows.push(a);
                let eidx = mid_sigmas[t].paths[k]
                    .iter()
                    .position(|q| q == &prolonged)
                    .ok_or_else(|| Error::Internal("prolonged path missing in σ_*(X_t)".into()))?;
                let id_part = row
                    .mul(&mid_sigmas[t].projs[k][eidx].matrix)?
                    .mul(&mid_projs[t].components[k].matrix)?;
                // −Φ_p(X_a^♯) from the same-path summand of σ_*(X_s)
                let pidx = mid_sigmas[s].paths[k]
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| Error::Internal("path missing in σ_*(X_s)".into()))?;
                let pulled = diagram.phi_path_map(
                    p,
                    &mid_sigmas[s].path_images[k][pidx],
                    &right_sigmas[a].path_images[k][idx],
                    &x.phi_maps[a],
                )?;
                let map_part = row
                    .mul(&pulled.matrix)?
                    .mul(&mid_sigmas[s].projs[k][pidx].matrix)?
                    .mul(&mid_projs[s].components[k].matrix)?;
                beta_mats[k] = beta_mats[k].add(&id_part)?.sub(&map_part)?;
            }
        }
    }
    let beta = RepMorphism::new(middle.clone(), right.clone(), beta_mats)?;

    let res = StandardCoresolution {
        of: x.clone(),
        middle,
        right,
        gamma,
        beta,
        mid_sigmas,
        right_sigmas,
    };
    res.verify()?;
    Ok(res)
}

impl StandardCoresolution {
    pub fn verify(&self) -> Result<()> {
        let mut violations = Vec::new();
        if !self.beta.compose(&self.gamma)?.is_zero() {
            violations.push("β ∘ γ ≠ 0".to_string());
        }
        for v in 0..self.of.modules.len() {
            let rg = self.gamma.components[v].matrix.rank();
            let rb = self.beta.components[v].matrix.rank();
            if rg != self.of.modules[v].dim {
                violations.push(format!("γ not injective at vertex {v}"));
            }
            if rb != self.right.modules[v].dim {
                violations.push(format!("β not surjective at vertex {v}"));
            }
            if rg + rb != self.middle.modules[v].dim {
                violations.push(format!("not exact in the middle at vertex {v}"));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "standard coresolution verification failed: {}",
                violations.join("; ")
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bimodule::Bimodule;
    use crate::diagram::{Arrow, Diagram, Quiver};
    use crate::field::Field;
    use crate::module::Module;
    use std::sync::Arc;

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

    fn vect_rep(d: &Arc<Diagram>, dims: &[usize], mats: Vec<crate::Matrix>) -> Representation {
        let modules = dims
            .iter()
            .enumerate()
            .map(|(v, &n)| Module::free(d.algebras[v].clone(), n))
            .collect();
        Representation::from_psi(d.clone(), modules, mats).unwrap()
    }

    #[test]
    fn arrowless_quiver_resolution_is_an_isomorphism() {
        let q = Quiver::new(2, Vec::new()).unwrap();
        let k = Algebra::ground_field(F5);
        let d = Arc::new(Diagram::new(q, vec![k.clone(), k], Vec::new()).unwrap());
        let x = Representation::from_psi(
            d.clone(),
            vec![
                Module::free(d.algebras[0].clone(), 2),
                Module::free(d.algebras[1].clone(), 3),
            ],
            Vec::new(),
        )
        .unwrap();
        let res = standard_resolution(&x).unwrap();
        assert_eq!(res.left.total_dim(), 0);
        assert_eq!(res.middle.dims(), x.dims());
        let cores = standard_coresolution(&x).unwrap();
        assert_eq!(cores.right.total_dim(), 0);
        assert_eq!(cores.middle.dims(), x.dims());
    }

    #[test]
    fn a2_term_dims_by_path_counting() {
        let d = a2_vect(1);
        let x = vect_rep(&d, &[1, 1], vec![crate::Matrix::identity(F5, 1)]);
        let res = standard_resolution(&x).unwrap();
        assert_eq!(res.middle.dims(), vec![1, 2]);
        assert_eq!(res.left.dims(), vec![0, 1]);
        let cores = standard_coresolution(&x).unwrap();
        assert_eq!(cores.middle.dims(), vec![2, 1]);
        assert_eq!(cores.right.dims(), vec![1, 0]);
    }

    #[test]
    fn resolution_of_induced_rep_splits() {
        // X = σ_!M from the sink: the resolution has zero left term at
        // the sink's component and splits
        let d = a2_vect(2);
        let m = Module::free(d.algebras[1].clone(), 2);
        let s = crate::sigma::sigma_shriek(&d, 1, &m).unwrap();
        let res = standard_resolution(&s.rep).unwrap();
        res.verify().unwrap();
        let cores = standard_coresolution(&s.rep).unwrap();
        cores.verify().unwrap();
    }

    #[test]
    fn kronecker_and_chain_resolutions_verify() {
        let d = a2_vect(2);
        let x = vect_rep(
            &d,
            &[2, 2],
            vec![crate::Matrix::from_i64(F5, &[&[1, 0, 0, 1], &[0, 1, 1, 0]])],
        );
        standard_resolution(&x).unwrap();
        standard_coresolution(&x).unwrap();

        let q = Quiver::new(
            3,
            vec![
                Arrow { label: "a".into(), source: 0, target: 1 },
                Arrow { label: "b".into(), source: 1, target: 2 },
            ],
        )
        .unwrap();
        let k = Algebra::ground_field(F5);
        let d3 = Arc::new(
            Diagram::new(
                q,
                vec![k.clone(), k.clone(), k.clone()],
                vec![
                    Arc::new(Bimodule::vect(k.clone(), 2)),
                    Arc::new(Bimodule::vect(k, 1)),
                ],
            )
            .unwrap(),
        );
        let x = vect_rep(
            &d3,
            &[1, 2, 1],
            vec![
                crate::Matrix::from_i64(F5, &[&[1, 0], &[0, 1]]),
                crate::Matrix::from_i64(F5, &[&[1, 1]]),
            ],
        );
        standard_resolution(&x).unwrap();
        standard_coresolution(&x).unwrap();
    }

    #[test]
    fn algebra_vertex_resolution_verifies() {
        // A_2 with 𝕜[t]/t² at both vertices, regular bimodule
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
            vec![crate::Matrix::identity(F5, 1), crate::Matrix::zero(F5, 1, 1)],
        )
        .unwrap();
        let free = Module::free(dual.clone(), 1);
        // pick a genuine morphism Ψ_a(free) → simple as the structure map
        let t_img = crate::bimodule::tensor_over(&free, &d.bimodules[0]).unwrap();
        let hom = crate::module::hom_space(&t_img.module, &simple).unwrap();
        let x = Representation::from_psi(
            d.clone(),
            vec![free, simple],
            vec![hom[0].matrix.clone()],
        )
        .unwrap();
        standard_resolution(&x).unwrap();
        standard_coresolution(&x).unwrap();
    }
}
