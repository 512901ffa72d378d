//! Representations of decorated quivers: objects, morphisms, kernels,
//! cokernels, exactness, direct sums, and duality.
//!
//! A representation stores both adjoint forms of its structure maps — the
//! `Ψ`-form `X_a^♭ : Ψ_a X_i → X_j` and the `Φ`-form `X_a^♯ : X_i → Φ_a
//! X_j` — kept in sync by the adjunction transposes. Kernels are built in
//! the `Φ`-form (left-exact side), cokernels in the `Ψ`-form (right-exact
//! side), so each universal property holds componentwise by construction.

use crate::bimodule::{
    transpose_phi_to_psi, transpose_psi_to_phi, FunctorImage, HomImage, TensorImage,
};
use crate::diagram::Diagram;
use crate::matrix::Matrix;
use crate::module::{hom_coordinates, solve_linear_maps, Module, ModuleMorphism};
use crate::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub diagram: Arc<Diagram>,
    pub modules: Vec<Module>,
    /// Canonical `Ψ_a X_i` per arrow.
    pub psi_images: Vec<TensorImage>,
    /// Canonical `Φ_a X_j` per arrow.
    pub phi_images: Vec<HomImage>,
    /// `X_a^♭ : Ψ_a X_i → X_j`.
    pub psi_maps: Vec<ModuleMorphism>,
    /// `X_a^♯ : X_i → Φ_a X_j`.
    pub phi_maps: Vec<ModuleMorphism>,
}

fn check_modules(diagram: &Diagram, modules: &[Module]) -> Result<()> {
    if modules.len() != diagram.quiver.num_vertices {
        return Err(Error::DimensionMismatch(format!(
            "{} modules for {} vertices",
            modules.len(),
            diagram.quiver.num_vertices
        )));
    }
    for (v, m) in modules.iter().enumerate() {
        if m.algebra != diagram.algebras[v] {
            return Err(Error::Validation(vec![format!(
                "module at vertex {v} is over the wrong algebra"
            )]));
        }
    }
    Ok(())
}

impl Representation {
    /// Build from `Ψ`-form structure matrices (one `dim X_j × dim Ψ_a X_i`
    /// matrix per arrow); the `Φ`-form is derived by transposition.
    pub fn from_psi(
        diagram: Arc<Diagram>,
        modules: Vec<Module>,
        psi_matrices: Vec<Matrix>,
    ) -> Result<Representation> {
        check_modules(&diagram, &modules)?;
        if psi_matrices.len() != diagram.quiver.arrows.len() {
            return Err(Error::DimensionMismatch(
                "one structure matrix per arrow required".into(),
            ));
        }
        let mut psi_images = Vec::new();
        let mut phi_images = Vec::new();
        let mut psi_maps = Vec::new();
        let mut phi_maps = Vec::new();
        for (a, mat) in psi_matrices.into_iter().enumerate() {
            let arr = &diagram.quiver.arrows[a];
            let t_img = crate::bimodule::tensor_over(&modules[arr.source], &diagram.bimodules[a])?;
            let h_img = crate::bimodule::hom_from(&diagram.bimodules[a], &modules[arr.target])?;
            let psi = ModuleMorphism::new(t_img.module.clone(), modules[arr.target].clone(), mat)?;
            let phi = transpose_psi_to_phi(&modules[arr.source], &t_img, &h_img, &psi)?;
            psi_images.push(t_img);
            phi_images.push(h_img);
            psi_maps.push(psi);
            phi_maps.push(phi);
        }
        Ok(Representation {
            diagram,
            modules,
            psi_images,
            phi_images,
            psi_maps,
            phi_maps,
        })
    }

    /// Build from `Φ`-form structure matrices (one `dim Φ_a X_j × dim X_i`
    /// matrix per arrow); the `Ψ`-form is derived by transposition.
    pub fn from_phi(
        diagram: Arc<Diagram>,
        modules: Vec<Module>,
        phi_matrices: Vec<Matrix>,
    ) -> Result<Representation> {
        check_modules(&diagram, &modules)?;
        if phi_matrices.len() != diagram.quiver.arrows.len() {
            return Err(Error::DimensionMismatch(
                "one structure matrix per arrow required".into(),
            ));
        }
        let mut psi_images = Vec::new();
        let mut phi_images = Vec::new();
        let mut psi_maps = Vec::new();
        let mut phi_maps = Vec::new();
        for (a, mat) in phi_matrices.into_iter().enumerate() {
            let arr = &diagram.quiver.arrows[a];
            let t_img = crate::bimodule::tensor_over(&modules[arr.source], &diagram.bimodules[a])?;
            let h_img = crate::bimodule::hom_from(&diagram.bimodules[a], &modules[arr.target])?;
            let phi = ModuleMorphism::new(
                modules[arr.source].clone(),
                h_img.module.clone(),
                mat,
            )?;
            let psi = transpose_phi_to_psi(
                &modules[arr.source],
                &t_img,
                &h_img,
                &modules[arr.target],
                &phi,
            )?;
            psi_images.push(t_img);
            phi_images.push(h_img);
            psi_maps.push(psi);
            phi_maps.push(phi);
        }
        Ok(Representation {
            diagram,
            modules,
            psi_images,
            phi_images,
            psi_maps,
            phi_maps,
        })
    }

    pub fn zero(diagram: Arc<Diagram>) -> Representation {
        let modules: Vec<Module> = diagram
            .algebras
            .iter()
            .map(|a| Module::zero(a.clone()))
            .collect();
        let mats = diagram
            .quiver
            .arrows
            .iter()
            .map(|_| Matrix::zero(diagram.field(), 0, 0))
            .collect();
        Representation::from_psi(diagram, modules, mats).expect("zero representation")
    }

    pub fn dims(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    /// Re-derive all canonical data and compare; returns every violation.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        if let Err(e) = check_modules(&self.diagram, &self.modules) {
            violations.push(e.to_string());
        }
        for m in &self.modules {
            if let Err(Error::Validation(v)) = m.validate() {
                violations.extend(v);
            }
        }
        for (a, arr) in self.diagram.quiver.arrows.iter().enumerate() {
            let label = &arr.label;
            let t_img =
                crate::bimodule::tensor_over(&self.modules[arr.source], &self.diagram.bimodules[a]);
            let h_img =
                crate::bimodule::hom_from(&self.diagram.bimodules[a], &self.modules[arr.target]);
            let (t_img, h_img) = match (t_img, h_img) {
                (Ok(t), Ok(h)) => (t, h),
                _ => {
                    violations.push(format!("arrow `{label}`: functor images not computable"));
                    continue;
                }
            };
            if t_img != self.psi_images[a] {
                violations.push(format!("arrow `{label}`: stale tensor image"));
            }
            if h_img != self.phi_images[a] {
                violations.push(format!("arrow `{label}`: stale hom image"));
            }
            let psi = ModuleMorphism::new(
                t_img.module.clone(),
                self.modules[arr.target].clone(),
                self.psi_maps[a].matrix.clone(),
            );
            match psi {
                Err(_) => violations.push(format!("arrow `{label}`: Ψ-form map is not a morphism")),
                Ok(psi) => match transpose_psi_to_phi(&self.modules[arr.source], &t_img, &h_img, &psi)
                {
                    Ok(phi) if phi.matrix == self.phi_maps[a].matrix => {}
                    _ => violations.push(format!(
                        "arrow `{label}`: Φ-form is not the adjoint transpose of the Ψ-form"
                    )),
                },
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// `Ψ_a f` for a component morphism `f : X_i → Y_i` between two
    /// representations on the same diagram.
    pub fn psi_component_map(
        &self,
        other: &Representation,
        arrow: usize,
        f: &ModuleMorphism,
    ) -> Result<ModuleMorphism> {
        self.diagram.psi(arrow).map(
            &FunctorImage::Tensor(self.psi_images[arrow].clone()),
            &FunctorImage::Tensor(other.psi_images[arrow].clone()),
            f,
        )
    }

    /// `Φ_a f` for a component morphism `f : X_j → Y_j`.
    pub fn phi_component_map(
        &self,
        other: &Representation,
        arrow: usize,
        f: &ModuleMorphism,
    ) -> Result<ModuleMorphism> {
        self.diagram.phi(arrow).map(
            &FunctorImage::Hom(self.phi_images[arrow].clone()),
            &FunctorImage::Hom(other.phi_images[arrow].clone()),
            f,
        )
    }

    /// Direct sum with inclusion and projection morphisms.
    pub fn direct_sum(
        summands: &[&Representation],
    ) -> Result<(Representation, Vec<RepMorphism>, Vec<RepMorphism>)> {
        let diagram = summands
            .first()
            .map(|r| r.diagram.clone())
            .ok_or_else(|| Error::DimensionMismatch("direct sum needs a summand".into()))?;
        for r in summands {
            if r.diagram != diagram {
                return Err(Error::DiagramMismatch);
            }
        }
        let nv = diagram.quiver.num_vertices;
        let mut modules = Vec::with_capacity(nv);
        let mut incls: Vec<Vec<ModuleMorphism>> = Vec::with_capacity(nv);
        let mut projs: Vec<Vec<ModuleMorphism>> = Vec::with_capacity(nv);
        for v in 0..nv {
            let comps: Vec<&Module> = summands.iter().map(|r| &r.modules[v]).collect();
            let (sum, inc, prj) = Module::direct_sum(&comps)?;
            modules.push(sum);
            incls.push(inc);
            projs.push(prj);
        }
        let mut psi_matrices = Vec::with_capacity(diagram.quiver.arrows.len());
        for (a, arr) in diagram.quiver.arrows.iter().enumerate() {
            let sum_t =
                crate::bimodule::tensor_over(&modules[arr.source], &diagram.bimodules[a])?;
            let mut mat = Matrix::zero(
                diagram.field(),
                modules[arr.target].dim,
                sum_t.module.dim,
            );
            for (s, r) in summands.iter().enumerate() {
                // incl_j ∘ X_a^♭ ∘ Ψ_a(proj_i) for summand s
                let proj = diagram.psi(a).map(
                    &FunctorImage::Tensor(sum_t.clone()),
                    &FunctorImage::Tensor(r.psi_images[a].clone()),
                    &projs[arr.source][s],
                )?;
                let term = incls[arr.target][s]
                    .matrix
                    .mul(&r.psi_maps[a].matrix)?
                    .mul(&proj.matrix)?;
                mat = mat.add(&term)?;
            }
            psi_matrices.push(mat);
        }
        let sum = Representation::from_psi(diagram, modules, psi_matrices)?;
        let mut incl_morphs = Vec::with_capacity(summands.len());
        let mut proj_morphs = Vec::with_capacity(summands.len());
        for (s, r) in summands.iter().enumerate() {
            let inc: Vec<Matrix> = (0..nv).map(|v| incls[v][s].matrix.clone()).collect();
            let prj: Vec<Matrix> = (0..nv).map(|v| projs[v][s].matrix.clone()).collect();
            incl_morphs.push(RepMorphism::new((*r).clone(), sum.clone(), inc)?);
            proj_morphs.push(RepMorphism::new(sum.clone(), (*r).clone(), prj)?);
        }
        Ok((sum, incl_morphs, proj_morphs))
    }

    /// Componentwise dual over the opposite diagram, with structure maps
    /// carried through the canonical identification
    /// `D(Ψ_a X_i) ≅ Hom(N_a^swap, D(X_i))`.
    pub fn dualize(&self) -> Result<Representation> {
        let op = Arc::new(self.diagram.opposite()?);
        let modules: Vec<Module> = self.modules.iter().map(|m| m.dualize()).collect();
        let mut phi_matrices = Vec::with_capacity(op.quiver.arrows.len());
        for (a, arr) in self.diagram.quiver.arrows.iter().enumerate() {
            // reversed arrow a : j → i; Φ-form map D(X_j) → Hom(N', D(X_i))
            let (i, j) = (arr.source, arr.target);
            let n_dim = self.diagram.bimodules[a].dim;
            let h_img = crate::bimodule::hom_from(&op.bimodules[a], &modules[i])?;
            let carrier = self.psi_maps[a].matrix.mul(&self.psi_images[a].projection)?;
            let mut mat = Matrix::zero(op.field(), h_img.module.dim, modules[j].dim);
            for s in 0..modules[j].dim {
                // functional e_s ∘ X_a^♭ on X_i ⊗ N, as a map N → D(X_i)
                let mut f = Matrix::zero(op.field(), modules[i].dim, n_dim);
                for r in 0..modules[i].dim {
                    for t in 0..n_dim {
                        f.set(r, t, carrier.get(s, r * n_dim + t).clone());
                    }
                }
                let coords = hom_coordinates(&h_img.basis, &f)?;
                mat.set_column(s, &coords);
            }
            phi_matrices.push(mat);
        }
        Representation::from_phi(op, modules, phi_matrices)
    }
}

/// A morphism of representations: one component per vertex, commuting with
/// the structure maps (verified on construction in the `Ψ`-form).
#[derive(Clone, Debug, PartialEq)]
pub struct RepMorphism {
    pub source: Representation,
    pub target: Representation,
    pub components: Vec<ModuleMorphism>,
}

impl RepMorphism {
    pub fn new(
        source: Representation,
        target: Representation,
        components: Vec<Matrix>,
    ) -> Result<RepMorphism> {
        if source.diagram != target.diagram {
            return Err(Error::DiagramMismatch);
        }
        if components.len() != source.modules.len() {
            return Err(Error::DimensionMismatch(
                "one component per vertex required".into(),
            ));
        }
        let comps: Result<Vec<ModuleMorphism>> = components
            .into_iter()
            .enumerate()
            .map(|(v, m)| {
                ModuleMorphism::new(source.modules[v].clone(), target.modules[v].clone(), m)
            })
            .collect();
        let comps = comps?;
        for (a, arr) in source.diagram.quiver.arrows.iter().enumerate() {
            let psi_f = source.psi_component_map(&target, a, &comps[arr.source])?;
            let lhs = comps[arr.target].matrix.mul(&source.psi_maps[a].matrix)?;
            let rhs = target.psi_maps[a].matrix.mul(&psi_f.matrix)?;
            if lhs != rhs {
                return Err(Error::Validation(vec![format!(
                    "morphism square fails at arrow `{}`",
                    arr.label
                )]));
            }
        }
        Ok(RepMorphism {
            source,
            target,
            components: comps,
        })
    }

    pub fn identity(x: &Representation) -> RepMorphism {
        RepMorphism {
            source: x.clone(),
            target: x.clone(),
            components: x.modules.iter().map(ModuleMorphism::identity).collect(),
        }
    }

    pub fn zero(source: Representation, target: Representation) -> RepMorphism {
        let components = source
            .modules
            .iter()
            .zip(&target.modules)
            .map(|(s, t)| ModuleMorphism::zero(s.clone(), t.clone()))
            .collect();
        RepMorphism {
            source,
            target,
            components,
        }
    }

    pub fn compose(&self, other: &RepMorphism) -> Result<RepMorphism> {
        let components: Result<Vec<ModuleMorphism>> = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| f.compose(g))
            .collect();
        Ok(RepMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            components: components?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.matrix.is_zero())
    }

    /// Componentwise kernel with the induced structure maps, built in the
    /// `Φ`-form and transposed.
    pub fn kernel(&self) -> Result<(Representation, RepMorphism)> {
        let diagram = self.source.diagram.clone();
        let nv = diagram.quiver.num_vertices;
        let mut kernels = Vec::with_capacity(nv);
        let mut incls = Vec::with_capacity(nv);
        for f in &self.components {
            let (k, h) = f.kernel()?;
            kernels.push(k);
            incls.push(h);
        }
        let mut phi_matrices = Vec::with_capacity(diagram.quiver.arrows.len());
        for (a, arr) in diagram.quiver.arrows.iter().enumerate() {
            let (i, j) = (arr.source, arr.target);
            let hk = crate::bimodule::hom_from(&diagram.bimodules[a], &kernels[j])?;
            // the dashed arrow K_i → Φ_a K_j through the mono Φ_a(h_j)
            let phi_h = diagram.phi(a).map(
                &FunctorImage::Hom(hk.clone()),
                &FunctorImage::Hom(self.source.phi_images[a].clone()),
                &incls[j],
            )?;
            if phi_h.matrix.rank() != hk.module.dim {
                return Err(Error::UniquenessFailure(format!(
                    "Φ_{}-image of a kernel inclusion is not injective",
                    arr.label
                )));
            }
            let rhs = self.source.phi_maps[a].matrix.mul(&incls[i].matrix)?;
            let sol = solve_linear_maps(
                &kernels[i],
                &hk.module,
                &[(
                    phi_h.matrix.clone(),
                    Matrix::identity(diagram.field(), kernels[i].dim),
                    rhs,
                )],
            )?
            .ok_or_else(|| {
                Error::Internal(format!(
                    "kernel structure map does not exist at arrow `{}`",
                    arr.label
                ))
            })?;
            phi_matrices.push(sol);
        }
        let ker = Representation::from_phi(diagram, kernels, phi_matrices)?;
        let incl = RepMorphism::new(
            ker.clone(),
            self.source.clone(),
            incls.into_iter().map(|h| h.matrix).collect(),
        )?;
        Ok((ker, incl))
    }

    /// Componentwise cokernel with the induced structure maps, built in
    /// the `Ψ`-form and transposed.
    pub fn cokernel(&self) -> Result<(Representation, RepMorphism)> {
        let diagram = self.target.diagram.clone();
        let nv = diagram.quiver.num_vertices;
        let mut cokers = Vec::with_capacity(nv);
        let mut projs = Vec::with_capacity(nv);
        for f in &self.components {
            let (c, p) = f.cokernel()?;
            cokers.push(c);
            projs.push(p);
        }
        let mut psi_matrices = Vec::with_capacity(diagram.quiver.arrows.len());
        for (a, arr) in diagram.quiver.arrows.iter().enumerate() {
            let (i, j) = (arr.source, arr.target);
            let tc = crate::bimodule::tensor_over(&cokers[i], &diagram.bimodules[a])?;
            let psi_p = diagram.psi(a).map(
                &FunctorImage::Tensor(self.target.psi_images[a].clone()),
                &FunctorImage::Tensor(tc.clone()),
                &projs[i],
            )?;
            if psi_p.matrix.rank() != tc.module.dim {
                return Err(Error::UniquenessFailure(format!(
                    "Ψ_{}-image of a cokernel projection is not surjective",
                    arr.label
                )));
            }
            let rhs = projs[j].matrix.mul(&self.target.psi_maps[a].matrix)?;
            let sol = solve_linear_maps(
                &tc.module,
                &cokers[j],
                &[(
                    Matrix::identity(diagram.field(), cokers[j].dim),
                    psi_p.matrix.clone(),
                    rhs,
                )],
            )?
            .ok_or_else(|| {
                Error::Internal(format!(
                    "cokernel structure map does not exist at arrow `{}`",
                    arr.label
                ))
            })?;
            psi_matrices.push(sol);
        }
        let coker = Representation::from_psi(diagram, cokers, psi_matrices)?;
        let proj = RepMorphism::new(
            self.target.clone(),
            coker.clone(),
            projs.into_iter().map(|p| p.matrix).collect(),
        )?;
        Ok((coker, proj))
    }

    pub fn dualize(&self) -> Result<RepMorphism> {
        let src = self.target.dualize()?;
        let tgt = self.source.dualize()?;
        let comps = self
            .components
            .iter()
            .map(|c| c.matrix.transpose())
            .collect();
        RepMorphism::new(src, tgt, comps)
    }
}

/// Basis of the space of representation morphisms `X → Y`: the joint
/// linear system of per-vertex module linearity and per-arrow commuting
/// squares, solved at once.
pub fn hom_rep(x: &Representation, y: &Representation) -> Result<Vec<RepMorphism>> {
    if x.diagram != y.diagram {
        return Err(Error::DiagramMismatch);
    }
    let diagram = &x.diagram;
    let field = diagram.field();
    let nv = diagram.quiver.num_vertices;
    let mut offsets = Vec::with_capacity(nv + 1);
    offsets.push(0usize);
    for v in 0..nv {
        offsets.push(offsets[v] + x.modules[v].dim * y.modules[v].dim);
    }
    let unknowns = offsets[nv];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut blocks: Vec<Matrix> = Vec::new();
    // per-vertex A_v-linearity
    for v in 0..nv {
        let (xd, yd) = (x.modules[v].dim, y.modules[v].dim);
        if xd * yd == 0 {
            continue;
        }
        let id_y = Matrix::identity(field, yd);
        let id_x = Matrix::identity(field, xd);
        for t in 0..diagram.algebras[v].dim {
            let lhs = x.modules[v].action[t].transpose().kron(&id_y)?;
            let rhs = id_x.kron(&y.modules[v].action[t])?;
            let block = lhs.sub(&rhs)?;
            let mut row = Matrix::zero(field, block.rows(), unknowns);
            for c in 0..block.cols() {
                row.set_column(offsets[v] + c, &block.column(c));
            }
            blocks.push(row);
        }
    }
    // per-arrow commuting squares: f_j ∘ X_a^♭ = Y_a^♭ ∘ Ψ_a(f_i)
    for (a, arr) in diagram.quiver.arrows.iter().enumerate() {
        let (i, j) = (arr.source, arr.target);
        let tx = &x.psi_images[a];
        let ty = &y.psi_images[a];
        let rows = y.modules[j].dim * tx.module.dim;
        if rows == 0 {
            continue;
        }
        let mut row = Matrix::zero(field, rows, unknowns);
        if x.modules[j].dim * y.modules[j].dim > 0 {
            let id_yj = Matrix::identity(field, y.modules[j].dim);
            let left = x.psi_maps[a].matrix.transpose().kron(&id_yj)?;
            for c in 0..left.cols() {
                row.set_column(offsets[j] + c, &left.column(c));
            }
        }
        // the Ψ_a(f_i) term, one elementary matrix per unknown entry of f_i
        let n = diagram.bimodules[a].dim;
        let id_n = Matrix::identity(field, n);
        let (xi, yi) = (x.modules[i].dim, y.modules[i].dim);
        for c in 0..xi {
            for r in 0..yi {
                let mut e = Matrix::zero(field, yi, xi);
                e.set(r, c, field.one());
                let term = y.psi_maps[a]
                    .matrix
                    .mul(&ty.projection)?
                    .mul(&e.kron(&id_n)?)?
                    .mul(&tx.section)?;
                let existing = row.column(offsets[i] + c * yi + r);
                row.set_column(offsets[i] + c * yi + r, &existing.sub(&term.vectorize())?);
            }
        }
        blocks.push(row);
    }
    let system = if blocks.is_empty() {
        Matrix::zero(field, 0, unknowns)
    } else {
        let mut s = blocks[0].clone();
        for b in &blocks[1..] {
            s = s.vstack(b)?;
        }
        s
    };
    let kernel = system.kernel_basis();
    let mut basis = Vec::with_capacity(kernel.cols());
    for col in 0..kernel.cols() {
        let v = kernel.column(col);
        let mut comps = Vec::with_capacity(nv);
        for vert in 0..nv {
            let (xd, yd) = (x.modules[vert].dim, y.modules[vert].dim);
            let chunk = v.submatrix(offsets[vert]..offsets[vert] + xd * yd, 0..1);
            comps.push(Matrix::unvectorize(&chunk, yd, xd));
        }
        basis.push(RepMorphism::new(x.clone(), y.clone(), comps)?);
    }
    Ok(basis)
}

/// Vertices at which `X → Y → Z` fails to be exact (empty means exact);
/// exactness in the representation category is componentwise.
pub fn exactness_failures(f: &RepMorphism, g: &RepMorphism) -> Result<Vec<usize>> {
    if f.target != g.source {
        return Err(Error::DiagramMismatch);
    }
    let mut failures = Vec::new();
    for (v, (fc, gc)) in f.components.iter().zip(&g.components).enumerate() {
        let composite_zero = gc.matrix.mul(&fc.matrix)?.is_zero();
        let ranks = fc.matrix.rank() + gc.matrix.rank() == f.target.modules[v].dim;
        if !(composite_zero && ranks) {
            failures.push(v);
        }
    }
    Ok(failures)
}

pub fn is_exact_at(f: &RepMorphism, g: &RepMorphism) -> Result<bool> {
    Ok(exactness_failures(f, g)?.is_empty())
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

    fn vect_module(d: &Arc<Diagram>, v: usize, dim: usize) -> Module {
        Module::free(d.algebras[v].clone(), dim)
    }

    fn arrow_rep(d: &Arc<Diagram>, x0: usize, x1: usize, mat: Matrix) -> Representation {
        let modules = vec![vect_module(d, 0, x0), vect_module(d, 1, x1)];
        Representation::from_psi(d.clone(), modules, vec![mat]).unwrap()
    }

    #[test]
    fn zero_rep_validates() {
        let d = a2_vect(2);
        let z = Representation::zero(d);
        assert!(z.validate().is_ok());
        assert_eq!(z.dims(), vec![0, 0]);
    }

    #[test]
    fn tampered_structure_map_reported() {
        let d = a2_vect(1);
        let mut x = arrow_rep(&d, 1, 1, Matrix::identity(F5, 1));
        x.phi_maps[0].matrix = Matrix::zero(F5, 1, 1);
        let err = x.validate().unwrap_err();
        match err {
            Error::Validation(v) => assert!(v.iter().any(|s| s.contains("adjoint transpose"))),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn hom_rep_directed_supports() {
        let d = a2_vect(1);
        // X = (k → 0), Y = (0 → k): the only candidate morphism is zero
        // on both vertices, so Hom = 0
        let x = arrow_rep(&d, 1, 0, Matrix::zero(F5, 0, 1));
        let y = arrow_rep(&d, 0, 1, Matrix::zero(F5, 1, 0));
        assert_eq!(hom_rep(&x, &y).unwrap().len(), 0);
        // the reverse direction has a free component at each vertex but
        // the square forces nothing: dim Hom(Y, X) = 0 too (disjoint
        // supports), while Hom(X,X) contains the identity
        assert_eq!(hom_rep(&y, &x).unwrap().len(), 0);
        assert_eq!(hom_rep(&x, &x).unwrap().len(), 1);
    }

    #[test]
    fn hom_rep_identity_arrow() {
        let d = a2_vect(1);
        // X = (k → k, identity), Y = (0 → k): Hom(X,Y) = 0 (square kills
        // f_1), Hom(Y,X) = k
        let x = arrow_rep(&d, 1, 1, Matrix::identity(F5, 1));
        let y = arrow_rep(&d, 0, 1, Matrix::zero(F5, 1, 0));
        assert_eq!(hom_rep(&x, &y).unwrap().len(), 0);
        assert_eq!(hom_rep(&y, &x).unwrap().len(), 1);
        let idm = RepMorphism::identity(&x);
        assert!(RepMorphism::new(
            x.clone(),
            x.clone(),
            idm.components.iter().map(|c| c.matrix.clone()).collect()
        )
        .is_ok());
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let d = a2_vect(2);
        let x = arrow_rep(&d, 1, 2, Matrix::from_i64(F5, &[&[1, 0], &[0, 1]]));
        let idm = RepMorphism::identity(&x);
        let (k, _) = idm.kernel().unwrap();
        assert_eq!(k.dims(), vec![0, 0]);
        let z = RepMorphism::zero(x.clone(), x.clone());
        let (k, incl) = z.kernel().unwrap();
        assert_eq!(k.dims(), x.dims());
        assert!(incl.components.iter().all(|c| c.matrix.rank() == c.source.dim));
        let (c, _) = z.cokernel().unwrap();
        assert_eq!(c.dims(), x.dims());
    }

    #[test]
    fn kernel_cokernel_of_surjection() {
        let d = a2_vect(1);
        // f : (k² → k², id) → (k → k, id) by summing coordinates at both
        // vertices
        let x = arrow_rep(&d, 2, 2, Matrix::identity(F5, 2));
        let y = arrow_rep(&d, 1, 1, Matrix::identity(F5, 1));
        let m = Matrix::from_i64(F5, &[&[1, 1]]);
        let f = RepMorphism::new(x.clone(), y.clone(), vec![m.clone(), m]).unwrap();
        let (k, incl) = f.kernel().unwrap();
        assert_eq!(k.dims(), vec![1, 1]);
        let (c, _) = f.cokernel().unwrap();
        assert_eq!(c.dims(), vec![0, 0]);
        // 0 → K → X → Y exact at K and X
        let zk = RepMorphism::zero(Representation::zero(d), k.clone());
        assert!(is_exact_at(&zk, &incl).unwrap());
        assert!(is_exact_at(&incl, &f).unwrap());
    }

    #[test]
    fn split_exact_sequence_from_direct_sum() {
        let d = a2_vect(2);
        let x = arrow_rep(&d, 1, 2, Matrix::from_i64(F5, &[&[1, 0], &[0, 1]]));
        let y = arrow_rep(&d, 2, 1, Matrix::from_i64(F5, &[&[1, 0, 0, 1]]));
        let (sum, incls, projs) = Representation::direct_sum(&[&x, &y]).unwrap();
        assert_eq!(sum.dims(), vec![3, 3]);
        assert!(sum.validate().is_ok());
        assert!(is_exact_at(&incls[0], &projs[1]).unwrap());
        // projection ∘ inclusion = identity on each summand
        let round = projs[0].compose(&incls[0]).unwrap();
        assert_eq!(round.components[0].matrix, Matrix::identity(F5, 1));
        assert_eq!(round.components[1].matrix, Matrix::identity(F5, 2));
    }

    #[test]
    fn broken_middle_term_pinpointed() {
        let d = a2_vect(1);
        let x = arrow_rep(&d, 1, 1, Matrix::identity(F5, 1));
        let z = Representation::zero(d.clone());
        let f = RepMorphism::zero(z.clone(), x.clone());
        let g = RepMorphism::zero(x.clone(), z);
        // 0 → X → 0 is not exact at either vertex of X
        assert_eq!(exactness_failures(&f, &g).unwrap(), vec![0, 1]);
    }

    #[test]
    fn dualize_swaps_hom_dimensions() {
        let d = a2_vect(2);
        let x = arrow_rep(&d, 1, 2, Matrix::from_i64(F5, &[&[1, 0], &[0, 1]]));
        let y = arrow_rep(&d, 2, 2, Matrix::from_i64(F5, &[&[1, 0, 0, 1], &[1, 0, 0, 1]]));
        let dx = x.dualize().unwrap();
        let dy = y.dualize().unwrap();
        assert!(dx.validate().is_ok());
        assert_eq!(dx.dims(), x.dims());
        assert_eq!(
            hom_rep(&x, &y).unwrap().len(),
            hom_rep(&dy, &dx).unwrap().len()
        );
        assert_eq!(
            hom_rep(&y, &x).unwrap().len(),
            hom_rep(&dx, &dy).unwrap().len()
        );
        // a morphism dualizes to a morphism (squares verified by `new`)
        if let Some(f) = hom_rep(&x, &y).unwrap().into_iter().next() {
            f.dualize().unwrap();
        }
    }

    #[test]
    fn zero_rep_dualizes_to_zero() {
        let d = a2_vect(2);
        let z = Representation::zero(d);
        let dz = z.dualize().unwrap();
        assert_eq!(dz.total_dim(), 0);
    }
}
