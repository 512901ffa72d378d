//! Induction `σ_!` and coinduction `σ_*` from a single vertex, with the
//! adjunctions `Hom(σ_!M, X) ≅ Hom(M, X_i)` and `Hom(X, σ_*M) ≅ Hom(X_i, M)`
//! constructed in both directions and verified on bases.
//!
//! Path functors are folded arrow by arrow, so `Ψ_{pb}M` is literally the
//! module obtained by applying `Ψ_b` to `Ψ_pM`; the identifications in the
//! structure maps below are identities, not materialized isomorphisms.

use crate::bimodule::FunctorImage;
use crate::diagram::{Diagram, Path};
use crate::matrix::Matrix;
use crate::module::{hom_space, Module, ModuleMorphism};
use crate::rep::{hom_rep, RepMorphism, Representation};
use crate::{Error, Result};
use std::sync::Arc;

/// An induced or coinduced representation together with its path-summand
/// decomposition at every vertex.
#[derive(Clone, Debug)]
pub struct PathSum {
    pub rep: Representation,
    /// Base vertex `i` and inducing module `M`.
    pub vertex: usize,
    pub module: Module,
    /// Per vertex: the contributing paths in canonical order.
    pub paths: Vec<Vec<Path>>,
    /// Per vertex and path: the per-step functor image chain.
    pub path_images: Vec<Vec<Vec<FunctorImage>>>,
    /// Inclusion of each path summand into the vertex component.
    pub incls: Vec<Vec<ModuleMorphism>>,
    /// Projection onto each path summand.
    pub projs: Vec<Vec<ModuleMorphism>>,
}

impl PathSum {
    fn path_index(&self, vertex: usize, path: &Path) -> Result<usize> {
        self.paths[vertex]
            .iter()
            .position(|p| p == path)
            .ok_or_else(|| Error::Internal("missing path summand".into()))
    }
}

fn summed_component(
    algebra: Arc<crate::algebra::Algebra>,
    parts: &[Module],
) -> Result<(Module, Vec<ModuleMorphism>, Vec<ModuleMorphism>)> {
    if parts.is_empty() {
        return Ok((Module::zero(algebra), Vec::new(), Vec::new()));
    }
    let refs: Vec<&Module> = parts.iter().collect();
    Module::direct_sum(&refs)
}

/// `σ_! M` for `M` over `A_i`: the component at `j` is `⊕_{p : i→j} Ψ_p M`,
/// and the structure map for an arrow `b` embeds `Ψ_b(Ψ_p M)` into the
/// summand of the extended path `pb`.
pub fn sigma_shriek(diagram: &Arc<Diagram>, vertex: usize, m: &Module) -> Result<PathSum> {
    if m.algebra != diagram.algebras[vertex] {
        return Err(Error::AlgebraMismatch);
    }
    let nv = diagram.quiver.num_vertices;
    let mut paths: Vec<Vec<Path>> = vec![Vec::new(); nv];
    let mut path_images: Vec<Vec<Vec<FunctorImage>>> = vec![Vec::new(); nv];
    let mut path_modules: Vec<Vec<Module>> = vec![Vec::new(); nv];
    for p in diagram.quiver.paths_from(vertex) {
        let images = diagram.psi_on_path(&p, m)?;
        let module = Diagram::psi_path_module(&images, m).clone();
        let j = p.target;
        paths[j].push(p);
        path_images[j].push(images);
        path_modules[j].push(module);
    }
    let mut modules = Vec::with_capacity(nv);
    let mut incls = Vec::with_capacity(nv);
    let mut projs = Vec::with_capacity(nv);
    for j in 0..nv {
        let (sum, inc, prj) = summed_component(diagram.algebras[j].clone(), &path_modules[j])?;
        modules.push(sum);
        incls.push(inc);
        projs.push(prj);
    }
    let mut psi_matrices = Vec::with_capacity(diagram.quiver.arrows.len());
    for (b, arr) in diagram.quiver.arrows.iter().enumerate() {
        let (j, j2) = (arr.source, arr.target);
        let t_sum = crate::bimodule::tensor_over(&modules[j], &diagram.bimodules[b])?;
        let mut mat = Matrix::zero(diagram.field(), modules[j2].dim, t_sum.module.dim);
        for (idx, p) in paths[j].iter().enumerate() {
            let mut extended = p.clone();
            extended.arrows.push(b);
            extended.target = j2;
            let eidx = paths[j2]
                .iter()
                .position(|q| q == &extended)
                .ok_or_else(|| Error::Internal("extended path not enumerated".into()))?;
            let pb_last = path_images[j2][eidx]
                .last()
                .ok_or_else(|| Error::Internal("extended path has no images".into()))?;
            let moved = diagram.psi(b).map(
                &FunctorImage::Tensor(t_sum.clone()),
                pb_last,
                &projs[j][idx],
            )?;
            let term = incls[j2][eidx].matrix.mul(&moved.matrix)?;
            mat = mat.add(&term)?;
        }
        psi_matrices.push(mat);
    }
    let rep = Representation::from_psi(diagram.clone(), modules, psi_matrices)?;
    let ps = PathSum {
        rep,
        vertex,
        module: m.clone(),
        paths,
        path_images,
        incls,
        projs,
    };
    Ok(ps)
}

/// `σ_* M` for `M` over `A_i`: the component at `j` is `⊕_{p : j→i} Φ_p M`,
/// and the structure map for an arrow `b : j → j'` projects onto the
/// summands of paths that start with `b`.
pub fn sigma_star(diagram: &Arc<Diagram>, vertex: usize, m: &Module) -> Result<PathSum> {
    if m.algebra != diagram.algebras[vertex] {
        return Err(Error::AlgebraMismatch);
    }
    let nv = diagram.quiver.num_vertices;
    let mut paths: Vec<Vec<Path>> = vec![Vec::new(); nv];
    let mut path_images: Vec<Vec<Vec<FunctorImage>>> = vec![Vec::new(); nv];
    let mut path_modules: Vec<Vec<Module>> = vec![Vec::new(); nv];
    for j in 0..nv {
        for p in diagram.quiver.paths_from(j) {
            if p.target != vertex {
                continue;
            }
            let images = diagram.phi_on_path(&p, m)?;
            let module = Diagram::phi_path_module(&images, m).clone();
            paths[j].push(p);
            path_images[j].push(images);
            path_modules[j].push(module);
        }
    }
    let mut modules = Vec::with_capacity(nv);
    let mut incls = Vec::with_capacity(nv);
    let mut projs = Vec::with_capacity(nv);
    for j in 0..nv {
        let (sum, inc, prj) = summed_component(diagram.algebras[j].clone(), &path_modules[j])?;
        modules.push(sum);
        incls.push(inc);
        projs.push(prj);
    }
    let mut phi_matrices = Vec::with_capacity(diagram.quiver.arrows.len());
    for (b, arr) in diagram.quiver.arrows.iter().enumerate() {
        let (j, j2) = (arr.source, arr.target);
        let h_sum = crate::bimodule::hom_from(&diagram.bimodules[b], &modules[j2])?;
        let mut mat = Matrix::zero(diagram.field(), h_sum.module.dim, modules[j].dim);
        for (idx2, p2) in paths[j2].iter().enumerate() {
            // the path b·p2 from j contributes through Φ_b of the p2 summand
            let mut extended = Path {
                source: j,
                target: vertex,
                arrows: Vec::with_capacity(p2.len() + 1),
            };
            extended.arrows.push(b);
            extended.arrows.extend_from_slice(&p2.arrows);
            let eidx = paths[j]
                .iter()
                .position(|q| q == &extended)
                .ok_or_else(|| Error::Internal("prefixed path not enumerated".into()))?;
            let bp_last = path_images[j][eidx]
                .last()
                .ok_or_else(|| Error::Internal("prefixed path has no images".into()))?;
            let moved = diagram.phi(b).map(
                bp_last,
                &FunctorImage::Hom(h_sum.clone()),
                &incls[j2][idx2],
            )?;
            let term = moved.matrix.mul(&projs[j][eidx].matrix)?;
            mat = mat.add(&term)?;
        }
        phi_matrices.push(mat);
    }
    let rep = Representation::from_phi(diagram.clone(), modules, phi_matrices)?;
    Ok(PathSum {
        rep,
        vertex,
        module: m.clone(),
        paths,
        path_images,
        incls,
        projs,
    })
}

/// The adjunction unit direction: restrict `F : σ_!M → X` to the trivial
/// path summand, giving `M → X_i`.
pub fn shriek_restrict(sigma: &PathSum, f: &RepMorphism) -> Result<ModuleMorphism> {
    let i = sigma.vertex;
    let idx = sigma.path_index(i, &Path::trivial(i))?;
    f.components[i].compose(&sigma.incls[i][idx])
}

/// The adjunction counit direction: assemble `σ_!M → X` from `g : M → X_i`
/// by pushing `g` forward along every path.
pub fn shriek_assemble(sigma: &PathSum, x: &Representation, g: &ModuleMorphism) -> Result<RepMorphism> {
    let diagram = &x.diagram;
    let nv = diagram.quiver.num_vertices;
    let mut components = Vec::with_capacity(nv);
    for j in 0..nv {
        let mut mat = Matrix::zero(
            diagram.field(),
            x.modules[j].dim,
            sigma.rep.modules[j].dim,
        );
        for (idx, p) in sigma.paths[j].iter().enumerate() {
            let mut cur = g.clone();
            for (step, &a) in p.arrows.iter().enumerate() {
                let pushed = diagram.psi(a).map(
                    &sigma.path_images[j][idx][step],
                    &FunctorImage::Tensor(x.psi_images[a].clone()),
                    &cur,
                )?;
                cur = x.psi_maps[a].compose(&pushed)?;
            }
            mat = mat.add(&cur.matrix.mul(&sigma.projs[j][idx].matrix)?)?;
        }
        components.push(mat);
    }
    RepMorphism::new(sigma.rep.clone(), x.clone(), components)
}

/// Restrict `F : X → σ_*M` to the trivial path summand, giving `X_i → M`.
pub fn star_restrict(sigma: &PathSum, f: &RepMorphism) -> Result<ModuleMorphism> {
    let i = sigma.vertex;
    let idx = sigma.path_index(i, &Path::trivial(i))?;
    sigma.projs[i][idx].compose(&f.components[i])
}

/// Assemble `X → σ_*M` from `g : X_i → M` by pulling `g` back along every
/// path.
pub fn star_assemble(sigma: &PathSum, x: &Representation, g: &ModuleMorphism) -> Result<RepMorphism> {
    let diagram = &x.diagram;
    let nv = diagram.quiver.num_vertices;
    let mut components = Vec::with_capacity(nv);
    for j in 0..nv {
        let mut mat = Matrix::zero(
            diagram.field(),
            sigma.rep.modules[j].dim,
            x.modules[j].dim,
        );
        for (idx, p) in sigma.paths[j].iter().enumerate() {
            let mut cur = g.clone();
            for (step, &a) in p.arrows.iter().rev().enumerate() {
                let pulled = diagram.phi(a).map(
                    &FunctorImage::Hom(x.phi_images[a].clone()),
                    &sigma.path_images[j][idx][step],
                    &cur,
                )?;
                cur = pulled.compose(&x.phi_maps[a])?;
            }
            mat = mat.add(&sigma.incls[j][idx].matrix.mul(&cur.matrix)?)?;
        }
        components.push(mat);
    }
    RepMorphism::new(x.clone(), sigma.rep.clone(), components)
}

/// Verify `Hom(σ_!M, X) ≅ Hom(M, X_i)` by constructing both directions and
/// checking they are mutually inverse on the two bases.
pub fn adjunction_check_shriek(
    diagram: &Arc<Diagram>,
    vertex: usize,
    m: &Module,
    x: &Representation,
) -> Result<bool> {
    let sigma = sigma_shriek(diagram, vertex, m)?;
    let rep_basis = hom_rep(&sigma.rep, x)?;
    let mod_basis = hom_space(m, &x.modules[vertex])?;
    if rep_basis.len() != mod_basis.len() {
        return Ok(false);
    }
    for g in &mod_basis {
        let assembled = shriek_assemble(&sigma, x, g)?;
        if shriek_restrict(&sigma, &assembled)?.matrix != g.matrix {
            return Ok(false);
        }
    }
    for f in &rep_basis {
        let restricted = shriek_restrict(&sigma, f)?;
        let back = shriek_assemble(&sigma, x, &restricted)?;
        if back
            .components
            .iter()
            .zip(&f.components)
            .any(|(a, b)| a.matrix != b.matrix)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verify `Hom(X, σ_*M) ≅ Hom(X_i, M)` likewise.
pub fn adjunction_check_star(
    diagram: &Arc<Diagram>,
    vertex: usize,
    m: &Module,
    x: &Representation,
) -> Result<bool> {
    let sigma = sigma_star(diagram, vertex, m)?;
    let rep_basis = hom_rep(x, &sigma.rep)?;
    let mod_basis = hom_space(&x.modules[vertex], m)?;
    if rep_basis.len() != mod_basis.len() {
        return Ok(false);
    }
    for g in &mod_basis {
        let assembled = star_assemble(&sigma, x, g)?;
        if star_restrict(&sigma, &assembled)?.matrix != g.matrix {
            return Ok(false);
        }
    }
    for f in &rep_basis {
        let restricted = star_restrict(&sigma, f)?;
        let back = star_assemble(&sigma, x, &restricted)?;
        if back
            .components
            .iter()
            .zip(&f.components)
            .any(|(a, b)| a.matrix != b.matrix)
        {
            return Ok(false);
        }
    }
    Ok(true)
}
