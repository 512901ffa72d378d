//! Acyclic quivers decorated with vertex algebras and arrow bimodules.
//!
//! An arrow `a : i → j` carries an `(A_i, A_j)`-bimodule `N_a`, inducing the
//! adjoint pair `Ψ_a = -⊗N_a : Mod-A_i → Mod-A_j` and `Φ_a = Hom(N_a, -) :
//! Mod-A_j → Mod-A_i`. Path functors are built by folding arrow functors
//! one step at a time, so composites along paths are equal on the nose and
//! no associativity identifications are needed downstream.

use crate::algebra::Algebra;
use crate::bimodule::{Bimodule, BimoduleFunctor, FunctorImage};
use crate::field::Field;
use crate::module::{Module, ModuleMorphism};
use crate::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite acyclic quiver. Vertices are `0..num_vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub num_vertices: usize,
    pub arrows: Vec<Arrow>,
}

/// A directed path, stored as the arrow indices in traversal order.
/// The empty list is the trivial path at `source == target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Path {
        Path {
            source: vertex,
            target: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn label(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", self.source)
        } else {
            self.arrows
                .iter()
                .map(|&a| quiver.arrows[a].label.as_str())
                .collect::<Vec<_>>()
                .join("·")
        }
    }
}

impl Quiver {
    pub fn new(num_vertices: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut violations = Vec::new();
        for (idx, a) in arrows.iter().enumerate() {
            if a.source >= num_vertices || a.target >= num_vertices {
                violations.push(format!("arrow {idx} (`{}`) has an endpoint out of range", a.label));
            }
            if arrows[..idx].iter().any(|b| b.label == a.label) {
                violations.push(format!("duplicate arrow label `{}`", a.label));
            }
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        let q = Quiver {
            num_vertices,
            arrows,
        };
        q.topological_order()?;
        Ok(q)
    }

    /// Deterministic topological order (smallest vertex index first among
    /// the ready vertices); errors on a directed cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.num_vertices];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut order = Vec::with_capacity(self.num_vertices);
        let mut done = vec![false; self.num_vertices];
        while order.len() < self.num_vertices {
            let next = (0..self.num_vertices).find(|&v| !done[v] && indeg[v] == 0);
            match next {
                Some(v) => {
                    done[v] = true;
                    order.push(v);
                    for a in &self.arrows {
                        if a.source == v {
                            indeg[a.target] -= 1;
                        }
                    }
                }
                None => return Err(Error::CyclicQuiver),
            }
        }
        Ok(order)
    }

    pub fn arrows_from(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].source == v)
            .collect()
    }

    pub fn arrows_into(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].target == v)
            .collect()
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// All paths starting at `v` (including the trivial one), ordered by
    /// length and then lexicographically by arrow-index sequence.
    pub fn paths_from(&self, v: usize) -> Vec<Path> {
        let mut all = Vec::new();
        let mut frontier = vec![Path::trivial(v)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_from(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path {
                        source: v,
                        target: self.arrows[a].target,
                        arrows,
                    });
                }
            }
            all.append(&mut frontier);
            frontier = next;
        }
        all
    }

    /// All paths ending at `v`, same ordering as [`Quiver::paths_from`].
    pub fn paths_into(&self, v: usize) -> Vec<Path> {
        let mut paths: Vec<Path> = (0..self.num_vertices)
            .flat_map(|u| self.paths_from(u))
            .filter(|p| p.target == v)
            .collect();
        paths.sort_by(|a, b| (a.len(), &a.arrows).cmp(&(b.len(), &b.arrows)));
        paths
    }
}

/// A quiver with an algebra per vertex and a bimodule per arrow; every
/// constituent shares one ground field and all laws are verified on
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    pub quiver: Quiver,
    pub algebras: Vec<Arc<Algebra>>,
    pub bimodules: Vec<Arc<Bimodule>>,
}

impl Diagram {
    pub fn new(
        quiver: Quiver,
        algebras: Vec<Arc<Algebra>>,
        bimodules: Vec<Arc<Bimodule>>,
    ) -> Result<Diagram> {
        let mut violations = Vec::new();
        if algebras.len() != quiver.num_vertices {
            violations.push(format!(
                "{} algebras for {} vertices",
                algebras.len(),
                quiver.num_vertices
            ));
        }
        if bimodules.len() != quiver.arrows.len() {
            violations.push(format!(
                "{} bimodules for {} arrows",
                bimodules.len(),
                quiver.arrows.len()
            ));
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        let field = algebras[0].field;
        for (v, alg) in algebras.iter().enumerate() {
            if alg.field != field {
                violations.push(format!("algebra at vertex {v} is over a different field"));
            }
        }
        for (idx, bim) in bimodules.iter().enumerate() {
            let a = &quiver.arrows[idx];
            if bim.left_algebra != algebras[a.source] {
                violations.push(format!(
                    "bimodule on `{}` has the wrong left algebra",
                    a.label
                ));
            }
            if bim.right_algebra != algebras[a.target] {
                violations.push(format!(
                    "bimodule on `{}` has the wrong right algebra",
                    a.label
                ));
            }
            if let Err(Error::Validation(v)) = bim.validate() {
                violations.extend(v.into_iter().map(|s| format!("bimodule on `{}`: {s}", a.label)));
            }
        }
        if violations.is_empty() {
            Ok(Diagram {
                quiver,
                algebras,
                bimodules,
            })
        } else {
            Err(Error::Validation(violations))
        }
    }

    pub fn field(&self) -> Field {
        self.algebras[0].field
    }

    pub fn psi(&self, arrow: usize) -> BimoduleFunctor {
        BimoduleFunctor::Tensor(self.bimodules[arrow].clone())
    }

    pub fn phi(&self, arrow: usize) -> BimoduleFunctor {
        BimoduleFunctor::Hom(self.bimodules[arrow].clone())
    }

    /// The opposite diagram: reversed quiver, opposite vertex algebras,
    /// side-swapped arrow bimodules.
    pub fn opposite(&self) -> Result<Diagram> {
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| Arrow {
                label: a.label.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        let quiver = Quiver::new(self.quiver.num_vertices, arrows)?;
        let algebras = self
            .algebras
            .iter()
            .map(|a| Arc::new(a.opposite()))
            .collect();
        let bimodules = self
            .bimodules
            .iter()
            .map(|b| Arc::new(b.swap_sides()))
            .collect();
        Diagram::new(quiver, algebras, bimodules)
    }

    /// Exactness of `(Ψ_a, Φ_a)`, with splitting certificates when exact.
    pub fn exactness_certificate(&self, arrow: usize) -> Result<(bool, bool)> {
        let bim = &self.bimodules[arrow];
        Ok((bim.tensor_exact()?.is_some(), bim.hom_exact()?.is_some()))
    }

    /// Apply `Ψ` along a path to a module at `p.source`, arrow by arrow.
    /// Returns the intermediate functor images, one per arrow (empty for
    /// the trivial path).
    pub fn psi_on_path(&self, p: &Path, m: &Module) -> Result<Vec<FunctorImage>> {
        let mut images = Vec::with_capacity(p.len());
        let mut current = m.clone();
        for &a in &p.arrows {
            let img = self.psi(a).apply(&current)?;
            current = img.module().clone();
            images.push(img);
        }
        Ok(images)
    }

    /// Apply `Φ` along a path to a module at `p.target`, folding from the
    /// last arrow backwards. Images are returned in application order (so
    /// the first entry is for the last arrow of the path).
    pub fn phi_on_path(&self, p: &Path, y: &Module) -> Result<Vec<FunctorImage>> {
        let mut images = Vec::with_capacity(p.len());
        let mut current = y.clone();
        for &a in p.arrows.iter().rev() {
            let img = self.phi(a).apply(&current)?;
            current = img.module().clone();
            images.push(img);
        }
        Ok(images)
    }

    /// The module `Ψ_p M` (equal to `M` for the trivial path).
    pub fn psi_path_module<'a>(images: &'a [FunctorImage], m: &'a Module) -> &'a Module {
        images.last().map_or(m, |i| i.module())
    }

    /// The module `Φ_p Y` (equal to `Y` for the trivial path).
    pub fn phi_path_module<'a>(images: &'a [FunctorImage], y: &'a Module) -> &'a Module {
        images.last().map_or(y, |i| i.module())
    }

    /// `Ψ_p f` for `f : M → M'`, given the image chains of both modules.
    pub fn psi_path_map(
        &self,
        p: &Path,
        src_images: &[FunctorImage],
        tgt_images: &[FunctorImage],
        f: &ModuleMorphism,
    ) -> Result<ModuleMorphism> {
        let mut current = f.clone();
        for (step, &a) in p.arrows.iter().enumerate() {
            current = self
                .psi(a)
                .map(&src_images[step], &tgt_images[step], &current)?;
        }
        Ok(current)
    }

    /// `Φ_p f` for `f : Y → Y'`, given the image chains of both modules.
    pub fn phi_path_map(
        &self,
        p: &Path,
        src_images: &[FunctorImage],
        tgt_images: &[FunctorImage],
        f: &ModuleMorphism,
    ) -> Result<ModuleMorphism> {
        let mut current = f.clone();
        for (step, &a) in p.arrows.iter().rev().enumerate() {
            current = self
                .phi(a)
                .map(&src_images[step], &tgt_images[step], &current)?;
        }
        Ok(current)
    }
}
