//! JSON document and report formats for the command-line front-end.
//!
//! Documents describe a diagram (field, algebras, bimodules, quiver,
//! representations) and are untrusted: every algebra, bimodule, module and
//! representation law is re-verified when the document is built into core
//! objects. Reports are emitted with lexicographically sorted keys so that
//! a fixed (document, seed) pair yields byte-identical output; rationals
//! travel as `"num/den"` strings and prime-field elements as integers.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::diagram::{Arrow, Diagram, Quiver};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::module::Module;
use crate::rep::Representation;
use crate::{Error, Result};
use num::rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

pub const DOCUMENT_SCHEMA: &str = "quivrep.document/1";
pub const REPORT_SCHEMA: &str = "quivrep.report/1";

/// A field element in transit: integers for 𝔽_p, `"num/den"` strings for ℚ.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum ScalarDoc {
    Int(i64),
    Ratio(String),
}

pub fn scalar_to_doc(s: &Scalar) -> ScalarDoc {
    match s {
        Scalar::Fp { val, .. } => ScalarDoc::Int(*val as i64),
        Scalar::Rat(r) => ScalarDoc::Ratio(format!("{}/{}", r.numer(), r.denom())),
    }
}

pub fn scalar_from_doc(field: Field, d: &ScalarDoc) -> Result<Scalar> {
    match (field, d) {
        (_, ScalarDoc::Int(n)) => Ok(field.from_i64(*n)),
        (Field::Rationals, ScalarDoc::Ratio(s)) => {
            let r = BigRational::from_str(s)
                .map_err(|e| Error::Validation(vec![format!("bad rational {s:?}: {e}")]))?;
            Ok(Scalar::Rat(r))
        }
        (Field::Prime(_), ScalarDoc::Ratio(s)) => Err(Error::Validation(vec![format!(
            "rational literal {s:?} not allowed over a prime field"
        )])),
    }
}

pub type MatrixDoc = Vec<Vec<ScalarDoc>>;

pub fn matrix_to_doc(m: &Matrix) -> MatrixDoc {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| scalar_to_doc(m.get(r, c))).collect())
        .collect()
}

pub fn matrix_from_doc(field: Field, rows: usize, cols: usize, d: &MatrixDoc) -> Result<Matrix> {
    if d.len() != rows || d.iter().any(|r| r.len() != cols) {
        return Err(Error::Validation(vec![format!(
            "matrix has wrong shape: expected {rows}×{cols}"
        )]));
    }
    let mut m = Matrix::zero(field, rows, cols);
    for (r, row) in d.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            m.set(r, c, scalar_from_doc(field, e)?);
        }
    }
    Ok(m)
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    Q,
    Fp { p: u64 },
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldSpec::Q => Ok(Field::Rationals),
            FieldSpec::Fp { p } => {
                if crate::field::is_prime(*p) {
                    Ok(Field::Prime(*p))
                } else {
                    Err(Error::Validation(vec![format!("{p} is not prime")]))
                }
            }
        }
    }

    pub fn from_field(field: Field) -> FieldSpec {
        match field {
            Field::Rationals => FieldSpec::Q,
            Field::Prime(p) => FieldSpec::Fp { p },
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AlgebraDoc {
    pub label: String,
    pub dim: usize,
    /// Sparse structure constants: `b_i b_j = Σ_k value · b_k` per `(i, j, k, value)`.
    pub structure: Vec<(usize, usize, usize, ScalarDoc)>,
    pub unit: Vec<ScalarDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BimoduleDoc {
    pub label: String,
    pub left: String,
    pub right: String,
    pub dim: usize,
    pub left_action: Vec<MatrixDoc>,
    pub right_action: Vec<MatrixDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ArrowDoc {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub bimodule: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct QuiverDoc {
    pub vertices: usize,
    pub vertex_algebras: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ModuleDoc {
    pub dim: usize,
    pub action: Vec<MatrixDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RepresentationDoc {
    pub label: String,
    /// `"psi"`: maps are `Ψ_a X_{s(a)} → X_{t(a)}`; `"phi"`: `X_{s(a)} → Φ_a X_{t(a)}`.
    pub form: String,
    pub modules: Vec<ModuleDoc>,
    pub maps: Vec<MatrixDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DiagramDocument {
    pub schema: String,
    pub field: FieldSpec,
    pub algebras: Vec<AlgebraDoc>,
    pub bimodules: Vec<BimoduleDoc>,
    pub quiver: QuiverDoc,
    #[serde(default)]
    pub representations: Vec<RepresentationDoc>,
}

pub fn parse_document(text: &str) -> Result<DiagramDocument> {
    let doc: DiagramDocument = serde_json::from_str(text)
        .map_err(|e| Error::Validation(vec![format!("document parse error: {e}")]))?;
    if doc.schema != DOCUMENT_SCHEMA {
        return Err(Error::Validation(vec![format!(
            "unsupported document schema {:?} (expected {DOCUMENT_SCHEMA:?})",
            doc.schema
        )]));
    }
    Ok(doc)
}

/// A document elaborated into validated core objects.
#[derive(Clone, Debug)]
pub struct BuiltDocument {
    pub field: Field,
    pub diagram: Arc<Diagram>,
    pub representations: Vec<(String, Representation)>,
}

impl BuiltDocument {
    pub fn representation(&self, label: &str) -> Result<&Representation> {
        self.representations
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, r)| r)
            .ok_or_else(|| Error::Validation(vec![format!("no representation labeled {label:?}")]))
    }
}

pub fn build_document(doc: &DiagramDocument) -> Result<BuiltDocument> {
    let field = doc.field.to_field()?;
    let mut algebras: BTreeMap<&str, Arc<Algebra>> = BTreeMap::new();
    for a in &doc.algebras {
        if algebras.contains_key(a.label.as_str()) {
            return Err(Error::Validation(vec![format!(
                "duplicate algebra label {:?}",
                a.label
            )]));
        }
        let d = a.dim;
        let mut structure = vec![field.zero(); d * d * d];
        for (i, j, k, v) in &a.structure {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::Validation(vec![format!(
                    "algebra {:?}: structure index ({i},{j},{k}) out of range",
                    a.label
                )]));
            }
            structure[(i * d + j) * d + k] = scalar_from_doc(field, v)?;
        }
        if a.unit.len() != d {
            return Err(Error::Validation(vec![format!(
                "algebra {:?}: unit vector has length {} (expected {d})",
                a.label,
                a.unit.len()
            )]));
        }
        let mut unit = Matrix::zero(field, d, 1);
        for (i, v) in a.unit.iter().enumerate() {
            unit.set(i, 0, scalar_from_doc(field, v)?);
        }
        let labels = (0..d).map(|i| format!("{}#{i}", a.label)).collect();
        let alg = Algebra::new(field, labels, structure, unit).map_err(|e| {
            Error::Validation(vec![format!("algebra {:?} invalid: {e}", a.label)])
        })?;
        algebras.insert(&a.label, Arc::new(alg));
    }
    let mut bimodules: BTreeMap<&str, Arc<Bimodule>> = BTreeMap::new();
    for b in &doc.bimodules {
        if bimodules.contains_key(b.label.as_str()) {
            return Err(Error::Validation(vec![format!(
                "duplicate bimodule label {:?}",
                b.label
            )]));
        }
        let left = algebras.get(b.left.as_str()).ok_or_else(|| {
            Error::Validation(vec![format!(
                "bimodule {:?}: unknown algebra {:?}",
                b.label, b.left
            )])
        })?;
        let right = algebras.get(b.right.as_str()).ok_or_else(|| {
            Error::Validation(vec![format!(
                "bimodule {:?}: unknown algebra {:?}",
                b.label, b.right
            )])
        })?;
        let decode_actions = |docs: &[MatrixDoc], count: usize| -> Result<Vec<Matrix>> {
            if docs.len() != count {
                return Err(Error::Validation(vec![format!(
                    "bimodule {:?}: expected {count} action matrices, got {}",
                    b.label,
                    docs.len()
                )]));
            }
            docs.iter()
                .map(|m| matrix_from_doc(field, b.dim, b.dim, m))
                .collect()
        };
        let bim = Bimodule::new(
            left.clone(),
            right.clone(),
            decode_actions(&b.left_action, left.dim)?,
            decode_actions(&b.right_action, right.dim)?,
        )
        .map_err(|e| Error::Validation(vec![format!("bimodule {:?} invalid: {e}", b.label)]))?;
        bimodules.insert(&b.label, Arc::new(bim));
    }
    let q = &doc.quiver;
    if q.vertex_algebras.len() != q.vertices {
        return Err(Error::Validation(vec![
            "one vertex algebra per vertex required".into(),
        ]));
    }
    let vertex_algebras = q
        .vertex_algebras
        .iter()
        .map(|l| {
            algebras.get(l.as_str()).cloned().ok_or_else(|| {
                Error::Validation(vec![format!("unknown vertex algebra {l:?}")])
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let arrow_bimodules = q
        .arrows
        .iter()
        .map(|a| {
            bimodules.get(a.bimodule.as_str()).cloned().ok_or_else(|| {
                Error::Validation(vec![format!(
                    "arrow {:?}: unknown bimodule {:?}",
                    a.label, a.bimodule
                )])
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let quiver = Quiver::new(
        q.vertices,
        q.arrows
            .iter()
            .map(|a| Arrow {
                label: a.label.clone(),
                source: a.source,
                target: a.target,
            })
            .collect(),
    )?;
    let diagram = Arc::new(Diagram::new(quiver, vertex_algebras, arrow_bimodules)?);
    let mut representations = Vec::new();
    for r in &doc.representations {
        if representations.iter().any(|(l, _)| l == &r.label) {
            return Err(Error::Validation(vec![format!(
                "duplicate representation label {:?}",
                r.label
            )]));
        }
        if r.modules.len() != q.vertices || r.maps.len() != q.arrows.len() {
            return Err(Error::Validation(vec![format!(
                "representation {:?}: wrong number of modules or maps",
                r.label
            )]));
        }
        let modules = r
            .modules
            .iter()
            .enumerate()
            .map(|(v, m)| {
                let alg = diagram.algebras[v].clone();
                if m.action.len() != alg.dim {
                    return Err(Error::Validation(vec![format!(
                        "representation {:?}: vertex {v} needs {} action matrices",
                        r.label, alg.dim
                    )]));
                }
                let action = m
                    .action
                    .iter()
                    .map(|a| matrix_from_doc(field, m.dim, m.dim, a))
                    .collect::<Result<Vec<_>>>()?;
                Module::new(alg, action).map_err(|e| {
                    Error::Validation(vec![format!(
                        "representation {:?}: vertex {v} module invalid: {e}",
                        r.label
                    )])
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rep = match r.form.as_str() {
            "psi" => {
                let maps = q
                    .arrows
                    .iter()
                    .zip(&r.maps)
                    .map(|(a, m)| {
                        let rows = modules[a.target].dim;
                        let cols = modules[a.source].dim * diagram.bimodules
                            [diagram.quiver.arrow_index(&a.label).unwrap()]
                        .dim;
                        matrix_from_doc(field, rows, cols, m)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Representation::from_psi(diagram.clone(), modules, maps)?
            }
            "phi" => {
                let maps = q
                    .arrows
                    .iter()
                    .zip(&r.maps)
                    .map(|(a, m)| {
                        let rows = modules[a.target].dim
                            * diagram.bimodules[diagram.quiver.arrow_index(&a.label).unwrap()].dim;
                        let cols = modules[a.source].dim;
                        matrix_from_doc(field, rows, cols, m)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Representation::from_phi(diagram.clone(), modules, maps)?
            }
            other => {
                return Err(Error::Validation(vec![format!(
                    "representation {:?}: form must be \"psi\" or \"phi\", got {other:?}",
                    r.label
                )]))
            }
        };
        rep.validate()?;
        representations.push((r.label.clone(), rep));
    }
    Ok(BuiltDocument {
        field,
        diagram,
        representations,
    })
}

/// Encode a diagram and a set of labeled representations back into a
/// document (Ψ-form maps). Inverse of [`build_document`] up to labels.
pub fn encode_document(
    diagram: &Arc<Diagram>,
    representations: &[(String, &Representation)],
) -> DiagramDocument {
    let field = diagram.field();
    let mut algebra_docs: Vec<AlgebraDoc> = Vec::new();
    let mut algebra_labels: Vec<(usize, String)> = Vec::new(); // index into diagram.algebras
    for (v, alg) in diagram.algebras.iter().enumerate() {
        if let Some(prev) = diagram.algebras[..v]
            .iter()
            .position(|other| Arc::ptr_eq(other, alg) || **other == **alg)
        {
            let label = algebra_labels[prev].1.clone();
            algebra_labels.push((v, label));
            continue;
        }
        let label = format!("A{}", algebra_docs.len());
        let mut structure = Vec::new();
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                for k in 0..alg.dim {
                    let c = alg.structure_constant(i, j, k);
                    if !c.is_zero() {
                        structure.push((i, j, k, scalar_to_doc(c)));
                    }
                }
            }
        }
        algebra_docs.push(AlgebraDoc {
            label: label.clone(),
            dim: alg.dim,
            structure,
            unit: (0..alg.dim).map(|i| scalar_to_doc(alg.unit.get(i, 0))).collect(),
        });
        algebra_labels.push((v, label));
    }
    let bimodule_docs: Vec<BimoduleDoc> = diagram
        .bimodules
        .iter()
        .enumerate()
        .map(|(a, bim)| {
            let arr = &diagram.quiver.arrows[a];
            BimoduleDoc {
                label: format!("N_{}", arr.label),
                left: algebra_labels[arr.source].1.clone(),
                right: algebra_labels[arr.target].1.clone(),
                dim: bim.dim,
                left_action: bim.left_action.iter().map(matrix_to_doc).collect(),
                right_action: bim.right_action.iter().map(matrix_to_doc).collect(),
            }
        })
        .collect();
    let quiver = QuiverDoc {
        vertices: diagram.quiver.num_vertices,
        vertex_algebras: algebra_labels.iter().map(|(_, l)| l.clone()).collect(),
        arrows: diagram
            .quiver
            .arrows
            .iter()
            .map(|arr| ArrowDoc {
                label: arr.label.clone(),
                source: arr.source,
                target: arr.target,
                bimodule: format!("N_{}", arr.label),
            })
            .collect(),
    };
    let representations = representations
        .iter()
        .map(|(label, rep)| RepresentationDoc {
            label: label.clone(),
            form: "psi".into(),
            modules: rep
                .modules
                .iter()
                .map(|m| ModuleDoc {
                    dim: m.dim,
                    action: m.action.iter().map(matrix_to_doc).collect(),
                })
                .collect(),
            maps: rep.psi_maps.iter().map(|m| matrix_to_doc(&m.matrix)).collect(),
        })
        .collect();
    DiagramDocument {
        schema: DOCUMENT_SCHEMA.into(),
        field: FieldSpec::from_field(field),
        algebras: algebra_docs,
        bimodules: bimodule_docs,
        quiver,
        representations,
    }
}

/// Serialize any `Serialize` value with lexicographically sorted keys and
/// a trailing newline — the canonical byte format for documents and reports.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    // round-trip through Value: serde_json's map is a BTreeMap, so object
    // keys come out sorted regardless of struct field order
    let v = serde_json::to_value(value)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    let mut s = serde_json::to_string_pretty(&v)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

/// Machine-readable run report. Deterministic for fixed inputs: emit via
/// [`canonical_json`].
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Report {
    pub schema: String,
    pub command: Vec<String>,
    /// Input name → SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub status: String,
    pub results: serde_json::Value,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report {
            schema: REPORT_SCHEMA.into(),
            command,
            inputs: BTreeMap::new(),
            seed: None,
            status: "ok".into(),
            results: serde_json::Value::Null,
        }
    }

    pub fn with_input(mut self, name: &str, bytes: &[u8]) -> Report {
        self.inputs.insert(name.into(), sha256_hex(bytes));
        self
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        canonical_json(self)
    }
}
