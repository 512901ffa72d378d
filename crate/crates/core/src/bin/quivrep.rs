//! Batch front-end: parse diagram documents, run Hom/Ext/resolution
//! computations, emit machine-readable JSON reports on stdout.
//!
//! Exit codes: 0 success, 1 parse/validation error, 2 hypothesis violation
//! (an arrow functor fails the required exactness), 3 internal invariant
//! breach (including failed exactness assertions).

use clap::{Parser, Subcommand, ValueEnum};
use quivrep::diagram::Diagram;
use quivrep::doc::{
    build_document, encode_document, matrix_to_doc, parse_document,
    BuiltDocument, Report,
};
use quivrep::field::Field;
use quivrep::instances::{
    as_vect, build_chain, build_framed, euler_oracle, framed_rep, random_vect_rep, VectShape,
};
use quivrep::les::{les, LesVariant};
use quivrep::matrix::Matrix;
use quivrep::module::Module;
use quivrep::rep::{hom_rep, Representation};
use quivrep::standard::{standard_coresolution, standard_resolution};
use quivrep::algebra::Algebra;
use quivrep::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "quivrep", version, about = "Exact Hom/Ext computations for twisted quiver representations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Psi,
    Phi,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PresetName {
    Framed,
    Chain,
    Vect,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ShapeArg {
    A2,
    A3,
    Kronecker2,
    Square,
}

impl ShapeArg {
    fn shape(self) -> VectShape {
        match self {
            ShapeArg::A2 => VectShape::A2,
            ShapeArg::A3 => VectShape::A3,
            ShapeArg::Kronecker2 => VectShape::Kronecker2,
            ShapeArg::Square => VectShape::Square,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Re-verify every law in a document; exit 0 iff valid.
    Validate { doc: PathBuf },
    /// dim Hom(X, Y) with optional basis matrices.
    Hom {
        doc: PathBuf,
        x: String,
        y: String,
        #[arg(long)]
        emit_matrices: bool,
    },
    /// Ext dimensions up to a degree, with the long-exact-sequence node table.
    Ext {
        doc: PathBuf,
        x: String,
        y: String,
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Psi)]
        variant: VariantArg,
        #[arg(long)]
        emit_matrices: bool,
    },
    /// Standard resolution of X: term dimensions and exactness verdicts.
    Resolve { doc: PathBuf, x: String },
    /// Standard coresolution of X.
    Coresolve { doc: PathBuf, x: String },
    /// Assert long-exact-sequence exactness at every node up to a degree.
    LesCheck {
        doc: PathBuf,
        x: String,
        y: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Psi)]
        variant: VariantArg,
    },
    /// Compare the homological pipeline against the Euler-form oracle on
    /// random ground-field instances.
    OracleCompare {
        /// Optional document; must be a ground-field diagram. Defaults to
        /// cycling through the built-in shapes.
        doc: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "F5")]
        field: String,
    },
    /// Emit a ready-made document on stdout.
    Preset {
        name: PresetName,
        #[arg(long, default_value = "F5")]
        field: String,
        /// Tail length for the chain preset.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Quiver shape for the vect preset.
        #[arg(long, value_enum, default_value_t = ShapeArg::A2)]
        shape: ShapeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_field(s: &str) -> Result<Field, Error> {
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    if let Some(p) = s.strip_prefix('F').and_then(|t| t.parse::<u64>().ok()) {
        if quivrep::field::is_prime(p) {
            return Ok(Field::Prime(p));
        }
    }
    Err(Error::Validation(vec![format!(
        "unknown field {s:?} (expected \"Q\" or \"F<p>\" with p prime)"
    )]))
}

fn load(path: &PathBuf) -> Result<(BuiltDocument, Vec<u8>), Error> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Validation(vec![format!("cannot read {}: {e}", path.display())]))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| Error::Validation(vec![format!("not UTF-8: {e}")]))?;
    let built = build_document(&parse_document(&text)?)?;
    Ok((built, bytes))
}

fn les_variants(v: VariantArg) -> Vec<LesVariant> {
    match v {
        VariantArg::Psi => vec![LesVariant::PsiForm],
        VariantArg::Phi => vec![LesVariant::PhiForm],
        VariantArg::Both => vec![LesVariant::PsiForm, LesVariant::PhiForm],
    }
}

fn les_value(report: &quivrep::les::LesReport, emit_matrices: bool) -> serde_json::Value {
    let mut v = json!({
        "variant": report.variant.name(),
        "ext_dims": report.rep_ext_dims,
        "hom_dim": report.hom_rep_dim,
        "vertex_ext_dims": report.vertex_ext_dims,
        "arrow_ext_dims": report.arrow_ext_dims,
        "delta_ranks": report.delta_ranks,
        "nodes_exact": report.node_verdicts,
        "all_nodes_exact": report.all_nodes_exact(),
    });
    if emit_matrices {
        v["deltas"] = json!(report
            .deltas
            .iter()
            .map(matrix_to_doc)
            .collect::<Vec<_>>());
    }
    v
}

fn run(cli: Cli) -> Result<String, Error> {
    let command: Vec<String> = std::env::args().collect();
    let mut report = Report::new(command);
    match cli.cmd {
        Cmd::Validate { doc } => {
            let (built, bytes) = load(&doc)?;
            report = report.with_input("doc", &bytes);
            report.results = json!({
                "field": built.field.to_string(),
                "vertices": built.diagram.quiver.num_vertices,
                "arrows": built.diagram.quiver.arrows.len(),
                "representations": built.representations.iter().map(|(l, r)| json!({
                    "label": l,
                    "dims": r.dims(),
                })).collect::<Vec<_>>(),
                "valid": true,
            });
        }
        Cmd::Hom {
            doc,
            x,
            y,
            emit_matrices,
        } => {
            let (built, bytes) = load(&doc)?;
            report = report.with_input("doc", &bytes);
            let basis = hom_rep(built.representation(&x)?, built.representation(&y)?)?;
            let mut results = json!({ "x": x, "y": y, "dim": basis.len() });
            if emit_matrices {
                results["basis"] = json!(basis
                    .iter()
                    .map(|f| f
                        .components
                        .iter()
                        .map(|c| matrix_to_doc(&c.matrix))
                        .collect::<Vec<_>>())
                    .collect::<Vec<_>>());
            }
            report.results = results;
        }
        Cmd::Ext {
            doc,
            x,
            y,
            max_degree,
            variant,
            emit_matrices,
        } => {
            let (built, bytes) = load(&doc)?;
            report = report.with_input("doc", &bytes);
            let xr = built.representation(&x)?;
            let yr = built.representation(&y)?;
            let runs = les_variants(variant)
                .into_iter()
                .map(|v| les(v, xr, yr, max_degree))
                .collect::<Result<Vec<_>, _>>()?;
            if runs.len() == 2 && runs[0].rep_ext_dims != runs[1].rep_ext_dims {
                return Err(Error::Internal(
                    "Ψ-form and Φ-form Ext dimensions disagree".into(),
                ));
            }
            report.results = json!({
                "x": x,
                "y": y,
                "max_degree": max_degree,
                "runs": runs.iter().map(|r| les_value(r, emit_matrices)).collect::<Vec<_>>(),
            });
        }
        Cmd::Resolve { doc, x } => {
            let (built, bytes) = load(&doc)?;
            report = report.with_input("doc", &bytes);
            let res = standard_resolution(built.representation(&x)?)?;
            res.verify()?;
            report.results = json!({
                "x": x,
                "left_dims": res.left.dims(),
                "middle_dims": res.middle.dims(),
                "of_dims": res.of.dims(),
                "exact": true,
            });
        }
        Cmd::Coresolve { doc, x } => {
            let (built, bytes) = load(&doc)?;
            report = report.with_input("doc", &bytes);
            let res = standard_coresolution(built.representation(&x)?)?;
            res.verify()?;
            report.results = json!({
                "x": x,
                "of_dims": res.of.dims(),
                "middle_dims": res.middle.dims(),
                "right_dims": res.right.dims(),
                "exact": true,
            });
        }
        Cmd::LesCheck {
            doc,
            x,
            y,
            max_degree,
            variant,
        } => {
            let (built, bytes) = load(&doc)?;
            report = report.with_input("doc", &bytes);
            let xr = built.representation(&x)?;
            let yr = built.representation(&y)?;
            let mut runs = Vec::new();
            for v in les_variants(variant) {
                let r = les(v, xr, yr, max_degree)?;
                if !r.all_nodes_exact() {
                    return Err(Error::Internal(format!(
                        "long exact sequence fails exactness ({} form)",
                        r.variant.name()
                    )));
                }
                runs.push(les_value(&r, false));
            }
            report.results = json!({ "x": x, "y": y, "runs": runs });
        }
        Cmd::OracleCompare {
            doc,
            trials,
            seed,
            field,
        } => {
            report.seed = Some(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let diagrams = match &doc {
                Some(path) => {
                    let (built, bytes) = load(path)?;
                    report = report.with_input("doc", &bytes);
                    vec![as_vect(&built.diagram)?]
                }
                None => {
                    let f = parse_field(&field)?;
                    VectShape::ALL.iter().map(|s| s.diagram(f)).collect()
                }
            };
            let mut mismatches = Vec::new();
            let mut checked = 0usize;
            for t in 0..trials {
                let v = &diagrams[t % diagrams.len()];
                let x = random_vect_rep(&mut rng, v, 3)?;
                let y = random_vect_rep(&mut rng, v, 3)?;
                let (hom, ext1) = euler_oracle(v, &x, &y)?;
                let r = les(LesVariant::PsiForm, &x, &y, 2)?;
                let got = (r.rep_ext_dims[0], r.rep_ext_dims[1]);
                if got != (hom, ext1) || r.rep_ext_dims[2] != 0 {
                    mismatches.push(json!({
                        "trial": t,
                        "x_dims": x.dims(),
                        "y_dims": y.dims(),
                        "oracle": [hom, ext1],
                        "computed": r.rep_ext_dims,
                    }));
                }
                checked += 1;
            }
            report.results = json!({
                "trials": checked,
                "mismatches": mismatches,
            });
            if !report.results["mismatches"].as_array().unwrap().is_empty() {
                return Err(Error::Internal("oracle mismatch".into()));
            }
        }
        Cmd::Preset {
            name,
            field,
            n,
            shape,
            seed,
        } => {
            let f = parse_field(&field)?;
            let document = match name {
                PresetName::Framed => preset_framed(f)?,
                PresetName::Chain => preset_chain(f, n)?,
                PresetName::Vect => preset_vect(f, shape.shape(), seed)?,
            };
            // preset output is a bare document so it can be fed back to
            // the other commands directly
            return quivrep::doc::canonical_json(&document);
        }
    }
    report.to_canonical_json()
}

/// Framed preset: dual numbers with the regular framing and the simple
/// representation `(V, E) = (𝕜, k)`.
fn preset_framed(field: Field) -> Result<quivrep::doc::DiagramDocument, Error> {
    let dual = Algebra::dual_numbers(field);
    let p = Module::free(dual.clone(), 1);
    let fd = build_framed(dual.clone(), &p)?;
    let simple = Module::new(
        dual,
        vec![
            Matrix::identity(field, 1),
            Matrix::zero(field, 1, 1),
        ],
    )?;
    let t_img = quivrep::bimodule::tensor_over(
        &Module::free(fd.diagram.algebras[0].clone(), 1),
        &fd.diagram.bimodules[0],
    )?;
    let cover = quivrep::module::hom_space(&t_img.module, &simple)?;
    let x = framed_rep(&fd, 1, simple, cover[0].matrix.clone())?;
    Ok(encode_document(&fd.diagram, &[("X".into(), &x)]))
}

/// Chain preset over the ground field: the length-`n` tail with a rank-1
/// connector, plus the interval representation that is 𝕜 everywhere.
fn preset_chain(field: Field, n: usize) -> Result<quivrep::doc::DiagramDocument, Error> {
    let k = Algebra::ground_field(field);
    let connector = Module::free(k.clone(), 1);
    let chain: Arc<Diagram> = build_chain(k.clone(), n, &connector)?;
    let modules: Vec<Module> = (0..=n).map(|_| Module::free(k.clone(), 1)).collect();
    let maps: Vec<Matrix> = (0..n).map(|_| Matrix::identity(field, 1)).collect();
    let x = Representation::from_psi(chain.clone(), modules, maps)?;
    Ok(encode_document(&chain, &[("X".into(), &x)]))
}

fn preset_vect(
    field: Field,
    shape: VectShape,
    seed: u64,
) -> Result<quivrep::doc::DiagramDocument, Error> {
    let v = shape.diagram(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = random_vect_rep(&mut rng, &v, 3)?;
    let y = random_vect_rep(&mut rng, &v, 3)?;
    Ok(encode_document(&v.diagram, &[("X".into(), &x), ("Y".into(), &y)]))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) => 1,
        Error::HypothesisViolated { .. } => 2,
        _ => 3,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => print!("{output}"),
        Err(e) => {
            let code = exit_code(&e);
            match &e {
                Error::Validation(msgs) => {
                    for m in msgs {
                        eprintln!("error: {m}");
                    }
                }
                other => eprintln!("error: {other}"),
            }
            std::process::exit(code);
        }
    }
}
