//! Loading and shape-validating problem definitions.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

use algcalc_core::algebroid::{AlgebroidError, LieAlgebroid, Section};
use algcalc_core::calculus::DifferentialForm;
use algcalc_core::expr::{parse_expr, Coords, CoordsError, ParseError, ScalarExpr};
use algcalc_core::ids::SubbundleSpec;

use crate::schema::{DefinitionFile, FormDef, FormTerm, StructureEntry};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coordinates: {0}")]
    Coords(#[from] CoordsError),
    #[error("{context}: {source}")]
    Expr {
        context: String,
        source: ParseError,
    },
    #[error("anchor must be {n} rows of {p} expressions (rows = coordinates)")]
    AnchorShape { n: usize, p: usize },
    #[error("structure entry {at}: indices must satisfy 1 <= a < b <= {p} and 1 <= c <= {p}, got lower [{a}, {b}], upper {c}")]
    StructureIndices {
        at: usize,
        a: usize,
        b: usize,
        c: usize,
        p: usize,
    },
    #[error("structure entry {at}: duplicate entry for lower [{a}, {b}], upper {c}")]
    DuplicateStructure {
        at: usize,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("subbundle {name:?}: generator {at} has {got} components, expected {p}")]
    SubbundleShape {
        name: String,
        at: usize,
        got: usize,
        p: usize,
    },
    #[error("form {name:?}: term {at}: indices {indices:?} must be strictly increasing in 1..={p} with length {degree}")]
    FormIndices {
        name: String,
        at: usize,
        indices: Vec<usize>,
        degree: usize,
        p: usize,
    },
    #[error("algebroid data: {0}")]
    Algebroid(#[from] AlgebroidError),
}

/// A fully parsed and shape-validated problem.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemDefinition {
    pub description: String,
    pub algebroid: LieAlgebroid,
    pub subbundles: BTreeMap<String, SubbundleSpec>,
    pub forms: BTreeMap<String, DifferentialForm>,
}

/// A loaded definition plus the content digest of its source bytes.
#[derive(Clone, Debug)]
pub struct LoadedDefinition {
    pub definition: ProblemDefinition,
    pub digest: String,
}

pub fn load_definition(path: &Path) -> Result<LoadedDefinition, LoadError> {
    let bytes = std::fs::read(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let digest = format!("sha256:{:x}", Sha256::digest(&bytes));
    let file: DefinitionFile = serde_json::from_slice(&bytes)?;
    let definition = build_definition(&file)?;
    Ok(LoadedDefinition { definition, digest })
}

pub fn build_definition(file: &DefinitionFile) -> Result<ProblemDefinition, LoadError> {
    let coords = Coords::new(file.coords.iter().cloned())?;
    let n = coords.len();
    let p = file.rank;

    let expr = |context: String, text: &str| -> Result<ScalarExpr, LoadError> {
        parse_expr(text, &coords).map_err(|source| LoadError::Expr { context, source })
    };

    if file.anchor.len() != n || file.anchor.iter().any(|row| row.len() != p) {
        return Err(LoadError::AnchorShape { n, p });
    }
    let mut anchor = Vec::with_capacity(n);
    for (i, row) in file.anchor.iter().enumerate() {
        let mut parsed = Vec::with_capacity(p);
        for (alpha, text) in row.iter().enumerate() {
            parsed.push(expr(format!("anchor[{}][{}]", i + 1, alpha + 1), text)?);
        }
        anchor.push(parsed);
    }

    let zero = ScalarExpr::zero(n);
    let mut structure = vec![vec![vec![zero; p]; p]; p];
    let mut seen = Vec::new();
    for (at, entry) in file.structure.iter().enumerate() {
        let [a, b] = entry.lower;
        let c = entry.upper;
        if a == 0 || b == 0 || c == 0 || a >= b || b > p || c > p {
            return Err(LoadError::StructureIndices { at, a, b, c, p });
        }
        if seen.contains(&(a, b, c)) {
            return Err(LoadError::DuplicateStructure { at, a, b, c });
        }
        seen.push((a, b, c));
        let value = expr(format!("structure[{at}].value"), &entry.value)?;
        structure[a - 1][b - 1][c - 1] = value.clone();
        structure[b - 1][a - 1][c - 1] = value.neg();
    }

    let algebroid = LieAlgebroid::new(coords.clone(), p, anchor, structure)?;

    let mut subbundles = BTreeMap::new();
    for (name, rows) in &file.subbundles {
        let mut sections = Vec::with_capacity(rows.len());
        for (at, row) in rows.iter().enumerate() {
            if row.len() != p {
                return Err(LoadError::SubbundleShape {
                    name: name.clone(),
                    at,
                    got: row.len(),
                    p,
                });
            }
            let comps = row
                .iter()
                .enumerate()
                .map(|(k, text)| {
                    expr(format!("subbundles.{name}[{at}][{}]", k + 1), text)
                })
                .collect::<Result<Vec<_>, _>>()?;
            sections.push(Section::new(comps));
        }
        subbundles.insert(name.clone(), SubbundleSpec::new(sections));
    }

    let mut forms = BTreeMap::new();
    for (name, def) in &file.forms {
        let mut coeffs = Vec::with_capacity(def.terms.len());
        for (at, term) in def.terms.iter().enumerate() {
            let increasing = term.indices.windows(2).all(|w| w[0] < w[1]);
            let in_range = term.indices.iter().all(|&i| i >= 1 && i <= p);
            if term.indices.len() != def.degree || !increasing || !in_range {
                return Err(LoadError::FormIndices {
                    name: name.clone(),
                    at,
                    indices: term.indices.clone(),
                    degree: def.degree,
                    p,
                });
            }
            let c = expr(format!("forms.{name}.terms[{at}].coeff"), &term.coeff)?;
            coeffs.push((term.indices.clone(), c));
        }
        let form = DifferentialForm::from_coefficients(def.degree, p, n, coeffs)
            .expect("keys were validated above");
        forms.insert(name.clone(), form);
    }

    Ok(ProblemDefinition {
        description: file.description.clone(),
        algebroid,
        subbundles,
        forms,
    })
}

/// Serializes a definition back into the schema. Expression strings are
/// canonical renderings, so reloading yields a structurally equal problem.
pub fn to_definition_file(def: &ProblemDefinition) -> DefinitionFile {
    let a = &def.algebroid;
    let coords = a.coords();
    let n = a.base_dim();
    let p = a.rank();
    let anchor = (1..=n)
        .map(|i| {
            (1..=p)
                .map(|alpha| a.anchor_entry(i, alpha).to_text(coords))
                .collect()
        })
        .collect();
    let mut structure = Vec::new();
    for alpha in 1..=p {
        for beta in (alpha + 1)..=p {
            for gamma in 1..=p {
                let l = a.structure_fn(alpha, beta, gamma);
                if !l.is_zero() {
                    structure.push(StructureEntry {
                        lower: [alpha, beta],
                        upper: gamma,
                        value: l.to_text(coords),
                    });
                }
            }
        }
    }
    let subbundles = def
        .subbundles
        .iter()
        .map(|(name, spec)| {
            let rows = spec
                .generators()
                .iter()
                .map(|s| {
                    s.components()
                        .iter()
                        .map(|c| c.to_text(coords))
                        .collect()
                })
                .collect();
            (name.clone(), rows)
        })
        .collect();
    let forms = def
        .forms
        .iter()
        .map(|(name, form)| {
            let terms = form
                .terms()
                .map(|(key, c)| FormTerm {
                    indices: key.clone(),
                    coeff: c.to_text(coords),
                })
                .collect();
            (
                name.clone(),
                FormDef {
                    degree: form.degree(),
                    terms,
                },
            )
        })
        .collect();
    DefinitionFile {
        description: def.description.clone(),
        coords: coords.iter().map(|c| c.name().to_string()).collect(),
        rank: p,
        anchor,
        structure,
        subbundles,
        forms,
    }
}
