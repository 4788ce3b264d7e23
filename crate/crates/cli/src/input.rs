//! Turning command-line strings into library values.

use std::io::Read;
use std::path::Path;

use lcs::algebra::{AlgebraError, LieAlgebra, LinearMap, Vector};
use lcs::catalog::{self, CatalogError};
use lcs::forms::KForm;
use lcs::linalg::Matrix;
use lcs::notation::{self, parse_bindings, parse_scalar_expr, Bindings, NotationError};
use lcs::scalar::Scalar;
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error(transparent)]
    Notation(#[from] NotationError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

pub fn bindings(params: &[String]) -> Result<Bindings, InputError> {
    Ok(parse_bindings(params.iter().map(String::as_str))?)
}

/// An algebra in JSON: either `{"salamon": "(0,0,-12,0)"}` or
/// `{"dim": 4, "brackets": [{"i": 1, "j": 2, "value": "e3"}]}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum AlgebraFile {
    Salamon {
        salamon: String,
        name: Option<String>,
    },
    Brackets {
        dim: usize,
        brackets: Vec<BracketRecord>,
        name: Option<String>,
    },
}

#[derive(Deserialize)]
struct BracketRecord {
    i: usize,
    j: usize,
    value: String,
}

pub fn read_text(path: &str) -> Result<String, InputError> {
    let io = |source| InputError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn algebra_from_file(path: &str, b: &Bindings, checked: bool) -> Result<LieAlgebra, InputError> {
    let text = read_text(path)?;
    let file: AlgebraFile = serde_json::from_str(&text).map_err(|source| InputError::Json {
        path: path.to_string(),
        source,
    })?;
    let (g, name) = match file {
        AlgebraFile::Salamon { salamon, name } => (salamon_algebra(&salamon, b, checked)?, name),
        AlgebraFile::Brackets {
            dim,
            brackets,
            name,
        } => {
            let mut bs = Vec::new();
            for r in brackets {
                bs.push((r.i, r.j, notation::parse_vector(&r.value, dim, b)?));
            }
            let g = if checked {
                LieAlgebra::new(dim, bs)?
            } else {
                LieAlgebra::unchecked(dim, bs)?
            };
            (g, name)
        }
    };
    Ok(match name {
        Some(n) => g.with_name(n),
        None => g,
    })
}

fn salamon_algebra(text: &str, b: &Bindings, checked: bool) -> Result<LieAlgebra, InputError> {
    if checked {
        return Ok(notation::parse_salamon(text, b)?);
    }
    let g = notation::SalamonTemplate::parse(text)?.instantiate_unchecked(b)?;
    Ok(g)
}

fn resolve(source: &str, b: &Bindings, checked: bool) -> Result<LieAlgebra, InputError> {
    let source = source.trim();
    if let Some(name) = source.strip_prefix("catalog:") {
        return Ok(catalog::instantiate(name, b)?);
    }
    if source.ends_with(".json") || (!source.starts_with('(') && Path::new(source).is_file()) {
        return algebra_from_file(source, b, checked);
    }
    salamon_algebra(source, b, checked)
}

/// A Salamon string, a JSON file, or `catalog:NAME`, validated.
pub fn algebra(source: &str, b: &Bindings) -> Result<LieAlgebra, InputError> {
    resolve(source, b, true)
}

/// Like [`algebra`] but leaves the Jacobi check to the caller.
pub fn algebra_unchecked(source: &str, b: &Bindings) -> Result<LieAlgebra, InputError> {
    resolve(source, b, false)
}

pub fn form_of_degree(
    text: &str,
    dim: usize,
    degree: usize,
    b: &Bindings,
) -> Result<KForm, InputError> {
    Ok(notation::FormTemplate::parse_with_degree(text, dim, degree)?.instantiate(b)?)
}

pub fn vector(text: &str, dim: usize, b: &Bindings) -> Result<Vector, InputError> {
    Ok(notation::parse_vector(text, dim, b)?)
}

/// `"<e1, e3>"` or `"e1, e3"`.
pub fn span(text: &str, dim: usize, b: &Bindings) -> Result<Vec<Vector>, InputError> {
    let inner = text
        .trim()
        .trim_start_matches(['<', '⟨'])
        .trim_end_matches(['>', '⟩']);
    inner
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| vector(s, dim, b))
        .collect()
}

pub fn scalar(text: &str, b: &Bindings) -> Result<Scalar, InputError> {
    Ok(parse_scalar_expr(text, b)?)
}

/// Rows separated by `;`, entries by `,`; entry `(i, j)` is the `e_i`
/// component of the image of `e_j`.
pub fn matrix(text: &str, n: usize, b: &Bindings) -> Result<LinearMap, InputError> {
    let rows: Vec<Vec<Scalar>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| scalar(x, b))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(InputError::Invalid(format!(
            "expected a {n}x{n} matrix, got `{text}`"
        )));
    }
    Ok(LinearMap::new(Matrix::from_rows(rows)))
}
