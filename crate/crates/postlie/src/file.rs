//! JSON algebra files.
//!
//! Bilinear tables are lists of `[i, j, v]` with `v` the coordinate vector
//! of `e_i ∘ e_j`; the p-map is a list of `[i, v]`. A scalar is its list of
//! coefficients over the prime field, constant term last. Indices are
//! zero-based; pairs that are not listed are zero.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use postlie_core::catalog::{self, Built, Suite};
use postlie_core::fdalgebra::FdAlgebra;
use postlie_core::linalg::{Matrix, Vector};
use postlie_core::scalars::{field_make, Field, Scalar};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed algebra file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid field: {0}")]
    Field(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    /// Monic modulus, leading coefficient first; absent for a prime field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

type FileScalar = Vec<u32>;
type FileVector = Vec<FileScalar>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Vec<FileVector>,
}

/// Catalog entry a file was built from; needed only by suites that check
/// data not stored in the tables.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Source {
    pub entry: String,
    pub params: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub names: Vec<String>,
    #[serde(default)]
    pub bracket: Vec<(usize, usize, FileVector)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Vec<(usize, FileVector)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub postlie: Option<Vec<(usize, usize, FileVector)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derivations: Vec<NamedMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rota_baxter: Option<Vec<FileVector>>,
    /// Suites the algebra is asserted to pass; `check --suite all` runs these.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
}

fn invalid(msg: impl Into<String>) -> FileError {
    FileError::Invalid(msg.into())
}

fn write_scalar(f: &Field, s: Scalar) -> FileScalar {
    f.to_coeffs(s)
}

fn write_vector(f: &Field, v: &[Scalar]) -> FileVector {
    v.iter().map(|&s| write_scalar(f, s)).collect()
}

fn write_matrix(f: &Field, m: &Matrix) -> Vec<FileVector> {
    m.iter().map(|r| write_vector(f, r)).collect()
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

impl AlgebraFile {
    pub fn read(path: &str) -> Result<Self, FileError> {
        let text = std::fs::read_to_string(path).map_err(|source| FileError::Io { path: path.into(), source })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn from_built(b: &Built, source: Option<Source>) -> Self {
        let a = &b.algebra;
        let f = &a.field;
        let mut bracket = Vec::new();
        for i in 0..a.dim {
            for j in i + 1..a.dim {
                if !is_zero(&a.bracket[i][j]) {
                    bracket.push((i, j, write_vector(f, &a.bracket[i][j])));
                }
            }
        }
        let pmap = a.pmap.as_ref().map(|pm| {
            pm.iter().enumerate().filter(|(_, v)| !is_zero(v)).map(|(i, v)| (i, write_vector(f, v))).collect()
        });
        let postlie = a.postlie.as_ref().map(|t| {
            let mut out = Vec::new();
            for (i, row) in t.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if !is_zero(v) {
                        out.push((i, j, write_vector(f, v)));
                    }
                }
            }
            out
        });
        AlgebraFile {
            field: FieldSpec { p: f.p(), modulus: f.modulus() },
            dim: a.dim,
            names: a.names.clone(),
            bracket,
            pmap,
            postlie,
            derivations: b
                .derivations
                .iter()
                .map(|(name, m)| NamedMatrix { name: name.clone(), matrix: write_matrix(f, m) })
                .collect(),
            rota_baxter: b.rota_baxter.as_ref().map(|m| write_matrix(f, m)),
            claims: Some(b.claims.iter().map(|s| s.name().to_string()).collect()),
            source,
        }
    }

    pub fn field(&self) -> Result<Field, FileError> {
        field_make(self.field.p, self.field.modulus.as_deref()).map_err(|e| FileError::Field(e.to_string()))
    }

    /// Validates every index and scalar and builds the algebra together
    /// with its claims and attached maps.
    pub fn to_built(&self) -> Result<Built, FileError> {
        let f = self.field()?;
        let n = self.dim;
        if n == 0 {
            return Err(invalid("dim must be positive"));
        }
        if self.names.len() != n {
            return Err(invalid(format!("{} names for dimension {n}", self.names.len())));
        }
        let scalar = |c: &FileScalar| {
            f.from_coeffs(c).ok_or_else(|| invalid(format!("{c:?} is not an element of {f}")))
        };
        let vector = |v: &FileVector| -> Result<Vector, FileError> {
            if v.len() != n {
                return Err(invalid(format!("vector of length {} in dimension {n}", v.len())));
            }
            v.iter().map(scalar).collect()
        };
        let index = |i: usize| if i < n { Ok(i) } else { Err(invalid(format!("index {i} out of range"))) };
        let matrix = |m: &Vec<FileVector>| -> Result<Matrix, FileError> {
            if m.len() != n {
                return Err(invalid(format!("matrix with {} rows in dimension {n}", m.len())));
            }
            m.iter().map(vector).collect()
        };

        let mut a = FdAlgebra::new(f, n);
        a.names = self.names.clone();
        let mut seen = vec![vec![false; n]; n];
        for (i, j, v) in &self.bracket {
            let (i, j) = (index(*i)?, index(*j)?);
            let v = vector(v)?;
            if i == j {
                if !is_zero(&v) {
                    return Err(invalid(format!("bracket [{0},{0}] must be zero", self.names[i])));
                }
                continue;
            }
            if seen[i][j] {
                return Err(invalid(format!("bracket [{},{}] given twice", self.names[i], self.names[j])));
            }
            seen[i][j] = true;
            seen[j][i] = true;
            a.set_bracket(i, j, v);
        }
        if let Some(pm) = &self.pmap {
            let mut seen = vec![false; n];
            for i in 0..n {
                a.set_pmap(i, vec![Scalar::ZERO; n]);
            }
            for (i, v) in pm {
                let i = index(*i)?;
                if seen[i] {
                    return Err(invalid(format!("p-map of {} given twice", self.names[i])));
                }
                seen[i] = true;
                a.set_pmap(i, vector(v)?);
            }
        }
        if let Some(t) = &self.postlie {
            let mut seen = vec![vec![false; n]; n];
            for i in 0..n {
                for j in 0..n {
                    a.set_triangle(i, j, vec![Scalar::ZERO; n]);
                }
            }
            for (i, j, v) in t {
                let (i, j) = (index(*i)?, index(*j)?);
                if seen[i][j] {
                    return Err(invalid(format!("{}▶{} given twice", self.names[i], self.names[j])));
                }
                seen[i][j] = true;
                a.set_triangle(i, j, vector(v)?);
            }
        }
        let claims = match &self.claims {
            None => Vec::new(),
            Some(c) => c
                .iter()
                .map(|s| Suite::parse(s).ok_or_else(|| invalid(format!("unknown suite {s:?} in claims"))))
                .collect::<Result<_, _>>()?,
        };
        let derivations = self
            .derivations
            .iter()
            .map(|d| Ok((d.name.clone(), matrix(&d.matrix)?)))
            .collect::<Result<_, FileError>>()?;
        let rota_baxter = self.rota_baxter.as_ref().map(matrix).transpose()?;
        let quasi_shuffle = match &self.source {
            Some(s) if s.entry == "quasi-shuffle" => catalog::catalog_build_full(&s.entry, &s.params)
                .map_err(|e| invalid(format!("source: {e}")))?
                .quasi_shuffle,
            _ => None,
        };
        Ok(Built { algebra: a, claims, derivations, rota_baxter, quasi_shuffle })
    }
}
