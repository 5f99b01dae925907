//! Simulated single-qubit process tomography and the Choi matrix `C = Σ_ij E_ij ⊗ ε(E_ij)`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{AssignmentMap, Channel, CouplingSpec};
use crate::cmatrix::{c, ComplexMatrix};
use crate::error::{ChoiViolation, Error, Result};
use crate::qstates::{decompose_matrix_units, TomographyVector};

/// Tolerance for Choi matrices produced by the internal pipeline.
pub const PIPELINE_TOLERANCE: f64 = 1e-10;
/// Tolerance for Choi matrices supplied from outside (files, measured data).
pub const EXTERNAL_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub enum ChoiSource {
    Channel {
        coupling: CouplingSpec,
        sharp: AssignmentMap,
    },
    AnalyticAlpha(f64),
    External(String),
}

impl fmt::Display for ChoiSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Channel { coupling, sharp } => write!(f, "{coupling}+{sharp}"),
            Self::AnalyticAlpha(a) => write!(f, "analytic-alpha(alpha={a})"),
            Self::External(label) if label.is_empty() => f.write_str("external"),
            Self::External(label) => write!(f, "external:{label}"),
        }
    }
}

/// A Hermitian 4×4 Choi matrix with trace 2.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    matrix: ComplexMatrix,
    source: ChoiSource,
}

impl ChoiMatrix {
    /// Validates `matrix` at `tolerance` and stores its Hermitian part.
    pub fn with_tolerance(matrix: ComplexMatrix, source: ChoiSource, tolerance: f64) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(ChoiViolation::Dimension(matrix.dim()).into());
        }
        for row in 0..4 {
            for col in 0..4 {
                let z = matrix[(row, col)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(ChoiViolation::NonFinite { row, col }.into());
                }
            }
        }
        let residual = matrix.hermiticity_residual();
        if residual > tolerance {
            return Err(ChoiViolation::Hermiticity { residual }.into());
        }
        let trace = matrix.trace().re;
        let deviation = (trace - 2.0).abs();
        if deviation > tolerance {
            return Err(ChoiViolation::Trace { trace, deviation }.into());
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
            source,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &ChoiSource {
        &self.source
    }

    pub fn to_document(&self) -> ChoiDocument {
        ChoiDocument {
            dim: 4,
            entries: self
                .matrix
                .entries()
                .iter()
                .map(|z| JsonNumberPair([z.re.into(), z.im.into()]))
                .collect(),
            source: self.source.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("finite Choi entries serialize")
    }

    /// Parses and validates a JSON Choi document at [`EXTERNAL_TOLERANCE`].
    pub fn from_json(text: &str) -> Result<Self> {
        let sanitized = quote_nonfinite_literals(text);
        let doc: ChoiDocument = serde_json::from_str(&sanitized)
            .map_err(|e| Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e)))?;
        doc.into_choi()
    }
}

/// `[re, im]` where each part is a JSON number or one of the strings `"NaN"`, `"Infinity"`, `"-Infinity"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonNumberPair(pub [JsonFloat; 2]);

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonFloat {
    Number(f64),
    Text(NonFiniteText),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum NonFiniteText {
    NaN,
    Infinity,
    #[serde(rename = "-Infinity")]
    NegInfinity,
}

impl From<f64> for JsonFloat {
    fn from(x: f64) -> Self {
        if x.is_nan() {
            Self::Text(NonFiniteText::NaN)
        } else if x == f64::INFINITY {
            Self::Text(NonFiniteText::Infinity)
        } else if x == f64::NEG_INFINITY {
            Self::Text(NonFiniteText::NegInfinity)
        } else {
            Self::Number(x)
        }
    }
}

impl JsonFloat {
    pub fn value(self) -> f64 {
        match self {
            Self::Number(x) => x,
            Self::Text(NonFiniteText::NaN) => f64::NAN,
            Self::Text(NonFiniteText::Infinity) => f64::INFINITY,
            Self::Text(NonFiniteText::NegInfinity) => f64::NEG_INFINITY,
        }
    }
}

/// On-disk layout: `{"dim": 4, "entries": [[re, im], ...], "source": "..."}`, entries row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChoiDocument {
    pub dim: usize,
    pub entries: Vec<JsonNumberPair>,
    #[serde(default)]
    pub source: String,
}

impl ChoiDocument {
    pub fn into_matrix(self) -> Result<ComplexMatrix> {
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::Parse(format!(
                "field `entries`: expected {} pairs for dim {}, found {}",
                self.dim * self.dim,
                self.dim,
                self.entries.len()
            )));
        }
        let entries: Vec<Complex64> = self
            .entries
            .iter()
            .map(|JsonNumberPair([re, im])| c(re.value(), im.value()))
            .collect();
        ComplexMatrix::from_entries(entries)
    }

    pub fn into_choi(self) -> Result<ChoiMatrix> {
        if self.dim != 4 {
            return Err(ChoiViolation::Dimension(self.dim).into());
        }
        let label = self.source.clone();
        let matrix = self.into_matrix()?;
        ChoiMatrix::with_tolerance(matrix, ChoiSource::External(label), EXTERNAL_TOLERANCE)
    }
}

/// Wraps bare `NaN` / `Infinity` / `-Infinity` tokens (as written by some JSON emitters)
/// in quotes so they reach validation instead of failing to parse.
fn quote_nonfinite_literals(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_string = false;
    let mut escaped = false;
    let mut rest = text;
    while let Some(ch) = rest.chars().next() {
        if in_string {
            out.push(ch);
            if escaped {
                escaped = false;
            } else if ch == '\\' {
                escaped = true;
            } else if ch == '"' {
                in_string = false;
            }
            rest = &rest[ch.len_utf8()..];
            continue;
        }
        if ch == '"' {
            in_string = true;
            out.push(ch);
            rest = &rest[1..];
            continue;
        }
        let literal = ["-Infinity", "Infinity", "NaN"]
            .into_iter()
            .find(|lit| rest.starts_with(lit));
        if let Some(lit) = literal {
            out.push('"');
            out.push_str(lit);
            out.push('"');
            rest = &rest[lit.len()..];
        } else {
            out.push(ch);
            rest = &rest[ch.len_utf8()..];
        }
    }
    out
}

/// Validates an externally supplied matrix at [`EXTERNAL_TOLERANCE`].
pub fn validate_choi(c: &ComplexMatrix) -> Result<ChoiMatrix> {
    ChoiMatrix::with_tolerance(c.clone(), ChoiSource::External(String::new()), EXTERNAL_TOLERANCE)
}

/// Runs the channel on the canonical tomography states, extends linearly to the matrix
/// units and places `ε(E_ij)` in block `(i, j)`.
pub fn assemble_choi(spec: &CouplingSpec, map: &AssignmentMap) -> Result<ChoiMatrix> {
    let channel = Channel::new(spec.clone(), map.clone())?;
    assemble_choi_for(&channel)
}

pub fn assemble_choi_for(channel: &Channel) -> Result<ChoiMatrix> {
    let tv = TomographyVector::canonical();
    let units = decompose_matrix_units(&tv)?;
    let states = tv.states();
    let images = [
        channel.evaluate(&states[0])?,
        channel.evaluate(&states[1])?,
        channel.evaluate(&states[2])?,
        channel.evaluate(&states[3])?,
    ];

    let mut choi = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            let block = units.combine(i, j, &images);
            for r in 0..2 {
                for s in 0..2 {
                    choi[(2 * i + r, 2 * j + s)] = block[(r, s)];
                }
            }
        }
    }
    let source = ChoiSource::Channel {
        coupling: channel.coupling().clone(),
        sharp: channel.sharp().clone(),
    };
    ChoiMatrix::with_tolerance(choi, source, PIPELINE_TOLERANCE)
}

/// X-shaped Choi matrix with corner and anti-diagonal entry `x = α√(1-α²)`.
pub fn analytic_choi_alpha(alpha: f64) -> Result<ChoiMatrix> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let x = alpha * (1.0 - alpha * alpha).sqrt();
    let m = ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, x],
        [0.0, 0.0, x, 0.0],
        [0.0, x, 0.0, 0.0],
        [x, 0.0, 0.0, 1.0],
    ]);
    ChoiMatrix::with_tolerance(m, ChoiSource::AnalyticAlpha(alpha), PIPELINE_TOLERANCE)
}
