//! Channel negativity: the weight of negative Choi eigenvalues relative to the trace norm.

use serde::Serialize;

use crate::channel::{realize_coupling, AssignmentMap, CouplingSpec};
use crate::choi::{assemble_choi, ChoiMatrix};
use crate::cmatrix::{hermitian_eig, trace_norm, ComplexMatrix};
use crate::error::{Error, Result};

/// Eigenvalues below `-NEGATIVE_EIGENVALUE_THRESHOLD · ‖C‖₁` count as negative.
pub const NEGATIVE_EIGENVALUE_THRESHOLD: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct NegativityReport {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub trace: f64,
    /// `Σ |λ_j|`.
    pub trace_norm: f64,
    pub eta: f64,
    pub neg_eigenvalue_sum: f64,
}

impl NegativityReport {
    /// `½ (1 - Tr C / ‖C‖₁)`, the trace-form of the same quantity.
    pub fn eta_from_trace(&self) -> f64 {
        0.5 * (1.0 - self.trace / self.trace_norm)
    }

    pub fn positivity(&self) -> f64 {
        positivity_from_negativity(self.eta).expect("eta lies in [0, 1/2)")
    }

    pub fn is_completely_positive(&self) -> bool {
        self.eta == 0.0
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            eigenvalues: &'a [f64],
            trace: f64,
            trace_norm: f64,
            eta: f64,
            positivity: f64,
        }
        serde_json::to_string_pretty(&Doc {
            eigenvalues: &self.eigenvalues,
            trace: self.trace,
            trace_norm: self.trace_norm,
            eta: self.eta,
            positivity: self.positivity(),
        })
        .expect("report fields are finite")
    }
}

pub fn negativity(choi: &ChoiMatrix) -> Result<NegativityReport> {
    let m = choi.matrix();
    let eig = hermitian_eig(m)?;
    let trace = m.trace().re;
    let abs_sum: f64 = eig.eigenvalues.iter().map(|l| l.abs()).sum();
    let cutoff = -NEGATIVE_EIGENVALUE_THRESHOLD * abs_sum;
    let neg_eigenvalue_sum: f64 = eig
        .eigenvalues
        .iter()
        .filter(|&&l| l < cutoff)
        .fold(0.0, |acc, l| acc + l.abs());
    Ok(NegativityReport {
        eigenvalues: eig.eigenvalues,
        trace,
        trace_norm: abs_sum,
        eta: neg_eigenvalue_sum / abs_sum,
        neg_eigenvalue_sum,
    })
}

/// `η = (1 - ϱ) / (2 - ϱ)`.
pub fn negativity_from_positivity(positivity: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&positivity) {
        return Err(Error::Domain(format!(
            "positivity must lie in [0, 1], got {positivity}"
        )));
    }
    // equal to (1 - ϱ)/(2 - ϱ)
    Ok(1.0 - 1.0 / (2.0 - positivity))
}

/// Inverse of [`negativity_from_positivity`]: `ϱ = (1 - 2η) / (1 - η)`.
pub fn positivity_from_negativity(eta: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&eta) {
        return Err(Error::Domain(format!("negativity must lie in [0, 1/2), got {eta}")));
    }
    Ok((1.0 - 2.0 * eta) / (1.0 - eta))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceReport {
    pub eta_expected: f64,
    pub eta_implemented: f64,
    /// `|η_expected - η_implemented|`.
    pub delta: f64,
    /// `‖U_expected - U_implemented‖₁` when both gates are known.
    pub trace_distance: Option<f64>,
}

impl DistanceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are finite")
    }
}

pub fn negativity_distance(expected: &ChoiMatrix, implemented: &ChoiMatrix) -> Result<DistanceReport> {
    let eta_expected = negativity(expected)?.eta;
    let eta_implemented = negativity(implemented)?.eta;
    Ok(DistanceReport {
        eta_expected,
        eta_implemented,
        delta: (eta_expected - eta_implemented).abs(),
        trace_distance: None,
    })
}

/// `‖M - N‖₁`.
pub fn trace_distance(m: &ComplexMatrix, n: &ComplexMatrix) -> Result<f64> {
    trace_norm(&m.try_sub(n)?)
}

/// Negativity distance between two gates under one sharp map, plus their trace distance.
pub fn gate_distance(
    expected: &CouplingSpec,
    implemented: &CouplingSpec,
    sharp: &AssignmentMap,
) -> Result<DistanceReport> {
    let mut report = negativity_distance(&assemble_choi(expected, sharp)?, &assemble_choi(implemented, sharp)?)?;
    report.trace_distance = Some(trace_distance(
        &realize_coupling(expected)?,
        &realize_coupling(implemented)?,
    )?);
    Ok(report)
}
