//! Fixed inputs shared by the benchmarks.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use negativity_core::{Axis, Complex64, ComplexMatrix, Family, SweepGrid};

/// Deterministic dense Hermitian `dim × dim` matrix.
pub fn hermitian_fixture(dim: usize) -> ComplexMatrix {
    let entries = (0..dim * dim)
        .map(|k| {
            let x = k as f64;
            Complex64::new((0.37 * x).sin(), (1.13 * x + 0.5).cos())
        })
        .collect();
    ComplexMatrix::from_entries(entries)
        .expect("square by construction")
        .hermitian_part()
}

/// `U_θ` over `[0, 2π]` with `points` samples.
pub fn utheta_grid(points: usize) -> SweepGrid {
    SweepGrid::new(
        Family::UTheta,
        vec![Axis::new("theta", 0.0, TAU, points).expect("valid axis")],
        BTreeMap::new(),
    )
    .expect("valid grid")
}

/// Rabi `(k_z, t)` square grid over `[0, 2π]²`.
pub fn rabi_grid(points: usize) -> SweepGrid {
    SweepGrid::new(
        Family::Rabi,
        vec![
            Axis::new("kz", 0.0, TAU, points).expect("valid axis"),
            Axis::new("t", 0.0, TAU, points).expect("valid axis"),
        ],
        BTreeMap::new(),
    )
    .expect("valid grid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert_eq!(hermitian_fixture(4).hermiticity_residual(), 0.0);
        assert_eq!(utheta_grid(11).len(), 11);
        assert_eq!(rabi_grid(5).len(), 25);
    }
}
