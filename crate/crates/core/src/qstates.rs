//! Single-qubit tomography states and the expansion of matrix units in that basis.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::cmatrix::{c, solve, ComplexMatrix};
use crate::error::{Error, Result};

/// Four single-qubit input states spanning the 2×2 operator space.
#[derive(Clone, Debug, PartialEq)]
pub struct TomographyVector {
    states: [ComplexMatrix; 4],
}

impl TomographyVector {
    pub fn new(states: [ComplexMatrix; 4]) -> Result<Self> {
        for s in &states {
            if s.dim() != 2 {
                return Err(Error::Dimension {
                    expected: 2,
                    found: s.dim(),
                });
            }
        }
        Ok(Self { states })
    }

    /// `|0⟩⟨0|, |+⟩⟨+|, |+i⟩⟨+i|, |1⟩⟨1|`, in that order.
    pub fn canonical() -> Self {
        canonical_tomography_vector()
    }

    pub fn states(&self) -> &[ComplexMatrix; 4] {
        &self.states
    }

    /// Columns are the row-major vectorized states.
    fn as_columns(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(4);
        for (col, s) in self.states.iter().enumerate() {
            for (row, &z) in s.entries().iter().enumerate() {
                m[(row, col)] = z;
            }
        }
        m
    }
}

pub fn ket0() -> [Complex64; 2] {
    [c(1.0, 0.0), c(0.0, 0.0)]
}

pub fn ket1() -> [Complex64; 2] {
    [c(0.0, 0.0), c(1.0, 0.0)]
}

pub fn ket_plus() -> [Complex64; 2] {
    [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]
}

pub fn ket_plus_i() -> [Complex64; 2] {
    [c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)]
}

pub fn canonical_tomography_vector() -> TomographyVector {
    TomographyVector {
        states: [
            ComplexMatrix::outer(&ket0()),
            ComplexMatrix::outer(&ket_plus()),
            ComplexMatrix::outer(&ket_plus_i()),
            ComplexMatrix::outer(&ket1()),
        ],
    }
}

/// The 2×2 matrix unit `E_ij = |i⟩⟨j|`.
pub fn matrix_unit(i: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(i, j)] = c(1.0, 0.0);
    m
}

/// Coefficients expressing each `E_ij` as a combination of the tomography states.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixUnitDecomposition {
    /// `coefficients[i][j][k]` multiplies state `k` in the expansion of `E_ij`.
    pub coefficients: [[[Complex64; 4]; 2]; 2],
}

impl MatrixUnitDecomposition {
    pub fn of(&self, i: usize, j: usize) -> &[Complex64; 4] {
        &self.coefficients[i][j]
    }

    /// `Σ_k c_k · images[k]`, the linear extension of a map known on the tomography states.
    pub fn combine(&self, i: usize, j: usize, images: &[ComplexMatrix; 4]) -> ComplexMatrix {
        let dim = images[0].dim();
        let mut out = ComplexMatrix::zeros(dim);
        for (coef, img) in self.coefficients[i][j].iter().zip(images) {
            out = &out + &img.scale(*coef);
        }
        out
    }
}

/// Solves the 4×4 system `Σ_k c_k τ_k = E_ij` for each matrix unit.
pub fn decompose_matrix_units(tv: &TomographyVector) -> Result<MatrixUnitDecomposition> {
    let basis = tv.as_columns();
    let mut coefficients = [[[c(0.0, 0.0); 4]; 2]; 2];
    for (i, row) in coefficients.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let target = matrix_unit(i, j);
            let x = solve(&basis, target.entries())?;
            slot.copy_from_slice(&x);
        }
    }
    Ok(MatrixUnitDecomposition { coefficients })
}
