#![allow(dead_code)]

use negativity_core::{Complex64, ComplexMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn gaussian_matrix<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let entries = (0..dim * dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexMatrix::from_entries(entries).unwrap()
}

/// Haar-distributed unitary: Gram-Schmidt on the columns of a complex Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|i| g[(i, j)]).collect();
        for q in &cols {
            let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for vi in &mut v {
            *vi /= norm;
        }
        cols.push(v);
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    gaussian_matrix(rng, dim).hermitian_part()
}

/// Random qubit density matrix `G G† / Tr(G G†)`.
pub fn random_density<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(rng, 2);
    let p = &g * &g.adjoint();
    let tr = p.trace();
    p.scale(Complex64::new(1.0, 0.0) / tr).hermitian_part()
}
