//! Seeded random matrices and states for the oracle, property tests and
//! examples. Every sampler takes the generator explicitly.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, RealMatrix};
use crate::state::DensityMatrix;

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix of independent standard complex Gaussians (Ginibre ensemble).
pub fn gaussian_complex_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// `G G† / Tr(G G†)` for a square Ginibre `G`.
pub fn random_density_operator<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_complex_matrix(n, n, rng);
    let w = &g * g.adjoint();
    let tr = crate::linalg::trace(&w).re;
    // exact Hermitian symmetry, so validation never sees rounding asymmetry
    (&w + w.adjoint()).unscale(2.0 * tr)
}

pub fn random_density_matrix<R: Rng + ?Sized>(dim_a: usize, dim_b: usize, rng: &mut R) -> DensityMatrix {
    DensityMatrix::validate(random_density_operator(dim_a * dim_b, rng), dim_a, dim_b)
        .expect("Ginibre states are valid")
}

/// Haar-random unit vector: normalized vector of complex Gaussians.
pub fn haar_pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let v = DVector::from_fn(n, |_, _| complex_normal(rng));
    let norm = v.norm();
    v.iter().map(|z| z / norm).collect()
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let qr = gaussian_complex_matrix(n, n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-random orthogonal matrix (possibly with determinant -1).
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealMatrix {
    let g = RealMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let (mut q, r) = g.qr().unpack();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}
