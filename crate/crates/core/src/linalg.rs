//! Dense matrix primitives shared by every other module.
//!
//! Matrices are plain `nalgebra` dynamic matrices. Routines that only need
//! singular values or eigenvalues are generic over the real and complex
//! scalar types so the real correlation matrices and the complex density
//! matrices go through the same code.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, row/column indexed as `m[(row, col)]`.
pub type ComplexMatrix = DMatrix<Complex64>;

/// Real matrix (correlation matrices, orthogonal rotations).
pub type RealMatrix = DMatrix<f64>;

/// Absolute entrywise tolerance on `|m - m†|` for Hermitian inputs.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Which factor of a bipartite space survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

pub fn ensure_finite<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<()> {
    if m.iter().all(|z| z.clone().is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn ensure_square<T>(m: &DMatrix<T>) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

/// Largest entrywise modulus of `m - m†`.
pub fn hermitian_deviation<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)].clone() - m[(j, i)].clone().conjugate()).modulus();
            worst = worst.max(d);
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// Inputs within [`HERMITIAN_TOL`] of Hermitian are symmetrized as
/// `(m + m†)/2` before the decomposition.
pub fn hermitian_eigenvalues<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<Vec<f64>> {
    ensure_square(m)?;
    ensure_finite(m)?;
    let deviation = hermitian_deviation(m);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let sym = (m + m.adjoint()).unscale(2.0);
    let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<f64> {
    Ok(*hermitian_eigenvalues(m)?.last().expect("non-empty matrix"))
}

/// Singular values sorted descending; `min(rows, cols)` of them.
pub fn singular_values<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<Vec<f64>> {
    ensure_finite(m)?;
    if m.is_empty() {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = m.singular_values().iter().map(|s| s.max(0.0)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Ky Fan norm `Tr sqrt(m m†)`: the sum of all singular values.
pub fn ky_fan_norm<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

/// Kronecker product; entry `(i, j)` of `a` and `(k, l)` of `b` land at
/// `(i * b.rows + k, j * b.cols + l)`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Traces out one factor of an operator on `C^dim_a ⊗ C^dim_b`, keeping
/// the subsystem named by `keep`.
pub fn partial_trace(m: &ComplexMatrix, dim_a: usize, dim_b: usize, keep: Subsystem) -> Result<ComplexMatrix> {
    let n = dim_a * dim_b;
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", m.nrows(), m.ncols())));
    }
    let reduced = match keep {
        Subsystem::A => ComplexMatrix::from_fn(dim_a, dim_a, |a, a2| {
            (0..dim_b).map(|b| m[(a * dim_b + b, a2 * dim_b + b)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(dim_b, dim_b, |b, b2| {
            (0..dim_a).map(|a| m[(a * dim_b + b, a * dim_b + b2)]).sum()
        }),
    };
    Ok(reduced)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Lift a real matrix to a complex one.
pub fn complexify(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Largest entrywise `|a - b|`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
