//! Bipartite operators on `C^dim_a ⊗ C^dim_b`.
//!
//! Basis convention: `|ij⟩` is row `i * dim_b + j`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, Subsystem, HERMITIAN_TOL};

/// Slack on trace and on negative eigenvalues accepted by validation.
pub const STATE_TOL: f64 = 1e-9;

/// Anything the bound, fidelity and reduction routines can act on.
pub trait Bipartite {
    fn dim_a(&self) -> usize;
    fn dim_b(&self) -> usize;
    fn matrix(&self) -> &ComplexMatrix;

    /// The common local dimension, for routines defined only on `H ⊗ H`.
    fn local_dim(&self) -> Result<usize> {
        if self.dim_a() == self.dim_b() {
            Ok(self.dim_a())
        } else {
            Err(Error::dims(
                "equal local dimensions",
                format!("{}x{}", self.dim_a(), self.dim_b()),
            ))
        }
    }

    fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        linalg::partial_trace(self.matrix(), self.dim_a(), self.dim_b(), keep)
            .expect("dimensions fixed at construction")
    }
}

/// A validated mixed state: Hermitian, unit trace, positive semidefinite,
/// each within [`STATE_TOL`]. The stored matrix is the literal input; no
/// symmetrization or eigenvalue clipping is applied.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
}

/// Hermitian positive semidefinite operator without the trace condition.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveOperator {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
}

fn check_shape_and_hermitian(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    for d in [dim_a, dim_b] {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
    }
    let n = dim_a * dim_b;
    if m.shape() != (n, n) {
        return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", m.nrows(), m.ncols())));
    }
    linalg::ensure_finite(m)?;
    let deviation = linalg::hermitian_deviation(m);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn check_positive(m: &ComplexMatrix) -> Result<()> {
    let min_eigenvalue = linalg::min_eigenvalue(m)?;
    if min_eigenvalue < -STATE_TOL {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(())
}

impl DensityMatrix {
    /// Checks every state invariant and reports the first one violated.
    pub fn validate(matrix: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        check_shape_and_hermitian(&matrix, dim_a, dim_b)?;
        let tr = linalg::trace(&matrix);
        let deviation = (tr - Complex64::new(1.0, 0.0)).norm();
        if deviation > STATE_TOL {
            return Err(Error::TraceNotOne { deviation });
        }
        check_positive(&matrix)?;
        Ok(DensityMatrix { dim_a, dim_b, matrix })
    }

    /// `P₊ = |ψ₊⟩⟨ψ₊|` with `|ψ₊⟩ = Σ_i |ii⟩ / sqrt(d)`.
    pub fn max_entangled_projector(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let mut m = ComplexMatrix::zeros(d * d, d * d);
        let w = Complex64::new(1.0 / d as f64, 0.0);
        for i in 0..d {
            for j in 0..d {
                m[(i * d + i, j * d + j)] = w;
            }
        }
        Ok(DensityMatrix {
            dim_a: d,
            dim_b: d,
            matrix: m,
        })
    }

    /// `I / (dim_a dim_b)`.
    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Result<Self> {
        let n = dim_a * dim_b;
        Self::validate(linalg::identity(n).unscale(n as f64), dim_a, dim_b)
    }

    /// `|ψ⟩⟨ψ|` for a unit vector of length `dim_a * dim_b`.
    pub fn from_pure(psi: &[Complex64], dim_a: usize, dim_b: usize) -> Result<Self> {
        let v = nalgebra::DVector::from_column_slice(psi);
        Self::validate(&v * v.adjoint(), dim_a, dim_b)
    }

    /// `ρ_A ⊗ ρ_B` from two single-party density operators.
    pub fn product(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<Self> {
        Self::validate(linalg::kron(rho_a, rho_b), rho_a.nrows(), rho_b.nrows())
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        crate::generators::trace_of_product(&self.matrix, &self.matrix).re
    }

    /// Conjugation `(I ⊗ U) ρ (I ⊗ U†)` by a unitary on side B.
    pub fn rotate_side_b(&self, u: &ComplexMatrix) -> Result<Self> {
        let lift = linalg::kron(&linalg::identity(self.dim_a), u);
        Self::validate(&lift * &self.matrix * lift.adjoint(), self.dim_a, self.dim_b)
    }

    /// Conjugation `(U ⊗ I) ρ (U† ⊗ I)` by a unitary on side A.
    pub fn rotate_side_a(&self, u: &ComplexMatrix) -> Result<Self> {
        let lift = linalg::kron(u, &linalg::identity(self.dim_b));
        Self::validate(&lift * &self.matrix * lift.adjoint(), self.dim_a, self.dim_b)
    }
}

impl PositiveOperator {
    pub fn validate(matrix: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        check_shape_and_hermitian(&matrix, dim_a, dim_b)?;
        check_positive(&matrix)?;
        Ok(PositiveOperator { dim_a, dim_b, matrix })
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.matrix).re
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

impl From<DensityMatrix> for PositiveOperator {
    fn from(rho: DensityMatrix) -> Self {
        PositiveOperator {
            dim_a: rho.dim_a,
            dim_b: rho.dim_b,
            matrix: rho.matrix,
        }
    }
}

macro_rules! impl_bipartite {
    ($t:ty) => {
        impl Bipartite for $t {
            fn dim_a(&self) -> usize {
                self.dim_a
            }
            fn dim_b(&self) -> usize {
                self.dim_b
            }
            fn matrix(&self) -> &ComplexMatrix {
                &self.matrix
            }
        }
    };
}

impl_bipartite!(DensityMatrix);
impl_bipartite!(PositiveOperator);

fn check_unit_interval(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "x",
            value: x,
            range: "[0, 1]",
        })
    }
}

fn qutrit_mixture(sigma: ComplexMatrix) -> ComplexMatrix {
    let p_plus = DensityMatrix::max_entangled_projector(3).expect("d = 3").into_matrix();
    sigma.scale(8.0 / 9.0) + p_plus.unscale(9.0)
}

/// The two-qutrit family `ρ(x) = (8/9) σ + (1/9) P₊` with
/// `σ = (x|0⟩⟨0| + (1-x)|1⟩⟨1|) ⊗ (x|0⟩⟨0| + (1-x)|1⟩⟨1|)`, a unit-trace state.
pub fn example_family_rho_x(x: f64) -> Result<DensityMatrix> {
    check_unit_interval(x)?;
    let local = nalgebra::DVector::from_vec(
        vec![x, 1.0 - x, 0.0]
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect(),
    );
    let local = ComplexMatrix::from_diagonal(&local);
    DensityMatrix::validate(qutrit_mixture(linalg::kron(&local, &local)), 3, 3)
}

/// `(8/9) |φφ⟩⟨φφ| + (1/9) P₊` with the unnormalized `φ = x|0⟩ + (1-x)|1⟩`,
/// the default family of the `sweep-fig1` curves.
///
/// Its trace is `(8/9)(x² + (1-x)²)² + 1/9`, so it is only a state at the
/// endpoints. Fidelity crosses 1/3 at 0.0722/0.9278, the bound at
/// 0.1188/0.8812, and the reduction eigenvalue is `-2/27` for every `x`.
/// The unit-trace family above has none of these properties.
pub fn unnormalized_family_rho_x(x: f64) -> Result<PositiveOperator> {
    check_unit_interval(x)?;
    let phi = [x, 1.0 - x, 0.0];
    let v = nalgebra::DVector::from_iterator(
        9,
        phi.iter()
            .flat_map(|&a| phi.iter().map(move |&b| Complex64::new(a * b, 0.0))),
    );
    PositiveOperator::validate(qutrit_mixture(&v * v.adjoint()), 3, 3)
}
