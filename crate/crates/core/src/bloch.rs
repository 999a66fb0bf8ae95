//! Generator expansion of a bipartite operator on `C^d ⊗ C^d`:
//!
//! ```text
//! ρ = I⊗I/d² + (1/d) Σ r_i λ_i⊗I + (1/d) Σ s_j I⊗λ_j + Σ m_ij λ_i⊗λ_j
//! ```
//!
//! with `r_i = ½ Tr(ρ λ_i⊗I)`, `s_j = ½ Tr(ρ I⊗λ_j)` and
//! `m_ij = ¼ Tr(ρ λ_i⊗λ_j)`. The same generator set is used on both sides.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::{trace_of_product, GeneratorBasis};
use crate::linalg::{self, ComplexMatrix, RealMatrix, Subsystem};
use crate::state::{Bipartite, DensityMatrix};

/// Largest imaginary part tolerated on a coefficient trace.
pub const IMAGINARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BlochDecomposition {
    pub d: usize,
    /// Local coefficients on side A.
    pub r: DVector<f64>,
    /// Local coefficients on side B.
    pub s: DVector<f64>,
    /// Correlation matrix `M`.
    pub m: RealMatrix,
}

fn real_part(z: Complex64, name: impl FnOnce() -> String) -> Result<f64> {
    if z.im.abs() > IMAGINARY_TOL {
        return Err(Error::ImaginaryResidue {
            name: name(),
            residue: z.im,
        });
    }
    Ok(z.re)
}

fn check_dims<S: Bipartite + ?Sized>(rho: &S, basis: &GeneratorBasis) -> Result<usize> {
    let d = rho.local_dim()?;
    if d != basis.dim() {
        return Err(Error::dims(
            format!("local dimension {}", basis.dim()),
            format!("local dimension {d}"),
        ));
    }
    Ok(d)
}

/// `X[b, b'] = Σ_{a,a'} ρ[(a,b),(a',b')] g[a',a]`, so that
/// `Tr(ρ (g ⊗ h)) = Tr(X h)`.
fn contract_side_a(rho: &ComplexMatrix, g: &ComplexMatrix, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |b, b2| {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..d {
            for a2 in 0..d {
                let ga = g[(a2, a)];
                if ga != Complex64::new(0.0, 0.0) {
                    acc += rho[(a * d + b, a2 * d + b2)] * ga;
                }
            }
        }
        acc
    })
}

/// Correlation matrix `M(ρ)` alone.
pub fn correlation_matrix<S: Bipartite + ?Sized>(rho: &S, basis: &GeneratorBasis) -> Result<RealMatrix> {
    Ok(decompose(rho, basis)?.m)
}

pub fn decompose<S: Bipartite + ?Sized>(rho: &S, basis: &GeneratorBasis) -> Result<BlochDecomposition> {
    let d = check_dims(rho, basis)?;
    let n = basis.len();
    let mat = rho.matrix();
    let rho_b = rho.reduced(Subsystem::B);

    let mut r = DVector::zeros(n);
    let mut s = DVector::zeros(n);
    let mut m = RealMatrix::zeros(n, n);
    for (i, gi) in basis.iter().enumerate() {
        let x = contract_side_a(mat, gi, d);
        r[i] = real_part(linalg::trace(&x) * 0.5, || format!("r[{i}]"))?;
        s[i] = real_part(trace_of_product(&rho_b, gi) * 0.5, || format!("s[{i}]"))?;
        for (j, gj) in basis.iter().enumerate() {
            m[(i, j)] = real_part(trace_of_product(&x, gj) * 0.25, || format!("m[{i},{j}]"))?;
        }
    }
    Ok(BlochDecomposition { d, r, s, m })
}

/// Rebuilds the operator from its coefficients and validates it as a state.
pub fn reconstruct(dec: &BlochDecomposition, basis: &GeneratorBasis) -> Result<DensityMatrix> {
    let d = basis.dim();
    let n = basis.len();
    if dec.d != d || dec.r.len() != n || dec.s.len() != n || dec.m.shape() != (n, n) {
        return Err(Error::dims(
            format!("d={d} with {n} coefficients"),
            format!(
                "d={} with r:{} s:{} m:{}x{}",
                dec.d,
                dec.r.len(),
                dec.s.len(),
                dec.m.nrows(),
                dec.m.ncols()
            ),
        ));
    }
    let id = linalg::identity(d);
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut rho = linalg::identity(d * d).unscale((d * d) as f64);
    for (i, gi) in basis.iter().enumerate() {
        rho += linalg::kron(gi, &id) * c(dec.r[i] / d as f64);
        rho += linalg::kron(&id, gi) * c(dec.s[i] / d as f64);
        // Σ_j m_ij λ_j first, then one Kronecker product per i
        let right = basis
            .iter()
            .enumerate()
            .fold(ComplexMatrix::zeros(d, d), |acc, (j, gj)| acc + gj * c(dec.m[(i, j)]));
        rho += linalg::kron(gi, &right);
    }
    DensityMatrix::validate(rho, d, d).map_err(|e| Error::ReconstructionNotPositive(Box::new(e)))
}
