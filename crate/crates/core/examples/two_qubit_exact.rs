//! Two-qubit fully entangled fraction: Bell-basis eigenvalue formula versus
//! the Ky Fan closed form, on a state where they agree and one where the
//! Ky Fan form overshoots.

use fef_core::bloch::correlation_matrix;
use fef_core::fef::{fef_two_qubit_bell, fef_two_qubit_kyfan, normalized_fef};
use fef_core::linalg::{identity, kron};
use fef_core::{ComplexMatrix, DensityMatrix, GeneratorBasis};
use num_complex::Complex64;

/// `(I + t Σ σ_i⊗σ_i)/4`.
fn isotropic_correlations(t: f64) -> fef_core::Result<DensityMatrix> {
    let basis = GeneratorBasis::build(2)?;
    let mut m = identity(4);
    for s in basis.iter() {
        m += kron(s, s) * Complex64::new(t, 0.0);
    }
    DensityMatrix::validate(m.unscale(4.0), 2, 2)
}

fn show(name: &str, rho: &DensityMatrix) -> fef_core::Result<()> {
    let det = correlation_matrix(rho, &GeneratorBasis::build(2)?)?.determinant();
    let bell = fef_two_qubit_bell(rho)?;
    println!(
        "{name:<22} det M = {det:+.5}  bell = {bell:.6}  ky fan = {:.6}  normalized = {:.6}",
        fef_two_qubit_kyfan(rho)?,
        normalized_fef(bell)?
    );
    Ok(())
}

fn main() -> fef_core::Result<()> {
    show("Bell projector", &DensityMatrix::max_entangled_projector(2)?)?;
    show("maximally mixed", &DensityMatrix::maximally_mixed(2, 2)?)?;
    // det M < 0: the two forms agree
    show("t = -0.2", &isotropic_correlations(-0.2)?)?;
    // det M > 0: only an improper rotation would reach the Ky Fan value
    show("t = +0.2", &isotropic_correlations(0.2)?)?;

    let werner: ComplexMatrix =
        DensityMatrix::max_entangled_projector(2)?.into_matrix().scale(0.7) + identity(4).scale(0.3 / 4.0);
    show("Werner p = 0.7", &DensityMatrix::validate(werner, 2, 2)?)?;
    Ok(())
}
