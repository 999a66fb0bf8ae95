//! Local vectors and correlation matrix of a two-qutrit state, and the
//! reconstruction back to the density matrix.

use fef_core::bloch::{decompose, reconstruct};
use fef_core::linalg::max_abs_diff;
use fef_core::sampling::random_density_matrix;
use fef_core::{Bipartite, DensityMatrix, GeneratorBasis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fef_core::Result<()> {
    let basis = GeneratorBasis::build(3)?;

    let p = decompose(&DensityMatrix::max_entangled_projector(3)?, &basis)?;
    println!("maximally entangled projector, diagonal of M:");
    println!(
        "  {:?}",
        p.m.diagonal().iter().map(|v| format!("{v:+.4}")).collect::<Vec<_>>()
    );
    println!("  |r| = {:.1e}, |s| = {:.1e}", p.r.norm(), p.s.norm());

    let rho = random_density_matrix(3, 3, &mut ChaCha8Rng::seed_from_u64(3));
    let dec = decompose(&rho, &basis)?;
    println!(
        "\nrandom state: |r| = {:.4}, |s| = {:.4}, |M|_F = {:.4}",
        dec.r.norm(),
        dec.s.norm(),
        dec.m.norm()
    );
    let back = reconstruct(&dec, &basis)?;
    println!("round-trip error {:.1e}", max_abs_diff(back.matrix(), rho.matrix()));
    Ok(())
}
