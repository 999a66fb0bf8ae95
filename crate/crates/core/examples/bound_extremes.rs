//! Ky Fan upper bound on the fully entangled fraction at its two extremes
//! and on a few random states.

use fef_core::fef::{fef_upper_bound, fidelity};
use fef_core::sampling::random_density_matrix;
use fef_core::{DensityMatrix, GeneratorBasis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fef_core::Result<()> {
    println!("{:>2} {:>14} {:>14}", "d", "bound(P+)", "bound(I/d^2)");
    for d in 2..=5 {
        let basis = GeneratorBasis::build(d)?;
        let p = DensityMatrix::max_entangled_projector(d)?;
        let mixed = DensityMatrix::maximally_mixed(d, d)?;
        println!(
            "{d:>2} {:>14.12} {:>14.12}",
            fef_upper_bound(&p, &basis)?,
            fef_upper_bound(&mixed, &basis)?
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let basis = GeneratorBasis::build(3)?;
    println!("\nrandom qutrit pairs: fidelity <= bound");
    for _ in 0..5 {
        let rho = random_density_matrix(3, 3, &mut rng);
        println!("  {:.6} <= {:.6}", fidelity(&rho)?, fef_upper_bound(&rho, &basis)?);
    }
    Ok(())
}
