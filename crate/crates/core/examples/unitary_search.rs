//! Direct maximization over local unitaries, bracketed by the fidelity from
//! below and the Ky Fan bound from above.

use fef_core::fef::{fef_upper_bound, fidelity};
use fef_core::oracle::{oracle_fef, OracleConfig};
use fef_core::sampling::{random_density_matrix, random_unitary};
use fef_core::GeneratorBasis;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fef_core::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let cfg = OracleConfig::with_seed(5);
    for d in [2, 3] {
        let basis = GeneratorBasis::build(d)?;
        println!("d = {d}");
        for _ in 0..3 {
            // hide the entanglement behind a random local unitary
            let rho = random_density_matrix(d, d, &mut rng).rotate_side_b(&random_unitary(d, &mut rng))?;
            let res = oracle_fef(&rho, &cfg)?;
            println!(
                "  fidelity {:.6}  search {:.6} (restart {:>2})  bound {:.6}",
                fidelity(&rho)?,
                res.best_value,
                res.best_restart,
                fef_upper_bound(&rho, &basis)?
            );
        }
    }
    Ok(())
}
