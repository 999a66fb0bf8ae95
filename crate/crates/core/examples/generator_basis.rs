//! The generalized Gell-Mann generators of SU(d) and their orthogonality.

use fef_core::generators::GeneratorKind;
use fef_core::sampling::random_orthogonal;
use fef_core::GeneratorBasis;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fef_core::Result<()> {
    let basis = GeneratorBasis::build(3)?;
    for (i, (g, kind)) in basis.iter().zip(basis.kinds()).enumerate() {
        let nonzero: Vec<String> = (0..3)
            .flat_map(|r| (0..3).map(move |c| (r, c)))
            .filter(|&(r, c)| g[(r, c)].norm() > 0.0)
            .map(|(r, c)| format!("({r},{c})={}", g[(r, c)]))
            .collect();
        println!("lambda_{} {:<13} {}", i + 1, format!("{kind:?}"), nonzero.join(" "));
    }

    for d in 2..=6 {
        let b = GeneratorBasis::build(d)?;
        let gram_dev = (b.gram() - nalgebra::DMatrix::identity(b.len(), b.len()) * 2.0).amax();
        println!(
            "d={d}: {} generators, Gram deviation {gram_dev:.1e}, completeness {:.1e}",
            b.len(),
            b.check_completeness()
        );
    }

    let o = random_orthogonal(8, &mut ChaCha8Rng::seed_from_u64(1));
    let rotated = basis.rotate(&o)?;
    let mixed = rotated.kinds().iter().all(|k| *k == GeneratorKind::Mixed);
    println!(
        "rotated basis: completeness {:.1e}, kinds all Mixed: {mixed}",
        rotated.check_completeness()
    );
    Ok(())
}
