//! Normalized fully entangled fraction of `ρ_AB` against the AB|C
//! concurrence bound, on named states, random states and the symmetric W line.

use fef_core::sampling::haar_pure_state;
use fef_core::tripartite::{
    concurrence_ab_c, concurrence_bound_check, schmidt_ab_c, w_line_row, TriPureState, WParams,
};
use fef_core::GeneratorBasis;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fef_core::Result<()> {
    let basis = GeneratorBasis::build(2)?;
    let r = 1.0 / 3f64.sqrt();
    let named = [
        ("|000>", TriPureState::product_000()),
        ("GHZ", TriPureState::ghz()),
        ("W", TriPureState::w(&WParams::new(r, r, r)?)),
    ];
    for (name, psi) in &named {
        let s = schmidt_ab_c(psi)?;
        let t = concurrence_bound_check(psi, &basis)?;
        println!(
            "{name:<6} eta = ({:.4}, {:.4})  C = {:.4}  F_N = {:.4}  sqrt(1-C^2) = {:.4}",
            s.eta1,
            s.eta2,
            concurrence_ab_c(psi)?,
            t.fef_n,
            t.bound
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let min_slack = (0..1000)
        .map(|_| {
            concurrence_bound_check(&TriPureState::from_slice(&haar_pure_state(8, &mut rng))?, &basis).map(|t| t.slack)
        })
        .collect::<fef_core::Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    println!("\nsmallest slack over 1000 random states: {min_slack:.4e}");

    println!("\n{:>6} {:>8} {:>8}", "gamma", "F_N", "bound");
    for k in 0..=10 {
        let row = w_line_row(k as f64 / 10.0, &basis)?;
        println!("{:>6.2} {:>8.5} {:>8.5}", row.gamma, row.fef_n, row.bound);
    }
    Ok(())
}
