//! Reduction criterion and filtering advice along the two-qutrit family,
//! with the sign changes of fidelity - 1/3 and bound - 1/3.

use fef_core::distill::{FilteringCurves, RhoXFamily};

fn main() -> fef_core::Result<()> {
    for family in [RhoXFamily::Unnormalized, RhoXFamily::UnitTrace] {
        let curves = FilteringCurves::new(family)?;
        println!("{family:?} family");
        println!(
            "  {:>5} {:>12} {:>12} {:>12}  verdict",
            "x", "fidelity", "bound", "min eig"
        );
        for x in [0.0, 0.03, 0.1, 0.3, 0.5, 0.9, 0.97] {
            let a = curves.advice(x)?;
            println!(
                "  {x:>5.2} {:>12.6} {:>12.6} {:>12.6}  {}",
                a.fidelity, a.upper_bound, a.min_reduction_eigenvalue, a.verdict
            );
        }
        let t = curves.thresholds(1000, 1e-8)?;
        println!(
            "  fidelity = 1/3 at {:.4} and {:.4}; bound = 1/3 at {:.4} and {:.4}\n",
            t.fidelity_low, t.fidelity_high, t.bound_low, t.bound_high
        );
    }
    Ok(())
}
