//! Fully entangled fraction: the fidelity with `|ψ₊⟩`, the Ky Fan upper
//! bound for any `d`, and the two-qubit closed forms.
//!
//! The upper bound is
//!
//! ```text
//! F(ρ) <= 1/d² + 4 ‖M(ρ)ᵀ M(P₊)‖_KF
//! ```
//!
//! It maximizes the linear form `Tr(M(ρ)ᵀ M(P₊) O)` over all orthogonal
//! `O`, while local unitaries only generate a subset of those rotations.
//! At `d = 2` that subset is `SO(3)`, so the Ky Fan value equals the FEF only
//! when `det M(ρ) <= 0`. When `det M(ρ) > 0` it overshoots by twice the
//! smallest singular value of `4 M(ρ)ᵀ M(P₊)`. The Bell-basis eigenvalue formula
//! [`fef_two_qubit_bell`] is exact for every two-qubit state, so
//! [`FefReport::exact_two_qubit`] uses it.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::bloch::correlation_matrix;
use crate::error::{Error, Result};
use crate::generators::GeneratorBasis;
use crate::linalg::{self, ComplexMatrix, RealMatrix};
use crate::oracle::{self, OracleConfig};
use crate::state::{Bipartite, DensityMatrix};

/// `⟨ψ₊|ρ|ψ₊⟩`, the overlap with the maximally entangled state without any
/// local rotation.
pub fn fidelity<S: Bipartite + ?Sized>(rho: &S) -> Result<f64> {
    let d = rho.local_dim()?;
    let m = rho.matrix();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += m[(i * d + i, j * d + j)];
        }
    }
    Ok(acc.re / d as f64)
}

/// Evaluates the Ky Fan bound repeatedly in one generator basis, keeping
/// `M(P₊)` from the first computation.
#[derive(Debug, Clone)]
pub struct BoundEvaluator {
    basis: GeneratorBasis,
    projector_correlations: RealMatrix,
}

impl BoundEvaluator {
    pub fn new(basis: GeneratorBasis) -> Result<Self> {
        let p_plus = DensityMatrix::max_entangled_projector(basis.dim())?;
        let projector_correlations = correlation_matrix(&p_plus, &basis)?;
        Ok(BoundEvaluator {
            basis,
            projector_correlations,
        })
    }

    pub fn basis(&self) -> &GeneratorBasis {
        &self.basis
    }

    /// `M(ρ)ᵀ M(P₊)`.
    pub fn overlap_matrix<S: Bipartite + ?Sized>(&self, rho: &S) -> Result<RealMatrix> {
        let m = correlation_matrix(rho, &self.basis)?;
        Ok(m.transpose() * &self.projector_correlations)
    }

    pub fn evaluate<S: Bipartite + ?Sized>(&self, rho: &S) -> Result<f64> {
        let d = self.basis.dim() as f64;
        let kf = linalg::ky_fan_norm(&self.overlap_matrix(rho)?)?;
        Ok(1.0 / (d * d) + 4.0 * kf)
    }
}

/// `1/d² + 4 ‖M(ρ)ᵀ M(P₊)‖_KF` with both correlation matrices taken in
/// `basis`. Not clamped to 1.
pub fn fef_upper_bound<S: Bipartite + ?Sized>(rho: &S, basis: &GeneratorBasis) -> Result<f64> {
    BoundEvaluator::new(basis.clone())?.evaluate(rho)
}

fn require_two_qubits<S: Bipartite + ?Sized>(rho: &S) -> Result<()> {
    match rho.local_dim()? {
        2 => Ok(()),
        d => Err(Error::dims("2x2 (two qubits)", format!("{d}x{d}"))),
    }
}

fn pauli_bound() -> &'static BoundEvaluator {
    static EVAL: OnceLock<BoundEvaluator> = OnceLock::new();
    EVAL.get_or_init(|| BoundEvaluator::new(GeneratorBasis::build(2).expect("d = 2")).expect("d = 2"))
}

/// The Ky Fan closed form at `d = 2`: `1/4 + 4 ‖M(ρ)ᵀ M(P₊)‖_KF`.
///
/// Exact when `det M(ρ) <= 0`; an upper bound otherwise (see module docs).
pub fn fef_two_qubit_kyfan<S: Bipartite + ?Sized>(rho: &S) -> Result<f64> {
    require_two_qubits(rho)?;
    pauli_bound().evaluate(rho)
}

/// Columns are the four Bell states with the phases that make
/// `Re(B† ρ B)` carry the FEF as its top eigenvalue:
/// `(1,0,0,1)/√2`, `(0,i,i,0)/√2`, `(0,-1,1,0)/√2`, `(i,0,0,-i)/√2`.
pub fn bell_basis_matrix() -> &'static ComplexMatrix {
    static BELL: OnceLock<ComplexMatrix> = OnceLock::new();
    BELL.get_or_init(|| {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let o = Complex64::new(0.0, 0.0);
        let r = |x: f64| Complex64::new(x * h, 0.0);
        let i = |x: f64| Complex64::new(0.0, x * h);
        #[rustfmt::skip]
        let b = ComplexMatrix::from_row_slice(4, 4, &[
            r(1.0), o,      o,       i(1.0),
            o,      i(1.0), r(-1.0), o,
            o,      i(1.0), r(1.0),  o,
            r(1.0), o,      o,       i(-1.0),
        ]);
        let defect = linalg::max_abs_diff(&(b.adjoint() * &b), &linalg::identity(4));
        assert!(defect < 1e-12, "Bell matrix is not unitary: {defect:e}");
        b
    })
}

/// Two-qubit FEF as the largest eigenvalue of `Re(B† ρ B)`.
pub fn fef_two_qubit_bell<S: Bipartite + ?Sized>(rho: &S) -> Result<f64> {
    require_two_qubits(rho)?;
    let b = bell_basis_matrix();
    let rotated = b.adjoint() * rho.matrix() * b;
    let real = rotated.map(|z| z.re);
    Ok(linalg::hermitian_eigenvalues(&real)?[0])
}

/// `max(2F - 1, 0)`.
pub fn normalized_fef(fef_value: f64) -> Result<f64> {
    if !(0.0..=1.0 + 1e-9).contains(&fef_value) {
        return Err(Error::OutOfRange {
            name: "fef",
            value: fef_value,
            range: "[0, 1]",
        });
    }
    Ok((2.0 * fef_value - 1.0).max(0.0))
}

/// Everything known about one state's fully entangled fraction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FefReport {
    pub dim: usize,
    pub fidelity: f64,
    /// `1/d`, the distillation threshold.
    pub threshold: f64,
    pub upper_bound: f64,
    /// Exact FEF for two qubits (Bell-basis formula).
    pub exact_two_qubit: Option<f64>,
    /// Best overlap found by the unitary search, when requested.
    pub oracle_lower: Option<f64>,
    /// `max(2F - 1, 0)` of the exact value, for two qubits.
    pub normalized: Option<f64>,
}

impl FefReport {
    pub fn compute(rho: &DensityMatrix, basis: &GeneratorBasis, oracle_cfg: Option<&OracleConfig>) -> Result<Self> {
        let dim = rho.local_dim()?;
        let fidelity = fidelity(rho)?;
        let upper_bound = fef_upper_bound(rho, basis)?;
        let exact_two_qubit = if dim == 2 { Some(fef_two_qubit_bell(rho)?) } else { None };
        let oracle_lower = match oracle_cfg {
            Some(cfg) => Some(oracle::oracle_fef(rho, cfg)?.best_value),
            None => None,
        };
        let normalized = exact_two_qubit.map(normalized_fef).transpose()?;
        Ok(FefReport {
            dim,
            fidelity,
            threshold: 1.0 / dim as f64,
            upper_bound,
            exact_two_qubit,
            oracle_lower,
            normalized,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use crate::state::{example_family_rho_x, PositiveOperator};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fidelity_fixtures() {
        for d in 2..=4 {
            let p = DensityMatrix::max_entangled_projector(d).unwrap();
            assert!((fidelity(&p).unwrap() - 1.0).abs() < 1e-14);
            let mixed = DensityMatrix::maximally_mixed(d, d).unwrap();
            assert!((fidelity(&mixed).unwrap() - 1.0 / (d * d) as f64).abs() < 1e-15);
        }
        assert!(fidelity(&example_family_rho_x(0.5).unwrap()).unwrap() < 1.0 / 3.0);
        let rect = DensityMatrix::maximally_mixed(2, 3).unwrap();
        assert!(matches!(fidelity(&rect), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn bound_at_the_extremes() {
        for d in 2..=4 {
            let basis = GeneratorBasis::build(d).unwrap();
            let p = DensityMatrix::max_entangled_projector(d).unwrap();
            assert!((fef_upper_bound(&p, &basis).unwrap() - 1.0).abs() < 1e-10);
            let mixed = DensityMatrix::maximally_mixed(d, d).unwrap();
            assert!((fef_upper_bound(&mixed, &basis).unwrap() - 1.0 / (d * d) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn bound_rejects_wrong_dimension() {
        let basis = GeneratorBasis::build(3).unwrap();
        let rho = DensityMatrix::maximally_mixed(2, 2).unwrap();
        assert!(matches!(
            fef_upper_bound(&rho, &basis),
            Err(Error::DimensionMismatch { .. })
        ));
        let q = DensityMatrix::maximally_mixed(3, 3).unwrap();
        assert!(matches!(fef_two_qubit_kyfan(&q), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(fef_two_qubit_bell(&q), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn two_qubit_fixtures() {
        let p = DensityMatrix::max_entangled_projector(2).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2, 2).unwrap();
        for f in [
            fef_two_qubit_kyfan::<DensityMatrix>,
            fef_two_qubit_bell::<DensityMatrix>,
        ] {
            assert!((f(&p).unwrap() - 1.0).abs() < 1e-12);
            assert!((f(&mixed).unwrap() - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_matrix_first_column_is_psi_plus() {
        let b = bell_basis_matrix();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b[(0, 0)].re - h).abs() < 1e-16 && (b[(3, 0)].re - h).abs() < 1e-16);
    }

    #[test]
    fn kyfan_overshoots_exactly_when_det_is_positive() {
        // Bell-diagonal state with correlation tensor diag(t, t, t): the
        // largest Bell weight is (1 + t)/4, the Ky Fan form gives (1 + 3t)/4.
        let t = 0.2;
        let basis = GeneratorBasis::build(2).unwrap();
        let mut m = linalg::identity(4);
        for g in basis.iter() {
            m += linalg::kron(g, g) * Complex64::new(t, 0.0);
        }
        let rho = DensityMatrix::validate(m.unscale(4.0), 2, 2).unwrap();
        assert!((fef_two_qubit_bell(&rho).unwrap() - (1.0 + t) / 4.0).abs() < 1e-14);
        assert!((fef_two_qubit_kyfan(&rho).unwrap() - (1.0 + 3.0 * t) / 4.0).abs() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let (mut agree, mut over) = (0, 0);
        for _ in 0..500 {
            let rho = sampling::random_density_matrix(2, 2, &mut rng);
            let kf = fef_two_qubit_kyfan(&rho).unwrap();
            let bell = fef_two_qubit_bell(&rho).unwrap();
            let det = correlation_matrix(&rho, &basis).unwrap().determinant();
            assert!(kf >= bell - 1e-12);
            if det <= 0.0 {
                assert!((kf - bell).abs() < 1e-9, "det={det:e} kf={kf} bell={bell}");
                agree += 1;
            } else {
                // overshoot is half the smallest singular value of 4 Mᵀ M(P₊)
                let sv = linalg::singular_values(&pauli_bound().overlap_matrix(&rho).unwrap()).unwrap();
                assert!((kf - bell - 8.0 * sv[2]).abs() < 1e-9);
                over += 1;
            }
        }
        assert!(agree > 0 && over > 0);
    }

    #[test]
    fn bound_dominates_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for d in [2, 3, 4] {
            let eval = BoundEvaluator::new(GeneratorBasis::build(d).unwrap()).unwrap();
            for _ in 0..50 {
                let rho = sampling::random_density_matrix(d, d, &mut rng);
                assert!(eval.evaluate(&rho).unwrap() >= fidelity(&rho).unwrap() - 1e-9);
            }
        }
    }

    #[test]
    fn bound_is_basis_independent_and_side_b_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for d in [2, 3] {
            let basis = GeneratorBasis::build(d).unwrap();
            for _ in 0..10 {
                let rho = sampling::random_density_matrix(d, d, &mut rng);
                let base = fef_upper_bound(&rho, &basis).unwrap();
                let o = sampling::random_orthogonal(d * d - 1, &mut rng);
                let rotated = basis.rotate(&o).unwrap();
                assert!((fef_upper_bound(&rho, &rotated).unwrap() - base).abs() < 1e-9);
                let u = sampling::random_unitary(d, &mut rng);
                let moved = rho.rotate_side_b(&u).unwrap();
                assert!((fef_upper_bound(&moved, &basis).unwrap() - base).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn two_qubit_values_are_invariant_under_side_a_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..20 {
            let rho = sampling::random_density_matrix(2, 2, &mut rng);
            let u = sampling::random_unitary(2, &mut rng);
            let moved = rho.rotate_side_a(&u).unwrap();
            assert!((fef_two_qubit_kyfan(&moved).unwrap() - fef_two_qubit_kyfan(&rho).unwrap()).abs() < 1e-9);
            assert!((fef_two_qubit_bell(&moved).unwrap() - fef_two_qubit_bell(&rho).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn normalized_fixtures() {
        assert_eq!(normalized_fef(0.25).unwrap(), 0.0);
        assert_eq!(normalized_fef(1.0).unwrap(), 1.0);
        assert!((normalized_fef(0.6).unwrap() - 0.2).abs() < 1e-15);
        assert!(matches!(normalized_fef(1.1), Err(Error::OutOfRange { .. })));
        assert!(matches!(normalized_fef(-0.1), Err(Error::OutOfRange { .. })));
        assert!(matches!(normalized_fef(f64::NAN), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn report_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let basis = GeneratorBasis::build(2).unwrap();
        let cfg = OracleConfig {
            restarts: 4,
            ..OracleConfig::with_seed(1)
        };
        for _ in 0..5 {
            let rho = sampling::random_density_matrix(2, 2, &mut rng);
            let rep = FefReport::compute(&rho, &basis, Some(&cfg)).unwrap();
            let exact = rep.exact_two_qubit.unwrap();
            assert!(rep.fidelity <= rep.upper_bound + 1e-9);
            assert!(exact >= rep.fidelity - 1e-9 && exact <= rep.upper_bound + 1e-9);
            assert!(rep.oracle_lower.unwrap() <= rep.upper_bound + 1e-7);
            assert_eq!(rep.normalized, Some((2.0 * exact - 1.0).max(0.0)));
        }
        let q = DensityMatrix::max_entangled_projector(3).unwrap();
        let rep = FefReport::compute(&q, &GeneratorBasis::build(3).unwrap(), None).unwrap();
        assert_eq!(rep.exact_two_qubit, None);
        assert!((rep.threshold - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn works_on_unnormalized_operators() {
        let op = PositiveOperator::from(DensityMatrix::max_entangled_projector(2).unwrap());
        assert!((fidelity(&op).unwrap() - 1.0).abs() < 1e-14);
    }
}
