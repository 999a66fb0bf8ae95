//! Three-qubit pure states cut as AB|C: Schmidt data, concurrence, and the
//! bound `F_N(ρ_AB) ≤ √(1 - C²)` tying the normalized fully entangled
//! fraction of `ρ_AB` to the AB|C concurrence.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fef::{fef_upper_bound, normalized_fef};
use crate::generators::GeneratorBasis;
use crate::linalg::{self, ComplexMatrix};
use crate::state::{DensityMatrix, PositiveOperator};

pub const NORM_TOL: f64 = 1e-10;
/// Largest negative slack accepted before the inequality counts as violated.
pub const SLACK_TOL: f64 = 1e-9;
/// Agreement required between closed forms and matrix computations.
pub const CROSS_CHECK_TOL: f64 = 1e-9;

/// Amplitudes in the order `|abc⟩ ↦ 4a + 2b + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriPureState {
    amplitudes: [Complex64; 8],
}

impl TriPureState {
    pub fn new(amplitudes: [Complex64; 8]) -> Result<Self> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NormViolation { deviation: norm - 1.0 });
        }
        Ok(TriPureState { amplitudes })
    }

    pub fn from_slice(amplitudes: &[Complex64]) -> Result<Self> {
        let arr: [Complex64; 8] = amplitudes
            .try_into()
            .map_err(|_| Error::dims("8 amplitudes", format!("{} amplitudes", amplitudes.len())))?;
        Self::new(arr)
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amplitudes
    }

    pub fn product_000() -> Self {
        let mut a = [Complex64::new(0.0, 0.0); 8];
        a[0] = Complex64::new(1.0, 0.0);
        TriPureState { amplitudes: a }
    }

    /// `(|000⟩ + |111⟩)/√2`.
    pub fn ghz() -> Self {
        let mut a = [Complex64::new(0.0, 0.0); 8];
        a[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        a[7] = a[0];
        TriPureState { amplitudes: a }
    }

    /// `α|100⟩ + β|010⟩ + γ|001⟩` with a phase on each term.
    pub fn w_phased(p: &WParams, phases: [f64; 3]) -> Self {
        let mut a = [Complex64::new(0.0, 0.0); 8];
        a[4] = Complex64::from_polar(p.alpha, phases[0]);
        a[2] = Complex64::from_polar(p.beta, phases[1]);
        a[1] = Complex64::from_polar(p.gamma, phases[2]);
        TriPureState { amplitudes: a }
    }

    pub fn w(p: &WParams) -> Self {
        Self::w_phased(p, [0.0; 3])
    }

    /// The 4×2 matrix `Ψ[(ab), c]`.
    fn reshape(&self) -> ComplexMatrix {
        DMatrix::from_fn(4, 2, |ab, c| self.amplitudes[2 * ab + c])
    }

    /// `ρ_AB = Tr_C |ψ⟩⟨ψ| = Ψ Ψ†`.
    pub fn reduced_ab(&self) -> Result<DensityMatrix> {
        let psi = self.reshape();
        let m = &psi * psi.adjoint();
        DensityMatrix::validate((&m + m.adjoint()).unscale(2.0), 2, 2)
    }
}

/// Schmidt coefficients across AB|C, `eta1 ≥ eta2 ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchmidtData {
    pub eta1: f64,
    pub eta2: f64,
}

pub fn schmidt_ab_c(psi: &TriPureState) -> Result<SchmidtData> {
    let sv = linalg::singular_values(&psi.reshape())?;
    Ok(SchmidtData {
        eta1: sv[0],
        eta2: sv[1],
    })
}

/// `2 η₁ η₂`, checked against `√(2(1 - Tr ρ_AB²))`.
pub fn concurrence_ab_c(psi: &TriPureState) -> Result<f64> {
    let s = schmidt_ab_c(psi)?;
    let from_schmidt = 2.0 * s.eta1 * s.eta2;
    let from_purity = concurrence_from_purity(psi)?;
    // squares compared: the square root is ill-conditioned near zero
    if (from_schmidt * from_schmidt - from_purity * from_purity).abs() > NORM_TOL {
        return Err(Error::CrossCheck {
            at: "concurrence".into(),
            closed: from_schmidt,
            matrix: from_purity,
        });
    }
    Ok(from_schmidt)
}

pub fn concurrence_from_purity(psi: &TriPureState) -> Result<f64> {
    let purity = psi.reduced_ab()?.purity();
    Ok((2.0 * (1.0 - purity)).max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcurrenceBound {
    pub fef_n: f64,
    pub bound: f64,
    /// `bound - fef_n`.
    pub slack: f64,
}

impl ConcurrenceBound {
    pub fn holds(&self) -> bool {
        self.slack >= -SLACK_TOL
    }
}

/// Evaluates both sides of the inequality, using the Ky Fan form of the
/// two-qubit fully entangled fraction on `ρ_AB`.
pub fn concurrence_bound_check(psi: &TriPureState, basis: &GeneratorBasis) -> Result<ConcurrenceBound> {
    if basis.dim() != 2 {
        return Err(Error::dims("qubit basis", format!("d={}", basis.dim())));
    }
    let rho_ab = psi.reduced_ab()?;
    // rounding can push a pure product's bound a hair over 1
    let fef = fef_upper_bound(&rho_ab, basis)?.min(1.0);
    let fef_n = normalized_fef(fef)?;
    let c = concurrence_ab_c(psi)?;
    let bound = (1.0 - c * c).max(0.0).sqrt();
    Ok(ConcurrenceBound {
        fef_n,
        bound,
        slack: bound - fef_n,
    })
}

/// Nonnegative, unit-norm coefficients of `α|100⟩ + β|010⟩ + γ|001⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl WParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "[0, 1]",
                });
            }
        }
        let norm = (alpha * alpha + beta * beta + gamma * gamma).sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NormViolation { deviation: norm - 1.0 });
        }
        Ok(WParams { alpha, beta, gamma })
    }

    /// `α = β = √((1 - γ²)/2)`.
    pub fn symmetric(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::OutOfRange {
                name: "gamma",
                value: gamma,
                range: "[0, 1]",
            });
        }
        let ab = ((1.0 - gamma * gamma) / 2.0).max(0.0).sqrt();
        Self::new(ab, ab, gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WClosedForms {
    pub fef_n: f64,
    pub concurrence: f64,
}

pub fn w_closed_forms(p: &WParams) -> WClosedForms {
    let (a, b, g) = (p.alpha, p.beta, p.gamma);
    let raw = -0.5 + 2.0 * a * b + 0.5 * (a * a + b * b - g * g).abs();
    WClosedForms {
        fef_n: raw.max(0.0),
        concurrence: 2.0 * g * (a * a + b * b).sqrt(),
    }
}

/// One point of the symmetric-W curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WLineRow {
    pub gamma: f64,
    pub fef_n: f64,
    pub bound: f64,
}

/// Closed-form row at `γ`, cross-checked against the matrix path.
pub fn w_line_row(gamma: f64, basis: &GeneratorBasis) -> Result<WLineRow> {
    let p = WParams::symmetric(gamma)?;
    let closed = w_closed_forms(&p);
    let matrix = concurrence_bound_check(&TriPureState::w(&p), basis)?;
    if (closed.fef_n - matrix.fef_n).abs() > CROSS_CHECK_TOL {
        return Err(Error::CrossCheck {
            at: format!("gamma={gamma}"),
            closed: closed.fef_n,
            matrix: matrix.fef_n,
        });
    }
    Ok(WLineRow {
        gamma,
        fef_n: closed.fef_n,
        bound: (1.0 - closed.concurrence * closed.concurrence).max(0.0).sqrt(),
    })
}

/// `ρ_AB` of the W family written out directly, independent of the
/// amplitude reshape: `γ²|00⟩⟨00| + |v⟩⟨v|`, `v = α|10⟩ + β|01⟩`.
pub fn w_reduced_ab_explicit(p: &WParams) -> Result<PositiveOperator> {
    let mut m = ComplexMatrix::zeros(4, 4);
    let c = |x: f64| Complex64::new(x, 0.0);
    m[(0, 0)] = c(p.gamma * p.gamma);
    m[(2, 2)] = c(p.alpha * p.alpha);
    m[(1, 1)] = c(p.beta * p.beta);
    m[(1, 2)] = c(p.alpha * p.beta);
    m[(2, 1)] = c(p.alpha * p.beta);
    PositiveOperator::validate(m, 2, 2)
}
