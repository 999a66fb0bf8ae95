//! Reduction criterion and the filtering decision for the generalized
//! distillation protocol.
//!
//! A state violating the reduction criterion is distillable. If its fidelity
//! already exceeds `1/d` the protocol applies directly. If even the Ky Fan
//! upper bound on the fully entangled fraction is at most `1/d`, no local
//! unitary can lift the fidelity above `1/d`, so a filtering step must come
//! first. Between the two the bound does not decide.

use serde::Serialize;

use crate::error::Result;
use crate::fef::{fidelity, BoundEvaluator};
use crate::generators::GeneratorBasis;
use crate::linalg::{self, Subsystem};
use crate::state::{example_family_rho_x, unnormalized_family_rho_x, Bipartite};

/// Slack in every threshold comparison.
pub const THRESHOLD_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    DistillDirectly,
    FilteringRequired,
    Indeterminate,
    NotKnownDistillable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Smallest eigenvalues of `ρ_A ⊗ I - ρ` and `I ⊗ ρ_B - ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReductionSpectrum {
    pub side_a: f64,
    pub side_b: f64,
}

impl ReductionSpectrum {
    pub fn min(&self) -> f64 {
        self.side_a.min(self.side_b)
    }

    pub fn violated(&self) -> bool {
        self.min() < -THRESHOLD_SLACK
    }
}

pub fn reduction_criterion<S: Bipartite + ?Sized>(rho: &S) -> Result<ReductionSpectrum> {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let a_part = linalg::kron(&rho.reduced(Subsystem::A), &linalg::identity(db)) - rho.matrix();
    let b_part = linalg::kron(&linalg::identity(da), &rho.reduced(Subsystem::B)) - rho.matrix();
    Ok(ReductionSpectrum {
        side_a: linalg::min_eigenvalue(&a_part)?,
        side_b: linalg::min_eigenvalue(&b_part)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistillAdvice {
    pub violates_reduction: bool,
    pub min_reduction_eigenvalue: f64,
    pub reduction: ReductionSpectrum,
    pub fidelity: f64,
    pub upper_bound: f64,
    /// `1/d`.
    pub threshold: f64,
    pub verdict: Verdict,
}

/// Decides whether filtering is needed before distillation.
pub fn advise<S: Bipartite + ?Sized>(rho: &S, basis: &GeneratorBasis) -> Result<DistillAdvice> {
    advise_with(rho, &BoundEvaluator::new(basis.clone())?)
}

/// [`advise`] with a reusable bound evaluator, for sweeps.
pub fn advise_with<S: Bipartite + ?Sized>(rho: &S, bound: &BoundEvaluator) -> Result<DistillAdvice> {
    let d = rho.local_dim()?;
    let threshold = 1.0 / d as f64;
    let reduction = reduction_criterion(rho)?;
    let fidelity = fidelity(rho)?;
    let upper_bound = bound.evaluate(rho)?;
    let violates_reduction = reduction.violated();
    let verdict = if !violates_reduction {
        Verdict::NotKnownDistillable
    } else if fidelity > threshold {
        Verdict::DistillDirectly
    } else if upper_bound <= threshold + THRESHOLD_SLACK {
        Verdict::FilteringRequired
    } else {
        Verdict::Indeterminate
    };
    Ok(DistillAdvice {
        violates_reduction,
        min_reduction_eigenvalue: reduction.min(),
        reduction,
        fidelity,
        upper_bound,
        threshold,
        verdict,
    })
}

/// Which reading of the two-qutrit `ρ(x)` family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RhoXFamily {
    /// Unit-trace state with a diagonal product `σ`
    /// ([`example_family_rho_x`]).
    UnitTrace,
    /// Unnormalized pure-product `σ`
    /// ([`unnormalized_family_rho_x`]).
    #[default]
    Unnormalized,
}

impl RhoXFamily {
    pub fn operator(self, x: f64) -> Result<Box<dyn Bipartite + Send + Sync>> {
        Ok(match self {
            RhoXFamily::UnitTrace => Box::new(example_family_rho_x(x)?),
            RhoXFamily::Unnormalized => Box::new(unnormalized_family_rho_x(x)?),
        })
    }
}

/// One point of the filtering-decision curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FilteringRow {
    pub x: f64,
    pub fidelity_minus_third: f64,
    pub bound_minus_third: f64,
}

/// Evaluates fidelity and Ky Fan bound, both shifted by `-1/3`, along the
/// `ρ(x)` family.
#[derive(Debug, Clone)]
pub struct FilteringCurves {
    family: RhoXFamily,
    bound: BoundEvaluator,
}

/// Sign-change abscissae of the two curves on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FilteringThresholds {
    pub fidelity_low: f64,
    pub fidelity_high: f64,
    pub bound_low: f64,
    pub bound_high: f64,
}

impl FilteringCurves {
    pub fn new(family: RhoXFamily) -> Result<Self> {
        Ok(FilteringCurves {
            family,
            bound: BoundEvaluator::new(GeneratorBasis::build(3)?)?,
        })
    }

    pub fn row(&self, x: f64) -> Result<FilteringRow> {
        let op = self.family.operator(x)?;
        Ok(FilteringRow {
            x,
            fidelity_minus_third: fidelity(op.as_ref())? - 1.0 / 3.0,
            bound_minus_third: self.bound.evaluate(op.as_ref())? - 1.0 / 3.0,
        })
    }

    pub fn advice(&self, x: f64) -> Result<DistillAdvice> {
        advise_with(self.family.operator(x)?.as_ref(), &self.bound)
    }

    /// Locates the four sign changes: a coarse scan on `steps` intervals,
    /// then bisection of each bracketing interval down to `tol`.
    /// Missing crossings are reported as NaN.
    pub fn thresholds(&self, steps: usize, tol: f64) -> Result<FilteringThresholds> {
        let fid = |x: f64| self.row(x).map(|r| r.fidelity_minus_third);
        let bnd = |x: f64| self.row(x).map(|r| r.bound_minus_third);
        let fid_crossings = crossings(&fid, steps, tol)?;
        let bnd_crossings = crossings(&bnd, steps, tol)?;
        let pick = |v: &[f64], low: bool| -> f64 {
            let found = if low {
                v.iter().find(|x| **x <= 0.5)
            } else {
                v.iter().rev().find(|x| **x > 0.5)
            };
            found.copied().unwrap_or(f64::NAN)
        };
        Ok(FilteringThresholds {
            fidelity_low: pick(&fid_crossings, true),
            fidelity_high: pick(&fid_crossings, false),
            bound_low: pick(&bnd_crossings, true),
            bound_high: pick(&bnd_crossings, false),
        })
    }
}

/// All sign changes of `f` on `[0, 1]`, each refined to an interval of
/// width `tol` and reported at its midpoint.
pub fn crossings<F: Fn(f64) -> Result<f64>>(f: &F, steps: usize, tol: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut prev_x = 0.0;
    let mut prev = f(0.0)?;
    for k in 1..=steps {
        let x = k as f64 / steps as f64;
        let v = f(x)?;
        if (prev > 0.0) != (v > 0.0) {
            out.push(bisect(f, prev_x, x, prev, tol)?);
        }
        prev_x = x;
        prev = v;
    }
    Ok(out)
}

fn bisect<F: Fn(f64) -> Result<f64>>(f: &F, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> Result<f64> {
    let lo_positive = f_lo > 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if (f(mid)? > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
