//! Direct numerical maximization of `⟨ψ₊|(I⊗U†) ρ (I⊗U)|ψ₊⟩` over `U(d)`.
//!
//! The search shares no code with the Bloch/Ky Fan path: it evaluates the
//! overlap straight from the density matrix, parameterizes
//! `U = exp(iH)` by the `d²` real entries of a Hermitian `H`, and runs a
//! Nelder-Mead ascent from several seeded starting points. Restart 0 starts
//! at `U = I`, so the result is never below the plain fidelity. The value
//! returned is a lower bound on the fully entangled fraction.

use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::state::Bipartite;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub restarts: usize,
    /// Nelder-Mead iterations per restart.
    pub max_iters: usize,
    /// A restart stops once the simplex values span less than this.
    pub step_tol: f64,
    pub seed: u64,
}

impl OracleConfig {
    pub const DEFAULT_RESTARTS: usize = 32;
    pub const DEFAULT_MAX_ITERS: usize = 500;
    pub const DEFAULT_STEP_TOL: f64 = 1e-8;

    /// Default budget (32 restarts of 500 iterations) with the given seed.
    pub fn with_seed(seed: u64) -> Self {
        OracleConfig {
            restarts: Self::DEFAULT_RESTARTS,
            max_iters: Self::DEFAULT_MAX_ITERS,
            step_tol: Self::DEFAULT_STEP_TOL,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be positive"));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be positive"));
        }
        if !(self.step_tol > 0.0 && self.step_tol.is_finite()) {
            return Err(Error::InvalidConfig("step_tol must be positive and finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub best_value: f64,
    pub best_unitary: ComplexMatrix,
    /// Index of the restart that produced the best value.
    pub best_restart: usize,
}

/// `⟨ψ₊|(I⊗U†) ρ (I⊗U)|ψ₊⟩`.
pub fn rotated_overlap(rho: &ComplexMatrix, u: &ComplexMatrix) -> f64 {
    let d = u.nrows();
    // (I⊗U)|ψ₊⟩ has amplitude U[j, i]/√d on |ij⟩
    let scale = 1.0 / (d as f64).sqrt();
    let v = DVector::from_fn(d * d, |row, _| u[(row % d, row / d)] * scale);
    (v.adjoint() * rho * &v)[(0, 0)].re
}

/// `exp(iH)` for the Hermitian `H` encoded by `params`: `d` diagonal
/// entries followed by (re, im) of each upper off-diagonal entry.
pub fn unitary_from_params(params: &[f64], d: usize) -> ComplexMatrix {
    debug_assert_eq!(params.len(), d * d);
    let mut h = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        h[(k, k)] = Complex64::new(params[k], 0.0);
    }
    let mut idx = d;
    for k in 0..d {
        for l in k + 1..d {
            let z = Complex64::new(params[idx], params[idx + 1]);
            h[(k, l)] = z;
            h[(l, k)] = z.conj();
            idx += 2;
        }
    }
    let eig = SymmetricEigen::new(h);
    let phases = eig.eigenvalues.map(|t| Complex64::new(0.0, t).exp());
    let v = &eig.eigenvectors;
    v * ComplexMatrix::from_diagonal(&phases) * v.adjoint()
}

/// Best overlap found over all restarts. Deterministic for a fixed
/// `(rho, cfg)`; restarts run in parallel and are reduced by value with ties
/// going to the lower restart index.
pub fn oracle_fef<S: Bipartite + ?Sized>(rho: &S, cfg: &OracleConfig) -> Result<OracleResult> {
    cfg.validate()?;
    let d = rho.local_dim()?;
    let m = rho.matrix();
    let n = d * d;

    let runs: Vec<(f64, Vec<f64>)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| {
            let start = if restart == 0 {
                vec![0.0; n]
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(restart as u64);
                (0..n)
                    .map(|_| std::f64::consts::FRAC_PI_2 * rng.sample::<f64, _>(StandardNormal))
                    .collect()
            };
            let objective = |p: &[f64]| -rotated_overlap(m, &unitary_from_params(p, d));
            let (x, f) = nelder_mead(objective, start, 0.25, cfg.max_iters, cfg.step_tol);
            (-f, x)
        })
        .collect();

    let (best_restart, (best_value, best_params)) = runs
        .into_iter()
        .enumerate()
        .reduce(|best, cur| if cur.1 .0 > best.1 .0 { cur } else { best })
        .expect("at least one restart");
    Ok(OracleResult {
        best_value,
        best_unitary: unitary_from_params(&best_params, d),
        best_restart,
    })
}

/// Minimizes `f` from `x0` with an axis-aligned initial simplex of size
/// `step`. Returns the best vertex and its value.
fn nelder_mead<F: Fn(&[f64]) -> f64>(f: F, x0: Vec<f64>, step: f64, max_iters: usize, tol: f64) -> (Vec<f64>, f64) {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let f0 = f(&x0);
    simplex.push((x0.clone(), f0));
    for i in 0..n {
        let mut x = x0.clone();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let along =
        |from: &[f64], to: &[f64], t: f64| -> Vec<f64> { from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect() };

    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[n].1 - simplex[0].1 < tol {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].0.clone();
        let f_worst = simplex[n].1;

        let xr = along(&centroid, &worst, -REFLECT);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(&centroid, &worst, -REFLECT * EXPAND);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < f_worst {
                let xc = along(&centroid, &xr, CONTRACT);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(&centroid, &worst, CONTRACT);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < fr.min(f_worst) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let x = along(&best, &vertex.0, SHRINK);
                    let fx = f(&x);
                    *vertex = (x, fx);
                }
            }
        }
    }
    simplex
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty simplex")
}
