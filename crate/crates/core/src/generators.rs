//! Generalized Gell-Mann generators of SU(d), normalized to
//! `Tr(λ_i λ_j) = 2 δ_ij`.
//!
//! Canonical ordering: the symmetric off-diagonal generators
//! `E_kl + E_lk` for `k < l` in lexicographic order, then the antisymmetric
//! ones `-i(E_kl - E_lk)` in the same order, then the `d - 1` diagonal
//! generators `sqrt(2 / (l(l+1))) (Σ_{k<l} E_kk - l E_ll)`. For `d = 2` this
//! is `(σ_x, σ_y, σ_z)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RealMatrix};

/// Tolerance on `|o oᵀ - I|` accepted by [`GeneratorBasis::rotate`].
pub const ORTHOGONAL_TOL: f64 = 1e-9;

/// Which family a canonical generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Symmetric,
    Antisymmetric,
    Diagonal,
    /// Produced by a rotation; no longer a single family.
    Mixed,
}

#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    d: usize,
    generators: Vec<ComplexMatrix>,
    kinds: Vec<GeneratorKind>,
}

impl GeneratorBasis {
    /// The canonical generalized Gell-Mann basis for `d >= 2`.
    pub fn build(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|k| (k + 1..d).map(move |l| (k, l))).collect();
        let mut generators = Vec::with_capacity(d * d - 1);
        let mut kinds = Vec::with_capacity(d * d - 1);

        for &(k, l) in &pairs {
            let mut g = ComplexMatrix::zeros(d, d);
            g[(k, l)] = Complex64::new(1.0, 0.0);
            g[(l, k)] = Complex64::new(1.0, 0.0);
            generators.push(g);
            kinds.push(GeneratorKind::Symmetric);
        }
        for &(k, l) in &pairs {
            let mut g = ComplexMatrix::zeros(d, d);
            g[(k, l)] = Complex64::new(0.0, -1.0);
            g[(l, k)] = Complex64::new(0.0, 1.0);
            generators.push(g);
            kinds.push(GeneratorKind::Antisymmetric);
        }
        for l in 1..d {
            let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
            let mut g = ComplexMatrix::zeros(d, d);
            for k in 0..l {
                g[(k, k)] = Complex64::new(scale, 0.0);
            }
            g[(l, l)] = Complex64::new(-(l as f64) * scale, 0.0);
            generators.push(g);
            kinds.push(GeneratorKind::Diagonal);
        }
        Ok(GeneratorBasis { d, generators, kinds })
    }

    /// Local Hilbert-space dimension `d`.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Number of generators, `d² - 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn kinds(&self) -> &[GeneratorKind] {
        &self.kinds
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ComplexMatrix> {
        self.generators.iter()
    }

    /// Gram matrix `G_ij = Tr(λ_i λ_j)`; `2 I` for a valid basis.
    pub fn gram(&self) -> RealMatrix {
        let n = self.len();
        RealMatrix::from_fn(n, n, |i, j| {
            trace_of_product(&self.generators[i], &self.generators[j]).re
        })
    }

    /// Largest violation of the completeness relation
    /// `Σ_j (λ_j)_{ki} (λ_j)_{mn} = 2 δ_im δ_kn - (2/d) δ_ki δ_mn`
    /// over all index tuples.
    pub fn check_completeness(&self) -> f64 {
        let d = self.d;
        let inv_d = 2.0 / d as f64;
        let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        let mut worst = 0.0f64;
        for k in 0..d {
            for i in 0..d {
                for m in 0..d {
                    for n in 0..d {
                        let sum: Complex64 = self.generators.iter().map(|g| g[(k, i)] * g[(m, n)]).sum();
                        let expected = 2.0 * delta(i, m) * delta(k, n) - inv_d * delta(k, i) * delta(m, n);
                        worst = worst.max((sum - Complex64::new(expected, 0.0)).norm());
                    }
                }
            }
        }
        worst
    }

    /// The rotated basis `λ'_i = Σ_j o_ij λ_j` for a real orthogonal `o`.
    pub fn rotate(&self, o: &RealMatrix) -> Result<Self> {
        let n = self.len();
        if o.shape() != (n, n) {
            return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", o.nrows(), o.ncols())));
        }
        let deviation = (o * o.transpose() - RealMatrix::identity(n, n)).amax();
        if !deviation.is_finite() || deviation > ORTHOGONAL_TOL {
            return Err(Error::NotOrthogonal { deviation });
        }
        let generators = (0..n)
            .map(|i| {
                self.generators
                    .iter()
                    .enumerate()
                    .fold(ComplexMatrix::zeros(self.d, self.d), |acc, (j, g)| {
                        acc + g * Complex64::new(o[(i, j)], 0.0)
                    })
            })
            .collect();
        let kinds = (0..n)
            .map(|i| {
                let mut support = (0..n).filter(|&j| o[(i, j)] != 0.0);
                match (support.next(), support.next()) {
                    (Some(j), None) => self.kinds[j],
                    _ => GeneratorKind::Mixed,
                }
            })
            .collect();
        Ok(GeneratorBasis {
            d: self.d,
            generators,
            kinds,
        })
    }
}

/// `Tr(a b)` without forming the product.
pub(crate) fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}
