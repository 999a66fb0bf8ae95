//! Fully entangled fraction of bipartite states: a Ky Fan norm upper bound
//! in any dimension, the exact two-qubit value, a reduction-criterion
//! distillation advisor, a three-qubit concurrence inequality, and a direct
//! unitary search used to cross-check all of them.

pub mod bloch;
pub mod cli;
pub mod distill;
pub mod error;
pub mod fef;
pub mod generators;
pub mod linalg;
pub mod oracle;
pub mod sampling;
pub mod state;
pub mod tripartite;

pub use error::{Error, Result};
pub use fef::{fef_two_qubit_bell, fef_two_qubit_kyfan, fef_upper_bound, fidelity, normalized_fef, FefReport};
pub use generators::GeneratorBasis;
pub use linalg::ComplexMatrix;
pub use state::{Bipartite, DensityMatrix, PositiveOperator};
