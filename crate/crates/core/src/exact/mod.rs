//! Exact reference computations.

mod racah;
mod tridiag;
mod wigner_d;

pub use racah::{sixj_exact, sixj_f64, SqrtRational};
pub use tridiag::{eigen_6j_oracle, j23sq_operator, SpectralDecomposition, TridiagonalOperator};
pub use wigner_d::{wigner_d, wigner_d_column, wigner_d_matrix};

