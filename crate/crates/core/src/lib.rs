//! Exact and semiclassical evaluation of Wigner 6j-symbols.
//!
//! The exact side is a Racah sum in big-integer arithmetic plus the
//! eigenvectors of the tridiagonal recoupling operator. The asymptotic side
//! maps the pair of recoupling operators onto a rotated pair of angular
//! momentum components, which turns the 6j-symbol into a Wigner d-matrix
//! element with a tilt angle fixed by matching phase-space areas.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// `num_traits::Float` goes unused whenever std is linked into the build.
#![allow(unused_imports)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod airy;
pub mod config;
pub mod dsphere;
pub mod error;
pub mod exact;
pub mod numeric;
pub mod spin;
pub mod symbol;
pub mod tetra;
pub mod uniform;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use exact::{eigen_6j_oracle, j23sq_operator, sixj_exact, wigner_d, SqrtRational};
pub use spin::{intermediate_bounds, triangle_satisfied, Bounds, SixJArguments, Spin, Triad};
pub use tetra::{Classification, Tetrahedron};
pub use uniform::{gamma_parity, phi_zero, ponzano_regge_estimate, solve_beta, uniform_sixj, Regime, UniformResult};
