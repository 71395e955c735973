/// Numerical tolerances shared by the quadrature and root solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute tolerance of the adaptive lune-area quadrature.
    pub quad_abs: f64,
    /// Bracket width at which bisection stops.
    pub root: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quad_abs: 1e-10,
            root: 1e-12,
        }
    }
}
