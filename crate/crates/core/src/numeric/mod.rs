//! Small numerical building blocks: quadrature, root bracketing, interpolation.

pub mod interp;
pub mod lune;
pub mod quadrature;
pub mod roots;
