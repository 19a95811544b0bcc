//! Symbolic Fourier–Laplace transforms as exponential-rational sums.

mod eval;
mod quadrature;
mod term;
mod zero;

pub use eval::{evaluate_exact, evaluate_numeric, format_sci, ExpValue};
pub use quadrature::{gauss_legendre, quadrature_oracle, quadrature_oracle_with, simplex_integral};
pub use term::{
    group_by_vertex, simplex_transform, simplicial_cone_transform, transform_cones,
    transform_function, transform_polyconical, TransformSum, TransformTerm,
};
pub use zero::{
    is_decision_exact, is_zero, is_zero_with, numerators, Numerator, Polynomial, ZeroTest,
};
