//! Exact algebra of polyhedral indicator functions.
//!
//! Functions in the algebra of polyhedra are stored as rational weights on the
//! cells of a hyperplane arrangement. On top of that representation the crate
//! computes tangent cones, symbolic Fourier–Laplace transforms as
//! exponential-rational sums with an exact zero test, algebraic and
//! geometric vertices, and two certified decompositions: a signed sum of
//! simplices spanned by algebraic vertices, and a sum of tangent cones at
//! algebraic vertices plus line-cones.

pub mod cones;
pub mod decomposition;

pub mod error;
pub mod io;

pub mod kernel;
pub mod par;
pub mod polyfun;
pub mod transform;

pub use error::{Error, Result};
pub use kernel::{Point, Q};
pub use polyfun::PolyhedralFunction;
