//! The algebra of polyhedral indicator functions.

mod function;
mod section;

pub use function::{BinaryOp, CombineOp, Evaluation, PolyhedralFunction, Support};
pub use section::{AffineChart, SignedSection};
