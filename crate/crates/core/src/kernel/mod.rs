//! Exact rational linear algebra and polyhedral primitives.

pub mod arrangement;
pub(crate) mod dd;
pub mod hyperplane;
pub mod linalg;
pub mod polyhedron;
pub mod rational;
pub mod triangulate;

pub use arrangement::{arrangement, Cell, CellComplex, Location, SignVector};
pub use hyperplane::{Hyperplane, OrientedHyperplane};
pub use polyhedron::{
    dual_description, ConvexPolyhedron, Described, Face, Halfspace, PolyhedronSpec,
};
pub use rational::{format_q, parse_q, q, qf, qvec, Point, Q};
pub use triangulate::{triangulate_cone, triangulate_polytope, ConePiece, Simplex};
