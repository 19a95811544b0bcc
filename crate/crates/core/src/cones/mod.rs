//! Cones, tangent cones, the Brianchon–Gram expansion and star reduction.

mod brianchon;
mod cone;
mod star;
mod tangent;

pub use brianchon::{brianchon_gram, brianchon_gram_terms, FaceCone};
pub use cone::{cone_sum_function, dual_cone, generic_direction, Cone, PolyconicalFunction};
pub use star::{star_reduction, StarReduction};
pub use tangent::{is_geometric_vertex, tangent_cone, tangent_cone_jump_rank};
