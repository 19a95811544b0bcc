use crate::kernel::linalg::rank;
use crate::kernel::rational::Q;
use crate::polyfun::PolyhedralFunction;

use super::cone::{Cone, PolyconicalFunction};

/// `tcone(f, v) = sum w_i [tcone(P_i, v)]` over the nonzero arrangement
/// cells whose closure contains `v`. The cones are internally disjoint.
pub fn tangent_cone(f: &PolyhedralFunction, v: &[Q]) -> PolyconicalFunction {
    let terms = f
        .cells()
        .filter(|(p, _)| p.contains(v))
        .map(|(p, w)| (w.clone(), Cone::tangent(p, v)))
        .collect();
    PolyconicalFunction::new(v.to_vec(), terms).expect("cones share the apex")
}

/// Directions `u` with `tcone(f, v)` invariant under translation by `u`,
/// given as a rank: the stabilizer is trivial iff the jump hyperplanes of
/// the tangent cone have normals spanning `R^d`.
pub fn tangent_cone_jump_rank(f: &PolyhedralFunction, v: &[Q]) -> usize {
    let t = tangent_cone(f, v).to_function();
    let normals: Vec<Vec<Q>> = t
        .hyperplanes()
        .iter()
        .map(|h| h.normal().to_vec())
        .collect();
    rank(&normals)
}

/// A geometric vertex: the tangent cone is nonzero and not a union of
/// parallel lines.
pub fn is_geometric_vertex(f: &PolyhedralFunction, v: &[Q]) -> bool {
    tangent_cone_jump_rank(f, v) == f.ambient_dim() && !tangent_cone(f, v).is_empty()
}
