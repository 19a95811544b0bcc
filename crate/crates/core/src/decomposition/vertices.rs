use serde::Serialize;

use crate::cones::{is_geometric_vertex, tangent_cone};
use crate::kernel::rational::{Point, Q};
use crate::par;
use crate::polyfun::PolyhedralFunction;
use crate::transform::{is_zero_with, transform_polyconical, TransformSum, ZeroTest};

/// Status of one candidate vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexInfo {
    #[serde(with = "crate::kernel::rational::serde_q::vec")]
    pub point: Point,
    pub algebraic: bool,
    pub geometric: bool,
    /// Number of terms in the tangent-cone transform.
    pub transform_terms: usize,
    #[serde(skip)]
    pub transform: TransformSum,
}

/// Algebraic and geometric vertices among the arrangement 0-faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    #[serde(with = "crate::kernel::rational::serde_q::mat")]
    pub algebraic: Vec<Point>,
    #[serde(with = "crate::kernel::rational::serde_q::mat")]
    pub geometric: Vec<Point>,
    pub per_vertex: Vec<VertexInfo>,
}

/// Whether `tcone(f, v)` has a nonzero transform.
pub fn is_algebraic_vertex(f: &PolyhedralFunction, v: &[Q]) -> bool {
    is_algebraic_vertex_with(f, v, ZeroTest::Auto { offset: 0 })
}

pub fn is_algebraic_vertex_with(f: &PolyhedralFunction, v: &[Q], test: ZeroTest) -> bool {
    !is_zero_with(&transform_polyconical(&tangent_cone(f, v)), test)
}

fn inspect(f: &PolyhedralFunction, v: &Point, test: ZeroTest) -> VertexInfo {
    let transform = transform_polyconical(&tangent_cone(f, v));
    VertexInfo {
        point: v.clone(),
        algebraic: !is_zero_with(&transform, test),
        geometric: is_geometric_vertex(f, v),
        transform_terms: transform.len(),
        transform,
    }
}

/// Classify every arrangement vertex of `f`. Any algebraic vertex is one of
/// them: elsewhere the tangent cone is invariant along some line.
pub fn algebraic_vertices(f: &PolyhedralFunction) -> VertexReport {
    algebraic_vertices_with(f, ZeroTest::Auto { offset: 0 })
}

pub fn algebraic_vertices_with(f: &PolyhedralFunction, test: ZeroTest) -> VertexReport {
    let per_vertex = par::map(f.arrangement_vertices(), |v| inspect(f, v, test));
    VertexReport {
        algebraic: per_vertex
            .iter()
            .filter(|i| i.algebraic)
            .map(|i| i.point.clone())
            .collect(),
        geometric: per_vertex
            .iter()
            .filter(|i| i.geometric)
            .map(|i| i.point.clone())
            .collect(),
        per_vertex,
    }
}

pub fn geometric_vertices(f: &PolyhedralFunction) -> Vec<Point> {
    par::map(f.arrangement_vertices(), |v| {
        is_geometric_vertex(f, v).then(|| v.clone())
    })
    .into_iter()
    .flatten()
    .collect()
}

/// The lexicographically smallest algebraic vertex.
pub fn first_algebraic_vertex(f: &PolyhedralFunction) -> Option<Point> {
    f.arrangement_vertices()
        .iter()
        .find(|v| is_algebraic_vertex(f, v))
        .cloned()
}
