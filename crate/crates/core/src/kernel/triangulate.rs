//! Pulling triangulations: fan from the lexicographically smallest generator,
//! recursing into the facets that avoid it.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{det, rank};
use super::polyhedron::{ConvexPolyhedron, Described};
use super::rational::{dot, q, sub, Point, Q};
use crate::cones::Cone;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    #[serde(with = "super::rational::serde_q::mat")]
    pub vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Self {
        Self { vertices }
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices.first().map_or(0, Vec::len)
    }

    fn edge_matrix(&self) -> Vec<Vec<Q>> {
        let v0 = &self.vertices[0];
        self.vertices[1..].iter().map(|v| sub(v, v0)).collect()
    }

    /// `det[v_1 - v_0, ..., v_d - v_0]`.
    pub fn signed_det(&self) -> Q {
        det(&self.edge_matrix())
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() != self.ambient_dim() + 1 || self.signed_det().is_zero()
    }

    pub fn volume(&self) -> Q {
        let d = self.ambient_dim();
        let mut fact = Q::one();
        for k in 2..=d {
            fact *= q(k as i64);
        }
        num_traits::Signed::abs(&self.signed_det()) / fact
    }

    pub fn to_polyhedron(&self) -> Option<ConvexPolyhedron> {
        match ConvexPolyhedron::from_generators(self.ambient_dim(), &self.vertices, &[], &[]) {
            Described::Polyhedron(p) => Some(p),
            Described::Empty => None,
        }
    }

    /// Sorted vertex list, the canonical form used for set comparisons.
    pub fn canonical(&self) -> Simplex {
        let mut v = self.vertices.clone();
        v.sort();
        Simplex { vertices: v }
    }
}

/// Pulling triangulation of the pointed cone spanned by `gens` whose valid
/// inequalities (`row·g <= 0`) include every facet. Returns index sets.
pub(crate) fn pulling(gens: &[Vec<Q>], rows: &[Vec<Q>]) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..gens.len()).collect();
    let k = rank(gens);
    if k == 0 {
        return Vec::new();
    }
    let tight: Vec<Vec<bool>> = rows
        .iter()
        .map(|a| gens.iter().map(|g| dot(a, g).is_zero()).collect())
        .collect();
    let mut out = Vec::new();
    pull(gens, &tight, &all, k, &mut Vec::new(), &mut out);
    out
}

fn pull(
    gens: &[Vec<Q>],
    tight: &[Vec<bool>],
    face: &[usize],
    k: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if k == 1 {
        let mut s = stack.clone();
        s.push(face[0]);
        out.push(s);
        return;
    }
    let r0 = *face
        .iter()
        .min_by(|&&a, &&b| gens[a].cmp(&gens[b]))
        .expect("nonempty face");
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for t in tight {
        let sub_face: Vec<usize> = face.iter().copied().filter(|&i| t[i]).collect();
        if sub_face.len() == face.len() || sub_face.contains(&r0) || sub_face.is_empty() {
            continue;
        }
        if facets.contains(&sub_face) {
            continue;
        }
        let rows: Vec<Vec<Q>> = sub_face.iter().map(|&i| gens[i].clone()).collect();
        if rank(&rows) == k - 1 {
            facets.push(sub_face);
        }
    }
    facets.sort();
    stack.push(r0);
    for f in &facets {
        pull(gens, tight, f, k - 1, stack, out);
    }
    stack.pop();
}

/// Triangulate a bounded full-dimensional polytope using only its vertices.
pub fn triangulate_polytope(poly: &ConvexPolyhedron) -> Result<Vec<Simplex>> {
    if !poly.is_bounded() {
        return Err(Error::Unbounded);
    }
    if !poly.is_full_dimensional() {
        return Err(Error::LowDimensional);
    }
    let gens: Vec<Vec<Q>> = poly
        .vertices()
        .iter()
        .map(|v| {
            let mut g = v.clone();
            g.push(Q::one());
            g
        })
        .collect();
    let rows: Vec<Vec<Q>> = poly
        .halfspaces()
        .iter()
        .map(|h| {
            let mut r = h.normal.clone();
            r.push(-h.offset.clone());
            r
        })
        .collect();
    let mut simplices: Vec<Simplex> = pulling(&gens, &rows)
        .into_iter()
        .map(|idx| {
            let mut vs: Vec<Point> = idx.iter().map(|&i| poly.vertices()[i].clone()).collect();
            vs.sort();
            Simplex::new(vs)
        })
        .collect();
    simplices.sort();
    Ok(simplices)
}

/// A triangulated cone piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConePiece {
    Simplicial(Cone),
    /// Cone with nontrivial lineality, returned unsubdivided.
    LineCone(Cone),
}

/// Split a cone into simplicial cones with the same apex. Lower-dimensional
/// pointed cones are split too (their pieces have fewer than `d` generators).
pub fn triangulate_cone(cone: &Cone) -> Vec<ConePiece> {
    if cone.is_line_cone() {
        return vec![ConePiece::LineCone(cone.clone())];
    }
    let gens = cone.generators();
    if gens.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<Q>> = cone
        .constraints()
        .iter()
        .map(|h| h.normal.clone())
        .collect();
    let mut pieces: Vec<Cone> = pulling(gens, &rows)
        .into_iter()
        .map(|idx| {
            let mut g: Vec<Vec<Q>> = idx.iter().map(|&i| gens[i].clone()).collect();
            g.sort();
            Cone::simplicial_unchecked(cone.apex().to_vec(), g)
        })
        .collect();
    pieces.sort_by(|a, b| a.generators().cmp(b.generators()));
    pieces.into_iter().map(ConePiece::Simplicial).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::polyhedron::{dual_description, Halfspace, PolyhedronSpec};
    use crate::kernel::rational::qvec;

    fn cube(d: usize) -> ConvexPolyhedron {
        let mut h = Vec::new();
        for i in 0..d {
            let mut e = vec![Q::zero(); d];
            e[i] = Q::one();
            h.push(Halfspace::new(e.clone(), Q::one()));
            e[i] = -Q::one();
            h.push(Halfspace::new(e, Q::zero()));
        }
        dual_description(d, &PolyhedronSpec::H(h))
            .into_option()
            .unwrap()
    }

    #[test]
    fn square_splits_along_diagonal() {
        let t = triangulate_polytope(&cube(2)).unwrap();
        assert_eq!(t.len(), 2);
        for s in &t {
            assert!(s.vertices.contains(&qvec(&[0, 0])));
            assert!(s.vertices.contains(&qvec(&[1, 1])));
        }
    }

    #[test]
    fn cube_gives_six_tetrahedra() {
        let t = triangulate_polytope(&cube(3)).unwrap();
        assert_eq!(t.len(), 6);
        let total: Q = t.iter().map(Simplex::volume).sum();
        assert_eq!(total, q(1));
        assert!(t
            .iter()
            .all(|s| s.volume() == crate::kernel::rational::qf(1, 6)));
    }

    #[test]
    fn simplex_is_its_own_triangulation() {
        let s = Simplex::new(vec![
            qvec(&[0, 0, 0]),
            qvec(&[1, 0, 0]),
            qvec(&[0, 2, 0]),
            qvec(&[0, 0, 3]),
        ]);
        let t = triangulate_polytope(&s.to_polyhedron().unwrap()).unwrap();
        assert_eq!(t, vec![s.canonical()]);
    }

    #[test]
    fn low_dimensional_is_rejected() {
        let seg = Simplex::new(vec![qvec(&[0, 0]), qvec(&[1, 1])]);
        let p = ConvexPolyhedron::from_generators(2, &seg.vertices, &[], &[])
            .into_option()
            .unwrap();
        assert_eq!(triangulate_polytope(&p), Err(Error::LowDimensional));
    }
}
