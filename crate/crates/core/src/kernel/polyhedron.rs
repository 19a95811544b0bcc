//! Convex polyhedra carrying both the H- and V-representation.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::dd::DdState;
use super::hyperplane::Hyperplane;
use super::linalg::{rank, rank_of};
use super::rational::{add, dot, neg, primitive, q, scale, Point, Q};

/// `<normal, x> <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "super::rational::serde_q::vec")]
    pub normal: Vec<Q>,
    #[serde(with = "super::rational::serde_q")]
    pub offset: Q,
}

impl Halfspace {
    pub fn new(normal: Vec<Q>, offset: Q) -> Self {
        Self { normal, offset }
    }

    /// `<normal, x> - offset`; nonpositive inside.
    pub fn slack(&self, x: &[Q]) -> Q {
        dot(&self.normal, x) - &self.offset
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.slack(x) <= Q::zero()
    }

    /// Homogenized row `[normal, -offset]` for `(x, t)`.
    pub(crate) fn homogenized(&self) -> Vec<Q> {
        let mut r = self.normal.clone();
        r.push(-self.offset.clone());
        r
    }

    pub fn boundary(&self) -> Option<Hyperplane> {
        Hyperplane::canonical(&self.normal, &self.offset).map(|(h, _)| h)
    }

    /// Positive rescaling to a primitive integer row, for deduplication.
    fn normalized(&self) -> Halfspace {
        let p = primitive(&self.homogenized());
        let n = p.len() - 1;
        Halfspace {
            normal: p[..n].to_vec(),
            offset: -p[n].clone(),
        }
    }
}

/// A polyhedron given by one representation only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyhedronSpec {
    H(Vec<Halfspace>),
    V {
        vertices: Vec<Point>,
        rays: Vec<Vec<Q>>,
        lineality: Vec<Vec<Q>>,
    },
}

/// Result of [`dual_description`]: an explicit empty marker or a polyhedron.
#[derive(Clone, Debug)]
pub enum Described {
    Empty,
    Polyhedron(ConvexPolyhedron),
}

impl Described {
    pub fn into_option(self) -> Option<ConvexPolyhedron> {
        match self {
            Described::Empty => None,
            Described::Polyhedron(p) => Some(p),
        }
    }
}

/// Intersection of half-spaces with its dual vertex/ray/lineality form.
///
/// `vertices` holds one point per minimal face; when the lineality space is
/// nontrivial those points are representatives, not geometric vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolyhedron {
    ambient_dim: usize,
    halfspaces: Vec<Halfspace>,
    vertices: Vec<Point>,
    rays: Vec<Vec<Q>>,
    lineality: Vec<Vec<Q>>,
    dim: usize,
}

/// A face as index sets into the parent's vertex and ray lists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
    pub dim: usize,
}

pub fn dual_description(ambient_dim: usize, spec: &PolyhedronSpec) -> Described {
    match spec {
        PolyhedronSpec::H(hs) => ConvexPolyhedron::from_halfspaces(ambient_dim, hs),
        PolyhedronSpec::V {
            vertices,
            rays,
            lineality,
        } => ConvexPolyhedron::from_generators(ambient_dim, vertices, rays, lineality),
    }
}

impl ConvexPolyhedron {
    pub fn from_halfspaces(ambient_dim: usize, halfspaces: &[Halfspace]) -> Described {
        let n = ambient_dim + 1;
        let mut st = DdState::full(n);
        let mut t_row = vec![Q::zero(); n];
        t_row[ambient_dim] = -Q::one();
        st.add(&t_row);
        for h in halfspaces {
            debug_assert_eq!(h.normal.len(), ambient_dim);
            if h.normal.iter().all(Zero::is_zero) {
                if h.offset < Q::zero() {
                    return Described::Empty;
                }
                continue;
            }
            st.add(&h.homogenized());
        }
        Self::from_state(ambient_dim, halfspaces.to_vec(), &st)
    }

    fn from_state(ambient_dim: usize, halfspaces: Vec<Halfspace>, st: &DdState) -> Described {
        if st.homogenized_is_empty() {
            return Described::Empty;
        }
        let d = ambient_dim;
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in &st.rays {
            if r[d].is_zero() {
                rays.push(primitive(&r[..d]));
            } else {
                let t = &r[d];
                vertices.push(r[..d].iter().map(|x| x / t).collect::<Vec<Q>>());
            }
        }
        let lineality: Vec<Vec<Q>> = st.lineality.iter().map(|l| primitive(&l[..d])).collect();
        vertices.sort();
        rays.sort();
        let mut p = ConvexPolyhedron {
            ambient_dim,
            halfspaces,
            vertices,
            rays,
            lineality,
            dim: 0,
        };
        p.dim = p.compute_dim();
        p.prune_halfspaces();
        Described::Polyhedron(p)
    }

    pub fn from_generators(
        ambient_dim: usize,
        vertices: &[Point],
        rays: &[Vec<Q>],
        lineality: &[Vec<Q>],
    ) -> Described {
        if vertices.is_empty() {
            return Described::Empty;
        }
        let d = ambient_dim;
        let n = d + 1;
        // Dual cone {y : g·y >= 0 for every homogenized generator g}.
        let mut gens: Vec<Vec<Q>> = Vec::new();
        for v in vertices {
            let mut g = v.clone();
            g.push(Q::one());
            gens.push(g);
        }
        for r in rays {
            let mut g = r.clone();
            g.push(Q::zero());
            gens.push(g);
        }
        for l in lineality {
            let mut g = l.clone();
            g.push(Q::zero());
            gens.push(neg(&g));
            gens.push(g);
        }
        let rows: Vec<Vec<Q>> = gens.iter().map(|g| neg(g)).collect();
        let dual = DdState::from_constraints(n, &rows);
        let mut hs = Vec::new();
        // y = (a, c) means <a, x> + c >= 0, i.e. <-a, x> <= c.
        for y in &dual.rays {
            if y[..d].iter().all(Zero::is_zero) {
                continue;
            }
            hs.push(Halfspace::new(neg(&y[..d]), y[d].clone()));
        }
        for y in &dual.lineality {
            if y[..d].iter().all(Zero::is_zero) {
                continue;
            }
            hs.push(Halfspace::new(neg(&y[..d]), y[d].clone()));
            hs.push(Halfspace::new(y[..d].to_vec(), -y[d].clone()));
        }
        Self::from_halfspaces(ambient_dim, &hs)
    }

    /// The whole space `R^d`.
    pub fn whole_space(ambient_dim: usize) -> ConvexPolyhedron {
        match Self::from_halfspaces(ambient_dim, &[]) {
            Described::Polyhedron(p) => p,
            Described::Empty => unreachable!("R^d is nonempty"),
        }
    }

    /// Homogenized DD state for incremental refinement.
    pub(crate) fn dd_state(&self) -> DdState {
        let d = self.ambient_dim;
        let n = d + 1;
        let mut rays = Vec::new();
        for v in &self.vertices {
            let mut g = v.clone();
            g.push(Q::one());
            rays.push(primitive(&g));
        }
        for r in &self.rays {
            let mut g = r.clone();
            g.push(Q::zero());
            rays.push(g);
        }
        let lineality = self
            .lineality
            .iter()
            .map(|l| {
                let mut g = l.clone();
                g.push(Q::zero());
                g
            })
            .collect();
        let mut t_row = vec![Q::zero(); n];
        t_row[d] = -Q::one();
        let mut constraints = vec![t_row];
        constraints.extend(self.halfspaces.iter().map(Halfspace::homogenized));
        DdState {
            n,
            lineality,
            rays,
            constraints,
        }
    }

    /// Intersect with one more half-space (a single double-description step).
    pub fn intersect_halfspace(&self, h: &Halfspace) -> Described {
        let mut st = self.dd_state();
        st.add(&h.homogenized());
        let mut hs = self.halfspaces.clone();
        hs.push(h.clone());
        Self::from_state(self.ambient_dim, hs, &st)
    }

    pub fn intersect(&self, other: &ConvexPolyhedron) -> Described {
        let mut st = self.dd_state();
        for h in &other.halfspaces {
            st.add(&h.homogenized());
        }
        let mut hs = self.halfspaces.clone();
        hs.extend(other.halfspaces.iter().cloned());
        Self::from_state(self.ambient_dim, hs, &st)
    }

    fn homogenized_generators(&self) -> Vec<Vec<Q>> {
        let mut g: Vec<Vec<Q>> = Vec::new();
        for v in &self.vertices {
            let mut x = v.clone();
            x.push(Q::one());
            g.push(x);
        }
        for r in self.rays.iter().chain(&self.lineality) {
            let mut x = r.clone();
            x.push(Q::zero());
            g.push(x);
        }
        g
    }

    fn compute_dim(&self) -> usize {
        rank(&self.homogenized_generators()).saturating_sub(1)
    }

    /// Keep implicit equalities and facet-defining inequalities, deduplicated.
    fn prune_halfspaces(&mut self) {
        let gens = self.homogenized_generators();
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for h in &self.halfspaces {
            if h.normal.iter().all(Zero::is_zero) {
                continue;
            }
            let row = h.homogenized();
            let tight: Vec<&Vec<Q>> = gens.iter().filter(|g| dot(&row, g).is_zero()).collect();
            let implicit = tight.len() == gens.len();
            if implicit || rank_of(tight.iter().copied()) == self.dim {
                let n = h.normalized();
                if seen.insert(n.clone()) {
                    kept.push(n);
                }
            }
        }
        self.halfspaces = kept;
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<Q>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Q>] {
        &self.lineality
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Strictly inside every non-implicit constraint.
    pub fn contains_relative_interior(&self, x: &[Q]) -> bool {
        self.contains(x)
            && self
                .halfspaces
                .iter()
                .filter(|h| !self.is_implicit_equality(h))
                .all(|h| h.slack(x) < Q::zero())
    }

    fn is_implicit_equality(&self, h: &Halfspace) -> bool {
        self.vertices.iter().all(|v| h.slack(v).is_zero())
            && self.rays.iter().all(|r| dot(&h.normal, r).is_zero())
    }

    /// Relative-interior point: vertex centroid plus the sum of rays.
    pub fn interior_point(&self) -> Point {
        let k = self.vertices.len();
        let mut c = vec![Q::zero(); self.ambient_dim];
        for v in &self.vertices {
            c = add(&c, v);
        }
        c = scale(&c, &(Q::one() / q(k as i64)));
        for r in &self.rays {
            c = add(&c, r);
        }
        c
    }

    /// Boundary hyperplanes of the facet inequalities.
    pub fn facet_hyperplanes(&self) -> Vec<Hyperplane> {
        let mut out: Vec<Hyperplane> = self
            .halfspaces
            .iter()
            .filter_map(Halfspace::boundary)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Indices of the vertex and ray generators tight on a constraint row.
    fn tight_sets(&self, h: &Halfspace) -> (Vec<usize>, Vec<usize>) {
        let vs = (0..self.vertices.len())
            .filter(|&i| h.slack(&self.vertices[i]).is_zero())
            .collect();
        let rs = (0..self.rays.len())
            .filter(|&i| dot(&h.normal, &self.rays[i]).is_zero())
            .collect();
        (vs, rs)
    }

    pub fn face_dim(&self, vertices: &[usize], rays: &[usize]) -> usize {
        let mut g: Vec<Vec<Q>> = Vec::new();
        for &i in vertices {
            let mut x = self.vertices[i].clone();
            x.push(Q::one());
            g.push(x);
        }
        for r in rays
            .iter()
            .map(|&i| &self.rays[i])
            .chain(self.lineality.iter())
        {
            let mut x = r.clone();
            x.push(Q::zero());
            g.push(x);
        }
        rank(&g).saturating_sub(1)
    }

    /// All nonempty faces, including the polyhedron itself, sorted by
    /// dimension and then by generator indices.
    pub fn faces(&self) -> Vec<Face> {
        let tights: Vec<(Vec<usize>, Vec<usize>)> =
            self.halfspaces.iter().map(|h| self.tight_sets(h)).collect();
        let top = (
            (0..self.vertices.len()).collect::<Vec<_>>(),
            (0..self.rays.len()).collect::<Vec<_>>(),
        );
        let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
        seen.insert(top.clone());
        let mut frontier = vec![top];
        while let Some((vs, rs)) = frontier.pop() {
            for (tv, tr) in &tights {
                let nv: Vec<usize> = vs.iter().copied().filter(|i| tv.contains(i)).collect();
                if nv.is_empty() {
                    continue;
                }
                let nr: Vec<usize> = rs.iter().copied().filter(|i| tr.contains(i)).collect();
                let key = (nv, nr);
                if seen.insert(key.clone()) {
                    frontier.push(key);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|(vertices, rays)| {
                let dim = self.face_dim(&vertices, &rays);
                Face {
                    vertices,
                    rays,
                    dim,
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices, &a.rays).cmp(&(b.dim, &b.vertices, &b.rays)));
        faces
    }

    /// Relative-interior point of a face.
    pub fn face_point(&self, face: &Face) -> Point {
        let k = face.vertices.len();
        let mut c = vec![Q::zero(); self.ambient_dim];
        for &i in &face.vertices {
            c = add(&c, &self.vertices[i]);
        }
        c = scale(&c, &(Q::one() / q(k as i64)));
        for &i in &face.rays {
            c = add(&c, &self.rays[i]);
        }
        c
    }

    /// Constraints active at `x`.
    pub fn active_halfspaces(&self, x: &[Q]) -> Vec<&Halfspace> {
        self.halfspaces
            .iter()
            .filter(|h| h.slack(x).is_zero())
            .collect()
    }

    /// Exact volume of a bounded full-dimensional polyhedron.
    pub fn volume(&self) -> Q {
        if !self.is_full_dimensional() || !self.is_bounded() {
            return Q::zero();
        }
        match super::triangulate::triangulate_polytope(self) {
            Ok(simplices) => simplices.iter().map(|s| s.volume()).sum(),
            Err(_) => Q::zero(),
        }
    }

    /// Mutual containment of generators and constraints.
    pub fn is_consistent(&self) -> bool {
        self.vertices.iter().all(|v| self.contains(v))
            && self.rays.iter().all(|r| {
                self.halfspaces
                    .iter()
                    .all(|h| dot(&h.normal, r) <= Q::zero())
            })
            && self
                .lineality
                .iter()
                .all(|l| self.halfspaces.iter().all(|h| dot(&h.normal, l).is_zero()))
    }

    /// Same point set (compared by canonical representations).
    pub fn same_set(&self, other: &ConvexPolyhedron) -> bool {
        let contains_all = |a: &ConvexPolyhedron, b: &ConvexPolyhedron| {
            b.vertices.iter().all(|v| a.contains(v))
                && b.rays
                    .iter()
                    .all(|r| a.halfspaces.iter().all(|h| dot(&h.normal, r) <= Q::zero()))
                && b.lineality
                    .iter()
                    .all(|l| a.halfspaces.iter().all(|h| dot(&h.normal, l).is_zero()))
        };
        self.ambient_dim == other.ambient_dim
            && contains_all(self, other)
            && contains_all(other, self)
    }

    pub fn translated(&self, by: &[Q]) -> ConvexPolyhedron {
        ConvexPolyhedron {
            ambient_dim: self.ambient_dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), &h.offset + dot(&h.normal, by)))
                .collect(),
            vertices: self.vertices.iter().map(|v| add(v, by)).collect(),
            rays: self.rays.clone(),
            lineality: self.lineality.clone(),
            dim: self.dim,
        }
    }
}
