use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::linalg::rank;
use crate::kernel::rational::{add, dot, neg, Point, Q};
use crate::kernel::{ConvexPolyhedron, Described, Halfspace};
use crate::polyfun::PolyhedralFunction;

/// Convex cone `apex + pos(generators) + span(lineality)`.
///
/// Constructors reduce the generators to an irredundant list (the extreme
/// rays modulo lineality) and compute the facet inequalities of the cone
/// translated to the origin.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ConeRepr", into = "ConeRepr")]
pub struct Cone {
    apex: Point,
    generators: Vec<Vec<Q>>,
    lineality: Vec<Vec<Q>>,
    constraints: Vec<Halfspace>,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct ConeRepr {
    #[serde(with = "crate::kernel::rational::serde_q::vec")]
    apex: Point,
    #[serde(with = "crate::kernel::rational::serde_q::mat")]
    generators: Vec<Vec<Q>>,
    #[serde(with = "crate::kernel::rational::serde_q::mat", default)]
    lineality: Vec<Vec<Q>>,
}

impl From<Cone> for ConeRepr {
    fn from(c: Cone) -> Self {
        ConeRepr {
            apex: c.apex,
            generators: c.generators,
            lineality: c.lineality,
        }
    }
}

impl TryFrom<ConeRepr> for Cone {
    type Error = Error;

    fn try_from(r: ConeRepr) -> Result<Self> {
        Cone::new(r.apex, &r.generators, &r.lineality)
    }
}

fn check_dims(d: usize, vs: &[Vec<Q>]) -> Result<()> {
    match vs.iter().find(|v| v.len() != d) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: d,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

impl Cone {
    pub fn new(apex: Point, generators: &[Vec<Q>], lineality: &[Vec<Q>]) -> Result<Self> {
        let d = apex.len();
        check_dims(d, generators)?;
        check_dims(d, lineality)?;
        let origin = vec![Q::zero(); d];
        let poly = match ConvexPolyhedron::from_generators(d, &[origin], generators, lineality) {
            Described::Polyhedron(p) => p,
            Described::Empty => unreachable!("a cone contains its apex"),
        };
        Ok(Self::from_origin_polyhedron(apex, &poly))
    }

    /// `{x : <a_i, x - apex> <= 0}` for the given normals.
    pub fn from_constraints(apex: Point, normals: &[Vec<Q>]) -> Result<Self> {
        let d = apex.len();
        check_dims(d, normals)?;
        let hs: Vec<Halfspace> = normals
            .iter()
            .map(|a| Halfspace::new(a.clone(), Q::zero()))
            .collect();
        let poly = match ConvexPolyhedron::from_halfspaces(d, &hs) {
            Described::Polyhedron(p) => p,
            Described::Empty => unreachable!("homogeneous systems contain 0"),
        };
        Ok(Self::from_origin_polyhedron(apex, &poly))
    }

    fn from_origin_polyhedron(apex: Point, poly: &ConvexPolyhedron) -> Self {
        Cone {
            apex,
            generators: poly.rays().to_vec(),
            lineality: poly.lineality().to_vec(),
            constraints: poly.halfspaces().to_vec(),
            dim: poly.dim(),
        }
    }

    /// Simplicial cone keeping the generators exactly as given. The caller
    /// guarantees they are linearly independent.
    pub fn simplicial_unchecked(apex: Point, generators: Vec<Vec<Q>>) -> Self {
        let mut c = Self::new(apex, &generators, &[]).expect("consistent dimensions");
        debug_assert_eq!(c.generators.len(), generators.len());
        c.generators = generators;
        c
    }

    /// The tangent cone of a polyhedron at `x`: the constraints active at
    /// `x`, made homogeneous.
    pub fn tangent(poly: &ConvexPolyhedron, x: &[Q]) -> Self {
        let normals: Vec<Vec<Q>> = poly
            .active_halfspaces(x)
            .into_iter()
            .map(|h| h.normal.clone())
            .collect();
        Self::from_constraints(x.to_vec(), &normals).expect("dimensions agree")
    }

    pub fn whole_space(apex: Point) -> Self {
        Self::from_constraints(apex, &[]).expect("no constraints")
    }

    pub fn apex(&self) -> &[Q] {
        &self.apex
    }

    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }

    pub fn lineality(&self) -> &[Vec<Q>] {
        &self.lineality
    }

    /// Facet inequalities `<a, x - apex> <= 0` (offsets are zero).
    pub fn constraints(&self) -> &[Halfspace] {
        &self.constraints
    }

    pub fn ambient_dim(&self) -> usize {
        self.apex.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// A union of parallel lines: the lineality space is nontrivial.
    pub fn is_line_cone(&self) -> bool {
        !self.lineality.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && rank(&self.generators) == self.generators.len()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        let u: Vec<Q> = x.iter().zip(&self.apex).map(|(a, b)| a - b).collect();
        self.constraints.iter().all(|h| h.contains(&u))
    }

    pub fn to_polyhedron(&self) -> ConvexPolyhedron {
        let hs: Vec<Halfspace> = self
            .constraints
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), dot(&h.normal, &self.apex)))
            .collect();
        ConvexPolyhedron::from_halfspaces(self.ambient_dim(), &hs)
            .into_option()
            .expect("cone contains its apex")
    }

    /// Indicator function; zero almost everywhere unless full-dimensional.
    pub fn indicator(&self) -> PolyhedralFunction {
        if !self.is_full_dimensional() {
            return PolyhedralFunction::zero(self.ambient_dim());
        }
        PolyhedralFunction::indicator(&self.to_polyhedron())
    }

    pub fn translated(&self, by: &[Q]) -> Self {
        let mut c = self.clone();
        c.apex = add(&self.apex, by);
        c
    }

    pub fn with_apex(&self, apex: Point) -> Self {
        let mut c = self.clone();
        c.apex = apex;
        c
    }

    /// Every generator and lineality direction of `self` lies in `other`'s
    /// direction cone.
    fn directions_within(&self, other: &Cone) -> bool {
        self.generators.iter().all(|g| {
            other
                .constraints
                .iter()
                .all(|h| dot(&h.normal, g) <= Q::zero())
        }) && self.lineality.iter().all(|l| {
            other
                .constraints
                .iter()
                .all(|h| dot(&h.normal, l).is_zero())
        })
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.apex == other.apex
            && self.dim == other.dim
            && self.directions_within(other)
            && other.directions_within(self)
    }
}

impl Eq for Cone {}

/// The dual cone `{y : <x, y> >= 0 for all x in c - apex}`, with apex 0.
pub fn dual_cone(c: &Cone) -> Cone {
    let mut normals: Vec<Vec<Q>> = c.generators.iter().map(|g| neg(g)).collect();
    for l in &c.lineality {
        normals.push(l.clone());
        normals.push(neg(l));
    }
    Cone::from_constraints(vec![Q::zero(); c.ambient_dim()], &normals).expect("dimensions agree")
}

/// Weighted sum of cone indicators sharing one apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyconicalFunction {
    ambient_dim: usize,
    apex: Point,
    terms: Vec<(Q, Cone)>,
}

impl PolyconicalFunction {
    pub fn new(apex: Point, terms: Vec<(Q, Cone)>) -> Result<Self> {
        let d = apex.len();
        for (_, c) in &terms {
            if c.ambient_dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: c.ambient_dim(),
                });
            }
            if c.apex() != apex.as_slice() {
                return Err(Error::Precondition("cones must share the apex".into()));
            }
        }
        let terms = terms.into_iter().filter(|(w, _)| !w.is_zero()).collect();
        Ok(Self {
            ambient_dim: d,
            apex,
            terms,
        })
    }

    pub fn zero(apex: Point) -> Self {
        Self {
            ambient_dim: apex.len(),
            apex,
            terms: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn apex(&self) -> &[Q] {
        &self.apex
    }

    pub fn terms(&self) -> &[(Q, Cone)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_function(&self) -> PolyhedralFunction {
        cone_sum_function(self.ambient_dim, &self.terms)
    }

    pub fn translated(&self, by: &[Q]) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            apex: add(&self.apex, by),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.translated(by)))
                .collect(),
        }
    }
}

/// `sum w_i [C_i]` as a polyhedral function.
pub fn cone_sum_function(ambient_dim: usize, terms: &[(Q, Cone)]) -> PolyhedralFunction {
    let pieces: Vec<(Q, ConvexPolyhedron)> = terms
        .iter()
        .filter(|(_, c)| c.is_full_dimensional())
        .map(|(w, c)| (w.clone(), c.to_polyhedron()))
        .collect();
    PolyhedralFunction::from_weighted_union(ambient_dim, &pieces).expect("dimensions agree")
}

/// `(1, k, k^2, ...)` for the first `k >= 1` with `<u, w> != 0` on all `ws`.
pub fn generic_direction(d: usize, ws: &[Vec<Q>]) -> Vec<Q> {
    let mut k: i64 = 1;
    loop {
        let mut u = Vec::with_capacity(d);
        let mut x = Q::one();
        for _ in 0..d {
            u.push(x.clone());
            x *= Q::from_integer(k.into());
        }
        if ws.iter().all(|w| !dot(&u, w).is_zero()) {
            return u;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qvec};

    fn quadrant() -> Cone {
        Cone::new(qvec(&[0, 0]), &[qvec(&[1, 0]), qvec(&[0, 1])], &[]).unwrap()
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = Cone::new(
            qvec(&[0, 0]),
            &[qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[0, 2])],
            &[],
        )
        .unwrap();
        assert_eq!(c.generators().len(), 2);
        assert_eq!(c, quadrant());
        assert!(c.is_simplicial());
    }

    #[test]
    fn line_cones() {
        let half = Cone::new(qvec(&[0, 0]), &[qvec(&[0, 1])], &[qvec(&[1, 0])]).unwrap();
        assert!(half.is_line_cone());
        assert!(!quadrant().is_line_cone());
        assert!(Cone::whole_space(qvec(&[0, 0, 0])).is_line_cone());
        // Opposite rays collapse into lineality.
        let line = Cone::new(qvec(&[0, 0]), &[qvec(&[1, 0]), qvec(&[-1, 0])], &[]).unwrap();
        assert!(line.is_line_cone());
        assert_eq!(line.dim(), 1);
    }

    #[test]
    fn duals() {
        assert_eq!(dual_cone(&quadrant()), quadrant());
        let half = Cone::new(qvec(&[0, 0]), &[qvec(&[0, 1])], &[qvec(&[1, 0])]).unwrap();
        let ray = dual_cone(&half);
        assert_eq!(ray.generators(), &[qvec(&[0, 1])][..]);
        assert_eq!(ray.dim(), 1);
        let point = dual_cone(&Cone::whole_space(qvec(&[0, 0])));
        assert_eq!(point.dim(), 0);
        let c = Cone::new(qvec(&[0, 0]), &[qvec(&[1, 0]), qvec(&[1, 3])], &[]).unwrap();
        assert_eq!(dual_cone(&dual_cone(&c)), c);
    }

    #[test]
    fn containment_and_translation() {
        let c = quadrant().translated(&qvec(&[1, 2]));
        assert!(c.contains(&qvec(&[1, 2])));
        assert!(c.contains(&qvec(&[5, 2])));
        assert!(!c.contains(&qvec(&[0, 3])));
        assert_eq!(c.to_polyhedron().vertices(), &[qvec(&[1, 2])][..]);
    }

    #[test]
    fn serde_round_trip() {
        let c = quadrant().translated(&qvec(&[1, 2]));
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"apex":["1","2"],"generators":[["0","1"],["1","0"]],"lineality":[]}"#
        );
        let back: Cone = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn polyconical_requires_common_apex() {
        let a = quadrant();
        let b = quadrant().translated(&qvec(&[1, 0]));
        assert!(PolyconicalFunction::new(qvec(&[0, 0]), vec![(q(1), a), (q(1), b)]).is_err());
    }

    #[test]
    fn generic_direction_avoids_orthogonality() {
        let u = generic_direction(2, &[qvec(&[1, -1]), qvec(&[2, -1])]);
        assert_eq!(u, qvec(&[1, 3]));
    }
}
