//! Signed sections `f_h = f_h^+ - f_h^-` and facets.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::function::PolyhedralFunction;
use crate::kernel::arrangement::arrangement;
use crate::kernel::rational::{dot, Point, Q};
use crate::kernel::{Hyperplane, OrientedHyperplane};

/// Rational affine chart of a hyperplane `<n, x> = b` (canonical, `n_p = 1`
/// at pivot `p`): `y -> x` with `x_j = y_j` for `j != p` and
/// `x_p = b - sum_{j != p} n_j y_j`. Projection drops coordinate `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineChart {
    #[serde(with = "crate::kernel::rational::serde_q::vec")]
    pub origin: Point,
    #[serde(with = "crate::kernel::rational::serde_q::mat")]
    pub tangents: Vec<Vec<Q>>,
    pub pivot: usize,
}

impl AffineChart {
    pub fn of(h: &Hyperplane) -> Self {
        let d = h.dim();
        let p = h.pivot();
        let n = h.normal();
        let mut origin = vec![Q::zero(); d];
        origin[p] = h.offset().clone();
        let tangents = (0..d)
            .filter(|&j| j != p)
            .map(|j| {
                let mut t = vec![Q::zero(); d];
                t[j] = Q::one();
                t[p] = -n[j].clone();
                t
            })
            .collect();
        Self {
            origin,
            tangents,
            pivot: p,
        }
    }

    pub fn dim(&self) -> usize {
        self.tangents.len()
    }

    pub fn lift(&self, y: &[Q]) -> Point {
        let mut x = self.origin.clone();
        for (yi, t) in y.iter().zip(&self.tangents) {
            if yi.is_zero() {
                continue;
            }
            for (xj, tj) in x.iter_mut().zip(t) {
                if !tj.is_zero() {
                    *xj += yi * tj;
                }
            }
        }
        x
    }

    /// Chart coordinates of a point on the hyperplane.
    pub fn project(&self, x: &[Q]) -> Point {
        x.iter()
            .enumerate()
            .filter(|(j, _)| *j != self.pivot)
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Trace of another hyperplane in chart coordinates (`None` if parallel).
    pub fn restrict(&self, g: &Hyperplane) -> Option<Hyperplane> {
        let normal: Vec<Q> = self.tangents.iter().map(|t| dot(g.normal(), t)).collect();
        let offset = g.offset() - dot(g.normal(), &self.origin);
        Hyperplane::canonical(&normal, &offset).map(|(h, _)| h)
    }
}

/// Signed section of a function by an oriented hyperplane, expressed as a
/// function on the hyperplane's chart.
#[derive(Clone, Debug)]
pub struct SignedSection {
    pub hyperplane: OrientedHyperplane,
    pub chart: AffineChart,
    pub section: PolyhedralFunction,
}

impl SignedSection {
    pub fn is_zero(&self) -> bool {
        self.section.is_zero()
    }
}

impl PolyhedralFunction {
    pub fn signed_section(&self, h: &OrientedHyperplane) -> SignedSection {
        let chart = AffineChart::of(&h.plane);
        let d = self.ambient_dim();
        let Some(k) = self.complex().position(&h.plane) else {
            return SignedSection {
                hyperplane: h.clone(),
                chart,
                section: PolyhedralFunction::zero(d - 1),
            };
        };
        let traces: Vec<Hyperplane> = self
            .hyperplanes()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .filter_map(|(_, g)| chart.restrict(g))
            .collect();
        let sub = arrangement(&traces, d - 1);
        let up = h.positive_side();
        let weights = sub
            .cells()
            .iter()
            .map(|cell| {
                let x = chart.lift(&cell.witness);
                let mut s = self.complex().signs_of(&x);
                debug_assert_eq!(s.iter().filter(|&&v| v == 0).count(), 1);
                s[k] = up;
                let plus = self.weight_at_signs(&s);
                s[k] = -up;
                plus - self.weight_at_signs(&s)
            })
            .collect();
        SignedSection {
            hyperplane: h.clone(),
            chart,
            section: PolyhedralFunction::from_parts(sub, weights),
        }
    }

    /// Nonzero signed sections, one per generating hyperplane, oriented so
    /// that `base` lies on the positive side. Hyperplanes through `base`
    /// keep their canonical orientation.
    pub fn facets(&self, base: &[Q]) -> Vec<SignedSection> {
        let planes: Vec<Hyperplane> = self.hyperplanes().to_vec();
        crate::par::map(&planes, |h| {
            let flipped = h.side(base) < 0;
            self.signed_section(&OrientedHyperplane::from_plane(h.clone(), flipped))
        })
        .into_iter()
        .filter(|s| !s.is_zero())
        .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qf, qvec};
    use crate::kernel::{dual_description, ConvexPolyhedron, Halfspace, PolyhedronSpec};
    use crate::polyfun::Evaluation;

    fn boxed(lo: &[i64], hi: &[i64]) -> ConvexPolyhedron {
        let d = lo.len();
        let mut h = Vec::new();
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            h.push(Halfspace::new(qvec(&e), q(hi[i])));
            e[i] = -1;
            h.push(Halfspace::new(qvec(&e), q(-lo[i])));
        }
        dual_description(d, &PolyhedronSpec::H(h))
            .into_option()
            .unwrap()
    }

    fn square() -> PolyhedralFunction {
        PolyhedralFunction::indicator(&boxed(&[0, 0], &[1, 1]))
    }

    fn lshape() -> PolyhedralFunction {
        PolyhedralFunction::from_weighted_union(
            2,
            &[
                (q(1), boxed(&[0, 0], &[2, 2])),
                (q(-1), boxed(&[1, 1], &[2, 2])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn chart_round_trip() {
        let (h, _) = Hyperplane::canonical(&qvec(&[2, -1, 3]), &q(5)).unwrap();
        let c = AffineChart::of(&h);
        let y = vec![qf(1, 3), q(-2)];
        let x = c.lift(&y);
        assert!(h.contains(&x));
        assert_eq!(c.project(&x), y);
    }

    #[test]
    fn square_left_edge_section() {
        // x = 0 oriented with n = (-1, 0): the square lies on the negative side.
        let h = OrientedHyperplane::new(&qvec(&[-1, 0]), &q(0)).unwrap();
        let s = square().signed_section(&h);
        assert_eq!(s.section.ambient_dim(), 1);
        // Chart of x = 0 keeps y as the coordinate.
        assert_eq!(
            s.section.evaluate(&[qf(1, 2)]),
            Evaluation::CellInterior(q(-1))
        );
        assert_eq!(s.section.evaluate(&[q(2)]), Evaluation::CellInterior(q(0)));
        let r = square().signed_section(&h.reversed());
        assert_eq!(
            r.section.evaluate(&[qf(1, 2)]),
            Evaluation::CellInterior(q(1))
        );
    }

    #[test]
    fn interior_plane_has_zero_section() {
        let h = OrientedHyperplane::new(&qvec(&[1, 0]), &qf(1, 2)).unwrap();
        assert!(square().signed_section(&h).is_zero());
    }

    #[test]
    fn lshape_reflex_plane_section() {
        // y = 1 contains the reflex edge from (1,1) to (2,1).
        let h = OrientedHyperplane::new(&qvec(&[0, 1]), &q(1)).unwrap();
        let s = lshape().signed_section(&h);
        assert_eq!(
            s.section.evaluate(&[qf(3, 2)]),
            Evaluation::CellInterior(q(-1))
        );
        assert_eq!(
            s.section.evaluate(&[qf(1, 2)]),
            Evaluation::CellInterior(q(0))
        );
        assert_eq!(s.section.evaluate(&[q(3)]), Evaluation::CellInterior(q(0)));
    }

    #[test]
    fn facet_counts() {
        let center = vec![qf(1, 2), qf(1, 2)];
        let fs = square().facets(&center);
        assert_eq!(fs.len(), 4);
        for f in &fs {
            // The center is on the positive side, inside the square.
            let cells: Vec<_> = f.section.cells().collect();
            assert_eq!(cells.len(), 1);
            assert_eq!(*cells[0].1, q(1));
            assert_eq!(cells[0].0.volume(), q(1));
        }
        assert!(PolyhedralFunction::zero(2).facets(&center).is_empty());
        assert_eq!(lshape().facets(&center).len(), 6);
    }

    #[test]
    fn one_dimensional_sections_are_points() {
        let f = PolyhedralFunction::indicator(&boxed(&[0], &[1]));
        let h = OrientedHyperplane::new(&qvec(&[1]), &q(1)).unwrap();
        let s = f.signed_section(&h);
        assert_eq!(s.section.ambient_dim(), 0);
        assert_eq!(s.section.evaluate(&[]), Evaluation::CellInterior(q(-1)));
    }
}
