use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::arrangement::{arrangement, CellComplex, Location};
use crate::kernel::rational::{is_integer, Point, Q};
use crate::kernel::{ConvexPolyhedron, Hyperplane};
use crate::par;

/// An element of the algebra of polyhedra: rational weights on the
/// full-dimensional cells of a hyperplane arrangement.
///
/// Functions are equivalence classes up to measure zero, so only the
/// full-dimensional cells carry data. Constructors drop every hyperplane
/// across which the weights do not jump, so the stored arrangement is the
/// coarsest one generated by the function's own boundary.
#[derive(Clone, Debug)]
pub struct PolyhedralFunction {
    complex: Arc<CellComplex>,
    weights: Vec<Q>,
}

/// Value of a function at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    CellInterior(Q),
    /// The point lies on the arrangement; no single value is asserted.
    /// Lists the weights of all adjacent full-dimensional cells.
    MeasureZeroFace(Vec<Q>),
}

impl Evaluation {
    pub fn interior(&self) -> Option<&Q> {
        match self {
            Evaluation::CellInterior(w) => Some(w),
            Evaluation::MeasureZeroFace(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Subtract,
    Multiply,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Subtract,
    Multiply,
    /// Scales the first operand; the second is ignored.
    Scale(Q),
}

/// Closures of the nonzero cells and whether all of them are bounded.
#[derive(Clone, Debug)]
pub struct Support {
    pub regions: Vec<ConvexPolyhedron>,
    pub bounded: bool,
}

impl PolyhedralFunction {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            complex: Arc::new(arrangement(&[], ambient_dim)),
            weights: vec![Q::zero()],
        }
    }

    /// Constant function on `R^d`.
    pub fn constant(ambient_dim: usize, c: Q) -> Self {
        Self {
            complex: Arc::new(arrangement(&[], ambient_dim)),
            weights: vec![c],
        }
    }

    pub fn indicator(poly: &ConvexPolyhedron) -> Self {
        Self::from_weighted_union(poly.ambient_dim(), &[(Q::one(), poly.clone())])
            .expect("single piece has consistent dimension")
    }

    /// Basic decomposition of `sum coeff_i [P_i]`. Lower-dimensional pieces
    /// vanish almost everywhere and are ignored.
    pub fn from_weighted_union(
        ambient_dim: usize,
        pieces: &[(Q, ConvexPolyhedron)],
    ) -> Result<Self> {
        for (_, p) in pieces {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.ambient_dim(),
                });
            }
        }
        let live: Vec<&(Q, ConvexPolyhedron)> = pieces
            .iter()
            .filter(|(c, p)| !c.is_zero() && p.is_full_dimensional())
            .collect();
        let planes: Vec<Hyperplane> = live
            .iter()
            .flat_map(|(_, p)| p.facet_hyperplanes())
            .collect();
        let complex = arrangement(&planes, ambient_dim);
        let weights = par::map(complex.cells(), |cell| {
            live.iter()
                .filter(|(_, p)| p.contains(&cell.witness))
                .fold(Q::zero(), |acc, (c, _)| acc + c)
        });
        Ok(Self::from_parts(complex, weights))
    }

    /// Assemble from an arrangement and one weight per cell, then drop
    /// hyperplanes that carry no jump.
    pub(crate) fn from_parts(complex: CellComplex, weights: Vec<Q>) -> Self {
        debug_assert_eq!(complex.cells().len(), weights.len());
        Self {
            complex: Arc::new(complex),
            weights,
        }
        .normalized()
    }

    /// Hyperplanes across which the weight never changes.
    fn silent_hyperplanes(&self) -> Vec<bool> {
        let cells = self.complex.cells();
        let n = self.complex.hyperplanes().len();
        (0..n)
            .map(|k| {
                cells.iter().enumerate().all(|(i, c)| {
                    if c.signs[k] > 0 {
                        return true;
                    }
                    let mut s = c.signs.clone();
                    s[k] = 1;
                    match self.complex.cell_index(&s) {
                        Some(j) => self.weights[i] == self.weights[j],
                        None => true,
                    }
                })
            })
            .collect()
    }

    fn normalized(self) -> Self {
        let silent = self.silent_hyperplanes();
        if !silent.iter().any(|&s| s) {
            return self;
        }
        let kept: Vec<usize> = (0..silent.len()).filter(|&k| !silent[k]).collect();
        let planes: Vec<Hyperplane> = kept
            .iter()
            .map(|&k| self.complex.hyperplanes()[k].clone())
            .collect();
        let mut by_signs: HashMap<Vec<i8>, Q> = HashMap::new();
        for (c, w) in self.complex.cells().iter().zip(&self.weights) {
            let key: Vec<i8> = kept.iter().map(|&k| c.signs[k]).collect();
            by_signs.entry(key).or_insert_with(|| w.clone());
        }
        let complex = arrangement(&planes, self.complex.ambient_dim());
        let weights = complex
            .cells()
            .iter()
            .map(|c| by_signs.get(&c.signs).cloned().unwrap_or_else(Q::zero))
            .collect();
        Self {
            complex: Arc::new(complex),
            weights,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.complex.ambient_dim()
    }

    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        self.complex.hyperplanes()
    }

    /// Weight of every arrangement cell, zero cells included.
    pub fn cell_weights(&self) -> &[Q] {
        &self.weights
    }

    /// Nonzero cells with their weights.
    pub fn cells(&self) -> impl Iterator<Item = (&ConvexPolyhedron, &Q)> {
        self.complex
            .cells()
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| !w.is_zero())
            .map(|(c, w)| (&c.polyhedron, w))
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    /// True iff every weight is an integer.
    pub fn is_integer(&self) -> bool {
        self.weights.iter().all(is_integer)
    }

    /// Weight of the cell with the given full sign vector (0 if absent).
    pub(crate) fn weight_at_signs(&self, s: &[i8]) -> Q {
        self.complex
            .cell_index(s)
            .map(|i| self.weights[i].clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn evaluate(&self, x: &[Q]) -> Evaluation {
        match self.complex.locate(x) {
            Location::Cell(i) => Evaluation::CellInterior(self.weights[i].clone()),
            Location::Face(adj) => {
                Evaluation::MeasureZeroFace(adj.iter().map(|&i| self.weights[i].clone()).collect())
            }
        }
    }

    /// Arrangement 0-faces of the (normalized) function.
    pub fn arrangement_vertices(&self) -> &[Point] {
        self.complex.vertices()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Common refinement of several functions: the joint arrangement and the
    /// weight of each function on each of its cells.
    pub(crate) fn refine(
        ambient_dim: usize,
        fs: &[&PolyhedralFunction],
    ) -> (CellComplex, Vec<Vec<Q>>) {
        let planes: Vec<Hyperplane> = fs
            .iter()
            .flat_map(|f| f.hyperplanes().iter().cloned())
            .collect();
        let complex = arrangement(&planes, ambient_dim);
        let maps: Vec<Vec<usize>> = fs
            .iter()
            .map(|f| {
                f.hyperplanes()
                    .iter()
                    .map(|h| complex.position(h).expect("plane is in the union"))
                    .collect()
            })
            .collect();
        let values = par::map(complex.cells(), |cell| {
            fs.iter()
                .zip(&maps)
                .map(|(f, m)| {
                    let s: Vec<i8> = m.iter().map(|&k| cell.signs[k]).collect();
                    f.weight_at_signs(&s)
                })
                .collect::<Vec<Q>>()
        });
        (complex, values)
    }

    pub fn combine(&self, other: &Self, op: CombineOp) -> Result<Self> {
        let bin = match op {
            CombineOp::Scale(c) => return Ok(self.scale(&c)),
            CombineOp::Add => BinaryOp::Add,
            CombineOp::Subtract => BinaryOp::Subtract,
            CombineOp::Multiply => BinaryOp::Multiply,
        };
        self.binary(other, bin)
    }

    pub fn binary(&self, other: &Self, op: BinaryOp) -> Result<Self> {
        self.check_dim(other)?;
        let (complex, values) = Self::refine(self.ambient_dim(), &[self, other]);
        let weights = values
            .into_iter()
            .map(|v| match op {
                BinaryOp::Add => &v[0] + &v[1],
                BinaryOp::Subtract => &v[0] - &v[1],
                BinaryOp::Multiply => &v[0] * &v[1],
            })
            .collect();
        Ok(Self::from_parts(complex, weights))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, BinaryOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, BinaryOp::Subtract)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, BinaryOp::Multiply)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.ambient_dim());
        }
        Self {
            complex: self.complex.clone(),
            weights: self.weights.iter().map(|w| w * c).collect(),
        }
    }

    /// Weighted sum of many functions over one common refinement.
    pub fn linear_combination(
        ambient_dim: usize,
        terms: &[(Q, &PolyhedralFunction)],
    ) -> Result<Self> {
        for (_, f) in terms {
            if f.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: f.ambient_dim(),
                });
            }
        }
        let fs: Vec<&PolyhedralFunction> = terms.iter().map(|(_, f)| *f).collect();
        let (complex, values) = Self::refine(ambient_dim, &fs);
        let weights = values
            .into_iter()
            .map(|v| {
                v.iter()
                    .zip(terms)
                    .fold(Q::zero(), |acc, (x, (c, _))| acc + x * c)
            })
            .collect();
        Ok(Self::from_parts(complex, weights))
    }

    /// Exact almost-everywhere equality on the common refinement.
    pub fn ae_equal(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        let (_, values) = Self::refine(self.ambient_dim(), &[self, other]);
        Ok(!par::any(&values, |v| v[0] != v[1]))
    }

    pub fn support(&self) -> Support {
        let regions: Vec<ConvexPolyhedron> = self.cells().map(|(p, _)| p.clone()).collect();
        let bounded = regions.iter().all(ConvexPolyhedron::is_bounded);
        Support { regions, bounded }
    }

    pub fn has_bounded_support(&self) -> bool {
        self.cells().all(|(p, _)| p.is_bounded())
    }

    pub fn translated(&self, by: &[Q]) -> Self {
        let pieces: Vec<(Q, ConvexPolyhedron)> = self
            .cells()
            .map(|(p, w)| (w.clone(), p.translated(by)))
            .collect();
        if pieces.is_empty() {
            // Constant functions (including zero) are translation invariant.
            return self.clone();
        }
        Self::from_weighted_union(self.ambient_dim(), &pieces)
            .expect("translation preserves dimension")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qf, qvec};
    use crate::kernel::{dual_description, Halfspace, PolyhedronSpec};

    pub(crate) fn boxed(lo: &[i64], hi: &[i64]) -> ConvexPolyhedron {
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
    fn lshape_has_three_unit_cells() {
        let f = lshape();
        let cells: Vec<_> = f.cells().collect();
        assert_eq!(cells.len(), 3);
        assert!(cells.iter().all(|(p, w)| **w == q(1) && p.volume() == q(1)));
        assert!(f.is_integer());
    }

    #[test]
    fn evaluation_tags() {
        let f = lshape();
        assert_eq!(
            f.evaluate(&[qf(1, 2), qf(1, 2)]),
            Evaluation::CellInterior(q(1))
        );
        assert_eq!(
            f.evaluate(&[qf(3, 2), qf(3, 2)]),
            Evaluation::CellInterior(q(0))
        );
        match f.evaluate(&qvec(&[1, 1])) {
            Evaluation::MeasureZeroFace(mut w) => {
                w.sort();
                assert_eq!(w, qvec(&[0, 1, 1, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cancellation_gives_zero() {
        let p = boxed(&[0, 0], &[1, 1]);
        let f =
            PolyhedralFunction::from_weighted_union(2, &[(q(1), p.clone()), (q(-1), p)]).unwrap();
        assert!(f.is_zero());
        assert!(f.hyperplanes().is_empty());
    }

    #[test]
    fn disjoint_pieces_keep_weights() {
        let f = PolyhedralFunction::from_weighted_union(
            2,
            &[
                (q(1), boxed(&[0, 0], &[1, 1])),
                (q(1), boxed(&[3, 0], &[4, 1])),
            ],
        )
        .unwrap();
        assert_eq!(f.cells().count(), 2);
    }

    #[test]
    fn product_and_union_of_overlapping_squares() {
        let p = PolyhedralFunction::indicator(&boxed(&[0, 0], &[2, 2]));
        let r = PolyhedralFunction::indicator(&boxed(&[1, 1], &[3, 3]));
        let overlap = PolyhedralFunction::indicator(&boxed(&[1, 1], &[2, 2]));
        assert!(p.mul(&r).unwrap().ae_equal(&overlap).unwrap());
        let union = p.add(&r).unwrap().sub(&p.mul(&r).unwrap()).unwrap();
        let direct = PolyhedralFunction::from_weighted_union(
            2,
            &[
                (q(1), boxed(&[0, 0], &[2, 2])),
                (q(1), boxed(&[1, 1], &[3, 3])),
                (q(-1), boxed(&[1, 1], &[2, 2])),
            ],
        )
        .unwrap();
        assert!(union.ae_equal(&direct).unwrap());
        assert!(union.cells().all(|(_, w)| *w == q(1)));
        let minus = p.add(&p.scale(&q(-1))).unwrap();
        assert!(minus.is_zero());
    }

    #[test]
    fn ae_equality_cases() {
        let sq = PolyhedralFunction::indicator(&boxed(&[0, 0], &[1, 1]));
        let t1 = crate::kernel::Simplex::new(vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1])]);
        let t2 = crate::kernel::Simplex::new(vec![qvec(&[0, 0]), qvec(&[0, 1]), qvec(&[1, 1])]);
        let tri = PolyhedralFunction::from_weighted_union(
            2,
            &[
                (q(1), t1.to_polyhedron().unwrap()),
                (q(1), t2.to_polyhedron().unwrap()),
            ],
        )
        .unwrap();
        assert!(sq.ae_equal(&tri).unwrap());
        let shifted = PolyhedralFunction::indicator(&boxed(&[1, 0], &[2, 1]));
        assert!(!sq.ae_equal(&shifted).unwrap());
        let with_zero = PolyhedralFunction::from_weighted_union(
            2,
            &[
                (q(1), boxed(&[0, 0], &[1, 1])),
                (q(0), boxed(&[5, 5], &[6, 6])),
            ],
        )
        .unwrap();
        assert!(sq.ae_equal(&with_zero).unwrap());
        assert_eq!(sq.translated(&qvec(&[1, 0])).ae_equal(&shifted), Ok(true));
    }

    #[test]
    fn support_boundedness() {
        assert!(lshape().support().bounded);
        assert_eq!(lshape().support().regions.len(), 3);
        let quad = dual_description(
            2,
            &PolyhedronSpec::H(vec![
                Halfspace::new(qvec(&[-1, 0]), q(0)),
                Halfspace::new(qvec(&[0, -1]), q(0)),
            ]),
        )
        .into_option()
        .unwrap();
        assert!(!PolyhedralFunction::indicator(&quad).support().bounded);
        let z = PolyhedralFunction::zero(2).support();
        assert!(z.bounded && z.regions.is_empty());
    }

    #[test]
    fn dimension_mismatch() {
        let a = PolyhedralFunction::zero(2);
        let b = PolyhedralFunction::zero(3);
        assert!(matches!(a.add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(
            PolyhedralFunction::from_weighted_union(3, &[(q(1), boxed(&[0, 0], &[1, 1]))]).is_err()
        );
    }
}
