use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::{brianchon_gram, Cone, PolyconicalFunction};
use crate::error::{Error, Result};
use crate::kernel::linalg::det;
use crate::kernel::rational::{add, sub, Point, Q};
use crate::kernel::{triangulate_cone, triangulate_polytope, ConePiece, Simplex};
use crate::par;
use crate::polyfun::PolyhedralFunction;

/// `coeff * exp(<vertex, z>) / prod_j <forms_j, z>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransformTerm {
    #[serde(with = "crate::kernel::rational::serde_q")]
    pub coeff: Q,
    #[serde(with = "crate::kernel::rational::serde_q::vec")]
    pub vertex: Point,
    #[serde(with = "crate::kernel::rational::serde_q::mat")]
    pub forms: Vec<Vec<Q>>,
}

impl TransformTerm {
    pub fn scaled(&self, c: &Q) -> Self {
        Self {
            coeff: &self.coeff * c,
            vertex: self.vertex.clone(),
            forms: self.forms.clone(),
        }
    }

    pub fn translated(&self, by: &[Q]) -> Self {
        Self {
            coeff: self.coeff.clone(),
            vertex: add(&self.vertex, by),
            forms: self.forms.clone(),
        }
    }
}

/// A formal sum of transform terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformSum {
    #[serde(skip)]
    pub ambient_dim: usize,
    pub terms: Vec<TransformTerm>,
}

impl TransformSum {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            terms: Vec::new(),
        }
    }

    /// Restore `ambient_dim` after deserialization.
    pub fn with_dim(mut self, ambient_dim: usize) -> Self {
        self.ambient_dim = ambient_dim;
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, t: TransformTerm) {
        if !t.coeff.is_zero() {
            self.terms.push(t);
        }
    }

    pub fn extend(&mut self, other: TransformSum) {
        self.terms.extend(other.terms);
    }

    pub fn add(&self, other: &TransformSum) -> TransformSum {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn scale(&self, c: &Q) -> TransformSum {
        if c.is_zero() {
            return TransformSum::zero(self.ambient_dim);
        }
        TransformSum {
            ambient_dim: self.ambient_dim,
            terms: self.terms.iter().map(|t| t.scaled(c)).collect(),
        }
    }

    pub fn sub(&self, other: &TransformSum) -> TransformSum {
        self.add(&other.scale(&Q::from_integer((-1).into())))
    }

    pub fn translated(&self, by: &[Q]) -> TransformSum {
        TransformSum {
            ambient_dim: self.ambient_dim,
            terms: self.terms.iter().map(|t| t.translated(by)).collect(),
        }
    }
}

fn sign_power(d: usize) -> Q {
    if d.is_multiple_of(2) {
        Q::from_integer(1.into())
    } else {
        Q::from_integer((-1).into())
    }
}

/// Transform of a full-dimensional simplicial cone `v + pos(w_1..w_d)`:
/// `(-1)^d |det W| exp(<v,z>) / prod <w_j, z>`, the value of the integral of
/// `exp(<z, x>)` over the cone where it converges.
pub fn simplicial_cone_transform(c: &Cone) -> Result<TransformTerm> {
    let d = c.ambient_dim();
    let w = c.generators();
    if !c.is_pointed() || w.len() != d {
        return Err(Error::DegenerateCone);
    }
    let det_w = det(w);
    if det_w.is_zero() {
        return Err(Error::DegenerateCone);
    }
    Ok(TransformTerm {
        coeff: sign_power(d) * det_w.abs(),
        vertex: c.apex().to_vec(),
        forms: w.to_vec(),
    })
}

/// Transform of `sum w_i [C_i]`. Line-cones and lower-dimensional cones
/// contribute nothing; other cones are triangulated.
pub fn transform_cones(ambient_dim: usize, terms: &[(Q, Cone)]) -> TransformSum {
    let parts = par::map(terms, |(w, c)| {
        let mut out = Vec::new();
        if w.is_zero() || c.is_line_cone() || !c.is_full_dimensional() {
            return out;
        }
        for piece in triangulate_cone(c) {
            if let ConePiece::Simplicial(s) = piece {
                if let Ok(t) = simplicial_cone_transform(&s) {
                    out.push(t.scaled(w));
                }
            }
        }
        out
    });
    TransformSum {
        ambient_dim,
        terms: parts.into_iter().flatten().collect(),
    }
}

pub fn transform_polyconical(f: &PolyconicalFunction) -> TransformSum {
    transform_cones(f.ambient_dim(), f.terms())
}

/// Brion expansion of a full-dimensional simplex: one simplicial cone per
/// vertex, spanned by the edges leaving it.
pub fn simplex_transform(s: &Simplex) -> Vec<TransformTerm> {
    let d = s.ambient_dim();
    let abs_det = s.signed_det().abs();
    if abs_det.is_zero() {
        return Vec::new();
    }
    let coeff = sign_power(d) * abs_det;
    (0..s.vertices.len())
        .map(|i| {
            let v = &s.vertices[i];
            let forms = s
                .vertices
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, u)| sub(u, v))
                .collect();
            TransformTerm {
                coeff: coeff.clone(),
                vertex: v.clone(),
                forms,
            }
        })
        .collect()
}

/// Transform of a polyhedral function. Bounded cells are triangulated and
/// each simplex is expanded into its vertex cones; unbounded pointed cells
/// use the vertex cones of their Brianchon–Gram expansion; cells with
/// lineality contribute nothing.
pub fn transform_function(f: &PolyhedralFunction) -> TransformSum {
    let d = f.ambient_dim();
    let cells: Vec<_> = f.cells().collect();
    let parts = par::map(&cells, |(p, w)| {
        let mut out = Vec::new();
        if !p.lineality().is_empty() {
            return out;
        }
        if p.is_bounded() {
            if let Ok(simplices) = triangulate_polytope(p) {
                for s in &simplices {
                    out.extend(simplex_transform(s).into_iter().map(|t| t.scaled(w)));
                }
            }
            return out;
        }
        let vertex_cones: Vec<(Q, Cone)> = brianchon_gram(p)
            .into_iter()
            .filter(|fc| fc.face_dim == 0)
            .map(|fc| ((*w).clone(), fc.cone))
            .collect();
        out.extend(transform_cones(d, &vertex_cones).terms);
        out
    });
    TransformSum {
        ambient_dim: d,
        terms: parts.into_iter().flatten().collect(),
    }
}

/// Terms keyed by exact vertex, in lexicographic order.
pub fn group_by_vertex(s: &TransformSum) -> BTreeMap<Point, Vec<TransformTerm>> {
    let mut out: BTreeMap<Point, Vec<TransformTerm>> = BTreeMap::new();
    for t in &s.terms {
        out.entry(t.vertex.clone()).or_default().push(t.clone());
    }
    out
}
