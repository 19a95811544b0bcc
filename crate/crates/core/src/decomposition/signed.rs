use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::cones::{cone_sum_function, Cone};
use crate::error::Result;
use crate::kernel::rational::{is_integer, Point, Q};
use crate::kernel::{ConvexPolyhedron, Simplex};
use crate::polyfun::PolyhedralFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    Simplices,
    Cones,
}

impl DecompositionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecompositionKind::Simplices => "simplices",
            DecompositionKind::Cones => "cones",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Simplex(Simplex),
    Cone(Cone),
}

/// `f = sum c_i [piece_i] + sum r_j [line-cone_j]` almost everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDecomposition {
    pub kind: DecompositionKind,
    pub ambient_dim: usize,
    pub terms: Vec<(Q, Piece)>,
    pub residual: Vec<(Q, Cone)>,
    pub certificate: bool,
}

impl SignedDecomposition {
    pub fn simplices(&self) -> impl Iterator<Item = (&Q, &Simplex)> {
        self.terms.iter().filter_map(|(c, p)| match p {
            Piece::Simplex(s) => Some((c, s)),
            Piece::Cone(_) => None,
        })
    }

    pub fn cones(&self) -> impl Iterator<Item = (&Q, &Cone)> {
        self.terms.iter().filter_map(|(c, p)| match p {
            Piece::Cone(k) => Some((c, k)),
            Piece::Simplex(_) => None,
        })
    }

    /// The represented function.
    pub fn to_function(&self) -> Result<PolyhedralFunction> {
        let d = self.ambient_dim;
        let mut pieces: Vec<(Q, ConvexPolyhedron)> = Vec::new();
        for (c, p) in &self.terms {
            match p {
                Piece::Simplex(s) => {
                    if s.is_degenerate() {
                        continue;
                    }
                    if let Some(poly) = s.to_polyhedron() {
                        pieces.push((c.clone(), poly));
                    }
                }
                Piece::Cone(k) => {
                    if k.is_full_dimensional() {
                        pieces.push((c.clone(), k.to_polyhedron()));
                    }
                }
            }
        }
        let main = PolyhedralFunction::from_weighted_union(d, &pieces)?;
        if self.residual.is_empty() {
            return Ok(main);
        }
        main.add(&cone_sum_function(d, &self.residual))
    }

    /// Re-check `f = decomposition` exactly.
    pub fn verify(&self, f: &PolyhedralFunction) -> Result<bool> {
        f.ae_equal(&self.to_function()?)
    }

    /// Simplex vertices, or apices of the cone terms.
    pub fn vertex_set(&self) -> BTreeSet<Point> {
        let mut out = BTreeSet::new();
        for (_, p) in &self.terms {
            match p {
                Piece::Simplex(s) => out.extend(s.vertices.iter().cloned()),
                Piece::Cone(k) => {
                    out.insert(k.apex().to_vec());
                }
            }
        }
        out
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(c, _)| is_integer(c))
            && self.residual.iter().all(|(c, _)| is_integer(c))
    }
}

/// Sum equal simplices and drop zero coefficients; sorted output.
pub(crate) fn merge_simplices(terms: Vec<(Q, Simplex)>) -> Vec<(Q, Simplex)> {
    let mut acc: BTreeMap<Simplex, Q> = BTreeMap::new();
    for (c, s) in terms {
        *acc.entry(s.canonical()).or_insert_with(Q::zero) += c;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| (c, s))
        .collect()
}
