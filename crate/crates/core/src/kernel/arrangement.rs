//! Full-dimensional cells of a hyperplane arrangement, built by splitting
//! cells one hyperplane at a time.

use std::collections::HashMap;

use num_traits::Zero;

use super::hyperplane::Hyperplane;
use super::polyhedron::{ConvexPolyhedron, Described, Halfspace};
use super::rational::{dot, neg, sign, Point, Q};
use crate::par;

/// Side of a cell with respect to each hyperplane: -1 or +1 for full cells.
pub type SignVector = Vec<i8>;

#[derive(Clone, Debug)]
pub struct Cell {
    pub signs: SignVector,
    pub polyhedron: ConvexPolyhedron,
    pub witness: Point,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
    cells: Vec<Cell>,
    vertices: Vec<Point>,
    index: HashMap<SignVector, usize>,
}

/// Where a point sits relative to the arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Cell(usize),
    /// On at least one hyperplane; lists the cells whose closure contains it.
    Face(Vec<usize>),
}

fn side_of(poly: &ConvexPolyhedron, h: &Hyperplane) -> i8 {
    if poly
        .lineality()
        .iter()
        .any(|l| !dot(h.normal(), l).is_zero())
    {
        return 0;
    }
    let (mut pos, mut negs) = (false, false);
    for v in poly.vertices() {
        match h.side(v) {
            1 => pos = true,
            -1 => negs = true,
            _ => {}
        }
    }
    for r in poly.rays() {
        match sign(&dot(h.normal(), r)) {
            1 => pos = true,
            -1 => negs = true,
            _ => {}
        }
    }
    match (pos, negs) {
        (true, true) => 0,
        (true, false) => 1,
        _ => -1,
    }
}

fn split(cell: &Cell, h: &Hyperplane) -> Vec<Cell> {
    let s = side_of(&cell.polyhedron, h);
    let with_sign = |sg: i8, poly: ConvexPolyhedron| {
        let mut signs = cell.signs.clone();
        signs.push(sg);
        let witness = poly.interior_point();
        Cell {
            signs,
            polyhedron: poly,
            witness,
        }
    };
    if s != 0 {
        return vec![with_sign(s, cell.polyhedron.clone())];
    }
    let below = Halfspace::new(h.normal().to_vec(), h.offset().clone());
    let above = Halfspace::new(neg(h.normal()), -h.offset().clone());
    let mut out = Vec::with_capacity(2);
    for (sg, hs) in [(-1i8, below), (1i8, above)] {
        if let Described::Polyhedron(p) = cell.polyhedron.intersect_halfspace(&hs) {
            if p.is_full_dimensional() {
                out.push(with_sign(sg, p));
            }
        }
    }
    out
}

/// Enumerate the full-dimensional cells cut out by `hyperplanes`.
/// Duplicates are removed by canonical form; the order of the remaining
/// hyperplanes is sorted, so sign vectors are reproducible.
pub fn arrangement(hyperplanes: &[Hyperplane], ambient_dim: usize) -> CellComplex {
    let mut planes: Vec<Hyperplane> = hyperplanes.to_vec();
    planes.sort();
    planes.dedup();
    CellComplex::build(planes, ambient_dim)
}

impl CellComplex {
    fn build(planes: Vec<Hyperplane>, ambient_dim: usize) -> CellComplex {
        let whole = ConvexPolyhedron::whole_space(ambient_dim);
        let witness = whole.interior_point();
        let mut cells = vec![Cell {
            signs: Vec::new(),
            polyhedron: whole,
            witness,
        }];
        for h in &planes {
            let parts = par::map(&cells, |c| split(c, h));
            cells = parts.into_iter().flatten().collect();
        }
        let mut vertices: Vec<Point> = cells
            .iter()
            .filter(|c| c.polyhedron.lineality().is_empty())
            .flat_map(|c| c.polyhedron.vertices().iter().cloned())
            .collect();
        vertices.sort();
        vertices.dedup();
        let index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.signs.clone(), i))
            .collect();
        CellComplex {
            ambient_dim,
            hyperplanes: planes,
            cells,
            vertices,
            index,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// The 0-dimensional faces, sorted lexicographically.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn cell_index(&self, signs: &[i8]) -> Option<usize> {
        self.index.get(signs).copied()
    }

    pub fn signs_of(&self, x: &[Q]) -> SignVector {
        self.hyperplanes.iter().map(|h| h.side(x)).collect()
    }

    pub fn locate(&self, x: &[Q]) -> Location {
        let s = self.signs_of(x);
        if s.iter().all(|&v| v != 0) {
            return match self.cell_index(&s) {
                Some(i) => Location::Cell(i),
                // Cannot happen for a complete arrangement; treat as face.
                None => Location::Face(Vec::new()),
            };
        }
        Location::Face(self.adjacent_cells(&s))
    }

    /// Cells whose closure meets the point with sign vector `s`
    /// (zeros mark hyperplanes through the point).
    pub fn adjacent_cells(&self, s: &[i8]) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.signs.iter().zip(s).all(|(a, b)| *b == 0 || a == b))
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the hyperplane, if present.
    pub fn position(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.binary_search(h).ok()
    }
}
