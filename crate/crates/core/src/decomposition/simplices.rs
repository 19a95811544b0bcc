use num_traits::{One, Zero};

use super::signed::{merge_simplices, DecompositionKind, Piece, SignedDecomposition};
use super::vertices::first_algebraic_vertex;
use crate::error::{Error, Result};
use crate::kernel::rational::{Point, Q};
use crate::kernel::Simplex;
use crate::par;
use crate::polyfun::PolyhedralFunction;

/// Signed simplices spanned by algebraic vertices.
///
/// In dimension one the function is a signed sum of segments between
/// consecutive breakpoints. Otherwise, with `p` the lexicographically
/// smallest algebraic vertex, `f` is the sum over its facets `f_h` (oriented
/// with `p` on the positive side) of the pyramids over `f_h` with apex `p`;
/// each facet is decomposed recursively in its hyperplane.
pub fn decompose_simplices(f: &PolyhedralFunction) -> Result<SignedDecomposition> {
    let terms = simplices_rec(f)?;
    let mut dec = SignedDecomposition {
        kind: DecompositionKind::Simplices,
        ambient_dim: f.ambient_dim(),
        terms: terms
            .into_iter()
            .map(|(c, s)| (c, Piece::Simplex(s)))
            .collect(),
        residual: Vec::new(),
        certificate: false,
    };
    dec.certificate = dec.verify(f)?;
    Ok(dec)
}

fn simplices_rec(f: &PolyhedralFunction) -> Result<Vec<(Q, Simplex)>> {
    if f.is_zero() {
        return Ok(Vec::new());
    }
    if !f.has_bounded_support() {
        return Err(Error::Unbounded);
    }
    match f.ambient_dim() {
        0 => Ok(vec![(
            f.cell_weights()[0].clone(),
            Simplex::new(vec![Vec::new()]),
        )]),
        1 => Ok(segments(f)),
        _ => pyramids(f),
    }
}

fn segments(f: &PolyhedralFunction) -> Vec<(Q, Simplex)> {
    let cuts: Vec<Q> = f.hyperplanes().iter().map(|h| h.offset().clone()).collect();
    let two = Q::one() + Q::one();
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) / &two;
        let weight = f
            .evaluate(&[mid])
            .interior()
            .cloned()
            .unwrap_or_else(Q::zero);
        if !weight.is_zero() {
            out.push((
                weight,
                Simplex::new(vec![vec![w[0].clone()], vec![w[1].clone()]]),
            ));
        }
    }
    out
}

fn pyramids(f: &PolyhedralFunction) -> Result<Vec<(Q, Simplex)>> {
    let p: Point = first_algebraic_vertex(f).ok_or_else(|| {
        Error::Precondition("bounded nonzero function without algebraic vertex".into())
    })?;
    let facets: Vec<_> = f
        .facets(&p)
        .into_iter()
        .filter(|s| !s.hyperplane.plane.contains(&p))
        .collect();
    let parts = par::map(&facets, |facet| -> Result<Vec<(Q, Simplex)>> {
        let base = simplices_rec(&facet.section)?;
        Ok(base
            .into_iter()
            .filter_map(|(beta, t)| {
                let mut vs: Vec<Point> = t.vertices.iter().map(|y| facet.chart.lift(y)).collect();
                vs.push(p.clone());
                let s = Simplex::new(vs).canonical();
                (!s.is_degenerate()).then_some((beta, s))
            })
            .collect())
    });
    let mut all = Vec::new();
    for part in parts {
        all.extend(part?);
    }
    Ok(merge_simplices(all))
}
