use num_traits::Zero;

use super::signed::{DecompositionKind, Piece, SignedDecomposition};
use super::vertices::{algebraic_vertices, VertexReport};
use crate::cones::{
    brianchon_gram, cone_sum_function, generic_direction, star_reduction, tangent_cone, Cone,
};
use crate::error::Result;
use crate::kernel::rational::Q;
use crate::kernel::{triangulate_cone, ConePiece};
use crate::par;
use crate::polyfun::PolyhedralFunction;

/// Tangent cones at the algebraic vertices plus line-cones.
///
/// Brianchon–Gram on every cell `P_i` of weight `g_i` gives
/// `f = sum_v tcone(f, v) + line-cones`, the first sum over all arrangement
/// vertices. At a vertex that is not algebraic the tangent cone is itself
/// rewritten as line-cones by star reduction of its simplicial pieces
/// towards a generic direction: the reflected cones all lie in one open
/// half-space and their signed sum has zero transform, so it vanishes.
pub fn decompose_cones(f: &PolyhedralFunction) -> Result<SignedDecomposition> {
    decompose_cones_with(f, &algebraic_vertices(f))
}

pub fn decompose_cones_with(
    f: &PolyhedralFunction,
    report: &VertexReport,
) -> Result<SignedDecomposition> {
    let d = f.ambient_dim();
    let mut terms: Vec<(Q, Piece)> = Vec::new();
    for v in &report.algebraic {
        for (w, c) in tangent_cone(f, v).terms() {
            terms.push((w.clone(), Piece::Cone(c.clone())));
        }
    }
    let cells: Vec<_> = f.cells().map(|(p, w)| (p.clone(), w.clone())).collect();
    let per_cell = par::map(&cells, |(p, w)| {
        brianchon_gram(p)
            .into_iter()
            .filter(|fc| fc.cone.is_line_cone())
            .map(|fc| (w * Q::from_integer(fc.sign.into()), fc.cone))
            .collect::<Vec<_>>()
    });
    let mut residual: Vec<(Q, Cone)> = per_cell.into_iter().flatten().collect();
    let others: Vec<_> = report
        .per_vertex
        .iter()
        .filter(|i| !i.algebraic)
        .map(|i| i.point.clone())
        .collect();
    let reduced = par::map(&others, |v| reduce_to_line_cones(f, v));
    for r in reduced {
        residual.extend(r?);
    }
    residual.retain(|(w, _)| !w.is_zero());
    let mut dec = SignedDecomposition {
        kind: DecompositionKind::Cones,
        ambient_dim: d,
        terms,
        residual,
        certificate: false,
    };
    dec.certificate = dec.verify(f)?;
    Ok(dec)
}

/// Line-cones summing to `tcone(f, v)` when its transform vanishes. If the
/// reflected remainder does not cancel it is returned as well, so the
/// caller's certificate still reflects the true sum.
fn reduce_to_line_cones(f: &PolyhedralFunction, v: &[Q]) -> Result<Vec<(Q, Cone)>> {
    let d = f.ambient_dim();
    let tc = tangent_cone(f, v);
    let mut simplicial: Vec<(Q, Cone)> = Vec::new();
    let mut out: Vec<(Q, Cone)> = Vec::new();
    for (w, c) in tc.terms() {
        for piece in triangulate_cone(c) {
            match piece {
                ConePiece::Simplicial(s) => simplicial.push((w.clone(), s)),
                ConePiece::LineCone(l) => out.push((w.clone(), l)),
            }
        }
    }
    let gens: Vec<Vec<Q>> = simplicial
        .iter()
        .flat_map(|(_, c)| c.generators().iter().cloned())
        .collect();
    let u = generic_direction(d, &gens);
    let mut reflected: Vec<(Q, Cone)> = Vec::new();
    for (w, c) in &simplicial {
        let r = star_reduction(c, &u)?;
        reflected.push((w * Q::from_integer(r.sign.into()), r.reflected));
        for (e, l) in r.line_cones {
            out.push((w * Q::from_integer(e.into()), l));
        }
    }
    if !cone_sum_function(d, &reflected).is_zero() {
        out.extend(reflected);
    }
    Ok(out)
}
