//! Algebraic vertices and the two certified decompositions.

mod conic;
mod sections;
mod signed;
mod simplices;
mod vertices;

pub use conic::{decompose_cones, decompose_cones_with};
pub use sections::{
    check_section_theorem, generating_hyperplanes, minimality_check, SectionCheck, SectionReport,
};
pub use signed::{DecompositionKind, Piece, SignedDecomposition};
pub use simplices::decompose_simplices;
pub use vertices::{
    algebraic_vertices, algebraic_vertices_with, first_algebraic_vertex, geometric_vertices,
    is_algebraic_vertex, is_algebraic_vertex_with, VertexInfo, VertexReport,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::Cone;
    use crate::kernel::rational::{q, qvec, Q};
    use crate::kernel::{dual_description, ConvexPolyhedron, Halfspace, PolyhedronSpec};
    use crate::polyfun::PolyhedralFunction;
    use crate::transform::{is_zero, transform_cones};

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

    fn sector(a: &[i64], b: &[i64]) -> ConvexPolyhedron {
        Cone::new(qvec(&[0, 0]), &[qvec(a), qvec(b)], &[])
            .unwrap()
            .to_polyhedron()
    }

    fn three_sectors() -> PolyhedralFunction {
        PolyhedralFunction::from_weighted_union(
            2,
            &[
                (q(1), sector(&[1, 0], &[1, 1])),
                (q(1), sector(&[0, 1], &[-1, 0])),
                (q(1), sector(&[-1, -1], &[0, -1])),
            ],
        )
        .unwrap()
    }

    fn half_plane() -> PolyhedralFunction {
        let p = ConvexPolyhedron::from_halfspaces(2, &[Halfspace::new(qvec(&[0, -1]), q(0))])
            .into_option()
            .unwrap();
        PolyhedralFunction::indicator(&p)
    }

    fn sorted(mut v: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
        v.sort();
        v
    }

    #[test]
    fn square_vertices() {
        let r = algebraic_vertices(&square());
        assert_eq!(
            r.algebraic,
            sorted(vec![
                qvec(&[0, 0]),
                qvec(&[0, 1]),
                qvec(&[1, 0]),
                qvec(&[1, 1])
            ])
        );
        assert_eq!(r.geometric, r.algebraic);
    }

    #[test]
    fn lshape_has_six_algebraic_vertices() {
        let r = algebraic_vertices(&lshape());
        assert_eq!(r.algebraic.len(), 6);
        assert!(r.algebraic.contains(&qvec(&[1, 1])));
        // (1,2) and (2,1) are arrangement vertices on the boundary of the
        // removed square but not corners of the L.
        assert_eq!(r.per_vertex.len(), 9);
    }

    #[test]
    fn apex_of_three_sectors_is_not_algebraic() {
        let f = three_sectors();
        let r = algebraic_vertices(&f);
        assert!(r.algebraic.is_empty());
        assert_eq!(r.geometric, vec![qvec(&[0, 0])]);
    }

    #[test]
    fn square_simplices() {
        let f = square();
        let dec = decompose_simplices(&f).unwrap();
        assert!(dec.certificate);
        assert!(dec.has_integer_coefficients());
        assert_eq!(dec.terms.len(), 2);
        let used: Vec<_> = dec.vertex_set().into_iter().collect();
        assert_eq!(used, algebraic_vertices(&f).algebraic);
        assert!(minimality_check(&f, &dec).unwrap());
    }

    #[test]
    fn lshape_simplices() {
        let f = lshape();
        let dec = decompose_simplices(&f).unwrap();
        assert!(dec.certificate);
        assert!(dec.has_integer_coefficients());
        let used: Vec<_> = dec.vertex_set().into_iter().collect();
        assert_eq!(used, algebraic_vertices(&f).algebraic);
    }

    #[test]
    fn interval_pair_segments() {
        let f = PolyhedralFunction::from_weighted_union(
            1,
            &[(q(1), boxed(&[0], &[1])), (q(-1), boxed(&[2], &[3]))],
        )
        .unwrap();
        let dec = decompose_simplices(&f).unwrap();
        assert!(dec.certificate);
        let coeffs: Vec<Q> = dec.terms.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(coeffs, vec![q(1), q(-1)]);
    }

    #[test]
    fn unbounded_is_rejected() {
        assert_eq!(
            decompose_simplices(&half_plane()),
            Err(crate::error::Error::Unbounded)
        );
    }

    #[test]
    fn cone_decompositions() {
        for f in [square(), lshape(), half_plane(), three_sectors()] {
            let dec = decompose_cones(&f).unwrap();
            assert!(dec.certificate);
            assert!(dec.residual.iter().all(|(_, c)| c.is_line_cone()));
            assert!(is_zero(&transform_cones(2, &dec.residual)));
        }
        let hp = decompose_cones(&half_plane()).unwrap();
        assert!(hp.terms.is_empty());
        assert_eq!(decompose_cones(&square()).unwrap().terms.len(), 4);
    }

    #[test]
    fn section_theorem() {
        let sq = check_section_theorem(&square(), &generating_hyperplanes(&square()));
        assert!(!sq.function_zero);
        assert!(sq.biconditional_holds);
        let f = three_sectors();
        let r = check_section_theorem(&f, &generating_hyperplanes(&f));
        assert!(r.function_zero);
        assert!(r.all_sections_zero);
        assert!(!r.contradiction);
    }

    #[test]
    fn failed_certificate_is_rejected() {
        let f = square();
        let mut dec = decompose_simplices(&f).unwrap();
        dec.terms.pop();
        dec.certificate = dec.verify(&f).unwrap();
        assert!(!dec.certificate);
        assert!(minimality_check(&f, &dec).is_err());
    }
}
