use crate::kernel::rational::Q;
use crate::kernel::ConvexPolyhedron;

use super::cone::Cone;

/// One signed tangent cone of the expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCone {
    pub sign: i8,
    pub face_dim: usize,
    pub cone: Cone,
}

/// `[P] = sum_F (-1)^(dim F - l) [tcone(P, x_F)]` over the faces `F` that
/// are bounded modulo the lineality space (dimension `l`), with `x_F` a
/// relative-interior point of `F`. For polytopes this is the sum over all
/// faces. Lower-dimensional polyhedra vanish almost everywhere and give an
/// empty expansion.
pub fn brianchon_gram(p: &ConvexPolyhedron) -> Vec<FaceCone> {
    if !p.is_full_dimensional() {
        return Vec::new();
    }
    let l = p.lineality().len();
    p.faces()
        .into_iter()
        .filter(|f| f.rays.is_empty())
        .map(|f| {
            let x = p.face_point(&f);
            let sign = if (f.dim - l).is_multiple_of(2) { 1 } else { -1 };
            FaceCone {
                sign,
                face_dim: f.dim,
                cone: Cone::tangent(p, &x),
            }
        })
        .collect()
}

/// The expansion as weighted cones.
pub fn brianchon_gram_terms(p: &ConvexPolyhedron) -> Vec<(Q, Cone)> {
    brianchon_gram(p)
        .into_iter()
        .map(|fc| (Q::from_integer(fc.sign.into()), fc.cone))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::cone::cone_sum_function;
    use crate::kernel::rational::{q, qvec};
    use crate::kernel::{dual_description, Halfspace, PolyhedronSpec};
    use crate::polyfun::PolyhedralFunction;

    fn h(p: &[(Vec<i64>, i64)], d: usize) -> ConvexPolyhedron {
        let hs: Vec<Halfspace> = p
            .iter()
            .map(|(a, b)| Halfspace::new(qvec(a), q(*b)))
            .collect();
        dual_description(d, &PolyhedronSpec::H(hs))
            .into_option()
            .unwrap()
    }

    fn reassembles(p: &ConvexPolyhedron) -> bool {
        let sum = cone_sum_function(p.ambient_dim(), &brianchon_gram_terms(p));
        PolyhedralFunction::indicator(p).ae_equal(&sum).unwrap()
    }

    #[test]
    fn interval() {
        let p = h(&[(vec![1], 1), (vec![-1], 0)], 1);
        let bg = brianchon_gram(&p);
        let signs: Vec<i8> = bg.iter().map(|f| f.sign).collect();
        assert_eq!(signs, vec![1, 1, -1]);
        assert!(bg[2].cone.is_line_cone());
        assert!(reassembles(&p));
    }

    #[test]
    fn triangle() {
        let p = h(&[(vec![-1, 0], 0), (vec![0, -1], 0), (vec![1, 1], 1)], 2);
        let bg = brianchon_gram(&p);
        let count = |d: usize| bg.iter().filter(|f| f.face_dim == d).count();
        assert_eq!((count(0), count(1), count(2)), (3, 3, 1));
        assert!(bg
            .iter()
            .all(|f| (f.face_dim == 0) != f.cone.is_line_cone()));
        assert!(reassembles(&p));
    }

    #[test]
    fn unbounded_cells() {
        let quadrant = h(&[(vec![-1, 0], 0), (vec![0, -1], 0)], 2);
        assert_eq!(brianchon_gram(&quadrant).len(), 1);
        assert!(reassembles(&quadrant));
        let half_strip = h(&[(vec![-1, 0], 0), (vec![1, 0], 1), (vec![0, -1], 0)], 2);
        assert!(reassembles(&half_strip));
        let slab = h(&[(vec![-1, 0], 0), (vec![1, 0], 1)], 2);
        assert!(reassembles(&slab));
    }

    #[test]
    fn lower_dimensional_is_empty() {
        let pt = h(
            &[
                (vec![1, 0], 0),
                (vec![-1, 0], 0),
                (vec![0, 1], 0),
                (vec![0, -1], 0),
            ],
            2,
        );
        assert!(brianchon_gram(&pt).is_empty());
    }
}
