use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::rational::{dot, format_q, neg, sign, Q};

use super::cone::Cone;

/// `[C] = sign * [reflected] + sum eps_i [D_i]` almost everywhere, with
/// every generator of `reflected` on the positive side of the direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReduction {
    pub sign: i8,
    pub reflected: Cone,
    pub line_cones: Vec<(i8, Cone)>,
}

/// Reflect the generators of a simplicial cone with `<v, w_j> < 0`, one at a
/// time in index order. Each flip uses
/// `[pos(w, R)] = [pos(w, -w, R)] - [pos(-w, R)]`.
pub fn star_reduction(c: &Cone, v: &[Q]) -> Result<StarReduction> {
    if !c.is_simplicial() {
        return Err(Error::Precondition(
            "star reduction needs a simplicial cone".into(),
        ));
    }
    if v.len() != c.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: c.ambient_dim(),
            found: v.len(),
        });
    }
    let products: Vec<Q> = c.generators().iter().map(|w| dot(v, w)).collect();
    if products.iter().any(Zero::is_zero) {
        return Err(Error::DirectionNotGeneric(v.iter().map(format_q).collect()));
    }
    let mut gens: Vec<Vec<Q>> = c.generators().to_vec();
    let mut s: i8 = 1;
    let mut line_cones = Vec::new();
    for j in 0..gens.len() {
        if products[j].is_positive() {
            continue;
        }
        let w = gens[j].clone();
        let rest: Vec<Vec<Q>> = gens
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, g)| g.clone())
            .collect();
        let d = Cone::new(c.apex().to_vec(), &rest, std::slice::from_ref(&w))?;
        line_cones.push((s, d));
        gens[j] = neg(&w);
        s = -s;
    }
    let reflected = Cone::simplicial_unchecked(c.apex().to_vec(), gens);
    Ok(StarReduction {
        sign: s,
        reflected,
        line_cones,
    })
}

impl StarReduction {
    /// `sign * [reflected] + sum eps_i [D_i]` as weighted cones.
    pub fn terms(&self) -> Vec<(Q, Cone)> {
        let mut out = vec![(Q::from_integer(self.sign.into()), self.reflected.clone())];
        out.extend(
            self.line_cones
                .iter()
                .map(|(e, d)| (Q::from_integer((*e).into()), d.clone())),
        );
        out
    }

    pub fn is_positive_on(&self, v: &[Q]) -> bool {
        self.reflected
            .generators()
            .iter()
            .all(|w| sign(&dot(v, w)) > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::cone::cone_sum_function;
    use crate::kernel::rational::qvec;

    fn cone(gens: &[&[i64]]) -> Cone {
        let g: Vec<Vec<Q>> = gens.iter().map(|w| qvec(w)).collect();
        Cone::new(vec![Q::zero(); g[0].len()], &g, &[]).unwrap()
    }

    fn verify(c: &Cone, r: &StarReduction) -> bool {
        let lhs = c.indicator();
        let rhs = cone_sum_function(c.ambient_dim(), &r.terms());
        lhs.ae_equal(&rhs).unwrap()
    }

    #[test]
    fn positive_cone_is_unchanged() {
        let c = cone(&[&[1, 0], &[0, 1]]);
        let r = star_reduction(&c, &qvec(&[1, 1])).unwrap();
        assert_eq!(r.sign, 1);
        assert_eq!(r.reflected, c);
        assert!(r.line_cones.is_empty());
    }

    #[test]
    fn one_flip() {
        let c = cone(&[&[1, 0], &[-1, 1]]);
        let v = qvec(&[1, 0]);
        let r = star_reduction(&c, &v).unwrap();
        assert_eq!(r.sign, -1);
        assert_eq!(r.reflected, cone(&[&[1, 0], &[1, -1]]));
        assert_eq!(r.line_cones.len(), 1);
        assert!(r.line_cones[0].1.is_line_cone());
        assert!(r.is_positive_on(&v));
        assert!(verify(&c, &r));
    }

    #[test]
    fn two_flips() {
        let c = cone(&[&[-1, 0], &[0, -1]]);
        let v = qvec(&[1, 1]);
        let r = star_reduction(&c, &v).unwrap();
        assert_eq!(r.sign, 1);
        assert_eq!(r.reflected, cone(&[&[1, 0], &[0, 1]]));
        assert_eq!(r.line_cones.len(), 2);
        assert!(verify(&c, &r));
    }

    #[test]
    fn orthogonal_direction_is_rejected() {
        let c = cone(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            star_reduction(&c, &qvec(&[0, 1])),
            Err(Error::DirectionNotGeneric(_))
        ));
    }

    #[test]
    fn three_dimensional_identity() {
        let c = cone(&[&[1, 2, -1], &[-3, 1, 0], &[0, -1, -2]]);
        let v = qvec(&[1, 1, 1]);
        let r = star_reduction(&c, &v).unwrap();
        assert!(r.is_positive_on(&v));
        assert!(verify(&c, &r));
    }
}
