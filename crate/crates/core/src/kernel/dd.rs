//! Incremental double description for polyhedral cones `{y : A y <= 0}`.
//!
//! The state keeps a lineality basis, the irredundant extreme rays of the
//! pointed part, and every constraint row added so far. Adjacency of rays is
//! decided algebraically from the rank of their common tight rows.

use num_traits::Zero;

use super::linalg::rank_of;
use super::rational::{dot, neg, primitive, sign, Q};

#[derive(Clone, Debug)]
pub struct DdState {
    pub n: usize,
    pub lineality: Vec<Vec<Q>>,
    pub rays: Vec<Vec<Q>>,
    pub constraints: Vec<Vec<Q>>,
}

impl DdState {
    /// The whole space `R^n`.
    pub fn full(n: usize) -> Self {
        let lineality = (0..n)
            .map(|i| {
                let mut e = vec![Q::zero(); n];
                e[i] = num_traits::One::one();
                e
            })
            .collect();
        Self {
            n,
            lineality,
            rays: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn from_constraints(n: usize, rows: &[Vec<Q>]) -> Self {
        let mut st = Self::full(n);
        for r in rows {
            st.add(r);
        }
        st
    }

    /// Intersect with `{y : row·y <= 0}`.
    pub fn add(&mut self, row: &[Q]) {
        debug_assert_eq!(row.len(), self.n);
        if row.iter().all(Zero::is_zero) {
            return;
        }
        self.constraints.push(row.to_vec());
        if let Some(p) = self.lineality.iter().position(|l| !dot(row, l).is_zero()) {
            let lp = self.lineality.remove(p);
            let s = dot(row, &lp);
            for l in self.lineality.iter_mut() {
                let c = dot(row, l) / &s;
                if !c.is_zero() {
                    for (x, y) in l.iter_mut().zip(&lp) {
                        *x -= &c * y;
                    }
                }
            }
            for r in self.rays.iter_mut() {
                let c = dot(row, r) / &s;
                if !c.is_zero() {
                    for (x, y) in r.iter_mut().zip(&lp) {
                        *x -= &c * y;
                    }
                    *r = primitive(r);
                }
            }
            let fresh = if s < Q::zero() { lp } else { neg(&lp) };
            self.rays.push(primitive(&fresh));
            return;
        }

        let vals: Vec<Q> = self.rays.iter().map(|r| dot(row, r)).collect();
        let (mut pos, mut keep) = (Vec::new(), Vec::new());
        let mut negs = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            match sign(v) {
                1 => pos.push(i),
                -1 => {
                    negs.push(i);
                    keep.push(i)
                }
                _ => keep.push(i),
            }
        }
        if pos.is_empty() {
            return;
        }
        let mut next: Vec<Vec<Q>> = keep.iter().map(|&i| self.rays[i].clone()).collect();
        if !negs.is_empty() {
            // Tight sets over the constraints seen before `row`.
            let prior = &self.constraints[..self.constraints.len() - 1];
            let tight: Vec<Vec<usize>> = self
                .rays
                .iter()
                .map(|r| {
                    prior
                        .iter()
                        .enumerate()
                        .filter(|(_, a)| dot(a, r).is_zero())
                        .map(|(k, _)| k)
                        .collect()
                })
                .collect();
            let target = self.n - self.lineality.len();
            for &p in &pos {
                for &m in &negs {
                    let common: Vec<usize> = tight[p]
                        .iter()
                        .copied()
                        .filter(|k| tight[m].contains(k))
                        .collect();
                    if common.len() + 2 < target {
                        continue;
                    }
                    // Quick combinatorial filter: no third ray may be tight on all of `common`.
                    let blocked = (0..self.rays.len())
                        .any(|o| o != p && o != m && common.iter().all(|k| tight[o].contains(k)));
                    if blocked {
                        continue;
                    }
                    if rank_of(common.iter().map(|&k| &prior[k])) + 2 != target {
                        continue;
                    }
                    let a = &vals[p];
                    let b = &vals[m];
                    let comb: Vec<Q> = self.rays[m]
                        .iter()
                        .zip(&self.rays[p])
                        .map(|(x, y)| a * x - b * y)
                        .collect();
                    next.push(primitive(&comb));
                }
            }
        }
        self.rays = next;
    }

    /// True when the cone is `{0}` or has no ray with positive last coordinate
    /// (used for homogenized polyhedra).
    pub fn homogenized_is_empty(&self) -> bool {
        let last = self.n - 1;
        !self.rays.iter().any(|r| r[last] > Q::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::qvec;

    fn sorted(mut v: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
        v.sort();
        v
    }

    #[test]
    fn orthant_from_constraints() {
        let st = DdState::from_constraints(2, &[qvec(&[-1, 0]), qvec(&[0, -1])]);
        assert!(st.lineality.is_empty());
        assert_eq!(sorted(st.rays), vec![qvec(&[0, 1]), qvec(&[1, 0])]);
    }

    #[test]
    fn square_cone_has_four_rays() {
        // Homogenized unit square: 0 <= x <= t, 0 <= y <= t, t >= 0.
        let rows = [
            qvec(&[0, 0, -1]),
            qvec(&[-1, 0, 0]),
            qvec(&[1, 0, -1]),
            qvec(&[0, -1, 0]),
            qvec(&[0, 1, -1]),
        ];
        let st = DdState::from_constraints(3, &rows);
        assert!(st.lineality.is_empty());
        assert_eq!(
            sorted(st.rays),
            vec![
                qvec(&[0, 0, 1]),
                qvec(&[0, 1, 1]),
                qvec(&[1, 0, 1]),
                qvec(&[1, 1, 1])
            ]
        );
    }

    #[test]
    fn halfplane_keeps_lineality() {
        let st = DdState::from_constraints(2, &[qvec(&[0, -1])]);
        assert_eq!(st.lineality.len(), 1);
        assert_eq!(st.rays, vec![qvec(&[0, 1])]);
    }

    #[test]
    fn redundant_constraints_are_harmless() {
        let rows = [
            qvec(&[-1, 0, 0]),
            qvec(&[0, -1, 0]),
            qvec(&[0, 0, -1]),
            qvec(&[-1, -1, 0]),
            qvec(&[-1, -1, -1]),
        ];
        let st = DdState::from_constraints(3, &rows);
        assert_eq!(st.rays.len(), 3);
    }
}
