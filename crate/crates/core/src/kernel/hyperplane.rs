use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{dot, format_q, neg, sign, Q};

/// Unoriented hyperplane `{x : <normal, x> = offset}` in canonical scaling:
/// the first nonzero entry of `normal` is 1. Equal planes compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    #[serde(with = "super::rational::serde_q::vec")]
    normal: Vec<Q>,
    #[serde(with = "super::rational::serde_q")]
    offset: Q,
}

impl Hyperplane {
    /// Canonicalize `<normal, x> = offset`. Returns the plane and whether the
    /// input normal pointed opposite to the canonical one.
    pub fn canonical(normal: &[Q], offset: &Q) -> Option<(Hyperplane, bool)> {
        let lead = normal.iter().find(|x| !x.is_zero())?.clone();
        let inv = Q::one() / &lead;
        let plane = Hyperplane {
            normal: normal.iter().map(|x| x * &inv).collect(),
            offset: offset * &inv,
        };
        Some((plane, lead < Q::zero()))
    }

    pub fn normal(&self) -> &[Q] {
        &self.normal
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `<normal, x> - offset`.
    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.normal, x) - &self.offset
    }

    /// Side of `x`: -1, 0 or 1 relative to the canonical normal.
    pub fn side(&self, x: &[Q]) -> i8 {
        sign(&self.eval(x))
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.eval(x).is_zero()
    }

    /// Index of the first nonzero normal coordinate (the chart pivot).
    pub fn pivot(&self) -> usize {
        self.normal
            .iter()
            .position(|x| !x.is_zero())
            .expect("hyperplane normal is nonzero")
    }
}

impl std::fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n: Vec<String> = self.normal.iter().map(format_q).collect();
        write!(f, "<[{}], x> = {}", n.join(", "), format_q(&self.offset))
    }
}

/// Hyperplane with a chosen positive side `{<n_h, x> > b_h}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrientedHyperplane {
    pub plane: Hyperplane,
    /// When set, the positive side is opposite to the canonical normal.
    pub flipped: bool,
}

impl OrientedHyperplane {
    pub fn new(normal: &[Q], offset: &Q) -> Option<Self> {
        Hyperplane::canonical(normal, offset).map(|(plane, flipped)| Self { plane, flipped })
    }

    pub fn from_plane(plane: Hyperplane, flipped: bool) -> Self {
        Self { plane, flipped }
    }

    pub fn reversed(&self) -> Self {
        Self {
            plane: self.plane.clone(),
            flipped: !self.flipped,
        }
    }

    /// Oriented normal `n_h`.
    pub fn normal(&self) -> Vec<Q> {
        if self.flipped {
            neg(self.plane.normal())
        } else {
            self.plane.normal().to_vec()
        }
    }

    /// Canonical side value that counts as positive for this orientation.
    pub fn positive_side(&self) -> i8 {
        if self.flipped {
            -1
        } else {
            1
        }
    }

    /// -1, 0, 1 relative to the oriented normal.
    pub fn side(&self, x: &[Q]) -> i8 {
        self.plane.side(x) * self.positive_side()
    }
}
