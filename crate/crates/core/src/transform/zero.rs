//! Exact zero test for exponential-rational sums.
//!
//! Distinct exponentials are linearly independent over rational functions,
//! so a sum vanishes iff each per-vertex part `F_v = sum c_i / prod l_ij`
//! does. Each `F_v` is brought over the common denominator
//! `L = prod_p p^(M_p)` (product over distinct primitive forms `p`, `M_p` the
//! largest multiplicity in any term), leaving a homogeneous integer
//! numerator `N` of degree `sum M_p - d`, and `F_v = 0` iff `N = 0`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::term::{group_by_vertex, TransformSum, TransformTerm};
use crate::kernel::rational::{primitive, to_bigints, Q};
use crate::par;

/// How to decide `N = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    /// Expansion for small groups, otherwise the cheaper of expansion and
    /// grid evaluation (grid offset and fallback seed from `offset`).
    Auto { offset: u64 },
    /// Multiply out `N` as a sparse polynomial.
    Expand,
    /// Evaluate `N` on the grid `{offset+1, ..., offset+deg+1}^d`. A nonzero
    /// polynomial of degree `deg` cannot vanish on all of it.
    Grid { offset: u64 },
    /// Evaluate `N` at `trials` seeded random integer points. One-sided:
    /// "nonzero" is always correct.
    Random { trials: usize, seed: u64 },
}

/// Group of terms sharing a vertex, over a common denominator.
#[derive(Clone, Debug)]
pub struct Numerator {
    pub dim: usize,
    /// Distinct primitive forms (first nonzero entry positive).
    pub forms: Vec<Vec<BigInt>>,
    /// `(coefficient, exponent of each form)`; like exponents are merged.
    pub terms: Vec<(BigInt, Vec<u32>)>,
    pub degree: usize,
}

impl Numerator {
    pub fn new(dim: usize, group: &[TransformTerm]) -> Numerator {
        let mut index: HashMap<Vec<BigInt>, usize> = HashMap::new();
        let mut forms: Vec<Vec<BigInt>> = Vec::new();
        let mut raw: Vec<(Q, Vec<u32>)> = Vec::new();
        for t in group {
            let mut coeff = t.coeff.clone();
            let mut mult: Vec<u32> = vec![0; forms.len()];
            for w in &t.forms {
                let mut p = primitive(w);
                let lead = p
                    .iter()
                    .find(|x| !x.is_zero())
                    .cloned()
                    .unwrap_or_else(Q::one);
                if lead.is_negative() {
                    p = p.iter().map(|x| -x).collect();
                }
                // w = lambda * p
                let k = w.iter().position(|x| !x.is_zero()).unwrap_or(0);
                let lambda = &w[k] / &p[k];
                coeff /= lambda;
                let key = to_bigints(&p);
                let idx = *index.entry(key.clone()).or_insert_with(|| {
                    forms.push(key);
                    forms.len() - 1
                });
                if mult.len() < forms.len() {
                    mult.resize(forms.len(), 0);
                }
                mult[idx] += 1;
            }
            raw.push((coeff, mult));
        }
        let n = forms.len();
        let mut max = vec![0u32; n];
        for (_, m) in &mut raw {
            m.resize(n, 0);
            for (a, b) in max.iter_mut().zip(m.iter()) {
                *a = (*a).max(*b);
            }
        }
        let mut merged: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (c, m) in raw {
            let e: Vec<u32> = max.iter().zip(&m).map(|(a, b)| a - b).collect();
            *merged.entry(e).or_insert_with(Q::zero) += c;
        }
        let mut den = BigInt::one();
        for c in merged.values() {
            den = den.lcm(c.denom());
        }
        let terms: Vec<(BigInt, Vec<u32>)> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c.numer() * (&den / c.denom()), e))
            .collect();
        let total: u32 = max.iter().sum();
        Numerator {
            dim,
            forms,
            terms,
            degree: (total as usize).saturating_sub(dim),
        }
    }

    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `N(x)` at an integer point.
    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let vals: Vec<BigInt> = self
            .forms
            .iter()
            .map(|p| p.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        let mut acc = BigInt::zero();
        for (c, e) in &self.terms {
            let mut t = c.clone();
            for (v, k) in vals.iter().zip(e) {
                if *k > 0 {
                    t *= num_traits::pow(v.clone(), *k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Number of monomials of degree `degree` in `dim` variables.
    pub fn monomial_bound(&self) -> f64 {
        binomial(
            self.degree + self.dim.saturating_sub(1),
            self.dim.saturating_sub(1),
        )
    }

    pub fn grid_size(&self) -> f64 {
        ((self.degree + 1) as f64).powi(self.dim as i32)
    }

    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::default();
        for (c, e) in &self.terms {
            let mut p = Polynomial::constant(self.dim, c.clone());
            for (form, k) in self.forms.iter().zip(e) {
                for _ in 0..*k {
                    p = p.mul_linear(form);
                }
            }
            acc.add_assign(&p);
        }
        acc
    }

    pub fn vanishes_on_grid(&self, offset: u64) -> bool {
        let m = self.degree + 1;
        let total = m.pow(self.dim as u32);
        let base = BigInt::from(offset) + 1;
        !par::range_any(total, |mut idx| {
            let mut x = Vec::with_capacity(self.dim);
            for _ in 0..self.dim {
                x.push(&base + BigInt::from(idx % m));
                idx /= m;
            }
            !self.eval(&x).is_zero()
        })
    }

    pub fn vanishes_at_random(&self, trials: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<Vec<BigInt>> = (0..trials)
            .map(|_| {
                (0..self.dim)
                    .map(|_| BigInt::from(rng.gen_range(-(1i64 << 40)..=(1i64 << 40))))
                    .collect()
            })
            .collect();
        !par::any(&points, |x| !self.eval(x).is_zero())
    }

    /// The concrete method `Auto` picks for this numerator.
    pub fn resolve(&self, method: ZeroTest) -> ZeroTest {
        let ZeroTest::Auto { offset } = method else {
            return method;
        };
        let n = self.terms.len() as f64;
        let expand_cost = n * self.degree as f64 * self.monomial_bound();
        let grid_cost = n * self.forms.len() as f64 * self.grid_size();
        if self.terms.len() <= 8 || expand_cost <= grid_cost {
            if expand_cost < 1e9 {
                return ZeroTest::Expand;
            }
        } else if grid_cost < 1e9 {
            return ZeroTest::Grid { offset };
        }
        ZeroTest::Random {
            trials: 32,
            seed: offset,
        }
    }

    pub fn is_zero(&self, method: ZeroTest) -> bool {
        if self.is_trivially_zero() {
            return true;
        }
        match self.resolve(method) {
            ZeroTest::Expand => self.expand().is_zero(),
            ZeroTest::Grid { offset } => self.vanishes_on_grid(offset),
            ZeroTest::Random { trials, seed } => self.vanishes_at_random(trials, seed),
            ZeroTest::Auto { .. } => unreachable!("resolve returns a concrete method"),
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Sparse integer polynomial keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn constant(dim: usize, c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(vec![0; dim], c);
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul_linear(&self, form: &[BigInt]) -> Self {
        let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            for (i, a) in form.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut f = e.clone();
                f[i] += 1;
                *out.entry(f).or_insert_with(BigInt::zero) += c * a;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { coeffs: out }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (e, c) in &other.coeffs {
            let slot = self.coeffs.entry(e.clone()).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                self.coeffs.remove(e);
            }
        }
    }
}

/// Per-vertex numerators of a sum, in vertex order.
pub fn numerators(s: &TransformSum) -> Vec<Numerator> {
    group_by_vertex(s)
        .values()
        .map(|g| Numerator::new(s.ambient_dim, g))
        .collect()
}

pub fn is_zero_with(s: &TransformSum, method: ZeroTest) -> bool {
    let groups: Vec<Vec<TransformTerm>> = group_by_vertex(s).into_values().collect();
    let d = s.ambient_dim;
    !par::any(&groups, |g| !Numerator::new(d, g).is_zero(method))
}

/// Whether `is_zero_with(s, method)` is a proof in both directions, i.e.
/// no vertex group falls back to random evaluation.
pub fn is_decision_exact(s: &TransformSum, method: ZeroTest) -> bool {
    numerators(s)
        .iter()
        .all(|n| n.is_trivially_zero() || !matches!(n.resolve(method), ZeroTest::Random { .. }))
}

/// Whether the sum is identically zero as a function of `z`.
pub fn is_zero(s: &TransformSum) -> bool {
    is_zero_with(s, ZeroTest::Auto { offset: 0 })
}
