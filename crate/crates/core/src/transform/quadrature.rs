//! Numerical integration of `f(x) exp(<z, x>)`, independent of the symbolic
//! transform: exact triangulation of each cell, then tensor Gauss–Legendre
//! rules on the cube pulled back to each simplex by collapsed coordinates.

use crate::error::{Error, Result};
use crate::kernel::rational::to_f64;
use crate::kernel::{triangulate_polytope, Simplex};
use crate::polyfun::PolyhedralFunction;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

/// `int_S exp(<z, x>) dx` over a full-dimensional simplex.
pub fn simplex_integral(s: &Simplex, z: &[f64], rule: &[(f64, f64)]) -> f64 {
    let d = s.ambient_dim();
    let v: Vec<Vec<f64>> = s
        .vertices
        .iter()
        .map(|p| p.iter().map(to_f64).collect())
        .collect();
    let jac = to_f64(&num_traits::Signed::abs(&s.signed_det()));
    if d == 0 {
        return 1.0;
    }
    let n = rule.len();
    let total = n.pow(d as u32);
    let mut acc = 0.0;
    let mut y = vec![0.0; d];
    for mut idx in 0..total {
        // Collapsed map from the cube to {y >= 0, sum y <= 1}.
        let mut rest = 1.0;
        let mut w = 1.0;
        for (k, yk) in y.iter_mut().enumerate() {
            let (u, wu) = rule[idx % n];
            idx /= n;
            w *= wu;
            if k + 1 < d {
                *yk = rest * u;
                w *= rest;
                rest *= 1.0 - u;
            } else {
                *yk = rest * u;
                w *= rest;
            }
        }
        let mut e = 0.0;
        for i in 0..d {
            let mut xi = v[0][i];
            for (j, yj) in y.iter().enumerate() {
                xi += yj * (v[j + 1][i] - v[0][i]);
            }
            e += z[i] * xi;
        }
        acc += w * e.exp();
    }
    acc * jac
}

/// `int f(x) exp(<z, x>) dx` for a function with bounded support.
pub fn quadrature_oracle(f: &PolyhedralFunction, z: &[f64]) -> Result<f64> {
    quadrature_oracle_with(f, z, 16)
}

pub fn quadrature_oracle_with(f: &PolyhedralFunction, z: &[f64], order: usize) -> Result<f64> {
    if z.len() != f.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            found: z.len(),
        });
    }
    if !f.has_bounded_support() {
        return Err(Error::Unbounded);
    }
    if f.ambient_dim() == 0 {
        return Ok(f.cell_weights().first().map_or(0.0, to_f64));
    }
    let rule = gauss_legendre(order);
    let mut acc = 0.0;
    for (p, w) in f.cells() {
        let simplices = triangulate_polytope(p)?;
        let cell: f64 = simplices
            .iter()
            .map(|s| simplex_integral(s, z, &rule))
            .sum();
        acc += to_f64(w) * cell;
    }
    Ok(acc)
}
