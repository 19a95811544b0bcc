//! Built-in example scenes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scene::{Scene, SceneSource};
use crate::error::{Error, Result};
use crate::kernel::linalg::rank;
use crate::kernel::rational::{q, qf, qvec, sub, Point, Q};
use crate::kernel::{Halfspace, PolyhedronSpec};

pub const NAMES: &[&str] = &[
    "square",
    "cube",
    "lshape",
    "triangle",
    "interval-pair",
    "quadrant",
    "halfplane",
    "strip",
    "three-sectors",
    "bowtie",
    "schonhardt",
    "random-0",
    "random-1",
    "random-2",
];

fn boxed(lo: &[i64], hi: &[i64]) -> PolyhedronSpec {
    let d = lo.len();
    let mut h = Vec::new();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        h.push(Halfspace::new(qvec(&e), q(hi[i])));
        e[i] = -1;
        h.push(Halfspace::new(qvec(&e), q(-lo[i])));
    }
    PolyhedronSpec::H(h)
}

fn hull(vertices: Vec<Point>) -> PolyhedronSpec {
    PolyhedronSpec::V {
        vertices,
        rays: Vec::new(),
        lineality: Vec::new(),
    }
}

fn sector(a: &[i64], b: &[i64]) -> PolyhedronSpec {
    PolyhedronSpec::V {
        vertices: vec![qvec(&[0, 0])],
        rays: vec![qvec(a), qvec(b)],
        lineality: Vec::new(),
    }
}

fn build(name: &str, d: usize, terms: Vec<(Q, PolyhedronSpec)>, note: &str) -> Result<Scene> {
    Ok(Scene::new(name, d, terms, SceneSource::Gallery)?.with_note(note))
}

/// Vertices of the rational twisted prism: a triangle and a copy rotated by
/// the angle with cosine 3/5 and sine 4/5, lifted to height 2.
pub fn schonhardt_vertices() -> (Vec<Point>, Vec<Point>) {
    let a = vec![qvec(&[2, 0, 0]), qvec(&[-1, 2, 0]), qvec(&[-1, -2, 0])];
    let (c, s) = (qf(3, 5), qf(4, 5));
    let b = a
        .iter()
        .map(|p| vec![&c * &p[0] - &s * &p[1], &s * &p[0] + &c * &p[1], q(2)])
        .collect();
    (a, b)
}

fn schonhardt() -> Result<Scene> {
    let (a, b) = schonhardt_vertices();
    let mut all = a.clone();
    all.extend(b.iter().cloned());
    let mut terms = vec![(q(1), hull(all))];
    for i in 0..3 {
        let j = (i + 1) % 3;
        terms.push((
            q(-1),
            hull(vec![a[i].clone(), a[j].clone(), b[i].clone(), b[j].clone()]),
        ));
    }
    build(
        "schonhardt",
        3,
        terms,
        "twisted triangular prism with reflex side diagonals: hull minus three side tetrahedra; \
         rational twist cos=3/5, sin=4/5",
    )
}

/// Convex hull of 5 to 10 seeded integer points in [-4, 4]^3.
fn random_polytope(index: u64, seed: u64) -> Result<Scene> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1000).wrapping_add(index));
    loop {
        let n = rng.gen_range(5..=10);
        let pts: Vec<Point> = (0..n)
            .map(|_| (0..3).map(|_| q(rng.gen_range(-4..=4))).collect())
            .collect();
        let diffs: Vec<Vec<Q>> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
        if rank(&diffs) == 3 {
            return build(
                &format!("random-{index}"),
                3,
                vec![(q(1), hull(pts))],
                "convex hull of seeded random integer points",
            );
        }
    }
}

pub fn scene(name: &str, seed: u64) -> Result<Scene> {
    match name {
        "square" => build(
            "square",
            2,
            vec![(q(1), boxed(&[0, 0], &[1, 1]))],
            "unit square",
        ),
        "cube" => build(
            "cube",
            3,
            vec![(q(1), boxed(&[0, 0, 0], &[1, 1, 1]))],
            "unit cube",
        ),
        "lshape" => build(
            "lshape",
            2,
            vec![
                (q(1), boxed(&[0, 0], &[2, 2])),
                (q(-1), boxed(&[1, 1], &[2, 2])),
            ],
            "[0,2]^2 minus [1,2]^2",
        ),
        "triangle" => build(
            "triangle",
            2,
            vec![(
                q(1),
                hull(vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])]),
            )],
            "standard triangle",
        ),
        "interval-pair" => build(
            "interval-pair",
            1,
            vec![(q(1), boxed(&[0], &[1])), (q(-1), boxed(&[2], &[3]))],
            "[0,1] with weight 1 and [2,3] with weight -1",
        ),
        "quadrant" => build(
            "quadrant",
            2,
            vec![(q(1), sector(&[1, 0], &[0, 1]))],
            "positive quadrant",
        ),
        "halfplane" => build(
            "halfplane",
            2,
            vec![(
                q(1),
                PolyhedronSpec::H(vec![Halfspace::new(qvec(&[0, -1]), q(0))]),
            )],
            "half-plane y >= 0, a line-cone",
        ),
        "strip" => build(
            "strip",
            2,
            vec![(
                q(1),
                PolyhedronSpec::H(vec![
                    Halfspace::new(qvec(&[0, -1]), q(0)),
                    Halfspace::new(qvec(&[0, 1]), q(1)),
                ]),
            )],
            "strip 0 <= y <= 1, a union of parallel lines",
        ),
        "three-sectors" => build(
            "three-sectors",
            2,
            vec![
                (q(1), sector(&[1, 0], &[1, 1])),
                (q(1), sector(&[0, 1], &[-1, 0])),
                (q(1), sector(&[-1, -1], &[0, -1])),
            ],
            "three sectors pos{u0,u1}, pos{u2,-u0}, pos{-u1,-u2} with u0=(1,0), u1=(1,1), \
             u2=u1-u0; the apex has zero tangent-cone transform",
        ),
        "bowtie" => build(
            "bowtie",
            2,
            vec![
                (
                    q(1),
                    hull(vec![qvec(&[0, 0]), qvec(&[-2, 1]), qvec(&[-2, -1])]),
                ),
                (
                    q(1),
                    hull(vec![qvec(&[0, 0]), qvec(&[2, 1]), qvec(&[2, -1])]),
                ),
            ],
            "two triangles touching at the origin",
        ),
        "schonhardt" => schonhardt(),
        _ => {
            if let Some(i) = name.strip_prefix("random-") {
                if let Ok(i) = i.parse::<u64>() {
                    return random_polytope(i, seed);
                }
            }
            Err(Error::UnknownScene(name.to_string()))
        }
    }
}

pub fn gallery(seed: u64) -> Vec<Scene> {
    NAMES
        .iter()
        .map(|n| scene(n, seed).expect("gallery scenes are valid"))
        .collect()
}
