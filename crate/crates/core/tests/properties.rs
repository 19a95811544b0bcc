use num_traits::Zero;
use proptest::prelude::*;

use polyvert::decomposition::{algebraic_vertices, decompose_simplices};
use polyvert::kernel::{
    arrangement, dual_description, format_q, parse_q, q, qf, Halfspace, Hyperplane, Location,
    PolyhedronSpec,
};
use polyvert::transform::{evaluate_exact, is_zero, transform_function};
use polyvert::{PolyhedralFunction, Q};

fn boxed(lo: &[i64], size: &[i64]) -> PolyhedralFunction {
    let d = lo.len();
    let mut h = Vec::new();
    for i in 0..d {
        let mut e = vec![q(0); d];
        e[i] = q(1);
        h.push(Halfspace::new(e.clone(), q(lo[i] + size[i])));
        e[i] = q(-1);
        h.push(Halfspace::new(e, q(-lo[i])));
    }
    PolyhedralFunction::indicator(
        &dual_description(d, &PolyhedronSpec::H(h))
            .into_option()
            .unwrap(),
    )
}

fn box2() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (
        prop::collection::vec(-3i64..3, 2),
        prop::collection::vec(1i64..3, 2),
    )
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rational_text_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
        let x = qf(n, d);
        prop_assert_eq!(parse_q(&format_q(&x)).unwrap(), x);
    }

    #[test]
    fn arrangement_partitions_the_plane(
        lines in prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 1..5),
        points in prop::collection::vec((-40i64..40, -40i64..40), 1..8),
    ) {
        let planes: Vec<Hyperplane> = lines
            .iter()
            .filter_map(|(a, b, c)| Hyperplane::canonical(&[q(*a), q(*b)], &q(*c)).map(|(h, _)| h))
            .collect();
        let cx = arrangement(&planes, 2);
        for (x, y) in points {
            let p = vec![qf(x, 7), qf(y, 7)];
            let holders: Vec<usize> = cx
                .cells()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.polyhedron.contains(&p))
                .map(|(i, _)| i)
                .collect();
            match cx.locate(&p) {
                Location::Cell(i) => prop_assert_eq!(holders, vec![i]),
                Location::Face(adj) => {
                    prop_assert!(adj.len() >= 2);
                    prop_assert_eq!(holders, adj);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn transform_is_linear(f in box2(), g in box2(), a in -3i64..=3, b in -3i64..=3) {
        let f = boxed(&f.0, &f.1);
        let g = boxed(&g.0, &g.1);
        let combo = PolyhedralFunction::linear_combination(2, &[(q(a), &f), (q(b), &g)]).unwrap();
        let lhs = transform_function(&combo);
        let rhs = transform_function(&f).scale(&q(a)).add(&transform_function(&g).scale(&q(b)));
        prop_assert!(is_zero(&lhs.sub(&rhs)));
    }

    #[test]
    fn transform_shift_law(f in box2(), t in prop::collection::vec(-5i64..5, 2)) {
        let f = boxed(&f.0, &f.1);
        let t: Vec<Q> = t.into_iter().map(q).collect();
        let shifted = transform_function(&f.translated(&t));
        prop_assert!(is_zero(&shifted.sub(&transform_function(&f).translated(&t))));
    }

    #[test]
    fn box_transform_matches_closed_form(
        b in box2(),
        z in prop::collection::vec((1i64..5, prop::bool::ANY), 2),
    ) {
        let f = boxed(&b.0, &b.1);
        let z: Vec<Q> = z.iter().map(|(n, s)| if *s { qf(*n, 3) } else { qf(-*n, 3) }).collect();
        // Triangulation introduces diagonal forms; points where one vanishes
        // are poles of single terms even though the sum is analytic there.
        let value = evaluate_exact(&transform_function(&f), &z);
        prop_assume!(!matches!(value, Err(polyvert::Error::PoleAt(_))));
        let got = value.unwrap().to_f64();
        let mut want = 1.0;
        for (i, zi) in z.iter().enumerate() {
            let zi = polyvert::kernel::rational::to_f64(zi);
            let (lo, hi) = (b.0[i] as f64, (b.0[i] + b.1[i]) as f64);
            want *= ((zi * hi).exp() - (zi * lo).exp()) / zi;
        }
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{got} vs {want}");
    }

    #[test]
    fn ae_equality_is_algebraic(f in box2(), g in box2()) {
        let f = boxed(&f.0, &f.1);
        let g = boxed(&g.0, &g.1);
        let back = f.add(&g).unwrap().sub(&g).unwrap();
        prop_assert!(back.ae_equal(&f).unwrap());
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn simplex_decomposition_of_box_unions(
        f in box2(),
        g in box2(),
        a in prop::sample::select(vec![-2i64, -1, 1, 2]),
    ) {
        let f = boxed(&f.0, &f.1);
        let g = boxed(&g.0, &g.1);
        let h = PolyhedralFunction::linear_combination(2, &[(q(1), &f), (q(a), &g)]).unwrap();
        prop_assume!(!h.is_zero());
        let dec = decompose_simplices(&h).unwrap();
        prop_assert!(dec.certificate);
        prop_assert!(dec.has_integer_coefficients());
        let used: Vec<_> = dec.vertex_set().into_iter().collect();
        prop_assert_eq!(used, algebraic_vertices(&h).algebraic);
        prop_assert!(dec.terms.iter().all(|(c, _)| !c.is_zero()));
    }
}
