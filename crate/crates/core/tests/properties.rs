use proptest::prelude::*;

use sumset_core::geometry::{
    convex_hull, facet_enum, grid_minkowski, minkowski_sum, slice_body, vertex_enum, DifferenceBody, SelectSubset,
};
use sumset_core::measure::{volume_exact_q, volume_h};
use sumset_core::scalar::{self, q, ratio};
use sumset_core::sets::{rasterize, scale_about, GridSet, LatticeSet, Reflect, VPolytope, Vector};
use sumset_core::Q;

fn points(dim: usize, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, dim), count)
}

fn hull_of(pts: &[Vec<i64>]) -> VPolytope {
    let vs: Vec<Vector> = pts.iter().map(|p| Vector(p.iter().map(|&x| q(x)).collect())).collect();
    convex_hull(&vs).unwrap()
}

fn polytope(dim: usize) -> impl Strategy<Value = VPolytope> {
    points(dim, dim + 1..dim + 6).prop_map(|p| hull_of(&p)).prop_filter("full-dimensional", |p| p.is_full_dim())
}

fn translation(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec((-8i64..=8, 1i64..=4), dim)
        .prop_map(|v| Vector(v.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

fn vol(p: &VPolytope) -> Q {
    volume_exact_q(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn minkowski_commutes(a in polytope(2), b in polytope(2)) {
        prop_assert!(minkowski_sum(&a, &b).unwrap().same_vertex_set(&minkowski_sum(&b, &a).unwrap()));
    }

    #[test]
    fn minkowski_commutes_in_three_dimensions(a in polytope(3), b in polytope(3)) {
        let ab = minkowski_sum(&a, &b).unwrap();
        prop_assert!(ab.same_vertex_set(&minkowski_sum(&b, &a).unwrap()));
        prop_assert!(vol(&ab) >= vol(&a).max(vol(&b)));
    }

    #[test]
    fn minkowski_is_translation_equivariant(a in polytope(2), b in polytope(2), t in translation(2)) {
        let shifted = minkowski_sum(&a.translate(&t).unwrap(), &b).unwrap();
        let expected = minkowski_sum(&a, &b).unwrap().translate(&t).unwrap();
        prop_assert!(shifted.same_vertex_set(&expected));
        prop_assert_eq!(vol(&shifted), vol(&expected));
    }

    #[test]
    fn reflection_is_an_involution_preserving_measure(a in polytope(3)) {
        let r = a.reflect();
        prop_assert!(r.reflect().same_vertex_set(&a));
        prop_assert_eq!(vol(&r), vol(&a));
    }

    #[test]
    fn difference_body_is_symmetric_and_large(a in polytope(2)) {
        let d = a.difference_body().unwrap();
        prop_assert!(d.reflect().same_vertex_set(&d));
        // |A - A| >= 2^n |A|
        prop_assert!(vol(&d) >= vol(&a) * q(4));
        // Rogers-Shephard in the plane: |A - A| <= 6 |A|
        prop_assert!(vol(&d) <= vol(&a) * q(6));
    }

    #[test]
    fn homothety_scales_measure(a in polytope(3), num in 0i64..=4, den in 1i64..=4) {
        let t = ratio(num.min(den), den);
        let scaled = scale_about(&a, &a.centroid(), &t).unwrap();
        prop_assert_eq!(vol(&scaled), vol(&a) * scalar::pow(&t, 3));
    }

    #[test]
    fn dilation_scales_measure(a in polytope(2), num in 1i64..6, den in 1i64..4) {
        let t = ratio(num, den);
        prop_assert_eq!(vol(&a.dilate(&t).unwrap()), vol(&a) * scalar::pow(&t, 2));
    }

    #[test]
    fn hull_is_idempotent(pts in points(3, 4..12)) {
        let h = hull_of(&pts);
        let again = convex_hull(h.vertices()).unwrap();
        prop_assert!(again.same_vertex_set(&h));
    }

    #[test]
    fn facets_and_vertices_round_trip(a in polytope(3)) {
        let h = facet_enum(&a).unwrap();
        let back = vertex_enum(&h).unwrap().expect("bounded and nonempty");
        prop_assert!(back.same_vertex_set(&a));
        prop_assert_eq!(volume_h(&h).unwrap(), vol(&a));
    }

    #[test]
    fn slices_shrink(a in polytope(2), s in 0i64..=8) {
        let d = a.difference_body().unwrap();
        // x on the segment from 0 to a vertex of A - A stays in A - A.
        let v = &d.vertices()[0];
        let x = Vector(v.iter().map(|c| c * ratio(s, 8)).collect());
        let h = facet_enum(&a).unwrap();
        let slice = slice_body(&h, &x).unwrap();
        let m = volume_h(&slice).unwrap();
        prop_assert!(m <= vol(&a));
        if let Some(sv) = vertex_enum(&slice).unwrap() {
            for p in sv.vertices() {
                prop_assert!(h.contains(p));
                let back: Vec<Q> = p.iter().zip(x.iter()).map(|(a, b)| a + b).collect();
                prop_assert!(h.contains(&back));
            }
        }
    }

    #[test]
    fn selected_subsets_fit(b in polytope(2), num in 1i64..=16) {
        let mu = vol(&b);
        let target = &mu * ratio(num, 16);
        let sel = b.select_subset_of_measure(&target).unwrap();
        prop_assert!(vol(&sel.subset) <= target);
        let h = facet_enum(&b).unwrap();
        prop_assert!(sel.subset.vertices().iter().all(|v| h.contains(v)));
    }

    #[test]
    fn grid_measure_tracks_exact_volume(a in polytope(2)) {
        let h = ratio(1, 8);
        let grid = rasterize(&a, &h).unwrap();
        let err = scalar::to_f64(&(grid.measure() - vol(&a))).abs();
        // Misclassified cells lie within h sqrt 2 of the boundary.
        let vs = a.vertices();
        let perimeter: f64 = (0..vs.len()).map(|i| {
            let (p, r) = (vs[i].to_f64(), vs[(i + 1) % vs.len()].to_f64());
            ((p[0] - r[0]).powi(2) + (p[1] - r[1]).powi(2)).sqrt()
        }).sum();
        let hf = 0.125;
        prop_assert!(err <= 2.0 * std::f64::consts::SQRT_2 * perimeter * hf + 2.0 * std::f64::consts::PI * hf * hf);
    }

    #[test]
    fn grid_dilation_is_monotone(
        a in prop::collection::btree_set((0i64..6, 0i64..6), 1..10),
        b in prop::collection::btree_set((0i64..6, 0i64..6), 1..10),
    ) {
        let g = |s: &std::collections::BTreeSet<(i64, i64)>| {
            GridSet::aligned(2, ratio(1, 2), s.iter().map(|&(i, j)| vec![i, j])).unwrap()
        };
        let (ga, gb) = (g(&a), g(&b));
        let sum = grid_minkowski(&ga, &gb).unwrap();
        prop_assert!(sum.measure() >= ga.measure().max(gb.measure()));
        prop_assert_eq!(sum.measure(), grid_minkowski(&gb, &ga).unwrap().measure());
    }

    #[test]
    fn lattice_sumsets_in_z(a in prop::collection::btree_set(-20i64..20, 1..15), b in prop::collection::btree_set(-20i64..20, 1..15)) {
        let la = LatticeSet::from_1d(a.iter().copied());
        let lb = LatticeSet::from_1d(b.iter().copied());
        let s = la.sumset(&lb).unwrap();
        prop_assert_eq!(&s, &lb.sumset(&la).unwrap());
        prop_assert!(s.len() + 1 >= la.len() + lb.len());
        let brute: std::collections::BTreeSet<i64> = a.iter().flat_map(|x| b.iter().map(move |y| x - y)).collect();
        prop_assert_eq!(la.difference_set(&lb).unwrap().len(), brute.len());
    }
}
