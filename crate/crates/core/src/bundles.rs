//! Bundled and seeded test sets shared by the regression suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checks::Body;
use crate::geometry::{convex_hull, DifferenceBody};
use crate::scalar::{q, ratio, Q};
use crate::sets::{make_box, make_cube, make_simplex, GridSet, LatticeSet, VPolytope, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hull of `points` random integer points of `[-range, range]^dim`,
/// redrawn until full-dimensional.
pub fn random_polytope(rng: &mut ChaCha8Rng, dim: usize, points: usize, range: i64) -> VPolytope {
    loop {
        let pts: Vec<Vector> = (0..points.max(dim + 1))
            .map(|_| Vector((0..dim).map(|_| q(rng.gen_range(-range..=range))).collect()))
            .collect();
        let hull = convex_hull(&pts).expect("nonempty point set");
        if hull.is_full_dim() {
            return hull;
        }
    }
}

/// Between 1 and `max_size` random points of `[-range, range]^dim`.
pub fn random_lattice_set(rng: &mut ChaCha8Rng, dim: usize, max_size: usize, range: i64) -> LatticeSet {
    let size = rng.gen_range(1..=max_size);
    let points: Vec<Vec<i64>> = (0..size).map(|_| (0..dim).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    LatticeSet::new(dim, points).expect("points have the right dimension")
}

/// Hull of `vertices` rational points near the unit sphere in R^3, redrawn
/// until every point is a vertex.
pub fn sphere_hull(seed: u64, vertices: usize) -> VPolytope {
    let mut rng = rng(seed);
    loop {
        let pts: Vec<Vector> = (0..vertices)
            .map(|_| {
                let v: [f64; 3] = loop {
                    let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
                    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                    if norm > 0.1 && norm <= 1.0 {
                        break [v[0] / norm, v[1] / norm, v[2] / norm];
                    }
                };
                Vector(v.iter().map(|c| ratio((c * 64.0).round() as i64, 64)).collect())
            })
            .collect();
        let hull = convex_hull(&pts).expect("nonempty point set");
        if hull.vertices().len() == vertices {
            return hull;
        }
    }
}

/// An L-shaped voxel union: a `3k x k` bar and a `k x 3k` bar sharing a corner.
pub fn l_shaped_grid(h: Q, k: i64) -> GridSet {
    let mut cells = Vec::new();
    for i in 0..3 * k {
        for j in 0..k {
            cells.push(vec![i, j]);
            cells.push(vec![j, i]);
        }
    }
    GridSet::aligned(2, h, cells).expect("2-d cells")
}

#[derive(Debug, Clone)]
pub struct MixedCase {
    pub name: String,
    pub a: VPolytope,
    pub b: Body,
}

#[derive(Debug, Clone)]
pub struct QuadratureCase {
    pub name: String,
    pub a: VPolytope,
    pub b: Body,
    pub hx: Q,
}

fn unit(n: usize) -> VPolytope {
    make_cube(n, &q(1)).expect("valid cube")
}

fn simplex(n: usize, side: i64) -> VPolytope {
    make_simplex(n, &q(side)).expect("valid simplex")
}

fn point(n: usize) -> VPolytope {
    VPolytope::new(vec![Vector::zeros(n)]).expect("single point")
}

/// Pairs for the integral bound in dimensions 1 and 2, one of them with a
/// non-convex voxel `B`.
pub fn lemma1_cases() -> Vec<QuadratureCase> {
    let case = |name: &str, a: VPolytope, b: Body, hx: Q| QuadratureCase { name: name.into(), a, b, hx };
    vec![
        case("interval+interval", unit(1), Body::Convex(unit(1)), ratio(1, 50)),
        case("interval+long interval", unit(1), Body::Convex(make_cube(1, &q(2)).unwrap()), ratio(1, 50)),
        case("interval+point", unit(1), Body::Convex(point(1)), ratio(1, 50)),
        case(
            "interval+gapped voxels",
            unit(1),
            Body::Grid(GridSet::aligned(1, ratio(1, 8), vec![vec![0], vec![1], vec![5], vec![6], vec![7]]).unwrap()),
            ratio(1, 8),
        ),
        case("square+square", unit(2), Body::Convex(unit(2)), ratio(1, 8)),
        case("triangle+half square", simplex(2, 1), Body::Convex(make_cube(2, &ratio(1, 2)).unwrap()), ratio(1, 8)),
        case("triangle+point", simplex(2, 1), Body::Convex(point(2)), ratio(1, 8)),
        case("square+L voxels", unit(2), Body::Grid(l_shaped_grid(ratio(1, 8), 2)), ratio(1, 8)),
    ]
}

/// Bodies for the slice-volume bound.
pub fn lemma2_bodies() -> Vec<(String, VPolytope)> {
    vec![
        ("square".into(), unit(2)),
        ("triangle".into(), simplex(2, 1)),
        ("sphere hull 8".into(), sphere_hull(2024, 8)),
    ]
}

/// Convex pairs in dimensions up to 5 for the difference-body bound.
pub fn theorem_cases() -> Vec<MixedCase> {
    let mut out = Vec::new();
    let mut push = |name: String, a: VPolytope, b: VPolytope| out.push(MixedCase { name, a, b: Body::Convex(b) });
    for n in 1..=5 {
        push(format!("cube/cube n={n}"), unit(n), unit(n));
        push(format!("simplex/simplex n={n}"), simplex(n, 1), simplex(n, 1));
        push(format!("simplex/cube n={n}"), simplex(n, 1), unit(n));
    }
    let tri = simplex(2, 1);
    push("triangle/hexagon".into(), tri.clone(), tri.difference_body().unwrap());
    push("big square/triangle".into(), make_cube(2, &q(2)).unwrap(), tri.clone());
    let slab = make_box(&[q(0), q(0), q(0)], &[q(4), q(1), ratio(1, 2)]).unwrap();
    push("slab/tetrahedron".into(), slab, simplex(3, 2));
    let mut r = rng(7);
    for i in 0..3 {
        let a = random_polytope(&mut r, 3, 7, 4);
        let b = random_polytope(&mut r, 3, 7, 4);
        push(format!("random 3-d pair {i}"), a, b);
    }
    let a = random_polytope(&mut r, 4, 7, 3);
    let b = random_polytope(&mut r, 4, 7, 3);
    push("random 4-d pair".into(), a, b);
    out
}

/// A voxel `B` of larger measure than `A`, for the subset-selection form.
pub fn theorem_grid_case() -> MixedCase {
    MixedCase { name: "triangle/L voxels".into(), a: simplex(2, 1), b: Body::Grid(l_shaped_grid(ratio(1, 8), 4)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::volume_exact_q;

    #[test]
    fn sphere_hull_has_eight_vertices() {
        let p = sphere_hull(2024, 8);
        assert_eq!(p.vertices().len(), 8);
        assert!(volume_exact_q(&p).unwrap() > q(0));
        assert_eq!(p, sphere_hull(2024, 8));
    }

    #[test]
    fn l_shape_measure() {
        let g = l_shaped_grid(ratio(1, 8), 2);
        // Two 6x2 bars overlapping in a 2x2 corner.
        assert_eq!(g.len(), 12 + 12 - 4);
    }

    #[test]
    fn random_sets_are_seeded() {
        let a = random_polytope(&mut rng(1), 3, 6, 4);
        assert!(a.is_full_dim());
        assert_eq!(a, random_polytope(&mut rng(1), 3, 6, 4));
        let l = random_lattice_set(&mut rng(5), 2, 20, 6);
        assert!(!l.is_empty() && l.len() <= 20);
    }
}
