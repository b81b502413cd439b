//! Convex hulls, facet enumeration and vertex enumeration, all exact.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::linalg::{common_denominator, pivot_columns, primitive, rank, scale_to_int};
use crate::scalar::Q;
use crate::sets::{dedup_tolerance, Facets, HPolytope, Halfspace, Mode, VPolytope, Vector};
use crate::FACET_DIM_CAP;

fn check_cap(dim: usize) -> Result<()> {
    if dim > FACET_DIM_CAP {
        return Err(Error::DimensionCap { dim, cap: FACET_DIM_CAP });
    }
    Ok(())
}

/// Facets of a full-dimensional point configuration, with incidence over the
/// input indices. Points need not be in convex position.
fn facets_of_points(points: &[Vector]) -> Result<Facets> {
    let dim = points[0].dim();
    check_cap(dim)?;
    let den = common_denominator(points.iter().flat_map(|p| p.iter()));
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut row: Vec<BigInt> = scale_to_int(p, &den).into_iter().map(|x| -x).collect();
            row.push(den.clone());
            primitive(&mut row);
            row
        })
        .collect();
    let rays = extreme_rays(&rows)?;
    let mut halfspaces = Vec::with_capacity(rays.len());
    let mut incidence = Vec::with_capacity(rays.len());
    for ray in rays {
        let (normal, offset) = ray.coords.split_at(dim);
        halfspaces.push(Halfspace {
            normal: Vector(normal.iter().map(|c| Q::from_integer(c.clone())).collect()),
            offset: Q::from_integer(offset[0].clone()),
        });
        incidence.push(ray.zeros);
    }
    Ok(Facets { hpoly: HPolytope::new(dim, halfspaces, true)?, incidence })
}

pub(crate) fn compute_facets(p: &VPolytope) -> Result<Facets> {
    if !p.is_full_dim() {
        return Err(Error::Degenerate(
            "facet enumeration needs a full-dimensional polytope".into(),
        ));
    }
    facets_of_points(p.vertices())
}

/// Indices of the points that are vertices of a full-dimensional configuration.
fn vertex_indices(points: &[Vector], facets: &Facets) -> Vec<usize> {
    let dim = points[0].dim();
    (0..points.len())
        .filter(|&i| {
            let normals: Vec<Vec<Q>> = facets
                .incidence
                .iter()
                .zip(facets.hpoly.halfspaces())
                .filter(|(inc, _)| inc.contains(i))
                .map(|(_, h)| h.normal.0.clone())
                .collect();
            normals.len() >= dim && rank(&normals) == dim
        })
        .collect()
}

/// Minimal vertex set of `conv(points)` in exact mode.
pub fn convex_hull(points: &[Vector]) -> Result<VPolytope> {
    convex_hull_with_mode(Mode::Exact, points)
}

pub fn convex_hull_with_mode(mode: Mode, points: &[Vector]) -> Result<VPolytope> {
    let base = VPolytope::with_mode(mode, points.to_vec())?;
    let pts = base.vertices();
    let dim = base.dim();
    if pts.len() == 1 {
        return Ok(base);
    }
    let diffs: Vec<Vec<Q>> = pts[1..].iter().map(|p| (p - &pts[0]).0).collect();
    let pivots = pivot_columns(&diffs);
    let k = pivots.len();
    check_cap(k)?;

    if k == dim {
        let facets = facets_of_points(pts)?;
        let keep = vertex_indices(pts, &facets);
        let mut order: Vec<usize> = keep.clone();
        order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
        let new_index: std::collections::HashMap<usize, usize> =
            order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let incidence = facets
            .incidence
            .iter()
            .map(|inc| {
                let mut bits = FixedBitSet::with_capacity(order.len());
                for old in inc.ones() {
                    if let Some(&new) = new_index.get(&old) {
                        bits.insert(new);
                    }
                }
                bits
            })
            .collect();
        let vertices: Vec<Vector> = order.iter().map(|&i| pts[i].clone()).collect();
        let hull = VPolytope::with_mode(mode, vertices)?;
        return Ok(hull.with_facets(Facets { hpoly: facets.hpoly, incidence }));
    }

    // Lower-dimensional: the projection onto pivot coordinates is injective
    // on the affine hull, so it preserves the vertex structure.
    let projected: Vec<Vector> = pts
        .iter()
        .map(|p| Vector(pivots.iter().map(|&c| p[c].clone()).collect()))
        .collect();
    let keep: Vec<usize> = if k == 1 {
        let coord = |i: usize| &projected[i][0];
        let lo = (0..pts.len()).min_by(|&a, &b| coord(a).cmp(coord(b))).unwrap();
        let hi = (0..pts.len()).max_by(|&a, &b| coord(a).cmp(coord(b))).unwrap();
        vec![lo, hi]
    } else {
        let facets = facets_of_points(&projected)?;
        vertex_indices(&projected, &facets)
    };
    let mut vertices: Vec<Vector> = keep.into_iter().map(|i| pts[i].clone()).collect();
    vertices.sort();
    VPolytope::with_mode(mode, vertices)
}

/// Irredundant halfspace description of a full-dimensional polytope.
pub fn facet_enum(p: &VPolytope) -> Result<HPolytope> {
    Ok(p.facets()?.hpoly.clone())
}

/// Vertices of a bounded H-polytope; `None` when it is empty.
pub fn vertex_enum(h: &HPolytope) -> Result<Option<VPolytope>> {
    let dim = h.dim();
    check_cap(dim)?;
    let mut rows: Vec<Vec<BigInt>> = h
        .halfspaces()
        .iter()
        .map(|hs| {
            let den = common_denominator(hs.normal.iter().chain(std::iter::once(&hs.offset)));
            let mut row: Vec<BigInt> = scale_to_int(&hs.normal, &den).into_iter().map(|x| -x).collect();
            row.extend(scale_to_int(std::slice::from_ref(&hs.offset), &den));
            primitive(&mut row);
            row
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); dim + 1];
    t_row[dim] = BigInt::from(1);
    rows.push(t_row);

    let rays = extreme_rays(&rows).map_err(|e| match e {
        Error::Degenerate(_) => Error::Unbounded,
        other => other,
    })?;
    let mut vertices = Vec::with_capacity(rays.len());
    for ray in rays {
        let t = &ray.coords[dim];
        if !t.is_positive() {
            return Err(Error::Unbounded);
        }
        vertices.push(Vector(
            ray.coords[..dim]
                .iter()
                .map(|c| Q::new(c.clone(), t.clone()))
                .collect(),
        ));
    }
    if vertices.is_empty() {
        return Ok(None);
    }
    vertices.sort();
    VPolytope::new(vertices).map(Some)
}

/// Float-mode vertex-set comparison with the dedup tolerance.
pub fn same_vertices_within_tolerance(a: &VPolytope, b: &VPolytope) -> bool {
    a.vertices().len() == b.vertices().len()
        && a.vertices().iter().all(|v| {
            let tol = dedup_tolerance(v);
            let vf = v.to_f64();
            b.vertices()
                .iter()
                .any(|w| w.to_f64().iter().zip(&vf).all(|(x, y)| (x - y).abs() <= tol))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, ratio};
    use crate::sets::{make_cube, make_simplex};

    fn pts(data: &[&[i64]]) -> Vec<Vector> {
        data.iter().map(|p| Vector::from_ints(p)).collect()
    }

    #[test]
    fn interior_point_dropped() {
        let mut p = pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        p.push(Vector(vec![q(1), q(1)]));
        let hull = convex_hull(&p).unwrap();
        assert_eq!(hull.vertices().len(), 4);
        assert!(hull.same_vertex_set(&make_cube(2, &q(2)).unwrap()));
    }

    #[test]
    fn collinear_points_in_one_dimension() {
        let p = vec![Vector(vec![q(0)]), Vector(vec![ratio(1, 2)]), Vector(vec![q(1)])];
        let hull = convex_hull(&p).unwrap();
        assert_eq!(hull.vertices(), &[Vector(vec![q(0)]), Vector(vec![q(1)])]);
    }

    #[test]
    fn collinear_points_in_the_plane() {
        let hull = convex_hull(&pts(&[&[0, 0], &[1, 1], &[3, 3], &[2, 2]])).unwrap();
        assert_eq!(hull.vertices(), &pts(&[&[0, 0], &[3, 3]])[..]);
        assert!(!hull.is_full_dim());
    }

    #[test]
    fn coplanar_boundary_points_are_not_vertices() {
        // Midpoint of an edge of a triangle inside R^3.
        let hull = convex_hull(&pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[1, 0, 0]])).unwrap();
        assert_eq!(hull.vertices().len(), 3);
    }

    #[test]
    fn simplex_facets() {
        let s = make_simplex(3, &q(2)).unwrap();
        let h = facet_enum(&s).unwrap();
        assert_eq!(h.halfspaces().len(), 4);
        let mut seen_sum = false;
        for hs in h.halfspaces() {
            let nz = hs.normal.iter().filter(|c| !c.is_zero()).count();
            if nz == 3 {
                // x + y + z <= 2
                assert!(hs.normal.iter().all(|c| *c == q(1)));
                assert_eq!(hs.offset, q(2));
                seen_sum = true;
            } else {
                assert_eq!(nz, 1);
                assert_eq!(hs.offset, q(0));
            }
        }
        assert!(seen_sum);
    }

    #[test]
    fn square_has_four_facets_and_round_trips() {
        let sq = make_cube(2, &q(1)).unwrap();
        let h = facet_enum(&sq).unwrap();
        assert_eq!(h.halfspaces().len(), 4);
        let back = vertex_enum(&h).unwrap().unwrap();
        assert!(back.same_vertex_set(&sq));
    }

    #[test]
    fn vertex_enum_empty_and_unbounded() {
        let h = HPolytope::new(
            1,
            vec![
                Halfspace { normal: Vector(vec![q(1)]), offset: q(0) },
                Halfspace { normal: Vector(vec![q(-1)]), offset: q(-1) },
            ],
            true,
        )
        .unwrap();
        assert!(vertex_enum(&h).unwrap().is_none());
        let half_line = HPolytope::new(
            1,
            vec![Halfspace { normal: Vector(vec![q(1)]), offset: q(0) }],
            false,
        )
        .unwrap();
        assert_eq!(vertex_enum(&half_line).unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn dimension_cap_enforced() {
        let big = make_simplex(7, &q(1)).unwrap();
        assert!(matches!(facet_enum(&big), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn degenerate_input_rejected_by_facet_enum() {
        let seg = VPolytope::from_ints(&[&[0, 0], &[1, 1]]).unwrap();
        assert!(matches!(facet_enum(&seg), Err(Error::Degenerate(_))));
    }
}
