use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde_json::json;

use crate::checks::{describe_polytope, require_convex_primary, same_dim, Body, CheckReport, Quantity};
use crate::error::{Error, Result};
use crate::geometry::{facet_enum, grid_minkowski, minkowski_sum, slice_body, vertex_enum, DifferenceBody};
use crate::measure::volume_exact_q;
use crate::scalar::{self, Q};
use crate::sets::{rasterize, Cell, GridSet, HPolytope, VPolytope, Vector};

/// Largest dimension handled by the quadrature.
pub const LEMMA1_DIM_CAP: usize = 3;

/// Inflation applied to the finite-difference Lipschitz estimate.
const LIPSCHITZ_INFLATION: i64 = 4;

/// One sixteenth of the widest side of the bounding box of `A`.
pub fn lemma1_default_step(a: &VPolytope) -> Q {
    let (lo, hi) = a.bounding_box();
    let widest = lo.iter().zip(hi.iter()).map(|(l, u)| u - l).max().unwrap_or_else(|| scalar::q(1));
    widest / scalar::q(16)
}

/// `∫_{A-A} mu(A_x + B) dx <= mu(A+B)^2`.
///
/// Convex `B`: midpoint rule over the voxels of `A - A` of side `hx`, with the
/// integrand computed exactly. The error budget adds, per voxel whose centre
/// lies in `A - A`, `n hx Lip hx^n` when the voxel is inside `A - A` and the
/// full midpoint contribution otherwise; `Lip` is the largest finite
/// difference between neighbouring voxels, inflated 4 times.
///
/// Grid `B`: `A` is voxelized at `B`'s resolution (which must equal `hx`)
/// and the integral becomes the exact sum over cell translations, so the
/// budget is zero.
pub fn check_lemma1(a: &VPolytope, b: &Body, hx: &Q) -> Result<CheckReport> {
    require_convex_primary(a, "A")?;
    same_dim(a.dim(), b.dim())?;
    if a.dim() > LEMMA1_DIM_CAP {
        return Err(Error::DimensionCap { dim: a.dim(), cap: LEMMA1_DIM_CAP });
    }
    if !hx.is_positive() {
        return Err(Error::invalid("quadrature step must be positive"));
    }
    let report = match b {
        Body::Convex(bp) => lemma1_convex(a, bp, hx)?,
        Body::Grid(bg) => lemma1_grid(a, bg, hx)?,
    };
    Ok(report
        .with_input(describe_polytope("A", a))
        .with_input(format!("B: {}", b.describe()))
        .with_param("hx", hx.to_string())
        .with_note("restricted to polytopes and voxel unions, where the integrand is measurable"))
}

fn slice_sum_volume(ha: &HPolytope, b: &VPolytope, x: &Vector) -> Result<Q> {
    match vertex_enum(&slice_body(ha, x)?)? {
        None => Ok(Q::zero()),
        Some(ax) => volume_exact_q(&minkowski_sum(&ax, b)?),
    }
}

fn lemma1_convex(a: &VPolytope, b: &VPolytope, hx: &Q) -> Result<CheckReport> {
    let n = a.dim();
    let ha = facet_enum(a)?;
    let diff = a.difference_body()?;
    let hd = facet_enum(&diff)?;
    let grid = rasterize(&diff, hx)?;
    let cell_volume = grid.cell_volume();
    let half = hx / scalar::q(2);

    let mut values: BTreeMap<Cell, Q> = BTreeMap::new();
    let mut inside: BTreeMap<Cell, bool> = BTreeMap::new();
    for idx in grid.cells() {
        let center = grid.center(idx);
        values.insert(idx.clone(), slice_sum_volume(&ha, b, &center)?);
        let corners_inside = (0..1usize << n).all(|mask| {
            let corner: Vec<Q> = center
                .iter()
                .enumerate()
                .map(|(j, c)| if mask >> j & 1 == 1 { c + &half } else { c - &half })
                .collect();
            hd.contains(&corner)
        });
        inside.insert(idx.clone(), corners_inside);
    }

    let mut lip = Q::zero();
    for (idx, v) in &values {
        for j in 0..n {
            let mut next = idx.clone();
            next[j] += 1;
            if let Some(w) = values.get(&next) {
                let d = (v - w).abs() / hx;
                if d > lip {
                    lip = d;
                }
            }
        }
    }
    let lip = lip * scalar::q(LIPSCHITZ_INFLATION);

    let lhs: Q = values.values().sum::<Q>() * &cell_volume;
    let interior_term = Q::from_integer(n.into()) * hx * &lip * &cell_volume;
    let mut budget = Q::zero();
    let mut boundary = 0u64;
    for (idx, v) in &values {
        if inside[idx] {
            budget += &interior_term;
        } else {
            boundary += 1;
            budget += v * &cell_volume;
        }
    }
    let sum = volume_exact_q(&minkowski_sum(a, b)?)?;
    let rhs = &sum * &sum;
    Ok(CheckReport::new("lemma1_integral", Quantity::exact(lhs), Quantity::exact(rhs), budget)
        .with_param("quadratureCells", values.len())
        .with_param("boundaryCells", boundary)
        .with_param("lipschitz", lip.to_string())
        .with_param("rule", "midpoint")
        .with_details(json!({ "muAplusB": sum.to_string() })))
}

fn lemma1_grid(a: &VPolytope, b: &GridSet, hx: &Q) -> Result<CheckReport> {
    if b.cell() != hx {
        return Err(Error::ResolutionMismatch(format!(
            "quadrature step {hx} differs from the cell size {} of B",
            b.cell()
        )));
    }
    let ag = rasterize(a, hx)?;
    if ag.is_empty() {
        return Err(Error::Degenerate(format!("A has no voxel centre at resolution {hx}")));
    }
    let cell_volume = ag.cell_volume();
    let sum = grid_minkowski(&ag, b)?;
    let translations = ag.difference_body()?;
    let mut total = Q::zero();
    for k in translations.cells() {
        total += grid_minkowski(&ag.slice(k), b)?.measure();
    }
    let lhs = total * &cell_volume;
    let mu_sum = sum.measure();
    let rhs = &mu_sum * &mu_sum;
    Ok(CheckReport::new("lemma1_integral", Quantity::exact(lhs), Quantity::exact(rhs), Q::zero())
        .with_param("quadratureCells", translations.len())
        .with_param("rule", "voxel translation sum")
        .with_details(json!({ "muAplusB": mu_sum.to_string(), "voxelsA": ag.len() }))
        .with_note("A is voxelized at the resolution of B; A + B is the voxel dilation"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, ratio};
    use crate::sets::{make_cube, make_simplex};

    #[test]
    fn unit_interval_integral_is_three() {
        let a = make_cube(1, &q(1)).unwrap();
        let r = check_lemma1(&a, &Body::Convex(a.clone()), &ratio(1, 50)).unwrap();
        assert_eq!(r.lhs, Quantity::int(3));
        assert_eq!(r.rhs, Quantity::int(4));
        assert!(r.pass);
        assert_eq!(r.parameters["boundaryCells"], 0);
    }

    #[test]
    fn unit_square_close_to_nine() {
        let a = make_cube(2, &q(1)).unwrap();
        let r = check_lemma1(&a, &Body::Convex(a.clone()), &ratio(1, 8)).unwrap();
        assert!(r.pass);
        assert!((r.lhs.approx() - 9.0).abs() < 0.01, "{}", r.lhs.approx());
        assert_eq!(r.rhs, Quantity::int(16));
    }

    #[test]
    fn point_b_specialization() {
        let a = make_simplex(2, &q(1)).unwrap();
        let point = VPolytope::from_ints(&[&[0, 0]]).unwrap();
        let r = check_lemma1(&a, &Body::Convex(point), &ratio(1, 8)).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, Quantity::exact(ratio(1, 4)));
    }

    #[test]
    fn grid_b_and_scaling() {
        let a = make_simplex(2, &q(1)).unwrap();
        let l_shape = GridSet::aligned(2, ratio(1, 4), vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 2]]).unwrap();
        let r = check_lemma1(&a, &Body::Grid(l_shape.clone()), &ratio(1, 4)).unwrap();
        assert!(r.pass);
        assert!(matches!(
            check_lemma1(&a, &Body::Grid(l_shape), &ratio(1, 8)),
            Err(Error::ResolutionMismatch(_))
        ));
        let b = make_cube(2, &ratio(1, 2)).unwrap();
        let r1 = check_lemma1(&a, &Body::Convex(b.clone()), &ratio(1, 4)).unwrap();
        let t = q(3);
        let r3 = check_lemma1(&a.dilate(&t).unwrap(), &Body::Convex(b.dilate(&t).unwrap()), &(ratio(1, 4) * &t)).unwrap();
        assert_eq!(r1.lhs.lower() / r1.rhs.lower(), r3.lhs.lower() / r3.rhs.lower());
        assert_eq!(r1.error_budget * scalar::pow(&t, 4), r3.error_budget);
    }

    #[test]
    fn dimension_cap() {
        let a = make_cube(4, &q(1)).unwrap();
        assert!(matches!(check_lemma1(&a, &Body::Convex(a.clone()), &q(1)), Err(Error::DimensionCap { .. })));
    }
}
