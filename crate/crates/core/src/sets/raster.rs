use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::geometry::membership;
use crate::linalg::{common_denominator, scale_to_int};
use crate::scalar::{self, Q};
use crate::sets::{Cell, GridSet, VPolytope};
use crate::FACET_DIM_CAP;

const MAX_CANDIDATES: u128 = 50_000_000;

/// `sum_j a_j (2 i_j + 1) <= t` is the halfspace test at the centre of cell `i`.
enum CenterTest {
    Small(Vec<(Vec<i128>, i128)>),
    Big(Vec<(Vec<BigInt>, BigInt)>),
}

impl CenterTest {
    fn contains(&self, idx: &[i64]) -> bool {
        match self {
            CenterTest::Small(rows) => rows.iter().all(|(a, t)| {
                a.iter().zip(idx).map(|(aj, &i)| aj * (2 * i as i128 + 1)).sum::<i128>() <= *t
            }),
            CenterTest::Big(rows) => rows.iter().all(|(a, t)| {
                a.iter().zip(idx).map(|(aj, &i)| aj * BigInt::from(2 * i + 1)).sum::<BigInt>() <= *t
            }),
        }
    }
}

fn center_test(p: &VPolytope, h: &Q) -> Result<CenterTest> {
    let facets = p.facets()?;
    let big: Vec<(Vec<BigInt>, BigInt)> = facets
        .hpoly
        .halfspaces()
        .iter()
        .map(|hs| {
            let den = common_denominator(hs.normal.iter());
            let a = scale_to_int(&hs.normal, &den);
            let rhs = Q::from_integer(den) * &hs.offset * scalar::q(2) / h;
            (a, scalar::floor(&rhs))
        })
        .collect();
    // Keep headroom for the dot product of up to FACET_DIM_CAP terms.
    let limit = BigInt::from(1u128 << 80);
    let fits = big
        .iter()
        .all(|(a, t)| t.abs() < limit && a.iter().all(|x| x.abs() < BigInt::from(1u64 << 40)));
    if fits {
        return Ok(CenterTest::Small(
            big.into_iter()
                .map(|(a, t)| (a.iter().map(|x| x.to_i128().unwrap()).collect(), t.to_i128().unwrap()))
                .collect(),
        ));
    }
    Ok(CenterTest::Big(big))
}

/// Voxels of side `h` (cell `i` spans `[i h, (i + 1) h]`) whose centre lies in `P`.
pub fn rasterize(p: &VPolytope, h: &Q) -> Result<GridSet> {
    if !h.is_positive() {
        return Err(Error::invalid("cell size must be positive"));
    }
    let dim = p.dim();
    let (lo, hi) = p.bounding_box();
    let half = scalar::ratio(1, 2);
    let mut ranges = Vec::with_capacity(dim);
    for j in 0..dim {
        let a = scalar::ceil(&(&lo[j] / h - &half));
        let b = scalar::floor(&(&hi[j] / h - &half));
        let a = a.to_i64().ok_or_else(|| Error::TooLarge("raster index".into()))?;
        let b = b.to_i64().ok_or_else(|| Error::TooLarge("raster index".into()))?;
        ranges.push((a, b));
    }
    let empty = GridSet::aligned(dim, h.clone(), Vec::<Cell>::new())?;
    if ranges.iter().any(|(a, b)| a > b) {
        return Ok(empty);
    }
    let candidates: u128 = ranges.iter().map(|(a, b)| (b - a + 1) as u128).product();
    if candidates > MAX_CANDIDATES {
        return Err(Error::TooLarge(format!("{candidates} raster candidates at cell size {h}")));
    }

    let test: Box<dyn Fn(&[i64]) -> Result<bool>> = if p.is_full_dim() && dim <= FACET_DIM_CAP {
        let t = center_test(p, h)?;
        Box::new(move |idx| Ok(t.contains(idx)))
    } else {
        Box::new(|idx| membership(p, &empty.center(idx)))
    };

    let mut cells = BTreeSet::new();
    let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    'outer: loop {
        if test(&idx)? {
            cells.insert(idx.clone());
        }
        for j in (0..dim).rev() {
            if idx[j] < ranges[j].1 {
                idx[j] += 1;
                continue 'outer;
            }
            idx[j] = ranges[j].0;
        }
        break;
    }
    Ok(GridSet::from_parts(dim, h.clone(), empty.origin().clone(), cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::volume_exact_q;
    use crate::scalar::{q, ratio};
    use crate::sets::{make_cube, make_simplex, Vector};

    #[test]
    fn unit_square_half_cells() {
        let g = rasterize(&make_cube(2, &q(1)).unwrap(), &ratio(1, 2)).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.measure(), q(1));
        assert_eq!(g.center(&[0, 0]), Vector(vec![ratio(1, 4), ratio(1, 4)]));
    }

    #[test]
    fn point_polytope_center_rule() {
        let on_center = VPolytope::new(vec![Vector(vec![ratio(1, 4), ratio(3, 4)])]).unwrap();
        assert_eq!(rasterize(&on_center, &ratio(1, 2)).unwrap().len(), 1);
        let off_center = VPolytope::from_ints(&[&[0, 0]]).unwrap();
        assert_eq!(rasterize(&off_center, &ratio(1, 2)).unwrap().measure(), q(0));
    }

    #[test]
    fn triangle_measure_converges() {
        let tri = make_simplex(2, &q(1)).unwrap();
        let g = rasterize(&tri, &ratio(1, 100)).unwrap();
        assert!((scalar::to_f64(&g.measure()) - 0.5).abs() < 0.05);
    }

    #[test]
    fn refinement_shrinks_error() {
        let tri = make_simplex(2, &q(1)).unwrap();
        let exact = volume_exact_q(&tri).unwrap();
        let err = |h: Q| {
            let g = rasterize(&tri, &h).unwrap();
            scalar::to_f64(&(g.measure() - &exact)).abs()
        };
        let coarse = err(ratio(1, 20));
        let fine = err(ratio(1, 40));
        // Halving h halves the error, up to a slack factor of 4.
        assert!(fine <= 4.0 * coarse / 2.0 + 1e-12, "{fine} vs {coarse}");
    }
}
