//! Exact polytope volume by triangulation.
//!
//! The polytope is coned from an interior apex over its facets; each facet is
//! split by a pulling triangulation (cone from its lowest-index vertex over
//! the subfaces not containing it, recursively). Every simplex contributes
//! `|det| / n!`. Faces are vertex-index sets; a subface of a `k`-face `S` is
//! any `S ∩ F` (for a facet `F`) of affine dimension `k - 1`.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::hull::vertex_enum;
use crate::linalg::{common_denominator, det_int, rank, scale_to_int};
use crate::scalar::{self, Q};
use crate::sets::{HPolytope, VPolytope, Vector};
use crate::FACET_DIM_CAP;

struct Triangulator<'a> {
    points: &'a [Vec<BigInt>],
    facets: &'a [FixedBitSet],
    dims: HashMap<FixedBitSet, usize>,
}

impl Triangulator<'_> {
    fn affine_dim(&mut self, set: &FixedBitSet) -> usize {
        if let Some(&d) = self.dims.get(set) {
            return d;
        }
        let idx: Vec<usize> = set.ones().collect();
        let base = &self.points[idx[0]];
        let diffs: Vec<Vec<Q>> = idx[1..]
            .iter()
            .map(|&i| {
                self.points[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| Q::from_integer(a - b))
                    .collect()
            })
            .collect();
        let d = rank(&diffs);
        self.dims.insert(set.clone(), d);
        d
    }

    fn subfaces(&mut self, face: &FixedBitSet, k: usize) -> Vec<FixedBitSet> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for f in self.facets {
            let mut t = face.clone();
            t.intersect_with(f);
            if t == *face || t.count_ones(..) < k || seen.contains(&t) {
                continue;
            }
            if self.affine_dim(&t) + 1 == k {
                seen.insert(t.clone());
                out.push(t);
            }
        }
        out
    }

    /// Simplices (as `k + 1` vertex indices) triangulating the `k`-face.
    fn triangulate(&mut self, face: &FixedBitSet, k: usize) -> Vec<Vec<usize>> {
        let apex = face.ones().next().expect("faces are nonempty");
        if k == 0 {
            return vec![vec![apex]];
        }
        if face.count_ones(..) == k + 1 {
            return vec![face.ones().collect()];
        }
        let mut out = Vec::new();
        for sub in self.subfaces(face, k) {
            if sub.contains(apex) {
                continue;
            }
            for mut simplex in self.triangulate(&sub, k - 1) {
                simplex.push(apex);
                out.push(simplex);
            }
        }
        out
    }
}

/// Exact volume, coning from `apex` (which must lie in the interior).
pub fn volume_with_apex(p: &VPolytope, apex: &Vector) -> Result<Q> {
    let dim = p.dim();
    if dim > FACET_DIM_CAP {
        return Err(Error::DimensionCap { dim, cap: FACET_DIM_CAP });
    }
    if !p.is_full_dim() {
        return Ok(Q::zero());
    }
    apex.check_dim(dim)?;
    if dim == 1 {
        let (lo, hi) = p.bounding_box();
        return Ok(&hi[0] - &lo[0]);
    }
    let facets = p.facets()?;
    let den = common_denominator(p.vertices().iter().flat_map(|v| v.iter()).chain(apex.iter()));
    let points: Vec<Vec<BigInt>> = p.vertices().iter().map(|v| scale_to_int(v, &den)).collect();
    let apex_int = scale_to_int(apex, &den);
    let mut tri = Triangulator { points: &points, facets: &facets.incidence, dims: HashMap::new() };

    let mut total = BigInt::zero();
    for facet in &facets.incidence {
        for simplex in tri.triangulate(facet, dim - 1) {
            let rows: Vec<Vec<BigInt>> = simplex
                .iter()
                .map(|&i| points[i].iter().zip(&apex_int).map(|(a, b)| a - b).collect())
                .collect();
            total += det_int(rows).abs();
        }
    }
    let scale = BigInt::from(scalar::factorial(dim as u64)) * num_traits::pow(den, dim);
    Ok(Q::new(total, scale))
}

/// Exact volume, coning from the vertex centroid; zero for flat polytopes.
pub fn volume_exact_q(p: &VPolytope) -> Result<Q> {
    if p.dim() > FACET_DIM_CAP {
        return Err(Error::DimensionCap { dim: p.dim(), cap: FACET_DIM_CAP });
    }
    if !p.is_full_dim() {
        return Ok(Q::zero());
    }
    volume_with_apex(p, &p.centroid())
}

/// Exact volume of a bounded H-polytope (zero when empty or flat).
pub fn volume_h(h: &HPolytope) -> Result<Q> {
    match vertex_enum(h)? {
        None => Ok(Q::zero()),
        Some(p) => volume_exact_q(&p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{convex_hull, DifferenceBody};
    use crate::scalar::{q, ratio};
    use crate::sets::{make_cube, make_simplex};

    #[test]
    fn cubes_have_unit_volume() {
        for n in 1..=5 {
            assert_eq!(volume_exact_q(&make_cube(n, &q(1)).unwrap()).unwrap(), q(1), "n={n}");
        }
    }

    #[test]
    fn simplices_have_l_pow_n_over_n_factorial() {
        for n in 1..=5u32 {
            let l = ratio(7, 2);
            let expected = scalar::pow(&l, n) / Q::from_integer(scalar::factorial(n as u64).into());
            assert_eq!(volume_exact_q(&make_simplex(n as usize, &l).unwrap()).unwrap(), expected);
        }
    }

    #[test]
    fn hexagon_area_three() {
        let hex = make_simplex(2, &q(1)).unwrap().difference_body().unwrap();
        assert_eq!(volume_exact_q(&hex).unwrap(), q(3));
    }

    #[test]
    fn apex_choice_does_not_matter() {
        let p = convex_hull(&[
            Vector::from_ints(&[0, 0, 0]),
            Vector::from_ints(&[4, 1, 0]),
            Vector::from_ints(&[1, 5, 1]),
            Vector::from_ints(&[0, 1, 6]),
            Vector::from_ints(&[3, 3, 3]),
            Vector::from_ints(&[2, -1, 2]),
        ])
        .unwrap();
        let c = p.centroid();
        let other = (&c + &p.vertices()[0]).scale(&ratio(1, 2));
        assert_eq!(volume_with_apex(&p, &c).unwrap(), volume_with_apex(&p, &other).unwrap());
    }

    #[test]
    fn flat_polytope_has_zero_volume() {
        let seg = VPolytope::from_ints(&[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(volume_exact_q(&seg).unwrap(), q(0));
    }

    #[test]
    fn cap_exceeded() {
        let big = make_cube(7, &q(1)).unwrap();
        assert!(matches!(volume_exact_q(&big), Err(Error::DimensionCap { .. })));
    }
}
