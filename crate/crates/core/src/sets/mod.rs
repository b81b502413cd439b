//! Representations of the compact sets under study: convex polytopes (vertex
//! and halfspace form), voxel unions and finite lattice sets.

mod grid;
pub mod json;
mod lattice;
mod polytope;
mod raster;
mod vector;

use num_traits::{One, Signed, Zero};

pub use grid::{Cell, GridSet};
pub use lattice::{LatticePoint, LatticeSet};
pub use polytope::{Facets, HPolytope, Halfspace, VPolytope};
pub use raster::rasterize;
pub use vector::{dedup_tolerance, Mode, Vector};

use crate::error::{Error, Result};
use crate::scalar::Q;

/// `{x : x_j >= 0, sum x_j <= L}` with vertices `0, L e_1, ..., L e_n`.
pub fn make_simplex(n: usize, side: &Q) -> Result<VPolytope> {
    if n == 0 {
        return Err(Error::invalid("simplex dimension must be at least 1"));
    }
    if !side.is_positive() {
        return Err(Error::invalid(format!("simplex side must be positive, got {side}")));
    }
    let mut vertices = vec![Vector::zeros(n)];
    vertices.extend((0..n).map(|j| Vector::unit(n, j, side)));
    VPolytope::new(vertices)
}

/// Axis-parallel box `prod [lo_j, hi_j]`.
pub fn make_box(lo: &[Q], hi: &[Q]) -> Result<VPolytope> {
    if lo.len() != hi.len() {
        return Err(Error::DimensionMismatch { expected: lo.len(), found: hi.len() });
    }
    if lo.is_empty() {
        return Err(Error::invalid("dimension must be positive"));
    }
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Err(Error::invalid("box lower corner exceeds upper corner"));
    }
    let n = lo.len();
    let vertices = (0..1usize << n)
        .map(|mask| {
            Vector(
                (0..n)
                    .map(|j| if mask >> j & 1 == 1 { hi[j].clone() } else { lo[j].clone() })
                    .collect(),
            )
        })
        .collect();
    VPolytope::new(vertices)
}

/// `[0, s]^n`.
pub fn make_cube(n: usize, side: &Q) -> Result<VPolytope> {
    make_box(&vec![Q::zero(); n], &vec![side.clone(); n])
}

/// Pointwise negation `-P`.
pub trait Reflect {
    fn reflect(&self) -> Self;
}

impl Reflect for VPolytope {
    fn reflect(&self) -> Self {
        VPolytope::with_mode(self.mode(), self.vertices().iter().map(|v| -v).collect())
            .expect("negating a valid polytope keeps it valid")
    }
}

impl Reflect for GridSet {
    fn reflect(&self) -> Self {
        let cells: Vec<Cell> = self.cells().iter().map(|c| c.iter().map(|i| -i).collect()).collect();
        GridSet::new(self.dim(), self.cell().clone(), -self.origin(), cells)
            .expect("negating a valid grid keeps it valid")
    }
}

impl Reflect for LatticeSet {
    fn reflect(&self) -> Self {
        self.negated()
    }
}

/// Homothety `{center + t (p - center)}` with `t` in `[0, 1]`.
pub fn scale_about(p: &VPolytope, center: &Vector, t: &Q) -> Result<VPolytope> {
    center.check_dim(p.dim())?;
    if t.is_negative() || *t > Q::one() {
        return Err(Error::invalid(format!("scale factor {t} outside [0, 1]")));
    }
    let vertices = p
        .vertices()
        .iter()
        .map(|v| center + &(v - center).scale(t))
        .collect();
    VPolytope::with_mode(p.mode(), vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::volume_exact_q;
    use crate::scalar::{q, ratio};

    #[test]
    fn simplex_volumes() {
        let seg = make_simplex(1, &q(1)).unwrap();
        assert_eq!(seg.vertices().len(), 2);
        assert_eq!(volume_exact_q(&seg).unwrap(), q(1));
        assert_eq!(volume_exact_q(&make_simplex(2, &q(1)).unwrap()).unwrap(), ratio(1, 2));
        assert_eq!(volume_exact_q(&make_simplex(3, &q(1)).unwrap()).unwrap(), ratio(1, 6));
        assert!(make_simplex(0, &q(1)).is_err());
        assert!(make_simplex(2, &q(0)).is_err());
        assert!(make_simplex(2, &q(-1)).is_err());
    }

    #[test]
    fn reflection_negates_and_is_involutive() {
        let seg = make_cube(1, &q(1)).unwrap();
        let r = seg.reflect();
        assert!(r.same_vertex_set(&VPolytope::from_ints(&[&[-1], &[0]]).unwrap()));
        let tri = make_simplex(2, &q(1)).unwrap();
        let expected = VPolytope::from_ints(&[&[0, 0], &[-1, 0], &[0, -1]]).unwrap();
        assert!(tri.reflect().same_vertex_set(&expected));
        assert!(tri.reflect().reflect().same_vertex_set(&tri));
        assert_eq!(volume_exact_q(&tri.reflect()).unwrap(), ratio(1, 2));

        let g = GridSet::aligned(2, ratio(1, 2), vec![vec![0, 0], vec![1, 0], vec![1, 3]]).unwrap();
        assert_eq!(g.reflect().reflect(), g);
        assert_eq!(g.reflect().measure(), g.measure());
        // Cell centres are negated exactly.
        assert_eq!(g.reflect().center(&[-1, -3]), -&g.center(&[1, 3]));

        let l = LatticeSet::from_1d([0, 1, 5]);
        assert_eq!(l.reflect(), LatticeSet::from_1d([0, -1, -5]));
    }

    #[test]
    fn homothety_cases() {
        let sq = make_cube(2, &q(1)).unwrap();
        let c = sq.centroid();
        assert!(scale_about(&sq, &c, &q(1)).unwrap().same_vertex_set(&sq));
        let point = scale_about(&sq, &c, &q(0)).unwrap();
        assert_eq!(point.vertices(), &[c.clone()]);
        assert!(!point.is_full_dim());
        let half = scale_about(&sq, &c, &ratio(1, 2)).unwrap();
        assert_eq!(volume_exact_q(&half).unwrap(), ratio(1, 4));
        assert!(scale_about(&sq, &c, &ratio(3, 2)).is_err());
        assert!(scale_about(&sq, &c, &q(-1)).is_err());
    }
}
