use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::hull::convex_hull_with_mode;
use crate::sets::{Cell, GridSet, LatticeSet, Reflect, VPolytope, Vector};

/// `conv{p + q}` over all vertex pairs.
pub fn minkowski_sum(p: &VPolytope, q: &VPolytope) -> Result<VPolytope> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    let sums: Vec<Vector> = p
        .vertices()
        .iter()
        .flat_map(|a| q.vertices().iter().map(move |b| a + b))
        .collect();
    convex_hull_with_mode(p.mode().combine(q.mode()), &sums)
}

type Runs = BTreeMap<Vec<i64>, Vec<(i64, i64)>>;

/// Group cells into maximal runs along the last axis.
fn to_runs(cells: &BTreeSet<Cell>) -> Runs {
    let mut runs: Runs = BTreeMap::new();
    // BTreeSet order is lexicographic, so each prefix's last coordinates arrive sorted.
    for c in cells {
        let (last, prefix) = c.split_last().expect("cells have positive dimension");
        let entry = runs.entry(prefix.to_vec()).or_default();
        match entry.last_mut() {
            Some((_, hi)) if *hi + 1 == *last => *hi = *last,
            _ => entry.push((*last, *last)),
        }
    }
    runs
}

fn merge(mut intervals: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    intervals.sort_unstable();
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        match out.last_mut() {
            Some((_, h)) if lo <= *h + 1 => *h = (*h).max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Voxel dilation: cell indices add and so do the origins.
pub fn grid_minkowski(g1: &GridSet, g2: &GridSet) -> Result<GridSet> {
    g1.check_same_resolution(g2)?;
    let r1 = to_runs(g1.cells());
    let r2 = to_runs(g2.cells());
    let mut acc: BTreeMap<Vec<i64>, Vec<(i64, i64)>> = BTreeMap::new();
    for (p1, runs1) in &r1 {
        for (p2, runs2) in &r2 {
            let prefix: Vec<i64> = p1.iter().zip(p2).map(|(a, b)| a + b).collect();
            let entry = acc.entry(prefix).or_default();
            for (a, b) in runs1 {
                for (c, d) in runs2 {
                    entry.push((a + c, b + d));
                }
            }
        }
    }
    let mut cells = BTreeSet::new();
    for (prefix, intervals) in acc {
        for (lo, hi) in merge(intervals) {
            for last in lo..=hi {
                let mut c = prefix.clone();
                c.push(last);
                cells.insert(c);
            }
        }
    }
    GridSet::new(g1.dim(), g1.cell().clone(), g1.origin() + g2.origin(), cells)
}

/// `P + (-P)`.
pub trait DifferenceBody: Sized {
    fn difference_body(&self) -> Result<Self>;
}

impl DifferenceBody for VPolytope {
    fn difference_body(&self) -> Result<Self> {
        minkowski_sum(self, &self.reflect())
    }
}

impl DifferenceBody for GridSet {
    fn difference_body(&self) -> Result<Self> {
        grid_minkowski(self, &self.reflect())
    }
}

impl DifferenceBody for LatticeSet {
    fn difference_body(&self) -> Result<Self> {
        self.difference_set(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::volume_exact_q;
    use crate::scalar::{q, ratio};
    use crate::sets::{make_cube, make_simplex};

    #[test]
    fn squares_add_to_square() {
        let sq = make_cube(2, &q(1)).unwrap();
        let s = minkowski_sum(&sq, &sq).unwrap();
        assert!(s.same_vertex_set(&make_cube(2, &q(2)).unwrap()));
        assert_eq!(volume_exact_q(&s).unwrap(), q(4));
    }

    #[test]
    fn simplex_plus_itself_is_dilate() {
        let t = make_simplex(2, &q(1)).unwrap();
        let s = minkowski_sum(&t, &t).unwrap();
        assert!(s.same_vertex_set(&make_simplex(2, &q(2)).unwrap()));
        assert_eq!(volume_exact_q(&s).unwrap(), q(2));
    }

    #[test]
    fn triangle_difference_body_is_hexagon() {
        let t = make_simplex(2, &q(1)).unwrap();
        let d = t.difference_body().unwrap();
        let hex = VPolytope::from_ints(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, -1], &[-1, 1]]).unwrap();
        assert!(d.same_vertex_set(&hex));
        assert_eq!(volume_exact_q(&d).unwrap(), q(3));
        assert!(d.same_vertex_set(&d.reflect()));
    }

    #[test]
    fn segment_difference_body() {
        let seg = make_cube(1, &q(1)).unwrap();
        let d = seg.difference_body().unwrap();
        assert_eq!(volume_exact_q(&d).unwrap(), q(2));
        assert!(d.same_vertex_set(&VPolytope::from_ints(&[&[-1], &[1]]).unwrap()));
    }

    #[test]
    fn dimension_mismatch() {
        let a = make_cube(2, &q(1)).unwrap();
        let b = make_cube(3, &q(1)).unwrap();
        assert!(minkowski_sum(&a, &b).is_err());
    }

    #[test]
    fn voxel_squares_dilate_to_block() {
        let sq: Vec<Cell> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        let g = GridSet::aligned(2, q(1), sq).unwrap();
        let s = grid_minkowski(&g, &g).unwrap();
        assert_eq!(s.len(), 9);
        for i in 0..3 {
            for j in 0..3 {
                assert!(s.contains_cell(&[i, j]));
            }
        }
    }

    #[test]
    fn single_cell_is_identity_up_to_translation() {
        let zero = GridSet::new(2, ratio(1, 2), Vector::zeros(2), vec![vec![0, 0]]).unwrap();
        let g = GridSet::aligned(2, ratio(1, 2), vec![vec![0, 0], vec![3, 1], vec![5, 5]]).unwrap();
        let s = grid_minkowski(&zero, &g).unwrap();
        assert_eq!(s, g);
    }

    #[test]
    fn grid_difference_body_contains_zero() {
        let g = GridSet::aligned(2, q(1), vec![vec![0, 0], vec![2, 1], vec![7, -3]]).unwrap();
        let d = g.difference_body().unwrap();
        assert!(d.contains_cell(&[0, 0]));
        assert!(d.is_origin_zero());
        assert_eq!(d.reflect(), d);
    }

    #[test]
    fn grid_resolution_mismatch() {
        let a = GridSet::aligned(1, q(1), vec![vec![0]]).unwrap();
        let b = GridSet::aligned(1, ratio(1, 2), vec![vec![0]]).unwrap();
        assert!(matches!(grid_minkowski(&a, &b), Err(Error::ResolutionMismatch(_))));
    }

    #[test]
    fn runs_match_pairwise_sums() {
        let a = GridSet::aligned(2, q(1), vec![vec![0, 0], vec![0, 2], vec![1, 5], vec![3, 3]]).unwrap();
        let b = GridSet::aligned(2, q(1), vec![vec![0, 0], vec![0, 1], vec![4, -2]]).unwrap();
        let brute: BTreeSet<Cell> = a
            .cells()
            .iter()
            .flat_map(|x| b.cells().iter().map(move |y| vec![x[0] + y[0], x[1] + y[1]]))
            .collect();
        assert_eq!(grid_minkowski(&a, &b).unwrap().cells(), &brute);
    }
}
