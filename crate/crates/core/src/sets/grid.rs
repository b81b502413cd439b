use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Q};
use crate::sets::vector::Vector;

pub type Cell = Vec<i64>;

/// A finite union of axis-aligned voxels of side `cell`.
///
/// Cell `i` is the cube of side `cell` centred at `origin + cell * i`, so a
/// grid is also the finite point set of its centres. Minkowski sums add
/// centre indices, which keeps the voxel algebra exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSet {
    dim: usize,
    cell: Q,
    origin: Vector,
    cells: BTreeSet<Cell>,
}

impl GridSet {
    pub fn new(dim: usize, cell: Q, origin: Vector, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if !cell.is_positive() {
            return Err(Error::invalid("cell size must be positive"));
        }
        origin.check_dim(dim)?;
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if let Some(c) = cells.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: c.len() });
        }
        Ok(GridSet { dim, cell, origin, cells })
    }

    /// Grid whose cells tile `[0, h)`-aligned space: cell `i` spans `[i h, (i+1) h]`.
    pub fn aligned(dim: usize, cell: Q, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let half = &cell / scalar::q(2);
        Self::new(dim, cell, Vector(vec![half; dim]), cells)
    }

    pub(crate) fn from_parts(dim: usize, cell: Q, origin: Vector, cells: BTreeSet<Cell>) -> Self {
        GridSet { dim, cell, origin, cells }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cell(&self) -> &Q {
        &self.cell
    }

    pub fn origin(&self) -> &Vector {
        &self.origin
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_volume(&self) -> Q {
        scalar::pow(&self.cell, self.dim as u32)
    }

    /// `|cells| * h^dim`, exact.
    pub fn measure(&self) -> Q {
        Q::from_integer(self.cells.len().into()) * self.cell_volume()
    }

    pub fn center(&self, idx: &[i64]) -> Vector {
        Vector(
            idx.iter()
                .zip(self.origin.iter())
                .map(|(&i, o)| o + &self.cell * scalar::q(i))
                .collect(),
        )
    }

    pub fn contains_cell(&self, idx: &[i64]) -> bool {
        self.cells.contains(idx)
    }

    /// Integer offset `k` with `other.origin = self.origin + h k`, if the
    /// grids share a resolution and lattice.
    pub fn offset_to(&self, other: &GridSet) -> Result<Vec<i64>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.cell != other.cell {
            return Err(Error::ResolutionMismatch(format!(
                "cell sizes {} and {} differ",
                self.cell, other.cell
            )));
        }
        self.origin
            .iter()
            .zip(other.origin.iter())
            .map(|(a, b)| {
                let k = (b - a) / &self.cell;
                if !k.is_integer() {
                    return Err(Error::ResolutionMismatch(format!(
                        "origins {} and {} are not lattice aligned",
                        a, b
                    )));
                }
                i64::try_from(k.to_integer()).map_err(|_| Error::TooLarge("grid offset".into()))
            })
            .collect()
    }

    /// `other`'s cells expressed in this grid's index frame.
    fn aligned_cells(&self, other: &GridSet) -> Result<BTreeSet<Cell>> {
        let k = self.offset_to(other)?;
        Ok(other
            .cells
            .iter()
            .map(|c| c.iter().zip(&k).map(|(a, b)| a + b).collect())
            .collect())
    }

    pub fn union(&self, other: &GridSet) -> Result<GridSet> {
        let theirs = self.aligned_cells(other)?;
        let cells = self.cells.union(&theirs).cloned().collect();
        Ok(Self::from_parts(self.dim, self.cell.clone(), self.origin.clone(), cells))
    }

    pub fn intersection(&self, other: &GridSet) -> Result<GridSet> {
        let theirs = self.aligned_cells(other)?;
        let cells = self.cells.intersection(&theirs).cloned().collect();
        Ok(Self::from_parts(self.dim, self.cell.clone(), self.origin.clone(), cells))
    }

    pub fn is_subset(&self, other: &GridSet) -> Result<bool> {
        let k = other.offset_to(self)?;
        Ok(self.cells.iter().all(|c| {
            let shifted: Cell = c.iter().zip(&k).map(|(a, b)| a + b).collect();
            other.cells.contains(&shifted)
        }))
    }

    /// Translate by `shift` whole cells.
    pub fn shift_cells(&self, shift: &[i64]) -> GridSet {
        let cells = self
            .cells
            .iter()
            .map(|c| c.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        Self::from_parts(self.dim, self.cell.clone(), self.origin.clone(), cells)
    }

    /// `G ∩ (G - x)` for a lattice translation `x` (in cells).
    pub fn slice(&self, x: &[i64]) -> GridSet {
        let cells = self
            .cells
            .iter()
            .filter(|c| {
                let moved: Cell = c.iter().zip(x).map(|(a, b)| a + b).collect();
                self.cells.contains(&moved)
            })
            .cloned()
            .collect();
        Self::from_parts(self.dim, self.cell.clone(), self.origin.clone(), cells)
    }

    /// Cell-index bounding box, `None` when empty.
    pub fn index_bounds(&self) -> Option<(Cell, Cell)> {
        let first = self.cells.iter().next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for c in &self.cells {
            for j in 0..self.dim {
                lo[j] = lo[j].min(c[j]);
                hi[j] = hi[j].max(c[j]);
            }
        }
        Some((lo, hi))
    }

    pub(crate) fn check_same_resolution(&self, other: &GridSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.cell != other.cell {
            return Err(Error::ResolutionMismatch(format!(
                "cell sizes {} and {} differ",
                self.cell, other.cell
            )));
        }
        Ok(())
    }

    pub fn is_origin_zero(&self) -> bool {
        self.origin.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, ratio};

    fn square(h: Q, side: i64) -> GridSet {
        let cells = (0..side).flat_map(|i| (0..side).map(move |j| vec![i, j]));
        GridSet::aligned(2, h, cells).unwrap()
    }

    #[test]
    fn measure_is_count_times_volume() {
        let cells = (0..2).flat_map(|i| (0..2).flat_map(move |j| (0..2).map(move |k| vec![i, j, k])));
        let g = GridSet::aligned(3, ratio(1, 2), cells).unwrap();
        assert_eq!(g.measure(), q(1));
        let empty = GridSet::aligned(2, q(1), Vec::<Cell>::new()).unwrap();
        assert_eq!(empty.measure(), q(0));
    }

    #[test]
    fn misaligned_origins_are_rejected() {
        let a = square(q(1), 2);
        let b = GridSet::new(2, q(1), Vector::zeros(2), vec![vec![0, 0]]).unwrap();
        assert!(matches!(a.union(&b), Err(Error::ResolutionMismatch(_))));
        let c = square(ratio(1, 2), 2);
        assert!(matches!(a.intersection(&c), Err(Error::ResolutionMismatch(_))));
    }

    #[test]
    fn aligned_union_uses_offset() {
        let a = square(q(1), 2);
        let shifted = GridSet::new(2, q(1), Vector::from_ints(&[2, 0]).add_half(), vec![vec![0, 0]]).unwrap();
        let u = a.union(&shifted).unwrap();
        assert!(u.contains_cell(&[2, 0]));
        assert_eq!(u.len(), 5);
    }

    #[test]
    fn slice_of_segment() {
        let g = GridSet::aligned(1, q(1), (0..4).map(|i| vec![i])).unwrap();
        assert_eq!(g.slice(&[1]).len(), 3);
        assert_eq!(g.slice(&[4]).len(), 0);
        assert_eq!(g.slice(&[0]), g);
    }

    trait AddHalf {
        fn add_half(self) -> Vector;
    }
    impl AddHalf for Vector {
        fn add_half(self) -> Vector {
            Vector(self.0.into_iter().map(|c| c + ratio(1, 2)).collect())
        }
    }
}
