use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type LatticePoint = Vec<i64>;

/// A finite subset of `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeSet {
    dim: usize,
    points: BTreeSet<LatticePoint>,
}

impl LatticeSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        let points: BTreeSet<LatticePoint> = points.into_iter().collect();
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        Ok(LatticeSet { dim, points })
    }

    pub fn from_1d(values: impl IntoIterator<Item = i64>) -> Self {
        LatticeSet { dim: 1, points: values.into_iter().map(|v| vec![v]).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &BTreeSet<LatticePoint> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.contains(p)
    }

    fn check_dim(&self, other: &LatticeSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    /// `{a + b}`.
    pub fn sumset(&self, other: &LatticeSet) -> Result<LatticeSet> {
        self.check_dim(other)?;
        let points = self
            .points
            .iter()
            .flat_map(|a| other.points.iter().map(move |b| add(a, b)))
            .collect();
        Ok(LatticeSet { dim: self.dim, points })
    }

    /// `{a - b}`.
    pub fn difference_set(&self, other: &LatticeSet) -> Result<LatticeSet> {
        self.sumset(&other.negated())
    }

    pub(crate) fn negated(&self) -> LatticeSet {
        LatticeSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.iter().map(|c| -c).collect()).collect(),
        }
    }

    /// `A ∩ (A - x)`: points `a` with `a + x` also in the set.
    pub fn slice(&self, x: &[i64]) -> LatticeSet {
        let points = self
            .points
            .iter()
            .filter(|a| self.points.contains(&add(a, x)))
            .cloned()
            .collect();
        LatticeSet { dim: self.dim, points }
    }

    pub fn is_subset(&self, other: &LatticeSet) -> bool {
        self.dim == other.dim && self.points.is_subset(&other.points)
    }
}

fn add(a: &[i64], b: &[i64]) -> LatticePoint {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_sumsets() {
        let a = LatticeSet::from_1d([0, 1]);
        let c = LatticeSet::from_1d([0, 2]);
        assert_eq!(a.difference_set(&a).unwrap().len(), 3);
        assert_eq!(a.sumset(&c).unwrap().len(), 4);
    }

    #[test]
    fn slice_keeps_points_surviving_translation() {
        let a = LatticeSet::from_1d([0, 1, 3]);
        assert_eq!(a.slice(&[1]), LatticeSet::from_1d([0]));
        assert_eq!(a.slice(&[0]), a);
        assert!(a.slice(&[5]).is_empty());
    }

    #[test]
    fn dimension_checks() {
        assert!(LatticeSet::new(2, vec![vec![1]]).is_err());
        let a = LatticeSet::from_1d([0]);
        let b = LatticeSet::new(2, vec![vec![0, 0]]).unwrap();
        assert!(a.sumset(&b).is_err());
    }
}
