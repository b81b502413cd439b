use num_traits::Zero;
use serde_json::json;

use crate::checks::{same_dim, CheckReport, Condition, Quantity};
use crate::error::{Error, Result};
use crate::geometry::{grid_minkowski, DifferenceBody};
use crate::scalar::Q;
use crate::sets::{GridSet, LatticeSet};

/// Sets on which `A_x + B ⊆ (A+B)_x` can be decided exactly. Translations
/// `x` are integer vectors: lattice points, or whole cells for grids.
pub trait KoesterKatzSet: Sized {
    fn dim(&self) -> usize;
    fn measure(&self) -> Q;
    fn sum(&self, other: &Self) -> Result<Self>;
    fn slice_at(&self, x: &[i64]) -> Self;
    fn contained_in(&self, other: &Self) -> Result<bool>;
    /// All translations `x` in `A - A`.
    fn differences(&self) -> Result<Vec<Vec<i64>>>;
    fn describe(&self, label: &str) -> String;
}

impl KoesterKatzSet for LatticeSet {
    fn dim(&self) -> usize {
        LatticeSet::dim(self)
    }

    fn measure(&self) -> Q {
        Q::from_integer(self.len().into())
    }

    fn sum(&self, other: &Self) -> Result<Self> {
        self.sumset(other)
    }

    fn slice_at(&self, x: &[i64]) -> Self {
        self.slice(x)
    }

    fn contained_in(&self, other: &Self) -> Result<bool> {
        Ok(self.is_subset(other))
    }

    fn differences(&self) -> Result<Vec<Vec<i64>>> {
        Ok(self.difference_body()?.points().iter().cloned().collect())
    }

    fn describe(&self, label: &str) -> String {
        format!("{label}: {} points in Z^{}", self.len(), LatticeSet::dim(self))
    }
}

impl KoesterKatzSet for GridSet {
    fn dim(&self) -> usize {
        GridSet::dim(self)
    }

    fn measure(&self) -> Q {
        GridSet::measure(self)
    }

    fn sum(&self, other: &Self) -> Result<Self> {
        grid_minkowski(self, other)
    }

    fn slice_at(&self, x: &[i64]) -> Self {
        self.slice(x)
    }

    fn contained_in(&self, other: &Self) -> Result<bool> {
        self.is_subset(other)
    }

    fn differences(&self) -> Result<Vec<Vec<i64>>> {
        let cells: Vec<_> = self.cells().iter().collect();
        let mut out: Vec<Vec<i64>> = cells
            .iter()
            .flat_map(|a| cells.iter().map(move |b| a.iter().zip(b.iter()).map(|(p, q)| p - q).collect()))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn describe(&self, label: &str) -> String {
        format!("{label}: {} voxels of side {} in R^{}", self.len(), self.cell(), GridSet::dim(self))
    }
}

fn check_inputs<T: KoesterKatzSet>(a: &T, b: &T) -> Result<()> {
    same_dim(a.dim(), b.dim())?;
    Ok(())
}

/// `A_x + B ⊆ (A+B)_x` for one translation, with both measures reported.
pub fn check_koester_katz<T: KoesterKatzSet>(a: &T, b: &T, x: &[i64]) -> Result<CheckReport> {
    check_inputs(a, b)?;
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: x.len() });
    }
    let sum = a.sum(b)?;
    let (lhs, rhs, contained) = kk_at(a, b, &sum, x)?;
    Ok(CheckReport::new("koester_katz", Quantity::exact(lhs), Quantity::exact(rhs), Q::zero())
        .with_condition(Condition::holds("A_x + B is a subset of (A+B)_x", contained))
        .with_input(a.describe("A"))
        .with_input(b.describe("B"))
        .with_param("x", x.to_vec()))
}

fn kk_at<T: KoesterKatzSet>(a: &T, b: &T, sum: &T, x: &[i64]) -> Result<(Q, Q, bool)> {
    let left = a.slice_at(x).sum(b)?;
    let right = sum.slice_at(x);
    Ok((left.measure(), right.measure(), left.contained_in(&right)?))
}

/// The containment for every `x` in `A - A`. Reports the number of
/// violations against zero.
pub fn check_koester_katz_exhaustive<T: KoesterKatzSet>(a: &T, b: &T) -> Result<CheckReport> {
    check_inputs(a, b)?;
    let sum = a.sum(b)?;
    let xs = a.differences()?;
    let mut violations = Vec::new();
    let mut equalities = 0u64;
    for x in &xs {
        let (lhs, rhs, contained) = kk_at(a, b, &sum, x)?;
        if !contained {
            violations.push(x.clone());
        }
        if lhs == rhs {
            equalities += 1;
        }
    }
    Ok(CheckReport::new(
        "koester_katz_exhaustive",
        Quantity::int(violations.len() as i64),
        Quantity::int(0),
        Q::zero(),
    )
    .with_input(a.describe("A"))
    .with_input(b.describe("B"))
    .with_param("translations", xs.len())
    .with_details(json!({ "violations": violations, "equalities": equalities })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_example() {
        let a = LatticeSet::from_1d([0, 1, 3]);
        let b = LatticeSet::from_1d([0, 1]);
        let r = check_koester_katz(&a, &b, &[1]).unwrap();
        assert_eq!(r.lhs, Quantity::int(2));
        assert_eq!(r.rhs, Quantity::int(4));
        assert!(r.pass);
        let r = check_koester_katz(&a, &b, &[0]).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(r.pass);
    }

    #[test]
    fn exhaustive_lattice_and_grid() {
        let a = LatticeSet::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 2], vec![3, 1]]).unwrap();
        let b = LatticeSet::new(2, vec![vec![0, 0], vec![2, 1], vec![1, 1]]).unwrap();
        let r = check_koester_katz_exhaustive(&a, &b).unwrap();
        assert!(r.pass);
        assert_eq!(r.parameters["translations"], a.difference_body().unwrap().len());

        let ga = GridSet::aligned(2, crate::scalar::ratio(1, 2), vec![vec![0, 0], vec![1, 0], vec![1, 1]]).unwrap();
        let gb = GridSet::aligned(2, crate::scalar::ratio(1, 2), vec![vec![0, 0], vec![0, 2]]).unwrap();
        assert!(check_koester_katz_exhaustive(&ga, &gb).unwrap().pass);
    }

    #[test]
    fn resolution_mismatch_is_an_error() {
        let ga = GridSet::aligned(1, crate::scalar::ratio(1, 2), vec![vec![0]]).unwrap();
        let gb = GridSet::aligned(1, crate::scalar::ratio(1, 3), vec![vec![0]]).unwrap();
        assert!(matches!(check_koester_katz(&ga, &gb, &[0]), Err(Error::ResolutionMismatch(_))));
    }
}
