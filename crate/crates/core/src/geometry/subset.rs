use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::measure::volume_exact_q;
use crate::precise::nth_root_q;
use crate::scalar::{self, Q};
use crate::sets::{scale_about, GridSet, VPolytope};

/// Fractional bits of the homothety factor when it is irrational.
const SCALE_BITS: u32 = 64;

#[derive(Debug, Clone)]
pub struct SubsetSelection<T> {
    pub subset: T,
    pub measure: Q,
    /// `target - measure`, never negative.
    pub residual: Q,
    /// Homothety factor for convex inputs.
    pub scale: Option<Q>,
}

pub trait SelectSubset: Sized {
    /// A subset of exactly (or, when not representable, just below) the
    /// target measure.
    fn select_subset_of_measure(&self, target: &Q) -> Result<SubsetSelection<Self>>;
}

fn check_target(target: &Q, total: &Q) -> Result<()> {
    if !target.is_positive() {
        return Err(Error::invalid(format!("target measure {target} must be positive")));
    }
    if target > total {
        return Err(Error::invalid(format!("target measure {target} exceeds the set's measure {total}")));
    }
    Ok(())
}

impl SelectSubset for VPolytope {
    /// Homothety about the vertex centroid with factor `(target / mu)^(1/n)`,
    /// rounded down to a 64-bit dyadic when irrational so the result stays
    /// inside the target.
    fn select_subset_of_measure(&self, target: &Q) -> Result<SubsetSelection<Self>> {
        let total = volume_exact_q(self)?;
        check_target(target, &total)?;
        let n = self.dim() as u32;
        let fraction = target / &total;
        let t = match scalar::exact_nth_root(&fraction, n) {
            Some(t) => t,
            None => nth_root_q(&fraction, n, SCALE_BITS).lower(),
        };
        let subset = if t.is_one() {
            self.clone()
        } else {
            scale_about(self, &self.centroid(), &t)?
        };
        let measure = &total * scalar::pow(&t, n);
        Ok(SubsetSelection { residual: target - &measure, subset, measure, scale: Some(t) })
    }
}

impl SelectSubset for GridSet {
    /// The first `floor(target / h^n)` cells in lexicographic order.
    fn select_subset_of_measure(&self, target: &Q) -> Result<SubsetSelection<Self>> {
        let total = self.measure();
        check_target(target, &total)?;
        let keep = scalar::floor(&(target / self.cell_volume()));
        let keep = keep.to_usize().ok_or_else(|| Error::TooLarge("cell count".into()))?;
        if keep == 0 {
            return Err(Error::invalid(format!(
                "target measure {target} is below one voxel ({})",
                self.cell_volume()
            )));
        }
        let cells: Vec<_> = self.cells().iter().take(keep).cloned().collect();
        let subset = GridSet::new(self.dim(), self.cell().clone(), self.origin().clone(), cells)?;
        let measure = subset.measure();
        let residual = target - &measure;
        debug_assert!(!residual.is_negative() && residual < self.cell_volume() || residual.is_zero());
        Ok(SubsetSelection { subset, measure, residual, scale: None })
    }
}
