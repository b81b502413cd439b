//! Verifiers for the inequalities, each returning a [`CheckReport`].

mod brunn_minkowski;
mod koester_katz;
mod lemma1;
mod lemma2;
mod report;
mod ruzsa;
mod theorem;

pub use brunn_minkowski::check_brunn_minkowski;
pub use koester_katz::{check_koester_katz, check_koester_katz_exhaustive, KoesterKatzSet};
pub use lemma1::{check_lemma1, lemma1_default_step};
pub use lemma2::{check_lemma2, LEMMA2_TOLERANCE};
pub use report::{aggregate, CheckReport, Condition, Quantity};
pub use ruzsa::check_ruzsa_triangle;
pub use theorem::{check_theorem, default_c_budget, TheoremForm, DEFAULT_C_BUDGET};

use crate::error::{Error, Result};
use crate::measure::volume_exact_q;
use crate::scalar::Q;
use crate::sets::{GridSet, VPolytope};
use crate::FACET_DIM_CAP;

/// The second set `B` of a mixed check: a convex polytope or a voxel union.
#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Convex(VPolytope),
    Grid(GridSet),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Convex(p) => p.dim(),
            Body::Grid(g) => g.dim(),
        }
    }

    pub fn measure(&self) -> Result<Q> {
        match self {
            Body::Convex(p) => volume_exact_q(p),
            Body::Grid(g) => Ok(g.measure()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Body::Convex(p) => format!("convex polytope in R^{} with {} vertices", p.dim(), p.vertices().len()),
            Body::Grid(g) => format!("voxel union in R^{} of {} cells at h = {}", g.dim(), g.len(), g.cell()),
        }
    }
}

impl From<VPolytope> for Body {
    fn from(p: VPolytope) -> Self {
        Body::Convex(p)
    }
}

impl From<GridSet> for Body {
    fn from(g: GridSet) -> Self {
        Body::Grid(g)
    }
}

/// Primary convex input: full-dimensional and within the exact cap.
fn require_convex_primary(a: &VPolytope, label: &str) -> Result<()> {
    if a.dim() > FACET_DIM_CAP {
        return Err(Error::DimensionCap { dim: a.dim(), cap: FACET_DIM_CAP });
    }
    if !a.is_full_dim() {
        return Err(Error::Degenerate(format!("{label} is not full-dimensional")));
    }
    Ok(())
}

fn describe_polytope(label: &str, p: &VPolytope) -> String {
    format!("{label}: convex polytope in R^{} with {} vertices", p.dim(), p.vertices().len())
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, found: b });
    }
    Ok(())
}
