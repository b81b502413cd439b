//! Volumes: exact rational polytope volume, exact voxel counts, and seeded
//! Monte Carlo estimates.

mod exact;
mod mc;

pub use exact::{volume_exact_q, volume_h, volume_with_apex};
pub use mc::{volume_mc, BoundingBox, DEFAULT_SAMPLES};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scalar::{self, serde_q, Q};
use crate::sets::{GridSet, VPolytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VolumeKind {
    Exact,
    Grid,
    MonteCarlo,
}

/// A volume with its provenance. Exact and grid values are exact rationals
/// with zero standard error; Monte Carlo values carry a standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    #[serde(with = "serde_q")]
    pub value: Q,
    pub kind: VolumeKind,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl VolumeEstimate {
    pub fn exact(value: Q) -> Self {
        VolumeEstimate { value, kind: VolumeKind::Exact, stderr: 0.0, samples: 0, seed: 0 }
    }

    pub fn grid(value: Q) -> Self {
        VolumeEstimate { value, kind: VolumeKind::Grid, stderr: 0.0, samples: 0, seed: 0 }
    }

    pub fn value_f64(&self) -> f64 {
        scalar::to_f64(&self.value)
    }
}

pub fn volume_exact(p: &VPolytope) -> Result<VolumeEstimate> {
    volume_exact_q(p).map(VolumeEstimate::exact)
}

pub fn volume_grid(g: &GridSet) -> VolumeEstimate {
    VolumeEstimate::grid(g.measure())
}

/// Default voxel size: the largest power-of-two fraction of the longest box
/// side giving at least 100 cells along every axis.
pub fn default_grid_step(lo: &[Q], hi: &[Q]) -> Q {
    let shortest = lo
        .iter()
        .zip(hi)
        .map(|(a, b)| b - a)
        .filter(|w| *w > Q::from_integer(0.into()))
        .min()
        .unwrap_or_else(|| scalar::q(1));
    let mut step = shortest;
    let target = scalar::q(100);
    let shortest_width = step.clone();
    while &shortest_width / &step < target {
        step /= scalar::q(2);
    }
    step
}
