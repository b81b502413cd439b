use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::MembershipOracle;
use crate::measure::{VolumeEstimate, VolumeKind};
use crate::scalar::{self, Q};

pub const DEFAULT_SAMPLES: u64 = 1_000_000;

/// Samples per shard. Shards are reassembled in order, so the hit count
/// never depends on the thread count.
const SHARD: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundingBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoundingBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), found: hi.len() });
        }
        Ok(BoundingBox { lo, hi })
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }
}

/// Sample `i` of the stream for `seed` uses words `[2 d i, 2 d (i + 1))` of
/// the ChaCha8 keystream, so any shard can be regenerated independently.
fn count_hits(oracle: &MembershipOracle, bx: &BoundingBox, seed: u64, start: u64, end: u64) -> u64 {
    let dim = bx.lo.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(u128::from(start) * 2 * dim as u128);
    let mut point = vec![0.0; dim];
    let mut hits = 0;
    for _ in start..end {
        for (j, x) in point.iter_mut().enumerate() {
            let u: f64 = rng.gen();
            *x = bx.lo[j] + u * (bx.hi[j] - bx.lo[j]);
        }
        if oracle.contains(&point) {
            hits += 1;
        }
    }
    hits
}

/// `vol(box) * hits / samples`, with binomial standard error.
pub fn volume_mc(oracle: &MembershipOracle, bx: &BoundingBox, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    if bx.lo.len() != oracle.dim() {
        return Err(Error::DimensionMismatch { expected: oracle.dim(), found: bx.lo.len() });
    }
    if samples == 0 {
        return Err(Error::invalid("Monte Carlo needs at least one sample"));
    }
    let box_volume = bx.volume();
    if box_volume <= 0.0 || !box_volume.is_finite() {
        return Err(Error::invalid("bounding box has zero volume"));
    }
    let shards: Vec<(u64, u64)> = (0..samples.div_ceil(SHARD))
        .map(|s| (s * SHARD, ((s + 1) * SHARD).min(samples)))
        .collect();
    let hits: u64 = shards
        .par_iter()
        .map(|&(a, b)| count_hits(oracle, bx, seed, a, b))
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let p = hits as f64 / samples as f64;
    let value = scalar::from_f64(box_volume)? * Q::new(hits.into(), samples.into());
    Ok(VolumeEstimate {
        value,
        kind: VolumeKind::MonteCarlo,
        stderr: box_volume * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_box() -> BoundingBox {
        BoundingBox::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap()
    }

    #[test]
    fn constant_oracles() {
        let all = MembershipOracle::new(2, "everything", |_| true);
        let v = volume_mc(&all, &square_box(), 1000, 7).unwrap();
        assert_eq!(v.value_f64(), 4.0);
        assert_eq!(v.stderr, 0.0);
        let none = MembershipOracle::new(2, "nothing", |_| false);
        assert_eq!(volume_mc(&none, &square_box(), 1000, 7).unwrap().value_f64(), 0.0);
    }

    #[test]
    fn deterministic_given_seed_and_shard_independent() {
        let ball = MembershipOracle::ball(2, 1.0);
        let a = volume_mc(&ball, &square_box(), 200_000, 42).unwrap();
        let b = volume_mc(&ball, &square_box(), 200_000, 42).unwrap();
        assert_eq!(a, b);
        // Serial recount of one straddling range.
        let serial = count_hits(&ball, &square_box(), 42, 0, 200_000);
        let split = count_hits(&ball, &square_box(), 42, 0, 70_001)
            + count_hits(&ball, &square_box(), 42, 70_001, 200_000);
        assert_eq!(serial, split);
    }

    #[test]
    fn errors() {
        let ball = MembershipOracle::ball(2, 1.0);
        let flat = BoundingBox::new(vec![0.0, 0.0], vec![1.0, 0.0]).unwrap();
        assert!(volume_mc(&ball, &flat, 10, 1).is_err());
        assert!(volume_mc(&ball, &square_box(), 0, 1).is_err());
    }
}
