use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::checks::{describe_polytope, require_convex_primary, CheckReport, Condition, Quantity};
use crate::error::{Error, Result};
use crate::geometry::{facet_enum, slice_body};
use crate::measure::{volume_exact_q, volume_h};
use crate::scalar::{self, Q};
use crate::sets::{HPolytope, VPolytope, Vector};

/// Relative tolerance on the minimum slice ratio.
pub const LEMMA2_TOLERANCE: f64 = 1e-9;

/// Proposals per accepted sample before giving up.
const MAX_REJECTIONS_PER_SAMPLE: u64 = 10_000;

/// Uniform points of `A` by rejection from its bounding box. Coordinates are
/// dyadic rationals `lo + (k / 2^32)(hi - lo)`, so sampling is exact.
struct Sampler<'a> {
    h: &'a HPolytope,
    lo: Vector,
    width: Vec<Q>,
    rng: ChaCha8Rng,
    rejected: u64,
}

impl Sampler<'_> {
    fn next(&mut self) -> Result<Vector> {
        let denom: BigInt = BigInt::one() << 32;
        for _ in 0..MAX_REJECTIONS_PER_SAMPLE {
            let p = Vector(
                self.lo
                    .iter()
                    .zip(&self.width)
                    .map(|(l, w)| l + w * Q::new(BigInt::from(self.rng.next_u32()), denom.clone()))
                    .collect(),
            );
            if self.h.contains(&p) {
                return Ok(p);
            }
            self.rejected += 1;
        }
        Err(Error::Degenerate("rejection sampling found no point of A".into()))
    }
}

/// `mu(A_x) >= (1-r)^n mu(A)` at `x = r (a1 - a2)` for `trials` random pairs
/// `a1, a2` of `A`, with exact slice volumes. Also checks, at each vertex,
/// the homothetic copy `(1-r) A + r a1 ⊆ A ∩ (A + x)` behind the bound.
pub fn check_lemma2(a: &VPolytope, r: &Q, trials: u64, seed: u64) -> Result<CheckReport> {
    require_convex_primary(a, "A")?;
    if r.is_negative() || *r > Q::one() {
        return Err(Error::invalid(format!("r = {r} outside [0, 1]")));
    }
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    let n = a.dim() as u32;
    let h = facet_enum(a)?;
    let mu = volume_exact_q(a)?;
    let bound = scalar::pow(&(Q::one() - r), n) * &mu;
    let (lo, hi) = a.bounding_box();
    let width = lo.iter().zip(hi.iter()).map(|(l, u)| u - l).collect();
    let mut sampler = Sampler { h: &h, lo, width, rng: ChaCha8Rng::seed_from_u64(seed), rejected: 0 };

    let mut min_slice: Option<Q> = None;
    let mut homothety_ok = true;
    for _ in 0..trials {
        let a1 = sampler.next()?;
        let a2 = sampler.next()?;
        let x = (&a1 - &a2).scale(r);
        let slice = volume_h(&slice_body(&h, &x)?)?;
        if min_slice.as_ref().is_none_or(|m| slice < *m) {
            min_slice = Some(slice);
        }
        let one_minus_r = Q::one() - r;
        homothety_ok &= a.vertices().iter().all(|v| {
            let p = &v.scale(&one_minus_r) + &a1.scale(r);
            h.contains(&p) && h.contains(&(&p - &x))
        });
    }
    let min_slice = min_slice.expect("at least one trial");
    let tolerance = scalar::from_f64(LEMMA2_TOLERANCE)?;
    let (name_lhs, lhs, rhs) = if bound.is_zero() {
        ("bound", Quantity::exact(bound.clone()), Quantity::exact(min_slice.clone()))
    } else {
        ("normalized", Quantity::int(1), Quantity::exact(&min_slice / &bound))
    };
    let mut report = CheckReport::new("lemma2_slice_volume", lhs, rhs, tolerance)
        .with_condition(Condition::holds("(1-r) A + r a1 lies in A and A + x", homothety_ok))
        .with_input(describe_polytope("A", a))
        .with_param("r", r.to_string())
        .with_param("trials", trials)
        .with_param("seed", seed)
        .with_param("rejected", sampler.rejected)
        .with_param("tolRel", LEMMA2_TOLERANCE)
        .with_details(json!({
            "muA": mu.to_string(),
            "bound": bound.to_string(),
            "minSliceVolume": min_slice.to_string(),
            "comparison": name_lhs,
        }));
    if bound.is_zero() {
        report = report.with_note("r = 1: the bound is zero and holds trivially");
    }
    Ok(report)
}
