//! The simplex `{x >= 0, sum x_j <= L}` as the near-extremal example:
//! `mu(A+A) = 2^n mu(A)`, `mu(A-A) = C(2n,n) mu(A)`, and the lattice count of
//! its difference set.

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{minkowski_sum, DifferenceBody};
use crate::measure::volume_exact_q;
use crate::precise::{sqrt_q, Interval};
use crate::scalar::{self, serde_q, Q};
use crate::sets::make_simplex;
use crate::FACET_DIM_CAP;

/// Bits used for `sqrt(n)` in tightness values.
const TIGHTNESS_BITS: u32 = 128;

/// Cap on lattice points enumerated by [`lattice_diff_count`].
pub const LATTICE_POINT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SimplexReport {
    pub n: usize,
    #[serde(rename = "L", with = "serde_q")]
    pub l: Q,
    #[serde(with = "serde_q")]
    pub vol_a: Q,
    #[serde(with = "serde_q")]
    pub vol_sum: Q,
    #[serde(with = "serde_q")]
    pub vol_diff: Q,
    #[serde(with = "serde_q")]
    pub sum_ratio: Q,
    #[serde(with = "serde_q")]
    pub diff_ratio: Q,
    /// `diffRatio sqrt(n) / 4^n`.
    pub tightness: f64,
    /// False when the volumes come from closed forms rather than the kernel.
    pub kernel_verified: bool,
}

impl SimplexReport {
    /// `sumRatio = 2^n` and `diffRatio = C(2n,n)` exactly.
    pub fn identities_hold(&self) -> bool {
        let n = self.n as u64;
        self.sum_ratio == scalar::pow(&scalar::q(2), n as u32)
            && self.diff_ratio == scalar::uint_to_q(&scalar::binomial(2 * n, n))
    }
}

/// Volumes of `A`, `A+A` and `A-A` for the simplex of side `l`, through
/// `minkowski_sum` and the exact volume kernel up to the facet cap and from
/// closed forms beyond it.
pub fn simplex_report(n: usize, l: &Q) -> Result<SimplexReport> {
    let a = make_simplex(n, l)?;
    let (vol_a, vol_sum, vol_diff, kernel_verified) = if n <= FACET_DIM_CAP {
        let vol_a = volume_exact_q(&a)?;
        let vol_sum = volume_exact_q(&minkowski_sum(&a, &a)?)?;
        let vol_diff = volume_exact_q(&a.difference_body()?)?;
        (vol_a, vol_sum, vol_diff, true)
    } else {
        let vol_a = scalar::pow(l, n as u32) / scalar::uint_to_q(&scalar::factorial(n as u64));
        let vol_sum = &vol_a * scalar::pow(&scalar::q(2), n as u32);
        let vol_diff = &vol_a * scalar::uint_to_q(&scalar::binomial(2 * n as u64, n as u64));
        (vol_a, vol_sum, vol_diff, false)
    };
    let sum_ratio = &vol_sum / &vol_a;
    let diff_ratio = &vol_diff / &vol_a;
    let tightness = tightness_of(n as u64, &diff_ratio).mid_f64();
    Ok(SimplexReport { n, l: l.clone(), vol_a, vol_sum, vol_diff, sum_ratio, diff_ratio, tightness, kernel_verified })
}

fn tightness_of(n: u64, diff_ratio: &Q) -> Interval {
    let four_n = Q::from_integer(BigInt::one() << (2 * n));
    sqrt_q(&Q::from_integer(n.into()), TIGHTNESS_BITS).mul_q(&(diff_ratio / four_n))
}

/// `sum_{a+b+c=n} n!/(a! b! c!) C(L,a) C(L,b)`.
pub fn trinomial_sum(n: u64, l: u64) -> BigUint {
    let fact: Vec<BigUint> = (0..=n).map(scalar::factorial).collect();
    let mut total = BigUint::zero();
    for a in 0..=n.min(l) {
        let ca = scalar::binomial(l, a);
        for b in 0..=(n - a).min(l) {
            let c = n - a - b;
            let multinomial = &fact[n as usize] / (&fact[a as usize] * &fact[b as usize] * &fact[c as usize]);
            total += multinomial * &ca * scalar::binomial(l, b);
        }
    }
    total
}

/// Lattice points of `{x >= 0, sum x_j <= l}` in `Z^n`, lexicographic.
fn simplex_points(n: usize, l: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(n: usize, budget: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..=budget {
            current.push(v);
            rec(n, budget - v, current, out);
            current.pop();
        }
    }
    rec(n, l, &mut current, &mut out);
    out
}

/// Number of distinct differences `x - y` of lattice points of the simplex
/// of side `l`, by brute force over all pairs. Sharded by the first
/// coordinate of `x`; shards are merged with a bitwise OR.
pub fn lattice_diff_count(n: usize, l: u64) -> Result<u64> {
    if n == 0 || n > 3 {
        return Err(Error::invalid(format!("brute-force difference count needs 1 <= n <= 3, got {n}")));
    }
    let points = scalar::binomial(l + n as u64, n as u64);
    if points > BigUint::from(LATTICE_POINT_CAP) {
        return Err(Error::TooLarge(format!("{points} lattice points")));
    }
    let l = l as i64;
    let side = (2 * l + 1) as usize;
    let cells = side.pow(n as u32);
    let pts = simplex_points(n, l);
    let index = |x: &[i64], y: &[i64]| -> usize {
        x.iter().zip(y).fold(0usize, |acc, (a, b)| acc * side + (a - b + l) as usize)
    };
    let seen = (0..=l)
        .into_par_iter()
        .map(|first| {
            let mut bits = FixedBitSet::with_capacity(cells);
            for x in pts.iter().filter(|p| p[0] == first) {
                for y in &pts {
                    bits.insert(index(x, y));
                }
            }
            bits
        })
        .reduce(
            || FixedBitSet::with_capacity(cells),
            |mut a, b| {
                a.union_with(&b);
                a
            },
        );
    Ok(seen.count_ones(..) as u64)
}

/// `trinomial_sum(n, L) / (L^n C(2n,n) / n!)`, which tends to 1 as `L` grows.
pub fn normalized_count_ratio(n: u64, l: u64) -> f64 {
    let count = scalar::uint_to_q(&trinomial_sum(n, l));
    let scale = scalar::pow(&Q::from_integer(l.into()), n as u32) * scalar::uint_to_q(&scalar::binomial(2 * n, n))
        / scalar::uint_to_q(&scalar::factorial(n));
    scalar::to_f64(&(count / scale))
}

/// `sum_m C(n,m)^2 = C(2n,n)` for every `n <= nmax`.
pub fn vandermonde_check(nmax: u64) -> bool {
    (0..=nmax).all(|n| {
        let lhs: BigUint = (0..=n).map(|m| {
            let c = scalar::binomial(n, m);
            &c * &c
        }).sum();
        lhs == scalar::binomial(2 * n, n)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessRow {
    pub n: u64,
    #[serde(with = "serde_q")]
    pub lo: Q,
    #[serde(with = "serde_q")]
    pub hi: Q,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessTable {
    pub rows: Vec<TightnessRow>,
    pub min: f64,
    pub max: f64,
    /// `1 / sqrt(pi)`, the limit of the sequence.
    pub limit: f64,
    /// Distance of the last row from the limit.
    pub last_gap: f64,
}

/// `t(n) = C(2n,n) sqrt(n) / 4^n` for `n = 1..=nmax`, as rigorous enclosures.
pub fn tightness_sweep(nmax: u64) -> Result<TightnessTable> {
    if nmax == 0 {
        return Err(Error::invalid("nmax must be at least 1"));
    }
    let rows: Vec<TightnessRow> = (1..=nmax)
        .map(|n| {
            let t = tightness_of(n, &scalar::uint_to_q(&scalar::binomial(2 * n, n)));
            TightnessRow { n, lo: t.lower(), hi: t.upper(), value: t.mid_f64() }
        })
        .collect();
    let min = rows.iter().map(|r| r.value).fold(f64::INFINITY, f64::min);
    let max = rows.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let limit = 1.0 / std::f64::consts::PI.sqrt();
    let last_gap = (rows.last().expect("nmax >= 1").value - limit).abs();
    Ok(TightnessTable { rows, min, max, limit, last_gap })
}

/// Checked conversion used by the CLI for `--L` values.
pub fn integer_side(l: &Q) -> Option<u64> {
    (l.is_integer() && !l.is_negative()).then(|| l.to_integer().to_u64()).flatten()
}
