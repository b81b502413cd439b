//! The scalar chain behind the difference-body bound.
//!
//! With `alpha = mu(B) / mu(A)` and `omega = alpha^(-1/n)`,
//!
//! ```text
//! sigma = sum_{k=1}^{n} omega^k (n!)^2 / ((n-k)! (n+k)!)
//!       >= 1/2 sum_{k=1}^{Delta} omega^k exp(-2 k^2 / n)
//!       >> sum_{k=1}^{Delta} omega^k,            Delta = floor(sqrt n) + 1.
//! ```
//!
//! Everything irrational is evaluated with [`Interval`] enclosures, so each
//! inequality is decided rigorously rather than up to float noise.

use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::checks::{CheckReport, Condition, Quantity};
use crate::error::{Error, Result};
use crate::precise::{ln_q, nth_root_q, Interval};
use crate::scalar::{self, Q};

pub const DEFAULT_PRECISION: u32 = 128;
pub const MIN_PRECISION: u32 = 32;

/// Largest n for which sigma is also summed exactly when omega is rational.
pub const EXACT_SIGMA_MAX_N: u64 = 400;

const GUARD_BITS: u32 = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaParams {
    pub n: u64,
    pub alpha: Q,
}

impl SigmaParams {
    pub fn new(n: u64, alpha: Q) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if !alpha.is_positive() {
            return Err(Error::invalid(format!("alpha must be positive, got {alpha}")));
        }
        Ok(SigmaParams { n, alpha })
    }

    /// `floor(sqrt n) + 1`.
    pub fn delta(&self) -> u64 {
        self.n.sqrt() + 1
    }

    /// `alpha^(-1/n)` when it is rational.
    pub fn omega_exact(&self) -> Option<Q> {
        scalar::exact_nth_root(&self.alpha.recip(), self.n as u32)
    }

    pub fn omega(&self, bits: u32) -> Interval {
        nth_root_q(&self.alpha.recip(), self.n as u32, bits)
    }

    /// `omega >= 1`, decided exactly.
    pub fn omega_at_least_one(&self) -> bool {
        self.alpha <= Q::one()
    }
}

/// Working precision for a target precision, covering rounding drift over n terms.
fn working_bits(n: u64, bits: u32) -> u32 {
    bits + GUARD_BITS + (64 - n.leading_zeros())
}

fn check_precision(bits: u32) -> Result<()> {
    if bits < MIN_PRECISION {
        return Err(Error::PrecisionTooLow { bits });
    }
    Ok(())
}

/// Exact sigma when omega is rational and `n <= EXACT_SIGMA_MAX_N`.
pub fn sigma_exact(params: &SigmaParams) -> Option<Q> {
    if params.n > EXACT_SIGMA_MAX_N {
        return None;
    }
    let omega = params.omega_exact()?;
    let n = params.n as i64;
    let mut term = Q::one();
    let mut sum = Q::zero();
    for k in 1..=n {
        term = term * &omega * scalar::ratio(n - k + 1, n + k);
        sum += &term;
    }
    Some(sum)
}

/// Rigorous enclosure of sigma at `bits` fractional bits.
///
/// Terms follow `t_k = t_{k-1} omega (n-k+1) / (n+k)`. Once the ratio of
/// consecutive terms is at most 1/2 and a term drops below `2^-(bits+8)`, the
/// rest of the series is bounded by that term and added as `[0, t_k]`.
pub fn sigma_enclosure(params: &SigmaParams, bits: u32) -> Result<Interval> {
    check_precision(bits)?;
    let n = params.n;
    let w = working_bits(n, bits);
    let omega = params.omega(w);
    let omega_hi = omega.upper();
    let half = scalar::ratio(1, 2);
    let negligible = Q::new(One::one(), num_bigint::BigInt::one() << (bits + 8));
    let mut term = Interval::from_int(1, w);
    let mut sum = Interval::from_int(0, w);
    for k in 1..=n {
        term = term.mul(&omega).mul_q(&Q::new((n - k + 1).into(), (n + k).into()));
        sum = sum.add(&term);
        if k < n {
            let next_ratio = &omega_hi * Q::new((n - k).into(), (n + k + 1).into());
            if next_ratio <= half {
                let hi = term.upper();
                if hi <= negligible {
                    sum = sum.add(&Interval::from_bounds(&Q::zero(), &hi, w));
                    break;
                }
            }
        }
    }
    Ok(sum.with_bits(bits))
}

/// Sigma together with its exact value when available.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaValue {
    pub enclosure: Interval,
    pub exact: Option<Q>,
}

impl SigmaValue {
    pub fn quantity(&self) -> Quantity {
        match &self.exact {
            Some(v) => Quantity::exact(v.clone()),
            None => Quantity::enclosure(&self.enclosure),
        }
    }

    pub fn approx(&self) -> f64 {
        match &self.exact {
            Some(v) => scalar::to_f64(v),
            None => self.enclosure.mid_f64(),
        }
    }
}

/// Sigma with a rigorous error bound; exact when omega is rational and n is small.
pub fn sigma(params: &SigmaParams, bits: u32) -> Result<SigmaValue> {
    check_precision(bits)?;
    let exact = sigma_exact(params);
    let enclosure = match &exact {
        Some(v) => Interval::from_q(v, bits),
        None => sigma_enclosure(params, bits)?,
    };
    Ok(SigmaValue { enclosure, exact })
}

/// The three quantities of the chain for one `(n, alpha)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaChain {
    pub n: u64,
    pub alpha: Q,
    pub delta: u64,
    pub sigma: SigmaValue,
    /// `1/2 sum_{k=1}^{Delta} omega^k exp(-2 k^2 / n)`.
    pub middle: Interval,
    /// `sum_{k=1}^{Delta} omega^k`.
    pub geometric: Interval,
    pub omega_at_least_one: bool,
}

impl SigmaChain {
    /// `sigma >= middle`, decided rigorously.
    pub fn chain_holds(&self) -> bool {
        self.middle.certainly_le(&self.sigma.enclosure)
    }

    /// `sum omega^k >= Delta >= sqrt(n)` when `omega >= 1`; vacuous otherwise.
    pub fn geometric_bound_holds(&self) -> bool {
        if !self.omega_at_least_one {
            return true;
        }
        let delta = Q::from_integer(self.delta.into());
        self.geometric.certainly_ge_q(&delta) && self.delta * self.delta > self.n
    }

    /// `sigma / sum omega^k`, the empirical constant hidden by the last step.
    pub fn sigma_ratio(&self) -> f64 {
        self.sigma.approx() / self.geometric.mid_f64()
    }

    /// Best `c` with `middle >= c sum omega^k`.
    pub fn middle_ratio(&self) -> f64 {
        self.middle.mid_f64() / self.geometric.mid_f64()
    }
}

pub fn sigma_chain(params: &SigmaParams, bits: u32) -> Result<SigmaChain> {
    check_precision(bits)?;
    let n = params.n;
    let delta = params.delta();
    let w = working_bits(n.max(delta), bits);
    let omega = params.omega(w);
    let e = Interval::from_q(&scalar::ratio(-2, n as i64), w).exp();
    let e2 = e.mul(&e);
    // exp(-2 k^2 / n) = e^(k^2), advanced by e^(2k+1).
    let mut gauss = e.clone();
    let mut step = e2.mul(&e);
    let mut power = omega.clone();
    let mut middle = Interval::from_int(0, w);
    let mut geometric = Interval::from_int(0, w);
    for _ in 1..=delta {
        middle = middle.add(&power.mul(&gauss));
        geometric = geometric.add(&power);
        gauss = gauss.mul(&step);
        step = step.mul(&e2);
        power = power.mul(&omega);
    }
    Ok(SigmaChain {
        n,
        alpha: params.alpha.clone(),
        delta,
        sigma: sigma(params, bits)?,
        middle: middle.mul_q(&scalar::ratio(1, 2)).with_bits(bits),
        geometric: geometric.with_bits(bits),
        omega_at_least_one: params.omega_at_least_one(),
    })
}

/// Instance check of `sigma >= middle`, with the `omega >= 1` specialization
/// and the empirical constants of the last step.
pub fn sigma_lower_bound(params: &SigmaParams, bits: u32) -> Result<CheckReport> {
    let chain = sigma_chain(params, bits)?;
    let mut report = CheckReport::new(
        "sigma_lower_bound",
        Quantity::enclosure(&chain.middle),
        chain.sigma.quantity(),
        Q::zero(),
    )
    .with_input(format!("n = {}, alpha = {}", params.n, params.alpha))
    .with_param("n", params.n)
    .with_param("alpha", params.alpha.to_string())
    .with_param("Delta", chain.delta)
    .with_param("precisionBits", bits)
    .with_details(json!({
        "geometricSum": Quantity::enclosure(&chain.geometric),
        "sigmaOverGeometric": chain.sigma_ratio(),
        "middleOverGeometric": chain.middle_ratio(),
    }));
    if chain.omega_at_least_one {
        let delta = Q::from_integer(chain.delta.into());
        report = report
            .with_condition(Condition::le(
                "Delta <= sum_{k=1}^{Delta} omega^k",
                Quantity::exact(delta.clone()),
                Quantity::enclosure(&chain.geometric),
            ))
            .with_condition(Condition::le(
                "n < Delta^2",
                Quantity::exact(Q::from_integer(params.n.into())),
                Quantity::exact(&delta * &delta),
            ));
    }
    if params.n < 3 {
        report = report.with_note("n < 3: some factors 2j/(n+j) exceed 1/2, so sigma >= middle is checked directly");
    }
    Ok(report)
}

/// Sweep points: every n up to 1000, then every 100th up to `nmax`.
pub fn sweep_grid(nmax: u64) -> Vec<u64> {
    let mut ns: Vec<u64> = (1..=nmax.min(1000)).collect();
    let mut n = 1100;
    while n <= nmax {
        ns.push(n);
        n += 100;
    }
    ns
}

pub fn default_alphas() -> Vec<Q> {
    vec![scalar::ratio(1, 8), scalar::ratio(1, 2), scalar::q(1), scalar::q(2), scalar::q(8)]
}

/// Aggregate of a sweep over `(n, alpha)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub points: usize,
    pub chain_failures: Vec<(u64, Q)>,
    pub geometric_failures: Vec<(u64, Q)>,
    /// Extremes of `sigma / sum omega^k`.
    pub min_sigma_ratio: f64,
    pub max_sigma_ratio: f64,
    /// Extremes of `sigma(n, 1) / sqrt(n)`.
    pub sqrt_bracket: Option<(f64, f64)>,
}

impl SweepSummary {
    pub fn pass(&self) -> bool {
        self.chain_failures.is_empty() && self.geometric_failures.is_empty()
    }
}

/// Runs the chain for every `(n, alpha)` in order.
pub fn sigma_sweep(ns: &[u64], alphas: &[Q], bits: u32) -> Result<(Vec<SigmaChain>, SweepSummary)> {
    let mut rows = Vec::with_capacity(ns.len() * alphas.len());
    for &n in ns {
        for alpha in alphas {
            rows.push(sigma_chain(&SigmaParams::new(n, alpha.clone())?, bits)?);
        }
    }
    let mut summary = SweepSummary {
        points: rows.len(),
        chain_failures: Vec::new(),
        geometric_failures: Vec::new(),
        min_sigma_ratio: f64::INFINITY,
        max_sigma_ratio: f64::NEG_INFINITY,
        sqrt_bracket: None,
    };
    for row in &rows {
        if !row.chain_holds() {
            summary.chain_failures.push((row.n, row.alpha.clone()));
        }
        if !row.geometric_bound_holds() {
            summary.geometric_failures.push((row.n, row.alpha.clone()));
        }
        let r = row.sigma_ratio();
        summary.min_sigma_ratio = summary.min_sigma_ratio.min(r);
        summary.max_sigma_ratio = summary.max_sigma_ratio.max(r);
        if row.alpha.is_one() {
            let s = row.sigma.approx() / (row.n as f64).sqrt();
            summary.sqrt_bracket = Some(match summary.sqrt_bracket {
                None => (s, s),
                Some((lo, hi)) => (lo.min(s), hi.max(s)),
            });
        }
    }
    Ok((rows, summary))
}

/// `k C(n,k) B(k, n+1) = (n!)^2 / ((n-k)! (n+k)!)` with
/// `B(k, n+1) = (k-1)! n! / (n+k)!`, in exact rationals.
pub fn beta_identity_check(n: u64, k: u64) -> Result<CheckReport> {
    if k < 1 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let f = |m: u64| scalar::uint_to_q(&scalar::factorial(m));
    let beta = f(k - 1) * f(n) / f(n + k);
    let lhs = Q::from_integer(k.into()) * scalar::uint_to_q(&scalar::binomial(n, k)) * beta;
    let rhs = f(n) * f(n) / (f(n - k) * f(n + k));
    let equal = lhs == rhs;
    Ok(CheckReport::new("beta_identity", Quantity::exact(lhs), Quantity::exact(rhs), Q::zero())
        .with_param("n", n)
        .with_param("k", k)
        .with_condition(Condition::holds("exact equality", equal)))
}

/// `ln(1 - x) >= -2x` at `samples` equally spaced rationals of `[0, 1/2]`,
/// endpoints included, with rigorous enclosures of the logarithm.
pub fn log_inequality_check(samples: u64, bits: u32) -> Result<CheckReport> {
    if samples < 2 {
        return Err(Error::invalid("need at least 2 samples"));
    }
    check_precision(bits)?;
    let last = (samples - 1) as i64;
    let mut worst: Option<(Q, Interval)> = None;
    let mut failures = 0u64;
    for i in 0..=last {
        let x = scalar::ratio(i, 2 * last);
        // ln(1 - x) + 2x >= 0
        let gap = ln_q(&(Q::one() - &x), bits).add(&Interval::from_q(&(&x * scalar::q(2)), bits));
        if gap.lower().is_negative() {
            failures += 1;
        }
        if worst.as_ref().is_none_or(|(_, g)| gap.lower() < g.lower()) {
            worst = Some((x, gap));
        }
    }
    let (x, gap) = worst.expect("at least two samples");
    Ok(CheckReport::new("log_inequality", Quantity::int(0), Quantity::enclosure(&gap), Q::zero())
        .with_input("ln(1 - x) + 2x over [0, 1/2]")
        .with_param("samples", samples)
        .with_param("precisionBits", bits)
        .with_details(json!({ "worstX": x.to_string(), "failures": failures })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, ratio};

    fn p(n: u64, alpha: Q) -> SigmaParams {
        SigmaParams::new(n, alpha).unwrap()
    }

    #[test]
    fn small_exact_values() {
        assert_eq!(sigma_exact(&p(1, q(1))), Some(ratio(1, 2)));
        assert_eq!(sigma_exact(&p(2, q(1))), Some(ratio(5, 6)));
        assert_eq!(sigma(&p(2, q(1)), 64).unwrap().quantity(), Quantity::exact(ratio(5, 6)));
        assert!(sigma_exact(&p(2, q(2))).is_none());
        // alpha = 1/4 in the plane gives omega = 2.
        assert_eq!(sigma_exact(&p(2, ratio(1, 4))), Some(ratio(4, 3) + ratio(4, 6)));
    }

    #[test]
    fn recurrence_matches_factorial_formula() {
        for n in 1..=30u64 {
            let f = |m: u64| scalar::uint_to_q(&scalar::factorial(m));
            let direct: Q = (1..=n).map(|k| f(n) * f(n) / (f(n - k) * f(n + k))).sum();
            assert_eq!(sigma_exact(&p(n, q(1))).unwrap(), direct, "n={n}");
        }
    }

    #[test]
    fn enclosure_contains_exact_value() {
        for n in [1u64, 2, 5, 17, 30] {
            let exact = sigma_exact(&p(n, q(1))).unwrap();
            let e = sigma_enclosure(&p(n, q(1)), 128).unwrap();
            assert!(e.contains(&exact), "n={n}");
            assert!(scalar::to_f64(&(e.width() / &exact)) < 1e-30);
        }
        let (n, alpha) = (3, q(8));
        let exact = sigma_exact(&p(n, alpha.clone())).unwrap();
        assert!(sigma_enclosure(&p(n, alpha), 96).unwrap().contains(&exact));
    }

    #[test]
    fn sigma_decreases_in_alpha() {
        for n in [3u64, 10, 50] {
            let values: Vec<Interval> = [ratio(1, 8), ratio(1, 2), q(1), q(2), q(8)]
                .iter()
                .map(|a| sigma_enclosure(&p(n, a.clone()), 64).unwrap())
                .collect();
            for w in values.windows(2) {
                assert!(w[1].certainly_le(&w[0]));
            }
        }
    }

    #[test]
    fn precision_floor() {
        assert_eq!(sigma(&p(5, q(2)), 16), Err(Error::PrecisionTooLow { bits: 16 }));
        assert!(SigmaParams::new(0, q(1)).is_err());
        assert!(SigmaParams::new(3, q(0)).is_err());
    }

    #[test]
    fn chain_examples() {
        let r = sigma_lower_bound(&p(4, q(1)), 96).unwrap();
        assert!(r.pass);
        assert_eq!(r.parameters["Delta"], 3);
        let r = sigma_lower_bound(&p(1, q(1)), 96).unwrap();
        assert!(r.pass);
        assert_eq!(r.notes.len(), 1);
        let c = sigma_chain(&p(100, q(1)), 96).unwrap();
        assert_eq!(c.geometric, Interval::from_int(11, 96));
        let c_emp = c.sigma_ratio();
        assert!(c_emp > 0.0 && c.sigma.approx() + 1e-12 >= c_emp * 10.0);
        assert!(sigma_lower_bound(&p(50, q(8)), 96).unwrap().pass);
    }

    #[test]
    fn small_sweep_passes() {
        let ns: Vec<u64> = (1..=60).collect();
        let (rows, summary) = sigma_sweep(&ns, &default_alphas(), 64).unwrap();
        assert_eq!(rows.len(), 300);
        assert!(summary.pass(), "{summary:?}");
        assert!(summary.min_sigma_ratio > 0.0);
        let (lo, hi) = summary.sqrt_bracket.unwrap();
        assert!(0.0 < lo && lo <= hi);
    }

    #[test]
    fn beta_identity() {
        let r = beta_identity_check(2, 1).unwrap();
        assert_eq!(r.lhs, Quantity::exact(ratio(2, 3)));
        assert!(r.pass);
        for n in 1..=12 {
            for k in 1..=n {
                assert!(beta_identity_check(n, k).unwrap().pass);
            }
        }
        assert!(beta_identity_check(3, 0).is_err());
        assert!(beta_identity_check(3, 4).is_err());
    }

    #[test]
    fn log_inequality() {
        let r = log_inequality_check(2, 64).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["worstX"], "0");
        let r = log_inequality_check(1001, 64).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["failures"], 0);
        assert!(log_inequality_check(1, 64).is_err());
    }
}
