//! Rigorous extended-precision enclosures.
//!
//! An [`Interval`] is a closed interval `[lo, hi] / 2^bits` with big-integer
//! endpoints. Every operation rounds outward, so the true value of any
//! expression built from exact inputs is always contained in the result.
//! Used wherever an irrational quantity (n-th roots, `exp`, `ln`) must be
//! compared against an exact one without trusting double rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{self, Q};

const GUARD_BITS: u32 = 64;

fn floor_shr(x: &BigInt, k: u32) -> BigInt {
    if x.is_negative() {
        -ceil_shr(&-x, k)
    } else {
        x >> k
    }
}

fn ceil_shr(x: &BigInt, k: u32) -> BigInt {
    if x.is_negative() {
        -floor_shr(&-x, k)
    } else {
        let bump = (BigInt::one() << k) - 1;
        (x + bump) >> k
    }
}

fn floor_div(x: &BigInt, d: &BigInt) -> BigInt {
    x.div_floor(d)
}

fn ceil_div(x: &BigInt, d: &BigInt) -> BigInt {
    -((-x).div_floor(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl Interval {
    pub fn from_q(x: &Q, bits: u32) -> Self {
        let scaled = x * Q::from_integer(BigInt::one() << bits);
        Interval { lo: scalar::floor(&scaled), hi: scalar::ceil(&scaled), bits }
    }

    /// Smallest interval at `bits` containing `[lo, hi]`.
    pub fn from_bounds(lo: &Q, hi: &Q, bits: u32) -> Self {
        assert!(lo <= hi, "empty interval");
        let a = Interval::from_q(lo, bits);
        let b = Interval::from_q(hi, bits);
        Interval { lo: a.lo, hi: b.hi, bits }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        let v = BigInt::from(n) << bits;
        Interval { lo: v.clone(), hi: v, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lower(&self) -> Q {
        Q::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn upper(&self) -> Q {
        Q::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn mid_f64(&self) -> f64 {
        scalar::to_f64(&((self.lower() + self.upper()) / scalar::q(2)))
    }

    pub fn width(&self) -> Q {
        self.upper() - self.lower()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    /// Certainly `self <= other`.
    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.align(other);
        self.hi <= other.lo
    }

    pub fn certainly_le_q(&self, x: &Q) -> bool {
        self.upper() <= *x
    }

    pub fn certainly_ge_q(&self, x: &Q) -> bool {
        self.lower() >= *x
    }

    fn align(&self, other: &Interval) {
        assert_eq!(self.bits, other.bits, "interval precision mismatch");
    }

    /// Re-round to a coarser precision, outward.
    pub fn with_bits(&self, bits: u32) -> Interval {
        if bits >= self.bits {
            let k = bits - self.bits;
            return Interval { lo: &self.lo << k, hi: &self.hi << k, bits };
        }
        let k = self.bits - bits;
        Interval { lo: floor_shr(&self.lo, k), hi: ceil_shr(&self.hi, k), bits }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        self.align(other);
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, bits: self.bits }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        self.align(other);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        Interval { lo: floor_shr(min, self.bits), hi: ceil_shr(max, self.bits), bits: self.bits }
    }

    /// Multiply by an exact rational.
    pub fn mul_q(&self, x: &Q) -> Interval {
        let (n, d) = (x.numer(), x.denom());
        let a = floor_div(&(&self.lo * n), d);
        let b = ceil_div(&(&self.lo * n), d);
        let c = floor_div(&(&self.hi * n), d);
        let e = ceil_div(&(&self.hi * n), d);
        if x.is_negative() {
            Interval { lo: c, hi: b, bits: self.bits }
        } else {
            Interval { lo: a, hi: e, bits: self.bits }
        }
    }

    pub fn pow(&self, k: u32) -> Interval {
        let mut acc = Interval::from_int(1, self.bits);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn widen_ulps(&self, ulps: i64) -> Interval {
        Interval { lo: &self.lo - ulps, hi: &self.hi + ulps, bits: self.bits }
    }

    /// `exp` is increasing, so the image is spanned by the endpoint images.
    pub fn exp(&self) -> Interval {
        let lo = exp_point(&self.lo, self.bits);
        let hi = if self.is_point() { lo.clone() } else { exp_point(&self.hi, self.bits) };
        Interval { lo: lo.lo, hi: hi.hi, bits: self.bits }
    }

    /// `ln` of a positive interval.
    pub fn ln(&self) -> Interval {
        assert!(self.lo.is_positive(), "ln of a non-positive interval");
        let lo = ln_q(&self.lower(), self.bits);
        let hi = if self.is_point() { lo.clone() } else { ln_q(&self.upper(), self.bits) };
        Interval { lo: lo.lo, hi: hi.hi, bits: self.bits }
    }
}

/// Enclosure of `e^(m / 2^bits)`.
fn exp_point(m: &BigInt, bits: u32) -> Interval {
    if m.is_zero() {
        return Interval::from_int(1, bits);
    }
    // Halve the argument s times so that |y| <= 1/2, then square back.
    let s = (m.bits() as i64 - (bits as i64 - 1)).max(0) as u32;
    let work = bits + GUARD_BITS + s;
    let y = Interval { lo: m << GUARD_BITS, hi: m << GUARD_BITS, bits: work };
    let mut sum = Interval::from_int(1, work);
    let mut term = Interval::from_int(1, work);
    let mut k = 1i64;
    loop {
        term = term.mul(&y).mul_q(&scalar::ratio(1, k));
        sum = sum.add(&term);
        if term.lo.abs() <= BigInt::one() && term.hi.abs() <= BigInt::one() {
            break;
        }
        k += 1;
    }
    // Tail of the series after a term below one ulp, for |y| <= 1/2.
    let mut acc = sum.widen_ulps(2);
    for _ in 0..s {
        acc = acc.mul(&acc);
    }
    acc.with_bits(bits)
}

/// `atanh(z)` for `0 <= z <= 1/3`, enclosed at `bits`.
fn atanh_small(z: &Q, bits: u32) -> Interval {
    let zi = Interval::from_q(z, bits);
    let z2 = zi.mul(&zi);
    let mut power = zi.clone();
    let mut sum = zi.clone();
    let mut k = 1i64;
    while !(power.hi <= BigInt::one()) {
        power = power.mul(&z2);
        sum = sum.add(&power.mul_q(&scalar::ratio(1, 2 * k + 1)));
        k += 1;
    }
    // Remaining terms are bounded by power * z^2 / (1 - z^2) <= power / 8.
    Interval { lo: sum.lo, hi: sum.hi + 2, bits }
}

/// Enclosure of `ln(x)` for a positive rational `x`.
pub fn ln_q(x: &Q, bits: u32) -> Interval {
    assert!(x.is_positive(), "ln of a non-positive rational");
    if x.is_one() {
        return Interval::from_int(0, bits);
    }
    let work = bits + GUARD_BITS;
    let mut m = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = scalar::q(2);
    let scale = |m: i64| -> Q {
        if m >= 0 {
            Q::from_integer(BigInt::one() << m as u32)
        } else {
            Q::new(BigInt::one(), BigInt::one() << (-m) as u32)
        }
    };
    let mut y = x / scale(m);
    while y < Q::one() {
        m -= 1;
        y = x / scale(m);
    }
    while y >= two {
        m += 1;
        y = x / scale(m);
    }
    let z = (&y - Q::one()) / (&y + Q::one());
    let ln_y = atanh_small(&z, work).mul_q(&two);
    let ln2 = atanh_small(&scalar::ratio(1, 3), work).mul_q(&two);
    ln2.mul_q(&scalar::q(m)).add(&ln_y).with_bits(bits)
}

/// Enclosure of `x^(1/n)` for a non-negative rational; exact when rational.
pub fn nth_root_q(x: &Q, n: u32, bits: u32) -> Interval {
    if let Some(root) = scalar::exact_nth_root(x, n) {
        return Interval::from_q(&root, bits);
    }
    let work = bits + GUARD_BITS;
    ln_q(x, work).mul_q(&scalar::ratio(1, n as i64)).exp().with_bits(bits)
}

pub fn sqrt_q(x: &Q, bits: u32) -> Interval {
    nth_root_q(x, 2, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, ratio};

    #[test]
    fn shifts_round_in_the_right_direction() {
        let x = BigInt::from(-5);
        assert_eq!(floor_shr(&x, 1), BigInt::from(-3));
        assert_eq!(ceil_shr(&x, 1), BigInt::from(-2));
        assert_eq!(floor_shr(&BigInt::from(5), 1), BigInt::from(2));
        assert_eq!(ceil_shr(&BigInt::from(5), 1), BigInt::from(3));
    }

    #[test]
    fn exp_encloses_known_values() {
        let e = Interval::from_int(1, 128).exp();
        let e40 = parse("2.718281828459045235360287471352662497757");
        assert!(e.width() < ratio(1, 1 << 60));
        assert!((e.lower() - &e40).abs() < parse("1e-36") && (e.upper() - &e40).abs() < parse("1e-36"));
        assert!((e.mid_f64() - std::f64::consts::E).abs() < 1e-15);
        let small = Interval::from_q(&ratio(-8, 1), 128).exp();
        assert!((small.mid_f64() - (-8f64).exp()).abs() < 1e-18);
        assert!(small.width() < ratio(1, 1 << 40) * ratio(1, 1 << 40));
    }

    fn parse(s: &str) -> Q {
        crate::scalar::parse_rational(s).unwrap()
    }

    #[test]
    fn ln_and_exp_are_inverse() {
        for x in [ratio(1, 8), ratio(1, 2), q(3), q(1000), ratio(7, 5)] {
            let back = ln_q(&x, 160).exp();
            assert!(back.contains(&x), "{x}");
            assert!(back.width() < ratio(1, 1 << 50));
        }
        assert_eq!(ln_q(&q(1), 64), Interval::from_int(0, 64));
        let ln2 = ln_q(&q(2), 128);
        assert!((ln2.mid_f64() - std::f64::consts::LN_2).abs() < 1e-16);
    }

    #[test]
    fn roots() {
        let r = sqrt_q(&q(2), 128);
        let lo = r.lower();
        let hi = r.upper();
        assert!(&lo * &lo <= q(2) && &hi * &hi >= q(2));
        assert!(r.width() < parse("1e-30"));
        assert!(nth_root_q(&ratio(27, 8), 3, 64).is_point());
    }

    #[test]
    fn mul_q_handles_signs() {
        let x = Interval::from_q(&ratio(1, 3), 32);
        let y = x.mul_q(&q(-3));
        assert!(y.contains(&q(-1)));
        assert!(y.lower() <= y.upper());
    }
}
