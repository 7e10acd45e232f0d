//! Certified rational enclosures of real numbers.
//!
//! Bounds are exact rationals (dyadic in practice). Square roots use an
//! integer square root on a `2^-bits` grid, logarithms use the `atanh`
//! series in fixed point with an explicit bound on truncation error. All
//! rounding is outward.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numberfield::{QuadFieldElem, Rational};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, k: &Rational) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Fixed-notation decimal bounds with `digits` significant digits,
    /// rounded outward.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            decimal_string(&self.lo, digits, Rounding::Down),
            decimal_string(&self.hi, digits, Rounding::Up),
        )
    }
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// Enclosure of `sqrt(r)` for `r >= 0` with endpoints on the grid
/// `2^-bits`; width at most `2^-bits`, zero when the root is exact.
pub fn sqrt_enclosure(r: &Rational, bits: u32) -> Interval {
    assert!(!r.is_negative(), "square root of a negative number");
    let scale = pow2(bits);
    // floor(sqrt(floor(x))) == floor(sqrt(x)) for x >= 0
    let scaled = (r.numer() << (2 * bits as usize)).div_floor(r.denom());
    let root = scaled.sqrt();
    let lo = Rational::new(root.clone(), scale.clone());
    let exact = &root * &root * r.denom() == (r.numer() << (2 * bits as usize));
    let hi = if exact {
        lo.clone()
    } else {
        Rational::new(root + 1, scale)
    };
    Interval { lo, hi }
}

/// Fixed-point bracket of `atanh(num/den)` at scale `2^w`, requiring
/// `0 <= num/den <= 1/3`. Returns `(lo, hi)` numerators over `2^w`.
fn atanh_fixed(num: &BigInt, den: &BigInt, w: u32) -> (BigInt, BigInt) {
    debug_assert!(!num.is_negative() && den.is_positive());
    debug_assert!(num * 3 <= *den);
    let terms = (w / 3 + 2) as i64;
    let num2 = num * num;
    let den2 = den * den;
    let mut power = (num << w as usize).div_floor(den);
    let mut sum = BigInt::zero();
    for k in 0..terms {
        sum += power.div_floor(&BigInt::from(2 * k + 1));
        power = (power * &num2).div_floor(&den2);
    }
    // Each truncated term is low by at most 2 ulps; the series tail after
    // `terms` terms is below one ulp.
    let hi = &sum + BigInt::from(2 * terms + 2);
    (sum, hi)
}

/// Rigorous bracket of `ln(y)` for rational `y >= 1`, width `O(2^-w)`.
fn ln_bounds(y: &Rational, w: u32) -> (Rational, Rational) {
    assert!(y >= &Rational::one(), "ln_bounds requires y >= 1");
    if y.is_one() {
        return (Rational::zero(), Rational::zero());
    }
    // y = 2^k z with z in [1, 2)
    let k = y.floor().to_integer().bits() - 1;
    let z = y / Rational::from_integer(pow2(k as u32));
    let guard = 64 - (k.max(1)).leading_zeros() + 4;
    let wp = w + guard;
    let scale = Rational::from_integer(pow2(wp));

    let u = (&z - Rational::one()) / (&z + Rational::one());
    let (zl, zh) = atanh_fixed(u.numer(), u.denom(), wp);
    let (l2l, l2h) = atanh_fixed(&BigInt::one(), &BigInt::from(3), wp);
    let two = BigInt::from(2);
    let kb = BigInt::from(k);
    let lo = Rational::from_integer(two.clone() * (zl + &kb * l2l)) / &scale;
    let hi = Rational::from_integer(two * (zh + kb * l2h)) / scale;
    (lo, hi)
}

/// Enclosure of `ln` over an interval contained in `[1, inf)`.
pub fn ln_enclosure(y: &Interval, bits: u32) -> Interval {
    let (lo, _) = ln_bounds(&y.lo, bits + 8);
    let (_, hi) = ln_bounds(&y.hi, bits + 8);
    Interval::new(lo, hi)
}

/// Enclosure of `arccosh(sqrt(c))` for `c >= 1` at the identity embedding,
/// width at most `2^-bits` for moderate `c`.
///
/// Uses `arccosh(sqrt c) = ln(sqrt(c) + sqrt(c - 1))`. `c - 1` is formed
/// exactly before enclosing so a small argument loses nothing to
/// cancellation.
pub fn arccosh_sqrt_enclosure(c: &QuadFieldElem, bits: u32) -> Interval {
    let working = 2 * bits + 32;
    let grid = bits + 16;
    let one = Rational::one();
    let zero = Rational::zero();

    let c_iv = c.enclosure(working);
    let c_minus_one = (c - &c.field().one()).enclosure(working);

    let c_lo = core::cmp::max(c_iv.lo.clone(), one.clone());
    let c_hi = core::cmp::max(c_iv.hi.clone(), one.clone());
    let m_lo = core::cmp::max(c_minus_one.lo.clone(), zero.clone());
    let m_hi = core::cmp::max(c_minus_one.hi.clone(), zero);

    let s = Interval::new(
        sqrt_enclosure(&c_lo, grid).lo,
        sqrt_enclosure(&c_hi, grid).hi,
    );
    let t = Interval::new(
        sqrt_enclosure(&m_lo, grid).lo,
        sqrt_enclosure(&m_hi, grid).hi,
    );
    let y = s.add(&t);
    let y = Interval::new(core::cmp::max(y.lo, one.clone()), core::cmp::max(y.hi, one));
    ln_enclosure(&y, grid)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// `floor(log10(|r|))` for `r != 0`.
fn decimal_exponent(r: &Rational) -> i64 {
    let a = r.abs();
    let mut e = a.numer().to_string_len() as i64 - a.denom().to_string_len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let power = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(pow10(e as u32))
        } else {
            Rational::new(BigInt::one(), pow10((-e) as u32))
        }
    };
    let mut p = power(e);
    while p > a {
        e -= 1;
        p = &p / &ten;
    }
    while &p * &ten <= a {
        e += 1;
        p = &p * &ten;
    }
    e
}

trait DigitLen {
    fn to_string_len(&self) -> usize;
}

impl DigitLen for BigInt {
    fn to_string_len(&self) -> usize {
        self.magnitude().to_str_radix(10).len()
    }
}

/// Fixed-notation decimal string with `digits` significant digits, rounded
/// in direction `mode`. Trailing fractional zeros are stripped.
pub fn decimal_string(r: &Rational, digits: usize, mode: Rounding) -> String {
    if r.is_zero() {
        return String::from("0");
    }
    let digits = digits.max(1) as i64;
    let e = decimal_exponent(r);
    // r * 10^shift has `digits` digits before the point.
    let shift = digits - 1 - e;
    let scaled = if shift >= 0 {
        r * Rational::from_integer(pow10(shift as u32))
    } else {
        r / Rational::from_integer(pow10((-shift) as u32))
    };
    let n = match mode {
        Rounding::Down => scaled.floor().to_integer(),
        Rounding::Up => scaled.ceil().to_integer(),
    };
    let negative = n.is_negative();
    let mut body: Vec<u8> = n.magnitude().to_str_radix(10).into_bytes();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if shift <= 0 {
        out.push_str(core::str::from_utf8(&body).unwrap());
        for _ in 0..(-shift) {
            out.push('0');
        }
        return out;
    }
    let shift = shift as usize;
    if body.len() <= shift {
        let mut padded = Vec::with_capacity(shift + 1);
        padded.resize(shift + 1 - body.len(), b'0');
        padded.extend_from_slice(&body);
        body = padded;
    }
    let (int_part, frac_part) = body.split_at(body.len() - shift);
    out.push_str(core::str::from_utf8(int_part).unwrap());
    let frac = core::str::from_utf8(frac_part)
        .unwrap()
        .trim_end_matches('0');
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    out
}
