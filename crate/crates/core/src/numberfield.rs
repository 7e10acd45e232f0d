//! Exact arithmetic in `Q` and in real quadratic fields `Q(sqrt d)`.
//!
//! Elements are stored as `a + b*sqrt(d)` with reduced rational
//! coordinates, so equality is structural. Signs at the two real
//! embeddings are decided exactly, never through floating point.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{sqrt_enclosure, Interval};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// The ambient field: `Q` when `d` is absent, otherwise `Q(sqrt d)` with
/// `d >= 2` square-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldDescriptor {
    d: Option<u32>,
}

fn is_square_free(d: u32) -> bool {
    let mut n = d;
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl FieldDescriptor {
    pub const RATIONALS: FieldDescriptor = FieldDescriptor { d: None };

    /// `Q(sqrt d)`; rejects `d < 2` and non-square-free `d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d < 2 || d > u32::MAX as i64 || !is_square_free(d as u32) {
            return Err(Error::InvalidField { d });
        }
        Ok(FieldDescriptor { d: Some(d as u32) })
    }

    pub fn from_option(d: Option<i64>) -> Result<Self> {
        match d {
            None => Ok(Self::RATIONALS),
            Some(d) => Self::quadratic(d),
        }
    }

    pub fn d(self) -> Option<u32> {
        self.d
    }

    pub fn is_quadratic(self) -> bool {
        self.d.is_some()
    }

    pub fn degree(self) -> u32 {
        if self.is_quadratic() {
            2
        } else {
            1
        }
    }

    /// Real embeddings of the field, identity first.
    pub fn embeddings(self) -> &'static [Embedding] {
        if self.is_quadratic() {
            &[Embedding::Identity, Embedding::Conjugate]
        } else {
            &[Embedding::Identity]
        }
    }

    pub fn zero(self) -> QuadFieldElem {
        QuadFieldElem::from_rational(self, Rational::zero())
    }

    pub fn one(self) -> QuadFieldElem {
        QuadFieldElem::from_rational(self, Rational::one())
    }

    pub fn from_int(self, n: i64) -> QuadFieldElem {
        QuadFieldElem::from_rational(self, Rational::from_integer(BigInt::from(n)))
    }

    /// `sqrt(d)`, absent over `Q`.
    pub fn sqrt_d(self) -> Option<QuadFieldElem> {
        self.d.map(|_| QuadFieldElem {
            a: Rational::zero(),
            b: Rational::one(),
            field: self,
        })
    }

    fn d_rational(self) -> Rational {
        Rational::from_integer(BigInt::from(self.d.unwrap_or(0)))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            None => f.write_str("Q"),
            Some(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// One of the real embeddings of `Q(sqrt d)`. The identity embedding sends
/// `sqrt d` to the positive root. Over `Q` both act trivially.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Embedding {
    Identity,
    Conjugate,
}

impl Embedding {
    pub fn as_str(self) -> &'static str {
        match self {
            Embedding::Identity => "IDENTITY",
            Embedding::Conjugate => "CONJUGATE",
        }
    }
}

impl FromStr for Embedding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "IDENTITY" => Ok(Embedding::Identity),
            "CONJUGATE" => Ok(Embedding::Conjugate),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected IDENTITY or CONJUGATE",
            }),
        }
    }
}

/// The element `a + b*sqrt(d)` of a field described by [`FieldDescriptor`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElem {
    a: Rational,
    b: Rational,
    field: FieldDescriptor,
}

impl QuadFieldElem {
    /// Fails if `b != 0` over `Q`.
    pub fn new(field: FieldDescriptor, a: Rational, b: Rational) -> Result<Self> {
        if !field.is_quadratic() && !b.is_zero() {
            return Err(Error::FieldMismatch {
                left: field,
                right: FieldDescriptor { d: None },
            });
        }
        Ok(QuadFieldElem { a, b, field })
    }

    pub fn from_rational(field: FieldDescriptor, a: Rational) -> Self {
        QuadFieldElem {
            a,
            b: Rational::zero(),
            field,
        }
    }

    /// Convenience constructor from small integer fractions `an/ad + bn/bd sqrt(d)`.
    pub fn from_fractions(field: FieldDescriptor, a: (i64, i64), b: (i64, i64)) -> Result<Self> {
        if a.1 == 0 || b.1 == 0 {
            return Err(Error::DivisionByZero);
        }
        Self::new(
            field,
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
        )
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Re-homes the element in `target`. Succeeds when the fields agree or
    /// the element is rational.
    pub fn lift_to(&self, target: FieldDescriptor) -> Option<Self> {
        if self.field == target {
            Some(self.clone())
        } else if self.is_rational() {
            Some(QuadFieldElem::from_rational(target, self.a.clone()))
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(QuadFieldElem {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            field: self.field,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(QuadFieldElem {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            field: self.field,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let d = self.field.d_rational();
        let a = &self.a * &other.a + d * (&self.b * &other.b);
        let b = &self.a * &other.b + &other.a * &self.b;
        Ok(QuadFieldElem {
            a,
            b,
            field: self.field,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse via the conjugate over the norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadFieldElem {
            a: &self.a / &n,
            b: -(&self.b / &n),
            field: self.field,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadFieldElem {
            a: &self.a * r,
            b: &self.b * r,
            field: self.field,
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadFieldElem {
            a: self.a.clone(),
            b: -self.b.clone(),
            field: self.field,
        }
    }

    /// Image under `e`, expressed again as an element of the same field.
    pub fn at(&self, e: Embedding) -> Self {
        match e {
            Embedding::Identity => self.clone(),
            Embedding::Conjugate => self.conjugate(),
        }
    }

    /// Field norm `a^2 - d b^2 = x * conj(x)`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - self.field.d_rational() * (&self.b * &self.b)
    }

    /// Field trace `2a = x + conj(x)`.
    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    /// Exact sign of the real number `a +/- b sqrt(d)` under `e`.
    pub fn sign_at(&self, e: Embedding) -> Ordering {
        let b = match e {
            Embedding::Identity => self.b.clone(),
            Embedding::Conjugate => -self.b.clone(),
        };
        let sa = self.a.cmp(&Rational::zero());
        let sb = b.cmp(&Rational::zero());
        if sb == Ordering::Equal || sa == sb {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // Opposite signs: the dominant term wins. a^2 = d b^2 is impossible
        // for square-free d >= 2 unless both vanish.
        let a2 = &self.a * &self.a;
        let db2 = self.field.d_rational() * (&b * &b);
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            _ => sb,
        }
    }

    pub fn is_positive_at(&self, e: Embedding) -> bool {
        self.sign_at(e) == Ordering::Greater
    }

    pub fn is_negative_at(&self, e: Embedding) -> bool {
        self.sign_at(e) == Ordering::Less
    }

    /// A square root in the field, normalized to be non-negative at the
    /// identity embedding, or `None` if `self` is not a square.
    pub fn is_square(&self) -> Option<Self> {
        let root = match self.field.d {
            None => rational_sqrt(&self.a).map(|p| QuadFieldElem::from_rational(self.field, p)),
            Some(_) if self.b.is_zero() => {
                if let Some(p) = rational_sqrt(&self.a) {
                    Some(QuadFieldElem::from_rational(self.field, p))
                } else {
                    // a = d q^2
                    rational_sqrt(&(&self.a / self.field.d_rational())).map(|q| QuadFieldElem {
                        a: Rational::zero(),
                        b: q,
                        field: self.field,
                    })
                }
            }
            Some(_) => {
                // With y = p + q sqrt(d): p^2 + d q^2 = a and 2pq = b, so p^2 is
                // a root of t^2 - a t + d b^2 / 4, whose discriminant is the norm.
                let s = rational_sqrt(&self.norm())?;
                let two = Rational::from_integer(BigInt::from(2));
                [(&self.a + &s) / &two, (&self.a - &s) / &two]
                    .iter()
                    .filter_map(rational_sqrt)
                    .filter(|p| !p.is_zero())
                    .map(|p| {
                        let q = &self.b / (&two * &p);
                        QuadFieldElem {
                            a: p,
                            b: q,
                            field: self.field,
                        }
                    })
                    .find(|y| &y.square() == self)
            }
        }?;
        Some(if root.is_negative_at(Embedding::Identity) {
            -root
        } else {
            root
        })
    }

    /// Certified enclosure of the real value at the identity embedding, with
    /// width at most `2^-precision_bits`.
    pub fn enclosure(&self, precision_bits: u32) -> Interval {
        let d = match self.field.d {
            Some(d) if !self.b.is_zero() => d,
            _ => return Interval::point(self.a.clone()),
        };
        let b_abs = self.b.abs();
        let b_bits = b_abs.ceil().to_integer().bits() as u32;
        let root = sqrt_enclosure(
            &Rational::from_integer(BigInt::from(d)),
            precision_bits + b_bits + 1,
        );
        let lo = &self.a + &self.b * root.lo();
        let hi = &self.a + &self.b * root.hi();
        if self.b.is_positive() {
            Interval::new(lo, hi)
        } else {
            Interval::new(hi, lo)
        }
    }

    /// Enclosure of the image under `e`.
    pub fn enclosure_at(&self, e: Embedding, precision_bits: u32) -> Interval {
        self.at(e).enclosure(precision_bits)
    }

    /// Parses the textual element syntax (`"p/q"`, `"p/q+r/s*sqrt(d)"`) in a
    /// known ambient field. A rational literal is accepted in any field.
    pub fn parse_in(field: FieldDescriptor, s: &str) -> Result<Self> {
        let loose = LooseElem::parse(s)?;
        loose.into_field(field)
    }
}

/// Square root of a non-negative rational, if it is rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl Neg for QuadFieldElem {
    type Output = QuadFieldElem;

    fn neg(self) -> QuadFieldElem {
        QuadFieldElem {
            a: -self.a,
            b: -self.b,
            field: self.field,
        }
    }
}

impl Neg for &QuadFieldElem {
    type Output = QuadFieldElem;

    fn neg(self) -> QuadFieldElem {
        -self.clone()
    }
}

// Operator forms panic on a field mismatch; the checked_* methods report it.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadFieldElem> for &QuadFieldElem {
            type Output = QuadFieldElem;

            fn $method(self, rhs: &QuadFieldElem) -> QuadFieldElem {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }

        impl $tr<QuadFieldElem> for QuadFieldElem {
            type Output = QuadFieldElem;

            fn $method(self, rhs: QuadFieldElem) -> QuadFieldElem {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&QuadFieldElem> for QuadFieldElem {
            type Output = QuadFieldElem;

            fn $method(self, rhs: &QuadFieldElem) -> QuadFieldElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl fmt::Display for QuadFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.field.d {
            Some(d) if !self.b.is_zero() => d,
            _ => return write!(f, "{}", self.a),
        };
        let b_abs = self.b.abs();
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            f.write_str(if self.b.is_negative() { "-" } else { "+" })?;
        } else if self.b.is_negative() {
            f.write_str("-")?;
        }
        if !b_abs.is_one() {
            write!(f, "{b_abs}*")?;
        }
        write!(f, "sqrt({d})")
    }
}

/// Parsed element whose field is not yet fixed: `a + b*sqrt(d)` where `d`
/// is whatever radicand the text used (absent if none).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LooseElem {
    pub a: Rational,
    pub b: Rational,
    pub d: Option<u32>,
}

fn parse_err(input: &str, reason: &'static str) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason,
    }
}

fn parse_rational(term: &str, full: &str) -> Result<Rational> {
    let (n, d) = match term.split_once('/') {
        Some((n, d)) => (n, d),
        None => (term, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return Err(parse_err(full, "malformed rational literal"));
    }
    let n: BigInt = n
        .parse()
        .map_err(|_| parse_err(full, "malformed integer"))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| parse_err(full, "malformed integer"))?;
    if d.is_zero() {
        return Err(parse_err(full, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn parse_sqrt(term: &str, full: &str) -> Result<Option<u32>> {
    let Some(inner) = term.strip_prefix("sqrt(").and_then(|t| t.strip_suffix(')')) else {
        return Ok(None);
    };
    let d: i64 = inner
        .parse()
        .map_err(|_| parse_err(full, "radicand must be an integer"))?;
    let field = FieldDescriptor::quadratic(d)?;
    Ok(field.d)
}

impl LooseElem {
    pub fn parse(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(parse_err(s, "empty element"));
        }
        // Split into signed terms at top-level '+'/'-'.
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let bytes = text.as_bytes();
        let mut start = 0;
        let mut negative = false;
        let mut depth = 0i32;
        for (i, &c) in bytes.iter().enumerate() {
            match c {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 => {
                    if i == start {
                        if i > 0 {
                            return Err(parse_err(s, "doubled sign"));
                        }
                        negative = c == b'-';
                        start = 1;
                        continue;
                    }
                    terms.push((negative, &text[start..i]));
                    negative = c == b'-';
                    start = i + 1;
                }
                _ => {}
            }
            if depth < 0 {
                return Err(parse_err(s, "unbalanced parentheses"));
            }
        }
        if depth != 0 {
            return Err(parse_err(s, "unbalanced parentheses"));
        }
        terms.push((negative, &text[start..]));

        let mut out = LooseElem {
            a: Rational::zero(),
            b: Rational::zero(),
            d: None,
        };
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(parse_err(s, "empty term"));
            }
            let factors: Vec<&str> = term.split('*').collect();
            if factors.len() > 2 {
                return Err(parse_err(s, "too many factors in a term"));
            }
            let mut coeff = Rational::one();
            let mut radicand = None;
            for factor in factors {
                match parse_sqrt(factor, s)? {
                    Some(d) => {
                        if radicand.is_some() {
                            return Err(parse_err(s, "product of two square roots"));
                        }
                        radicand = Some(d);
                    }
                    None => coeff *= parse_rational(factor, s)?,
                }
            }
            if neg {
                coeff = -coeff;
            }
            match radicand {
                None => out.a += coeff,
                Some(d) => {
                    if out.d.is_some_and(|prev| prev != d) {
                        return Err(parse_err(s, "mixed radicands"));
                    }
                    out.d = Some(d);
                    out.b += coeff;
                }
            }
        }
        Ok(out)
    }

    /// Places the element in `field`; a radicand must match `field`'s `d`.
    pub fn into_field(self, field: FieldDescriptor) -> Result<QuadFieldElem> {
        match self.d {
            Some(d) if field.d != Some(d) => Err(Error::FieldMismatch {
                left: field,
                right: FieldDescriptor { d: Some(d) },
            }),
            _ => Ok(QuadFieldElem {
                a: self.a,
                b: if field.is_quadratic() {
                    self.b
                } else {
                    Rational::zero()
                },
                field,
            }),
        }
    }
}

impl FromStr for QuadFieldElem {
    type Err = Error;

    /// Infers the field from the radicand; plain rationals land in `Q`.
    fn from_str(s: &str) -> Result<Self> {
        let loose = LooseElem::parse(s)?;
        let field = FieldDescriptor { d: loose.d };
        loose.into_field(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q2() -> FieldDescriptor {
        FieldDescriptor::quadratic(2).unwrap()
    }

    fn el(s: &str) -> QuadFieldElem {
        s.parse().unwrap()
    }

    fn el2(s: &str) -> QuadFieldElem {
        QuadFieldElem::parse_in(q2(), s).unwrap()
    }

    #[test]
    fn field_descriptor_validation() {
        assert!(FieldDescriptor::quadratic(2).is_ok());
        assert!(FieldDescriptor::quadratic(5).is_ok());
        assert!(FieldDescriptor::quadratic(30).is_ok());
        assert_eq!(
            FieldDescriptor::quadratic(8),
            Err(Error::InvalidField { d: 8 })
        );
        assert!(FieldDescriptor::quadratic(1).is_err());
        assert!(FieldDescriptor::quadratic(0).is_err());
        assert!(FieldDescriptor::quadratic(-3).is_err());
        assert!(FieldDescriptor::quadratic(49).is_err());
    }

    #[test]
    fn addition_examples() {
        assert_eq!(el("1+sqrt(2)") + el("1-sqrt(2)"), el2("2"));
        assert_eq!(el("1/2") + el("1/2"), el("1"));
        assert_eq!(el2("sqrt(2)") * el2("0"), el2("0"));
        assert_eq!(el("sqrt(3)") + el("sqrt(3)") - el("sqrt(3)"), el("sqrt(3)"));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(el("1+sqrt(2)") * el("1-sqrt(2)"), el2("-1"));
        assert_eq!(el("1+sqrt(2)") * el("1+sqrt(2)"), el("3+2*sqrt(2)"));
        assert_eq!(el2("5") * el2("0"), el2("0"));
    }

    #[test]
    fn mismatched_fields_are_reported() {
        let x = el("sqrt(2)");
        let y = el("sqrt(3)");
        assert!(matches!(
            x.checked_add(&y),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(matches!(
            x.checked_mul(&y),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(
            QuadFieldElem::new(FieldDescriptor::RATIONALS, Rational::one(), Rational::one())
                .is_err()
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(el("1+sqrt(2)").inv().unwrap(), el("-1+sqrt(2)"));
        assert_eq!(el2("2").inv().unwrap(), el2("1/2"));
        assert_eq!(el("sqrt(2)").inv().unwrap(), el("1/2*sqrt(2)"));
        assert_eq!(el2("0").inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(el("3+2*sqrt(2)").conjugate(), el("3-2*sqrt(2)"));
        assert_eq!(el2("5").conjugate(), el2("5"));
        let x = el("7/3-5*sqrt(2)");
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn sign_examples() {
        let x = el("1-sqrt(2)");
        assert_eq!(x.sign_at(Embedding::Identity), Ordering::Less);
        assert_eq!(x.sign_at(Embedding::Conjugate), Ordering::Greater);
        assert_eq!(
            el("3-2*sqrt(2)").sign_at(Embedding::Identity),
            Ordering::Greater
        );
        assert_eq!(el2("0").sign_at(Embedding::Conjugate), Ordering::Equal);
        assert_eq!(
            el("-sqrt(5)").sign_at(Embedding::Conjugate),
            Ordering::Greater
        );
    }

    #[test]
    fn square_examples() {
        assert_eq!(el("3+2*sqrt(2)").is_square(), Some(el("1+sqrt(2)")));
        assert_eq!(el2("3").is_square(), None);
        assert_eq!(el2("4").is_square(), Some(el2("2")));
        assert_eq!(el2("2").is_square(), Some(el("sqrt(2)")));
        assert_eq!(el2("-1").is_square(), None);
        assert_eq!(el2("0").is_square(), Some(el2("0")));
        // (1 - sqrt(2))^2 = 3 - 2 sqrt(2); root normalized positive at identity
        assert_eq!(el("3-2*sqrt(2)").is_square(), Some(el("-1+sqrt(2)")));
        assert_eq!(el("9/4").is_square(), Some(el("3/2")));
        assert_eq!(el("2/9").is_square(), None);
    }

    #[test]
    fn norm_and_trace() {
        let x = el("3+2*sqrt(2)");
        assert_eq!(x.norm(), Rational::one());
        assert_eq!(x.trace(), Rational::from_integer(6.into()));
        assert_eq!(x.clone() * x.conjugate(), el2("1"));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(format!("{}", el("1/2 + 1/2 * sqrt(5)")), "1/2+1/2*sqrt(5)");
        assert_eq!(format!("{}", el("-1*sqrt(2)")), "-sqrt(2)");
        assert_eq!(format!("{}", el("3-2*sqrt(2)")), "3-2*sqrt(2)");
        assert_eq!(format!("{}", el("sqrt(2)*3/4")), "3/4*sqrt(2)");
        assert_eq!(format!("{}", el("6/4")), "3/2");
        assert_eq!(format!("{}", el("sqrt(2)-sqrt(2)")), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in [
            "",
            "1/0",
            "sqrt(4)",
            "sqrt(2)*sqrt(2)",
            "1+sqrt(2)+sqrt(3)",
            "abc",
            "1++2",
            "(1",
            "1.5",
            "1-",
        ] {
            assert!(bad.parse::<QuadFieldElem>().is_err(), "{bad}");
        }
        assert!(matches!(
            QuadFieldElem::parse_in(FieldDescriptor::RATIONALS, "sqrt(2)"),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(QuadFieldElem::parse_in(q2(), "sqrt(3)").is_err());
    }

    #[test]
    fn parse_accepts_whitespace_and_leading_signs() {
        assert_eq!(
            el(" - 1 / 2 + 3 * sqrt( 2 ) "),
            QuadFieldElem::from_fractions(q2(), (-1, 2), (3, 1)).unwrap()
        );
        assert_eq!(el("+2"), el("2"));
        assert_eq!(el2("-sqrt(2)+1"), el("1-sqrt(2)"));
    }

    #[test]
    fn enclosure_of_rational_is_exact() {
        let iv = el2("2").enclosure(64);
        assert_eq!(iv.lo(), iv.hi());
        assert_eq!(iv.lo(), &Rational::from_integer(2.into()));
    }

    #[test]
    fn enclosure_mirrors_under_negation() {
        let x = el("3/7-5/3*sqrt(2)");
        let p = x.enclosure(80);
        let n = (-x).enclosure(80);
        assert_eq!(p.lo(), &-n.hi().clone());
        assert_eq!(p.hi(), &-n.lo().clone());
    }
}
