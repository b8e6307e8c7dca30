use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact Gaussian rational `re + im*i`.
///
/// Both parts are kept as reduced `BigRational`s, so equal values have equal
/// representations and `==` is exact equality in Q(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic with an explicit operator; division by zero is an error.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

fn rat_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(n.into()), im: BigRational::zero() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar { re: BigRational::from_integer(n), im: BigRational::zero() }
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Scalar { re: BigRational::new(num.into(), den.into()), im: BigRational::zero() }
    }

    /// `re + im*i` from integer parts.
    pub fn gauss(re: i64, im: i64) -> Self {
        Scalar { re: BigRational::from_integer(re.into()), im: BigRational::from_integer(im.into()) }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        if exp < 0 {
            return self.recip()?.pow(-exp);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    /// Square root in Q(i) on the principal branch: real part nonnegative,
    /// and imaginary part nonnegative when the real part vanishes.
    pub fn sqrt_exact(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        let fail = || Error::NotRepresentable(format!("sqrt({self})"));
        let r = rat_sqrt(&self.norm_sqr()).ok_or_else(fail)?;
        let two = BigRational::from_integer(2.into());
        let p = rat_sqrt(&((&r + &self.re) / &two)).ok_or_else(fail)?;
        let q = rat_sqrt(&((&r - &self.re) / &two)).ok_or_else(fail)?;
        let root = if self.im.is_zero() {
            if self.re.is_positive() {
                Scalar { re: p, im: BigRational::zero() }
            } else {
                Scalar { re: BigRational::zero(), im: q }
            }
        } else {
            // 2pq = im fixes the sign of q once p > 0.
            let q = &self.im / (&two * &p);
            Scalar { re: p, im: q }
        };
        debug_assert_eq!(&(&root * &root), self);
        Ok(root)
    }

    /// `[re_num, re_den, im_num, im_den]` as decimal strings.
    pub fn to_parts(&self) -> [String; 4] {
        [
            self.re.numer().to_string(),
            self.re.denom().to_string(),
            self.im.numer().to_string(),
            self.im.denom().to_string(),
        ]
    }

    pub fn from_parts(parts: &[String]) -> Result<Scalar> {
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected 4 scalar parts, got {}", parts.len())));
        }
        let big = |s: &str| BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s}: {e}")));
        let (rn, rd, inum, id) = (big(&parts[0])?, big(&parts[1])?, big(&parts[2])?, big(&parts[3])?);
        if rd.is_zero() || id.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar { re: BigRational::new(rn, rd), im: BigRational::new(inum, id) })
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im_abs = self.im.abs();
        let im_part = if im_abs.is_one() { "i".to_string() } else { format!("{}*i", fmt_rat(&im_abs)) };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_part}")
            } else {
                write!(f, "{im_part}")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", fmt_rat(&self.re), sign, im_part)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Parses `a/b+c/d*i`; either part may be omitted (`3`, `-i`, `2*i`, `1/2-i`).
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(input: &str) -> Result<Scalar> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        if !s.ends_with('i') {
            return Ok(Scalar { re: parse_rat(&s)?, im: BigRational::zero() });
        }
        // Split at the last sign that is not the leading character.
        let body = &s[..s.len() - 1];
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
        let (re_str, im_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let im_str = im_str.strip_suffix('*').unwrap_or(im_str);
        let im = match im_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rat(other.strip_prefix('+').unwrap_or(other))?,
        };
        let re = if re_str.is_empty() { BigRational::zero() } else { parse_rat(re_str)? };
        Ok(Scalar { re, im })
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_parts().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        Scalar::from_parts(&parts).map_err(D::Error::custom)
    }
}

/// A canonical total order (real part, then imaginary part) used for
/// deterministic sorting. It is not a field ordering.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

fn small(a: &BigRational) -> Option<(i128, i128)> {
    Some((a.numer().to_i64()? as i128, a.denom().to_i64()? as i128))
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

fn from_small(n: i128, d: i128) -> BigRational {
    let g = gcd_i128(n, d).max(1);
    BigRational::new_raw(BigInt::from(n / g), BigInt::from(d / g))
}

/// Products and sums of word-sized rationals avoid the bignum gcd.
fn rmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) => from_small(an * bn, ad * bd),
        _ => a * b,
    }
}

fn radd_assign(a: &mut BigRational, b: &BigRational) {
    if b.is_zero() {
        return;
    }
    match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) => *a = from_small(an * bd + bn * ad, ad * bd),
        _ => *a += b,
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar { re: rmul(&self.re, &rhs.re), im: BigRational::zero() };
        }
        Scalar {
            re: rmul(&self.re, &rhs.re) - rmul(&self.im, &rhs.im),
            im: rmul(&self.re, &rhs.im) + rmul(&self.im, &rhs.re),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        radd_assign(&mut self.re, &rhs.re);
        radd_assign(&mut self.im, &rhs.im);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}
