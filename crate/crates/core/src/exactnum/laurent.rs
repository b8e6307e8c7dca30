use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// A Laurent polynomial in `t` with Gaussian-rational coefficients.
///
/// Under the identification `e_i <-> t^i` this also models the span of the
/// `e_i` inside Vir.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<(i64, Scalar)>", try_from = "Vec<(i64, Scalar)>")]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl From<LaurentPoly> for Vec<(i64, Scalar)> {
    fn from(p: LaurentPoly) -> Self {
        p.terms.into_iter().collect()
    }
}

impl TryFrom<Vec<(i64, Scalar)>> for LaurentPoly {
    type Error = Error;
    fn try_from(pairs: Vec<(i64, Scalar)>) -> Result<Self> {
        let mut p = LaurentPoly::zero();
        for (n, c) in pairs {
            p.add_term(n, &c);
        }
        Ok(p)
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Scalar::one())
    }

    /// `c * t^n`.
    pub fn monomial(n: i64, c: Scalar) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(n, &c);
        p
    }

    /// `t - root`.
    pub fn linear(root: &Scalar) -> Self {
        let mut p = LaurentPoly::monomial(1, Scalar::one());
        p.add_term(0, &-root);
        p
    }

    /// `prod (t - root)^mult`.
    pub fn from_roots(roots: &[(Scalar, u32)]) -> Self {
        let mut p = LaurentPoly::one();
        for (root, mult) in roots {
            for _ in 0..*mult {
                p = p.mul(&LaurentPoly::linear(root));
            }
        }
        p
    }

    /// Coefficients `a_0, a_1, ...` of an ordinary polynomial.
    pub fn from_coeffs(coeffs: &[Scalar]) -> Self {
        let mut p = LaurentPoly::zero();
        for (n, c) in coeffs.iter().enumerate() {
            p.add_term(n as i64, c);
        }
        p
    }

    pub fn add_term(&mut self, n: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(n).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: i64) -> Scalar {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max exponent - min exponent`, undefined for zero.
    pub fn width(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.add_term(*n, c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.add_term(*n, &-c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(n, x)| (*n, x * c)).collect() }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(n, x)| (n + k, x.clone())).collect() }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (n, a) in &self.terms {
            for (m, b) in &other.terms {
                out.add_term(n + m, &(a * b));
            }
        }
        out
    }
}

/// Product of Laurent polynomials.
pub fn laurent_mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p.mul(q)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(n, c)| match *n {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial `f = a_0 + ... + a_k t^k` with `a_0, a_k != 0` and
/// `k in {1, 2, 3}`, the data defining the subalgebra `Vir^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraPoly {
    poly: LaurentPoly,
    degree: u32,
}

impl SubalgebraPoly {
    pub fn new(poly: LaurentPoly) -> Result<Self> {
        let (lo, hi) = match (poly.min_exp(), poly.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::BadPolynomial("zero polynomial".into())),
        };
        if lo != 0 {
            return Err(Error::BadPolynomial(format!("constant term must be nonzero in {poly}")));
        }
        if !(1..=3).contains(&hi) {
            return Err(Error::BadPolynomial(format!("degree {hi} is not in {{1,2,3}}")));
        }
        Ok(SubalgebraPoly { poly, degree: hi as u32 })
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The complement window: `{0}`, `{0,1}` or `{-1,0,1}` for degree 1, 2, 3.
    pub fn window(&self) -> RangeInclusive<i64> {
        window_for_degree(self.degree)
    }

    /// Writes `p = q*f + r` with `r` supported in the window.
    ///
    /// Exponents above the window are cleared from the top using `a_k`, then
    /// exponents below it from the bottom using `a_0`. The two phases do not
    /// interfere: a top step touches exponents `>= min(window)` and a bottom
    /// step touches exponents `<= max(window)`.
    pub fn reduce(&self, p: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let k = self.degree as i64;
        let window = self.window();
        let top = self.poly.coeff(k).recip().expect("a_k != 0");
        let bottom = self.poly.coeff(0).recip().expect("a_0 != 0");
        let mut q = LaurentPoly::zero();
        let mut r = p.clone();
        while let Some(m) = r.max_exp().filter(|m| m > window.end()) {
            let c = &r.coeff(m) * &top;
            r = r.sub(&self.poly.shift(m - k).scale(&c));
            q.add_term(m - k, &c);
        }
        while let Some(m) = r.min_exp().filter(|m| m < window.start()) {
            let c = &r.coeff(m) * &bottom;
            r = r.sub(&self.poly.shift(m).scale(&c));
            q.add_term(m, &c);
        }
        (q, r)
    }
}

pub fn window_for_degree(k: u32) -> RangeInclusive<i64> {
    match k {
        1 => 0..=0,
        2 => 0..=1,
        _ => -1..=1,
    }
}

/// `t^n = q*f + r` with `r` supported on the complement window of `f`.
pub fn laurent_divmod_f(n: i64, f: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    let f = SubalgebraPoly::new(f.clone())?;
    Ok(f.reduce(&LaurentPoly::monomial(n, Scalar::one())))
}
