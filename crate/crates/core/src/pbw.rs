//! U(sl2) in the PBW basis `f^a h^b e^c`.
//!
//! Products are normalised by left-multiplying one generator at a time with
//! the commutation rules
//!
//! ```text
//! h . f^a h^b e^c = f^a h^(b+1) e^c - 2a f^a h^b e^c
//! e . f^a h^b e^c = f^a (h-2)^b e^(c+1) + a f^(a-1) (h - a + 1) h^b e^c
//! ```
//!
//! which follow from `[h,f] = -2f`, `[e,f^a] = a f^(a-1) (h - a + 1)` and
//! `e h = (h - 2) e`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::Scalar;
use crate::liecore::{Automorphism, Gen, SL2Elt};

/// The monomial `f^a h^b e^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct SL2Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl SL2Monomial {
    pub const ONE: SL2Monomial = SL2Monomial { a: 0, b: 0, c: 0 };

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        SL2Monomial { a, b, c }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c
    }

    /// All monomials of total degree exactly `d`, in lexicographic order.
    pub fn of_degree(d: u32) -> Vec<SL2Monomial> {
        let mut out = Vec::new();
        for a in 0..=d {
            for b in 0..=d - a {
                out.push(SL2Monomial::new(a, b, d - a - b));
            }
        }
        out
    }

    /// All monomials of degree at most `d`, in degree-lex order.
    pub fn up_to_degree(d: u32) -> Vec<SL2Monomial> {
        (0..=d).flat_map(SL2Monomial::of_degree).collect()
    }

    /// The monomial as a word in the generators, left to right.
    pub fn word(&self) -> Vec<Gen> {
        let mut w = vec![Gen::F; self.a as usize];
        w.extend(std::iter::repeat(Gen::H).take(self.b as usize));
        w.extend(std::iter::repeat(Gen::E).take(self.c as usize));
        w
    }
}

/// Degree first, then lexicographic on `(a, b, c)`.
pub fn deglex(x: &SL2Monomial, y: &SL2Monomial) -> Ordering {
    x.degree().cmp(&y.degree()).then_with(|| x.cmp(y))
}

impl fmt::Display for SL2Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (name, n) in [("f", self.a), ("h", self.b), ("e", self.c)] {
            match n {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{n}")),
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// An element of U(sl2) in PBW normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<([u32; 3], Scalar)>", try_from = "Vec<([u32; 3], Scalar)>")]
pub struct UEnvElt {
    terms: BTreeMap<SL2Monomial, Scalar>,
}

impl From<UEnvElt> for Vec<([u32; 3], Scalar)> {
    fn from(u: UEnvElt) -> Self {
        u.terms.into_iter().map(|(m, c)| ([m.a, m.b, m.c], c)).collect()
    }
}

impl TryFrom<Vec<([u32; 3], Scalar)>> for UEnvElt {
    type Error = crate::Error;
    fn try_from(v: Vec<([u32; 3], Scalar)>) -> crate::Result<Self> {
        let mut u = UEnvElt::zero();
        for ([a, b, c], x) in v {
            u.add_term(SL2Monomial::new(a, b, c), &x);
        }
        Ok(u)
    }
}

impl UEnvElt {
    pub fn zero() -> Self {
        UEnvElt::default()
    }

    pub fn one() -> Self {
        UEnvElt::monomial(SL2Monomial::ONE, Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        UEnvElt::monomial(SL2Monomial::ONE, c)
    }

    pub fn monomial(m: SL2Monomial, c: Scalar) -> Self {
        let mut u = UEnvElt::zero();
        u.add_term(m, &c);
        u
    }

    pub fn gen(g: Gen) -> Self {
        let m = match g {
            Gen::F => SL2Monomial::new(1, 0, 0),
            Gen::H => SL2Monomial::new(0, 1, 0),
            Gen::E => SL2Monomial::new(0, 0, 1),
        };
        UEnvElt::monomial(m, Scalar::one())
    }

    pub fn from_sl2(x: &SL2Elt) -> Self {
        let mut u = UEnvElt::zero();
        for (g, c) in x.terms() {
            u.add_assign_scaled(&UEnvElt::gen(g), c);
        }
        u
    }

    pub fn add_term(&mut self, m: SL2Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &UEnvElt, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            for (m, x) in &other.terms {
                self.add_term(*m, x);
            }
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(*m, &(x * c));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SL2Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &SL2Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(SL2Monomial::degree).max()
    }

    pub fn add(&self, other: &UEnvElt) -> UEnvElt {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &UEnvElt) -> UEnvElt {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> UEnvElt {
        let mut out = UEnvElt::zero();
        out.add_assign_scaled(self, c);
        out
    }

    /// `g . self` in normal form.
    pub fn left_mul_gen(&self, g: Gen) -> UEnvElt {
        let mut out = UEnvElt::zero();
        for (m, x) in &self.terms {
            gen_times_monomial(g, m, x, &mut out);
        }
        out
    }

    /// `self . other` in normal form.
    pub fn mul(&self, other: &UEnvElt) -> UEnvElt {
        let mut out = UEnvElt::zero();
        for (m, x) in &self.terms {
            let mut w = other.clone();
            for g in m.word().into_iter().rev() {
                w = w.left_mul_gen(g);
            }
            out.add_assign_scaled(&w, x);
        }
        out
    }

    pub fn pow(&self, n: u32) -> UEnvElt {
        (0..n).fold(UEnvElt::one(), |acc, _| acc.mul(self))
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn gen_times_monomial(g: Gen, m: &SL2Monomial, x: &Scalar, out: &mut UEnvElt) {
    let SL2Monomial { a, b, c } = *m;
    match g {
        Gen::F => out.add_term(SL2Monomial::new(a + 1, b, c), x),
        Gen::H => {
            out.add_term(SL2Monomial::new(a, b + 1, c), x);
            if a > 0 {
                out.add_term(*m, &(x * &Scalar::from_int(-2 * a as i64)));
            }
        }
        Gen::E => {
            // f^a (h-2)^b e^(c+1)
            let mut pow2 = 1i64;
            for j in (0..=b).rev() {
                let coef = binomial(b, j) * pow2;
                out.add_term(SL2Monomial::new(a, j, c + 1), &(x * &Scalar::from_int(coef)));
                pow2 *= -2;
            }
            // a f^(a-1) (h - a + 1) h^b e^c
            if a > 0 {
                let a64 = a as i64;
                out.add_term(SL2Monomial::new(a - 1, b + 1, c), &(x * &Scalar::from_int(a64)));
                out.add_term(SL2Monomial::new(a - 1, b, c), &(x * &Scalar::from_int(-a64 * (a64 - 1))));
            }
        }
    }
}

/// The normal form of `u . v`.
pub fn nf_multiply(u: &UEnvElt, v: &UEnvElt) -> UEnvElt {
    u.mul(v)
}

/// The Casimir element `4fe + (h+1)^2`.
pub fn casimir_elt() -> UEnvElt {
    let f = UEnvElt::gen(Gen::F);
    let e = UEnvElt::gen(Gen::E);
    let h1 = UEnvElt::gen(Gen::H).add(&UEnvElt::one());
    f.mul(&e).scale(&Scalar::from_int(4)).add(&h1.mul(&h1))
}

/// The Casimir built from the other ordering, `4ef + (h-1)^2`.
pub fn casimir_from_ef() -> UEnvElt {
    let f = UEnvElt::gen(Gen::F);
    let e = UEnvElt::gen(Gen::E);
    let h1 = UEnvElt::gen(Gen::H).sub(&UEnvElt::one());
    e.mul(&f).scale(&Scalar::from_int(4)).add(&h1.mul(&h1))
}

/// Extends an automorphism of sl2 multiplicatively to U(sl2).
pub fn aut_extend(a: &Automorphism, u: &UEnvElt) -> UEnvElt {
    let images: Vec<UEnvElt> = [Gen::F, Gen::H, Gen::E]
        .into_iter()
        .map(|g| UEnvElt::from_sl2(&a.apply(&SL2Elt::gen(g))))
        .collect();
    let mut out = UEnvElt::zero();
    for (m, x) in u.terms() {
        let w = images[0].pow(m.a).mul(&images[1].pow(m.b)).mul(&images[2].pow(m.c));
        out.add_assign_scaled(&w, x);
    }
    out
}

impl fmt::Display for UEnvElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}) {m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UEnvElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
