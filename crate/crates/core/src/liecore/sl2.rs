use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::exactnum::Scalar;

/// Index of a basis vector of sl2 in the coordinate order `(e, h, f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    E,
    H,
    F,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::E, Gen::H, Gen::F];

    pub fn index(self) -> usize {
        match self {
            Gen::E => 0,
            Gen::H => 1,
            Gen::F => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::E => "e",
            Gen::H => "h",
            Gen::F => "f",
        }
    }
}

/// An element `c_e e + c_h h + c_f f` of sl2.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SL2Elt {
    pub e: Scalar,
    pub h: Scalar,
    pub f: Scalar,
}

impl SL2Elt {
    pub fn new(e: Scalar, h: Scalar, f: Scalar) -> Self {
        SL2Elt { e, h, f }
    }

    pub fn zero() -> Self {
        SL2Elt::default()
    }

    pub fn gen(g: Gen) -> Self {
        let mut x = SL2Elt::zero();
        *x.coord_mut(g) = Scalar::one();
        x
    }

    pub fn e() -> Self {
        SL2Elt::gen(Gen::E)
    }

    pub fn h() -> Self {
        SL2Elt::gen(Gen::H)
    }

    pub fn f() -> Self {
        SL2Elt::gen(Gen::F)
    }

    pub fn basis() -> [SL2Elt; 3] {
        [SL2Elt::e(), SL2Elt::h(), SL2Elt::f()]
    }

    pub fn from_coords(c: [Scalar; 3]) -> Self {
        let [e, h, f] = c;
        SL2Elt { e, h, f }
    }

    pub fn coords(&self) -> [Scalar; 3] {
        [self.e.clone(), self.h.clone(), self.f.clone()]
    }

    pub fn coord(&self, g: Gen) -> &Scalar {
        match g {
            Gen::E => &self.e,
            Gen::H => &self.h,
            Gen::F => &self.f,
        }
    }

    pub fn coord_mut(&mut self, g: Gen) -> &mut Scalar {
        match g {
            Gen::E => &mut self.e,
            Gen::H => &mut self.h,
            Gen::F => &mut self.f,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero() && self.h.is_zero() && self.f.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> SL2Elt {
        SL2Elt { e: &self.e * c, h: &self.h * c, f: &self.f * c }
    }

    /// Nonzero terms as `(generator, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (Gen, &Scalar)> {
        Gen::ALL.into_iter().map(move |g| (g, self.coord(g))).filter(|(_, c)| !c.is_zero())
    }
}

/// The bracket determined by `[h,e] = 2e`, `[e,f] = h`, `[h,f] = -2f`.
pub fn bracket_sl2(x: &SL2Elt, y: &SL2Elt) -> SL2Elt {
    let two = Scalar::from_int(2);
    SL2Elt {
        e: &two * &(&x.h * &y.e - &x.e * &y.h),
        h: &x.e * &y.f - &x.f * &y.e,
        f: &two * &(&x.f * &y.h - &x.h * &y.f),
    }
}

impl Add for &SL2Elt {
    type Output = SL2Elt;
    fn add(self, rhs: &SL2Elt) -> SL2Elt {
        SL2Elt { e: &self.e + &rhs.e, h: &self.h + &rhs.h, f: &self.f + &rhs.f }
    }
}

impl Sub for &SL2Elt {
    type Output = SL2Elt;
    fn sub(self, rhs: &SL2Elt) -> SL2Elt {
        SL2Elt { e: &self.e - &rhs.e, h: &self.h - &rhs.h, f: &self.f - &rhs.f }
    }
}

impl Neg for &SL2Elt {
    type Output = SL2Elt;
    fn neg(self) -> SL2Elt {
        SL2Elt { e: -&self.e, h: -&self.h, f: -&self.f }
    }
}

impl fmt::Display for SL2Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(g, c)| if c.is_one() { g.name().to_string() } else { format!("({c})*{}", g.name()) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl fmt::Debug for SL2Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
