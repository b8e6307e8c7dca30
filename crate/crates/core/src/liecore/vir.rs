use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::sl2::SL2Elt;
use crate::exactnum::{LaurentPoly, Scalar};

/// An element `sum c_i e_i + c_z z` of the Virasoro algebra.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "VirEltRepr", try_from = "VirEltRepr")]
pub struct VirElt {
    terms: BTreeMap<i64, Scalar>,
    z: Scalar,
}

#[derive(Serialize, Deserialize)]
struct VirEltRepr {
    terms: Vec<(i64, Scalar)>,
    z: Scalar,
}

impl From<VirElt> for VirEltRepr {
    fn from(x: VirElt) -> Self {
        VirEltRepr { terms: x.terms.into_iter().collect(), z: x.z }
    }
}

impl TryFrom<VirEltRepr> for VirElt {
    type Error = crate::Error;
    fn try_from(r: VirEltRepr) -> crate::Result<Self> {
        let mut x = VirElt::zero();
        for (i, c) in r.terms {
            x.add_term(i, &c);
        }
        x.z = r.z;
        Ok(x)
    }
}

impl VirElt {
    pub fn zero() -> Self {
        VirElt::default()
    }

    /// The basis vector `e_i`.
    pub fn e(i: i64) -> Self {
        VirElt::term(i, Scalar::one())
    }

    pub fn term(i: i64, c: Scalar) -> Self {
        let mut x = VirElt::zero();
        x.add_term(i, &c);
        x
    }

    /// The central element.
    pub fn z() -> Self {
        VirElt { terms: BTreeMap::new(), z: Scalar::one() }
    }

    /// Reads a Laurent polynomial as an element of Vir via `t^i <-> e_i`.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let mut x = VirElt::zero();
        for (i, c) in p.terms() {
            x.add_term(i, c);
        }
        x
    }

    /// The `e_i` part as a Laurent polynomial.
    pub fn laurent_part(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (i, c) in &self.terms {
            p.add_term(*i, c);
        }
        p
    }

    pub fn add_term(&mut self, i: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(i).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coeff(&self, i: i64) -> Scalar {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn z_coeff(&self) -> &Scalar {
        &self.z
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.z.is_zero()
    }

    pub fn add(&self, other: &VirElt) -> VirElt {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, c);
        }
        out.z = &out.z + &other.z;
        out
    }

    pub fn sub(&self, other: &VirElt) -> VirElt {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> VirElt {
        let mut out = VirElt::zero();
        for (i, x) in &self.terms {
            out.add_term(*i, &(x * c));
        }
        out.z = &self.z * c;
        out
    }

    /// The preimage under the embedding, when the element lies in the
    /// span of `e_{-1}, e_0, e_1`.
    pub fn to_sl2(&self) -> Option<SL2Elt> {
        if !self.z.is_zero() || self.terms.keys().any(|i| !(-1..=1).contains(i)) {
            return None;
        }
        Some(SL2Elt::new(self.coeff(1), &self.coeff(0) * &Scalar::frac(1, 2), -&self.coeff(-1)))
    }
}

/// `[e_i, e_j] = (j - i) e_{i+j} + delta_{i,-j} (i^3 - i)/12 z`, with `z` central.
pub fn bracket_vir(x: &VirElt, y: &VirElt) -> VirElt {
    let mut out = VirElt::zero();
    for (i, a) in &x.terms {
        for (j, b) in &y.terms {
            let ab = a * b;
            out.add_term(i + j, &(&ab * &Scalar::from_int(j - i)));
            if i + j == 0 {
                let central = Scalar::frac(i * i * i - i, 12);
                out.z = &out.z + &(&ab * &central);
            }
        }
    }
    out
}

/// `h -> 2e_0`, `e -> e_1`, `f -> -e_{-1}`.
pub fn embed_sl2(x: &SL2Elt) -> VirElt {
    let mut out = VirElt::zero();
    out.add_term(1, &x.e);
    out.add_term(0, &(&x.h * &Scalar::from_int(2)));
    out.add_term(-1, &-&x.f);
    out
}

impl fmt::Display for VirElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| if c.is_one() { format!("e_{i}") } else { format!("({c})*e_{i}") })
            .collect();
        if !self.z.is_zero() {
            parts.push(if self.z.is_one() { "z".into() } else { format!("({})*z", self.z) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl fmt::Debug for VirElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
