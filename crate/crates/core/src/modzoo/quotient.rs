use std::cmp::{Ordering, Reverse};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::linalg::{Echelon, SparseVec};
use crate::pbw::{SL2Monomial, UEnvElt};

/// Orders monomials by degree, and within a degree puts the
/// lexicographically smallest monomial last so that it becomes the pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct QKey(SL2Monomial);

impl Ord for QKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.degree(), Reverse(self.0)).cmp(&(other.0.degree(), Reverse(other.0)))
    }
}

impl PartialOrd for QKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Normal forms in `U(sl2) / U(sl2){s - mu(s)}` up to a fixed degree.
///
/// The ideal is spanned in degree `<= d` by the products `m (s - mu(s))` with
/// `deg m <= d - 1`; these are eliminated degree by degree. Monomials that
/// are not pivots form the standard basis of the quotient.
#[derive(Debug, Clone)]
pub struct IdealQuotient {
    depth: u32,
    ech: Echelon<QKey>,
    standard: Vec<SL2Monomial>,
}

fn to_sparse(u: &UEnvElt) -> SparseVec<QKey> {
    u.terms().map(|(m, c)| (QKey(*m), c.clone())).collect()
}

impl IdealQuotient {
    pub fn new(relations: &[(UEnvElt, Scalar)], depth: u32) -> Self {
        let gens: Vec<UEnvElt> = relations.iter().map(|(s, v)| s.sub(&UEnvElt::scalar(v.clone()))).collect();
        let mut ech = Echelon::new();
        for d in 1..=depth {
            for m in SL2Monomial::of_degree(d - 1) {
                let mu = UEnvElt::monomial(m, Scalar::one());
                for g in &gens {
                    ech.insert(to_sparse(&mu.mul(g)));
                }
            }
        }
        let mut standard: Vec<SL2Monomial> =
            SL2Monomial::up_to_degree(depth).into_iter().filter(|m| !ech.is_pivot(&QKey(*m))).collect();
        standard.sort_by(crate::pbw::deglex);
        IdealQuotient { depth, ech, standard }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Standard monomials of degree at most `d`, in degree-lex order.
    pub fn standard(&self, d: u32) -> Result<Vec<SL2Monomial>> {
        if d > self.depth {
            return Err(Error::DepthExceeded { depth: self.depth, needed: d });
        }
        Ok(self.standard.iter().filter(|m| m.degree() <= d).copied().collect())
    }

    pub fn is_standard(&self, m: &SL2Monomial) -> bool {
        m.degree() <= self.depth && !self.ech.is_pivot(&QKey(*m))
    }

    pub fn normal_form(&self, u: &UEnvElt) -> Result<UEnvElt> {
        if let Some(d) = u.degree().filter(|&d| d > self.depth) {
            return Err(Error::DepthExceeded { depth: self.depth, needed: d });
        }
        let mut out = UEnvElt::zero();
        for (k, c) in self.ech.reduce(to_sparse(u)) {
            out.add_term(k.0, &c);
        }
        Ok(out)
    }
}
