use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::mu::{mu_eval, MuData};
use super::quotient::IdealQuotient;
use crate::error::Result;
use crate::exactnum::{LaurentPoly, Scalar, SubalgebraPoly};
use crate::liecore::{intersect_virf_sl2, Gen, SL2Elt, VirElt};
use crate::pbw::{SL2Monomial, UEnvElt};

/// `V^f_mu`, realised as `U(sl2) v_mu` modulo the annihilator coming from
/// `sl2 ∩ Vir^f`.
#[derive(Debug)]
pub struct VirPolyModule {
    mu: MuData,
    f: SubalgebraPoly,
    relations: Vec<(SL2Elt, Scalar)>,
    quotient: IdealQuotient,
    cache: Mutex<HashMap<(i64, SL2Monomial), Arc<UEnvElt>>>,
}

/// `e_n` for `n in {-1, 0, 1}` as an element of U(sl2).
fn sl2_part(n: i64) -> UEnvElt {
    match n {
        1 => UEnvElt::gen(Gen::E),
        0 => UEnvElt::gen(Gen::H).scale(&Scalar::frac(1, 2)),
        -1 => UEnvElt::gen(Gen::F).scale(&Scalar::from_int(-1)),
        _ => unreachable!("only e_-1, e_0, e_1 lie in sl2"),
    }
}

impl VirPolyModule {
    pub fn new(mu: MuData, depth: u32) -> Result<Self> {
        mu.validate()?;
        let f = SubalgebraPoly::new(mu.f())?;
        let mut relations = Vec::new();
        for s in intersect_virf_sl2(f.poly())? {
            let x = s.to_sl2().expect("intersection lies in sl2");
            relations.push((x, mu_eval(&mu, &s)?));
        }
        let rels: Vec<(UEnvElt, Scalar)> =
            relations.iter().map(|(x, v)| (UEnvElt::from_sl2(x), v.clone())).collect();
        let quotient = IdealQuotient::new(&rels, depth);
        Ok(VirPolyModule { mu, f, relations, quotient, cache: Mutex::new(HashMap::new()) })
    }

    pub fn mu(&self) -> &MuData {
        &self.mu
    }

    pub fn poly(&self) -> &LaurentPoly {
        self.f.poly()
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    /// Pairs `(s, mu(s))` for a basis `s` of `sl2 ∩ Vir^f`.
    pub fn relations(&self) -> &[(SL2Elt, Scalar)] {
        &self.relations
    }

    pub fn quotient(&self) -> &IdealQuotient {
        &self.quotient
    }

    pub fn normal_form(&self, u: &UEnvElt) -> Result<UEnvElt> {
        self.quotient.normal_form(u)
    }

    /// `e_n . m . v_mu` in normal form.
    pub fn e_times(&self, n: i64, m: SL2Monomial) -> Result<UEnvElt> {
        Ok((*self.e_times_shared(n, m)?).clone())
    }

    fn e_times_shared(&self, n: i64, m: SL2Monomial) -> Result<Arc<UEnvElt>> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&(n, m)) {
            return Ok(Arc::clone(hit));
        }
        let out = Arc::new(self.e_times_uncached(n, m)?);
        self.cache.lock().expect("cache lock").insert((n, m), Arc::clone(&out));
        Ok(out)
    }

    fn e_times_uncached(&self, n: i64, m: SL2Monomial) -> Result<UEnvElt> {
        if (-1..=1).contains(&n) {
            return self.normal_form(&sl2_part(n).mul(&UEnvElt::monomial(m, Scalar::one())));
        }
        if m == SL2Monomial::ONE {
            let (q, r) = self.f.reduce(&LaurentPoly::monomial(n, Scalar::one()));
            let value = q.terms().fold(Scalar::zero(), |acc, (j, c)| &acc + &(c * &self.mu.on_shift(j)));
            let mut out = UEnvElt::scalar(value);
            for (i, c) in r.terms() {
                out.add_assign_scaled(&sl2_part(i), c);
            }
            return self.normal_form(&out);
        }
        // m = x w with x the leftmost letter, x = coef * e_j
        let (g, j, coef, w) = if m.a > 0 {
            (Gen::F, -1, -1, SL2Monomial::new(m.a - 1, m.b, m.c))
        } else if m.b > 0 {
            (Gen::H, 0, 2, SL2Monomial::new(0, m.b - 1, m.c))
        } else {
            (Gen::E, 1, 1, SL2Monomial::new(0, 0, m.c - 1))
        };
        let inner = self.e_times_shared(n, w)?;
        let mut out = self.normal_form(&inner.left_mul_gen(g))?;
        let shifted = self.e_times_shared(n + j, w)?;
        out.add_assign_scaled(&shifted, &Scalar::from_int(coef * (j - n)));
        Ok(out)
    }

    /// `x . u . v_mu` for `x` in Vir.
    pub fn act_vir(&self, x: &VirElt, u: &UEnvElt) -> Result<UEnvElt> {
        let mut out = UEnvElt::zero();
        for (n, a) in x.terms() {
            for (m, c) in u.terms() {
                out.add_assign_scaled(&*self.e_times_shared(n, *m)?, &(a * c));
            }
        }
        Ok(out)
    }
}
