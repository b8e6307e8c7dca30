use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{LaurentPoly, Scalar, SubalgebraPoly};
use crate::liecore::VirElt;

/// A homomorphism `Vir^f -> C` killing `z`, given by
/// `mu(t^j f) = p_1(j) l_1^j + ... + p_r(j) l_r^j` where
/// `f = (t - l_1)^{n_1} ... (t - l_r)^{n_r}` and `deg p_i < n_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuData {
    /// `(l_i, n_i)`.
    pub roots: Vec<(Scalar, u32)>,
    /// Coefficients of `p_i`, constant term first.
    pub polys: Vec<Vec<Scalar>>,
}

impl MuData {
    pub fn new(roots: Vec<(Scalar, u32)>, polys: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = MuData { roots, polys };
        m.validate()?;
        Ok(m)
    }

    /// A single root with a constant polynomial: `mu(t^j (t - l)) = c l^j`.
    pub fn linear(l: &Scalar, c: &Scalar) -> Result<Self> {
        MuData::new(vec![(l.clone(), 1)], vec![vec![c.clone()]])
    }

    pub fn validate(&self) -> Result<()> {
        if self.roots.len() != self.polys.len() {
            return Err(Error::InvalidParameter(format!(
                "{} roots but {} polynomials",
                self.roots.len(),
                self.polys.len()
            )));
        }
        let total: u32 = self.roots.iter().map(|(_, n)| n).sum();
        if !(1..=3).contains(&total) {
            return Err(Error::BadPolynomial(format!("degree {total} is not in {{1,2,3}}")));
        }
        for (i, (l, n)) in self.roots.iter().enumerate() {
            if l.is_zero() {
                return Err(Error::BadPolynomial("roots must be nonzero".into()));
            }
            if *n == 0 {
                return Err(Error::InvalidParameter("root multiplicities must be positive".into()));
            }
            if self.roots[..i].iter().any(|(m, _)| m == l) {
                return Err(Error::InvalidParameter(format!("root {l} listed twice")));
            }
            let p = &self.polys[i];
            let deg = p.iter().rposition(|c| !c.is_zero());
            if deg.is_some_and(|d| d as u32 >= *n) {
                return Err(Error::InvalidParameter(format!("p_{} must have degree below {n}", i + 1)));
            }
        }
        Ok(())
    }

    pub fn f(&self) -> LaurentPoly {
        LaurentPoly::from_roots(&self.roots)
    }

    pub fn degree(&self) -> u32 {
        self.roots.iter().map(|(_, n)| n).sum()
    }

    /// `mu(t^j f)`.
    pub fn on_shift(&self, j: i64) -> Scalar {
        let jj = Scalar::from_int(j);
        let mut total = Scalar::zero();
        for ((l, _), p) in self.roots.iter().zip(&self.polys) {
            let pj = p.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * &jj) + c);
            total += &(&pj * &l.pow(j).expect("roots are nonzero"));
        }
        total
    }
}

/// Exact division `p = q f`, failing when `f` does not divide `p`.
pub fn divide_by_f(p: &LaurentPoly, f: &SubalgebraPoly) -> Result<LaurentPoly> {
    let k = f.degree() as i64;
    let top = f.poly().coeff(k).recip()?;
    let mut q = LaurentPoly::zero();
    let mut r = p.clone();
    while let (Some(lo), Some(hi)) = (r.min_exp(), r.max_exp()) {
        if hi - lo < k {
            return Err(Error::NotInSubalgebra(format!("{p} is not a multiple of {}", f.poly())));
        }
        let c = &r.coeff(hi) * &top;
        r = r.sub(&f.poly().shift(hi - k).scale(&c));
        q.add_term(hi - k, &c);
    }
    Ok(q)
}

/// Evaluates `mu` on an element of `Vir^f`; the central part contributes 0.
pub fn mu_eval(m: &MuData, w: &VirElt) -> Result<Scalar> {
    let f = SubalgebraPoly::new(m.f())?;
    let q = divide_by_f(&w.laurent_part(), &f)?;
    Ok(q.terms().fold(Scalar::zero(), |acc, (j, c)| &acc + &(c * &m.on_shift(j))))
}
