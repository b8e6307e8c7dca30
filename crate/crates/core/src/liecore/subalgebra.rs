use std::fmt;

use serde::Serialize;

use super::automorphism::Automorphism;
use super::sl2::{bracket_sl2, SL2Elt};
use super::vir::VirElt;
use crate::error::{Error, Result};
use crate::exactnum::{LaurentPoly, Scalar, SubalgebraPoly};

/// The four kinds of one-dimensional subalgebras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OneDimKind {
    /// `gamma_l(C e)`.
    Nilpotent(Scalar),
    /// `C f = sigma(C e)`.
    NegNilpotent,
    /// `gamma_l(C h)`.
    Cartan(Scalar),
    /// `gamma_{l1,l2}(C h)`.
    Cartan2(Scalar, Scalar),
}

/// Which standard generator the automorphism carries onto the subalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StdGen {
    E,
    H,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OneDimClass {
    pub kind: OneDimKind,
    pub automorphism: Automorphism,
    pub standard: StdGen,
    /// `automorphism(standard)`, the distinguished basis vector of the subalgebra.
    pub basis: SL2Elt,
}

impl OneDimClass {
    fn new(kind: OneDimKind, automorphism: Automorphism, standard: StdGen) -> Self {
        let g = match standard {
            StdGen::E => SL2Elt::e(),
            StdGen::H => SL2Elt::h(),
        };
        let basis = automorphism.apply(&g);
        OneDimClass { kind, automorphism, standard, basis }
    }
}

/// Classifies `span{x}` following the case analysis on a basis
/// `e - beta h - delta f`, `h - delta f` or `f`.
pub fn classify_subalgebra_1d(x: &SL2Elt) -> Result<OneDimClass> {
    if x.is_zero() {
        return Err(Error::InvalidParameter("zero element spans no subalgebra".into()));
    }
    if !x.e.is_zero() {
        let inv = x.e.recip()?;
        let beta = -(&x.h * &inv);
        let delta = -(&x.f * &inv);
        let disc = &(&beta * &beta) - &delta;
        if disc.is_zero() {
            return Ok(OneDimClass::new(OneDimKind::Nilpotent(beta.clone()), Automorphism::gamma(&beta), StdGen::E));
        }
        let root = disc.sqrt_exact()?;
        let (l1, l2) = (&beta + &root, &beta - &root);
        let g = Automorphism::gamma2(&l1, &l2)?;
        return Ok(OneDimClass::new(OneDimKind::Cartan2(l1, l2), g, StdGen::H));
    }
    if !x.h.is_zero() {
        // basis h - delta f = gamma_{-delta/2}(h)
        let delta = -(&x.f * &x.h.recip()?);
        let l = &-&delta * &Scalar::frac(1, 2);
        return Ok(OneDimClass::new(OneDimKind::Cartan(l.clone()), Automorphism::gamma(&l), StdGen::H));
    }
    Ok(OneDimClass::new(OneDimKind::NegNilpotent, Automorphism::sigma(), StdGen::E))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoDimKind {
    BorelPlus,
    BorelMinus,
    /// `gamma_l(b+)`, `l != 0`.
    Borel(Scalar),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoDimClass {
    pub kind: TwoDimKind,
    pub automorphism: Automorphism,
}

/// Row-reduces two vectors given in the coordinate order `(h, e, f)`.
/// Returns the pivot columns and the reduced rows, or `None` if dependent.
fn rref2(x: [Scalar; 3], y: [Scalar; 3]) -> Option<(Vec<usize>, Vec<[Scalar; 3]>)> {
    let mut rows = vec![x, y];
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..3 {
        if r == 2 {
            break;
        }
        let Some(p) = (r..2).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip().ok()?;
        rows[r] = rows[r].clone().map(|v| &v * &inv);
        for i in 0..2 {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for c in 0..3 {
                    rows[i][c] = &rows[i][c] - &(&factor * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (pivots.len() == 2).then_some((pivots, rows))
}

fn in_span(x: &SL2Elt, y: &SL2Elt, z: &SL2Elt) -> bool {
    // z in span{x,y} iff det[x;y;z] = 0 when x, y are independent.
    let (a, b, c) = (x.coords(), y.coords(), z.coords());
    let det = &(&a[0] * &(&(&b[1] * &c[2]) - &(&b[2] * &c[1])))
        - &(&a[1] * &(&(&b[0] * &c[2]) - &(&b[2] * &c[0])))
        + (&a[2] * &(&(&b[0] * &c[1]) - &(&b[1] * &c[0])));
    det.is_zero()
}

/// Classifies a two-dimensional subalgebra as `b+`, `b-` or `b_l`.
pub fn classify_subalgebra_2d(x: &SL2Elt, y: &SL2Elt) -> Result<TwoDimClass> {
    let hef = |v: &SL2Elt| [v.h.clone(), v.e.clone(), v.f.clone()];
    let (pivots, rows) = rref2(hef(x), hef(y))
        .ok_or_else(|| Error::InvalidParameter(format!("{x} and {y} are linearly dependent")))?;
    if !in_span(x, y, &bracket_sl2(x, y)) {
        return Err(Error::NotASubalgebra(format!("span{{{x}, {y}}} is not closed under the bracket")));
    }
    match pivots.as_slice() {
        // basis {h + alpha f, e + beta f}; closure forces alpha^2 = 4 beta
        [0, 1] => {
            let alpha = rows[0][2].clone();
            if alpha.is_zero() {
                Ok(TwoDimClass { kind: TwoDimKind::BorelPlus, automorphism: Automorphism::identity() })
            } else {
                let l = &alpha * &Scalar::frac(1, 2);
                Ok(TwoDimClass { kind: TwoDimKind::Borel(l.clone()), automorphism: Automorphism::gamma(&l) })
            }
        }
        [0, 2] => Ok(TwoDimClass { kind: TwoDimKind::BorelMinus, automorphism: Automorphism::sigma() }),
        _ => Err(Error::NotASubalgebra(format!("span{{{x}, {y}}} contains no element with an h component"))),
    }
}

/// A basis of `sl2^Vir ∩ Vir^f`: the shifts `t^i f` supported in `{-1,0,1}`,
/// listed from the highest shift down.
pub fn intersect_virf_sl2(f: &LaurentPoly) -> Result<Vec<VirElt>> {
    let f = SubalgebraPoly::new(f.clone())?;
    let k = f.degree() as i64;
    Ok((-1..=1 - k).rev().map(|i| VirElt::from_laurent(&f.poly().shift(i))).collect())
}

impl fmt::Display for OneDimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneDimKind::Nilpotent(l) => write!(f, "n_{{{l}}}"),
            OneDimKind::NegNilpotent => write!(f, "n^-"),
            OneDimKind::Cartan(l) => write!(f, "h_{{{l}}}"),
            OneDimKind::Cartan2(a, b) => write!(f, "h_{{{a},{b}}}"),
        }
    }
}

impl fmt::Display for TwoDimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoDimKind::BorelPlus => write!(f, "b^+"),
            TwoDimKind::BorelMinus => write!(f, "b^-"),
            TwoDimKind::Borel(l) => write!(f, "b_{{{l}}}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::AutTag;

    fn s(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    fn elt(e: i64, h: i64, f: i64) -> SL2Elt {
        SL2Elt::new(s(e), s(h), s(f))
    }

    #[test]
    fn nilpotent_case() {
        let c = classify_subalgebra_1d(&elt(1, -3, -9)).unwrap();
        assert_eq!(c.kind, OneDimKind::Nilpotent(s(3)));
        assert_eq!(c.automorphism, Automorphism::gamma(&s(3)));
        assert_eq!(c.basis, elt(1, -3, -9));
    }

    #[test]
    fn negative_nilpotent_case() {
        let c = classify_subalgebra_1d(&elt(0, 0, 7)).unwrap();
        assert_eq!(c.kind, OneDimKind::NegNilpotent);
        assert_eq!(c.automorphism.tag(), &AutTag::Sigma);
        assert_eq!(c.basis, SL2Elt::f());
    }

    #[test]
    fn cartan2_case() {
        let c = classify_subalgebra_1d(&elt(1, -3, -5)).unwrap();
        assert_eq!(c.kind, OneDimKind::Cartan2(s(5), s(1)));
        // gamma_{5,1}(h) = (e - 3h - 5f)/2
        assert_eq!(c.basis, elt(1, -3, -5).scale(&Scalar::frac(1, 2)));
    }

    #[test]
    fn cartan_case() {
        let c = classify_subalgebra_1d(&elt(0, 2, -4)).unwrap();
        assert_eq!(c.kind, OneDimKind::Cartan(s(-1)));
        assert_eq!(c.basis, elt(0, 1, -2));
    }

    #[test]
    fn irrational_root_is_not_representable() {
        // beta = 0, delta = -2: needs sqrt(2)
        assert!(matches!(classify_subalgebra_1d(&elt(1, 0, 2)), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn two_dim_examples() {
        let b = classify_subalgebra_2d(&SL2Elt::h(), &SL2Elt::e()).unwrap();
        assert_eq!(b.kind, TwoDimKind::BorelPlus);
        let b = classify_subalgebra_2d(&elt(0, 1, 2), &elt(1, 0, 1)).unwrap();
        assert_eq!(b.kind, TwoDimKind::Borel(s(1)));
        assert_eq!(b.automorphism, Automorphism::gamma(&s(1)));
        let b = classify_subalgebra_2d(&SL2Elt::f(), &elt(0, 3, 1)).unwrap();
        assert_eq!(b.kind, TwoDimKind::BorelMinus);
        assert!(matches!(classify_subalgebra_2d(&SL2Elt::e(), &SL2Elt::f()), Err(Error::NotASubalgebra(_))));
        assert!(matches!(classify_subalgebra_2d(&elt(0, 1, 1), &SL2Elt::e()), Err(Error::NotASubalgebra(_))));
    }

    #[test]
    fn intersections() {
        let l = s(3);
        let got = intersect_virf_sl2(&LaurentPoly::linear(&l)).unwrap();
        let e = VirElt::e;
        assert_eq!(got, vec![e(1).sub(&e(0).scale(&l)), e(0).sub(&e(-1).scale(&l))]);

        let sq = LaurentPoly::from_roots(&[(l.clone(), 2)]);
        let got = intersect_virf_sl2(&sq).unwrap();
        assert_eq!(got, vec![e(1).sub(&e(0).scale(&s(6))).add(&e(-1).scale(&s(9)))]);

        let cubic = LaurentPoly::from_roots(&[(s(1), 1), (s(2), 1), (s(-1), 1)]);
        assert!(intersect_virf_sl2(&cubic).unwrap().is_empty());
    }
}
