use std::fmt;

use serde::{Deserialize, Serialize};

use super::sl2::{bracket_sl2, SL2Elt};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// Which known family an automorphism matrix belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutTag {
    Identity,
    Gamma(Scalar),
    Gamma2(Scalar, Scalar),
    Sigma,
    Composite,
}

/// A linear automorphism of sl2, stored as the 3x3 matrix acting on
/// coordinates `(e, h, f)`: column `j` holds the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automorphism {
    matrix: [[Scalar; 3]; 3],
    tag: AutTag,
}

type Mat3 = [[Scalar; 3]; 3];

fn from_columns(cols: [[Scalar; 3]; 3]) -> Mat3 {
    std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()))
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            (0..3).fold(Scalar::zero(), |acc, k| &acc + &(&a[r][k] * &b[k][c]))
        })
    })
}

fn identity() -> Mat3 {
    std::array::from_fn(|r| std::array::from_fn(|c| if r == c { Scalar::one() } else { Scalar::zero() }))
}

fn mat_inverse(m: &Mat3) -> Option<Mat3> {
    let mut a: Vec<Vec<Scalar>> = (0..3)
        .map(|r| {
            let mut row = m[r].to_vec();
            row.extend(identity()[r].iter().cloned());
            row
        })
        .collect();
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..3 {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..6 {
                    let d = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &d;
                }
            }
        }
    }
    Some(std::array::from_fn(|r| std::array::from_fn(|c| a[r][c + 3].clone())))
}

impl Automorphism {
    /// Builds an automorphism from a matrix, rejecting singular matrices and
    /// matrices that do not preserve the bracket.
    pub fn from_matrix(matrix: Mat3) -> Result<Self> {
        if mat_inverse(&matrix).is_none() {
            return Err(Error::InvalidParameter("automorphism matrix is singular".into()));
        }
        let a = Automorphism { matrix, tag: AutTag::Composite };
        if !a.preserves_brackets() {
            return Err(Error::InvalidParameter("matrix does not preserve the sl2 bracket".into()));
        }
        Ok(a.retagged())
    }

    pub fn identity() -> Self {
        Automorphism { matrix: identity(), tag: AutTag::Identity }
    }

    /// `e -> e - l h - l^2 f`, `h -> h + 2 l f`, `f -> f`.
    pub fn gamma(l: &Scalar) -> Self {
        let l2 = l * l;
        let matrix = from_columns([
            [Scalar::one(), -l, -&l2],
            [Scalar::zero(), Scalar::one(), l * &Scalar::from_int(2)],
            [Scalar::zero(), Scalar::zero(), Scalar::one()],
        ]);
        let tag = if l.is_zero() { AutTag::Identity } else { AutTag::Gamma(l.clone()) };
        Automorphism { matrix, tag }
    }

    /// The two-parameter family; requires `l1 != l2`.
    pub fn gamma2(l1: &Scalar, l2: &Scalar) -> Result<Self> {
        let d = (l2 - l1).recip().map_err(|_| {
            Error::InvalidParameter(format!("gamma_{{l1,l2}} needs l1 != l2, got {l1} twice"))
        })?;
        let two = Scalar::from_int(2);
        let col = |v: [Scalar; 3]| v.map(|x| &x * &d);
        let matrix = from_columns([
            col([Scalar::one(), -l1, -(l1 * l1)]),
            col([-&two, l1 + l2, &two * &(l1 * l2)]),
            col([Scalar::from_int(-1), l2.clone(), l2 * l2]),
        ]);
        Ok(Automorphism { matrix, tag: AutTag::Gamma2(l1.clone(), l2.clone()) })
    }

    /// `e <-> f`, `h -> -h`.
    pub fn sigma() -> Self {
        let (o, z) = (Scalar::one(), Scalar::zero());
        let matrix = from_columns([
            [z.clone(), z.clone(), o.clone()],
            [z.clone(), -&o, z.clone()],
            [o, z.clone(), z],
        ]);
        Automorphism { matrix, tag: AutTag::Sigma }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn tag(&self) -> &AutTag {
        &self.tag
    }

    pub fn apply(&self, x: &SL2Elt) -> SL2Elt {
        let v = x.coords();
        SL2Elt::from_coords(std::array::from_fn(|r| {
            (0..3).fold(Scalar::zero(), |acc, c| &acc + &(&self.matrix[r][c] * &v[c]))
        }))
    }

    /// `self o other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { matrix: mat_mul(&self.matrix, &other.matrix), tag: AutTag::Composite }.retagged()
    }

    pub fn inverse(&self) -> Automorphism {
        let matrix = mat_inverse(&self.matrix).expect("automorphisms are invertible");
        Automorphism { matrix, tag: AutTag::Composite }.retagged()
    }

    pub fn preserves_brackets(&self) -> bool {
        let basis = SL2Elt::basis();
        basis.iter().all(|x| {
            basis.iter().all(|y| self.apply(&bracket_sl2(x, y)) == bracket_sl2(&self.apply(x), &self.apply(y)))
        })
    }

    /// Recomputes the tag by comparing the matrix against the known families.
    fn retagged(mut self) -> Self {
        self.tag = recognize(&self.matrix);
        self
    }
}

fn recognize(m: &Mat3) -> AutTag {
    if *m == identity() {
        return AutTag::Identity;
    }
    if *m == Automorphism::sigma().matrix {
        return AutTag::Sigma;
    }
    // gamma_l fixes f and sends h to h + 2 l f.
    let l = &m[2][1] * &Scalar::frac(1, 2);
    if Automorphism::gamma(&l).matrix == *m {
        return AutTag::Gamma(l);
    }
    // gamma_{l1,l2}: image of e is (1, -l1, -l1^2)/d, image of f is (-1, l2, l2^2)/d.
    let a = &m[0][0];
    if let Ok(inv_a) = a.recip() {
        let l1 = -(&m[1][0] * &inv_a);
        let l2 = &m[1][2] * &inv_a;
        if l1 != l2 {
            if let Ok(g) = Automorphism::gamma2(&l1, &l2) {
                if g.matrix == *m {
                    return AutTag::Gamma2(l1, l2);
                }
            }
        }
    }
    AutTag::Composite
}

/// Applies an automorphism to an element in `(e, h, f)` coordinates.
pub fn aut_apply(a: &Automorphism, x: &SL2Elt) -> SL2Elt {
    a.apply(x)
}

/// Either composes two automorphisms or inverts the first.
pub enum AutOperand<'a> {
    Compose(&'a Automorphism),
    Invert,
}

pub fn aut_compose_invert(a: &Automorphism, b: AutOperand<'_>) -> Automorphism {
    match b {
        AutOperand::Compose(b) => a.compose(b),
        AutOperand::Invert => a.inverse(),
    }
}

impl fmt::Display for AutTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutTag::Identity => write!(f, "id"),
            AutTag::Gamma(l) => write!(f, "gamma({l})"),
            AutTag::Gamma2(a, b) => write!(f, "gamma2({a},{b})"),
            AutTag::Sigma => write!(f, "sigma"),
            AutTag::Composite => write!(f, "composite"),
        }
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism({}, {:?})", self.tag, self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn gamma_on_h() {
        let l = s("3/2+i");
        let expected = &SL2Elt::h() + &SL2Elt::f().scale(&(&l * &Scalar::from_int(2)));
        assert_eq!(Automorphism::gamma(&l).apply(&SL2Elt::h()), expected);
    }

    #[test]
    fn sigma_on_h() {
        assert_eq!(Automorphism::sigma().apply(&SL2Elt::h()), -&SL2Elt::h());
    }

    #[test]
    fn gamma2_on_h() {
        let g = Automorphism::gamma2(&s("1"), &s("2")).unwrap();
        let expected = SL2Elt::new(s("-2"), s("3"), s("4"));
        assert_eq!(g.apply(&SL2Elt::h()), expected);
    }

    #[test]
    fn gamma2_needs_distinct_parameters() {
        assert!(Automorphism::gamma2(&s("1"), &s("1")).is_err());
    }

    #[test]
    fn compose_and_invert() {
        assert_eq!(Automorphism::gamma(&Scalar::zero()).tag(), &AutTag::Identity);
        let ss = aut_compose_invert(&Automorphism::sigma(), AutOperand::Compose(&Automorphism::sigma()));
        assert_eq!(ss, Automorphism::identity());
        let l = s("-2/3+5*i");
        let inv = aut_compose_invert(&Automorphism::gamma(&l), AutOperand::Invert);
        assert_eq!(inv.tag(), &AutTag::Gamma(-&l));
        assert_eq!(inv, Automorphism::gamma(&-&l));
    }

    #[test]
    fn recognizes_gamma2_after_roundtrip() {
        let g = Automorphism::gamma2(&s("1/2"), &s("-3")).unwrap();
        let back = g.inverse().inverse();
        assert_eq!(back.tag(), &AutTag::Gamma2(s("1/2"), s("-3")));
        assert_eq!(Automorphism::sigma().compose(&Automorphism::gamma(&s("1"))).tag(), &AutTag::Gamma2(s("1"), s("0")));
        assert_eq!(Automorphism::gamma(&s("1")).compose(&Automorphism::sigma()).tag(), &AutTag::Composite);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let mut m = identity();
        m[0][0] = Scalar::from_int(2);
        assert!(Automorphism::from_matrix(m).is_err());
        let singular: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero()));
        assert!(Automorphism::from_matrix(singular).is_err());
        assert!(Automorphism::from_matrix(Automorphism::sigma().matrix().clone()).is_ok());
    }
}
