//! Closed-form actions of the sl2 families on basis vectors, together with
//! the slower rewriting paths they are checked against.

use super::{bad_key, BasisKey, ModVec};
use crate::error::Result;
use crate::exactnum::Scalar;
use crate::liecore::Gen;
use crate::pbw::{SL2Monomial, UEnvElt};

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `(tau - s^2) / 4`.
fn quarter(tau: &Scalar, s: &Scalar) -> Scalar {
    &(tau - &(s * s)) * &Scalar::frac(1, 4)
}

fn index(k: &BasisKey) -> Result<i64> {
    match k {
        BasisKey::Index(i) => Ok(*i),
        _ => Err(bad_key(k)),
    }
}

fn pair(k: &BasisKey) -> Result<(u32, u32)> {
    match k {
        BasisKey::Pair(a, b) => Ok((*a, *b)),
        _ => Err(bad_key(k)),
    }
}

fn nonneg(k: &BasisKey) -> Result<i64> {
    let i = index(k)?;
    if i < 0 {
        return Err(bad_key(k));
    }
    Ok(i)
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub(super) fn w_act(eta: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let (a, b) = pair(k)?;
    let mut out = ModVec::zero();
    match g {
        Gen::F => out.add_term(BasisKey::Pair(a + 1, b), &Scalar::one()),
        Gen::H => {
            out.add_term(BasisKey::Pair(a, b + 1), &Scalar::one());
            out.add_term(BasisKey::Pair(a, b), &int(-2 * a as i64));
        }
        Gen::E => {
            // eta f^a (h-2)^b w + a f^(a-1) (h - a + 1) h^b w
            let mut pow2 = 1i64;
            for j in (0..=b).rev() {
                out.add_term(BasisKey::Pair(a, j), &(eta * &int(binomial(b, j) * pow2)));
                pow2 *= -2;
            }
            if a > 0 {
                let a64 = a as i64;
                out.add_term(BasisKey::Pair(a - 1, b + 1), &int(a64));
                out.add_term(BasisKey::Pair(a - 1, b), &int(-a64 * (a64 - 1)));
            }
        }
    }
    Ok(out)
}

pub(super) fn x_act(xi: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let (a, l) = pair(k)?;
    let weight = xi + &int(2 * l as i64 - 2 * a as i64);
    Ok(match g {
        Gen::F => ModVec::basis(BasisKey::Pair(a + 1, l)),
        Gen::H => ModVec::term(k.clone(), weight),
        Gen::E => {
            // e f^k = f^k e + k f^(k-1) (h - k + 1)
            let mut out = ModVec::basis(BasisKey::Pair(a, l + 1));
            if a > 0 {
                let c = xi + &int(2 * l as i64 - a as i64 + 1);
                out.add_term(BasisKey::Pair(a - 1, l), &(&int(a as i64) * &c));
            }
            out
        }
    })
}

pub(super) fn xbar_act(xi: &Scalar, tau: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let i = index(k)?;
    Ok(match g {
        Gen::H => ModVec::term(k.clone(), xi + &int(2 * i)),
        Gen::E if i >= 0 => ModVec::basis(BasisKey::Index(i + 1)),
        // e f^k = 1/4 (tau - (xi + 1 - 2k)^2) f^(k-1)
        Gen::E => ModVec::term(BasisKey::Index(i + 1), quarter(tau, &(xi + &int(1 + 2 * i)))),
        Gen::F if i <= 0 => ModVec::basis(BasisKey::Index(i - 1)),
        // f e^l = 1/4 (tau - (xi + 2l - 1)^2) e^(l-1)
        Gen::F => ModVec::term(BasisKey::Index(i - 1), quarter(tau, &(xi + &int(2 * i - 1)))),
    })
}

pub(super) fn vdense_act(xi: &Scalar, tau: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let n = index(k)?;
    let eta = xi + &int(2 * n);
    Ok(match g {
        Gen::F => ModVec::basis(BasisKey::Index(n - 1)),
        Gen::H => ModVec::term(k.clone(), eta),
        Gen::E => ModVec::term(BasisKey::Index(n + 1), quarter(tau, &(&eta + &Scalar::one()))),
    })
}

pub(super) fn verma_act(delta: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let n = nonneg(k)?;
    Ok(match g {
        Gen::F => ModVec::basis(BasisKey::Index(n + 1)),
        Gen::H => ModVec::term(k.clone(), delta - &int(2 * n)),
        Gen::E if n == 0 => ModVec::zero(),
        Gen::E => ModVec::term(BasisKey::Index(n - 1), &int(n) * &(delta - &int(n - 1))),
    })
}

pub(super) fn lowverma_act(delta: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let n = nonneg(k)?;
    Ok(match g {
        Gen::E => ModVec::basis(BasisKey::Index(n + 1)),
        Gen::H => ModVec::term(k.clone(), delta + &int(2 * n)),
        Gen::F if n == 0 => ModVec::zero(),
        Gen::F => ModVec::term(BasisKey::Index(n - 1), -&(&int(n) * &(delta + &int(n - 1)))),
    })
}

/// Multiplies `g` into `m` in U(sl2) and hands each resulting PBW monomial
/// to `eval`, which knows how the generator is annihilated.
fn through_pbw(g: Gen, m: SL2Monomial, mut eval: impl FnMut(&SL2Monomial, &Scalar, &mut ModVec)) -> ModVec {
    let u = UEnvElt::monomial(m, Scalar::one()).left_mul_gen(g);
    let mut out = ModVec::zero();
    for (mono, c) in u.terms() {
        eval(mono, c, &mut out);
    }
    out
}

pub(super) fn w_generic(eta: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let (a, b) = pair(k)?;
    // f^a h^b e^c w = eta^c f^a h^b w
    Ok(through_pbw(g, SL2Monomial::new(a, b, 0), |m, c, out| {
        out.add_term(BasisKey::Pair(m.a, m.b), &(c * &eta.pow(m.c as i64).expect("nonnegative power")))
    }))
}

pub(super) fn x_generic(xi: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let (a, l) = pair(k)?;
    // f^a h^b e^c x = (xi + 2c)^b f^a e^c x
    Ok(through_pbw(g, SL2Monomial::new(a, 0, l), |m, c, out| {
        let w = xi + &int(2 * m.c as i64);
        out.add_term(BasisKey::Pair(m.a, m.c), &(c * &w.pow(m.b as i64).expect("nonnegative power")))
    }))
}

pub(super) fn verma_generic(delta: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let n = nonneg(k)?;
    Ok(through_pbw(g, SL2Monomial::new(n as u32, 0, 0), |m, c, out| {
        if m.c == 0 {
            out.add_term(BasisKey::Index(m.a as i64), &(c * &delta.pow(m.b as i64).expect("nonnegative power")));
        }
    }))
}

/// `V(delta)` is the sigma-twist of `M(-delta)` with `e^k m <-> f^k m`.
pub(super) fn lowverma_generic(delta: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let neg = -delta;
    let v = match g {
        Gen::E => verma_generic(&neg, Gen::F, k)?,
        Gen::F => verma_generic(&neg, Gen::E, k)?,
        Gen::H => verma_generic(&neg, Gen::H, k)?.scale(&int(-1)),
    };
    Ok(v)
}

/// Acts in `X(xi)` and then rewrites mixed `f^k e^l` through
/// `fe = 1/4 (c - (h+1)^2)` with `c -> tau` until only `e^l` or `f^k` remain.
pub(super) fn xbar_generic(xi: &Scalar, tau: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let i = index(k)?;
    let lifted = if i >= 0 { BasisKey::Pair(0, i as u32) } else { BasisKey::Pair((-i) as u32, 0) };
    let in_x = x_generic(xi, g, &lifted)?;
    let mut out = ModVec::zero();
    for (key, c) in in_x.terms() {
        let (mut a, mut l) = pair(key)?;
        let mut coef = c.clone();
        while a > 0 && l > 0 {
            // f^a e^l = f^(a-1) (fe) e^(l-1), with h = xi + 2(l-1) on e^(l-1)
            coef = &coef * &quarter(tau, &(xi + &int(2 * (l as i64 - 1) + 1)));
            a -= 1;
            l -= 1;
        }
        let idx = if a > 0 { -(a as i64) } else { l as i64 };
        out.add_term(BasisKey::Index(idx), &coef);
    }
    Ok(out)
}

/// `e` recovered from the Casimir: `f e v = 1/4 (tau - (h+1)^2) v` and `f`
/// shifts `v_eta` bijectively onto `v_{eta-2}`.
pub(super) fn vdense_generic(xi: &Scalar, tau: &Scalar, g: Gen, k: &BasisKey) -> Result<ModVec> {
    let n = index(k)?;
    let eta = xi + &int(2 * n);
    Ok(match g {
        Gen::F => ModVec::basis(BasisKey::Index(n - 1)),
        Gen::H => ModVec::term(k.clone(), eta),
        Gen::E => {
            let fe = &(tau - &(&(&eta + &Scalar::one()) * &(&eta + &Scalar::one()))) * &Scalar::frac(1, 4);
            // f^{-1}(fe v_eta): the unique multiple of v_{eta+2} that f sends to fe v_eta
            ModVec::term(BasisKey::Index(n + 1), fe)
        }
    })
}
