use proptest::prelude::*;

use sl2vir::exactnum::{LaurentPoly, Scalar, SubalgebraPoly};
use sl2vir::liecore::{bracket_sl2, Automorphism, Gen, SL2Elt};
use sl2vir::modzoo::{make_module, ModVec, ModuleSpec, Sl2Module};
use sl2vir::pbw::{aut_extend, casimir_elt, SL2Monomial, UEnvElt};
use sl2vir::verify::{generator_test, simplicity_test};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4, -9i64..=9, 1i64..=4).prop_map(|(a, b, c, d)| {
        &Scalar::frac(a, b) + &(&Scalar::frac(c, d) * &Scalar::i())
    })
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, scalar()), 0..5).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (n, c) in terms {
            p.add_term(n, &c);
        }
        p
    })
}

fn subalgebra_poly() -> impl Strategy<Value = SubalgebraPoly> {
    (1u32..=3, nonzero(), nonzero(), scalar(), scalar()).prop_map(|(k, a0, ak, b, c)| {
        let mut p = LaurentPoly::monomial(0, a0);
        p.add_term(k as i64, &ak);
        if k >= 2 {
            p.add_term(1, &b);
        }
        if k == 3 {
            p.add_term(2, &c);
        }
        SubalgebraPoly::new(p).unwrap()
    })
}

fn uenv() -> impl Strategy<Value = UEnvElt> {
    prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2), -3i64..=3), 1..4).prop_map(|terms| {
        let mut u = UEnvElt::zero();
        for ((a, b, c), x) in terms {
            u.add_term(SL2Monomial::new(a, b, c), &Scalar::from_int(x));
        }
        u
    })
}

fn sl2() -> impl Strategy<Value = SL2Elt> {
    (scalar(), scalar(), scalar()).prop_map(|(e, h, f)| SL2Elt::new(e, h, f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        } else {
            prop_assert!(a.recip().is_err());
        }
    }

    #[test]
    fn scalar_round_trips(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a.clone());
        prop_assert_eq!(Scalar::from_parts(&a.to_parts()).unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), a);
    }

    #[test]
    fn square_roots(a in scalar()) {
        let sq = &a * &a;
        let r = sq.sqrt_exact().unwrap();
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn laurent_reduction(f in subalgebra_poly(), p in laurent()) {
        let (q, r) = f.reduce(&p);
        prop_assert_eq!(q.mul(f.poly()).add(&r), p);
        let w = f.window();
        prop_assert!(r.terms().all(|(n, _)| w.contains(&n)));
    }

    #[test]
    fn laurent_ring(p in laurent(), q in laurent(), r in laurent()) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
    }

    #[test]
    fn pbw_associative(u in uenv(), v in uenv(), w in uenv()) {
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
    }

    #[test]
    fn pbw_commutator_is_bracket(x in sl2(), y in sl2()) {
        let (ux, uy) = (UEnvElt::from_sl2(&x), UEnvElt::from_sl2(&y));
        let comm = ux.mul(&uy).sub(&uy.mul(&ux));
        prop_assert_eq!(comm, UEnvElt::from_sl2(&bracket_sl2(&x, &y)));
    }

    #[test]
    fn casimir_central(u in uenv()) {
        let c = casimir_elt();
        prop_assert_eq!(c.mul(&u), u.mul(&c));
    }

    #[test]
    fn gamma_is_an_automorphism(l in scalar(), u in uenv(), v in uenv()) {
        let g = Automorphism::gamma(&l);
        prop_assert!(g.preserves_brackets());
        prop_assert_eq!(aut_extend(&g, &u.mul(&v)), aut_extend(&g, &u).mul(&aut_extend(&g, &v)));
        prop_assert_eq!(aut_extend(&g, &casimir_elt()), casimir_elt());
        let back = g.compose(&g.inverse());
        let id = Automorphism::identity();
        prop_assert_eq!(back.matrix(), id.matrix());
    }

    #[test]
    fn simplicity_matches_scan(xi in -8i64..=8, tau in -4i64..=200) {
        let (x, t) = (Scalar::from_int(xi), Scalar::from_int(tau));
        let hits: Vec<i64> = (-120..=120).filter(|i| (xi + 2 * i + 1).pow(2) == tau).collect();
        prop_assert_eq!(simplicity_test(&x, &t).irreducible, hits.is_empty());
        prop_assert_eq!(generator_test(&x, &t).witness_i, hits.iter().copied().filter(|&i| i >= 0).min());
    }
}

fn axiom_holds(spec: &ModuleSpec, depth: u32) -> Result<(), String> {
    let m = make_module(spec, depth + 2).map_err(|e| e.to_string())?;
    let act = |g, v: &ModVec| m.act_gen(g, v).map_err(|e| e.to_string());
    for k in m.window(depth).map_err(|e| e.to_string())? {
        let v = ModVec::basis(k.clone());
        let (e, h, f) = (act(Gen::E, &v)?, act(Gen::H, &v)?, act(Gen::F, &v)?);
        let ef = act(Gen::E, &f)?.sub(&act(Gen::F, &e)?);
        let he = act(Gen::H, &e)?.sub(&act(Gen::E, &h)?);
        let hf = act(Gen::H, &f)?.sub(&act(Gen::F, &h)?);
        if ef != h || he != e.scale(&Scalar::from_int(2)) || hf != f.scale(&Scalar::from_int(-2)) {
            return Err(format!("axiom fails on {k:?}"));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn module_axiom_families(a in scalar(), b in scalar(), l in nonzero()) {
        let specs = [
            ModuleSpec::W { eta: a.clone() },
            ModuleSpec::X { xi: a.clone() },
            ModuleSpec::Xbar { xi: a.clone(), tau: b.clone() },
            ModuleSpec::Vdense { xi: a.clone(), tau: b.clone() },
            ModuleSpec::Verma { delta: a.clone() },
            ModuleSpec::LowVerma { delta: b.clone() },
            ModuleSpec::twist(ModuleSpec::X { xi: a.clone() }, Automorphism::gamma(&l)),
        ];
        for spec in &specs {
            prop_assert!(axiom_holds(spec, 3).is_ok(), "{}", spec.name());
        }
    }

    #[test]
    fn module_axiom_tensor(a in scalar(), b in scalar()) {
        let spec = ModuleSpec::tensor(ModuleSpec::Verma { delta: a }, ModuleSpec::Verma { delta: b });
        prop_assert!(axiom_holds(&spec, 2).is_ok());
    }
}
