use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_module_map, MapCheckReport, SuiteReport};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::liecore::{classify_subalgebra_1d, Automorphism, OneDimKind, SL2Elt, StdGen, VirElt};
use crate::linalg::Echelon;
use crate::modzoo::{casimir_action, make_module, mu_eval, ModVec, ModuleSpec, MuData, Sl2Module};

/// `(t-l1)^n1 (t-l2)^n2 ...`
pub fn poly_string(mu: &MuData) -> String {
    mu.roots
        .iter()
        .map(|(l, n)| if *n == 1 { format!("(t-({l}))") } else { format!("(t-({l}))^{n}") })
        .collect()
}

/// The coefficient groups `p_1;p_2;...`, each written `c0,c1,...`.
pub fn mu_string(mu: &MuData) -> String {
    mu.polys
        .iter()
        .map(|p| p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// `Twist(M,a^-1)`, naming the automorphism before inversion.
pub fn describe_twist(inner: &ModuleSpec, forward: &Automorphism) -> String {
    format!("Twist({inner},{}^-1)", forward.tag())
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionReport {
    pub degree: u32,
    /// The predicted twisted module, absent in the free cubic case.
    pub target: Option<ModuleSpec>,
    pub description: String,
    pub map: Option<MapCheckReport>,
    /// Expected Casimir scalar and whether it acts by it on the window.
    pub casimir: Option<(Scalar, bool)>,
    /// Independent images and the number of monomials tested.
    pub free_rank: Option<(usize, usize)>,
    /// Set when the Whittaker parameter vanishes.
    pub mu_zero: bool,
    pub depth: u32,
    #[serde(skip)]
    params: BTreeMap<String, String>,
}

impl RestrictionReport {
    pub fn flags(&self) -> BTreeMap<String, bool> {
        let mut flags = BTreeMap::new();
        if let Some(m) = &self.map {
            flags.extend(m.flags(""));
        }
        if let Some((_, ok)) = &self.casimir {
            flags.insert("casimir_scalar".to_string(), *ok);
        }
        if let Some((r, n)) = self.free_rank {
            flags.insert("free".to_string(), r == n);
        }
        flags
    }

    pub fn passed(&self) -> bool {
        self.flags().values().all(|&b| b)
    }

    pub fn to_report(&self) -> SuiteReport {
        let mut r = SuiteReport::new("restriction", self.params.clone(), self.depth);
        r.flags = self.flags();
        if let Some(m) = &self.map {
            if !m.all_true() {
                r.witness = m.witness.clone();
            }
        }
        if let Some((rank, n)) = self.free_rank {
            if rank != n {
                r.witness = Some(format!("rank {rank} of {n}"));
            }
        }
        r.detail("target", &self.description);
        if let Some((c, _)) = &self.casimir {
            r.detail("casimir", c);
        }
        if let Some((rank, n)) = self.free_rank {
            r.detail("rank", rank);
            r.detail("monomials", n);
        }
        if self.degree == 2 && self.target.as_ref().is_some_and(|t| matches!(t, ModuleSpec::Twist { inner, .. } if matches!(**inner, ModuleSpec::W { .. }))) {
            r.detail("mu_zero", self.mu_zero);
        }
        r
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Restricts the Vir-module defined by `mu` to sl2 and compares it with the
/// predicted twisted module; in degree 3 checks freeness over `U(sl2)`.
pub fn suite_restriction(mu: &MuData, n: u32) -> Result<RestrictionReport> {
    mu.validate()?;
    let vp = make_module(&ModuleSpec::VirPoly { mu: mu.clone() }, n + 2)?;
    let gen = vp.generator()?;
    let params =
        BTreeMap::from([("mu".to_string(), mu_string(mu)), ("poly".to_string(), poly_string(mu))]);
    let mut report = RestrictionReport {
        degree: mu.degree(),
        target: None,
        description: String::new(),
        map: None,
        casimir: None,
        free_rank: None,
        mu_zero: false,
        depth: n,
        params,
    };
    let (inner, forward) = match (mu.degree(), mu.roots.as_slice()) {
        (1, [(l, _)]) => {
            let delta = &(&Scalar::from_int(2) * &l.recip()?) * &mu.on_shift(0);
            let c = &(&delta + &Scalar::one()) * &(&delta + &Scalar::one());
            let mut ok = true;
            for k in vp.window(n)? {
                let v = ModVec::basis(k);
                ok &= casimir_action(&vp, &v)? == v.scale(&c);
            }
            report.casimir = Some((c, ok));
            (ModuleSpec::Verma { delta }, Automorphism::gamma(l))
        }
        (2, [(l, 2)]) => {
            let eta = mu.on_shift(-1);
            report.mu_zero = eta.is_zero();
            (ModuleSpec::W { eta }, Automorphism::gamma(l))
        }
        (2, [(l1, 1), (l2, 1)]) => {
            let xi = &(&Scalar::from_int(-2) * &(l2 - l1).recip()?) * &mu.on_shift(-1);
            (ModuleSpec::X { xi }, Automorphism::gamma2(l1, l2)?)
        }
        _ => {
            // e_{-1}^a e_0^b e_1^c v for a + b + c < n
            let top = n.saturating_sub(1);
            let mut ech = Echelon::new();
            let mut count = 0;
            for d in 0..=top {
                for a in 0..=d {
                    for b in 0..=d - a {
                        let c = d - a - b;
                        let mut v = gen.clone();
                        for (i, times) in [(1, c), (0, b), (-1, a)] {
                            for _ in 0..times {
                                v = vp.act_vir(&VirElt::e(i), &v)?;
                            }
                        }
                        ech.insert(v.into_sparse());
                        count += 1;
                    }
                }
            }
            debug_assert_eq!(count as u64, binom(top as u64 + 3, 3));
            report.free_rank = Some((ech.rank(), count));
            report.description = "U(sl2)".to_string();
            return Ok(report);
        }
    };
    report.description = describe_twist(&inner, &forward);
    let target = ModuleSpec::twist(inner, forward.inverse());
    let src = make_module(&target, n)?;
    report.map = Some(check_module_map(&src, &vp, &gen, n)?);
    report.target = Some(target);
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorReport {
    pub target: ModuleSpec,
    pub description: String,
    /// The generator is an eigenvector of the twisted Cartan element.
    pub eigenvector: bool,
    pub map: MapCheckReport,
    /// `t^i g` acts on the tensor generator by the summed character.
    pub vir_relations: bool,
    pub central_zero: bool,
    pub depth: u32,
    #[serde(skip)]
    params: BTreeMap<String, String>,
}

impl TensorReport {
    pub fn flags(&self) -> BTreeMap<String, bool> {
        let mut flags = self.map.flags("");
        flags.insert("eigenvector".to_string(), self.eigenvector);
        flags.insert("vir_relations".to_string(), self.vir_relations);
        flags.insert("central_zero".to_string(), self.central_zero);
        flags
    }

    pub fn passed(&self) -> bool {
        self.flags().values().all(|&b| b)
    }

    pub fn to_report(&self) -> SuiteReport {
        let mut r = SuiteReport::new("tensor", self.params.clone(), self.depth);
        r.flags = self.flags();
        if !self.map.all_true() {
            r.witness = self.map.witness.clone();
        }
        r.detail("target", &self.description);
        r
    }
}

/// Tensor product of two twisted Verma modules against the twisted `X`.
pub fn suite_tensor_vermas(l1: &Scalar, l2: &Scalar, m1: &Scalar, m2: &Scalar, n: u32) -> Result<TensorReport> {
    if l1.is_zero() || l2.is_zero() {
        return Err(Error::InvalidParameter("roots must be nonzero".into()));
    }
    if l1 == l2 {
        return Err(Error::InvalidParameter("roots must be distinct".into()));
    }
    let params = BTreeMap::from([
        ("l1".to_string(), l1.to_string()),
        ("l2".to_string(), l2.to_string()),
        ("m1".to_string(), m1.to_string()),
        ("m2".to_string(), m2.to_string()),
    ]);
    let g2 = Automorphism::gamma2(l1, l2)?;
    let description = describe_twist(&ModuleSpec::X { xi: m1 - m2 }, &g2);
    let target = ModuleSpec::twist(ModuleSpec::X { xi: m1 - m2 }, g2.inverse());
    let tensor = make_module(
        &ModuleSpec::tensor(
            ModuleSpec::twist(ModuleSpec::Verma { delta: m1.clone() }, Automorphism::gamma(l1).inverse()),
            ModuleSpec::twist(ModuleSpec::Verma { delta: m2.clone() }, Automorphism::gamma(l2).inverse()),
        ),
        n,
    )?;
    let gen = tensor.generator()?;
    let eigenvector = tensor.act(&g2.apply(&SL2Elt::h()), &gen)? == gen.scale(&(m1 - m2));
    let map = check_module_map(&make_module(&target, n)?, &tensor, &gen, n)?;

    // the Vir-level factorization
    let half = Scalar::frac(1, 2);
    let mu1 = MuData::linear(l1, &(&(m1 * l1) * &half))?;
    let mu2 = MuData::linear(l2, &(&(m2 * l2) * &half))?;
    // on Vir^g the summed character is p_1 (l1 - l2) l1^j + p_2 (l2 - l1) l2^j
    let sum = MuData::new(
        vec![(l1.clone(), 1), (l2.clone(), 1)],
        vec![vec![&mu1.polys[0][0] * &(l1 - l2)], vec![&mu2.polys[0][0] * &(l2 - l1)]],
    )?;
    let vt = make_module(
        &ModuleSpec::tensor(ModuleSpec::VirPoly { mu: mu1.clone() }, ModuleSpec::VirPoly { mu: mu2.clone() }),
        n.max(2),
    )?;
    let vgen = vt.generator()?;
    let g = sum.f();
    let mut vir_relations = true;
    for i in -(n as i64)..=n as i64 {
        let x = VirElt::from_laurent(&g.shift(i));
        let value = &mu_eval(&mu1, &x)? + &mu_eval(&mu2, &x)?;
        vir_relations &= value == sum.on_shift(i) && vt.act_vir(&x, &vgen)? == vgen.scale(&value);
    }
    let central_zero = vt.act_vir(&VirElt::z(), &vgen)?.is_zero();
    Ok(TensorReport { target, description, eigenvector, map, vir_relations, central_zero, depth: n, params })
}

#[derive(Debug, Clone, Serialize)]
pub struct InductionReport {
    pub kind: OneDimKind,
    pub basis: SL2Elt,
    pub target: ModuleSpec,
    pub description: String,
    pub label: String,
    pub map: MapCheckReport,
    pub depth: u32,
    #[serde(skip)]
    params: BTreeMap<String, String>,
}

impl InductionReport {
    pub fn passed(&self) -> bool {
        self.map.all_true()
    }

    pub fn to_report(&self) -> SuiteReport {
        let mut r = SuiteReport::new("induction", self.params.clone(), self.depth);
        r.absorb("", &self.map);
        r.detail("kind", self.kind.to_string());
        r.detail("basis", self.basis.to_string());
        r.detail("target", &self.description);
        r.detail("label", &self.label);
        r
    }
}

/// Induces the character `basis -> mu0` from `span{x}` and compares with
/// the twisted `X` or `W`.
pub fn suite_twist_induction(x: &SL2Elt, mu0: &Scalar, n: u32) -> Result<InductionReport> {
    let class = classify_subalgebra_1d(x)?;
    let (inner, label) = match class.standard {
        StdGen::H => (ModuleSpec::X { xi: mu0.clone() }, "weight induced"),
        StdGen::E if mu0.is_zero() => (ModuleSpec::W { eta: mu0.clone() }, "non-Whittaker induced"),
        StdGen::E => (ModuleSpec::W { eta: mu0.clone() }, "Whittaker"),
    };
    let description = describe_twist(&inner, &class.automorphism);
    let target = ModuleSpec::twist(inner, class.automorphism.inverse());
    let induced = make_module(&ModuleSpec::Induced { basis: class.basis.clone(), mu0: mu0.clone() }, n + 1)?;
    let map = check_module_map(&make_module(&target, n)?, &induced, &induced.generator()?, n)?;
    let params = BTreeMap::from([("mu0".to_string(), mu0.to_string()), ("x".to_string(), x.to_string())]);
    Ok(InductionReport { kind: class.kind, basis: class.basis, target, description, label: label.to_string(), map, depth: n, params })
}
