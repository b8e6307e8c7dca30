use std::collections::BTreeMap;

use serde::Serialize;

use super::simplicity::generator_test;
use super::{check_module_map, MapCheckReport, SuiteReport};
use crate::error::Result;
use crate::exactnum::Scalar;
use crate::liecore::Gen;
use crate::linalg::Echelon;
use crate::modzoo::{casimir_action, make_module, BasisKey, ModVec, ModuleHandle, ModuleSpec, Sl2Module};
use crate::pbw::SL2Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DenseBranch {
    IsoToVdense,
    CompositionSeries,
}

#[derive(Debug, Clone, Serialize)]
pub struct DenseReport {
    pub branch: DenseBranch,
    pub j0: Option<u64>,
    /// Largest `n <= 3` with every step up to `n` verified strict, or -1.
    pub filtration_strict_to: i32,
    /// Highest weight of the quotient and lowest weight of the submodule.
    pub pieces: Option<(Scalar, Scalar)>,
    pub flags: BTreeMap<String, bool>,
    pub witness: Option<String>,
    /// The weight-preserving map `Xbar(xi, tau) -> Vdense` in the reducible case.
    pub candidate: Option<MapCheckReport>,
    pub depth: u32,
}

impl DenseReport {
    pub fn passed(&self) -> bool {
        self.flags.values().all(|&b| b)
    }

    pub fn to_report(&self, xi: &Scalar, tau: &Scalar) -> SuiteReport {
        let params = BTreeMap::from([("tau".to_string(), tau.to_string()), ("xi".to_string(), xi.to_string())]);
        let mut r = SuiteReport::new("dense", params, self.depth);
        r.flags = self.flags.clone();
        r.witness = self.witness.clone();
        r.detail("branch", self.branch);
        r.detail("filtration_strict_to", self.filtration_strict_to);
        if let Some(j0) = self.j0 {
            r.detail("j0", j0);
        }
        if let Some((q, s)) = &self.pieces {
            r.detail("quotient", format!("Verma({q})"));
            r.detail("sub", format!("LowVerma({s})"));
        }
        if let Some(c) = &self.candidate {
            r.detail("candidate_map", c);
        }
        r
    }
}

/// `Xbar(xi, tau) / Y` on the keys `e^i x, i <= j0` and `f^k x`.
pub struct XbarQuotient<'a> {
    pub xbar: &'a ModuleHandle,
    pub j0: i64,
}

impl Sl2Module for XbarQuotient<'_> {
    fn act_gen(&self, g: Gen, v: &ModVec) -> Result<ModVec> {
        let out = self.xbar.act_gen(g, v)?;
        Ok(ModVec::from_sparse(
            out.into_sparse().into_iter().filter(|(k, _)| matches!(k, BasisKey::Index(i) if *i <= self.j0)).collect(),
        ))
    }

    fn window(&self, depth: u32) -> Result<Vec<BasisKey>> {
        Ok((self.j0 - depth as i64..=self.j0).rev().map(BasisKey::Index).collect())
    }
}

/// `Y = span{e^i x : i > j0}` inside `Xbar(xi, tau)`.
pub struct XbarSub<'a> {
    pub xbar: &'a ModuleHandle,
    pub j0: i64,
}

impl Sl2Module for XbarSub<'_> {
    fn act_gen(&self, g: Gen, v: &ModVec) -> Result<ModVec> {
        self.xbar.act_gen(g, v)
    }

    fn window(&self, depth: u32) -> Result<Vec<BasisKey>> {
        Ok((self.j0 + 1..=self.j0 + 1 + depth as i64).map(BasisKey::Index).collect())
    }
}

struct CasimirShift<'a> {
    x: &'a ModuleHandle,
    tau: Scalar,
}

impl CasimirShift<'_> {
    /// `(c - tau) v`.
    fn apply(&self, v: &ModVec) -> Result<ModVec> {
        Ok(casimir_action(self.x, v)?.sub(&v.scale(&self.tau)))
    }

    fn pow(&self, v: &ModVec, n: u32) -> Result<ModVec> {
        let mut w = v.clone();
        for _ in 0..n {
            w = self.apply(&w)?;
        }
        Ok(w)
    }

    /// Echelon form of `(c - tau)^n b` over the basis vectors `b` of depth `<= d`.
    fn span(&self, n: u32, d: Option<u32>) -> Result<Echelon<BasisKey>> {
        let mut ech = Echelon::new();
        if let Some(d) = d {
            for k in self.x.window(d)? {
                ech.insert(self.pow(&ModVec::basis(k), n)?.into_sparse());
            }
        }
        Ok(ech)
    }
}

/// Representatives `e^l x`, `f^k x` in `X(xi)` of the basis of `Xbar`.
fn xbar_reps(n: u32) -> Vec<ModVec> {
    let mut out = vec![ModVec::basis(BasisKey::Pair(0, 0))];
    for i in 1..=n {
        out.push(ModVec::basis(BasisKey::Pair(0, i)));
        out.push(ModVec::basis(BasisKey::Pair(i, 0)));
    }
    out
}

fn binom2(n: u32) -> usize {
    ((n + 2) * (n + 1) / 2) as usize
}

/// Checks the filtration of `X(xi)` by powers of `c - tau`, the shift maps
/// between consecutive quotients, and the structure of `Xbar(xi, tau)`.
pub fn suite_dense(xi: &Scalar, tau: &Scalar, n: u32) -> Result<DenseReport> {
    let n = n.max(2);
    let x = make_module(&ModuleSpec::X { xi: xi.clone() }, n)?;
    let xbar = make_module(&ModuleSpec::Xbar { xi: xi.clone(), tau: tau.clone() }, n)?;
    let vdense = make_module(&ModuleSpec::Vdense { xi: xi.clone(), tau: tau.clone() }, n)?;
    let cm = CasimirShift { x: &x, tau: tau.clone() };
    let mut flags = BTreeMap::new();
    let mut witness: Option<String> = None;

    // c - tau is injective on the window
    let inj = cm.span(1, Some(n))?.rank() == x.window(n)?.len();
    flags.insert("c_minus_tau_injective".to_string(), inj);

    // (c - tau)^k x is not in (c - tau)^(k+1) X
    let mut strict_to = -1;
    let gen = x.generator()?;
    for k in 0..=3u32 {
        let d = n.max(2 * k + 2);
        let ech = cm.span(k + 1, d.checked_sub(2 * (k + 1)))?;
        if ech.contains(cm.pow(&gen, k)?.into_sparse()) {
            witness.get_or_insert_with(|| format!("(c-tau)^{k} x lies in the next filtration step"));
            break;
        }
        strict_to = k as i32;
    }
    flags.insert("filtration_strict".to_string(), strict_to == 3);

    // e^l x, f^k x complete (c - tau) X to the whole window
    let mut ech = cm.span(1, n.checked_sub(2))?;
    for r in xbar_reps(n) {
        ech.insert(r.into_sparse());
    }
    flags.insert("xbar_basis".to_string(), ech.rank() == binom2(n));

    // v -> (c - tau) v is injective from step k to step k + 1
    let mut shift_ok = true;
    for k in 0..=1u32 {
        let d = n + 2 * (k + 1);
        let mut ech = cm.span(k + 2, d.checked_sub(2 * (k + 2)))?;
        for r in xbar_reps(n) {
            if !ech.insert(cm.pow(&r, k + 1)?.into_sparse()) {
                shift_ok = false;
            }
        }
    }
    flags.insert("shift_injective".to_string(), shift_ok);
    if !shift_ok {
        witness.get_or_insert_with(|| "shift map has a kernel".to_string());
    }

    let gt = generator_test(xi, tau);
    let mut report = DenseReport {
        branch: DenseBranch::IsoToVdense,
        j0: None,
        filtration_strict_to: strict_to,
        pieces: None,
        flags,
        witness,
        candidate: None,
        depth: n,
    };
    match gt.witness_i {
        None => branch_iso(&xbar, &vdense, xi, tau, n, &mut report)?,
        Some(j0) => branch_series(&xbar, &vdense, xi, j0, n, &mut report)?,
    }
    Ok(report)
}

fn branch_iso(
    xbar: &ModuleHandle,
    vdense: &ModuleHandle,
    xi: &Scalar,
    tau: &Scalar,
    n: u32,
    report: &mut DenseReport,
) -> Result<()> {
    // e^l x -> (prod_{j<l} 1/4 (tau - (xi + 2j + 1)^2)) v_{xi+2l}, f^k x -> v_{xi-2k}
    let mut scale: BTreeMap<i64, Scalar> = BTreeMap::new();
    let mut acc = Scalar::one();
    for l in 0..=n as i64 + 1 {
        scale.insert(l, acc.clone());
        let s = xi + &Scalar::from_int(2 * l + 1);
        acc = &acc * &(&(tau - &(&s * &s)) * &Scalar::frac(1, 4));
    }
    let theta = |v: &ModVec| {
        let mut out = ModVec::zero();
        for (k, c) in v.terms() {
            let BasisKey::Index(i) = k else { continue };
            let factor = if *i > 0 { scale[i].clone() } else { Scalar::one() };
            out.add_term(k.clone(), &(c * &factor));
        }
        out
    };
    let mut intertwines = true;
    for i in -(n as i64 - 1)..=(n as i64 - 1) {
        let v = ModVec::basis(BasisKey::Index(i));
        for g in Gen::ALL {
            if theta(&xbar.act_gen(g, &v)?) != vdense.act_gen(g, &theta(&v))? {
                intertwines = false;
                report.witness.get_or_insert_with(|| format!("theta fails for {} at index {i}", g.name()));
            }
        }
    }
    report.flags.insert("explicit_map_intertwines".to_string(), intertwines);
    let m = check_module_map(xbar, vdense, &vdense.generator()?, n)?;
    if !m.all_true() {
        report.witness.get_or_insert_with(|| m.witness.clone().unwrap_or_default());
    }
    report.flags.extend(m.flags("map_"));
    Ok(())
}

fn branch_series(
    xbar: &ModuleHandle,
    vdense: &ModuleHandle,
    xi: &Scalar,
    j0: i64,
    n: u32,
    report: &mut DenseReport,
) -> Result<()> {
    report.branch = DenseBranch::CompositionSeries;
    report.j0 = Some(j0 as u64);
    let top = xi + &Scalar::from_int(2 * j0);
    let bottom = xi + &Scalar::from_int(2 * j0 + 2);
    report.pieces = Some((top.clone(), bottom.clone()));
    let flags = &mut report.flags;

    // Y is stable under e, h, f
    let mut invariant = true;
    for i in j0 + 1..=j0 + 1 + n as i64 {
        for g in Gen::ALL {
            let out = xbar.act_gen(g, &ModVec::basis(BasisKey::Index(i)))?;
            invariant &= out.terms().all(|(k, _)| matches!(k, BasisKey::Index(m) if *m > j0));
        }
    }
    flags.insert("y_invariant".to_string(), invariant);
    let lowest = ModVec::basis(BasisKey::Index(j0 + 1));
    flags.insert("f_kills_lowest".to_string(), xbar.act_gen(Gen::F, &lowest)?.is_zero());

    let verma = make_module(&ModuleSpec::Verma { delta: top.clone() }, n)?;
    let quotient = XbarQuotient { xbar, j0 };
    let q = check_module_map(&verma, &quotient, &ModVec::basis(BasisKey::Index(j0)), n)?;
    let low = make_module(&ModuleSpec::LowVerma { delta: bottom.clone() }, n)?;
    let sub = XbarSub { xbar, j0 };
    let s = check_module_map(&low, &sub, &lowest, n)?;
    flags.extend(q.flags("quotient_"));
    flags.extend(s.flags("sub_"));
    for m in [&q, &s] {
        if !m.all_true() {
            report.witness.get_or_insert_with(|| m.witness.clone().unwrap_or_default());
        }
    }

    // each weight xi + 2s is covered once: by the quotient for s <= j0, by Y above
    let mut ranks_ok = true;
    for s in j0 - n as i64..=j0 + 1 + n as i64 {
        let w = xi + &Scalar::from_int(2 * s);
        let count = |keys: Vec<BasisKey>| -> Result<usize> {
            let mut n = 0;
            for k in keys {
                n += usize::from(xbar.weight(&k)? == w);
            }
            Ok(n)
        };
        let qd = count(quotient.window(n)?)?;
        let sd = count(sub.window(n)?)?;
        ranks_ok &= qd == usize::from(s <= j0) && sd == usize::from(s > j0) && qd + sd == count(vec![BasisKey::Index(s)])?;
    }
    flags.insert("window_ranks".to_string(), ranks_ok);

    let d = n.max(j0 as u32 + 1);
    let c = check_module_map(xbar, vdense, &vdense.generator()?, d)?;
    let expected = SL2Monomial::new(0, 0, j0 as u32 + 1).to_string();
    let fails_as_expected = c.relations_hold && !c.injective_up_to_n && c.witness.as_deref() == Some(expected.as_str());
    report.flags.insert("candidate_map_not_injective".to_string(), fails_as_expected);
    report.candidate = Some(c);
    Ok(())
}
