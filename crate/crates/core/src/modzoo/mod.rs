//! The module families and a uniform exact action interface.
//!
//! Vectors are finite combinations of family-specific basis keys:
//!
//! | family | key | vector |
//! |---|---|---|
//! | `W(eta)` | `Pair(a, b)` | `f^a h^b w` |
//! | `X(xi)` | `Pair(k, l)` | `f^k e^l x` |
//! | `Xbar(xi, tau)` | `Index(i)` | `e^i x` for `i >= 0`, `f^-i x` otherwise |
//! | `Vdense(xi, tau)` | `Index(n)` | `v_{xi + 2n}` |
//! | `Verma(delta)` | `Index(k)` | `f^k m` |
//! | `LowVerma(delta)` | `Index(k)` | `e^k m` |
//! | `VirPoly`, `Induced` | `Mono(m)` | standard monomial `m` applied to the generator |
//! | `Twist` | inner key | same space, action through the automorphism |
//! | `Tensor` | `Tensor(a, b)` | `a ⊗ b` |

mod families;
mod mu;
mod quotient;
mod virpoly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use mu::{divide_by_f, mu_eval, MuData};
pub use quotient::IdealQuotient;
pub use virpoly::VirPolyModule;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::liecore::{embed_sl2, Automorphism, Gen, SL2Elt, VirElt};
use crate::pbw::{aut_extend, casimir_elt, SL2Monomial, UEnvElt};

/// Default truncation depth.
pub const DEFAULT_DEPTH: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    Index(i64),
    Pair(u32, u32),
    Mono(SL2Monomial),
    Tensor(Box<BasisKey>, Box<BasisKey>),
}

impl BasisKey {
    pub fn tensor(a: BasisKey, b: BasisKey) -> BasisKey {
        BasisKey::Tensor(Box::new(a), Box::new(b))
    }

    pub fn depth(&self) -> u32 {
        match self {
            BasisKey::Index(i) => i.unsigned_abs() as u32,
            BasisKey::Pair(a, b) => a + b,
            BasisKey::Mono(m) => m.degree(),
            BasisKey::Tensor(a, b) => a.depth() + b.depth(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            BasisKey::Index(i) => json!([i]),
            BasisKey::Pair(a, b) => json!([a, b]),
            BasisKey::Mono(m) => json!([m.a, m.b, m.c]),
            BasisKey::Tensor(a, b) => json!([a.to_json(), b.to_json()]),
        }
    }
}

/// Depth first, then key order.
pub fn key_order(a: &BasisKey, b: &BasisKey) -> std::cmp::Ordering {
    a.depth().cmp(&b.depth()).then_with(|| a.cmp(b))
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Index(i) => write!(f, "{i}"),
            BasisKey::Pair(a, b) => write!(f, "{a},{b}"),
            BasisKey::Mono(m) => write!(f, "{},{},{}", m.a, m.b, m.c),
            BasisKey::Tensor(a, b) => write!(f, "({a})x({b})"),
        }
    }
}

/// A finite combination of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModVec {
    terms: BTreeMap<BasisKey, Scalar>,
}

impl ModVec {
    pub fn zero() -> Self {
        ModVec::default()
    }

    pub fn basis(k: BasisKey) -> Self {
        ModVec::term(k, Scalar::one())
    }

    pub fn term(k: BasisKey, c: Scalar) -> Self {
        let mut v = ModVec::zero();
        v.add_term(k, &c);
        v
    }

    pub fn add_term(&mut self, k: BasisKey, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ModVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &ModVec) -> ModVec {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &ModVec) -> ModVec {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> ModVec {
        let mut out = ModVec::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &BasisKey) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn depth(&self) -> u32 {
        self.terms.keys().map(BasisKey::depth).max().unwrap_or(0)
    }

    pub fn into_sparse(self) -> BTreeMap<BasisKey, Scalar> {
        self.terms
    }

    pub fn as_sparse(&self) -> &BTreeMap<BasisKey, Scalar> {
        &self.terms
    }

    pub fn from_sparse(terms: BTreeMap<BasisKey, Scalar>) -> Self {
        let mut v = ModVec::zero();
        for (k, c) in terms {
            v.add_term(k, &c);
        }
        v
    }

    fn from_uenv(u: &UEnvElt) -> ModVec {
        let mut v = ModVec::zero();
        for (m, c) in u.terms() {
            v.add_term(BasisKey::Mono(*m), c);
        }
        v
    }

    fn to_uenv(&self) -> Result<UEnvElt> {
        let mut u = UEnvElt::zero();
        for (k, c) in &self.terms {
            match k {
                BasisKey::Mono(m) => u.add_term(*m, c),
                _ => return Err(Error::InvalidParameter(format!("key {k} is not a monomial key"))),
            }
        }
        Ok(u)
    }

    /// Tensor product of two vectors.
    pub fn tensor(a: &ModVec, b: &ModVec) -> ModVec {
        let mut out = ModVec::zero();
        for (ka, x) in &a.terms {
            for (kb, y) in &b.terms {
                out.add_term(BasisKey::tensor(ka.clone(), kb.clone()), &(x * y));
            }
        }
        out
    }
}

/// Anything sl2 acts on with an enumerable truncated basis.
pub trait Sl2Module {
    fn act_gen(&self, g: Gen, v: &ModVec) -> Result<ModVec>;

    /// Basis keys of depth at most `depth`, sorted by [`key_order`].
    fn window(&self, depth: u32) -> Result<Vec<BasisKey>>;

    fn act(&self, x: &SL2Elt, v: &ModVec) -> Result<ModVec> {
        let mut out = ModVec::zero();
        for (g, c) in x.terms() {
            out.add_scaled(&self.act_gen(g, v)?, c);
        }
        Ok(out)
    }

    fn act_uenv(&self, u: &UEnvElt, v: &ModVec) -> Result<ModVec> {
        let mut out = ModVec::zero();
        for (m, c) in u.terms() {
            let mut w = v.clone();
            for g in m.word().into_iter().rev() {
                w = self.act_gen(g, &w)?;
            }
            out.add_scaled(&w, c);
        }
        Ok(out)
    }
}

/// Serializable description of a module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ModuleSpec {
    W { eta: Scalar },
    X { xi: Scalar },
    Xbar { xi: Scalar, tau: Scalar },
    Vdense { xi: Scalar, tau: Scalar },
    Verma { delta: Scalar },
    LowVerma { delta: Scalar },
    VirPoly { mu: MuData },
    Induced { basis: SL2Elt, mu0: Scalar },
    Twist { inner: Box<ModuleSpec>, automorphism: Automorphism },
    Tensor { left: Box<ModuleSpec>, right: Box<ModuleSpec> },
}

impl ModuleSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModuleSpec::W { .. } => "w",
            ModuleSpec::X { .. } => "x",
            ModuleSpec::Xbar { .. } => "xbar",
            ModuleSpec::Vdense { .. } => "vdense",
            ModuleSpec::Verma { .. } => "verma",
            ModuleSpec::LowVerma { .. } => "low_verma",
            ModuleSpec::VirPoly { .. } => "vir_poly",
            ModuleSpec::Induced { .. } => "induced",
            ModuleSpec::Twist { .. } => "twist",
            ModuleSpec::Tensor { .. } => "tensor",
        }
    }

    pub fn twist(inner: ModuleSpec, automorphism: Automorphism) -> ModuleSpec {
        ModuleSpec::Twist { inner: Box::new(inner), automorphism }
    }

    pub fn tensor(left: ModuleSpec, right: ModuleSpec) -> ModuleSpec {
        ModuleSpec::Tensor { left: Box::new(left), right: Box::new(right) }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::W { eta } => write!(f, "W({eta})"),
            ModuleSpec::X { xi } => write!(f, "X({xi})"),
            ModuleSpec::Xbar { xi, tau } => write!(f, "Xbar({xi},{tau})"),
            ModuleSpec::Vdense { xi, tau } => write!(f, "Vdense({xi},{tau})"),
            ModuleSpec::Verma { delta } => write!(f, "Verma({delta})"),
            ModuleSpec::LowVerma { delta } => write!(f, "LowVerma({delta})"),
            ModuleSpec::VirPoly { mu } => write!(f, "VirPoly({})", mu.f()),
            ModuleSpec::Induced { basis, mu0 } => write!(f, "Induced({basis};{mu0})"),
            ModuleSpec::Twist { inner, automorphism } => write!(f, "Twist({inner},{})", automorphism.tag()),
            ModuleSpec::Tensor { left, right } => write!(f, "Tensor({left},{right})"),
        }
    }
}

#[derive(Debug)]
pub struct InducedModule {
    basis: SL2Elt,
    mu0: Scalar,
    quotient: IdealQuotient,
}

#[derive(Debug, Clone)]
enum Kind {
    W(Scalar),
    X(Scalar),
    Xbar(Scalar, Scalar),
    Vdense(Scalar, Scalar),
    Verma(Scalar),
    LowVerma(Scalar),
    VirPoly(Arc<VirPolyModule>),
    Induced(Arc<InducedModule>),
    Twist(Box<ModuleHandle>, Automorphism),
    Tensor(Box<ModuleHandle>, Box<ModuleHandle>),
}

/// A validated module; cheap to clone and safe to share between threads.
#[derive(Debug, Clone)]
pub struct ModuleHandle {
    spec: ModuleSpec,
    depth: u32,
    kind: Kind,
}

/// Validates a spec and precomputes whatever normal-form tables it needs.
/// `depth` bounds the tables of the `VirPoly` and `Induced` families.
pub fn make_module(spec: &ModuleSpec, depth: u32) -> Result<ModuleHandle> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    let kind = match spec {
        ModuleSpec::W { eta } => Kind::W(eta.clone()),
        ModuleSpec::X { xi } => Kind::X(xi.clone()),
        ModuleSpec::Xbar { xi, tau } => Kind::Xbar(xi.clone(), tau.clone()),
        ModuleSpec::Vdense { xi, tau } => Kind::Vdense(xi.clone(), tau.clone()),
        ModuleSpec::Verma { delta } => Kind::Verma(delta.clone()),
        ModuleSpec::LowVerma { delta } => Kind::LowVerma(delta.clone()),
        ModuleSpec::VirPoly { mu } => Kind::VirPoly(Arc::new(VirPolyModule::new(mu.clone(), depth)?)),
        ModuleSpec::Induced { basis, mu0 } => {
            if basis.is_zero() {
                return Err(Error::InvalidParameter("the inducing subalgebra needs a nonzero basis".into()));
            }
            let rel = [(UEnvElt::from_sl2(basis), mu0.clone())];
            let quotient = IdealQuotient::new(&rel, depth);
            Kind::Induced(Arc::new(InducedModule { basis: basis.clone(), mu0: mu0.clone(), quotient }))
        }
        ModuleSpec::Twist { inner, automorphism } => {
            let a = Automorphism::from_matrix(automorphism.matrix().clone())?;
            Kind::Twist(Box::new(make_module(inner, depth)?), a)
        }
        ModuleSpec::Tensor { left, right } => {
            Kind::Tensor(Box::new(make_module(left, depth)?), Box::new(make_module(right, depth)?))
        }
    };
    Ok(ModuleHandle { spec: spec.clone(), depth, kind })
}

fn sorted(mut keys: Vec<BasisKey>) -> Vec<BasisKey> {
    keys.sort_by(key_order);
    keys
}

impl ModuleHandle {
    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn virpoly(&self) -> Option<&VirPolyModule> {
        match &self.kind {
            Kind::VirPoly(m) => Some(m),
            _ => None,
        }
    }

    /// Whether the module is a Vir-module rather than only an sl2-module.
    pub fn is_vir(&self) -> bool {
        match &self.kind {
            Kind::VirPoly(_) => true,
            Kind::Tensor(a, b) => a.is_vir() && b.is_vir(),
            _ => false,
        }
    }

    /// The distinguished generator of a cyclic family.
    pub fn generator(&self) -> Result<ModVec> {
        match &self.kind {
            Kind::W(_) | Kind::X(_) => Ok(ModVec::basis(BasisKey::Pair(0, 0))),
            Kind::Xbar(..) | Kind::Vdense(..) | Kind::Verma(_) | Kind::LowVerma(_) => {
                Ok(ModVec::basis(BasisKey::Index(0)))
            }
            Kind::VirPoly(_) | Kind::Induced(_) => Ok(ModVec::basis(BasisKey::Mono(SL2Monomial::ONE))),
            Kind::Twist(inner, _) => inner.generator(),
            Kind::Tensor(a, b) => Ok(ModVec::tensor(&a.generator()?, &b.generator()?)),
        }
    }

    fn act_gen_key(&self, g: Gen, k: &BasisKey) -> Result<ModVec> {
        match &self.kind {
            Kind::W(eta) => families::w_act(eta, g, k),
            Kind::X(xi) => families::x_act(xi, g, k),
            Kind::Xbar(xi, tau) => families::xbar_act(xi, tau, g, k),
            Kind::Vdense(xi, tau) => families::vdense_act(xi, tau, g, k),
            Kind::Verma(d) => families::verma_act(d, g, k),
            Kind::LowVerma(d) => families::lowverma_act(d, g, k),
            Kind::VirPoly(m) => {
                let BasisKey::Mono(mono) = k else { return Err(bad_key(k)) };
                let u = m.act_vir(&embed_sl2(&SL2Elt::gen(g)), &UEnvElt::monomial(*mono, Scalar::one()))?;
                Ok(ModVec::from_uenv(&u))
            }
            Kind::Induced(m) => {
                let BasisKey::Mono(mono) = k else { return Err(bad_key(k)) };
                let u = UEnvElt::monomial(*mono, Scalar::one()).left_mul_gen(g);
                Ok(ModVec::from_uenv(&m.quotient.normal_form(&u)?))
            }
            Kind::Twist(inner, a) => inner.act(&a.apply(&SL2Elt::gen(g)), &ModVec::basis(k.clone())),
            Kind::Tensor(l, r) => {
                let BasisKey::Tensor(a, b) = k else { return Err(bad_key(k)) };
                let (va, vb) = (ModVec::basis((**a).clone()), ModVec::basis((**b).clone()));
                Ok(ModVec::tensor(&l.act_gen(g, &va)?, &vb).add(&ModVec::tensor(&va, &r.act_gen(g, &vb)?)))
            }
        }
    }

    /// Action of a Virasoro element. sl2 families accept only the image of
    /// the embedding.
    pub fn act_vir(&self, x: &VirElt, v: &ModVec) -> Result<ModVec> {
        match &self.kind {
            Kind::VirPoly(m) => Ok(ModVec::from_uenv(&m.act_vir(x, &v.to_uenv()?)?)),
            Kind::Tensor(l, r) if self.is_vir() => {
                let mut out = ModVec::zero();
                for (k, c) in v.terms() {
                    let BasisKey::Tensor(a, b) = k else { return Err(bad_key(k)) };
                    let (va, vb) = (ModVec::basis((**a).clone()), ModVec::basis((**b).clone()));
                    out.add_scaled(&ModVec::tensor(&l.act_vir(x, &va)?, &vb), c);
                    out.add_scaled(&ModVec::tensor(&va, &r.act_vir(x, &vb)?), c);
                }
                Ok(out)
            }
            _ => {
                let y = x
                    .to_sl2()
                    .ok_or_else(|| Error::WrongAlgebra(format!("{x} does not act on the sl2-module {}", self.spec)))?;
                self.act(&y, v)
            }
        }
    }

    /// Independent rewriting path used to cross-check the closed forms.
    pub fn act_gen_generic(&self, g: Gen, v: &ModVec) -> Result<ModVec> {
        let mut out = ModVec::zero();
        for (k, c) in v.terms() {
            let r = match &self.kind {
                Kind::W(eta) => families::w_generic(eta, g, k)?,
                Kind::X(xi) => families::x_generic(xi, g, k)?,
                Kind::Xbar(xi, tau) => families::xbar_generic(xi, tau, g, k)?,
                Kind::Vdense(xi, tau) => families::vdense_generic(xi, tau, g, k)?,
                Kind::Verma(d) => families::verma_generic(d, g, k)?,
                Kind::LowVerma(d) => families::lowverma_generic(d, g, k)?,
                Kind::Twist(inner, a) => {
                    let u = aut_extend(a, &UEnvElt::gen(g));
                    inner.act_uenv(&u, &ModVec::basis(k.clone()))?
                }
                _ => self.act_gen_key(g, k)?,
            };
            out.add_scaled(&r, c);
        }
        Ok(out)
    }

    /// The element acting diagonally on the basis, when there is one.
    pub fn cartan(&self) -> Option<SL2Elt> {
        match &self.kind {
            Kind::X(_) | Kind::Xbar(..) | Kind::Vdense(..) | Kind::Verma(_) | Kind::LowVerma(_) => Some(SL2Elt::h()),
            Kind::W(_) | Kind::VirPoly(_) | Kind::Induced(_) => None,
            Kind::Twist(inner, a) => inner.cartan().map(|y| a.inverse().apply(&y)),
            Kind::Tensor(l, r) => {
                let (x, y) = (l.cartan()?, r.cartan()?);
                (x == y).then_some(x)
            }
        }
    }

    /// The eigenvalue of [`ModuleHandle::cartan`] on a basis vector.
    pub fn weight(&self, k: &BasisKey) -> Result<Scalar> {
        let two = Scalar::from_int(2);
        let idx = |k: &BasisKey| match k {
            BasisKey::Index(i) => Ok(Scalar::from_int(*i)),
            _ => Err(bad_key(k)),
        };
        match &self.kind {
            Kind::X(xi) => match k {
                BasisKey::Pair(a, b) => Ok(xi + &(&two * &Scalar::from_int(*b as i64 - *a as i64))),
                _ => Err(bad_key(k)),
            },
            Kind::Xbar(xi, _) | Kind::Vdense(xi, _) => Ok(xi + &(&two * &idx(k)?)),
            Kind::Verma(d) => Ok(d - &(&two * &idx(k)?)),
            Kind::LowVerma(d) => Ok(d + &(&two * &idx(k)?)),
            Kind::Twist(inner, _) => {
                self.cartan().ok_or_else(|| self.not_weight())?;
                inner.weight(k)
            }
            Kind::Tensor(l, r) => {
                self.cartan().ok_or_else(|| self.not_weight())?;
                let BasisKey::Tensor(a, b) = k else { return Err(bad_key(k)) };
                Ok(&l.weight(a)? + &r.weight(b)?)
            }
            Kind::W(_) | Kind::VirPoly(_) | Kind::Induced(_) => Err(self.not_weight()),
        }
    }

    fn not_weight(&self) -> Error {
        Error::NotWeightModule(format!("{} has no diagonal Cartan action on its basis", self.spec))
    }
}

/// One basis vector of a cyclic module written as `u . generator`.
#[derive(Debug, Clone)]
pub struct Word {
    pub key: BasisKey,
    /// Human-readable form of `u` before any twist, e.g. `f e^2`.
    pub label: String,
    pub u: UEnvElt,
    /// `u = letter * u_parent` when the parent word is also a basis word.
    pub parent: Option<(BasisKey, SL2Elt)>,
}

/// Defining relations `u . generator = value . generator` plus the basis
/// words up to some depth.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub relations: Vec<(String, UEnvElt, Scalar)>,
    pub words: Vec<Word>,
}

fn letter(g: Gen) -> SL2Elt {
    SL2Elt::gen(g)
}

/// Words for monomial keys; the parent strips the leftmost letter.
fn mono_words(monos: Vec<SL2Monomial>, key: impl Fn(&SL2Monomial) -> BasisKey) -> Vec<Word> {
    let set: std::collections::BTreeSet<SL2Monomial> = monos.iter().copied().collect();
    monos
        .iter()
        .map(|m| {
            let (g, rest) = if m.a > 0 {
                (Gen::F, SL2Monomial::new(m.a - 1, m.b, m.c))
            } else if m.b > 0 {
                (Gen::H, SL2Monomial::new(0, m.b - 1, m.c))
            } else {
                (Gen::E, SL2Monomial::new(0, 0, m.c.saturating_sub(1)))
            };
            let parent = (m.degree() > 0 && set.contains(&rest)).then(|| (key(&rest), letter(g)));
            Word { key: key(m), label: m.to_string(), u: UEnvElt::monomial(*m, Scalar::one()), parent }
        })
        .collect()
}

impl ModuleHandle {
    /// The presentation of a cyclic family, with basis words up to `depth`.
    pub fn presentation(&self, depth: u32) -> Result<Presentation> {
        let u = |g: Gen| UEnvElt::gen(g);
        let rel = |name: &str, x: UEnvElt, v: &Scalar| (name.to_string(), x, v.clone());
        let keyed = |keys: Vec<BasisKey>, mono: &dyn Fn(&BasisKey) -> SL2Monomial| {
            let monos: Vec<SL2Monomial> = keys.iter().map(mono).collect();
            let back: BTreeMap<SL2Monomial, BasisKey> = monos.iter().copied().zip(keys.iter().cloned()).collect();
            mono_words(monos, |m| back[m].clone())
        };
        let index = |k: &BasisKey| match k {
            BasisKey::Index(i) => *i,
            _ => unreachable!("index family"),
        };
        let window = self.window(depth)?;
        Ok(match &self.kind {
            Kind::X(xi) => Presentation {
                relations: vec![rel("h", u(Gen::H), xi)],
                words: keyed(window, &|k| match k {
                    BasisKey::Pair(a, b) => SL2Monomial::new(*a, 0, *b),
                    _ => unreachable!("pair family"),
                }),
            },
            Kind::W(eta) => Presentation {
                relations: vec![rel("e", u(Gen::E), eta)],
                words: keyed(window, &|k| match k {
                    BasisKey::Pair(a, b) => SL2Monomial::new(*a, *b, 0),
                    _ => unreachable!("pair family"),
                }),
            },
            Kind::Verma(d) => Presentation {
                relations: vec![rel("h", u(Gen::H), d), rel("e", u(Gen::E), &Scalar::zero())],
                words: keyed(window, &|k| SL2Monomial::new(index(k) as u32, 0, 0)),
            },
            Kind::LowVerma(d) => Presentation {
                relations: vec![rel("h", u(Gen::H), d), rel("f", u(Gen::F), &Scalar::zero())],
                words: keyed(window, &|k| SL2Monomial::new(0, 0, index(k) as u32)),
            },
            Kind::Xbar(xi, tau) => Presentation {
                relations: vec![rel("h", u(Gen::H), xi), rel("c", casimir_elt(), tau)],
                words: keyed(window, &|k| {
                    let i = index(k);
                    if i >= 0 {
                        SL2Monomial::new(0, 0, i as u32)
                    } else {
                        SL2Monomial::new((-i) as u32, 0, 0)
                    }
                }),
            },
            Kind::VirPoly(m) => Presentation {
                relations: m
                    .relations()
                    .iter()
                    .map(|(x, v)| (x.to_string(), UEnvElt::from_sl2(x), v.clone()))
                    .collect(),
                words: keyed(window, &|k| match k {
                    BasisKey::Mono(m) => *m,
                    _ => unreachable!("monomial family"),
                }),
            },
            Kind::Induced(m) => Presentation {
                relations: vec![(m.basis.to_string(), UEnvElt::from_sl2(&m.basis), m.mu0.clone())],
                words: keyed(window, &|k| match k {
                    BasisKey::Mono(m) => *m,
                    _ => unreachable!("monomial family"),
                }),
            },
            Kind::Twist(inner, a) => {
                let inv = a.inverse();
                let p = inner.presentation(depth)?;
                Presentation {
                    relations: p.relations.into_iter().map(|(l, x, v)| (l, aut_extend(&inv, &x), v)).collect(),
                    words: p
                        .words
                        .into_iter()
                        .map(|w| Word {
                            u: aut_extend(&inv, &w.u),
                            parent: w.parent.map(|(k, x)| (k, inv.apply(&x))),
                            ..w
                        })
                        .collect(),
                }
            }
            Kind::Vdense(..) | Kind::Tensor(..) => {
                return Err(Error::InvalidParameter(format!("{} is not presented as a cyclic module", self.spec)))
            }
        })
    }
}

fn bad_key(k: &BasisKey) -> Error {
    Error::InvalidParameter(format!("basis key {k} does not belong to this module"))
}

impl Sl2Module for ModuleHandle {
    fn act_gen(&self, g: Gen, v: &ModVec) -> Result<ModVec> {
        let mut out = ModVec::zero();
        for (k, c) in v.terms() {
            out.add_scaled(&self.act_gen_key(g, k)?, c);
        }
        Ok(out)
    }

    fn window(&self, depth: u32) -> Result<Vec<BasisKey>> {
        let d = depth as i64;
        let pairs = || (0..=depth).flat_map(move |s| (0..=s).map(move |a| BasisKey::Pair(a, s - a)));
        Ok(sorted(match &self.kind {
            Kind::W(_) | Kind::X(_) => pairs().collect(),
            Kind::Xbar(..) | Kind::Vdense(..) => (-d..=d).map(BasisKey::Index).collect(),
            Kind::Verma(_) | Kind::LowVerma(_) => (0..=d).map(BasisKey::Index).collect(),
            Kind::VirPoly(m) => m.quotient().standard(depth)?.into_iter().map(BasisKey::Mono).collect(),
            Kind::Induced(m) => m.quotient.standard(depth)?.into_iter().map(BasisKey::Mono).collect(),
            Kind::Twist(inner, _) => inner.window(depth)?,
            Kind::Tensor(l, r) => {
                let (wl, wr) = (l.window(depth)?, r.window(depth)?);
                let mut out = Vec::new();
                for a in &wl {
                    for b in wr.iter().filter(|b| a.depth() + b.depth() <= depth) {
                        out.push(BasisKey::tensor(a.clone(), b.clone()));
                    }
                }
                out
            }
        }))
    }
}

/// `x . v` for `x` in sl2.
pub fn act(m: &ModuleHandle, x: &SL2Elt, v: &ModVec) -> Result<ModVec> {
    m.act(x, v)
}

/// The action of the Casimir `4fe + (h+1)^2`.
pub fn casimir_action(m: &ModuleHandle, v: &ModVec) -> Result<ModVec> {
    m.act_uenv(&casimir_elt(), v)
}

/// Groups the terms of `v` by eigenvalue of the module's Cartan element.
pub fn weight_decompose(m: &ModuleHandle, v: &ModVec) -> Result<Vec<(Scalar, ModVec)>> {
    if m.cartan().is_none() {
        return Err(m.not_weight());
    }
    let mut groups: BTreeMap<Scalar, ModVec> = BTreeMap::new();
    for (k, c) in v.terms() {
        groups.entry(m.weight(k)?).or_default().add_term(k.clone(), c);
    }
    Ok(groups.into_iter().collect())
}

/// The `modvec/1` JSON form of a vector.
pub fn modvec_json(m: &ModuleHandle, v: &ModVec) -> Value {
    let mut params = serde_json::to_value(m.spec()).expect("specs serialize");
    if let Value::Object(map) = &mut params {
        map.remove("family");
    }
    let terms: Vec<Value> = v.terms().map(|(k, c)| json!([k.to_json(), c])).collect();
    json!({"schema": "modvec/1", "family": m.spec().name(), "params": params, "terms": terms})
}
