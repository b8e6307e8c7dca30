//! Intertwiner checks and the suites built on them.
//!
//! Every check is exact and bounded by a depth `N`: a passing report
//! certifies the statement on the depth-`N` window only.

mod dense;
mod simplicity;
mod suites;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub use dense::{suite_dense, DenseBranch, DenseReport, XbarQuotient, XbarSub};
pub use simplicity::{generator_test, simplicity_test, GeneratorResult, SimplicityResult};
pub use suites::{
    describe_twist, suite_restriction, suite_tensor_vermas, suite_twist_induction, InductionReport, RestrictionReport, TensorReport,
};

use crate::error::Result;
use crate::linalg::Echelon;
use crate::modzoo::{BasisKey, ModVec, ModuleHandle, Sl2Module};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapCheckReport {
    pub relations_hold: bool,
    pub injective_up_to_n: bool,
    pub surjective_onto_window: bool,
    pub witness: Option<String>,
    pub depth: u32,
}

impl MapCheckReport {
    pub fn all_true(&self) -> bool {
        self.relations_hold && self.injective_up_to_n && self.surjective_onto_window
    }

    /// The three flags under a common prefix.
    pub fn flags(&self, prefix: &str) -> BTreeMap<String, bool> {
        BTreeMap::from([
            (format!("{prefix}relations_hold"), self.relations_hold),
            (format!("{prefix}injective_up_to_n"), self.injective_up_to_n),
            (format!("{prefix}surjective_onto_window"), self.surjective_onto_window),
        ])
    }
}

/// Checks that `generator -> gen_image` extends to a module map from the
/// cyclic module `src` into `dst` and inspects it on the depth-`n` window.
///
/// Basis words are taken in depth-then-key order, so the first word whose
/// image is dependent on the earlier ones is the degree-lex minimal witness.
pub fn check_module_map(
    src: &ModuleHandle,
    dst: &dyn Sl2Module,
    gen_image: &ModVec,
    n: u32,
) -> Result<MapCheckReport> {
    let pres = src.presentation(n)?;
    let mut witness = None;

    let mut relations_hold = true;
    for (label, u, value) in &pres.relations {
        if dst.act_uenv(u, gen_image)? != gen_image.scale(value) {
            relations_hold = false;
            witness.get_or_insert_with(|| format!("relation {label}"));
        }
    }

    let mut ech: Echelon<BasisKey> = Echelon::new();
    let mut images: BTreeMap<BasisKey, ModVec> = BTreeMap::new();
    let mut injective = true;
    for w in &pres.words {
        let img = match w.parent.as_ref().and_then(|(p, x)| images.get(p).map(|v| (v, x))) {
            Some((v, x)) => dst.act(x, v)?,
            None => dst.act_uenv(&w.u, gen_image)?,
        };
        if !ech.insert(img.as_sparse().clone()) && injective {
            injective = false;
            witness.get_or_insert_with(|| w.label.clone());
        }
        images.insert(w.key.clone(), img);
    }

    let mut surjective = true;
    for k in dst.window(n)? {
        if !ech.contains(ModVec::basis(k.clone()).into_sparse()) {
            surjective = false;
            witness.get_or_insert_with(|| format!("window vector {k} not in the image"));
            break;
        }
    }

    Ok(MapCheckReport { relations_hold, injective_up_to_n: injective, surjective_onto_window: surjective, witness, depth: n })
}

/// The `report/1` record every suite produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub flags: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub depth: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub details: BTreeMap<String, Value>,
}

impl SuiteReport {
    pub fn new(suite: &str, params: BTreeMap<String, String>, depth: u32) -> Self {
        SuiteReport {
            schema: "report/1",
            suite: suite.to_string(),
            params,
            flags: BTreeMap::new(),
            witness: None,
            depth,
            elapsed_ms: None,
            details: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.flags.values().all(|&b| b)
    }

    pub fn flag(&mut self, name: &str, value: bool) {
        self.flags.insert(name.to_string(), value);
    }

    pub fn detail(&mut self, name: &str, value: impl Serialize) {
        self.details.insert(name.to_string(), serde_json::to_value(value).expect("details serialize"));
    }

    pub fn absorb(&mut self, prefix: &str, m: &MapCheckReport) {
        self.flags.extend(m.flags(prefix));
        if let Some(w) = &m.witness {
            if !m.all_true() && self.witness.is_none() {
                self.witness = Some(format!("{prefix}{w}"));
            }
        }
    }
}
