//! sl2 and the Virasoro algebra, the embedding between them, the
//! automorphism families and the subalgebra classifications.

mod automorphism;
mod sl2;
mod subalgebra;
mod vir;

pub use automorphism::{aut_apply, aut_compose_invert, AutOperand, AutTag, Automorphism};
pub use sl2::{bracket_sl2, Gen, SL2Elt};
pub use subalgebra::{
    classify_subalgebra_1d, classify_subalgebra_2d, intersect_virf_sl2, OneDimClass, OneDimKind, StdGen,
    TwoDimClass, TwoDimKind,
};
pub use vir::{bracket_vir, embed_sl2, VirElt};
