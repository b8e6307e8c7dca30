//! Exact computations with induced modules for sl2(C) and the Virasoro algebra.
//!
//! Everything is computed over the Gaussian rationals Q(i) with no rounding.
//! The crate is organised bottom-up:
//!
//! - [`exactnum`]: scalars and Laurent polynomials, including reduction of
//!   `t^n` modulo the multiples of a polynomial `f`.
//! - [`liecore`]: sl2, Vir, the embedding, automorphisms and subalgebra
//!   classification.
//! - [`pbw`]: U(sl2) in PBW normal form.
//! - [`linalg`]: exact incremental row echelon forms.
//! - [`modzoo`]: the module families and their actions.
//! - [`verify`]: intertwiner checks and the verification suites.
//! - [`cli`]: the batch front end.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod liecore;
pub mod linalg;
pub mod modzoo;
pub mod pbw;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{LaurentPoly, Scalar};
