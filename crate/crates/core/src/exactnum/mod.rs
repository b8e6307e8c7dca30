//! Exact scalars in Q(i) and Laurent polynomials over them.

mod laurent;
mod scalar;

pub use laurent::{laurent_divmod_f, laurent_mul, window_for_degree, LaurentPoly, SubalgebraPoly};
pub use scalar::{scalar_arith, ArithOp, Scalar};
