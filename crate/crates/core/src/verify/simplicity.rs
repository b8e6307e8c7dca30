use serde::Serialize;

use crate::exactnum::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityResult {
    pub irreducible: bool,
    pub witness_i: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorResult {
    pub generates: bool,
    pub witness_i: Option<i64>,
}

/// Integers `i` with `(xi + 2i + 1)^2 = tau`, the `+sqrt(tau)` solution first.
fn integer_roots(xi: &Scalar, tau: &Scalar) -> Vec<i64> {
    let Ok(s) = tau.sqrt_exact() else { return Vec::new() };
    let mut out = Vec::new();
    for r in [s.clone(), -&s] {
        let i = &(&(&r - xi) - &Scalar::one()) * &Scalar::frac(1, 2);
        if let Some(i) = i.as_i64() {
            if !out.contains(&i) {
                out.push(i);
            }
        }
    }
    out
}

/// Whether `tau - (xi + 2i + 1)^2` vanishes for no integer `i`.
pub fn simplicity_test(xi: &Scalar, tau: &Scalar) -> SimplicityResult {
    let roots = integer_roots(xi, tau);
    SimplicityResult { irreducible: roots.is_empty(), witness_i: roots.first().copied() }
}

/// As [`simplicity_test`] but only over `i >= 0`, reporting the smallest.
pub fn generator_test(xi: &Scalar, tau: &Scalar) -> GeneratorResult {
    let witness = integer_roots(xi, tau).into_iter().filter(|&i| i >= 0).min();
    GeneratorResult { generates: witness.is_none(), witness_i: witness }
}
