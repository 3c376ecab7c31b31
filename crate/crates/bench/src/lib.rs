//! Fixed inputs shared by the benchmarks.

use pencilforge_core::pencil::{build_genus2_example, ExampleMode};
use pencilforge_core::{NumberField, PencilSpec, Polynomial};

/// The special genus-2 pencil over Q(α).
pub fn special_pencil() -> PencilSpec {
    build_genus2_example(ExampleMode::Special).expect("built-in example")
}

/// Generic pencil at integer parameters.
pub fn generic_pencil(a: i64, b: i64) -> PencilSpec {
    build_genus2_example(ExampleMode::generic_ints(a, b)).expect("nonzero parameters")
}

/// A pair of dense degree-`n` polynomials with small, deterministic,
/// non-repeating coefficients.
pub fn dense_pair(field: &NumberField, n: usize) -> (Polynomial, Polynomial) {
    let coeffs = |shift: i64| -> Vec<i64> {
        (0..=n as i64).map(|i| ((i * i + 3 * i + shift) % 11) - 5).map(|c| if c == 0 { 1 } else { c }).collect()
    };
    (Polynomial::from_ints(field, &coeffs(1)), Polynomial::from_ints(field, &coeffs(4)))
}
