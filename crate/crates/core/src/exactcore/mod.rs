//! Exact arithmetic: rationals, number fields `Q(α)` in the power basis, and
//! univariate polynomial algebra over such a field.
//!
//! Reducibility of the modulus is never tested up front. A reducible modulus
//! surfaces only when an inversion hits a zero divisor, and the extended gcd
//! that found it is returned as the witness.

mod field;
mod poly;
mod rational;

pub use field::{FieldElement, NumberField, DEFAULT_DEGREE_CAP};
pub use poly::{coprime_basis, Polynomial};
pub use rational::{format_rational, parse_rational, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("modulus must be monic of degree at least 1")]
    NonMonicModulus,
    #[error("modulus is not squarefree (common factor with its derivative: {witness})")]
    ModulusNotSquarefree { witness: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor: modulus has the nontrivial factor {}", format_qpoly(witness))]
    ZeroDivisor { witness: Vec<Rational> },
    #[error("polynomial of degree {degree} exceeds the degree cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("{0} is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("{op} needs degree at least {min}, got {got}")]
    DegreeTooSmall {
        op: &'static str,
        min: usize,
        got: usize,
    },
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
}

/// Renders a polynomial over Q given low-to-high, in the variable `x`.
pub fn format_qpoly(coeffs: &[Rational]) -> String {
    use num_traits::{One, Signed, Zero};
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", format_rational(&mag), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
