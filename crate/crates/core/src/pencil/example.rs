use super::{DeclaredSet, PencilError, PencilSpec, Result};
use crate::exactcore::{FieldElement, NumberField, Polynomial, Rational};
use crate::mapkit::{ProjectivePoint, RationalMap};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExampleMode {
    /// `a = α` with `α² + 11α − 1 = 0`, `b = 1`: the cubic acquires a double
    /// root and two coincidence values merge, leaving five singular fibers.
    Special,
    Generic { a: Rational, b: Rational },
}

/// `p(x) = x³ + (2a − b²)x² + (a² + 2ab²)x − a²b²`. For the maps built by
/// [`build_genus2_example`], the numerator of `φ − ψ` is `p(t²)`.
pub fn example_cubic(a: &FieldElement, b: &FieldElement) -> Polynomial {
    let field = a.field();
    let b2 = b * b;
    let a2 = a * a;
    let two = field.from_int(2);
    Polynomial::new(
        field,
        vec![
            -(&a2 * &b2),
            &a2 + &(&(&two * a) * &b2),
            &(&two * a) - &b2,
            field.one(),
        ],
    )
}

fn special_field() -> Result<NumberField> {
    let q = |n: i64| Rational::from_integer(n.into());
    Ok(NumberField::new(vec![q(-1), q(11), q(1)])?)
}

fn maps(a: &FieldElement, b: &FieldElement) -> Result<(RationalMap, RationalMap)> {
    let field = a.field();
    let (a2, b2) = (a * a, b * b);
    let two_a = &field.from_int(2) * a;
    let phi = RationalMap::new(
        Polynomial::new(field, vec![a2, field.zero(), field.zero(), field.zero(), field.one()]),
        Polynomial::new(field, vec![field.zero(), field.zero(), field.one()]),
    )?;
    let psi = RationalMap::new(
        Polynomial::new(field, vec![-(&two_a * &b2), field.zero(), -two_a.clone()]),
        Polynomial::new(field, vec![-b2, field.zero(), field.one()]),
    )?;
    Ok((phi, psi))
}

/// The genus-2 pencil with `φ = t² + a²/t²` and
/// `ψ = −2a(t² + b²)/(t² − b²)`.
pub fn build_genus2_example(mode: ExampleMode) -> Result<PencilSpec> {
    match mode {
        ExampleMode::Generic { a, b } => {
            if a.is_zero() || b.is_zero() {
                return Err(PencilError::InvalidParameters("a and b must be nonzero".into()));
            }
            let field = NumberField::rationals();
            let (a, b) = (field.from_rational(a), field.from_rational(b));
            let (phi, psi) = maps(&a, &b)?;
            let label = format!("generic genus-2 pencil a = {a}, b = {b}");
            Ok(PencilSpec::new(phi, psi, None)?.with_label(label))
        }
        ExampleMode::Special => {
            let field = special_field()?;
            let a = field.generator();
            let b = field.one();
            let p = example_cubic(&a, &b);
            if !p.discriminant()?.is_zero() {
                return Err(PencilError::Inconsistency("special cubic has nonzero discriminant".into()));
            }
            // gcd(p, p') is linear: x − x₁ with x₁ the double root.
            let g = p.gcd(&p.derivative())?;
            if g.deg() != 1 {
                return Err(PencilError::Inconsistency("special cubic has no isolated double root".into()));
            }
            let x1 = -g.coeff(0);
            let x2 = &(-p.coeff(2)) - &(&field.from_int(2) * &x1);
            let a2 = &a * &a;
            let value = |x: &FieldElement| -> Result<FieldElement> { Ok(x + &a2.checked_div(x)?) };
            let two_a = &field.from_int(2) * &a;
            let points = vec![
                ProjectivePoint::Infinity,
                ProjectivePoint::Finite(two_a.clone()),
                ProjectivePoint::Finite(-two_a),
                ProjectivePoint::Finite(value(&x1)?),
                ProjectivePoint::Finite(value(&x2)?),
            ];
            let declared = DeclaredSet::new(&field, points)?;
            let (phi, psi) = maps(&a, &b)?;
            Ok(PencilSpec::new(phi, psi, Some(declared))?.with_label("genus-2 pencil with 5 singular fibers"))
        }
    }
}

impl ExampleMode {
    pub fn generic_ints(a: i64, b: i64) -> Self {
        ExampleMode::Generic {
            a: Rational::from_integer(a.into()),
            b: Rational::from_integer(b.into()),
        }
    }

    pub fn is_special(&self) -> bool {
        matches!(self, ExampleMode::Special)
    }
}
