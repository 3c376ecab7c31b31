use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"p/q"` or `"p"`; surrounding whitespace is not accepted.
pub fn parse_rational(s: &str) -> Option<Rational> {
    if s.is_empty() || s.trim() != s {
        return None;
    }
    let r = BigRational::from_str(s).ok()?;
    Some(r)
}

/// Canonical text form, `"4"` or `"57/2"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}
