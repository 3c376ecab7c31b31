use super::rational::int;
use super::{AlgebraError, Rational, Result};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Polynomials above this degree are rejected unless the field is built with
/// [`NumberField::with_degree_cap`].
pub const DEFAULT_DEGREE_CAP: usize = 512;

/// `Q[α]/(m(α))` for a monic squarefree `m` over Q.
///
/// Cloning is cheap; every element holds a handle to its field.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    // monic, low to high, length degree + 1
    modulus: Vec<Rational>,
    degree_cap: usize,
}

impl NumberField {
    /// Builds the field from a monic modulus over Q (coefficients low to high).
    pub fn new(modulus: Vec<Rational>) -> Result<Self> {
        let modulus = qpoly::trimmed(modulus);
        if modulus.len() < 2 || !modulus.last().is_some_and(|c| c.is_one()) {
            return Err(AlgebraError::NonMonicModulus);
        }
        let g = qpoly::gcd(&modulus, &qpoly::derivative(&modulus));
        if g.len() > 1 {
            return Err(AlgebraError::ModulusNotSquarefree {
                witness: super::format_qpoly(&g),
            });
        }
        Ok(NumberField {
            inner: Arc::new(FieldInner {
                modulus,
                degree_cap: DEFAULT_DEGREE_CAP,
            }),
        })
    }

    /// Plain Q, presented as `Q[α]/(α)`.
    pub fn rationals() -> Self {
        Self::new(vec![int(0), int(1)]).expect("x is monic and squarefree")
    }

    pub fn with_degree_cap(self, cap: usize) -> Self {
        NumberField {
            inner: Arc::new(FieldInner {
                modulus: self.inner.modulus.clone(),
                degree_cap: cap,
            }),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.inner.modulus
    }

    pub fn degree_cap(&self) -> usize {
        self.inner.degree_cap
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = r;
        e
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(int(n))
    }

    /// The class of `α`. For a degree-one modulus `x + c` this is `-c`.
    pub fn generator(&self) -> FieldElement {
        self.reduce(vec![Rational::zero(), Rational::one()])
    }

    /// Element from power-basis coordinates; the length must equal the degree.
    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(AlgebraError::Arity {
                expected: self.degree(),
                got: coords.len(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            coords,
        })
    }

    fn same(&self, other: &NumberField) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.modulus == other.inner.modulus
    }

    /// Reduces an arbitrary Q-polynomial in `α` modulo the modulus.
    fn reduce(&self, mut poly: Vec<Rational>) -> FieldElement {
        let m = &self.inner.modulus;
        let n = self.degree();
        while poly.len() > n {
            let top = poly.pop().expect("len > n >= 1");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - n;
            for (i, c) in m[..n].iter().enumerate() {
                poly[shift + i] -= &top * c;
            }
        }
        poly.resize(n, Rational::zero());
        FieldElement {
            field: self.clone(),
            coords: poly,
        }
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[α]/({})", super::format_qpoly(&self.inner.modulus).replace('x', "α"))
    }
}

/// An element of a [`NumberField`] in power-basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    fn check(&self, other: &FieldElement) {
        assert!(
            self.field.same(&other.field),
            "field elements from different number fields"
        );
    }

    /// Multiplicative inverse by extended gcd against the modulus.
    ///
    /// A nonconstant gcd means the modulus is reducible; the monic gcd is
    /// returned as the witness.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let u = qpoly::trimmed(self.coords.clone());
        let (g, s) = qpoly::ext_gcd(&u, self.field.modulus());
        if g.len() > 1 {
            return Err(AlgebraError::ZeroDivisor { witness: g });
        }
        // g is the monic constant 1
        Ok(self.field.reduce(s))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Lexicographic order on coordinates; used only for canonical sorting.
    pub fn canonical_cmp(&self, other: &FieldElement) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => super::format_rational(&mag),
                (1, true) => "α".to_string(),
                (1, false) => format!("{}α", super::format_rational(&mag)),
                (_, true) => format!("α^{i}"),
                (_, false) => format!("{}α^{i}", super::format_rational(&mag)),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            terms.push(format!("{sign}{body}"));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, t) in terms.iter().enumerate() {
            let (sign, body) = t.split_at(1);
            match (k, sign) {
                (0, "-") => out.push_str(&format!("-{body}")),
                (0, _) => out.push_str(body),
                (_, s) => out.push_str(&format!(" {s} {body}")),
            }
        }
        write!(f, "{out}")
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        if self.field.degree() == 1 {
            return FieldElement {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &rhs.coords[0]],
            };
        }
        let n = self.coords.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.reduce(prod)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Dense polynomials over Q, low to high, trimmed. Only what the field needs.
pub(super) mod qpoly {
    use super::Rational;
    use num_traits::Zero;

    pub fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn derivative(p: &[Rational]) -> Vec<Rational> {
        trimmed(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let z = Rational::zero();
        trimmed(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trimmed(out)
    }

    fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let lead = b.last().expect("nonzero divisor");
        let mut rem = a.to_vec();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
        while rem.len() >= b.len() {
            let c = rem.last().expect("nonempty") / lead;
            let shift = rem.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                rem[shift + i] -= &c * bc;
            }
            quot[shift] = c;
            rem.pop();
            rem = trimmed(rem);
        }
        (trimmed(quot), rem)
    }

    fn monic(p: Vec<Rational>) -> Vec<Rational> {
        match p.last().cloned() {
            Some(lc) => p.into_iter().map(|c| c / &lc).collect(),
            None => p,
        }
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let (mut x, mut y) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
        while !y.is_empty() {
            let r = div_rem(&x, &y).1;
            x = y;
            y = r;
        }
        monic(x)
    }

    /// Returns `(g, s)` with `g` monic and `s·u ≡ g (mod m)`.
    pub fn ext_gcd(u: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (m.to_vec(), u.to_vec());
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) =
            (Vec::new(), vec![Rational::from_integer(1.into())]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let lc = r0.last().cloned().expect("gcd of nonzero inputs");
        let s = s0.into_iter().map(|c| c / &lc).collect();
        (monic(r0), s)
    }
}
