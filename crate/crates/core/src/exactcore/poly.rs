use super::{AlgebraError, FieldElement, NumberField, Rational, Result};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over a [`NumberField`], coefficients low to
/// high. The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: NumberField,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &NumberField, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Polynomial {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &NumberField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &NumberField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &NumberField) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `x - c`
    pub fn linear_root(c: &FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![-c, field.one()])
    }

    pub fn from_rationals(field: &NumberField, coeffs: &[Rational]) -> Self {
        Self::new(
            field,
            coeffs.iter().map(|c| field.from_rational(c.clone())).collect(),
        )
    }

    pub fn from_ints(field: &NumberField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElement::is_one)
    }

    pub fn check_cap(&self) -> Result<()> {
        let cap = self.field.degree_cap();
        match self.degree() {
            Some(d) if d > cap => Err(AlgebraError::DegreeCap { degree: d, cap }),
            _ => Ok(()),
        }
    }

    fn same_field(&self, other: &Polynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `x^n · self(1/x)`; requires `n ≥ deg self`.
    pub fn reversed(&self, n: usize) -> Polynomial {
        assert!(n >= self.deg(), "reversal length below degree");
        let mut c = self.coeffs.clone();
        c.resize(n + 1, self.field.zero());
        c.reverse();
        Polynomial::new(&self.field, c)
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn monic(&self) -> Result<Polynomial> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(lc) if lc.is_one() => Ok(self.clone()),
            Some(lc) => Ok(self.scale(&lc.inverse()?)),
        }
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(divisor)?;
        self.check_cap()?;
        divisor.check_cap()?;
        let lead_inv = divisor
            .leading()
            .ok_or(AlgebraError::DivisionByZero)?
            .inverse()?;
        let dd = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Ok((Polynomial::zero(&self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        while rem.len() > dd {
            let top = rem.pop().expect("len > dd");
            if top.is_zero() {
                continue;
            }
            let c = &top * &lead_inv;
            let shift = rem.len() - dd;
            for (i, b) in divisor.coeffs[..dd].iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * b);
            }
            quot[shift] = c;
        }
        Ok((
            Polynomial::new(&self.field, quot),
            Polynomial::new(&self.field, rem),
        ))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient of an exact division; a nonzero remainder is a logic error
    /// upstream, reported by panicking in debug builds only.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    pub fn divides(&self, other: &Polynomial) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd. `gcd(f, 0)` is `f` made monic; `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::ZeroPolynomial("gcd"));
        }
        self.check_cap()?;
        other.check_cap()?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b.monic()?;
            b = r;
        }
        a.monic()
    }

    pub fn is_coprime(&self, other: &Polynomial) -> Result<bool> {
        Ok(self.gcd(other)?.is_constant())
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Polynomial) -> Result<Polynomial> {
        let g = self.gcd(other)?;
        (&self.exact_div(&g)? * other).monic()
    }

    /// Yun's algorithm. Factors are monic, squarefree and pairwise coprime;
    /// multiplicities are strictly increasing. A nonzero constant yields an
    /// empty list.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Polynomial, u32)>> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial("squarefree decomposition"));
        }
        self.check_cap()?;
        let f = self.monic()?;
        let mut out = Vec::new();
        if f.is_constant() {
            return Ok(out);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.exact_div(&a0)?;
        let mut c = df.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while !b.is_constant() {
            let a = b.gcd(&d)?;
            b = b.exact_div(&a)?;
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors. Constants map to 1.
    pub fn squarefree_part(&self) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.field);
        for (f, _) in self.squarefree_decomposition()? {
            acc = &acc * &f;
        }
        Ok(acc)
    }

    /// `Res(f, g) = lc(f)^deg(g) · Π g(r)` over the roots `r` of `f`, computed
    /// by the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Polynomial) -> Result<FieldElement> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(AlgebraError::ZeroPolynomial("resultant"));
        }
        self.check_cap()?;
        other.check_cap()?;
        let mut acc = self.field.one();
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return Ok(&acc * &b.coeffs[0].pow(m as u64));
            }
            if m == 0 {
                return Ok(&acc * &a.coeffs[0].pow(n as u64));
            }
            let r = a.rem(&b)?;
            if r.is_zero() {
                return Ok(self.field.zero());
            }
            // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
            let mut factor = b.coeffs[n].pow((m - r.deg()) as u64);
            if (m * n) % 2 == 1 {
                factor = -factor;
            }
            acc = &acc * &factor;
            a = b;
            b = r;
        }
    }

    /// `(-1)^{d(d-1)/2} Res(f, f') / lc(f)` for `d = deg f ≥ 2`.
    pub fn discriminant(&self) -> Result<FieldElement> {
        let d = self.deg();
        if self.is_zero() || d < 2 {
            return Err(AlgebraError::DegreeTooSmall {
                op: "discriminant",
                min: 2,
                got: d,
            });
        }
        let res = self.resultant(&self.derivative())?;
        let mut disc = res.checked_div(&self.coeffs[d])?;
        if (d * (d - 1) / 2) % 2 == 1 {
            disc = -disc;
        }
        Ok(disc)
    }

    /// Newton interpolation through `(xs[i], ys[i])`; the `xs` must be distinct.
    pub fn interpolate(field: &NumberField, xs: &[FieldElement], ys: &[FieldElement]) -> Result<Polynomial> {
        assert_eq!(xs.len(), ys.len(), "interpolation data length mismatch");
        if xs.len() > field.degree_cap() + 1 {
            return Err(AlgebraError::DegreeCap {
                degree: xs.len() - 1,
                cap: field.degree_cap(),
            });
        }
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - level];
                dd[i] = num.checked_div(&den)?;
            }
        }
        let mut acc = Polynomial::zero(field);
        for i in (0..n).rev() {
            acc = &(&acc * &Polynomial::linear_root(&xs[i])) + &Polynomial::constant(dd[i].clone());
        }
        Ok(acc)
    }

    /// Canonical order: degree first, then coefficients low to high.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                match a.canonical_cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Human-readable rendering in the variable `var`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let neg_c = -c;
            let (sign, mag) = match c.as_rational() {
                Some(r) if r < &Rational::from_integer(0.into()) => ("-", neg_c),
                _ => ("+", c.clone()),
            };
            let simple = mag.as_rational().is_some();
            let coef = if mono.is_empty() {
                if simple { mag.to_string() } else { format!("({mag})") }
            } else if mag.is_one() {
                String::new()
            } else if simple {
                format!("{mag}*")
            } else {
                format!("({mag})*")
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&coef);
            out.push_str(&mono);
        }
        out
    }
}

/// Splits a family of nonzero polynomials into pairwise coprime monic
/// squarefree pieces so that each input's squarefree part is a product of
/// pieces. Constants contribute nothing.
pub fn coprime_basis(polys: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for p in polys {
        let mut rest = p.squarefree_part()?;
        let mut next = Vec::with_capacity(basis.len() + 1);
        for b in basis.drain(..) {
            if rest.is_constant() {
                next.push(b);
                continue;
            }
            let g = b.gcd(&rest)?;
            if g.is_constant() {
                next.push(b);
                continue;
            }
            let cofactor = b.exact_div(&g)?.monic()?;
            rest = rest.exact_div(&g)?.monic()?;
            if !cofactor.is_constant() {
                next.push(cofactor);
            }
            next.push(g);
        }
        if !rest.is_constant() {
            next.push(rest);
        }
        basis = next;
    }
    basis.sort_by(Polynomial::canonical_cmp);
    Ok(basis)
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(&self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(&self.field, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(&self.field, out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> NumberField {
        NumberField::rationals()
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(&qf(), c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 0, 0, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[4, 2]).gcd(&p(&[])).unwrap(), p(&[2, 1]));
        assert!(p(&[]).gcd(&p(&[])).is_err());
    }

    #[test]
    fn squarefree_examples() {
        // x^3 + x^2 = x^2 (x + 1)
        let d = p(&[0, 0, 1, 1]).squarefree_decomposition().unwrap();
        assert_eq!(d, vec![(p(&[1, 1]), 1), (p(&[0, 1]), 2)]);
        let d = p(&[-6, 0, 2]).squarefree_decomposition().unwrap();
        assert_eq!(d, vec![(p(&[-3, 0, 1]), 1)]);
        assert!(p(&[]).squarefree_decomposition().is_err());
        assert!(p(&[7]).squarefree_decomposition().unwrap().is_empty());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(p(&[-2, 1]).resultant(&p(&[-3, 1])).unwrap(), qf().from_int(-1));
        assert_eq!(p(&[1, 0, 1]).resultant(&p(&[-1, 0, 1])).unwrap(), qf().from_int(4));
        // Res(f, c) = c^deg f
        assert_eq!(p(&[1, 2, 3]).resultant(&p(&[5])).unwrap(), qf().from_int(25));
        assert!(p(&[1, 1]).resultant(&p(&[])).is_err());
        // shared root
        assert!(p(&[-1, 0, 1]).resultant(&p(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn discriminant_examples() {
        // x^2 + 3x + 1: 9 - 4
        assert_eq!(p(&[1, 3, 1]).discriminant().unwrap(), qf().from_int(5));
        // the cubic with a = b = 1
        assert_eq!(p(&[-1, 3, 1, 1]).discriminant().unwrap(), qf().from_int(-176));
        assert!(p(&[1, 1]).discriminant().is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, -1, 0, 2]);
        let xs: Vec<_> = (0..4).map(|i| qf().from_int(i)).collect();
        let ys: Vec<_> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(Polynomial::interpolate(&qf(), &xs, &ys).unwrap(), f);
    }

    #[test]
    fn coprime_basis_refines() {
        let a = p(&[-1, 0, 1]); // (x-1)(x+1)
        let b = p(&[-1, 1]); // x-1
        let basis = coprime_basis(&[a, b]).unwrap();
        assert_eq!(basis, vec![p(&[-1, 1]), p(&[1, 1])]);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let f = NumberField::rationals().with_degree_cap(3);
        let big = Polynomial::from_ints(&f, &[1, 0, 0, 0, 1]);
        assert_eq!(
            big.gcd(&Polynomial::from_ints(&f, &[1, 1])).unwrap_err(),
            AlgebraError::DegreeCap { degree: 4, cap: 3 }
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[-1, 0, 2]).display("t"), "2*t^2 - 1");
        assert_eq!(p(&[0, 1]).display("y"), "y");
    }
}
