//! Production algebra against brute-force oracles.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use pencilforge_core::exactcore::{coprime_basis, FieldElement, NumberField, Polynomial, Rational};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Determinant by fraction-field Gaussian elimination.
fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            acc = -acc;
        }
        let p = m[col][col].clone();
        acc *= &p;
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let factor = &row[col] / &p;
            if factor.is_zero() {
                continue;
            }
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
        }
    }
    acc
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// f's coefficients then m shifted rows of g's, highest degree first.
fn sylvester_resultant(f: &[i64], g: &[i64]) -> Rational {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(f, n), (g, m)] {
        for i in 0..shifts {
            let mut row = vec![Rational::zero(); size];
            for (j, c) in coeffs.iter().rev().enumerate() {
                row[i + j] = q(*c);
            }
            rows.push(row);
        }
    }
    det(rows)
}

/// Integer coefficient vector of exact degree `0..=5`, low to high.
fn int_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (0..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-9i64..=9, d), (1i64..=9, prop::bool::ANY)).prop_map(|(mut v, (lc, neg))| {
            v.push(if neg { -lc } else { lc });
            v
        })
    })
}

fn qpoly(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(&NumberField::rationals(), c)
}

fn special() -> NumberField {
    NumberField::new(vec![q(-1), q(11), q(1)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn resultant_matches_sylvester(f in int_poly(5), g in int_poly(5)) {
        let fast = qpoly(&f).resultant(&qpoly(&g)).unwrap();
        let oracle = sylvester_resultant(&f, &g);
        prop_assert_eq!(fast.as_rational().unwrap(), &oracle);
    }

    #[test]
    fn gcd_divides_and_cofactors_coprime(f in int_poly(5), g in int_poly(5)) {
        let (f, g) = (qpoly(&f), qpoly(&g));
        let d = f.gcd(&g).unwrap();
        prop_assert!(d.is_monic());
        prop_assert!(f.rem(&d).unwrap().is_zero());
        prop_assert!(g.rem(&d).unwrap().is_zero());
        let (fc, gc) = (f.exact_div(&d).unwrap(), g.exact_div(&d).unwrap());
        prop_assert_eq!(fc.gcd(&gc).unwrap(), Polynomial::one(f.field()));
    }

    #[test]
    fn squarefree_decomposition_reconstructs(
        parts in prop::collection::vec((int_poly(2), 1u32..=3), 1..=3),
    ) {
        let mut f = Polynomial::one(&NumberField::rationals());
        for (c, k) in &parts {
            f = &f * &qpoly(c).pow(*k);
        }
        let decomposition = f.squarefree_decomposition().unwrap();
        let mut back = Polynomial::one(f.field());
        for (factor, k) in &decomposition {
            prop_assert!(factor.is_monic());
            prop_assert_eq!(factor.gcd(&factor.derivative()).unwrap().deg(), 0);
            back = &back * &factor.pow(*k);
        }
        // Equal up to the leading coefficient.
        prop_assert_eq!(back, f.monic().unwrap());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        f in int_poly(3), g in int_poly(3), common in int_poly(2), plant in prop::bool::ANY,
    ) {
        let (mut f, mut g) = (qpoly(&f), qpoly(&g));
        if plant && common.len() > 1 {
            f = &f * &qpoly(&common);
            g = &g * &qpoly(&common);
        }
        let r = f.resultant(&g).unwrap();
        let d = f.gcd(&g).unwrap();
        prop_assert_eq!(r.is_zero(), d.deg() >= 1);
    }

    #[test]
    fn rational_inverse(n in -1000i64..=1000, m in 1i64..=1000) {
        prop_assume!(n != 0);
        let field = NumberField::rationals();
        let x = field.from_rational(Rational::new(n.into(), m.into()));
        prop_assert!((&x * &x.inverse().unwrap()).is_one());
    }

    #[test]
    fn special_field_inverse(c0 in -50i64..=50, c1 in -50i64..=50, d in 1i64..=20) {
        prop_assume!(c0 != 0 || c1 != 0);
        let k = special();
        let x = k.element(vec![Rational::new(c0.into(), d.into()), q(c1)]).unwrap();
        prop_assert!((&x * &x.inverse().unwrap()).is_one());
    }

    #[test]
    fn coprime_basis_is_pairwise_coprime_and_covers(
        polys in prop::collection::vec(int_poly(3), 1..=4),
    ) {
        let polys: Vec<Polynomial> = polys
            .iter()
            .map(|c| qpoly(c))
            .filter(|p| p.deg() >= 1)
            .map(|p| p.squarefree_part().unwrap())
            .collect();
        let basis = coprime_basis(&polys).unwrap();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                prop_assert!(a.is_coprime(b).unwrap());
            }
        }
        // Every input is a product of basis elements.
        for p in &polys {
            let mut rest = p.monic().unwrap();
            for b in &basis {
                if b.divides(&rest).unwrap() {
                    rest = rest.exact_div(b).unwrap();
                }
            }
            prop_assert_eq!(rest.deg(), 0);
        }
    }
}

#[test]
fn two_hundred_inverses_in_each_field() {
    let k = special();
    let r = NumberField::rationals();
    let mut count = 0;
    for i in -10i64..10 {
        for j in 1..=10i64 {
            let x = r.from_rational(Rational::new((2 * i * j + 1).into(), j.into()));
            assert!((&x * &x.inverse().unwrap()).is_one());
            let y: FieldElement = k.element(vec![q(i), Rational::new(1.into(), j.into())]).unwrap();
            assert!((&y * &y.inverse().unwrap()).is_one());
            count += 1;
        }
    }
    assert_eq!(count, 200);
}

#[test]
fn sylvester_oracle_sanity() {
    // Res(x² − 1, x − 2) = g(1)·g(−1) with g = x − 2, times lc(f)^1.
    assert_eq!(sylvester_resultant(&[-1, 0, 1], &[-2, 1]), q(3));
    assert_eq!(qpoly(&[-1, 0, 1]).resultant(&qpoly(&[-2, 1])).unwrap().as_rational().cloned(), Some(q(3)));
}
