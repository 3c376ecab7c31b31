//! Numerical effect of a base change `C̃ → C` of degree `d·e` whose fiber
//! over every critical value is `d` points of ramification index `e`.
//!
//! The covers themselves are never built; only invariants are transformed.

use crate::audit::{fibdata_validate, FibrationData};
use crate::exactcore::Rational;
use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseChangeError {
    #[error("d must be at least 1 and e at least 1")]
    InvalidParams,
    #[error("over a rational base the ramification index e must be odd, got {0}")]
    EvenIndexOverRationalBase(u32),
    #[error("2b - 2 = {0} gives no integral genus >= 0 for the new base")]
    NonIntegralGenus(i64),
    #[error("input data fails validation: {0}")]
    InvalidData(String),
    #[error("requires s > 0")]
    NoSingularFibers,
    #[error("requires g >= 2, got {0}")]
    GenusTooSmall(u32),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseChangeParams {
    pub d: u32,
    pub e: u32,
}

impl BaseChangeParams {
    /// `e = 1` is accepted as the identity convenience; otherwise `e ≥ 2`, odd
    /// when the base is rational.
    pub fn check_admissible(&self, base_genus: u32) -> Result<(), BaseChangeError> {
        if self.d == 0 || self.e == 0 {
            return Err(BaseChangeError::InvalidParams);
        }
        if base_genus == 0 && self.e.is_multiple_of(2) {
            return Err(BaseChangeError::EvenIndexOverRationalBase(self.e));
        }
        Ok(())
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Invariants of the pulled-back fibration:
/// `s̃ = ds`, `K̃² = de·K²`, `μ̃ + 1 = e(μ + 1)` (each point repeated `d`
/// times) and `2b̃ − 2 = de(2b − 2) + d(e − 1)s`.
pub fn pullback_transform(
    fd: &FibrationData,
    params: BaseChangeParams,
) -> Result<FibrationData, BaseChangeError> {
    params.check_admissible(fd.base_genus)?;
    let broken: Vec<String> = fibdata_validate(fd)
        .into_iter()
        .filter(|v| !v.passed && (v.name == "euler_milnor_sum" || v.name == "noether"))
        .map(|v| v.name)
        .collect();
    if !broken.is_empty() {
        return Err(BaseChangeError::InvalidData(broken.join(", ")));
    }
    let (d, e) = (params.d as i64, params.e as i64);
    let s = fd.s as i64;
    let two_b_minus_two = d * e * (2 * fd.base_genus as i64 - 2) + d * (e - 1) * s;
    if two_b_minus_two % 2 != 0 || two_b_minus_two < -2 {
        return Err(BaseChangeError::NonIntegralGenus(two_b_minus_two));
    }
    let base_genus = ((two_b_minus_two + 2) / 2) as u32;
    let mut mu: Vec<u32> = fd
        .mu
        .iter()
        .flat_map(|&m| std::iter::repeat_n(params.e * (m + 1) - 1, params.d as usize))
        .collect();
    mu.sort_unstable();
    let de = q(d * e);
    let k2_rel = &de * &fd.k2_rel;
    let e_f = q(mu.iter().map(|&m| m as i64 + 1).sum());
    let chi_f = (&k2_rel + &e_f) / q(12);
    if e_f != &de * &fd.e_f || chi_f != &de * &fd.chi_f {
        return Err(BaseChangeError::Inconsistency(
            "pulled-back invariants are not d·e times the originals".into(),
        ));
    }
    Ok(FibrationData {
        g: fd.g,
        base_genus,
        s: fd.s * params.d,
        mu,
        chi_f,
        k2_rel,
        e_f,
    })
}

/// `−(2g−2)s/e + (1/e²) Σ 3/(μ+1)`, an upper bound for
/// `K² − (2g−2)(2b−2+s)` obtained from the pulled-back fibration.
pub fn gap_rhs(fd: &FibrationData, e: u32) -> Result<Rational, BaseChangeError> {
    if fd.s == 0 {
        return Err(BaseChangeError::NoSingularFibers);
    }
    if e == 0 {
        return Err(BaseChangeError::InvalidParams);
    }
    let e = q(e as i64);
    let linear = fd.canonical_degree() * q(fd.s as i64) / &e;
    Ok(fd.inverse_milnor_sum() / (&e * &e) - linear)
}

/// The index `e` for which the gap bound first turns negative, with the
/// quantities that make it a certificate of the strict canonical class
/// inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictVojtaCertificate {
    pub e: u32,
    /// `gap_rhs(fd, e)`, negative.
    pub gap_bound: Rational,
    /// `gap_rhs` at the previous admissible index, if any; non-negative.
    pub previous: Option<(u32, Rational)>,
    /// `K² − (2g−2)(2b−2+s)`
    pub excess: Rational,
    /// `excess ≤ gap_bound < 0`
    pub implies_strict: bool,
}

/// Smallest admissible `e > 1` (odd over a rational base) with
/// `gap_rhs(fd, e) < 0`.
pub fn minimal_negative_e(fd: &FibrationData) -> Result<StrictVojtaCertificate, BaseChangeError> {
    if fd.s == 0 {
        return Err(BaseChangeError::NoSingularFibers);
    }
    if fd.g < 2 {
        return Err(BaseChangeError::GenusTooSmall(fd.g));
    }
    let step = if fd.base_genus == 0 { 2 } else { 1 };
    let start = if fd.base_genus == 0 { 3 } else { 2 };
    // rhs < 0 exactly when e > Σ3/(μ+1) / ((2g−2)s); scan up to one step past it.
    let threshold = fd.inverse_milnor_sum() / (fd.canonical_degree() * q(fd.s as i64));
    let limit = threshold.floor().to_integer() + BigInt::from(2 * step + start);
    let limit: u32 = limit
        .try_into()
        .map_err(|_| BaseChangeError::Inconsistency("threshold out of range".into()))?;
    let mut previous = None;
    let mut e = start;
    while e <= limit {
        let rhs = gap_rhs(fd, e)?;
        if rhs.is_negative() {
            let excess = &fd.k2_rel - fd.canonical_degree() * fd.log_base_degree();
            let implies_strict = excess <= rhs;
            return Ok(StrictVojtaCertificate {
                e,
                gap_bound: rhs,
                previous,
                excess,
                implies_strict,
            });
        }
        previous = Some((e, rhs));
        e += step;
    }
    Err(BaseChangeError::Inconsistency(
        "no negative gap below the analytic threshold".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn builtin() -> FibrationData {
        let mut mu = vec![0; 8];
        mu.extend([1, 1, 3, 3]);
        FibrationData {
            g: 2,
            base_genus: 0,
            s: 5,
            mu,
            chi_f: q(2),
            k2_rel: q(4),
            e_f: q(20),
        }
    }

    #[test]
    fn pullback_of_builtin() {
        let t = pullback_transform(&builtin(), BaseChangeParams { d: 1, e: 3 }).unwrap();
        let mut mu = vec![2; 8];
        mu.extend([5, 5, 11, 11]);
        assert_eq!(
            t,
            FibrationData {
                g: 2,
                base_genus: 3,
                s: 5,
                mu,
                chi_f: q(6),
                k2_rel: q(12),
                e_f: q(60),
            }
        );
    }

    #[test]
    fn identity_and_parity() {
        let fd = builtin();
        assert_eq!(pullback_transform(&fd, BaseChangeParams { d: 1, e: 1 }).unwrap(), fd);
        assert_eq!(
            pullback_transform(&fd, BaseChangeParams { d: 1, e: 2 }).unwrap_err(),
            BaseChangeError::EvenIndexOverRationalBase(2)
        );
        let mut odd = fd.clone();
        odd.base_genus = 1;
        // de·0 + d(e−1)·5 with d = 1, e = 2 is odd
        assert_eq!(
            pullback_transform(&odd, BaseChangeParams { d: 1, e: 2 }).unwrap_err(),
            BaseChangeError::NonIntegralGenus(5)
        );
        let mut broken = fd;
        broken.e_f = q(21);
        assert!(matches!(
            pullback_transform(&broken, BaseChangeParams { d: 1, e: 3 }),
            Err(BaseChangeError::InvalidData(_))
        ));
    }

    #[test]
    fn gap_values() {
        let fd = builtin();
        assert_eq!(gap_rhs(&fd, 3).unwrap(), frac(-1, 6));
        assert_eq!(gap_rhs(&fd, 2).unwrap(), frac(17, 8));
        assert_eq!(gap_rhs(&fd, 5).unwrap(), frac(-43, 50));
        let mut none = fd;
        none.s = 0;
        assert_eq!(gap_rhs(&none, 3).unwrap_err(), BaseChangeError::NoSingularFibers);
    }

    #[test]
    fn minimal_index() {
        let cert = minimal_negative_e(&builtin()).unwrap();
        assert_eq!(cert.e, 3);
        assert_eq!(cert.gap_bound, frac(-1, 6));
        assert_eq!(cert.previous, None);
        assert_eq!(cert.excess, q(-2));
        assert!(cert.implies_strict);

        // twenty nodes: Σ = 60, threshold 6, odd e only
        let nodes = FibrationData {
            g: 2,
            base_genus: 0,
            s: 5,
            mu: vec![0; 20],
            chi_f: q(2),
            k2_rel: q(4),
            e_f: q(20),
        };
        let cert = minimal_negative_e(&nodes).unwrap();
        assert_eq!(cert.e, 7);
        assert_eq!(cert.previous.as_ref().map(|p| p.0), Some(5));
        assert!(!cert.previous.unwrap().1.is_negative());

        // Σ 3/(μ+1) = 1
        let tiny = FibrationData {
            mu: vec![2],
            ..nodes.clone()
        };
        assert_eq!(minimal_negative_e(&tiny).unwrap().e, 3);
        let tiny_b1 = FibrationData {
            base_genus: 1,
            ..tiny
        };
        assert_eq!(minimal_negative_e(&tiny_b1).unwrap().e, 2);

        let elliptic = FibrationData { g: 1, ..nodes };
        assert_eq!(minimal_negative_e(&elliptic).unwrap_err(), BaseChangeError::GenusTooSmall(1));
    }
}
