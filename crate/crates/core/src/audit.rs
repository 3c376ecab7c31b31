//! Exact checks of the standard inequalities for a semistable fibration
//! `f: S → C` of genus `g` with `s` singular fibers.
//!
//! Every verdict keeps both sides as exact rationals. Nothing here proves a
//! theorem; a failed verdict on data that claims to come from a real
//! fibration means the data (or the code that produced it) is wrong.

use crate::exactcore::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("slope needs chi_f > 0, got {0}")]
    NonPositiveChi(Rational),
    #[error("strict canonical class inequality needs s > 0")]
    NoSingularFibers,
    #[error("m({0}) is undefined")]
    AdeOutOfRange(AdeKind),
    #[error("no known lower bound for g = {g}, base genus {base_genus}")]
    UnsupportedBound { g: u32, base_genus: u32 },
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Numerical invariants of a fibration. With `b = base_genus`:
/// `chi_f = χ(O_S) − (g−1)(b−1)`, `k2_rel = K_S² − 8(g−1)(b−1)`,
/// `e_f = c₂(S) − 4(g−1)(b−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationData {
    pub g: u32,
    pub base_genus: u32,
    pub s: u32,
    /// Milnor numbers of the singular points of the stable model (0 for a
    /// fiber node on the smooth part), ascending.
    pub mu: Vec<u32>,
    pub chi_f: Rational,
    pub k2_rel: Rational,
    pub e_f: Rational,
}

impl FibrationData {
    /// `Σ (μ + 1)`
    pub fn milnor_sum(&self) -> Rational {
        q(self.mu.iter().map(|&m| m as i64 + 1).sum())
    }

    /// `Σ 3/(μ + 1)`
    pub fn inverse_milnor_sum(&self) -> Rational {
        self.mu
            .iter()
            .fold(Rational::zero(), |acc, &m| acc + frac(3, m as i64 + 1))
    }

    pub fn slope(&self) -> Option<Rational> {
        (!self.chi_f.is_zero()).then(|| &self.k2_rel / &self.chi_f)
    }

    /// `2g − 2`
    pub fn canonical_degree(&self) -> Rational {
        q(2 * self.g as i64 - 2)
    }

    /// `2b − 2 + s`
    pub fn log_base_degree(&self) -> Rational {
        q(2 * self.base_genus as i64 - 2 + self.s as i64)
    }
}

/// Chern numbers of the total space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceChernData {
    pub c1_sq: Rational,
    pub c2: Rational,
}

impl SurfaceChernData {
    pub fn from_fibration(fd: &FibrationData) -> Self {
        let t = q((fd.g as i64 - 1) * (fd.base_genus as i64 - 1));
        SurfaceChernData {
            c1_sq: &fd.k2_rel + q(8) * &t,
            c2: &fd.e_f + q(4) * &t,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Less,
    LessEq,
    Equal,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::LessEq => "<=",
            Relation::Equal => "=",
        }
    }

    fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Less => lhs < rhs,
            Relation::LessEq => lhs <= rhs,
            Relation::Equal => lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditVerdict {
    pub name: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    pub passed: bool,
    /// `lhs = rhs` under a non-strict relation.
    pub equality: bool,
    pub note: String,
}

impl AuditVerdict {
    pub fn new(name: &str, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let passed = relation.holds(&lhs, &rhs);
        let equality = relation == Relation::LessEq && lhs == rhs;
        AuditVerdict {
            name: name.to_string(),
            lhs,
            rhs,
            relation,
            passed,
            equality,
            note: String::new(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// `rhs − lhs`
    pub fn margin(&self) -> Rational {
        &self.rhs - &self.lhs
    }
}

impl fmt::Display for AuditVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} {} {}",
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            self.lhs,
            self.relation.symbol(),
            self.rhs
        )?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

/// Rational double point types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeKind {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl fmt::Display for AdeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeKind::A(r) => write!(f, "A_{r}"),
            AdeKind::D(r) => write!(f, "D_{r}"),
            AdeKind::E6 => write!(f, "E_6"),
            AdeKind::E7 => write!(f, "E_7"),
            AdeKind::E8 => write!(f, "E_8"),
        }
    }
}

/// Identity and positivity checks on the raw data. Positivity of `K²` is
/// only expected for `g ≥ 2`; elliptic fibrations have `K² = 0`.
pub fn fibdata_validate(fd: &FibrationData) -> Vec<AuditVerdict> {
    let mut out = vec![
        AuditVerdict::new("euler_milnor_sum", fd.e_f.clone(), Relation::Equal, fd.milnor_sum())
            .with_note("e_f = sum of (mu + 1)"),
        AuditVerdict::new(
            "noether",
            q(12) * &fd.chi_f,
            Relation::Equal,
            &fd.k2_rel + &fd.e_f,
        )
        .with_note("12 chi_f = K^2 + e_f"),
        AuditVerdict::new("chi_positive", Rational::zero(), Relation::Less, fd.chi_f.clone()),
    ];
    if fd.g >= 2 {
        out.push(AuditVerdict::new(
            "k2_positive",
            Rational::zero(),
            Relation::Less,
            fd.k2_rel.clone(),
        ));
    }
    out
}

/// `K²/χ ≥ 4 − 4/g`, checked as `4 − 4/g ≤ K²/χ`.
pub fn slope_audit(fd: &FibrationData) -> Result<AuditVerdict, AuditError> {
    if !fd.chi_f.is_positive() {
        return Err(AuditError::NonPositiveChi(fd.chi_f.clone()));
    }
    let slope = &fd.k2_rel / &fd.chi_f;
    let bound = q(4) - frac(4, fd.g as i64);
    let v = AuditVerdict::new("slope", bound, Relation::LessEq, slope);
    let note = if v.equality {
        "slope boundary: at least one singular fiber forced"
    } else {
        ""
    };
    Ok(v.with_note(note))
}

/// `K² ≤ (2g−2)(2b−2+s)`, strict on request.
pub fn vojta_audit(fd: &FibrationData, strict: bool) -> Result<AuditVerdict, AuditError> {
    if strict && fd.s == 0 {
        return Err(AuditError::NoSingularFibers);
    }
    let rhs = fd.canonical_degree() * fd.log_base_degree();
    Ok(if strict {
        AuditVerdict::new("vojta_strict", fd.k2_rel.clone(), Relation::Less, rhs)
    } else {
        AuditVerdict::new("vojta", fd.k2_rel.clone(), Relation::LessEq, rhs)
    })
}

/// Miyaoka's weight of a rational double point configuration.
pub fn miyaoka_m(kind: AdeKind) -> Result<Rational, AuditError> {
    Ok(match kind {
        AdeKind::A(r) if r >= 1 => {
            let r = r as i64;
            q(3 * (r + 1)) - frac(3, r + 1)
        }
        AdeKind::D(r) if r >= 4 => {
            let r = r as i64;
            q(3 * (r + 1)) - frac(3, 4 * (r - 2))
        }
        AdeKind::E6 => q(21) - frac(1, 8),
        AdeKind::E7 => q(24) - frac(1, 16),
        AdeKind::E8 => q(27) - frac(1, 40),
        other => return Err(AuditError::AdeOutOfRange(other)),
    })
}

/// `Σ m(E_i) ≤ 3c₂ − c₁²` for disjoint ADE configurations on a surface with
/// nef canonical class. Both hypotheses are the caller's attestation.
pub fn miyaoka_audit(
    chern: &SurfaceChernData,
    curves: &[AdeKind],
) -> Result<AuditVerdict, AuditError> {
    let mut total = Rational::zero();
    for &c in curves {
        total += miyaoka_m(c)?;
    }
    let rhs = q(3) * &chern.c2 - &chern.c1_sq;
    Ok(AuditVerdict::new("miyaoka", total, Relation::LessEq, rhs)
        .with_note("attested: K_S nef, curves disjoint"))
}

/// The `A_μ` configurations of the stable-model singular points (`μ ≥ 1`).
pub fn ade_curves_from_mu(mu: &[u32]) -> Vec<AdeKind> {
    mu.iter().filter(|&&m| m >= 1).map(|&m| AdeKind::A(m)).collect()
}

/// `K² ≤ Σ 3/(μ+1) + (2g−2)(2b−2)`
pub fn eq4_audit(fd: &FibrationData) -> AuditVerdict {
    let rhs = fd.inverse_milnor_sum()
        + fd.canonical_degree() * q(2 * fd.base_genus as i64 - 2);
    AuditVerdict::new("miyaoka_bound_k2", fd.k2_rel.clone(), Relation::LessEq, rhs)
}

/// `χ_f < (g/2)(2b − 2 + s)`
pub fn theorem2_audit(fd: &FibrationData) -> AuditVerdict {
    let rhs = frac(fd.g as i64, 2) * fd.log_base_degree();
    let v = AuditVerdict::new("strict_chi_bound", fd.chi_f.clone(), Relation::Less, rhs);
    let note = format!("margin {}", v.margin());
    v.with_note(note)
}

/// Published minimum number of singular fibers of a non-trivial semistable
/// fibration over `P¹`: 5 for `g ≥ 2`, 4 for `g = 1`.
pub fn fiber_lower_bound(g: u32, base_genus: u32) -> Result<u32, AuditError> {
    match (g, base_genus) {
        (0, _) | (_, 1..) => Err(AuditError::UnsupportedBound { g, base_genus }),
        (1, 0) => Ok(4),
        _ => Ok(5),
    }
}

/// Every applicable check, in fixed order.
pub fn full_audit(fd: &FibrationData) -> Vec<AuditVerdict> {
    let mut out = fibdata_validate(fd);
    if fd.g >= 2 {
        match slope_audit(fd) {
            Ok(v) => out.push(v),
            Err(e) => out.push(failed("slope", e)),
        }
    }
    out.extend(vojta_audit(fd, false));
    if fd.s > 0 && fd.g >= 2 {
        out.extend(vojta_audit(fd, true));
    }
    if fd.g >= 2 {
        out.push(eq4_audit(fd));
        out.push(theorem2_audit(fd));
    }
    if let Ok(bound) = fiber_lower_bound(fd.g, fd.base_genus) {
        out.push(
            AuditVerdict::new("fiber_lower_bound", q(bound as i64), Relation::LessEq, q(fd.s as i64))
                .with_note("s >= known lower bound"),
        );
    }
    out
}

fn failed(name: &str, err: AuditError) -> AuditVerdict {
    AuditVerdict {
        name: name.to_string(),
        lhs: Rational::zero(),
        rhs: Rational::zero(),
        relation: Relation::LessEq,
        passed: false,
        equality: false,
        note: err.to_string(),
    }
}
