use super::certificate::{semistability_verify, SemistabilityCertificate};
use super::{PencilError, PencilSpec, Result};
use crate::audit::{fiber_lower_bound, FibrationData};
use crate::exactcore::Rational;
use crate::mapkit::cluster::refine_values;
use crate::mapkit::PointCluster;
use num_bigint::BigInt;

/// Where a singular point of a fiber comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Origin {
    PhiBranch,
    PsiBranch,
    /// Graphs meeting with contact order `k`.
    Contact(u32),
}

impl Origin {
    fn milnor(self) -> u32 {
        match self {
            Origin::PhiBranch | Origin::PsiBranch => 0,
            Origin::Contact(k) => 2 * k - 1,
        }
    }
}

/// One row of the singular fiber table: a set of critical values whose
/// fibers all have the same singular points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberRow {
    pub values: PointCluster,
    /// `(μ, count)` per geometric value, ascending in `μ`. `μ = 0` is a fiber
    /// node at a smooth point of the surface; `μ = 2k − 1` is an `A_{2k−1}`
    /// point of the stable model.
    pub contributions: Vec<(u32, usize)>,
    /// `Σ (μ + 1)·count` per geometric value.
    pub milnor_plus_sum: usize,
}

impl FiberRow {
    pub fn size(&self) -> usize {
        self.values.size()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFiberTable {
    pub rows: Vec<FiberRow>,
    pub s: usize,
    pub e_f: usize,
    /// Ascending.
    pub mu_multiset: Vec<u32>,
}

fn inconsistency(msg: impl Into<String>) -> PencilError {
    PencilError::Inconsistency(msg.into())
}

/// Classifies the singular fibers of a pencil whose certificate passes.
pub fn singular_fiber_table(spec: &PencilSpec) -> Result<SingularFiberTable> {
    let cert = semistability_verify(spec)?;
    table_from_certificate(spec, &cert)
}

pub(crate) fn table_from_certificate(
    spec: &PencilSpec,
    cert: &SemistabilityCertificate,
) -> Result<SingularFiberTable> {
    if !cert.passed {
        let failed: Vec<&str> = cert.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        return Err(PencilError::NotSemistable(failed.join(", ")));
    }
    let (phi, psi) = (spec.phi(), spec.psi());
    let field = spec.field();

    let coincidence_points = cert.coincidences.support()?;
    for profile in [&cert.phi_profile, &cert.psi_profile] {
        for (c, _) in &profile.ramification_points {
            if !c.intersection(&coincidence_points)?.is_empty() {
                return Err(inconsistency("branch and contact contributions share a point"));
            }
        }
    }

    let mut items = Vec::new();
    for (c, _) in &cert.phi_profile.ramification_points {
        items.push((Origin::PhiBranch, phi.push_forward(c)?));
    }
    for (c, _) in &cert.psi_profile.ramification_points {
        items.push((Origin::PsiBranch, psi.push_forward(c)?));
    }
    for (c, k) in &cert.coincidences.clusters {
        items.push((Origin::Contact(*k), phi.push_forward(c)?));
    }

    let mut rows = Vec::new();
    let mut covered = PointCluster::empty(field);
    for (values, tally) in refine_values(field, &items)? {
        let mut by_mu: std::collections::BTreeMap<u32, usize> = Default::default();
        for (origin, count) in tally {
            *by_mu.entry(origin.milnor()).or_default() += count;
        }
        let contributions: Vec<(u32, usize)> = by_mu.into_iter().collect();
        let milnor_plus_sum = contributions.iter().map(|(m, c)| (*m as usize + 1) * c).sum();
        covered = covered.union(&values)?;
        rows.push(FiberRow {
            values,
            contributions,
            milnor_plus_sum,
        });
    }
    if covered != cert.critical_set {
        return Err(inconsistency("table rows do not cover the critical set"));
    }

    let s: usize = rows.iter().map(FiberRow::size).sum();
    let e_f: usize = rows.iter().map(|r| r.size() * r.milnor_plus_sum).sum();
    let mut mu_multiset: Vec<u32> = rows
        .iter()
        .flat_map(|r| {
            r.contributions
                .iter()
                .flat_map(move |(m, c)| std::iter::repeat_n(*m, c * r.size()))
        })
        .collect();
    mu_multiset.sort_unstable();

    let g = spec.genus() as usize;
    if s != cert.s {
        return Err(inconsistency(format!("table has {s} values, certificate {}", cert.s)));
    }
    if e_f != 8 * g + 4 {
        return Err(inconsistency(format!("e_f = {e_f}, expected 8g + 4 = {}", 8 * g + 4)));
    }
    if let Ok(bound) = fiber_lower_bound(spec.genus(), 0) {
        if s < bound as usize {
            return Err(inconsistency(format!(
                "certified semistable pencil with {s} singular fibers, below the known bound {bound}"
            )));
        }
    }
    Ok(SingularFiberTable {
        rows,
        s,
        e_f,
        mu_multiset,
    })
}

/// Relative invariants: `χ_f = g` (the double cover has `χ(O) = 1`),
/// `K² = 12χ_f − e_f`, base genus 0.
pub fn pencil_invariants(spec: &PencilSpec) -> Result<FibrationData> {
    let table = singular_fiber_table(spec)?;
    invariants_from_table(spec, &table)
}

pub(crate) fn invariants_from_table(spec: &PencilSpec, table: &SingularFiberTable) -> Result<FibrationData> {
    let q = |n: i64| Rational::from_integer(BigInt::from(n));
    let g = spec.genus() as i64;
    let chi_f = q(g);
    let e_f = q(table.e_f as i64);
    let k2_rel = q(12) * &chi_f - &e_f;
    if k2_rel != q(4 * g - 4) {
        return Err(inconsistency("K^2 differs from 4g - 4"));
    }
    Ok(FibrationData {
        g: spec.genus(),
        base_genus: 0,
        s: table.s as u32,
        mu: table.mu_multiset.clone(),
        chi_f,
        k2_rel,
        e_f,
    })
}
