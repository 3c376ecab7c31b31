use super::coincidence::{coincidence_analysis, CoincidenceReport};
use super::{PencilSpec, Result};
use crate::mapkit::{PointCluster, RamificationProfile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Offending points, on the source line for S1/S2 and on the target line
    /// for S3.
    pub witness: Option<PointCluster>,
    pub detail: String,
}

/// Evidence for or against semistability of the pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistabilityCertificate {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// Values over which the fiber is singular.
    pub critical_set: PointCluster,
    pub s: usize,
    pub phi_profile: RamificationProfile,
    pub psi_profile: RamificationProfile,
    pub coincidences: CoincidenceReport,
}

fn simple_ramification(name: &'static str, profile: &RamificationProfile) -> Result<CheckResult> {
    let bad = profile.points_with_index_at_least(3)?;
    let detail = profile
        .ramification_points
        .iter()
        .filter(|(_, e)| *e >= 3)
        .map(|(c, e)| format!("ramification index {e} at {}", c.describe("t")))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(CheckResult {
        name,
        passed: bad.is_none(),
        witness: bad,
        detail,
    })
}

fn unramified_coincidences(
    name: &'static str,
    coincidences: &PointCluster,
    profile: &RamificationProfile,
) -> Result<CheckResult> {
    let ramified = profile
        .points_with_index_at_least(2)?
        .unwrap_or_else(|| PointCluster::empty(coincidences.poly().field()));
    let common = coincidences.intersection(&ramified)?;
    let passed = common.is_empty();
    let detail = if passed {
        String::new()
    } else {
        format!("coincidence at ramification points {}", common.describe("t"))
    };
    Ok(CheckResult {
        name,
        passed,
        witness: (!passed).then_some(common),
        detail,
    })
}

/// Runs, in order: simple ramification of both maps; coincidences away from
/// ramification of both maps; containment of the critical set in the declared
/// set when one is given.
pub fn semistability_verify(spec: &PencilSpec) -> Result<SemistabilityCertificate> {
    let (phi, psi) = (spec.phi(), spec.psi());
    let phi_profile = phi.ramification_profile()?;
    let psi_profile = psi.ramification_profile()?;
    let coincidences = coincidence_analysis(phi, psi)?;
    let coincidence_points = coincidences.support()?;

    let mut checks = vec![
        simple_ramification("S1.phi_simple_ramification", &phi_profile)?,
        simple_ramification("S1.psi_simple_ramification", &psi_profile)?,
        unramified_coincidences("S2.coincidences_unramified_for_phi", &coincidence_points, &phi_profile)?,
        unramified_coincidences("S2.coincidences_unramified_for_psi", &coincidence_points, &psi_profile)?,
    ];

    let coincidence_values = phi.push_forward(&coincidence_points)?.support()?;
    let critical_set = phi_profile
        .branch_locus()?
        .union(&psi_profile.branch_locus()?)?
        .union(&coincidence_values)?;

    if let Some(declared) = spec.declared() {
        let missing = critical_set.difference(&declared.cluster)?;
        let passed = missing.is_empty();
        checks.push(CheckResult {
            name: "S3.critical_set_within_declared",
            passed,
            witness: (!passed).then(|| missing.clone()),
            detail: if passed {
                String::new()
            } else {
                format!("critical values outside the declared set: {}", missing.display("y"))
            },
        });
    }

    let s = critical_set.size();
    Ok(SemistabilityCertificate {
        passed: checks.iter().all(|c| c.passed),
        checks,
        critical_set,
        s,
        phi_profile,
        psi_profile,
        coincidences,
    })
}
