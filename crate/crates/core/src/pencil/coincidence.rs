use super::{PencilError, Result};
use crate::exactcore::Polynomial;
use crate::mapkit::{Chart, PointCluster, RationalMap};

/// Points where the graphs of `φ` and `ψ` meet, with contact orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceReport {
    /// `num_φ·den_ψ − num_ψ·den_φ`
    pub polynomial: Polynomial,
    pub clusters: Vec<(PointCluster, u32)>,
    pub total_contact: usize,
}

impl CoincidenceReport {
    pub fn support(&self) -> Result<PointCluster> {
        let field = self.polynomial.field();
        let mut acc = PointCluster::empty(field);
        for (c, _) in &self.clusters {
            acc = acc.union(c)?;
        }
        Ok(acc)
    }
}

fn cross(phi: &RationalMap, psi: &RationalMap) -> Polynomial {
    &(phi.numerator() * psi.denominator()) - &(psi.numerator() * phi.denominator())
}

/// Affine coincidences (common poles included) come from the squarefree
/// structure of the cross polynomial; the point `∞` from the same polynomial
/// in the flipped source chart.
pub fn coincidence_analysis(phi: &RationalMap, psi: &RationalMap) -> Result<CoincidenceReport> {
    let polynomial = cross(phi, psi);
    if polynomial.is_zero() {
        return Err(PencilError::Degenerate(polynomial));
    }
    let mut clusters = Vec::new();
    for (f, k) in polynomial.squarefree_decomposition()? {
        clusters.push((PointCluster::affine(f)?, k));
    }
    let flipped = cross(
        &phi.reparametrize(Chart::Source)?,
        &psi.reparametrize(Chart::Source)?,
    );
    let at_infinity = flipped.valuation().unwrap_or(0);
    if at_infinity > 0 {
        clusters.push((PointCluster::infinity(phi.field()), at_infinity as u32));
    }
    let total_contact: usize = clusters.iter().map(|(c, k)| c.size() * *k as usize).sum();
    let expected = phi.degree() + psi.degree();
    if total_contact != expected {
        return Err(PencilError::Inconsistency(format!(
            "graphs meet with total contact {total_contact}, expected {expected}"
        )));
    }
    Ok(CoincidenceReport {
        polynomial,
        clusters,
        total_contact,
    })
}
