use super::{PencilError, Result};
use crate::exactcore::{NumberField, Polynomial};
use crate::mapkit::{PointCluster, ProjectivePoint, RationalMap};

/// Explicit critical-value set supplied with a pencil, kept in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeclaredSet {
    pub points: Vec<ProjectivePoint>,
    pub cluster: PointCluster,
}

impl DeclaredSet {
    pub fn new(field: &NumberField, points: Vec<ProjectivePoint>) -> Result<Self> {
        let cluster = PointCluster::from_points(field, &points)?;
        Ok(DeclaredSet { points, cluster })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSpec {
    phi: RationalMap,
    psi: RationalMap,
    genus: u32,
    declared: Option<DeclaredSet>,
    pub label: Option<String>,
}

impl PencilSpec {
    pub fn new(phi: RationalMap, psi: RationalMap, declared: Option<DeclaredSet>) -> Result<Self> {
        if phi.field() != psi.field() {
            return Err(PencilError::FieldMismatch);
        }
        let total = phi.degree() + psi.degree();
        if total % 2 == 1 || total < 4 {
            return Err(PencilError::BadDegrees(total));
        }
        if phi == psi {
            return Err(PencilError::Degenerate(Polynomial::zero(phi.field())));
        }
        Ok(PencilSpec {
            phi,
            psi,
            genus: ((total - 2) / 2) as u32,
            declared,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn phi(&self) -> &RationalMap {
        &self.phi
    }

    pub fn psi(&self) -> &RationalMap {
        &self.psi
    }

    pub fn field(&self) -> &NumberField {
        self.phi.field()
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn declared(&self) -> Option<&DeclaredSet> {
        self.declared.as_ref()
    }

    /// Non-fatal remarks about the input.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.genus == 1 {
            w.push("genus 1 pencil: excluded from the genus >= 2 fiber bound".to_string());
        }
        w
    }
}
