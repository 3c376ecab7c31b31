use super::{MapError, ProjectivePoint, Result};
use crate::exactcore::{NumberField, Polynomial};
use std::cmp::Ordering;

/// A Galois-stable finite set of points of `P¹`: the roots of `poly` (monic,
/// squarefree, possibly the constant 1) plus `∞` when flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCluster {
    poly: Polynomial,
    at_infinity: bool,
}

impl PointCluster {
    /// `poly` is made monic; squarefreeness is the caller's responsibility.
    pub fn new(poly: Polynomial, at_infinity: bool) -> Result<Self> {
        debug_assert!(!poly.is_zero(), "cluster polynomial must be nonzero");
        Ok(PointCluster {
            poly: poly.monic()?,
            at_infinity,
        })
    }

    pub fn affine(poly: Polynomial) -> Result<Self> {
        Self::new(poly, false)
    }

    pub fn empty(field: &NumberField) -> Self {
        PointCluster {
            poly: Polynomial::one(field),
            at_infinity: false,
        }
    }

    pub fn infinity(field: &NumberField) -> Self {
        PointCluster {
            poly: Polynomial::one(field),
            at_infinity: true,
        }
    }

    /// Cluster of explicitly listed points; duplicates are rejected.
    pub fn from_points(field: &NumberField, points: &[ProjectivePoint]) -> Result<Self> {
        let mut poly = Polynomial::one(field);
        let mut at_infinity = false;
        for p in points {
            match p {
                ProjectivePoint::Infinity => {
                    if at_infinity {
                        return Err(MapError::DuplicatePoint);
                    }
                    at_infinity = true;
                }
                ProjectivePoint::Finite(v) => {
                    if poly.eval(v).is_zero() {
                        return Err(MapError::DuplicatePoint);
                    }
                    poly = &poly * &Polynomial::linear_root(v);
                }
            }
        }
        Ok(PointCluster { poly, at_infinity })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn at_infinity(&self) -> bool {
        self.at_infinity
    }

    /// Number of geometric points.
    pub fn size(&self) -> usize {
        self.poly.deg() + usize::from(self.at_infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn union(&self, other: &PointCluster) -> Result<PointCluster> {
        Ok(PointCluster {
            poly: self.poly.lcm(&other.poly)?,
            at_infinity: self.at_infinity || other.at_infinity,
        })
    }

    pub fn intersection(&self, other: &PointCluster) -> Result<PointCluster> {
        Ok(PointCluster {
            poly: self.poly.gcd(&other.poly)?,
            at_infinity: self.at_infinity && other.at_infinity,
        })
    }

    /// Points of `self` not in `other`.
    pub fn difference(&self, other: &PointCluster) -> Result<PointCluster> {
        let g = self.poly.gcd(&other.poly)?;
        Ok(PointCluster {
            poly: self.poly.exact_div(&g)?.monic()?,
            at_infinity: self.at_infinity && !other.at_infinity,
        })
    }

    pub fn contains(&self, other: &PointCluster) -> Result<bool> {
        Ok(other.difference(self)?.is_empty())
    }

    /// Finite clusters by degree then coefficients; `∞` sorts last.
    pub fn canonical_cmp(&self, other: &PointCluster) -> Ordering {
        self.at_infinity
            .cmp(&other.at_infinity)
            .then_with(|| self.poly.canonical_cmp(&other.poly))
    }

    /// The single point, when there is exactly one.
    pub fn single_point(&self) -> Option<ProjectivePoint> {
        match (self.poly.deg(), self.at_infinity) {
            (0, true) => Some(ProjectivePoint::Infinity),
            (1, false) => Some(ProjectivePoint::Finite(-self.poly.coeff(0))),
            _ => None,
        }
    }

    /// `t = c` for a single point, otherwise as [`PointCluster::display`].
    pub fn describe(&self, var: &str) -> String {
        match self.single_point() {
            Some(p) => format!("{var} = {p}"),
            None => self.display(var),
        }
    }

    pub fn display(&self, var: &str) -> String {
        match (self.poly.is_constant(), self.at_infinity) {
            (true, true) => "∞".into(),
            (true, false) => "∅".into(),
            (false, false) => format!("{{{} = 0}}", self.poly.display(var)),
            (false, true) => format!("{{{} = 0}} ∪ {{∞}}", self.poly.display(var)),
        }
    }
}

/// Image of a point set counted with multiplicity: `finite` is monic with one
/// root per source point (repeated when several points share a value) and
/// `infinity` counts the points sent to `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueDivisor {
    pub finite: Polynomial,
    pub infinity: usize,
}

impl ValueDivisor {
    pub fn degree(&self) -> usize {
        self.finite.deg() + self.infinity
    }

    /// Values grouped by how many points lie over them: `(values, count)`.
    pub fn by_count(&self) -> Result<Vec<(Polynomial, usize)>> {
        Ok(self
            .finite
            .squarefree_decomposition()?
            .into_iter()
            .map(|(f, c)| (f, c as usize))
            .collect())
    }

    pub fn support(&self) -> Result<PointCluster> {
        PointCluster::new(self.finite.squarefree_part()?, self.infinity > 0)
    }
}

/// `φ⁻¹(value)` as a divisor on the source line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDivisor {
    pub parts: Vec<(PointCluster, u32)>,
    pub total_degree: usize,
}

/// Splits the union of several value divisors into pairwise coprime rows and
/// tallies, per row, how many points of each keyed divisor lie over each
/// geometric value of the row. The `∞` row, if any, comes last.
pub(crate) fn refine_values<K: Clone + Ord>(
    field: &NumberField,
    items: &[(K, ValueDivisor)],
) -> Result<Vec<(PointCluster, std::collections::BTreeMap<K, usize>)>> {
    use std::collections::BTreeMap;
    let mut grouped = Vec::with_capacity(items.len());
    let mut all = Vec::new();
    for (key, vd) in items {
        let parts = vd.by_count()?;
        all.extend(parts.iter().map(|(v, _)| v.clone()));
        grouped.push((key, parts, vd.infinity));
    }
    let basis = crate::exactcore::coprime_basis(&all)?;
    let mut rows = Vec::with_capacity(basis.len() + 1);
    for b in basis {
        let mut tally: BTreeMap<K, usize> = BTreeMap::new();
        for (key, parts, _) in &grouped {
            for (v, count) in parts {
                if b.gcd(v)?.is_constant() {
                    continue;
                }
                if !b.divides(v)? {
                    return Err(MapError::Inconsistency(
                        "coprime basis element straddles a value class".into(),
                    ));
                }
                *tally.entry((*key).clone()).or_default() += count;
            }
        }
        rows.push((PointCluster::affine(b)?, tally));
    }
    let mut tally: BTreeMap<K, usize> = BTreeMap::new();
    for (key, _, inf) in &grouped {
        if *inf > 0 {
            *tally.entry((*key).clone()).or_default() += inf;
        }
    }
    if !tally.is_empty() {
        rows.push((PointCluster::infinity(field), tally));
    }
    Ok(rows)
}
