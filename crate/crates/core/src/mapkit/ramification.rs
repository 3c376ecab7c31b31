use super::cluster::refine_values;
use super::{MapError, PointCluster, RationalMap, Result};
use crate::exactcore::NumberField;

/// One branch cluster and the shape of the fiber over each of its values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchEntry {
    pub cluster: PointCluster,
    /// `(e, count)` per geometric value, ascending in `e`; unramified points
    /// appear with `e = 1` when present.
    pub fiber: Vec<(u32, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub entries: Vec<BranchEntry>,
    /// Source points with index `e ≥ 2`, grouped by index.
    pub ramification_points: Vec<(PointCluster, u32)>,
    pub hurwitz_total: usize,
    pub simple_only: bool,
    field: NumberField,
}

impl RamificationProfile {
    /// Union of all branch clusters.
    pub fn branch_locus(&self) -> Result<PointCluster> {
        let mut acc = PointCluster::empty(&self.field);
        for e in &self.entries {
            acc = acc.union(&e.cluster)?;
        }
        Ok(acc)
    }

    /// Source points of index at least `min_index`.
    pub fn points_with_index_at_least(&self, min_index: u32) -> Result<Option<PointCluster>> {
        let mut acc: Option<PointCluster> = None;
        for (c, e) in &self.ramification_points {
            if *e >= min_index {
                acc = Some(match acc {
                    None => c.clone(),
                    Some(a) => a.union(c)?,
                });
            }
        }
        Ok(acc)
    }
}

impl RationalMap {
    /// Branch clusters with their fiber shapes, computed without factoring.
    ///
    /// Ramification points come from the squarefree structure of the
    /// Wronskian (and its source-flipped twin at `∞`). Each index class is
    /// pushed forward to a value divisor, and the union is refined into
    /// coprime rows with a uniform fiber shape.
    pub fn ramification_profile(&self) -> Result<RamificationProfile> {
        let ramification_points = self.ramification_points()?;
        let mut items = Vec::with_capacity(ramification_points.len());
        for (cluster, e) in &ramification_points {
            items.push((*e, self.push_forward(cluster)?));
        }
        let rows = refine_values(self.field(), &items)?;
        let mut entries = Vec::with_capacity(rows.len());
        let mut hurwitz_total = 0usize;
        for (cluster, tally) in rows {
            let ramified: usize = tally.iter().map(|(e, c)| *e as usize * c).sum();
            if ramified > self.degree() {
                return Err(MapError::Inconsistency(format!(
                    "fiber multiplicities {ramified} exceed degree {}",
                    self.degree()
                )));
            }
            let mut fiber: Vec<(u32, usize)> = Vec::new();
            if ramified < self.degree() {
                fiber.push((1, self.degree() - ramified));
            }
            fiber.extend(tally.iter().map(|(e, c)| (*e, *c)));
            hurwitz_total += cluster.size()
                * tally.iter().map(|(e, c)| (*e as usize - 1) * c).sum::<usize>();
            entries.push(BranchEntry { cluster, fiber });
        }
        let expected = 2 * self.degree() - 2;
        if hurwitz_total != expected {
            return Err(MapError::Inconsistency(format!(
                "Hurwitz total {hurwitz_total} differs from 2·deg − 2 = {expected}"
            )));
        }
        let simple_only = ramification_points.iter().all(|(_, e)| *e <= 2);
        Ok(RamificationProfile {
            entries,
            ramification_points,
            hurwitz_total,
            simple_only,
            field: self.field().clone(),
        })
    }
}
