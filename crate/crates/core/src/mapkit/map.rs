use super::{FiberDivisor, MapError, PointCluster, Result, ValueDivisor};
use crate::exactcore::{FieldElement, NumberField, Polynomial};
use std::fmt;

/// A point of `P¹` over the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectivePoint {
    Finite(FieldElement),
    Infinity,
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(v) => write!(f, "{v}"),
            ProjectivePoint::Infinity => write!(f, "∞"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `t ↦ 1/t` on the source: `φ(1/t)`.
    Source,
    /// `y ↦ 1/y` on the target: `1/φ(t)`.
    Target,
}

/// `t ↦ numerator(t) / denominator(t)`, with coprime parts and a monic
/// denominator. The degree is the larger of the two degrees and is at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    numerator: Polynomial,
    denominator: Polynomial,
    degree: usize,
}

impl RationalMap {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if numerator.field() != denominator.field() {
            return Err(crate::exactcore::AlgebraError::FieldMismatch.into());
        }
        match (numerator.is_zero(), denominator.is_zero()) {
            (true, true) => return Err(MapError::ZeroMap),
            (false, true) => return Err(MapError::ZeroDenominator),
            _ => {}
        }
        numerator.check_cap()?;
        denominator.check_cap()?;
        let g = numerator.gcd(&denominator)?;
        let mut num = numerator.exact_div(&g)?;
        let mut den = denominator.exact_div(&g)?;
        let lc_inv = den.leading().expect("nonzero").inverse()?;
        num = num.scale(&lc_inv);
        den = den.scale(&lc_inv);
        let degree = num.deg().max(den.deg());
        if degree == 0 {
            return Err(MapError::ConstantMap);
        }
        Ok(RationalMap {
            numerator: num,
            denominator: den,
            degree,
        })
    }

    pub fn from_polynomial(p: Polynomial) -> Result<Self> {
        let one = Polynomial::one(p.field());
        Self::new(p, one)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> &NumberField {
        self.numerator.field()
    }

    pub fn evaluate(&self, point: &ProjectivePoint) -> Result<ProjectivePoint> {
        match point {
            ProjectivePoint::Finite(t) => {
                let d = self.denominator.eval(t);
                if d.is_zero() {
                    return Ok(ProjectivePoint::Infinity);
                }
                Ok(ProjectivePoint::Finite(self.numerator.eval(t).checked_div(&d)?))
            }
            ProjectivePoint::Infinity => {
                let (dn, dd) = (self.numerator.deg(), self.denominator.deg());
                if self.numerator.is_zero() || dn < dd {
                    Ok(ProjectivePoint::Finite(self.field().zero()))
                } else if dn > dd {
                    Ok(ProjectivePoint::Infinity)
                } else {
                    let lc = self.numerator.leading().expect("nonzero");
                    Ok(ProjectivePoint::Finite(lc.clone()))
                }
            }
        }
    }

    pub fn reparametrize(&self, chart: Chart) -> Result<RationalMap> {
        match chart {
            Chart::Source => RationalMap::new(
                self.numerator.reversed(self.degree),
                self.denominator.reversed(self.degree),
            ),
            Chart::Target => RationalMap::new(self.denominator.clone(), self.numerator.clone()),
        }
    }

    /// `numerator − value·denominator`, or the denominator over `∞`.
    fn fiber_polynomial(&self, value: &ProjectivePoint) -> Polynomial {
        match value {
            ProjectivePoint::Finite(v) => &self.numerator - &self.denominator.scale(v),
            ProjectivePoint::Infinity => self.denominator.clone(),
        }
    }

    pub fn fiber(&self, value: &ProjectivePoint) -> Result<FiberDivisor> {
        let h = self.fiber_polynomial(value);
        let mut parts = Vec::new();
        for (f, m) in h.squarefree_decomposition()? {
            parts.push((PointCluster::affine(f)?, m));
        }
        let drop = self.degree - h.deg();
        if drop > 0 {
            parts.push((PointCluster::infinity(self.field()), drop as u32));
        }
        let total_degree = parts.iter().map(|(c, m)| c.size() * *m as usize).sum();
        if total_degree != self.degree {
            return Err(MapError::Inconsistency(format!(
                "fiber degree {total_degree} differs from map degree {}",
                self.degree
            )));
        }
        Ok(FiberDivisor {
            parts,
            total_degree,
        })
    }

    /// `num'·den − num·den'`. Its roots are the affine critical points,
    /// including poles of order `k ≥ 2` (which vanish to order `k − 1`).
    pub fn wronskian(&self) -> Polynomial {
        &(&self.numerator.derivative() * &self.denominator)
            - &(&self.numerator * &self.denominator.derivative())
    }

    /// Source points with ramification index `e ≥ 2`, grouped by index. The
    /// point `∞` is always its own cluster.
    pub fn ramification_points(&self) -> Result<Vec<(PointCluster, u32)>> {
        let mut out = Vec::new();
        for (f, order) in self.wronskian().squarefree_decomposition()? {
            out.push((PointCluster::affine(f)?, order + 1));
        }
        let flipped = self.reparametrize(Chart::Source)?;
        let order = flipped.wronskian().valuation().unwrap_or(0);
        if order > 0 {
            out.push((PointCluster::infinity(self.field()), order as u32 + 1));
        }
        Ok(out)
    }

    /// Value divisor `Σ φ(c)` over the points `c` of a cluster.
    ///
    /// Poles go to `∞`. For the remaining affine points `A`, monic,
    /// `Π (y − φ(c)) = Res(A, y·den − num) / Res(A, den)`, recovered by
    /// interpolation in `y`.
    pub fn push_forward(&self, cluster: &PointCluster) -> Result<ValueDivisor> {
        let field = self.field();
        let poles = cluster.poly().gcd(&self.denominator)?;
        let affine = cluster.poly().exact_div(&poles)?.monic()?;
        let mut infinity = poles.deg();
        let n = affine.deg();
        let mut finite = if n == 0 {
            Polynomial::one(field)
        } else {
            let norm_inv = affine.resultant(&self.denominator)?.inverse()?;
            let xs: Vec<FieldElement> = (0..=n as i64).map(|j| field.from_int(j)).collect();
            let mut ys = Vec::with_capacity(xs.len());
            for y in &xs {
                let g = &self.denominator.scale(y) - &self.numerator;
                let r = if g.is_zero() { field.zero() } else { affine.resultant(&g)? };
                ys.push(&r * &norm_inv);
            }
            let poly = Polynomial::interpolate(field, &xs, &ys)?;
            if poly.deg() != n || !poly.is_monic() {
                return Err(MapError::Inconsistency(
                    "push-forward is not monic of the cluster's degree".into(),
                ));
            }
            poly
        };
        if cluster.at_infinity() {
            match self.evaluate(&ProjectivePoint::Infinity)? {
                ProjectivePoint::Finite(v) => finite = &finite * &Polynomial::linear_root(&v),
                ProjectivePoint::Infinity => infinity += 1,
            }
        }
        Ok(ValueDivisor { finite, infinity })
    }

    /// `Π (num − v·den)` over the roots `v` of `values`, via the
    /// homogenization `Σ qᵢ num^i den^(q−i)`. Up to the leading coefficient of
    /// `values`, this is the affine part of the fiber over the whole cluster.
    pub fn pull_back(&self, values: &Polynomial) -> Polynomial {
        let q = values.deg();
        let mut acc = Polynomial::zero(self.field());
        for (i, c) in values.coeffs().iter().enumerate() {
            let term = &self.numerator.pow(i as u32) * &self.denominator.pow((q - i) as u32);
            acc = &acc + &term.scale(c);
        }
        acc
    }
}
