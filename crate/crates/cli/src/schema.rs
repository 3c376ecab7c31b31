//! On-disk JSON formats.
//!
//! Rationals are strings (`"4"`, `"-57/2"`). A field element is an array of
//! rationals in the power basis `1, α, …, α^{n−1}`, of length exactly `n`.
//! Polynomials and the field modulus are listed low degree first.

use crate::error::CliError;
use pencilforge_core::exactcore::{format_rational, parse_rational};
use pencilforge_core::mapkit::MapError;
use pencilforge_core::pencil::{DeclaredSet, PencilError};
use pencilforge_core::{
    FibrationData, FieldElement, NumberField, PencilSpec, Polynomial, ProjectivePoint, Rational,
    RationalMap,
};
use serde::{Deserialize, Serialize};

pub const INFINITY_MARKER: &str = "inf";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Monic, over Q. `["0", "1"]` is Q itself.
    pub field_modulus: Vec<String>,
    pub phi_num: Vec<Vec<String>>,
    pub phi_den: Vec<Vec<String>>,
    pub psi_num: Vec<Vec<String>>,
    pub psi_den: Vec<Vec<String>>,
    #[serde(rename = "declared_R", default, skip_serializing_if = "Option::is_none")]
    pub declared_r: Option<Vec<DeclaredPoint>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DeclaredPoint {
    Finite(Vec<String>),
    /// Must be the string `"inf"`.
    Marker(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub g: u32,
    pub base_genus: u32,
    pub s: u32,
    pub mu: Vec<u32>,
    pub chi_f: String,
    pub k2_rel: String,
    pub e_f: String,
}

/// Either input format, told apart by the `field_modulus` key.
pub enum InputFile {
    Pencil(PencilFile),
    Fibration(FibrationFile),
}

fn syntax(e: serde_json::Error) -> CliError {
    CliError::Input(format!("line {} column {}: {e}", e.line(), e.column()))
}

pub fn parse_input(text: &str) -> Result<InputFile, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(syntax)?;
    if value.get("field_modulus").is_some() {
        PencilFile::parse(text).map(InputFile::Pencil)
    } else {
        FibrationFile::parse(text).map(InputFile::Fibration)
    }
}

fn rational(s: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Input(format!("{what}: {s:?} is not a rational \"p/q\"")))
}

fn canonical_rational(s: &str) -> String {
    parse_rational(s).map(|r| format_rational(&r)).unwrap_or_else(|| s.to_string())
}

pub fn element_json(x: &FieldElement) -> Vec<String> {
    x.coords().iter().map(format_rational).collect()
}

pub fn poly_json(p: &Polynomial) -> Vec<Vec<String>> {
    p.coeffs().iter().map(element_json).collect()
}

fn element(field: &NumberField, coords: &[String], what: &str) -> Result<FieldElement, CliError> {
    if coords.len() != field.degree() {
        return Err(CliError::Input(format!(
            "{what}: field element has {} coordinates, the field has degree {}",
            coords.len(),
            field.degree()
        )));
    }
    let coords = coords
        .iter()
        .map(|c| rational(c, what))
        .collect::<Result<Vec<_>, _>>()?;
    field.element(coords).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn polynomial(field: &NumberField, coeffs: &[Vec<String>], what: &str) -> Result<Polynomial, CliError> {
    let coeffs = coeffs
        .iter()
        .map(|c| element(field, c, what))
        .collect::<Result<Vec<_>, _>>()?;
    let p = Polynomial::new(field, coeffs);
    p.check_cap().map_err(CliError::from_algebra)?;
    Ok(p)
}

fn map(field: &NumberField, num: &[Vec<String>], den: &[Vec<String>], name: &str) -> Result<RationalMap, CliError> {
    let num = polynomial(field, num, &format!("{name}_num"))?;
    let den = polynomial(field, den, &format!("{name}_den"))?;
    if den.is_zero() {
        return Err(CliError::Input(format!("{name}_den: zero denominator")));
    }
    RationalMap::new(num, den).map_err(|e| located(name, e))
}

/// Arithmetic guards keep their own exit code; everything else is bad input.
fn located(what: &str, e: MapError) -> CliError {
    match e {
        MapError::Algebra(a) => CliError::from_algebra(a),
        other => CliError::Input(format!("{what}: {other}")),
    }
}

impl PencilFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: PencilFile = serde_json::from_str(text).map_err(syntax)?;
        for c in &file.field_modulus {
            rational(c, "field_modulus")?;
        }
        Ok(file)
    }

    pub fn field(&self, degree_cap: usize) -> Result<NumberField, CliError> {
        let modulus = self
            .field_modulus
            .iter()
            .map(|c| rational(c, "field_modulus"))
            .collect::<Result<Vec<_>, _>>()?;
        let field = NumberField::new(modulus).map_err(|e| CliError::Input(format!("field_modulus: {e}")))?;
        Ok(field.with_degree_cap(degree_cap))
    }

    pub fn to_spec(&self, degree_cap: usize) -> Result<PencilSpec, CliError> {
        let field = self.field(degree_cap)?;
        let phi = map(&field, &self.phi_num, &self.phi_den, "phi")?;
        let psi = map(&field, &self.psi_num, &self.psi_den, "psi")?;
        let declared = match &self.declared_r {
            None => None,
            Some(points) => {
                let points = points
                    .iter()
                    .map(|p| match p {
                        DeclaredPoint::Marker(m) if m == INFINITY_MARKER => Ok(ProjectivePoint::Infinity),
                        DeclaredPoint::Marker(m) => Err(CliError::Input(format!(
                            "declared_R: {m:?} is neither a field element nor \"{INFINITY_MARKER}\""
                        ))),
                        DeclaredPoint::Finite(c) => element(&field, c, "declared_R").map(ProjectivePoint::Finite),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(DeclaredSet::new(&field, points).map_err(|e| match e {
                    PencilError::Map(m) => located("declared_R", m),
                    other => CliError::from_pencil(other),
                })?)
            }
        };
        let spec = PencilSpec::new(phi, psi, declared).map_err(CliError::from_pencil)?;
        Ok(match &self.label {
            Some(l) => spec.with_label(l.clone()),
            None => spec,
        })
    }

    pub fn from_spec(spec: &PencilSpec) -> Self {
        let field = spec.field();
        PencilFile {
            label: spec.label.clone(),
            field_modulus: field.modulus().iter().map(format_rational).collect(),
            phi_num: poly_json(spec.phi().numerator()),
            phi_den: poly_json(spec.phi().denominator()),
            psi_num: poly_json(spec.psi().numerator()),
            psi_den: poly_json(spec.psi().denominator()),
            declared_r: spec.declared().map(|d| {
                d.points
                    .iter()
                    .map(|p| match p {
                        ProjectivePoint::Infinity => DeclaredPoint::Marker(INFINITY_MARKER.into()),
                        ProjectivePoint::Finite(x) => DeclaredPoint::Finite(element_json(x)),
                    })
                    .collect()
            }),
        }
    }

    /// Same document with every rational in lowest terms.
    pub fn canonical(&self) -> Self {
        let lists = |v: &[Vec<String>]| -> Vec<Vec<String>> {
            v.iter().map(|c| c.iter().map(|s| canonical_rational(s)).collect()).collect()
        };
        PencilFile {
            label: self.label.clone(),
            field_modulus: self.field_modulus.iter().map(|s| canonical_rational(s)).collect(),
            phi_num: lists(&self.phi_num),
            phi_den: lists(&self.phi_den),
            psi_num: lists(&self.psi_num),
            psi_den: lists(&self.psi_den),
            declared_r: self.declared_r.as_ref().map(|pts| {
                pts.iter()
                    .map(|p| match p {
                        DeclaredPoint::Finite(c) => {
                            DeclaredPoint::Finite(c.iter().map(|s| canonical_rational(s)).collect())
                        }
                        m => m.clone(),
                    })
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(&self.canonical())
    }
}

impl FibrationFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(syntax)
    }

    pub fn to_data(&self) -> Result<FibrationData, CliError> {
        if self.mu.len() < self.s as usize {
            return Err(CliError::Input(format!(
                "mu lists {} singular points, fewer than s = {}",
                self.mu.len(),
                self.s
            )));
        }
        Ok(FibrationData {
            g: self.g,
            base_genus: self.base_genus,
            s: self.s,
            mu: self.mu.clone(),
            chi_f: rational(&self.chi_f, "chi_f")?,
            k2_rel: rational(&self.k2_rel, "k2_rel")?,
            e_f: rational(&self.e_f, "e_f")?,
        })
    }

    pub fn from_data(fd: &FibrationData, label: Option<String>) -> Self {
        let mut mu = fd.mu.clone();
        mu.sort_unstable();
        FibrationFile {
            label,
            g: fd.g,
            base_genus: fd.base_genus,
            s: fd.s,
            mu,
            chi_f: format_rational(&fd.chi_f),
            k2_rel: format_rational(&fd.k2_rel),
            e_f: format_rational(&fd.e_f),
        }
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }
}

/// Two-space indented JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}
