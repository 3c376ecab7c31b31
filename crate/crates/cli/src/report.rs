//! Machine-readable reports. Every rational is a string and every list has a
//! fixed order, so identical inputs give byte-identical documents.

use crate::schema::{element_json, poly_json, FibrationFile};
use pencilforge_core::audit::AuditVerdict;
use pencilforge_core::basechange::StrictVojtaCertificate;
use pencilforge_core::exactcore::format_rational;
use pencilforge_core::mapkit::RamificationProfile;
use pencilforge_core::pencil::{CheckResult, CoincidenceReport, FiberRow};
use pencilforge_core::{FibrationData, PencilSpec, PointCluster, ProjectivePoint, SemistabilityCertificate, SingularFiberTable};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "pencilforge";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClusterDoc {
    /// Monic squarefree polynomial, low degree first.
    pub polynomial: Vec<Vec<String>>,
    pub at_infinity: bool,
    pub size: usize,
    pub display: String,
    /// The point itself when the cluster has exactly one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointDoc>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum PointDoc {
    Finite(Vec<String>),
    Infinity(&'static str),
}

impl PointDoc {
    fn new(p: &ProjectivePoint) -> Self {
        match p {
            ProjectivePoint::Finite(x) => PointDoc::Finite(element_json(x)),
            ProjectivePoint::Infinity => PointDoc::Infinity("inf"),
        }
    }
}

impl ClusterDoc {
    pub fn new(c: &PointCluster, var: &str) -> Self {
        ClusterDoc {
            polynomial: poly_json(c.poly()),
            at_infinity: c.at_infinity(),
            size: c.size(),
            display: c.describe(var),
            point: c.single_point().as_ref().map(PointDoc::new),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckDoc {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<ClusterDoc>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckDoc {
    fn new(c: &CheckResult) -> Self {
        // S3 witnesses live on the target line.
        let var = if c.name.starts_with("S3") { "y" } else { "t" };
        CheckDoc {
            name: c.name,
            passed: c.passed,
            witness: c.witness.as_ref().map(|w| ClusterDoc::new(w, var)),
            detail: c.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationDoc {
    pub points: ClusterDoc,
    pub index: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchDoc {
    pub values: ClusterDoc,
    /// `[e, count]` per value.
    pub fiber: Vec<(u32, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileDoc {
    pub hurwitz_total: usize,
    pub simple_only: bool,
    pub ramification: Vec<RamificationDoc>,
    pub branch: Vec<BranchDoc>,
}

impl ProfileDoc {
    fn new(p: &RamificationProfile) -> Self {
        ProfileDoc {
            hurwitz_total: p.hurwitz_total,
            simple_only: p.simple_only,
            ramification: p
                .ramification_points
                .iter()
                .map(|(c, e)| RamificationDoc {
                    points: ClusterDoc::new(c, "t"),
                    index: *e,
                })
                .collect(),
            branch: p
                .entries
                .iter()
                .map(|b| BranchDoc {
                    values: ClusterDoc::new(&b.cluster, "y"),
                    fiber: b.fiber.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContactDoc {
    pub points: ClusterDoc,
    pub contact_order: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceDoc {
    pub polynomial: Vec<Vec<String>>,
    pub clusters: Vec<ContactDoc>,
    pub total_contact: usize,
}

impl CoincidenceDoc {
    fn new(c: &CoincidenceReport) -> Self {
        CoincidenceDoc {
            polynomial: poly_json(&c.polynomial),
            clusters: c
                .clusters
                .iter()
                .map(|(p, k)| ContactDoc {
                    points: ClusterDoc::new(p, "t"),
                    contact_order: *k,
                })
                .collect(),
            total_contact: c.total_contact,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateDoc {
    pub passed: bool,
    pub s: usize,
    pub critical_set: ClusterDoc,
    pub checks: Vec<CheckDoc>,
    pub phi_profile: ProfileDoc,
    pub psi_profile: ProfileDoc,
    pub coincidences: CoincidenceDoc,
}

impl CertificateDoc {
    pub fn new(c: &SemistabilityCertificate) -> Self {
        CertificateDoc {
            passed: c.passed,
            s: c.s,
            critical_set: ClusterDoc::new(&c.critical_set, "y"),
            checks: c.checks.iter().map(CheckDoc::new).collect(),
            phi_profile: ProfileDoc::new(&c.phi_profile),
            psi_profile: ProfileDoc::new(&c.psi_profile),
            coincidences: CoincidenceDoc::new(&c.coincidences),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContributionDoc {
    /// `A_μ`
    #[serde(rename = "type")]
    pub kind: String,
    pub mu: u32,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowDoc {
    pub values: ClusterDoc,
    pub contributions: Vec<ContributionDoc>,
    pub milnor_plus_sum: usize,
}

impl RowDoc {
    fn new(r: &FiberRow) -> Self {
        RowDoc {
            values: ClusterDoc::new(&r.values, "y"),
            contributions: r
                .contributions
                .iter()
                .map(|(mu, count)| ContributionDoc {
                    kind: format!("A_{mu}"),
                    mu: *mu,
                    count: *count,
                })
                .collect(),
            milnor_plus_sum: r.milnor_plus_sum,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableDoc {
    pub rows: Vec<RowDoc>,
    pub s: usize,
    pub e_f: usize,
    pub mu_multiset: Vec<u32>,
}

impl TableDoc {
    pub fn new(t: &SingularFiberTable) -> Self {
        TableDoc {
            rows: t.rows.iter().map(RowDoc::new).collect(),
            s: t.s,
            e_f: t.e_f,
            mu_multiset: t.mu_multiset.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsDoc {
    #[serde(flatten)]
    pub data: FibrationFile,
    pub slope: Option<String>,
}

impl InvariantsDoc {
    pub fn new(fd: &FibrationData, label: Option<String>) -> Self {
        InvariantsDoc {
            data: FibrationFile::from_data(fd, label),
            slope: fd.slope().as_ref().map(format_rational),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictDoc {
    pub name: String,
    pub passed: bool,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub equality: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl VerdictDoc {
    pub fn new(v: &AuditVerdict) -> Self {
        VerdictDoc {
            name: v.name.clone(),
            passed: v.passed,
            lhs: format_rational(&v.lhs),
            relation: v.relation.symbol(),
            rhs: format_rational(&v.rhs),
            equality: v.equality,
            note: v.note.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalEDoc {
    pub e: u32,
    pub gap_bound: String,
    pub previous: Option<(u32, String)>,
    pub excess: String,
    pub implies_strict: bool,
}

impl MinimalEDoc {
    pub fn new(c: &StrictVojtaCertificate) -> Self {
        MinimalEDoc {
            e: c.e,
            gap_bound: format_rational(&c.gap_bound),
            previous: c.previous.as_ref().map(|(e, r)| (*e, format_rational(r))),
            excess: format_rational(&c.excess),
            implies_strict: c.implies_strict,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackDoc {
    pub d: u32,
    pub e: u32,
    pub data: InvariantsDoc,
    pub audits: Vec<VerdictDoc>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BaseChangeDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_e: Option<MinimalEDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pullback: Option<PullbackDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PencilDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub genus: u32,
    pub field_modulus: Vec<String>,
    pub phi_degree: usize,
    pub psi_degree: usize,
}

impl PencilDoc {
    pub fn new(spec: &PencilSpec) -> Self {
        PencilDoc {
            label: spec.label.clone(),
            genus: spec.genus(),
            field_modulus: spec.field().modulus().iter().map(format_rational).collect(),
            phi_degree: spec.phi().degree(),
            psi_degree: spec.psi().degree(),
        }
    }
}

/// The full report. Sections absent for a command are omitted.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input_sha256: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pencil: Option<PencilDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_table: Option<TableDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub audits: Vec<VerdictDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_change: Option<BaseChangeDoc>,
}

impl ReportDocument {
    pub fn new(command: &'static str, input: &[u8]) -> Self {
        ReportDocument {
            tool: TOOL,
            version: VERSION,
            command,
            input_sha256: sha256_hex(input),
            exit_code: 0,
            warnings: Vec::new(),
            error: None,
            pencil: None,
            certificate: None,
            fiber_table: None,
            invariants: None,
            audits: Vec::new(),
            base_change: None,
        }
    }

    /// Human-readable summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("{TOOL} {VERSION} {}", self.command));
        for w in &self.warnings {
            line(format!("warning: {w}"));
        }
        if let Some(p) = &self.pencil {
            if let Some(l) = &p.label {
                line(format!("pencil: {l}"));
            }
            line(format!(
                "genus {} (deg phi = {}, deg psi = {})",
                p.genus, p.phi_degree, p.psi_degree
            ));
        }
        if let Some(c) = &self.certificate {
            line(format!(
                "semistability: {} (s = {})",
                if c.passed { "passed" } else { "FAILED" },
                c.s
            ));
            for check in &c.checks {
                let mut s = format!("  [{}] {}", if check.passed { "pass" } else { "FAIL" }, check.name);
                if let Some(w) = &check.witness {
                    s.push_str(&format!(" witness {}", w.display));
                }
                if !check.detail.is_empty() {
                    s.push_str(&format!(" ({})", check.detail));
                }
                line(s);
            }
        }
        if let Some(t) = &self.fiber_table {
            line(format!("singular fibers: s = {}, e_f = {}", t.s, t.e_f));
            for r in &t.rows {
                let parts: Vec<String> = r
                    .contributions
                    .iter()
                    .map(|c| format!("{}x{}", c.count, c.kind))
                    .collect();
                line(format!(
                    "  {} ({} value{}): {} (sum {})",
                    r.values.display,
                    r.values.size,
                    if r.values.size == 1 { "" } else { "s" },
                    parts.join(" + "),
                    r.milnor_plus_sum
                ));
            }
        }
        if let Some(i) = &self.invariants {
            let d = &i.data;
            line(format!(
                "invariants: g = {}, b = {}, s = {}, chi_f = {}, K^2 = {}, e_f = {}, slope = {}",
                d.g,
                d.base_genus,
                d.s,
                d.chi_f,
                d.k2_rel,
                d.e_f,
                i.slope.as_deref().unwrap_or("undefined")
            ));
        }
        for v in &self.audits {
            line(format!("  {}", verdict_line(v)));
        }
        if let Some(b) = &self.base_change {
            if let Some(m) = &b.minimal_e {
                line(format!(
                    "base change: minimal e = {}, gap bound {}, excess {}{}",
                    m.e,
                    m.gap_bound,
                    m.excess,
                    if m.implies_strict { ", strict inequality certified" } else { "" }
                ));
            }
            if let Some(p) = &b.pullback {
                let d = &p.data.data;
                line(format!(
                    "pullback (d = {}, e = {}): b = {}, s = {}, chi_f = {}, K^2 = {}, e_f = {}",
                    p.d, p.e, d.base_genus, d.s, d.chi_f, d.k2_rel, d.e_f
                ));
                for v in &p.audits {
                    line(format!("  {}", verdict_line(v)));
                }
            }
        }
        line(format!("exit {}", self.exit_code));
        out
    }
}

fn verdict_line(v: &VerdictDoc) -> String {
    let mut s = format!(
        "[{}] {}: {} {} {}",
        if v.passed { "pass" } else { "FAIL" },
        v.name,
        v.lhs,
        v.relation,
        v.rhs
    );
    if !v.note.is_empty() {
        s.push_str(&format!(" ({})", v.note));
    }
    s
}
