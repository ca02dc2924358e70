//! Machine-readable result documents.
//!
//! Every exact rational travels as `{"num", "den", "approx"}` with the
//! numerator and denominator as decimal strings; `approx` is a 12-digit
//! decimal and never authoritative.

use latdense_core::density::{DensityReport, EstimateTable};
use latdense_core::lattice::Quasipolynomial;
use latdense_core::ratset::{DisjointnessReport, ValidationReport};
use latdense_core::Rational;
use serde::{Deserialize, Serialize};

use crate::render::approx;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact {
    pub num: String,
    pub den: String,
    pub approx: String,
}

impl From<&Rational> for Exact {
    fn from(q: &Rational) -> Self {
        Exact {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
            approx: approx(q),
        }
    }
}

impl Exact {
    /// Parses the exact part back; `approx` is ignored.
    pub fn to_rational(&self) -> Option<Rational> {
        Some(Rational::new(
            self.num.parse().ok()?,
            self.den.parse().ok()?,
        ))
    }
}

/// The single document printed in `--machine` mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    /// The arguments as given, without the program name.
    pub command: Vec<String>,
    /// `sha256:<hex>` of the input file, when the command reads one.
    pub input_digest: Option<String>,
    pub result: Option<T>,
    pub caveats: Vec<String>,
    pub error: Option<String>,
    pub status: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapPayload {
    pub point: Vec<String>,
    pub components: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointnessPayload {
    pub radius: u64,
    pub trivially_disjoint: bool,
    pub clean: bool,
    pub points_scanned: String,
    pub overlap_count: String,
    pub witnesses: Vec<OverlapPayload>,
}

impl From<&DisjointnessReport> for DisjointnessPayload {
    fn from(d: &DisjointnessReport) -> Self {
        DisjointnessPayload {
            radius: d.radius,
            trivially_disjoint: d.trivially_disjoint,
            clean: d.is_clean(),
            points_scanned: d.points_scanned.to_string(),
            overlap_count: d.overlap_count.to_string(),
            witnesses: d
                .witnesses
                .iter()
                .map(|w| OverlapPayload {
                    point: w.point.iter().map(ToString::to_string).collect(),
                    components: w.components.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCheck {
    pub index: usize,
    pub generators: usize,
    pub rank: usize,
    pub full_rank: bool,
    pub determinant: Option<String>,
    pub simple: bool,
    pub issues: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidatePayload {
    pub dim: usize,
    pub valid: bool,
    pub components: Vec<ComponentCheck>,
    pub disjointness: Option<DisjointnessPayload>,
}

impl ValidatePayload {
    pub fn new(report: &ValidationReport, disjointness: Option<&DisjointnessReport>) -> Self {
        ValidatePayload {
            dim: report.dim,
            valid: report.is_valid(),
            components: report
                .components
                .iter()
                .map(|c| ComponentCheck {
                    index: c.index,
                    generators: c.generator_count,
                    rank: c.rank,
                    full_rank: c.full_rank,
                    determinant: c.determinant.as_ref().map(ToString::to_string),
                    simple: c.is_simple(),
                    issues: c.issues.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            disjointness: disjointness.map(Into::into),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDensityPayload {
    pub index: usize,
    pub full_rank: bool,
    pub density: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityPayload {
    pub norm: String,
    pub method: String,
    pub components: Vec<ComponentDensityPayload>,
    pub total: Exact,
    pub disjointness_caveat: bool,
    pub disjointness: DisjointnessPayload,
}

impl DensityPayload {
    pub fn new(report: &DensityReport, method: &str, disjointness: &DisjointnessReport) -> Self {
        DensityPayload {
            norm: report.norm.to_string(),
            method: method.to_string(),
            components: report
                .per_component
                .iter()
                .map(|c| ComponentDensityPayload {
                    index: c.index,
                    full_rank: c.full_rank,
                    density: (&c.density).into(),
                })
                .collect(),
            total: (&report.total).into(),
            disjointness_caveat: report.disjointness_caveat,
            disjointness: disjointness.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateRowPayload {
    pub radius: u64,
    pub hits: String,
    pub ball: String,
    pub frequency: Exact,
    pub error: Option<Exact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimatePayload {
    pub norm: String,
    /// Always `"estimate"`: frequencies are finite-radius values.
    pub kind: String,
    pub exact: Option<Exact>,
    pub rows: Vec<EstimateRowPayload>,
}

impl From<&EstimateTable> for EstimatePayload {
    fn from(t: &EstimateTable) -> Self {
        EstimatePayload {
            norm: t.norm.to_string(),
            kind: "estimate".into(),
            exact: t.exact.as_ref().map(Into::into),
            rows: t
                .rows
                .iter()
                .map(|r| EstimateRowPayload {
                    radius: r.radius,
                    hits: r.hits.to_string(),
                    ball: r.ball.to_string(),
                    frequency: (&r.frequency).into(),
                    error: r.error.as_ref().map(Into::into),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRow {
    pub residue: u64,
    /// `c_0, ..., c_d`.
    pub coefficients: Vec<Exact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartPayload {
    pub component: usize,
    pub norm: String,
    pub max_t: u64,
    pub degree: usize,
    pub period: u64,
    pub periods_tried: Vec<u64>,
    pub residues: Vec<ResidueRow>,
    pub leading_coefficient: Exact,
    pub lattice_determinant: String,
    pub ball_volume: Exact,
    pub density: Exact,
}

pub fn residue_rows(q: &Quasipolynomial) -> Vec<ResidueRow> {
    q.coefficients()
        .iter()
        .enumerate()
        .map(|(r, row)| ResidueRow {
            residue: r as u64,
            coefficients: row.iter().map(Into::into).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountBallPayload {
    pub norm: String,
    pub radius: u64,
    pub dim: usize,
    pub count: String,
}
