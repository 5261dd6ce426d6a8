//! Serializable report structures. All rational values are emitted as
//! exact `"p/q"` strings; field order is fixed, and maps are keyed through
//! `BTreeMap`, so identical inputs produce byte-identical reports.

use std::collections::BTreeMap;

use serde::Serialize;

use lefschetz_core::{FixedPointCertificate, LefschetzReport};

#[derive(Serialize)]
pub struct FullReport {
    /// Euler characteristic of the selected subcomplex.
    pub euler_characteristic: i64,
    /// Betti numbers of the refined complex.
    pub betti: Vec<usize>,
    pub values: Values,
    pub chain_traces: Vec<String>,
    pub homology_traces: Vec<String>,
    pub agree: bool,
    pub hopf: HopfReport,
}

#[derive(Serialize)]
pub struct Values {
    pub axiomatic: String,
    pub open_sum: String,
    pub chain: String,
    pub homological: String,
}

#[derive(Serialize)]
pub struct SingleValue {
    pub method: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct HopfReport {
    pub is_hopf_simplicial: bool,
    pub fixed_points: Vec<FixedPointEntry>,
}

#[derive(Serialize)]
pub struct FixedPointEntry {
    pub simplex: Vec<u32>,
    pub fixed_set_dimension: usize,
    /// Barycentric coordinates of the witness, keyed by base vertex label.
    pub witness: BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct EulerReport {
    pub euler_characteristic: i64,
}

#[derive(Serialize)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_traces: Option<Vec<String>>,
}

pub fn fixed_point_entry(cert: &FixedPointCertificate) -> FixedPointEntry {
    FixedPointEntry {
        simplex: cert.simplex.vertices().iter().map(|v| v.0).collect(),
        fixed_set_dimension: cert.fixed_set_dimension,
        witness: cert
            .witness
            .weights()
            .map(|(v, w)| (v.0.to_string(), w.to_string()))
            .collect(),
    }
}

pub fn values_of(report: &LefschetzReport) -> Values {
    Values {
        axiomatic: report.value_axiomatic.to_string(),
        open_sum: report.value_open_sum.to_string(),
        chain: report.value_chain.to_string(),
        homological: report.value_homological.to_string(),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}
