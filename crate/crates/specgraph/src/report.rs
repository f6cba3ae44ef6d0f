//! JSON shapes of everything the command-line tool prints.

use serde::Serialize;
use specgraph_core::lines::{LineCensus, VertexLineData};
use specgraph_core::reconstruct::{StageReport, Verdict};
use specgraph_core::{Eigenvalue, ExtensionParams, Location, Spectrum, Violation};

/// Exact values print as JSON integers, numeric ones as doubles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Float(f64),
}

impl From<Eigenvalue> for Value {
    fn from(v: Eigenvalue) -> Self {
        match v {
            Eigenvalue::Exact(x) => Value::Int(x),
            Eigenvalue::Approx(x) => Value::Float(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub value: Value,
    pub multiplicity: usize,
}

pub fn spectrum_entries(spec: &Spectrum) -> Vec<SpectrumEntry> {
    spec.entries()
        .iter()
        .map(|&(v, m)| SpectrumEntry {
            value: v.into(),
            multiplicity: m,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
    pub expected: i128,
    pub actual: i128,
}

impl From<&Violation> for ViolationReport {
    fn from(v: &Violation) -> Self {
        let (vertex, pair) = match v.location {
            Location::Global => (None, None),
            Location::Vertex(x) => (Some(x), None),
            Location::Pair(x, y) => (None, Some([x, y])),
        };
        ViolationReport {
            check: v.check,
            vertex,
            pair,
            expected: v.expected,
            actual: v.actual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamsReport {
    pub s: usize,
    pub n: usize,
}

impl From<ExtensionParams> for ParamsReport {
    fn from(p: ExtensionParams) -> Self {
        ParamsReport { s: p.s(), n: p.n() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexLinesReport {
    pub vertex: usize,
    pub lines: [Vec<usize>; 2],
    pub c1: usize,
    pub c2: usize,
    pub m: usize,
    pub ell: usize,
    pub e: usize,
    pub f: usize,
    pub violations: Vec<ViolationReport>,
}

impl VertexLinesReport {
    pub fn new(d: &VertexLineData, violations: &[Violation]) -> Self {
        VertexLinesReport {
            vertex: d.vertex,
            lines: d.lines.clone(),
            c1: d.c1(),
            c2: d.c2(),
            m: d.m,
            ell: d.ell,
            e: d.e_size,
            f: d.f_size,
            violations: violations.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub delta: usize,
    /// Entry `i − 1` counts lines of order `s(n−3) + i`.
    pub q: Vec<usize>,
    pub h: Option<usize>,
    pub lines: Vec<Vec<usize>>,
}

impl From<&LineCensus> for CensusReport {
    fn from(c: &LineCensus) -> Self {
        CensusReport {
            delta: c.delta,
            q: c.q.clone(),
            h: c.h,
            lines: c.lines.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageJson {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ViolationReport>,
}

impl From<&StageReport> for StageJson {
    fn from(s: &StageReport) -> Self {
        StageJson {
            name: s.name,
            passed: s.passed,
            detail: s.detail.clone(),
            witness: s.witness.as_ref().map(Into::into),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub conclusion: String,
    pub recovered: Option<ParamsReport>,
    pub quotient_order: Option<usize>,
    pub theorem_regime: bool,
    pub spectral_mode: &'static str,
    pub stages: Vec<StageJson>,
}

impl From<&Verdict> for VerdictReport {
    fn from(v: &Verdict) -> Self {
        VerdictReport {
            conclusion: v.conclusion.to_string(),
            recovered: v.recovered.map(Into::into),
            quotient_order: v.quotient_order,
            theorem_regime: v.theorem_regime,
            spectral_mode: v.spectral_mode.name(),
            stages: v.stages.iter().map(Into::into).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn spectrum_values_keep_their_kind() {
        let s = Spectrum::from_exact(&[(3, 1), (-1, 3)]).unwrap();
        assert_eq!(
            serde_json::to_value(spectrum_entries(&s)).unwrap(),
            json!([{"value": 3, "multiplicity": 1}, {"value": -1, "multiplicity": 3}])
        );
        let approx = Spectrum::cluster(&[0.5], 1e-6);
        assert_eq!(
            serde_json::to_value(spectrum_entries(&approx)).unwrap(),
            json!([{"value": 0.5, "multiplicity": 1}])
        );
    }

    #[test]
    fn violation_locations() {
        let v = Violation::pair("mu", 1, 4, 8, 7);
        assert_eq!(
            serde_json::to_value(ViolationReport::from(&v)).unwrap(),
            json!({"check": "mu", "pair": [1, 4], "expected": 8, "actual": 7})
        );
        let g = Violation::global("census_delta", 5, 6);
        assert_eq!(
            serde_json::to_value(ViolationReport::from(&g)).unwrap(),
            json!({"check": "census_delta", "expected": 5, "actual": 6})
        );
    }
}
