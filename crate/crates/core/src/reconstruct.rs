//! The staged recognition pipeline: from an arbitrary graph to either a
//! confirmed `s`-clique extension of `T(n)` with recovered `(s, n)`, or a
//! rejection at a named stage with a witness.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::lines::{self, LinesError, VertexLineData};
use crate::params::ExtensionParams;
use crate::regularity::{check_cube_entries, check_local_identities, co_edge_params, srg_params};
use crate::report::Violation;
use crate::spectral::{
    certify_integer_spectrum, spectrum, target_spectrum, Certification, SpectralError, DEFAULT_CLUSTER_TOL,
};
use crate::structure::Partition;

/// Stage names, in the order they run.
pub const STAGES: [&str; 9] = [
    "spectral",
    "co_edge",
    "cube_entries",
    "local_identities",
    "vertex_lines",
    "census",
    "classes",
    "quotient",
    "triangular",
];

/// Orders above this skip the dense eigensolver under [`SpectralMode::Auto`].
pub const EXACT_ONLY_THRESHOLD: usize = 1500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralMode {
    /// Dense eigensolve, read `(s, n)` off the eigenvalues, then certify.
    Numeric,
    /// Infer `(s, n)` from order and valency and certify the target spectrum
    /// exactly, without any floating point.
    ExactOnly,
    /// `Numeric` up to [`EXACT_ONLY_THRESHOLD`] vertices, `ExactOnly` above.
    Auto,
}

impl SpectralMode {
    fn resolve(self, order: usize) -> SpectralMode {
        match self {
            SpectralMode::Auto if order > EXACT_ONLY_THRESHOLD => SpectralMode::ExactOnly,
            SpectralMode::Auto => SpectralMode::Numeric,
            m => m,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpectralMode::Numeric => "numeric",
            SpectralMode::ExactOnly => "exact_only",
            SpectralMode::Auto => "auto",
        }
    }
}

/// Why a stage rejected its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub detail: String,
    pub witness: Option<Violation>,
}

impl Rejection {
    fn new(detail: impl Into<String>) -> Self {
        Rejection {
            detail: detail.into(),
            witness: None,
        }
    }
}

impl From<Violation> for Rejection {
    fn from(v: Violation) -> Self {
        Rejection {
            detail: v.to_string(),
            witness: Some(v),
        }
    }
}

impl From<SpectralError> for Rejection {
    fn from(e: SpectralError) -> Self {
        Rejection::new(e.to_string())
    }
}

impl From<LinesError> for Rejection {
    fn from(e: LinesError) -> Self {
        match e {
            LinesError::Check(v) => v.into(),
            LinesError::WrongValency {
                vertex,
                degree,
                expected,
            } => Violation::vertex("valency", vertex, expected as i128, degree as i128).into(),
            LinesError::WrongLineCount { vertex, ref lines } => Rejection {
                detail: e.to_string(),
                witness: Some(Violation::vertex("line_count", vertex, 2, lines.len() as i128)),
            },
            other => Rejection::new(other.to_string()),
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    Confirmed,
    Rejected(&'static str),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Confirmed => f.write_str("confirmed"),
            Conclusion::Rejected(stage) => write!(f, "rejected-at-{stage}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Stages that ran, in order; only the last can have failed.
    pub stages: Vec<StageReport>,
    pub recovered: Option<ExtensionParams>,
    pub quotient_order: Option<usize>,
    /// `n ≥ 48s` for the recovered parameters.
    pub theorem_regime: bool,
    /// The spectral mode that actually ran.
    pub spectral_mode: SpectralMode,
    pub conclusion: Conclusion,
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        self.conclusion == Conclusion::Confirmed
    }

    /// The failing stage report, if any.
    pub fn failure(&self) -> Option<&StageReport> {
        self.stages.iter().find(|s| !s.passed)
    }
}

fn params_from_values(d0: f64, d1: f64, tau: f64) -> Result<ExtensionParams, Rejection> {
    let near = |v: f64| {
        let r = libm::round(v);
        ((v - r).abs() <= DEFAULT_CLUSTER_TOL).then_some(r as i64)
    };
    let s = near(-tau - 1.0).ok_or_else(|| Rejection::new(format!("−τ−1 = {} is not an integer", -tau - 1.0)))?;
    if s < 2 {
        return Err(Rejection::new(format!("s = {s}, need s >= 2")));
    }
    let n = near((d0 - d1) / s as f64)
        .ok_or_else(|| Rejection::new(format!("(θ0 − θ1)/s = {} is not an integer", (d0 - d1) / s as f64)))?;
    if n < 5 {
        return Err(Rejection::new(format!("n = {n}, need n >= 5")));
    }
    ExtensionParams::new(s as usize, n as usize).map_err(|e| Rejection::new(e.to_string()))
}

fn certify_target(g: &Graph, params: ExtensionParams) -> Result<(), Rejection> {
    let target = target_spectrum(params.s(), params.n())?
        .to_exact()
        .expect("target spectrum is exact");
    match certify_integer_spectrum(g, &target)? {
        Certification::Certified => Ok(()),
        Certification::PowerSumMismatch {
            power,
            expected,
            actual,
        } => Err(Rejection::new(format!(
            "tr(A^{power}) = {actual}, target spectrum gives {expected}"
        ))),
        Certification::NotAnnihilated { row, column } => Err(Violation::pair(
            "spectral_annihilation",
            row,
            column,
            0,
            1,
        )
        .into()),
    }
}

/// Reads `(s, n)` off the spectrum: four distinct eigenvalues
/// `θ0 > θ1 > −1 > −s−1`, with `s = −τ − 1` for the least one `τ` and
/// `n = (θ0 − θ1)/s`, then certifies the full target multiset exactly.
pub fn spectral_gate(g: &Graph) -> Result<ExtensionParams, Rejection> {
    spectral_gate_with(g, SpectralMode::Numeric).map(|(p, _)| p)
}

/// [`spectral_gate`] in the chosen mode; also returns the mode that ran.
pub fn spectral_gate_with(g: &Graph, mode: SpectralMode) -> Result<(ExtensionParams, SpectralMode), Rejection> {
    let mode = mode.resolve(g.order());
    let params = match mode {
        SpectralMode::ExactOnly => {
            let k = g
                .regular_valency()
                .ok_or_else(|| Rejection::new("graph is not regular"))?;
            let p = ExtensionParams::from_order_and_valency(g.order(), k).ok_or_else(|| {
                Rejection::new(format!(
                    "no (s, n) gives order {} and valency {k}",
                    g.order()
                ))
            })?;
            if p.s() < 2 || p.n() < 5 {
                return Err(Rejection::new(format!(
                    "order and valency give (s, n) = ({}, {}), need s >= 2 and n >= 5",
                    p.s(),
                    p.n()
                )));
            }
            p
        }
        _ => {
            let spec = spectrum(g, DEFAULT_CLUSTER_TOL)?;
            let values: Vec<f64> = spec.entries().iter().map(|e| e.0.as_f64()).collect();
            if values.len() != 4 {
                return Err(Rejection::new(format!(
                    "{} distinct eigenvalues, expected 4",
                    values.len()
                )));
            }
            params_from_values(values[0], values[1], values[3])?
        }
    };
    certify_target(g, params)?;
    Ok((params, mode))
}

/// Co-edge-regular with `k = s(2n−3) − 1` and `μ = 4s`.
pub fn co_edge_gate(g: &Graph, params: ExtensionParams) -> Result<(), Rejection> {
    let ce = co_edge_params(g)?;
    if ce.valency != params.valency() {
        return Err(Violation::global("valency", params.valency() as i128, ce.valency as i128).into());
    }
    if ce.mu != params.mu() {
        return Err(Violation::global("mu", params.mu() as i128, ce.mu as i128).into());
    }
    Ok(())
}

/// Classes of the relation "same closed neighbourhood", ordered by their
/// smallest vertex.
pub fn neighborhood_classes(g: &Graph) -> Partition {
    let mut by_row: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for x in 0..g.order() {
        by_row.entry(g.closed_row(x)).or_default().push(x);
    }
    let mut classes: Vec<Vec<usize>> = by_row.into_values().collect();
    classes.sort_unstable_by_key(|c| c[0]);
    Partition::new(g.order(), classes).expect("classes cover the vertex set")
}

/// The graph on classes, two classes adjacent when their members are.
/// Fails if some vertex sees only part of another class.
pub fn quotient_graph(g: &Graph, classes: &Partition) -> Result<Graph, Rejection> {
    if classes.order() != g.order() {
        return Err(Rejection::new("partition does not match the graph"));
    }
    let sizes: Vec<usize> = classes.classes().iter().map(Vec::len).collect();
    let mut seen = vec![0usize; classes.len()];
    for x in 0..g.order() {
        let own = classes.class_of(x);
        let mut touched = Vec::new();
        for y in g.neighbors(x) {
            let c = classes.class_of(y);
            if seen[c] == 0 {
                touched.push(c);
            }
            seen[c] += 1;
        }
        if seen[own] == 0 {
            touched.push(own);
        }
        for c in touched {
            let want = if c == own { sizes[c] - 1 } else { sizes[c] };
            let got = core::mem::take(&mut seen[c]);
            if got != want {
                return Err(Violation::pair("quotient_block", x, classes.classes()[c][0], want as i128, got as i128).into());
            }
        }
    }
    let reps: Vec<usize> = classes.classes().iter().map(|c| c[0]).collect();
    Graph::from_fn(reps.len(), |i, j| g.has_edge(reps[i], reps[j])).map_err(|e| Rejection::new(e.to_string()))
}

/// Structural check that `qg` is `T(n)`: order `C(n,2)`, strongly regular
/// with `(C(n,2), 2n−4, n−2, 4)`, exact spectrum
/// `{(2n−4)^1, (n−4)^{n−1}, (−2)^{(n²−3n)/2}}`, and an explicit isomorphism:
/// `incidence[v]` (the two lines through class `v`) must be distinct 2-subsets
/// of `0..n`, with `v ~ w` exactly when the pairs meet.
pub fn recognize_triangular(qg: &Graph, n: usize, incidence: &[[usize; 2]]) -> Result<(), Rejection> {
    let v = n * (n - 1) / 2;
    if qg.order() != v {
        return Err(Violation::global("triangular_order", v as i128, qg.order() as i128).into());
    }
    let srg = srg_params(qg)?;
    for (check, want, got) in [
        ("triangular_valency", 2 * n - 4, srg.valency),
        ("triangular_lambda", n - 2, srg.lambda),
        ("triangular_mu", 4, srg.mu),
    ] {
        if want != got {
            return Err(Violation::global(check, want as i128, got as i128).into());
        }
    }
    let ni = n as i64;
    let target = [(2 * ni - 4, 1), (ni - 4, n - 1), (-2, (n * n - 3 * n) / 2)];
    match certify_integer_spectrum(qg, &target)? {
        Certification::Certified => {}
        Certification::PowerSumMismatch { power, .. } => {
            return Err(Rejection::new(format!("triangular spectrum: tr(A^{power}) mismatch")))
        }
        Certification::NotAnnihilated { row, column } => {
            return Err(Violation::pair("triangular_spectrum", row, column, 0, 1).into())
        }
    }
    if incidence.len() != v {
        return Err(Violation::global("triangular_incidence", v as i128, incidence.len() as i128).into());
    }
    let mut owner: BTreeMap<[usize; 2], usize> = BTreeMap::new();
    for (x, &[a, b]) in incidence.iter().enumerate() {
        if a == b || a >= n || b >= n {
            return Err(Rejection::new(format!("class {x} has line pair ({a}, {b})")));
        }
        let key = [a.min(b), a.max(b)];
        if let Some(&y) = owner.get(&key) {
            return Err(Violation::pair("triangular_pairs_distinct", y, x, 0, 1).into());
        }
        owner.insert(key, x);
    }
    for x in 0..v {
        for y in x + 1..v {
            let meet = incidence[x].iter().any(|a| incidence[y].contains(a));
            let adj = qg.has_edge(x, y);
            if meet != adj {
                return Err(Violation::pair("triangular_adjacency", x, y, meet as i128, adj as i128).into());
            }
        }
    }
    Ok(())
}

fn check_classes(classes: &Partition, params: ExtensionParams, data: &[VertexLineData]) -> Result<(), Rejection> {
    let s = params.s();
    for class in classes.classes() {
        if class.len() != s {
            return Err(Violation::vertex("class_size", class[0], s as i128, class.len() as i128).into());
        }
        for &x in class {
            let [l1, l2] = &data[x].lines;
            let meet: Vec<usize> = l1.iter().copied().filter(|v| l2.binary_search(v).is_ok()).collect();
            let differ = meet.iter().filter(|v| class.binary_search(v).is_err()).count()
                + class.iter().filter(|v| meet.binary_search(v).is_err()).count();
            if differ != 0 {
                return Err(Violation::vertex("class_is_line_meet", x, 0, differ as i128).into());
            }
        }
    }
    Ok(())
}

struct Run {
    stages: Vec<StageReport>,
}

impl Run {
    fn record<T>(&mut self, name: &'static str, result: Result<T, Rejection>, detail: impl FnOnce(&T) -> String) -> Option<T> {
        match result {
            Ok(v) => {
                self.stages.push(StageReport {
                    name,
                    passed: true,
                    detail: detail(&v),
                    witness: None,
                });
                Some(v)
            }
            Err(r) => {
                self.stages.push(StageReport {
                    name,
                    passed: false,
                    detail: r.detail,
                    witness: r.witness,
                });
                None
            }
        }
    }
}

pub fn reconstruct(g: &Graph) -> Verdict {
    reconstruct_with(g, SpectralMode::Auto)
}

pub fn reconstruct_with(g: &Graph, mode: SpectralMode) -> Verdict {
    let mut run = Run { stages: Vec::new() };
    let mut verdict = Verdict {
        stages: Vec::new(),
        recovered: None,
        quotient_order: None,
        theorem_regime: false,
        spectral_mode: mode.resolve(g.order()),
        conclusion: Conclusion::Confirmed,
    };
    let outcome = pipeline(g, mode, &mut run, &mut verdict);
    verdict.stages = run.stages;
    if outcome.is_none() {
        let failed = verdict.stages.last().map_or("spectral", |s| s.name);
        verdict.conclusion = Conclusion::Rejected(failed);
    }
    verdict
}

fn pipeline(g: &Graph, mode: SpectralMode, run: &mut Run, verdict: &mut Verdict) -> Option<()> {
    let (params, _) = run.record("spectral", spectral_gate_with(g, mode), |(p, m)| {
        format!("(s, n) = ({}, {}), certified ({})", p.s(), p.n(), m.name())
    })?;
    verdict.recovered = Some(params);
    verdict.theorem_regime = params.in_theorem_regime();

    run.record("co_edge", co_edge_gate(g, params), |_| {
        format!("k = {}, mu = {}", params.valency(), params.mu())
    })?;
    run.record("cube_entries", check_cube_entries(g, &params).map_err(Rejection::from), |_| {
        "A^3 matches the closed forms".into()
    })?;
    run.record(
        "local_identities",
        check_local_identities(g, &params).map_err(Rejection::from),
        |_| "local degree sums match".into(),
    )?;
    let data = run.record(
        "vertex_lines",
        lines::vertex_line_data(g, params).map_err(Rejection::from),
        |_| "two valid lines through every vertex".into(),
    )?;
    let census = run.record(
        "census",
        lines::line_census(g, params, &data)
            .and_then(|c| lines::check_line_intersections(&c, params).map(|_| c))
            .map_err(Rejection::from),
        |c| format!("{} lines", c.delta),
    )?;
    let classes = neighborhood_classes(g);
    run.record("classes", check_classes(&classes, params, &data), |_| {
        format!("{} classes of size {}", classes.len(), params.s())
    })?;
    let qg = run.record("quotient", quotient_graph(g, &classes), |q| {
        format!("{} vertices", q.order())
    })?;
    verdict.quotient_order = Some(qg.order());
    let incidence: Vec<[usize; 2]> = classes
        .classes()
        .iter()
        .map(|c| census.incidence[c[0]])
        .collect();
    run.record(
        "triangular",
        recognize_triangular(&qg, params.n(), &incidence),
        |_| format!("quotient is T({})", params.n()),
    )?;
    Some(())
}
