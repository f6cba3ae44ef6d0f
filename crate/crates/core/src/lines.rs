//! Lines: the large cliques through each vertex, their local invariants, and
//! the global census of all lines.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bits;
use crate::graph::{Graph, GraphError};
use crate::par;
use crate::params::ExtensionParams;
use crate::report::Violation;

/// Upper limit on branch-and-bound nodes visited while enumerating cliques in
/// one neighbourhood.
pub const SEARCH_NODE_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinesError {
    #[error("line detection needs n >= 5, got n = {0}")]
    SmallN(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    WrongValency {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("vertex {vertex} lies on {} lines, expected 2", lines.len())]
    WrongLineCount { vertex: usize, lines: Vec<Vec<usize>> },
    #[error("clique search at vertex {0} exceeded the node limit")]
    SearchLimit(usize),
    #[error("{0}")]
    Check(Violation),
}

/// Neighbours of `x` split by their degree `d_y` inside the local graph:
/// `e` holds those with `4·d_y > 3s(n−1)`, `f` the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSplit {
    pub e: Vec<usize>,
    pub f: Vec<usize>,
}

pub fn degree_split(g: &Graph, x: usize, params: ExtensionParams) -> Result<DegreeSplit, GraphError> {
    g.check_vertex(x)?;
    let (e, f) = g
        .neighbors(x)
        .partition(|&y| params.exceeds_line_threshold(g.common_neighbor_count(x, y)));
    Ok(DegreeSplit { e, f })
}

/// The two lines through a vertex and the derived counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLineData {
    pub vertex: usize,
    /// Sorted vertex sets, the lexicographically smaller first.
    pub lines: [Vec<usize>; 2],
    /// `|C1 ∩ C2| − 1`.
    pub m: usize,
    /// `k + 1 − |C1 ∪ C2|`.
    pub ell: usize,
    pub e_size: usize,
    pub f_size: usize,
}

impl VertexLineData {
    pub fn c1(&self) -> usize {
        self.lines[0].len()
    }

    pub fn c2(&self) -> usize {
        self.lines[1].len()
    }
}

struct LocalSearch<'a> {
    local: &'a Graph,
    params: ExtensionParams,
    nodes: usize,
    found: Vec<Vec<usize>>,
}

impl LocalSearch<'_> {
    fn qualifies(&self, local_size: usize) -> bool {
        self.params.exceeds_line_threshold(local_size + 1)
    }

    /// Bron–Kerbosch with Tomita pivoting. Branches that cannot reach the
    /// line threshold are cut.
    fn expand(&mut self, r: &mut Vec<usize>, mut p: Vec<u64>, mut x: Vec<u64>) -> bool {
        self.nodes += 1;
        if self.nodes > SEARCH_NODE_LIMIT {
            return false;
        }
        if !self.qualifies(r.len() + bits::count(&p)) {
            return true;
        }
        if bits::is_empty(&p) {
            if bits::is_empty(&x) {
                self.found.push(r.clone());
            }
            return true;
        }
        let pivot = bits::Ones::new(&p)
            .chain(bits::Ones::new(&x))
            .max_by_key(|&u| bits::count_and(&p, self.local.row(u)))
            .expect("p is nonempty");
        let branch: Vec<usize> = bits::Ones::new(&p)
            .filter(|&v| !self.local.has_edge(pivot, v))
            .collect();
        for v in branch {
            let row = self.local.row(v);
            let p2 = p.iter().zip(row).map(|(a, b)| a & b).collect();
            let x2 = x.iter().zip(row).map(|(a, b)| a & b).collect();
            r.push(v);
            let ok = self.expand(r, p2, x2);
            r.pop();
            if !ok {
                return false;
            }
            bits::clear(&mut p, v);
            bits::set(&mut x, v);
        }
        true
    }
}

fn check_line_params(params: ExtensionParams) -> Result<(), LinesError> {
    if params.n() < 5 {
        return Err(LinesError::SmallN(params.n()));
    }
    Ok(())
}

/// Finds every maximal clique through `x` of order greater than
/// `3s(n−1)/4` and succeeds when there are exactly two.
pub fn lines_through(g: &Graph, x: usize, params: ExtensionParams) -> Result<VertexLineData, LinesError> {
    check_line_params(params)?;
    g.check_vertex(x)?;
    let k = params.valency();
    let degree = g.degree(x);
    if degree != k {
        return Err(LinesError::WrongValency {
            vertex: x,
            degree,
            expected: k,
        });
    }
    let nbrs: Vec<usize> = g.neighbors(x).collect();
    let local = g.induced_subgraph(&nbrs)?;
    let mut all = vec![0u64; local.row_words()];
    for v in 0..nbrs.len() {
        bits::set(&mut all, v);
    }
    let mut search = LocalSearch {
        local: &local,
        params,
        nodes: 0,
        found: Vec::new(),
    };
    if !search.expand(&mut Vec::new(), all, vec![0u64; local.row_words()]) {
        return Err(LinesError::SearchLimit(x));
    }
    let mut lines: Vec<Vec<usize>> = search
        .found
        .into_iter()
        .map(|c| {
            let mut line: Vec<usize> = c.into_iter().map(|i| nbrs[i]).collect();
            line.push(x);
            line.sort_unstable();
            line
        })
        .collect();
    lines.sort();
    if lines.len() != 2 {
        return Err(LinesError::WrongLineCount { vertex: x, lines });
    }
    let l2 = lines.pop().expect("two lines");
    let l1 = lines.pop().expect("two lines");
    let meet = l1.iter().filter(|v| l2.binary_search(v).is_ok()).count();
    let union = l1.len() + l2.len() - meet;
    let split = degree_split(g, x, params)?;
    Ok(VertexLineData {
        vertex: x,
        m: meet - 1,
        ell: (k + 1).saturating_sub(union),
        e_size: split.e.len(),
        f_size: split.f.len(),
        lines: [l1, l2],
    })
}

/// Local consistency of the two lines through a vertex. Returns every failed
/// condition; an empty list means the data is valid.
pub fn validate_vertex_lines(data: &VertexLineData, params: ExtensionParams) -> Vec<Violation> {
    let (s, n) = (params.s() as i128, params.n() as i128);
    let x = data.vertex;
    let (m, ell) = (data.m as i128, data.ell as i128);
    let mut out = Vec::new();
    if ell + m != s - 1 {
        out.push(Violation::vertex("lines_ell_plus_m", x, s - 1, ell + m));
    }
    for c in [data.c1(), data.c2()] {
        let c = c as i128;
        if c < s * (n - 3) + 1 {
            out.push(Violation::vertex("line_order_min", x, s * (n - 3) + 1, c));
        }
        if c > s * (n - 1) {
            out.push(Violation::vertex("line_order_max", x, s * (n - 1), c));
        }
    }
    if m > 4 * s - 1 {
        out.push(Violation::vertex("lines_m_max", x, 4 * s - 1, m));
    }
    if ell > 16 * (s - 1) {
        out.push(Violation::vertex("lines_ell_max", x, 16 * (s - 1), ell));
    }
    let sum = (data.c1() + data.c2()) as i128;
    let want = 2 * s * (n - 2) + 2 * (m + 1);
    if sum != want {
        out.push(Violation::vertex("line_order_sum", x, want, sum));
    }
    out
}

/// All lines of the graph, deduplicated and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCensus {
    pub lines: Vec<Vec<usize>>,
    pub delta: usize,
    /// `q[i − 1]` counts lines of order `s(n−3) + i`, `i = 1..=2s`.
    pub q: Vec<usize>,
    /// Smallest `i` with `q_i ≠ 0`.
    pub h: Option<usize>,
    /// The two line indices through each vertex, ascending.
    pub incidence: Vec<[usize; 2]>,
}

impl LineCensus {
    /// Offset `i` of a line of order `s(n−3) + i`.
    pub fn offset(&self, line: usize, params: ExtensionParams) -> usize {
        self.lines[line].len() - params.s() * (params.n() - 3)
    }
}

/// Aggregates per-vertex line data into the census and checks the counting
/// identities: the incidence sum `Σ (s(n−3)+i) q_i = sn(n−1)`, `n ≤ δ ≤ n+2`,
/// then `δ = n` with all lines of full order, and two lines per vertex.
pub fn line_census(
    g: &Graph,
    params: ExtensionParams,
    data: &[VertexLineData],
) -> Result<LineCensus, Violation> {
    let (s, n) = (params.s(), params.n());
    let v = g.order();
    if data.len() != v || data.iter().enumerate().any(|(i, d)| d.vertex != i) {
        return Err(Violation::global("census_vertices", v as i128, data.len() as i128));
    }
    let mut ids: BTreeMap<&[usize], usize> = BTreeMap::new();
    for d in data {
        for line in &d.lines {
            ids.entry(line.as_slice()).or_insert(0);
        }
    }
    for (i, id) in ids.values_mut().enumerate() {
        *id = i;
    }
    let lines: Vec<Vec<usize>> = ids.keys().map(|l| l.to_vec()).collect();
    let delta = lines.len();
    let base = s * (n - 3);
    let mut q = vec![0usize; 2 * s];
    for line in &lines {
        let c = line.len();
        if c <= base || c > base + 2 * s {
            return Err(Violation::global("census_line_order", (base + 2 * s) as i128, c as i128));
        }
        q[c - base - 1] += 1;
    }
    let total: usize = lines.iter().map(Vec::len).sum();
    let want = s * n * (n - 1);
    if total != want {
        return Err(Violation::global("census_incidence", want as i128, total as i128));
    }
    let mut on = vec![0usize; v];
    for line in &lines {
        for &y in line {
            on[y] += 1;
        }
    }
    if let Some(y) = (0..v).find(|&y| on[y] != 2) {
        return Err(Violation::vertex("census_vertex_lines", y, 2, on[y] as i128));
    }
    if delta < n {
        return Err(Violation::global("census_delta_min", n as i128, delta as i128));
    }
    if delta > n + 2 {
        return Err(Violation::global("census_delta_max", (n + 2) as i128, delta as i128));
    }
    if delta != n {
        return Err(Violation::global("census_delta", n as i128, delta as i128));
    }
    let short: usize = q[..2 * s - 1].iter().sum();
    if short != 0 {
        return Err(Violation::global("census_short_lines", 0, short as i128));
    }
    let h = q.iter().position(|&c| c != 0).map(|i| i + 1);
    let incidence = data
        .iter()
        .map(|d| {
            let a = ids[d.lines[0].as_slice()];
            let b = ids[d.lines[1].as_slice()];
            [a.min(b), a.max(b)]
        })
        .collect();
    Ok(LineCensus {
        lines,
        delta,
        q,
        h,
        incidence,
    })
}

/// Runs [`lines_through`] and [`validate_vertex_lines`] at every vertex and
/// builds the census. The first failing vertex is reported.
pub fn compute_census(g: &Graph, params: ExtensionParams) -> Result<LineCensus, LinesError> {
    check_line_params(params)?;
    let data = vertex_line_data(g, params)?;
    line_census(g, params, &data).map_err(LinesError::Check)
}

/// Validated line data for every vertex, in vertex order.
pub fn vertex_line_data(g: &Graph, params: ExtensionParams) -> Result<Vec<VertexLineData>, LinesError> {
    check_line_params(params)?;
    par::map_rows(g.order(), |x| {
        let d = lines_through(g, x, params)?;
        match validate_vertex_lines(&d, params).into_iter().next() {
            Some(v) => Err(LinesError::Check(v)),
            None => Ok(d),
        }
    })
    .into_iter()
    .collect()
}

/// For every two lines sharing a vertex, `|C ∩ C'| = (h + i − 2s)/2` where
/// the orders are `s(n−3)+h` and `s(n−3)+i`.
pub fn check_line_intersections(census: &LineCensus, params: ExtensionParams) -> Result<(), Violation> {
    let s = params.s() as i128;
    let mut seen = BTreeMap::new();
    for &[a, b] in &census.incidence {
        if seen.insert((a, b), ()).is_some() {
            continue;
        }
        let (la, lb) = (&census.lines[a], &census.lines[b]);
        let meet = la.iter().filter(|v| lb.binary_search(v).is_ok()).count() as i128;
        let twice = census.offset(a, params) as i128 + census.offset(b, params) as i128 - 2 * s;
        if 2 * meet != twice {
            return Err(Violation::pair("line_intersection", a, b, twice, 2 * meet));
        }
    }
    Ok(())
}
