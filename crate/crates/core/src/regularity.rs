//! Co-edge-regularity, strong regularity, and the exact local identities an
//! `s`-clique extension of `T(n)` satisfies: the entries of `A³` and the
//! first two moments of the local-graph degrees.
//!
//! Every check here is exact and returns the first counterexample as a
//! [`Violation`].

use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::params::ExtensionParams;
use crate::par;
use crate::report::Violation;
use crate::spectral::RowStreamer;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("common neighbours need two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("vertex {vertex} has degree {degree}, expected valency {expected}")]
    WrongValency {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
}

/// `(v, k, μ)` of a co-edge-regular graph. For a complete graph there is no
/// nonadjacent pair and `mu` is reported as 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoEdgeParams {
    pub order: usize,
    pub valency: usize,
    pub mu: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrgParams {
    pub order: usize,
    pub valency: usize,
    pub lambda: usize,
    pub mu: usize,
}

/// `|N(x) ∩ N(y)|` for distinct `x`, `y`.
pub fn common_neighbors(g: &Graph, x: usize, y: usize) -> Result<usize, RegularityError> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(RegularityError::SameVertex(x));
    }
    Ok(g.common_neighbor_count(x, y))
}

fn regular(g: &Graph) -> Result<usize, Violation> {
    let k = g.degree(0);
    match g.irregular_witness() {
        None => Ok(k),
        Some((x, d)) => Err(Violation::vertex("regular", x, k as i128, d as i128)),
    }
}

/// First pair `x < y` with the given adjacency, and its common-neighbour count.
fn first_pair(g: &Graph, adjacent: bool) -> Option<(usize, usize, usize)> {
    (0..g.order()).find_map(|x| {
        (x + 1..g.order())
            .find(|&y| g.has_edge(x, y) == adjacent)
            .map(|y| (x, y, g.common_neighbor_count(x, y)))
    })
}

fn constant_count(g: &Graph, adjacent: bool, check: &'static str) -> Result<Option<usize>, Violation> {
    let Some((_, _, expected)) = first_pair(g, adjacent) else {
        return Ok(None);
    };
    let n = g.order();
    let bad = par::find_first(n, |x| {
        (x + 1..n)
            .filter(|&y| g.has_edge(x, y) == adjacent)
            .map(|y| (y, g.common_neighbor_count(x, y)))
            .find(|&(_, c)| c != expected)
            .map(|(y, c)| Violation::pair(check, x, y, expected as i128, c as i128))
    });
    match bad {
        Some(v) => Err(v),
        None => Ok(Some(expected)),
    }
}

/// Succeeds iff `g` is regular and every nonadjacent pair has the same number
/// of common neighbours.
pub fn co_edge_params(g: &Graph) -> Result<CoEdgeParams, Violation> {
    let valency = regular(g)?;
    let mu = constant_count(g, false, "mu")?.unwrap_or(0);
    Ok(CoEdgeParams {
        order: g.order(),
        valency,
        mu,
    })
}

/// Co-edge-regular with, in addition, a constant `λ` over adjacent pairs.
pub fn srg_params(g: &Graph) -> Result<SrgParams, Violation> {
    let co = co_edge_params(g)?;
    let lambda = constant_count(g, true, "lambda")?.unwrap_or(0);
    Ok(SrgParams {
        order: co.order,
        valency: co.valency,
        lambda,
        mu: co.mu,
    })
}

fn check_valency(g: &Graph, params: &ExtensionParams) -> Result<(), Violation> {
    let k = params.valency();
    (0..g.order())
        .map(|x| (x, g.degree(x)))
        .find(|&(_, d)| d != k)
        .map_or(Ok(()), |(x, d)| Err(Violation::vertex("valency", x, k as i128, d as i128)))
}

/// Closed forms for the entries of `A³`, given `λ_xy` / `μ_xy`.
#[derive(Debug, Clone, Copy)]
pub struct CubeFormulas {
    s: i128,
    n: i128,
}

impl CubeFormulas {
    pub fn new(params: &ExtensionParams) -> Self {
        CubeFormulas {
            s: params.s() as i128,
            n: params.n() as i128,
        }
    }

    /// `(A³)_xx = 2s²n² − 2s²n − 6sn − 3s² + 9s + 2`.
    pub fn diagonal(&self) -> i128 {
        let (s, n) = (self.s, self.n);
        2 * s * s * n * n - 2 * s * s * n - 6 * s * n - 3 * s * s + 9 * s + 2
    }

    fn coefficient(&self) -> i128 {
        3 + 4 * self.s - self.s * self.n
    }

    /// `(A³)_xy = 9s²n + 2sn − 15s² − 8s − 3 − (3 + 4s − sn)λ_xy` for `x ~ y`.
    pub fn adjacent(&self, lambda: i128) -> i128 {
        let (s, n) = (self.s, self.n);
        9 * s * s * n + 2 * s * n - 15 * s * s - 8 * s - 3 - self.coefficient() * lambda
    }

    /// `(A³)_xy = 8s²n − 12s² − (3 + 4s − sn)μ_xy` for `x ≁ y`.
    pub fn nonadjacent(&self, mu: i128) -> i128 {
        let (s, n) = (self.s, self.n);
        8 * s * s * n - 12 * s * s - self.coefficient() * mu
    }
}

/// Computes `A³` exactly, row by row, and compares every entry with
/// [`CubeFormulas`]. `λ_xy` and `μ_xy` are recounted from the graph rather
/// than assumed constant.
pub fn check_cube_entries(g: &Graph, params: &ExtensionParams) -> Result<(), Violation> {
    check_valency(g, params)?;
    let formulas = CubeFormulas::new(params);
    let streamer = RowStreamer::new(g);
    let found = par::find_first(g.order(), |x| {
        let rows = streamer.power_rows::<i64>(x, 3);
        let (square, cube) = (&rows[2], &rows[3]);
        (0..g.order()).find_map(|y| {
            let actual = cube[y] as i128;
            let (check, expected) = if x == y {
                ("cube_diagonal", formulas.diagonal())
            } else if g.has_edge(x, y) {
                ("cube_adjacent", formulas.adjacent(square[y] as i128))
            } else {
                ("cube_nonadjacent", formulas.nonadjacent(square[y] as i128))
            };
            (actual != expected).then(|| Violation::pair(check, x, y, expected, actual))
        })
    });
    found.map_or(Ok(()), Err)
}

/// Degree statistics of the local graph at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalProfile {
    pub vertex: usize,
    /// `d_i` for the neighbours of `vertex`, in increasing neighbour order.
    pub degrees: Vec<usize>,
    /// `ε`, the number of edges in the local graph.
    pub edge_count: usize,
    pub sum_deg: i128,
    pub sum_sq_deg: i128,
    /// `Σ (d_i − (sn − 2))²`.
    pub deviation_sq: i128,
}

pub fn local_profile(g: &Graph, x: usize, params: &ExtensionParams) -> Result<LocalProfile, RegularityError> {
    g.check_vertex(x)?;
    let k = params.valency();
    if let Some(v) = (0..g.order()).find(|&v| g.degree(v) != k) {
        return Err(RegularityError::WrongValency {
            vertex: v,
            degree: g.degree(v),
            expected: k,
        });
    }
    Ok(profile_unchecked(g, x, params))
}

fn profile_unchecked(g: &Graph, x: usize, params: &ExtensionParams) -> LocalProfile {
    let centre = (params.s() * params.n()) as i128 - 2;
    let degrees: Vec<usize> = g.neighbors(x).map(|y| g.common_neighbor_count(x, y)).collect();
    let sum_deg: i128 = degrees.iter().map(|&d| d as i128).sum();
    let sum_sq_deg: i128 = degrees.iter().map(|&d| (d * d) as i128).sum();
    let deviation_sq: i128 = degrees
        .iter()
        .map(|&d| {
            let e = d as i128 - centre;
            e * e
        })
        .sum();
    LocalProfile {
        vertex: x,
        edge_count: (sum_deg / 2) as usize,
        degrees,
        sum_deg,
        sum_sq_deg,
        deviation_sq,
    }
}

/// Right-hand sides of the local degree identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalTargets {
    /// `Σ d_i = 2s²n² − 2s²n − 6sn − 3s² + 9s + 2`.
    pub sum_deg: i128,
    /// `Σ d_i² = 2sn(s²n² − 6sn − 6s² + 10s + 8) + 9s³ + 3s² − 24s − 4`.
    pub sum_sq_deg: i128,
    /// `Σ (d_i − (sn − 2))² = (s − 1)s²(n − 3)²`.
    pub deviation_sq: i128,
}

impl LocalTargets {
    pub fn new(params: &ExtensionParams) -> Self {
        let (s, n) = (params.s() as i128, params.n() as i128);
        LocalTargets {
            sum_deg: 2 * s * s * n * n - 2 * s * s * n - 6 * s * n - 3 * s * s + 9 * s + 2,
            sum_sq_deg: 2 * s * n * (s * s * n * n - 6 * s * n - 6 * s * s + 10 * s + 8) + 9 * s * s * s
                + 3 * s * s
                - 24 * s
                - 4,
            deviation_sq: (s - 1) * s * s * (n - 3) * (n - 3),
        }
    }
}

/// True iff all three local identities hold at every vertex.
pub fn check_local_identities(g: &Graph, params: &ExtensionParams) -> Result<(), Violation> {
    check_valency(g, params)?;
    let targets = LocalTargets::new(params);
    let found = par::find_first(g.order(), |x| {
        let p = profile_unchecked(g, x, params);
        [
            ("local_sum_deg", targets.sum_deg, p.sum_deg),
            ("local_sum_sq_deg", targets.sum_sq_deg, p.sum_sq_deg),
            ("local_deviation_sq", targets.deviation_sq, p.deviation_sq),
        ]
        .into_iter()
        .find(|&(_, want, got)| want != got)
        .map(|(check, want, got)| Violation::vertex(check, x, want, got))
    });
    found.map_or(Ok(()), Err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::report::Location;

    fn delta(s: usize, n: usize) -> (Graph, ExtensionParams) {
        let g = clique_extension(&make_triangular(n).unwrap(), s).unwrap();
        (g, ExtensionParams::new(s, n).unwrap())
    }

    #[test]
    fn common_neighbour_counts() {
        let k4 = make_complete(4).unwrap();
        assert_eq!(common_neighbors(&k4, 0, 1), Ok(2));
        assert_eq!(common_neighbors(&k4, 1, 1), Err(RegularityError::SameVertex(1)));
        let t5 = make_triangular(5).unwrap();
        // {0,1} and {2,3} are disjoint
        assert_eq!(common_neighbors(&t5, 0, 7), Ok(4));
        let (d, _) = delta(2, 5);
        assert!(!d.has_edge(0, 14));
        assert_eq!(common_neighbors(&d, 0, 14), Ok(8));
    }

    #[test]
    fn co_edge_examples() {
        let (d, _) = delta(2, 5);
        assert_eq!(
            co_edge_params(&d),
            Ok(CoEdgeParams { order: 20, valency: 13, mu: 8 })
        );
        let err = co_edge_params(&make_path(4).unwrap()).unwrap_err();
        assert_eq!((err.check, err.location), ("regular", Location::Vertex(1)));
        assert_eq!(
            co_edge_params(&make_petersen()),
            Ok(CoEdgeParams { order: 10, valency: 3, mu: 1 })
        );
    }

    #[test]
    fn srg_examples() {
        assert_eq!(
            srg_params(&make_triangular(5).unwrap()),
            Ok(SrgParams { order: 10, valency: 6, lambda: 3, mu: 4 })
        );
        assert_eq!(
            srg_params(&make_grid(4, 4).unwrap()),
            Ok(SrgParams { order: 16, valency: 6, lambda: 2, mu: 2 })
        );
        let (d, _) = delta(2, 5);
        let err = srg_params(&d).unwrap_err();
        assert_eq!(err.check, "lambda");
        // pair (0,1) is a same-class pair with λ = 12; the first cross pair has 8
        assert_eq!((err.expected, err.actual), (12, 8));
    }

    #[test]
    fn cube_formula_values() {
        let f = CubeFormulas::new(&ExtensionParams::new(2, 5).unwrap());
        assert_eq!(f.diagonal(), 108);
        assert_eq!(f.nonadjacent(8), 104);
        assert_eq!(f.adjacent(12), 109);
    }

    #[test]
    fn cube_entries_match_brute_force() {
        let (d, p) = delta(2, 5);
        // independent cube by triple loop
        let n = d.order();
        let a = |x: usize, y: usize| d.has_edge(x, y) as i64;
        for x in [0usize, 5, 13] {
            for y in 0..n {
                let mut c = 0;
                for u in 0..n {
                    for v in 0..n {
                        c += a(x, u) * a(u, v) * a(v, y);
                    }
                }
                let want = if x == y {
                    108
                } else if d.has_edge(x, y) {
                    121 - d.common_neighbor_count(x, y) as i64
                } else {
                    104
                };
                assert_eq!(c, want, "entry ({x},{y})");
            }
        }
        assert_eq!(check_cube_entries(&d, &p), Ok(()));
        for (s, n) in [(3, 6), (2, 7), (4, 5)] {
            let (g, p) = delta(s, n);
            assert_eq!(check_cube_entries(&g, &p), Ok(()));
        }
    }

    #[test]
    fn cube_check_reports_valency_and_forgery() {
        let petersen = make_petersen();
        let p = ExtensionParams::new(2, 5).unwrap();
        assert_eq!(check_cube_entries(&petersen, &p).unwrap_err().check, "valency");
        // K_14 has the right valency but (A³)_xx = 13·12 = 156
        let err = check_cube_entries(&make_complete(14).unwrap(), &p).unwrap_err();
        assert_eq!((err.check, err.expected, err.actual), ("cube_diagonal", 108, 156));
    }

    #[test]
    fn local_profiles() {
        let (d, p) = delta(2, 5);
        for x in 0..d.order() {
            let prof = local_profile(&d, x, &p).unwrap();
            assert_eq!(prof.sum_deg, 108);
            assert_eq!(prof.sum_sq_deg, 912);
            assert_eq!(prof.deviation_sq, 16);
            assert_eq!(prof.edge_count, 54);
        }
        let t = LocalTargets::new(&p);
        assert_eq!((t.sum_deg, t.sum_sq_deg, t.deviation_sq), (108, 912, 16));
        assert!(matches!(
            local_profile(&make_petersen(), 0, &p),
            Err(RegularityError::WrongValency { .. })
        ));
        assert!(local_profile(&d, 20, &p).is_err());
    }

    #[test]
    fn local_identities() {
        let (d, p) = delta(2, 5);
        assert_eq!(check_local_identities(&d, &p), Ok(()));
        let (d, p) = delta(3, 7);
        assert_eq!(check_local_identities(&d, &p), Ok(()));
        let err = check_local_identities(&make_petersen(), &ExtensionParams::new(2, 5).unwrap()).unwrap_err();
        assert_eq!(err.check, "valency");
    }
}
