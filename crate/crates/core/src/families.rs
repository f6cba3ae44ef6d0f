//! Graph families and elementary graph operations.

use alloc::vec::Vec;

use crate::graph::{Graph, GraphError};

/// `K_t`.
pub fn make_complete(t: usize) -> Result<Graph, GraphError> {
    Graph::from_fn(t, |_, _| true)
}

/// Lexicographically ordered `d`-subsets of `{0, .., t-1}`; vertex `i` of
/// [`make_johnson`] is `johnson_labels(t, d)[i]`.
pub fn johnson_labels(t: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d > t {
        return out;
    }
    let mut cur: Vec<usize> = (0..d).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = d;
        while i > 0 && cur[i - 1] == t - d + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..d {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Johnson graph `J(t, d)`: `d`-subsets adjacent iff they share `d − 1`
/// elements.
pub fn make_johnson(t: usize, d: usize) -> Result<Graph, GraphError> {
    if d < 1 || t < 2 * d {
        return Err(GraphError::InvalidParameter("Johnson graph needs t >= 2d >= 2"));
    }
    let labels = johnson_labels(t, d);
    if labels.len() > crate::graph::MAX_ORDER {
        return Err(GraphError::TooLarge(labels.len()));
    }
    Graph::from_fn(labels.len(), |x, y| {
        shared(&labels[x], &labels[y]) == d - 1
    })
}

fn shared(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// The 2-subset `{a, b}` (with `a < b`) behind each vertex of [`make_triangular`].
pub fn triangular_labels(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

/// Triangular graph `T(n)`, the line graph of `K_n`.
pub fn make_triangular(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameter("triangular graph needs n >= 2"));
    }
    let labels = triangular_labels(n);
    Graph::from_fn(labels.len(), |x, y| {
        let (a, b) = labels[x];
        let (c, d) = labels[y];
        a == c || a == d || b == c || b == d
    })
}

/// `p × q` rook's graph: cells adjacent iff they share a row or column.
/// Cell `(i, j)` is vertex `i·q + j`.
pub fn make_grid(p: usize, q: usize) -> Result<Graph, GraphError> {
    if p < 1 || q < 1 {
        return Err(GraphError::InvalidParameter("grid needs p, q >= 1"));
    }
    Graph::from_fn(p * q, |x, y| x / q == y / q || x % q == y % q)
}

pub fn make_cycle(t: usize) -> Result<Graph, GraphError> {
    if t < 3 {
        return Err(GraphError::InvalidParameter("cycle needs at least 3 vertices"));
    }
    Graph::from_edges(t, (0..t).map(|i| (i, (i + 1) % t)))
}

pub fn make_path(t: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(t, (1..t).map(|i| (i - 1, i)))
}

pub fn make_complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    Graph::from_fn(a + b, |x, y| (x < a) != (y < a))
}

/// The Petersen graph, built as the complement of `T(5)`.
pub fn make_petersen() -> Graph {
    complement(&make_triangular(5).expect("T(5) is valid"))
}

/// `s`-clique extension: adjacency `(A + I) ⊗ J_s − I`.
///
/// Vertex `(x, i)` is numbered `x·s + i`, so the `s` copies of each original
/// vertex are consecutive.
pub fn clique_extension(g: &Graph, s: usize) -> Result<Graph, GraphError> {
    if s < 1 {
        return Err(GraphError::InvalidParameter("clique size s must be at least 1"));
    }
    let order = g
        .order()
        .checked_mul(s)
        .ok_or(GraphError::TooLarge(usize::MAX))?;
    if order > crate::graph::MAX_ORDER {
        return Err(GraphError::TooLarge(order));
    }
    Graph::from_fn(order, |u, v| {
        let (x, y) = (u / s, v / s);
        x == y || g.has_edge(x, y)
    })
}

pub fn complement(g: &Graph) -> Graph {
    Graph::from_fn(g.order(), |x, y| !g.has_edge(x, y)).expect("same order as input")
}

/// Induced subgraph on `N(x)` with the map back to the host's vertices.
#[derive(Debug, Clone)]
pub struct LocalGraph {
    pub graph: Graph,
    /// `vertices[i]` is the host vertex behind local vertex `i`.
    pub vertices: Vec<usize>,
}

pub fn local_graph(g: &Graph, x: usize) -> Result<LocalGraph, GraphError> {
    g.check_vertex(x)?;
    let vertices: Vec<usize> = g.neighbors(x).collect();
    let graph = g.induced_subgraph(&vertices)?;
    Ok(LocalGraph { graph, vertices })
}

/// Degree-preserving switch: removes `ab`, `cd` and adds `ad`, `bc`.
pub fn two_switch(g: &Graph, a: usize, b: usize, c: usize, d: usize) -> Result<Graph, GraphError> {
    for v in [a, b, c, d] {
        g.check_vertex(v)?;
    }
    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
    if !distinct || !g.has_edge(a, b) || !g.has_edge(c, d) || g.has_edge(a, d) || g.has_edge(b, c) {
        return Err(GraphError::InvalidParameter(
            "two-switch needs edges ab, cd and non-edges ad, bc on distinct vertices",
        ));
    }
    let mut h = g.clone();
    h.set_edge(a, b, false);
    h.set_edge(c, d, false);
    h.set_edge(a, d, true);
    h.set_edge(b, c, true);
    Ok(h)
}

/// Copy of `g` without the edge `xy`.
pub fn delete_edge(g: &Graph, x: usize, y: usize) -> Result<Graph, GraphError> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if !g.has_edge(x, y) {
        return Err(GraphError::InvalidParameter("edge to delete is absent"));
    }
    let mut h = g.clone();
    h.set_edge(x, y, false);
    Ok(h)
}

/// Copy of `g` with vertex `x` removed; higher indices shift down by one.
pub fn delete_vertex(g: &Graph, x: usize) -> Result<Graph, GraphError> {
    g.check_vertex(x)?;
    let keep: Vec<usize> = (0..g.order()).filter(|&v| v != x).collect();
    g.induced_subgraph(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_simple(g: &Graph) {
        for x in 0..g.order() {
            assert!(!g.has_edge(x, x));
            for y in 0..g.order() {
                assert_eq!(g.has_edge(x, y), g.has_edge(y, x));
            }
        }
    }

    fn common_counts(g: &Graph, adjacent: bool) -> Vec<usize> {
        let mut out = Vec::new();
        for x in 0..g.order() {
            for y in x + 1..g.order() {
                if g.has_edge(x, y) == adjacent {
                    let c = (0..g.order()).filter(|&z| g.has_edge(x, z) && g.has_edge(y, z)).count();
                    out.push(c);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    #[test]
    fn complete_graphs() {
        let k1 = make_complete(1).unwrap();
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
        let k4 = make_complete(4).unwrap();
        assert_eq!((k4.order(), k4.edge_count(), k4.regular_valency()), (4, 6, Some(3)));
        assert_eq!(complement(&make_complete(5).unwrap()).edge_count(), 0);
    }

    #[test]
    fn johnson_graphs() {
        assert_eq!(make_johnson(5, 2).unwrap(), make_triangular(5).unwrap());
        assert_eq!(make_johnson(4, 1).unwrap(), make_complete(4).unwrap());
        // C(6,3) = 20 vertices, valency d(t-d) = 9
        let j63 = make_johnson(6, 3).unwrap();
        assert_eq!((j63.order(), j63.regular_valency()), (20, Some(9)));
        assert!(make_johnson(5, 3).is_err());
        assert!(make_johnson(4, 0).is_err());
        assert_eq!(johnson_labels(4, 2).len(), 6);
        assert_eq!(johnson_labels(4, 2)[5], [2, 3]);
    }

    #[test]
    fn triangular_graphs() {
        let t2 = make_triangular(2).unwrap();
        assert_eq!((t2.order(), t2.edge_count()), (1, 0));
        let t4 = make_triangular(4).unwrap();
        assert_eq!((t4.order(), t4.regular_valency()), (6, Some(4)));
        // brute force: every nonadjacent pair of T(4) has 4 common neighbours
        assert_eq!(common_counts(&t4, false), [4]);
        let t5 = make_triangular(5).unwrap();
        assert_eq!(t5.regular_valency(), Some(6));
        assert_eq!(common_counts(&t5, true), [3]);
        assert_eq!(common_counts(&t5, false), [4]);
    }

    #[test]
    fn clique_extension_basics() {
        let t5 = make_triangular(5).unwrap();
        assert_eq!(clique_extension(&t5, 1).unwrap(), t5);
        assert_eq!(
            clique_extension(&make_complete(1).unwrap(), 4).unwrap(),
            make_complete(4).unwrap()
        );
        let d = clique_extension(&t5, 2).unwrap();
        assert_eq!((d.order(), d.regular_valency()), (20, Some(13)));
        // blocked ordering: vertices 0 and 1 are the two copies of T(5)'s vertex 0
        assert!(d.has_edge(0, 1));
        assert_eq!(d.closed_row(0), d.closed_row(1));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&make_complete(4).unwrap()).edge_count(), 0);
        // C_5 is self-complementary: its complement is the cycle 0-2-4-1-3
        let c5 = make_cycle(5).unwrap();
        let cc = complement(&c5);
        let relabel = [0, 2, 4, 1, 3];
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(c5.has_edge(i, j), cc.has_edge(relabel[i], relabel[j]));
            }
        }
        let petersen = make_petersen();
        assert_eq!(petersen.regular_valency(), Some(3));
        assert_eq!(girth(&petersen), 5);
    }

    fn girth(g: &Graph) -> usize {
        let mut best = usize::MAX;
        for root in 0..g.order() {
            let mut dist = alloc::vec![usize::MAX; g.order()];
            let mut parent = alloc::vec![usize::MAX; g.order()];
            let mut queue = alloc::collections::VecDeque::new();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for y in g.neighbors(x) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        best = best.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn local_graphs() {
        let l = local_graph(&make_complete(6).unwrap(), 2).unwrap();
        assert_eq!(l.graph, make_complete(5).unwrap());
        assert_eq!(l.vertices, [0, 1, 3, 4, 5]);
        let lp = local_graph(&make_petersen(), 0).unwrap();
        assert_eq!((lp.graph.order(), lp.graph.edge_count()), (3, 0));
        let d = clique_extension(&make_triangular(5).unwrap(), 2).unwrap();
        let ld = local_graph(&d, 7).unwrap();
        let mut degs = ld.graph.degrees();
        degs.sort_unstable();
        let mut expected = alloc::vec![8; 12];
        expected.push(12);
        assert_eq!(degs, expected);
        assert!(local_graph(&d, 20).is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(make_grid(2, 2).unwrap().regular_valency(), Some(2));
        assert!(make_grid(2, 2).unwrap().is_connected());
        assert_eq!(make_grid(1, 5).unwrap(), make_complete(5).unwrap());
        let g44 = make_grid(4, 4).unwrap();
        assert_eq!(g44.regular_valency(), Some(6));
        assert_eq!(common_counts(&g44, true), [2]);
        assert_eq!(common_counts(&g44, false), [2]);
    }

    #[test]
    fn constructors_are_simple() {
        let graphs = [
            make_complete(7).unwrap(),
            make_johnson(7, 3).unwrap(),
            make_triangular(8).unwrap(),
            make_grid(3, 5).unwrap(),
            clique_extension(&make_triangular(6).unwrap(), 3).unwrap(),
            make_petersen(),
            make_complete_bipartite(3, 4).unwrap(),
        ];
        for g in &graphs {
            assert_simple(g);
        }
    }

    #[test]
    fn mutations() {
        let c6 = make_cycle(6).unwrap();
        let h = two_switch(&c6, 0, 1, 3, 4).unwrap();
        assert_eq!(h.degrees(), c6.degrees());
        assert!(h.has_edge(0, 4) && h.has_edge(1, 3) && !h.has_edge(0, 1));
        assert!(two_switch(&c6, 0, 1, 1, 2).is_err());
        assert_eq!(delete_edge(&c6, 0, 1).unwrap().edge_count(), 5);
        assert_eq!(delete_vertex(&c6, 0).unwrap(), make_path(5).unwrap());
    }
}
