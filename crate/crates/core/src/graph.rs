//! Dense simple undirected graphs backed by a bit matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::bits::{self, Ones};

/// Largest order accepted by any constructor. The dense representation is
/// quadratic in the order.
pub const MAX_ORDER: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order must be at least 1")]
    Empty,
    #[error("graph order {0} exceeds the dense limit of {MAX_ORDER} vertices")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Immutable simple graph on vertices `0..order`.
///
/// Row `x` of the adjacency matrix is stored as `words` consecutive `u64`s,
/// so common-neighbour counts reduce to AND + popcount over two rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        if order == 0 {
            return Err(GraphError::Empty);
        }
        if order > MAX_ORDER {
            return Err(GraphError::TooLarge(order));
        }
        let words = bits::words_for(order);
        Ok(Graph {
            order,
            words,
            bits: vec![0; words * order],
        })
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(order)?;
        for (x, y) in edges {
            g.check_vertex(x)?;
            g.check_vertex(y)?;
            if x == y {
                return Err(GraphError::SelfLoop(x));
            }
            g.set_edge(x, y, true);
        }
        Ok(g)
    }

    /// Builds a graph by asking `adjacent(x, y)` for every pair `x < y`.
    pub fn from_fn<F>(order: usize, mut adjacent: F) -> Result<Self, GraphError>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let mut g = Graph::empty(order)?;
        for y in 1..order {
            for x in 0..y {
                if adjacent(x, y) {
                    g.set_edge(x, y, true);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, x: usize, y: usize, on: bool) {
        let w = self.words;
        if on {
            bits::set(&mut self.bits[x * w..(x + 1) * w], y);
            bits::set(&mut self.bits[y * w..(y + 1) * w], x);
        } else {
            bits::clear(&mut self.bits[x * w..(x + 1) * w], y);
            bits::clear(&mut self.bits[y * w..(y + 1) * w], x);
        }
    }

    pub fn check_vertex(&self, x: usize) -> Result<(), GraphError> {
        if x < self.order {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: x,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of `u64` words per adjacency row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    /// Adjacency row of `x` as packed bits.
    #[inline]
    pub fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.words..(x + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        bits::get(self.row(x), y)
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        Ones::new(self.row(x))
    }

    #[inline]
    pub fn degree(&self, x: usize) -> usize {
        bits::count(self.row(x))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.degree(x)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|x| self.degree(x)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(x, y)` with `x < y`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |x| self.neighbors(x).filter(move |&y| y > x).map(move |y| (x, y)))
    }

    /// The common valency if the graph is regular.
    pub fn regular_valency(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.order).all(|x| self.degree(x) == k).then_some(k)
    }

    /// First vertex whose degree differs from vertex 0, with its degree.
    pub fn irregular_witness(&self) -> Option<(usize, usize)> {
        let k = self.degree(0);
        (1..self.order)
            .map(|x| (x, self.degree(x)))
            .find(|&(_, d)| d != k)
    }

    /// `|N(x) ∩ N(y)|` without any argument checks.
    #[inline]
    pub fn common_neighbor_count(&self, x: usize, y: usize) -> usize {
        bits::count_and(self.row(x), self.row(y))
    }

    /// Neighbour lists, used by the exact row-streaming products.
    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        (0..self.order)
            .map(|x| self.neighbors(x).map(|y| y as u32).collect())
            .collect()
    }

    /// Subgraph induced on `vertices`, in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        Graph::from_fn(vertices.len(), |i, j| self.has_edge(vertices[i], vertices[j]))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![0u64; self.words];
        let mut stack = vec![0usize];
        bits::set(&mut seen, 0);
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if !bits::get(&seen, y) {
                    bits::set(&mut seen, y);
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == self.order
    }

    /// Closed neighbourhood `{x} ∪ N(x)` as packed bits.
    pub fn closed_row(&self, x: usize) -> Vec<u64> {
        let mut row = self.row(x).to_vec();
        bits::set(&mut row, x);
        row
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edge_count())
            .finish()
    }
}
