use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;

use super::{Partition, StructureError};
use crate::bits;
use crate::graph::Graph;
use crate::spectral::{integer_rank, symmetric_eigenvalues, Eigenvalue, SpectralError, Spectrum, DEFAULT_CLUSTER_TOL};

/// Quotient of the adjacency matrix with respect to a partition, kept as the
/// integer block sums `(PᵀAP)_ij` together with the class sizes so that
/// every entry is an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    sizes: Vec<usize>,
    block_sums: Vec<Vec<i64>>,
}

impl QuotientMatrix {
    pub fn dim(&self) -> usize {
        self.sizes.len()
    }

    /// `Q_ij = (PᵀAP)_ij / |V_i|`.
    pub fn entry(&self, i: usize, j: usize) -> Ratio<i64> {
        Ratio::new(self.block_sums[i][j], self.sizes[i] as i64)
    }

    pub fn rows(&self) -> Vec<Vec<Ratio<i64>>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Kernel dimension of `Q − θI`, exactly. Row `i` is scaled by `|V_i|`,
    /// which leaves the rank unchanged and makes the matrix integral.
    pub fn eigenspace_dimension(&self, theta: i64) -> usize {
        let m = self.dim();
        let rows = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut v = self.block_sums[i][j];
                        if i == j {
                            v -= theta * self.sizes[i] as i64;
                        }
                        BigInt::from(v)
                    })
                    .collect()
            })
            .collect();
        m - integer_rank(rows)
    }
}

fn class_bits(g: &Graph, pi: &Partition) -> Vec<Vec<u64>> {
    pi.classes()
        .iter()
        .map(|class| {
            let mut row = vec![0u64; g.row_words()];
            for &v in class {
                bits::set(&mut row, v);
            }
            row
        })
        .collect()
}

fn check_orders(g: &Graph, pi: &Partition) -> Result<(), StructureError> {
    if pi.order() != g.order() {
        return Err(StructureError::OrderMismatch {
            partition: pi.order(),
            graph: g.order(),
        });
    }
    Ok(())
}

pub fn quotient_matrix(g: &Graph, pi: &Partition) -> Result<QuotientMatrix, StructureError> {
    check_orders(g, pi)?;
    let masks = class_bits(g, pi);
    let block_sums = pi
        .classes()
        .iter()
        .map(|class| {
            masks
                .iter()
                .map(|mask| {
                    class
                        .iter()
                        .map(|&v| bits::count_and(g.row(v), mask) as i64)
                        .sum()
                })
                .collect()
        })
        .collect();
    Ok(QuotientMatrix {
        sizes: pi.classes().iter().map(Vec::len).collect(),
        block_sums,
    })
}

/// Every block `A[V_i, V_j]` has constant row sums, i.e. `PQ = AP`.
pub fn is_equitable(g: &Graph, pi: &Partition) -> Result<bool, StructureError> {
    check_orders(g, pi)?;
    let masks = class_bits(g, pi);
    Ok(pi.classes().iter().all(|class| {
        masks.iter().all(|mask| {
            let first = bits::count_and(g.row(class[0]), mask);
            class[1..].iter().all(|&v| bits::count_and(g.row(v), mask) == first)
        })
    }))
}

/// Eigenvalues of `Q`. `Q` is similar to the symmetric matrix
/// `D^{-1/2} PᵀAP D^{-1/2}`, which is what gets diagonalised; near-integer
/// values whose multiplicity is confirmed by an exact kernel dimension are
/// reported as exact.
pub fn quotient_spectrum(q: &QuotientMatrix) -> Result<Spectrum, SpectralError> {
    let m = q.dim();
    let mut sym = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            sym[i * m + j] =
                q.block_sums[i][j] as f64 / libm::sqrt((q.sizes[i] * q.sizes[j]) as f64);
        }
    }
    let values = symmetric_eigenvalues(sym, m)?;
    let numeric = Spectrum::cluster(&values, DEFAULT_CLUSTER_TOL);
    let entries = numeric
        .entries()
        .iter()
        .map(|&(v, mult)| match v.nearest_integer(DEFAULT_CLUSTER_TOL) {
            Some(r) if q.eigenspace_dimension(r) == mult => (Eigenvalue::Exact(r), mult),
            _ => (v, mult),
        })
        .collect();
    Ok(Spectrum::from_entries_unchecked(entries))
}
