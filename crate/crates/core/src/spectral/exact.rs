//! Exact integer certification of graph spectra.
//!
//! Matrix polynomials in `A` are never formed as full matrices. Instead each
//! row `e_x · p(A)` is streamed through the factors `(A − θI)` using the
//! neighbour lists, which keeps memory linear in the order and lets rows be
//! processed independently. Entry width is chosen from an a-priori bound:
//! `i64` when every intermediate provably fits, arbitrary precision otherwise.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SpectralError;
use crate::graph::Graph;
use crate::par;

/// Integer scalars the row streams run over.
pub(crate) trait Ring: Clone + Send + Sync {
    fn nil() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    /// `self -= other · k`
    fn sub_scaled(&mut self, other: &Self, k: i64);
    /// `Σ a_i b_i`, overflow-free.
    fn dot(a: &[Self], b: &[Self]) -> BigInt;
}

impl Ring for i64 {
    fn nil() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    #[inline]
    fn sub_scaled(&mut self, other: &Self, k: i64) {
        *self -= *other * k;
    }
    fn dot(a: &[Self], b: &[Self]) -> BigInt {
        let mut acc: i128 = 0;
        let mut spill = BigInt::zero();
        for (x, y) in a.iter().zip(b) {
            // |x·y| < 2^124 since both fit in 62 bits
            let p = *x as i128 * *y as i128;
            match acc.checked_add(p) {
                Some(v) => acc = v,
                None => {
                    spill += BigInt::from(acc);
                    acc = p;
                }
            }
        }
        spill + BigInt::from(acc)
    }
}

impl Ring for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_scaled(&mut self, other: &Self, k: i64) {
        *self -= other * k;
    }
    fn dot(a: &[Self], b: &[Self]) -> BigInt {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }
}

/// Neighbour lists plus the maximum degree, shared by all row streams.
pub(crate) struct RowStreamer {
    adj: Vec<Vec<u32>>,
    max_degree: usize,
}

/// Intermediate entries up to `2^LIMB_SAFE_BITS` are handled in `i64`.
const LIMB_SAFE_BITS: f64 = 60.0;

impl RowStreamer {
    pub(crate) fn new(g: &Graph) -> Self {
        RowStreamer {
            adj: g.adjacency_lists(),
            max_degree: g.max_degree(),
        }
    }

    pub(crate) fn order(&self) -> usize {
        self.adj.len()
    }

    /// Whether `Π (Δ + |θ|)` over `shifts` stays below the `i64` budget.
    pub(crate) fn fits_i64(&self, shifts: &[i64]) -> bool {
        let bits: f64 = shifts
            .iter()
            .map(|&t| libm::log2(self.max_degree as f64 + (t as f64).abs() + 1.0))
            .sum();
        bits < LIMB_SAFE_BITS
    }

    pub(crate) fn unit<T: Ring>(&self, x: usize) -> Vec<T> {
        let mut row = vec![T::nil(); self.order()];
        row[x] = T::from_i64(1);
        row
    }

    /// `row · (A − θI)`, scattering only from nonzero entries.
    pub(crate) fn step<T: Ring>(&self, row: &[T], theta: i64) -> Vec<T> {
        let mut out = vec![T::nil(); row.len()];
        for (l, v) in row.iter().enumerate() {
            if v.is_nil() {
                continue;
            }
            for &j in &self.adj[l] {
                out[j as usize].add_assign(v);
            }
            if theta != 0 {
                out[l].sub_scaled(v, theta);
            }
        }
        out
    }

    /// `e_x · Π (A − θ_i I)`.
    pub(crate) fn product_row<T: Ring>(&self, x: usize, shifts: &[i64]) -> Vec<T> {
        let mut row = self.unit::<T>(x);
        for &t in shifts {
            row = self.step(&row, t);
        }
        row
    }

    /// Rows `e_x A^j` for `j = 0..=max_power`.
    pub(crate) fn power_rows<T: Ring>(&self, x: usize, max_power: usize) -> Vec<Vec<T>> {
        let mut rows = Vec::with_capacity(max_power + 1);
        rows.push(self.unit::<T>(x));
        for j in 1..=max_power {
            let next = self.step(&rows[j - 1], 0);
            rows.push(next);
        }
        rows
    }

    /// `(A^r)_{xx}` for `r = 0..=r_max`, via `(A^r)_{xx} = ⟨e_x A^a, e_x A^b⟩`
    /// with `a + b = r`.
    pub(crate) fn closed_walks(&self, x: usize, r_max: usize) -> Vec<BigInt> {
        let half = r_max.div_ceil(2);
        let zeros = vec![0i64; half];
        if self.fits_i64(&zeros) {
            closed_walks_from(&self.power_rows::<i64>(x, half), r_max)
        } else {
            closed_walks_from(&self.power_rows::<BigInt>(x, half), r_max)
        }
    }
}

fn closed_walks_from<T: Ring>(rows: &[Vec<T>], r_max: usize) -> Vec<BigInt> {
    (0..=r_max)
        .map(|r| {
            let a = r / 2;
            T::dot(&rows[a], &rows[r - a])
        })
        .collect()
}

/// Outcome of an exact spectrum certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified,
    /// `tr(A^power)` differs from `Σ m_i θ_i^power`.
    PowerSumMismatch {
        power: usize,
        expected: BigInt,
        actual: BigInt,
    },
    /// `Π (A − θ_i I)` has a nonzero entry at `(row, column)`.
    NotAnnihilated { row: usize, column: usize },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified)
    }
}

fn validate_candidates(g: &Graph, candidates: &[(i64, usize)]) -> Result<(), SpectralError> {
    for (i, &(v, m)) in candidates.iter().enumerate() {
        if m == 0 {
            return Err(SpectralError::ZeroMultiplicity(v));
        }
        if candidates[..i].iter().any(|c| c.0 == v) {
            return Err(SpectralError::DuplicateValue);
        }
    }
    let total: usize = candidates.iter().map(|c| c.1).sum();
    if total != g.order() {
        return Err(SpectralError::MultiplicityMismatch {
            total,
            order: g.order(),
        });
    }
    Ok(())
}

/// Exact check that `candidates` is the spectrum of `g`.
///
/// Two conditions are verified in integer arithmetic: the product
/// `Π (A − θ_i I)` over the distinct candidate values vanishes, so every
/// eigenvalue is a candidate; and `tr(A^r) = Σ m_i θ_i^r` for `r = 0..=t`,
/// which pins the multiplicities through the Vandermonde system.
pub fn certify_integer_spectrum(
    g: &Graph,
    candidates: &[(i64, usize)],
) -> Result<Certification, SpectralError> {
    validate_candidates(g, candidates)?;
    let streamer = RowStreamer::new(g);
    let t = candidates.len() - 1;

    // power sums first: they are cheap and catch most wrong multisets
    let walks: Vec<Vec<BigInt>> = par::map_rows(g.order(), |x| streamer.closed_walks(x, t));
    for r in 0..=t {
        let actual: BigInt = walks.iter().map(|w| &w[r]).sum();
        let expected: BigInt = candidates
            .iter()
            .map(|&(v, m)| BigInt::from(m) * num_traits::pow(BigInt::from(v), r))
            .sum();
        if actual != expected {
            return Ok(Certification::PowerSumMismatch {
                power: r,
                expected,
                actual,
            });
        }
    }

    let shifts: Vec<i64> = candidates.iter().map(|c| c.0).collect();
    let witness = if streamer.fits_i64(&shifts) {
        first_nonzero_row::<i64>(&streamer, &shifts)
    } else {
        first_nonzero_row::<BigInt>(&streamer, &shifts)
    };
    Ok(match witness {
        Some((row, column)) => Certification::NotAnnihilated { row, column },
        None => Certification::Certified,
    })
}

fn first_nonzero_row<T: Ring>(streamer: &RowStreamer, shifts: &[i64]) -> Option<(usize, usize)> {
    par::find_first(streamer.order(), |x| {
        let row = streamer.product_row::<T>(x, shifts);
        row.iter().position(|v| !v.is_nil()).map(|c| (x, c))
    })
}

/// True iff `candidates` is exactly the spectrum of `g`; see
/// [`certify_integer_spectrum`].
pub fn verify_integer_spectrum(g: &Graph, candidates: &[(i64, usize)]) -> Result<bool, SpectralError> {
    certify_integer_spectrum(g, candidates).map(|c| c.is_certified())
}

/// Checks `A³ − e₁A² + e₂A − e₃I = (Π(k − θ_i)/|V|)·J` entrywise, where
/// `θ_1..θ_3` are the non-principal eigenvalues and `e_j` their elementary
/// symmetric functions. Both sides are multiplied by `|V|` so the comparison
/// stays in the integers.
pub fn check_four_eigenvalue_identity(g: &Graph, eigenvalues: [i64; 4]) -> Result<bool, SpectralError> {
    let mut eigs = eigenvalues;
    eigs.sort_unstable_by(|a, b| b.cmp(a));
    if eigs.windows(2).any(|w| w[0] == w[1]) {
        return Err(SpectralError::DuplicateValue);
    }
    let k = g.regular_valency().ok_or(SpectralError::NotRegular)?;
    if !g.is_connected() {
        return Err(SpectralError::NotConnected);
    }
    if eigs[0] != k as i64 {
        return Err(SpectralError::ValencyMismatch {
            valency: k,
            largest: eigs[0],
        });
    }
    let found = super::spectrum(g, super::DEFAULT_CLUSTER_TOL)?.distinct_count();
    if found != 4 {
        return Err(SpectralError::NotFourDistinct { found });
    }
    let rest = [eigs[1], eigs[2], eigs[3]];
    let scalar: i128 = rest.iter().map(|&t| k as i128 - t as i128).product();
    if scalar < 0 {
        return Err(SpectralError::NegativeScalar);
    }
    let v = g.order() as i128;
    let streamer = RowStreamer::new(g);
    let target = BigInt::from(scalar);
    let bad = if streamer.fits_i64(&rest) {
        par::find_first(g.order(), |x| {
            let row = streamer.product_row::<i64>(x, &rest);
            row.iter().any(|&e| e as i128 * v != scalar).then_some(x)
        })
    } else {
        par::find_first(g.order(), |x| {
            let row = streamer.product_row::<BigInt>(x, &rest);
            row.iter().any(|e| e * BigInt::from(v) != target).then_some(x)
        })
    };
    Ok(bad.is_none())
}

/// Whether `(A^r)_{xx}` is independent of `x` for every `r` in `2..=r_max`.
pub fn is_walk_regular(g: &Graph, r_max: usize) -> bool {
    if r_max < 2 {
        return true;
    }
    let streamer = RowStreamer::new(g);
    let reference = streamer.closed_walks(0, r_max);
    par::find_first(g.order(), |x| {
        let w = streamer.closed_walks(x, r_max);
        (w[2..] != reference[2..]).then_some(x)
    })
    .is_none()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..m {
            for c in col + 1..n {
                let v = (&rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c]) / &prev;
                rows[r][c] = v;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Dimension of the kernel of `A − θI`, computed exactly.
pub fn eigenspace_dimension(g: &Graph, theta: i64) -> usize {
    let n = g.order();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let mut v = if g.has_edge(x, y) { 1 } else { 0 };
                    if x == y {
                        v -= theta;
                    }
                    BigInt::from(v)
                })
                .collect()
        })
        .collect();
    n - integer_rank(rows)
}
