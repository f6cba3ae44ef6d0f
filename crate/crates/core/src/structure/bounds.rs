use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use super::StructureError;
use crate::bits;
use crate::families::complement;
use crate::graph::Graph;
use crate::params::ExtensionParams;
use crate::spectral::{eigenspace_dimension, spectrum, DEFAULT_CLUSTER_TOL};

/// Above this order the smallest eigenvalue is not certified by an exact
/// kernel computation and the bound stays numeric.
const CERTIFY_LIMIT: usize = 400;

/// A bound that is exact whenever the eigenvalue it depends on is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Exact(Ratio<i64>),
    Approx(f64),
}

impl Bound {
    pub fn as_f64(self) -> f64 {
        match self {
            Bound::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Bound::Approx(v) => v,
        }
    }

    /// Largest integer not exceeding the bound; numeric bounds get
    /// `DEFAULT_CLUSTER_TOL` of slack upwards.
    pub fn floor(self) -> i64 {
        match self {
            Bound::Exact(r) => r.floor().to_integer(),
            Bound::Approx(v) => libm::floor(v + DEFAULT_CLUSTER_TOL) as i64,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(r) => write!(f, "{r}"),
            Bound::Approx(v) => write!(f, "{v:.9}"),
        }
    }
}

/// `|V|·(−τ)/(k − τ)` for a `k`-regular graph with least eigenvalue `τ`.
pub fn hoffman_coclique_bound(g: &Graph) -> Result<Bound, StructureError> {
    let k = g.regular_valency().ok_or(StructureError::NotRegular)?;
    if k == 0 {
        return Err(StructureError::Edgeless);
    }
    let spec = spectrum(g, DEFAULT_CLUSTER_TOL)?;
    let &(tau, mult) = spec.entries().last().expect("nonempty graph");
    let v = g.order() as i64;
    let certified = match tau.nearest_integer(DEFAULT_CLUSTER_TOL) {
        Some(t) if g.order() <= CERTIFY_LIMIT && eigenspace_dimension(g, t) == mult => Some(t),
        _ => None,
    };
    Ok(match certified {
        Some(t) => Bound::Exact(Ratio::new(v * -t, k as i64 - t)),
        None => {
            let t = tau.as_f64();
            Bound::Approx(v as f64 * -t / (k as f64 - t))
        }
    })
}

/// Largest clique order in a graph with the target spectrum: the Hoffman
/// bound applied to the complement, which is regular of valency
/// `|V| − 1 − k` with least eigenvalue `−1 − (s(n−3) − 1)`. Equals `s(n−1)`.
pub fn clique_order_bound(params: ExtensionParams) -> Result<usize, StructureError> {
    let (s, n) = (params.s() as i64, params.n() as i64);
    if n < 4 {
        return Err(StructureError::InvalidParameter("clique bound needs n >= 4"));
    }
    let v = params.order() as i64;
    let co_valency = v - 1 - params.valency() as i64;
    let tau = -1 - (s * (n - 3) - 1);
    let bound = Ratio::new(v * -tau, co_valency - tau);
    Ok(bound.floor().to_integer() as usize)
}

/// Checks that `clique` is a clique of order `s(n−1)` and reports whether
/// every vertex outside it has exactly `2s` neighbours in it.
pub fn check_equality_case(
    g: &Graph,
    clique: &[usize],
    params: ExtensionParams,
) -> Result<bool, StructureError> {
    for &x in clique {
        g.check_vertex(x)?;
    }
    let mut mask = vec![0u64; g.row_words()];
    for (i, &x) in clique.iter().enumerate() {
        if bits::get(&mask, x) {
            return Err(StructureError::InvalidParameter("clique lists a vertex twice"));
        }
        if let Some(&y) = clique[..i].iter().find(|&&y| !g.has_edge(x, y)) {
            return Err(StructureError::NotAClique(y, x));
        }
        bits::set(&mut mask, x);
    }
    let expected = params.line_order();
    if clique.len() != expected {
        return Err(StructureError::WrongCliqueOrder {
            expected,
            actual: clique.len(),
        });
    }
    let want = 2 * params.s();
    Ok((0..g.order())
        .filter(|&y| !bits::get(&mask, y))
        .all(|y| bits::count_and(g.row(y), &mask) == want))
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl CliqueSearch<'_> {
    /// Greedy colouring of the candidate set; vertices come out in colour
    /// order together with the number of colours used so far, which bounds
    /// the clique that can still be found among them.
    fn colour(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut uncoloured = cand.to_vec();
        let mut order = Vec::new();
        let mut colour = 0;
        while !bits::is_empty(&uncoloured) {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = bits::Ones::new(&q).next() {
                bits::clear(&mut uncoloured, v);
                bits::clear(&mut q, v);
                for (w, r) in q.iter_mut().zip(self.g.row(v)) {
                    *w &= !r;
                }
                order.push((v, colour));
            }
        }
        order
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        let order = self.colour(&cand);
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            if bits::is_empty(&next) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            bits::clear(&mut cand, v);
        }
    }
}

/// A maximum clique, found by colouring-bounded branch and bound. Returned
/// sorted. Exponential in the worst case; intended for small graphs.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let mut all = vec![0u64; g.row_words()];
    for v in 0..g.order() {
        bits::set(&mut all, v);
    }
    let mut search = CliqueSearch {
        g,
        current: Vec::new(),
        best: Vec::new(),
    };
    search.expand(all);
    let mut best = search.best;
    best.sort_unstable();
    best
}

/// A maximum coclique, as a maximum clique of the complement.
pub fn max_coclique(g: &Graph) -> Vec<usize> {
    max_clique(&complement(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn exhaustive_clique_number(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|&mask| {
                let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                vs.iter()
                    .enumerate()
                    .all(|(i, &x)| vs[..i].iter().all(|&y| g.has_edge(x, y)))
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn petersen_meets_hoffman() {
        let g = make_petersen();
        assert_eq!(hoffman_coclique_bound(&g).unwrap(), Bound::Exact(Ratio::from_integer(4)));
        assert_eq!(max_coclique(&g).len(), 4);
    }

    #[test]
    fn complete_and_triangular_bounds() {
        let k6 = make_complete(6).unwrap();
        assert_eq!(hoffman_coclique_bound(&k6).unwrap(), Bound::Exact(Ratio::from_integer(1)));
        let t5 = make_triangular(5).unwrap();
        let b = hoffman_coclique_bound(&t5).unwrap();
        assert_eq!(b, Bound::Exact(Ratio::new(5, 2)));
        assert_eq!(b.floor(), 2);
        assert_eq!(max_coclique(&t5).len(), 2);
    }

    #[test]
    fn hoffman_rejects() {
        assert_eq!(
            hoffman_coclique_bound(&make_path(3).unwrap()),
            Err(StructureError::NotRegular)
        );
        assert_eq!(
            hoffman_coclique_bound(&Graph::empty(3).unwrap()),
            Err(StructureError::Edgeless)
        );
    }

    #[test]
    fn pentagon_bound_is_irrational() {
        let b = hoffman_coclique_bound(&make_cycle(5).unwrap()).unwrap();
        // 5·φ'/(2 + φ') with φ' = (1 + √5)/2
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        assert!(matches!(b, Bound::Approx(_)));
        assert!((b.as_f64() - 5.0 * phi / (2.0 + phi)).abs() < 1e-9);
        assert_eq!(b.floor(), 2);
    }

    #[test]
    fn clique_bounds_for_extensions() {
        assert_eq!(clique_order_bound(ExtensionParams::new(2, 5).unwrap()).unwrap(), 8);
        assert_eq!(clique_order_bound(ExtensionParams::new(3, 7).unwrap()).unwrap(), 18);
        for s in 2..=3 {
            for n in 5..=8 {
                let p = ExtensionParams::new(s, n).unwrap();
                let g = clique_extension(&make_triangular(n).unwrap(), s).unwrap();
                assert_eq!(max_clique(&g).len(), clique_order_bound(p).unwrap());
            }
        }
    }

    #[test]
    fn line_is_an_equality_case() {
        let p = ExtensionParams::new(2, 5).unwrap();
        let g = clique_extension(&make_triangular(5).unwrap(), 2).unwrap();
        // pairs containing element 0 are the first four labels
        let line: Vec<usize> = (0..4).flat_map(|x| [2 * x, 2 * x + 1]).collect();
        for y in (0..g.order()).filter(|y| !line.contains(y)) {
            assert_eq!(line.iter().filter(|&&x| g.has_edge(x, y)).count(), 4);
        }
        assert!(check_equality_case(&g, &line, p).unwrap());
        assert_eq!(
            check_equality_case(&g, &line[..6], p),
            Err(StructureError::WrongCliqueOrder { expected: 8, actual: 6 })
        );
        let bad = [0, 1, 2, 3, 4, 5, 6, 19];
        assert!(matches!(check_equality_case(&g, &bad, p), Err(StructureError::NotAClique(_, _))));
    }

    #[test]
    fn branch_and_bound_matches_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=12);
            let p: f64 = rng.gen_range(0.1..0.9);
            let g = Graph::from_fn(n, |_, _| rng.gen_bool(p)).unwrap();
            let c = max_clique(&g);
            assert_eq!(c.len(), exhaustive_clique_number(&g));
            assert!(c.iter().enumerate().all(|(i, &x)| c[..i].iter().all(|&y| g.has_edge(x, y))));
            if g.regular_valency().is_some_and(|k| k > 0) {
                let alpha = max_coclique(&g).len() as i64;
                assert!(alpha <= hoffman_coclique_bound(&g).unwrap().floor());
            }
        }
    }
}
