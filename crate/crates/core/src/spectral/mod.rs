//! Spectra: numeric discovery, exact certification and closed forms.

mod eigen;
mod exact;
mod spectrum;

use alloc::vec::Vec;

use thiserror::Error;

pub use eigen::symmetric_eigenvalues;
pub use exact::{
    certify_integer_spectrum, check_four_eigenvalue_identity, eigenspace_dimension, integer_rank,
    is_walk_regular, verify_integer_spectrum, Certification,
};
pub(crate) use exact::RowStreamer;
pub use spectrum::{Eigenvalue, Spectrum};

use crate::graph::Graph;

/// Absolute tolerance for merging numeric eigenvalues. The spectra handled
/// here have integer gaps, so this leaves a wide margin.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("eigensolver did not converge (stalled at index {index})")]
    NoConvergence { index: usize },
    #[error("candidate multiplicities sum to {total}, graph has order {order}")]
    MultiplicityMismatch { total: usize, order: usize },
    #[error("candidate value {0} has zero multiplicity")]
    ZeroMultiplicity(i64),
    #[error("candidate values are not distinct")]
    DuplicateValue,
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not connected")]
    NotConnected,
    #[error("largest value {largest} differs from the valency {valency}")]
    ValencyMismatch { valency: usize, largest: i64 },
    #[error("graph has {found} distinct eigenvalues, expected four")]
    NotFourDistinct { found: usize },
    #[error("right-hand scalar Π(k − θ_i) is negative")]
    NegativeScalar,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Numeric spectrum of the adjacency matrix, clustered with `cluster_tol`.
pub fn spectrum(g: &Graph, cluster_tol: f64) -> Result<Spectrum, SpectralError> {
    let n = g.order();
    let mut a = alloc::vec![0.0; n * n];
    for (x, y) in g.edges() {
        a[x * n + y] = 1.0;
        a[y * n + x] = 1.0;
    }
    let values = symmetric_eigenvalues(a, n)?;
    Ok(Spectrum::cluster(&values, cluster_tol))
}

/// Numeric spectrum in which every near-integer cluster whose multiplicity is
/// confirmed by an exact kernel dimension is replaced by the exact integer.
///
/// The kernel computation is cubic in the order with big integers, so this is
/// meant for small graphs (tests, bounds, interlacing).
pub fn certified_spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    let numeric = spectrum(g, DEFAULT_CLUSTER_TOL)?;
    let entries = numeric
        .entries()
        .iter()
        .map(|&(v, m)| match v.nearest_integer(DEFAULT_CLUSTER_TOL) {
            Some(r) if eigenspace_dimension(g, r) == m => (Eigenvalue::Exact(r), m),
            _ => (v, m),
        })
        .collect();
    Ok(Spectrum::from_entries_unchecked(entries))
}

/// Spectrum of the `s`-clique extension of a graph on `base_order` vertices
/// with spectrum `spec`: each `θ` becomes `s(θ + 1) − 1`, and `−1` gains
/// multiplicity `(s − 1)·base_order`.
pub fn extension_spectrum_map(spec: &Spectrum, s: usize, base_order: usize) -> Spectrum {
    let s_i = s as i64;
    let mut entries: Vec<(Eigenvalue, usize)> = spec
        .entries()
        .iter()
        .map(|&(v, m)| {
            let mapped = match v {
                Eigenvalue::Exact(t) => Eigenvalue::Exact(s_i * (t + 1) - 1),
                Eigenvalue::Approx(t) => Eigenvalue::Approx(s as f64 * (t + 1.0) - 1.0),
            };
            (mapped, m)
        })
        .collect();
    let extra = (s - 1) * base_order;
    if extra > 0 {
        let existing = entries.iter_mut().find(|(v, _)| match *v {
            Eigenvalue::Exact(t) => t == -1,
            Eigenvalue::Approx(t) => (t + 1.0).abs() <= DEFAULT_CLUSTER_TOL,
        });
        match existing {
            Some((_, m)) => *m += extra,
            None => entries.push((Eigenvalue::Exact(-1), extra)),
        }
    }
    Spectrum::from_entries_unchecked(entries)
}

/// Exact spectrum of the `s`-clique extension of `T(n)`:
/// `{(s(2n−3)−1)^1, (s(n−3)−1)^{n−1}, (−s−1)^{(n²−3n)/2}, (−1)^{(s−1)n(n−1)/2}}`.
pub fn target_spectrum(s: usize, n: usize) -> Result<Spectrum, SpectralError> {
    if s < 2 {
        return Err(SpectralError::InvalidParameter("target spectrum needs s >= 2"));
    }
    if n < 4 {
        return Err(SpectralError::InvalidParameter(
            "target spectrum needs n >= 4 for four distinct eigenvalues",
        ));
    }
    let (si, ni) = (s as i64, n as i64);
    Spectrum::from_exact(&[
        (si * (2 * ni - 3) - 1, 1),
        (si * (ni - 3) - 1, n - 1),
        (-si - 1, (n * n - 3 * n) / 2),
        (-1, (s - 1) * n * (n - 1) / 2),
    ])
}

/// Same order and clustered spectra agreeing value-by-value within `tol`
/// with identical multiplicities.
pub fn cospectral(g: &Graph, h: &Graph, tol: f64) -> Result<bool, SpectralError> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let a = spectrum(g, DEFAULT_CLUSTER_TOL)?;
    let b = spectrum(h, DEFAULT_CLUSTER_TOL)?;
    Ok(a.approx_eq(&b, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn exact(g: &Graph) -> Vec<(i64, usize)> {
        spectrum(g, DEFAULT_CLUSTER_TOL)
            .unwrap()
            .rounded(1e-6)
            .unwrap()
            .to_exact()
            .unwrap()
    }

    #[test]
    fn numeric_spectra_of_known_graphs() {
        assert_eq!(exact(&make_complete(4).unwrap()), [(3, 1), (-1, 3)]);
        assert_eq!(exact(&make_triangular(5).unwrap()), [(6, 1), (1, 4), (-2, 5)]);
        let d = clique_extension(&make_triangular(5).unwrap(), 2).unwrap();
        assert_eq!(exact(&d), [(13, 1), (3, 4), (-1, 10), (-3, 5)]);
    }

    #[test]
    fn integer_verification() {
        let k4 = make_complete(4).unwrap();
        assert!(verify_integer_spectrum(&k4, &[(3, 1), (-1, 3)]).unwrap());
        let t5 = make_triangular(5).unwrap();
        assert!(verify_integer_spectrum(&t5, &[(6, 1), (1, 4), (-2, 5)]).unwrap());
        // trace would be 6 + 5 - 8 = 3
        assert!(!verify_integer_spectrum(&t5, &[(6, 1), (1, 5), (-2, 4)]).unwrap());
        assert!(matches!(
            certify_integer_spectrum(&t5, &[(6, 1), (1, 5), (-2, 4)]).unwrap(),
            Certification::PowerSumMismatch { power: 1, .. }
        ));
        assert_eq!(
            verify_integer_spectrum(&k4, &[(3, 1), (-1, 2)]),
            Err(SpectralError::MultiplicityMismatch { total: 3, order: 4 })
        );
        assert_eq!(
            verify_integer_spectrum(&k4, &[(3, 2), (3, 2)]),
            Err(SpectralError::DuplicateValue)
        );
    }

    #[test]
    fn annihilation_catches_matching_power_sums() {
        let c6 = make_cycle(6).unwrap();
        assert!(verify_integer_spectrum(&c6, &[(2, 1), (1, 2), (-1, 2), (-2, 1)]).unwrap());
        // tr(A^2) of C_6 is 12, not 8
        assert!(!verify_integer_spectrum(&c6, &[(2, 1), (0, 4), (-2, 1)]).unwrap());
        // two triangles' spectrum {2^2, (-1)^4}: matches tr(A^0) and tr(A^1)
        // of C_6, so only annihilation can reject it
        let cert = certify_integer_spectrum(&c6, &[(2, 2), (-1, 4)]).unwrap();
        assert!(matches!(cert, Certification::NotAnnihilated { .. }), "{cert:?}");
    }

    #[test]
    fn extension_map() {
        let t5 = Spectrum::from_exact(&[(6, 1), (1, 4), (-2, 5)]).unwrap();
        assert_eq!(extension_spectrum_map(&t5, 1, 10), t5);
        assert_eq!(
            extension_spectrum_map(&t5, 2, 10),
            target_spectrum(2, 5).unwrap()
        );
        let k2 = Spectrum::from_exact(&[(1, 1), (-1, 1)]).unwrap();
        assert_eq!(
            extension_spectrum_map(&k2, 3, 2).to_exact().unwrap(),
            [(5, 1), (-1, 5)]
        );
    }

    #[test]
    fn target_spectra() {
        assert_eq!(
            target_spectrum(2, 5).unwrap().to_exact().unwrap(),
            [(13, 1), (3, 4), (-1, 10), (-3, 5)]
        );
        assert_eq!(
            target_spectrum(3, 7).unwrap().to_exact().unwrap(),
            [(32, 1), (11, 6), (-1, 42), (-4, 14)]
        );
        assert_eq!(target_spectrum(2, 5).unwrap().order(), 20);
        assert!(target_spectrum(2, 3).is_err());
        assert!(target_spectrum(1, 6).is_err());
    }

    #[test]
    fn cospectrality() {
        let t5 = make_triangular(5).unwrap();
        assert!(cospectral(&t5, &t5, 1e-6).unwrap());
        assert!(!cospectral(&t5, &make_petersen(), 1e-6).unwrap());
        // the 4x4 rook's graph and the Shrikhande graph share {6, 2^6, -2^9}
        let grid = make_grid(4, 4).unwrap();
        let shrikhande = shrikhande();
        let spec = [(6, 1), (2, 6), (-2, 9)];
        assert!(verify_integer_spectrum(&grid, &spec).unwrap());
        assert!(verify_integer_spectrum(&shrikhande, &spec).unwrap());
        assert!(cospectral(&grid, &shrikhande, 1e-6).unwrap());
        assert_ne!(grid, shrikhande);
    }

    /// Cayley graph on Z4 x Z4 with connection set ±(1,0), ±(0,1), ±(1,1).
    fn shrikhande() -> Graph {
        Graph::from_fn(16, |u, v| {
            let (a, b) = ((u / 4) as i32, (u % 4) as i32);
            let (c, d) = ((v / 4) as i32, (v % 4) as i32);
            let (dx, dy) = ((a - c).rem_euclid(4), (b - d).rem_euclid(4));
            matches!((dx, dy), (1, 0) | (3, 0) | (0, 1) | (0, 3) | (1, 1) | (3, 3))
        })
        .unwrap()
    }

    #[test]
    fn four_eigenvalue_identity() {
        let d25 = clique_extension(&make_triangular(5).unwrap(), 2).unwrap();
        assert!(check_four_eigenvalue_identity(&d25, [13, 3, -3, -1]).unwrap());
        assert!(!check_four_eigenvalue_identity(&d25, [13, 3, -4, -1]).unwrap());
        let d36 = clique_extension(&make_triangular(6).unwrap(), 3).unwrap();
        let t = target_spectrum(3, 6).unwrap().to_exact().unwrap();
        assert!(check_four_eigenvalue_identity(&d36, [t[0].0, t[1].0, t[2].0, t[3].0]).unwrap());
        assert_eq!(
            check_four_eigenvalue_identity(&make_complete(5).unwrap(), [4, 1, 0, -1]),
            Err(SpectralError::NotFourDistinct { found: 2 })
        );
        assert_eq!(
            check_four_eigenvalue_identity(&make_path(3).unwrap(), [2, 1, 0, -1]),
            Err(SpectralError::NotRegular)
        );
    }

    #[test]
    fn walk_regularity() {
        for g in [
            make_complete(5).unwrap(),
            make_triangular(6).unwrap(),
            make_grid(3, 4).unwrap(),
            make_petersen(),
        ] {
            assert!(is_walk_regular(&g, 6));
        }
        assert!(!is_walk_regular(&make_path(3).unwrap(), 2));
        let d25 = clique_extension(&make_triangular(5).unwrap(), 2).unwrap();
        assert!(is_walk_regular(&d25, 6));
        // 3-regular but not walk-regular: K_4 beside K_{3,3}
        let mixed = Graph::from_edges(
            10,
            [
                // K_4 (every vertex on triangles)
                (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                // K_{3,3} (triangle-free)
                (4, 7), (4, 8), (4, 9), (5, 7), (5, 8), (5, 9), (6, 7), (6, 8), (6, 9),
            ],
        )
        .unwrap();
        assert!(!is_walk_regular(&mixed, 3));
        assert!(is_walk_regular(&mixed, 2));
    }

    #[test]
    fn certified_spectrum_snaps_integers() {
        let s = certified_spectrum(&make_petersen()).unwrap();
        assert_eq!(s.to_exact().unwrap(), [(3, 1), (1, 5), (-2, 4)]);
        // P_3 has ±√2 which stay numeric
        let p3 = certified_spectrum(&make_path(3).unwrap()).unwrap();
        assert!(!p3.is_exact());
        assert_eq!(p3.entries()[1].0, Eigenvalue::Exact(0));
    }

    #[test]
    fn integer_rank_examples() {
        use num_bigint::BigInt;
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
        };
        assert_eq!(integer_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(integer_rank(m(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]])), 2);
        assert_eq!(integer_rank(m(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), 3);
        assert_eq!(integer_rank(m(&[&[0, 0], &[0, 0]])), 0);
    }
}
