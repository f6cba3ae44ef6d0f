use alloc::vec::Vec;

use super::StructureError;
use crate::spectral::{Eigenvalue, Spectrum};

/// Slack allowed on the inequalities `θ_i ≥ μ_i ≥ θ_{n−m+i}` when either side
/// is numeric.
pub const INTERLACING_TOL: f64 = 1e-6;

/// Two numeric values closer than this count as equal for tightness.
pub const TIGHTNESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interlacing {
    pub interlaces: bool,
    pub tight: bool,
}

fn at_least(a: Eigenvalue, b: Eigenvalue, tol: f64) -> bool {
    match (a, b) {
        (Eigenvalue::Exact(x), Eigenvalue::Exact(y)) => x >= y,
        _ => a.as_f64() >= b.as_f64() - tol,
    }
}

fn equal(a: Eigenvalue, b: Eigenvalue) -> bool {
    match (a, b) {
        (Eigenvalue::Exact(x), Eigenvalue::Exact(y)) => x == y,
        _ => (a.as_f64() - b.as_f64()).abs() <= TIGHTNESS_TOL,
    }
}

pub fn check_interlacing(big: &Spectrum, small: &Spectrum) -> Result<Interlacing, StructureError> {
    check_interlacing_with(big, small, INTERLACING_TOL)
}

/// Tests `θ_i ≥ μ_i ≥ θ_{n−m+i}` for the expanded descending lists, and
/// tightness: some `j ∈ 1..=m` with `μ_i = θ_i` for `i ≤ j` and
/// `μ_i = θ_{n−m+i}` for `i > j`.
pub fn check_interlacing_with(
    big: &Spectrum,
    small: &Spectrum,
    tol: f64,
) -> Result<Interlacing, StructureError> {
    let theta = big.expanded();
    let mu = small.expanded();
    let (n, m) = (theta.len(), mu.len());
    if m > n {
        return Err(StructureError::TooManyValues { small: m, big: n });
    }
    let interlaces = (0..m).all(|i| at_least(theta[i], mu[i], tol) && at_least(mu[i], theta[n - m + i], tol));
    if !interlaces || m == 0 {
        return Ok(Interlacing { interlaces, tight: false });
    }
    // upper[j]: first j upper equalities hold; lower[j]: equalities i ≥ j on the lower side
    let upper: Vec<bool> = core::iter::once(true)
        .chain((0..m).scan(true, |ok, i| {
            *ok = *ok && equal(theta[i], mu[i]);
            Some(*ok)
        }))
        .collect();
    let mut lower = alloc::vec![true; m + 1];
    for i in (0..m).rev() {
        lower[i] = lower[i + 1] && equal(theta[n - m + i], mu[i]);
    }
    let tight = (1..=m).any(|j| upper[j] && lower[j]);
    Ok(Interlacing { interlaces, tight })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(pairs: &[(i64, usize)]) -> Spectrum {
        Spectrum::from_exact(pairs).unwrap()
    }

    #[test]
    fn bipartite_quotient_is_tight() {
        let r = check_interlacing(&exact(&[(3, 1), (0, 4), (-3, 1)]), &exact(&[(3, 1), (-3, 1)])).unwrap();
        assert_eq!(r, Interlacing { interlaces: true, tight: true });
    }

    #[test]
    fn perron_value_is_tight_at_top() {
        let r = check_interlacing(&exact(&[(2, 1), (0, 2), (-2, 1)]), &exact(&[(2, 1)])).unwrap();
        assert_eq!(r, Interlacing { interlaces: true, tight: true });
    }

    #[test]
    fn interior_value_interlaces_loosely() {
        let r = check_interlacing(&exact(&[(1, 1), (-1, 1)]), &exact(&[(0, 1)])).unwrap();
        assert_eq!(r, Interlacing { interlaces: true, tight: false });
    }

    #[test]
    fn bottom_only_equality_is_not_tight() {
        // j = 0 would be all-lower; the definition needs j ≥ 1
        let r = check_interlacing(&exact(&[(1, 1), (-1, 1)]), &exact(&[(-1, 1)])).unwrap();
        assert_eq!(r, Interlacing { interlaces: true, tight: false });
    }

    #[test]
    fn violations_and_errors() {
        let r = check_interlacing(&exact(&[(1, 1), (-1, 1)]), &exact(&[(2, 1)])).unwrap();
        assert!(!r.interlaces && !r.tight);
        assert_eq!(
            check_interlacing(&exact(&[(1, 1)]), &exact(&[(1, 1), (0, 1)])),
            Err(StructureError::TooManyValues { small: 2, big: 1 })
        );
    }

    #[test]
    fn numeric_tolerances() {
        let big = Spectrum::cluster(&[2.0, 0.0, -2.0], 1e-6);
        let near = Spectrum::cluster(&[2.0 + 1e-7], 1e-6);
        let r = check_interlacing(&big, &near).unwrap();
        assert!(r.interlaces && !r.tight);
        let on = Spectrum::cluster(&[2.0 - 1e-11], 1e-6);
        assert!(check_interlacing(&big, &on).unwrap().tight);
    }
}
