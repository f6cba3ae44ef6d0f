use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::SpectralError;

/// A spectrum value: either an exactly known integer or a numeric estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eigenvalue {
    Exact(i64),
    Approx(f64),
}

impl Eigenvalue {
    pub fn as_f64(self) -> f64 {
        match self {
            Eigenvalue::Exact(v) => v as f64,
            Eigenvalue::Approx(v) => v,
        }
    }

    pub fn exact(self) -> Option<i64> {
        match self {
            Eigenvalue::Exact(v) => Some(v),
            Eigenvalue::Approx(_) => None,
        }
    }

    /// The nearest integer when the value lies within `tol` of it.
    pub fn nearest_integer(self, tol: f64) -> Option<i64> {
        match self {
            Eigenvalue::Exact(v) => Some(v),
            Eigenvalue::Approx(v) => {
                let r = libm::round(v);
                ((v - r).abs() <= tol && r.abs() < 9.0e15).then_some(r as i64)
            }
        }
    }

    fn cmp_desc(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Eigenvalue::Exact(a), Eigenvalue::Exact(b)) => b.cmp(a),
            _ => other.as_f64().total_cmp(&self.as_f64()),
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Exact(v) => write!(f, "{v}"),
            Eigenvalue::Approx(v) => write!(f, "{v:.9}"),
        }
    }
}

/// Multiset of eigenvalues as `(value, multiplicity)` pairs, values strictly
/// decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    entries: Vec<(Eigenvalue, usize)>,
}

impl Spectrum {
    /// Exact spectrum from integer pairs in any order.
    pub fn from_exact(pairs: &[(i64, usize)]) -> Result<Self, SpectralError> {
        let mut entries: Vec<(Eigenvalue, usize)> = Vec::with_capacity(pairs.len());
        for &(v, m) in pairs {
            if m == 0 {
                return Err(SpectralError::ZeroMultiplicity(v));
            }
            entries.push((Eigenvalue::Exact(v), m));
        }
        entries.sort_by(|a, b| a.0.cmp_desc(&b.0));
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(SpectralError::DuplicateValue);
        }
        Ok(Spectrum { entries })
    }

    /// Groups sorted numeric eigenvalues: a new cluster starts whenever the
    /// gap to the previous value exceeds `tol`. Each cluster is represented by
    /// its mean.
    pub fn cluster(values: &[f64], tol: f64) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let mut entries = Vec::new();
        let mut start = 0;
        for i in 1..=sorted.len() {
            if i == sorted.len() || sorted[i - 1] - sorted[i] > tol {
                let chunk = &sorted[start..i];
                let mean = chunk.iter().sum::<f64>() / chunk.len() as f64;
                entries.push((Eigenvalue::Approx(mean), chunk.len()));
                start = i;
            }
        }
        Spectrum { entries }
    }

    pub(crate) fn from_entries_unchecked(mut entries: Vec<(Eigenvalue, usize)>) -> Self {
        entries.sort_by(|a, b| a.0.cmp_desc(&b.0));
        Spectrum { entries }
    }

    pub fn entries(&self) -> &[(Eigenvalue, usize)] {
        &self.entries
    }

    pub fn distinct_count(&self) -> usize {
        self.entries.len()
    }

    /// Sum of multiplicities.
    pub fn order(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn largest(&self) -> Option<Eigenvalue> {
        self.entries.first().map(|e| e.0)
    }

    pub fn smallest(&self) -> Option<Eigenvalue> {
        self.entries.last().map(|e| e.0)
    }

    /// All values with multiplicity, descending.
    pub fn expanded(&self) -> Vec<Eigenvalue> {
        self.entries
            .iter()
            .flat_map(|&(v, m)| core::iter::repeat_n(v, m))
            .collect()
    }

    /// `Σ m_i θ_i^r` in floating point.
    pub fn power_sum(&self, r: i32) -> f64 {
        self.entries
            .iter()
            .map(|&(v, m)| m as f64 * libm::pow(v.as_f64(), r as f64))
            .sum()
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.0, Eigenvalue::Exact(_)))
    }

    /// Integer pairs when every value is exact.
    pub fn to_exact(&self) -> Option<Vec<(i64, usize)>> {
        self.entries.iter().map(|&(v, m)| v.exact().map(|v| (v, m))).collect()
    }

    /// Replaces every value within `tol` of an integer by that integer.
    /// Fails if any value is not near-integral. This is a rounding, not a
    /// certificate; see [`super::verify_integer_spectrum`].
    pub fn rounded(&self, tol: f64) -> Option<Spectrum> {
        let mut entries: Vec<(Eigenvalue, usize)> = Vec::with_capacity(self.entries.len());
        for &(v, m) in &self.entries {
            let r = v.nearest_integer(tol)?;
            match entries.last_mut() {
                Some((Eigenvalue::Exact(prev), pm)) if *prev == r => *pm += m,
                _ => entries.push((Eigenvalue::Exact(r), m)),
            }
        }
        Some(Spectrum { entries })
    }

    /// Same distinct count, exact multiplicities, values within `tol`.
    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.1 == b.1 && values_close(a.0, b.0, tol))
    }
}

fn values_close(a: Eigenvalue, b: Eigenvalue, tol: f64) -> bool {
    match (a, b) {
        (Eigenvalue::Exact(x), Eigenvalue::Exact(y)) => x == y,
        _ => (a.as_f64() - b.as_f64()).abs() <= tol,
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}^{m}")?;
        }
        write!(f, "}}")
    }
}
