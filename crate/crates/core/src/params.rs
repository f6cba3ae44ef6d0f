use crate::graph::GraphError;

/// The pair `(s, n)` describing the `s`-clique extension of `T(n)`.
///
/// Valency and `μ` are always derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtensionParams {
    s: usize,
    n: usize,
}

impl ExtensionParams {
    pub fn new(s: usize, n: usize) -> Result<Self, GraphError> {
        if s < 1 {
            return Err(GraphError::InvalidParameter("clique size s must be at least 1"));
        }
        if n < 2 {
            return Err(GraphError::InvalidParameter("triangular parameter n must be at least 2"));
        }
        Ok(ExtensionParams { s, n })
    }

    #[inline]
    pub fn s(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `k = s(2n − 3) − 1`.
    pub fn valency(&self) -> usize {
        self.s * (2 * self.n - 3) - 1
    }

    /// `μ = 4s`.
    pub fn mu(&self) -> usize {
        4 * self.s
    }

    /// `s · C(n, 2)`.
    pub fn order(&self) -> usize {
        self.s * self.n * (self.n - 1) / 2
    }

    /// Order of a full line, `s(n − 1)`.
    pub fn line_order(&self) -> usize {
        self.s * (self.n - 1)
    }

    /// True when `4c > 3s(n − 1)`, i.e. a clique of order `c` is large enough
    /// to be a line.
    pub fn exceeds_line_threshold(&self, c: usize) -> bool {
        4 * c > 3 * self.s * (self.n - 1)
    }

    /// Whether `n ≥ 48s`, the range in which uniqueness is guaranteed.
    pub fn in_theorem_regime(&self) -> bool {
        self.n >= 48 * self.s
    }

    /// Inverts `order = s·C(n,2)` and `valency = s(2n−3) − 1`. Unique for
    /// `n ≥ 4`; below that complete graphs admit several readings and the
    /// smallest `s` is returned.
    pub fn from_order_and_valency(order: usize, valency: usize) -> Option<Self> {
        let k1 = valency + 1;
        (1..=k1).filter(|s| k1.is_multiple_of(*s)).find_map(|s| {
            let t = k1 / s + 3;
            if !t.is_multiple_of(2) {
                return None;
            }
            let n = t / 2;
            let p = ExtensionParams::new(s, n).ok()?;
            (n >= 2 && p.order() == order).then_some(p)
        })
    }
}
