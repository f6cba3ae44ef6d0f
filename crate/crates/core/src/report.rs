//! Witness-carrying failure reports shared by the checkers.

use core::fmt;

/// Where a check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Global,
    Vertex(usize),
    Pair(usize, usize),
}

/// The first counterexample found by an exact check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    /// Short machine name of the identity or condition, e.g. `"cube_diagonal"`.
    pub check: &'static str,
    pub location: Location,
    pub expected: i128,
    pub actual: i128,
}

impl Violation {
    pub fn global(check: &'static str, expected: i128, actual: i128) -> Self {
        Violation {
            check,
            location: Location::Global,
            expected,
            actual,
        }
    }

    pub fn vertex(check: &'static str, x: usize, expected: i128, actual: i128) -> Self {
        Violation {
            check,
            location: Location::Vertex(x),
            expected,
            actual,
        }
    }

    pub fn pair(check: &'static str, x: usize, y: usize, expected: i128, actual: i128) -> Self {
        Violation {
            check,
            location: Location::Pair(x, y),
            expected,
            actual,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.check)?;
        match self.location {
            Location::Global => {}
            Location::Vertex(x) => write!(f, " at vertex {x}")?,
            Location::Pair(x, y) => write!(f, " at pair ({x}, {y})")?,
        }
        write!(f, ": expected {}, found {}", self.expected, self.actual)
    }
}
