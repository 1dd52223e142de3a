//! Three-valued outcomes for questions that are only semi-decidable.

use std::fmt;

/// Result of evaluating a question at a finite depth.
///
/// `CertifiedNo` is only produced from a finite refutation that holds for
/// every extension of the window. `WitnessYesAtDepth` carries bounded
/// evidence only; it never claims acceptance of an infinite object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    CertifiedNo,
    WitnessYesAtDepth { depth: usize },
    Unknown { depth: usize },
}

/// Verdict category, ordered `CertifiedNo < Unknown < WitnessYes`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    CertifiedNo,
    Unknown,
    WitnessYes,
}

impl Outcome {
    pub fn category(&self) -> Category {
        match self {
            Outcome::CertifiedNo => Category::CertifiedNo,
            Outcome::WitnessYesAtDepth { .. } => Category::WitnessYes,
            Outcome::Unknown { .. } => Category::Unknown,
        }
    }
}

impl Category {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Category::WitnessYes => 0,
            Category::CertifiedNo => 1,
            Category::Unknown => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Category::CertifiedNo => "certified-no",
            Category::Unknown => "unknown",
            Category::WitnessYes => "witness-yes",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::CertifiedNo => write!(f, "certified-no"),
            Outcome::WitnessYesAtDepth { depth } => write!(f, "witness-yes@{depth}"),
            Outcome::Unknown { depth } => write!(f, "unknown@{depth}"),
        }
    }
}

/// An outcome together with the evidence that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedVerdict<E> {
    pub outcome: Outcome,
    pub evidence: E,
    pub notes: Vec<String>,
}

impl<E> BoundedVerdict<E> {
    pub fn category(&self) -> Category {
        self.outcome.category()
    }
}
