//! Verification outcomes and serializable report records.

use serde::Serialize;

use crate::coeff::Coeff;

/// Outcome of a single identity check: either the residual vanished or a
/// witness explains where it did not.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Verification<W> {
    Holds,
    Fails(W),
}

impl<W> Verification<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verification::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verification::Holds => None,
            Verification::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verification<V> {
        match self {
            Verification::Holds => Verification::Holds,
            Verification::Fails(w) => Verification::Fails(f(w)),
        }
    }
}

/// The lexicographically first violating basis tuple, with the residual
/// expressed over the basis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TupleWitness {
    /// Basis indices `(i, j, k, ...)` of the violating tuple.
    pub tuple: Vec<usize>,
    /// Nonzero residual coordinates as `(basis index, coefficient)`.
    pub residual: Vec<(usize, Coeff)>,
}

impl std::fmt::Display for TupleWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "tuple (")?;
        for (pos, i) in self.tuple.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "T{}", i + 1)?;
        }
        write!(f, "), residual ")?;
        for (pos, (idx, c)) in self.residual.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*T{}", idx + 1)?;
        }
        Ok(())
    }
}

/// One step of a mechanically replayed derivation.
#[derive(Clone, Debug, Serialize)]
pub struct DerivationStep {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A replayed derivation: a titled list of pass/fail steps.
#[derive(Clone, Debug, Serialize)]
pub struct DerivationReport {
    pub title: String,
    pub steps: Vec<DerivationStep>,
}

impl DerivationReport {
    pub fn new(title: impl Into<String>) -> Self {
        DerivationReport { title: title.into(), steps: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.steps.push(DerivationStep { name: name.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }
}
