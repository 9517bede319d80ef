use serde::Serialize;

use crate::{Error, FGPuiseux, Rational, Result};

/// What a stream of atoms declares about the infimum of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfimumBound {
    /// The atoms accumulate at 0.
    Zero,
    /// Every atom is at least this value.
    Positive(Rational),
    /// Nothing is declared.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

/// A possibly infinite sequence of atoms generating a Puiseux monoid.
pub trait AtomStream {
    /// The first `count` atoms in stream order (fewer if the stream is finite).
    fn first_atoms(&mut self, count: usize) -> Result<Vec<Rational>>;

    fn declared_infimum(&self) -> InfimumBound;
}

impl AtomStream for FGPuiseux {
    fn first_atoms(&mut self, count: usize) -> Result<Vec<Rational>> {
        Ok(self.atoms().iter().take(count).cloned().collect())
    }

    fn declared_infimum(&self) -> InfimumBound {
        InfimumBound::Positive(self.min_atom().clone())
    }
}

/// Whether 0 is a limit point of the monoid generated by `stream`.
///
/// Decided from the stream's declared metadata, checked against the first
/// `probe_count` atoms. A positive declared bound contradicted by a probed
/// atom is an internal error; without a declaration the answer is
/// [`TriState::Unknown`].
pub fn has_zero_limit_point(stream: &mut dyn AtomStream, probe_count: usize) -> Result<TriState> {
    if probe_count == 0 {
        return Err(Error::domain("probe_count must be at least 1"));
    }
    let probed = stream.first_atoms(probe_count)?;
    match stream.declared_infimum() {
        InfimumBound::Zero => Ok(TriState::Yes),
        InfimumBound::Positive(q) => {
            if q.is_zero() {
                return Err(Error::Internal("declared positive infimum is 0".into()));
            }
            if let Some(a) = probed.iter().find(|a| **a < q) {
                return Err(Error::Internal(format!(
                    "atom {a} lies below the declared infimum {q}"
                )));
            }
            Ok(TriState::No)
        }
        InfimumBound::Unknown => Ok(TriState::Unknown),
    }
}
