use serde::Serialize;

use super::StagedMonoid;
use crate::puiseux::{AtomStream, InfimumBound};
use crate::solver::{self, Strategy};
use crate::{Error, FGPuiseux, LengthSet, Limits, Rational, Result};

/// An element `x` with `L(x) = {2}`, and the computed set as certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTwo {
    pub x: Rational,
    pub lengths: LengthSet,
}

fn certify(x: Rational, lengths: LengthSet) -> Result<WitnessTwo> {
    if lengths.as_slice() != [2] {
        return Err(Error::Internal(format!("L({x}) = {lengths}, expected {{2}}")));
    }
    Ok(WitnessTwo { x, lengths })
}

/// Twice the smallest atom: nothing shorter than 2 atoms sums to it, and
/// any 3 atoms already exceed it.
///
/// ```
/// use puiseux::{staged::witness_length_two, FGPuiseux, Limits, Rational};
/// let lim = Limits::default();
/// let m = FGPuiseux::normalize(&[Rational::from(1), "2/3".parse()?], &lim)?;
/// let w = witness_length_two(&m, &lim)?;
/// assert_eq!(w.x, "4/3".parse()?);
/// assert_eq!(w.lengths.as_slice(), &[2]);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn witness_length_two(m: &FGPuiseux, limits: &Limits) -> Result<WitnessTwo> {
    let x = m.min_atom() * Rational::from(2u64);
    let lengths = m.length_set(&x, limits)?;
    certify(x, lengths)
}

/// Witness for a monoid generated by `atoms` with `inf M• = infimum > 0`.
///
/// If the infimum is itself an atom, `x = 2q`. Otherwise `x = 2a` for the
/// smallest listed atom `a` with `q < a < 3q/2`. Lengths are computed over
/// `atoms`.
pub fn witness_length_two_from(atoms: &[Rational], infimum: &Rational, limits: &Limits) -> Result<WitnessTwo> {
    if infimum.is_zero() {
        return Err(Error::domain("the infimum must be certified positive"));
    }
    let upper = infimum * Rational::new(3u64, 2u64)?;
    let chosen = if atoms.contains(infimum) {
        infimum.clone()
    } else {
        atoms
            .iter()
            .filter(|a| *a > infimum && **a < upper)
            .min()
            .cloned()
            .ok_or_else(|| Error::domain(format!("no listed atom lies strictly between {infimum} and {upper}")))?
    };
    let x = chosen * Rational::from(2u64);
    let lengths = solver::length_set(atoms, &x, Strategy::Auto, limits)?;
    certify(x, lengths)
}

impl StagedMonoid {
    /// Witness over the truncation through stage `t`, using the declared
    /// infimum of the construction.
    pub fn witness_length_two(&self, t: usize) -> Result<WitnessTwo> {
        let atoms = self.cumulative_atoms(t)?;
        match self.declared_infimum() {
            InfimumBound::Positive(q) => witness_length_two_from(&atoms, &q, &self.limits),
            _ => Err(Error::domain("the infimum of this construction is not certified positive")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staged::{build_full_ssl, build_non_two, elementary_monoid};
    use crate::{PrimePool, SearchBounds};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn fg(gens: &[&str]) -> FGPuiseux {
        let g: Vec<Rational> = gens.iter().map(|s| q(s)).collect();
        FGPuiseux::normalize(&g, &Limits::default()).unwrap()
    }

    #[test]
    fn examples() {
        let lim = Limits::default();
        assert_eq!(witness_length_two(&fg(&["2", "3"]), &lim).unwrap().x, q("4"));
        assert_eq!(witness_length_two(&fg(&["1", "2/3"]), &lim).unwrap().x, q("4/3"));
        assert_eq!(witness_length_two(&fg(&["4/5"]), &lim).unwrap().x, q("8/5"));
    }

    #[test]
    fn infimum_not_attained() {
        // Pretend the infimum is 1/2 while only 3/5 and 1 are listed.
        let w = witness_length_two_from(&[q("3/5"), q("1")], &q("1/2"), &Limits::default()).unwrap();
        assert_eq!(w.x, q("6/5"));
    }

    #[test]
    fn staged_witnesses() {
        let m = build_full_ssl(PrimePool::All, 3, SearchBounds::default(), Limits::default()).unwrap();
        assert_eq!(m.witness_length_two(3).unwrap().x, q("8/5"));
        let mut e = elementary_monoid();
        e.extend_to(3).unwrap();
        assert!(matches!(e.witness_length_two(3), Err(Error::Domain(_))));
        let n = build_non_two(2, Limits::default()).unwrap();
        assert!(matches!(n.witness_length_two(2), Err(Error::Domain(_))));
    }
}
