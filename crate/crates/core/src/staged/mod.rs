//! Infinite Puiseux monoids presented as nested stages `A₁ ⊂ A₂ ⊂ …`.
//!
//! Three constructions are provided:
//!
//! * [`elementary_monoid`]: stage `n` adds the atom `1/pₙ`.
//! * [`build_full_ssl`]: stage `ℓ` adds a scaled copy of a numerical monoid
//!   realizing the `ℓ`-th finite subset of `Z≥2` (see [`subset_enumeration`])
//!   together with the witness `x_ℓ` whose set of lengths is that subset.
//! * [`build_non_two`]: starts from `{1, 2/3}` and, at each stage, adds
//!   `(a + b)/p` for every pair of existing atoms, each with its own fresh
//!   odd prime. No element then has `{2}` as its set of lengths.
//!
//! Stages are materialized on demand with [`StagedMonoid::extend_to`]; all
//! queries are answered over the finitely generated truncation through a
//! given stage.

mod audit;
mod full_ssl;
mod non_two;
mod pool;
mod witness;

use serde::{Deserialize, Serialize};

use crate::puiseux::{AtomStream, InfimumBound};
use crate::solver::{self, Strategy};
use crate::{Error, FGPuiseux, LengthSet, Limits, Rational, Result, SearchBounds};

pub use audit::{AuditCheck, AuditReport};
pub use non_two::{non_two_stage_size, LongerFactorization, PairRecord};
pub use pool::PrimePool;
pub use witness::{witness_length_two, witness_length_two_from, WitnessTwo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StagedKind {
    Elementary,
    FullSsl,
    NonTwo,
}

/// An element together with the set of lengths it is built to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub x: Rational,
    pub target: LengthSet,
}

/// The atoms joining at one stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    /// 1-based.
    pub index: usize,
    pub atoms: Vec<Rational>,
    /// Primes introduced at this stage.
    pub primes: Vec<u64>,
    pub witness: Option<Witness>,
}

/// A lazily materialized staged monoid.
#[derive(Clone, Debug)]
pub struct StagedMonoid {
    kind: StagedKind,
    stages: Vec<Stage>,
    pool: PrimePool,
    bounds: SearchBounds,
    limits: Limits,
    pairs: Vec<PairRecord>,
}

/// The `n`-th nonempty finite subset of `Z≥2`: bit `i` of `n` puts `i + 2`
/// in the set.
///
/// ```
/// use puiseux::staged::subset_enumeration;
/// assert_eq!(subset_enumeration(1)?.as_slice(), &[2]);
/// assert_eq!(subset_enumeration(2)?.as_slice(), &[3]);
/// assert_eq!(subset_enumeration(3)?.as_slice(), &[2, 3]);
/// assert_eq!(subset_enumeration(12)?.as_slice(), &[4, 5]);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn subset_enumeration(n: usize) -> Result<LengthSet> {
    if n == 0 {
        return Err(Error::domain("subsets are numbered from 1"));
    }
    Ok((0..usize::BITS as u64)
        .filter(|&i| (n >> i) & 1 == 1)
        .map(|i| i + 2)
        .collect())
}

/// `⟨1/p : p prime⟩`, with no stages materialized yet.
pub fn elementary_monoid() -> StagedMonoid {
    StagedMonoid::empty(StagedKind::Elementary, PrimePool::All, SearchBounds::default(), Limits::default())
}

/// A monoid whose system of sets of lengths contains every finite subset of
/// `Z≥2`, materialized through `n_stages`.
///
/// ```
/// use puiseux::{staged::build_full_ssl, Limits, PrimePool, Rational, SearchBounds};
/// let m = build_full_ssl(PrimePool::All, 1, SearchBounds::default(), Limits::default())?;
/// let s = &m.stages()[0];
/// assert_eq!(s.atoms, vec!["4/5".parse::<Rational>()?]);
/// assert_eq!(s.witness.as_ref().unwrap().x, "8/5".parse()?);
/// assert_eq!(m.truncated_length_set(&"8/5".parse()?, 1)?.as_slice(), &[2]);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn build_full_ssl(
    pool: PrimePool,
    n_stages: usize,
    bounds: SearchBounds,
    limits: Limits,
) -> Result<StagedMonoid> {
    let mut m = StagedMonoid::empty(StagedKind::FullSsl, pool, bounds, limits);
    m.extend_to(n_stages)?;
    Ok(m)
}

/// A monoid with no element whose set of lengths is `{2}`, materialized
/// through `n_stages ≥ 2`.
///
/// ```
/// use puiseux::{staged::build_non_two, Limits, Rational};
/// let m = build_non_two(3, Limits::default())?;
/// let added: Vec<String> = m.stages()[2].atoms.iter().map(|a| a.to_string()).collect();
/// assert_eq!(added, ["2/5", "5/21", "4/33"]);
/// assert_eq!(m.stages()[2].primes, vec![5, 7, 11]);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn build_non_two(n_stages: usize, limits: Limits) -> Result<StagedMonoid> {
    if n_stages < 2 {
        return Err(Error::domain("the construction starts from two seed stages"));
    }
    let mut m = StagedMonoid::empty(StagedKind::NonTwo, PrimePool::All, SearchBounds::default(), limits);
    m.extend_to(n_stages)?;
    Ok(m)
}

impl StagedMonoid {
    fn empty(kind: StagedKind, pool: PrimePool, bounds: SearchBounds, limits: Limits) -> Self {
        StagedMonoid {
            kind,
            stages: Vec::new(),
            pool,
            bounds,
            limits,
            pairs: Vec::new(),
        }
    }

    pub fn kind(&self) -> StagedKind {
        self.kind
    }

    pub fn pool(&self) -> &PrimePool {
        &self.pool
    }

    pub fn bounds(&self) -> &SearchBounds {
        &self.bounds
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Number of materialized stages.
    pub fn materialized(&self) -> usize {
        self.stages.len()
    }

    /// Materialize stages `1..=n`. Already materialized stages are kept.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.stages.len() < n {
            let index = self.stages.len() + 1;
            let stage = match self.kind {
                StagedKind::Elementary => {
                    let p = crate::arith::nth_prime(index).expect("index ≥ 1");
                    Stage {
                        index,
                        atoms: vec![Rational::new(1u64, p)?],
                        primes: vec![p],
                        witness: None,
                    }
                }
                StagedKind::FullSsl => full_ssl::next_stage(self, index).map_err(|e| match e {
                    Error::AtStage { .. } => e,
                    e => e.at_stage(index),
                })?,
                StagedKind::NonTwo => {
                    let (stage, pairs) = non_two::next_stage(self, index)?;
                    self.pairs.extend(pairs);
                    stage
                }
            };
            self.stages.push(stage);
        }
        Ok(())
    }

    fn require(&self, t: usize) -> Result<()> {
        if t == 0 {
            return Err(Error::domain("stages are numbered from 1"));
        }
        if t > self.stages.len() {
            return Err(Error::StageNotMaterialized {
                required: t,
                available: self.stages.len(),
            });
        }
        Ok(())
    }

    /// `A_t`: all atoms through stage `t`, in the order they were added.
    pub fn cumulative_atoms(&self, t: usize) -> Result<Vec<Rational>> {
        self.require(t)?;
        Ok(self.stages[..t]
            .iter()
            .flat_map(|s| s.atoms.iter().cloned())
            .collect())
    }

    /// `M_t = ⟨A_t⟩` as a finitely generated monoid.
    pub fn truncation(&self, t: usize) -> Result<FGPuiseux> {
        FGPuiseux::normalize(&self.cumulative_atoms(t)?, &self.limits)
    }

    /// `L(x)` computed in the truncation `M_t`. A subset of the set of
    /// lengths in the full monoid, growing with `t`.
    pub fn truncated_length_set(&self, x: &Rational, t: usize) -> Result<LengthSet> {
        self.truncated_length_set_with(x, t, Strategy::Auto)
    }

    pub fn truncated_length_set_with(&self, x: &Rational, t: usize, strategy: Strategy) -> Result<LengthSet> {
        let atoms = self.cumulative_atoms(t)?;
        solver::length_set(&atoms, x, strategy, &self.limits)
    }

    /// Pair bookkeeping of the non-two construction, in creation order.
    pub fn pairs(&self) -> &[PairRecord] {
        &self.pairs
    }

    /// Run every invariant check that applies to this construction.
    pub fn audit(&self) -> Result<AuditReport> {
        audit::audit(self)
    }
}

impl AtomStream for StagedMonoid {
    fn first_atoms(&mut self, count: usize) -> Result<Vec<Rational>> {
        let mut atoms = Vec::new();
        let mut t = 0;
        while atoms.len() < count {
            t += 1;
            if self.kind == StagedKind::NonTwo && t > 4 && t > self.stages.len() {
                // Stage 5 alone has 210 new atoms; do not grow past what exists.
                break;
            }
            self.extend_to(t)?;
            atoms.extend(self.stages[t - 1].atoms.iter().cloned());
        }
        atoms.truncate(count);
        Ok(atoms)
    }

    /// Full-SSL atoms increase from stage to stage, so the smallest atom of
    /// the first stage bounds everything; elementary atoms tend to 0; the
    /// non-two construction declares nothing.
    fn declared_infimum(&self) -> InfimumBound {
        match self.kind {
            StagedKind::Elementary => InfimumBound::Zero,
            StagedKind::FullSsl => match self.stages.first() {
                Some(s) => InfimumBound::Positive(s.atoms.iter().min().expect("nonempty stage").clone()),
                None => InfimumBound::Unknown,
            },
            StagedKind::NonTwo => InfimumBound::Unknown,
        }
    }
}
