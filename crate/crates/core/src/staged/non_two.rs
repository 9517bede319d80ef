use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::{Stage, StagedKind, StagedMonoid};
use crate::arith::next_prime_satisfying;
use crate::puiseux::denominator_primes;
use crate::{Error, FGPuiseux, FactorizationVector, Rational, Result};

/// One pair `(left, right)` of existing atoms and the atom
/// `(a_left + a_right)/prime` it produced. Indices are 0-based positions in
/// the cumulative atom list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub stage: usize,
    pub left: usize,
    pub right: usize,
    pub prime: u64,
    pub atom: usize,
}

/// `x = a_i + a_j` written as `p` copies of one atom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongerFactorization {
    pub x: Rational,
    pub stage: usize,
    pub atom_index: usize,
    pub atom: Rational,
    pub length: u64,
    /// Over the cumulative atoms through `stage`.
    pub factorization: FactorizationVector,
}

/// `k_n`, the number of atoms through stage `n`: `1, 2, 5, 20, 230, …`.
/// `None` once it overflows.
pub fn non_two_stage_size(n: usize) -> Option<u64> {
    match n {
        0 => Some(0),
        1 => Some(1),
        _ => {
            let mut k: u64 = 2;
            for _ in 2..n {
                let pairs = k.checked_mul(k.checked_add(1)?)? / 2;
                k = k.checked_add(pairs)?;
            }
            Some(k)
        }
    }
}

pub(super) fn next_stage(m: &StagedMonoid, index: usize) -> Result<(Stage, Vec<PairRecord>)> {
    match index {
        1 => {
            return Ok((
                Stage {
                    index,
                    atoms: vec![Rational::one()],
                    primes: vec![],
                    witness: None,
                },
                vec![],
            ))
        }
        2 => {
            return Ok((
                Stage {
                    index,
                    atoms: vec![Rational::new(2u64, 3u64)?],
                    primes: vec![3],
                    witness: None,
                },
                vec![],
            ))
        }
        _ => {}
    }
    let current = m.cumulative_atoms(index - 1)?;
    let dp = denominator_primes(&current)?;
    let k = current.len();
    let mut batch: Vec<u64> = Vec::new();
    let mut atoms = Vec::new();
    let mut pairs = Vec::new();
    for s in 0..k {
        for t in s..k {
            let sum = &current[s] + &current[t];
            let p = next_prime_satisfying(3, m.limits.prime_search_cap, |p| {
                p != 2
                    && !dp.contains(p)
                    && !(sum.numer() % BigUint::from(p)).is_zero()
                    && !batch.contains(&p)
            })
            .map_err(|e| e.at_stage(index))?;
            batch.push(p);
            pairs.push(PairRecord {
                stage: index,
                left: s,
                right: t,
                prime: p,
                atom: k + atoms.len(),
            });
            atoms.push(sum / Rational::from(p));
        }
    }
    let stage = Stage {
        index,
        atoms,
        primes: batch,
        witness: None,
    };
    let mut all = current;
    all.extend(stage.atoms.iter().cloned());
    if !is_minimal(&all, &m.limits)? {
        return Err(Error::Internal(format!(
            "cumulative atoms through stage {index} are not a minimal generating set"
        )));
    }
    Ok((stage, pairs))
}

/// Whether `atoms` (any order) is exactly the set of atoms of its span.
pub(super) fn is_minimal(atoms: &[Rational], limits: &crate::Limits) -> Result<bool> {
    let mut sorted = atoms.to_vec();
    sorted.sort();
    let before = sorted.len();
    sorted.dedup();
    if sorted.len() != before {
        return Ok(false);
    }
    Ok(FGPuiseux::normalize(&sorted, limits)?.atoms() == sorted.as_slice())
}

/// Stage at which the pair `(i, j)`, `i ≤ j`, is first processed.
fn first_pair_stage(j: usize) -> Option<usize> {
    let mut n = 2;
    loop {
        if (j as u64) < non_two_stage_size(n)? {
            return Some(n + 1);
        }
        n += 1;
    }
}

impl StagedMonoid {
    /// For the non-two construction: `x = a_i + a_j` (0-based) as `p` copies
    /// of the atom `(a_i + a_j)/p` created for the pair, at the first stage
    /// that processes the pair.
    ///
    /// ```
    /// use puiseux::{staged::build_non_two, Limits};
    /// let m = build_non_two(3, Limits::default())?;
    /// let f = m.longer_factorization(0, 1)?;
    /// assert_eq!((f.x.to_string(), f.atom.to_string(), f.length), ("5/3".into(), "5/21".into(), 7));
    /// # Ok::<(), puiseux::Error>(())
    /// ```
    pub fn longer_factorization(&self, i: usize, j: usize) -> Result<LongerFactorization> {
        self.escalation(i, j)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("pair processed but not recorded".into()))
    }

    /// Every materialized atom created for the pair `(i, j)`, one per stage,
    /// as factorizations of `a_i + a_j`. Lengths strictly increase.
    pub fn escalation(&self, i: usize, j: usize) -> Result<Vec<LongerFactorization>> {
        if self.kind != StagedKind::NonTwo {
            return Err(Error::domain("longer factorizations exist for the non-two construction only"));
        }
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let required = first_pair_stage(j).ok_or_else(|| Error::domain("atom index out of range"))?;
        self.require(required)?;
        let x = &self.stages_atom(i) + &self.stages_atom(j);
        self.pairs
            .iter()
            .filter(|r| r.left == i && r.right == j)
            .map(|r| {
                let width = non_two_stage_size(r.stage).expect("materialized") as usize;
                let mut exps = vec![0u64; width];
                exps[r.atom] = r.prime;
                Ok(LongerFactorization {
                    x: x.clone(),
                    stage: r.stage,
                    atom_index: r.atom,
                    atom: self.stages_atom(r.atom),
                    length: r.prime,
                    factorization: FactorizationVector::new(exps),
                })
            })
            .collect()
    }

    fn stages_atom(&self, idx: usize) -> Rational {
        self.stages
            .iter()
            .flat_map(|s| s.atoms.iter())
            .nth(idx)
            .expect("index checked against materialized stages")
            .clone()
    }
}
