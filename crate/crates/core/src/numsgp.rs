//! Finitely generated submonoids of `(N₀, +)`.
//!
//! Cofiniteness is never assumed: `⟨4, 6⟩` is as valid as `⟨2, 3⟩`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{ones, BitTable, Bits};
use crate::{Error, Limits, Rational, Result};

/// Largest smallest-atom for which membership tables are built.
const RESIDUE_CAP: u64 = 1 << 24;

/// A set of lengths, strictly ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LengthSet(Vec<u64>);

impl LengthSet {
    pub fn new(lengths: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = lengths.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        LengthSet(v)
    }

    pub fn empty() -> Self {
        LengthSet(Vec::new())
    }

    pub(crate) fn from_bits(words: &[u64]) -> Self {
        LengthSet(ones(words).map(|i| i as u64).collect())
    }

    pub(crate) fn from_owned_bits(bits: &Bits) -> Self {
        LengthSet(bits.ones().map(|i| i as u64).collect())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: u64) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &LengthSet) -> bool {
        self.iter().all(|l| other.contains(l))
    }

    /// Elements inside `[lo, hi]`.
    pub fn window(&self, lo: u64, hi: u64) -> LengthSet {
        LengthSet(self.iter().filter(|&l| lo <= l && l <= hi).collect())
    }

    /// `{a + b : a ∈ self, b ∈ other}`.
    pub fn sumset(&self, other: &LengthSet) -> LengthSet {
        LengthSet::new(self.iter().flat_map(|a| other.iter().map(move |b| a + b)))
    }
}

impl fmt::Display for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<u64> for LengthSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        LengthSet::new(iter)
    }
}

/// Exponent vector over an indexed atom list. `|z|` is the coordinate sum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorizationVector(Vec<u64>);

impl FactorizationVector {
    pub fn new(exponents: Vec<u64>) -> Self {
        FactorizationVector(exponents)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn value(&self, atoms: &[u64]) -> u128 {
        self.0
            .iter()
            .zip(atoms)
            .map(|(&c, &a)| c as u128 * a as u128)
            .sum()
    }

    pub fn rational_value(&self, atoms: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(atoms)
            .map(|(&c, a)| a * Rational::from(c))
            .sum()
    }
}

/// A submonoid of `(N₀, +)` given by its minimal generating set.
#[derive(Clone, PartialEq, Eq)]
pub struct IntSubmonoid {
    atoms: Vec<u64>,
    /// `residues[r]` is the least element congruent to `r` modulo the
    /// smallest atom, or `u64::MAX` if that class is empty.
    residues: Vec<u64>,
}

impl fmt::Debug for IntSubmonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntSubmonoid{:?}", self.atoms)
    }
}

impl fmt::Display for IntSubmonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "⟩")
    }
}

fn residue_table(modulus: u64, gens: &[u64]) -> Vec<u64> {
    let m = modulus as usize;
    let mut dist = vec![u64::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in gens {
            let nd = d.saturating_add(g);
            let nr = (r + (g % modulus) as usize) % m;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

impl IntSubmonoid {
    /// Reduces a generating list to the minimal generating set (the atoms).
    ///
    /// Zero generators are rejected. Membership of each candidate in the span
    /// of the smaller atoms is decided with a table of least elements per
    /// residue class modulo the smallest generator.
    pub fn minimalize(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::domain("empty generating set"));
        }
        if gens.contains(&0) {
            return Err(Error::domain("generators must be positive"));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let m = sorted[0];
        if m > RESIDUE_CAP {
            return Err(Error::Resource {
                what: "smallest generator for membership tables",
                cap: RESIDUE_CAP,
            });
        }
        let mut atoms = vec![m];
        let mut residues = residue_table(m, &atoms);
        for &g in &sorted[1..] {
            if residues[(g % m) as usize] > g {
                atoms.push(g);
                residues = residue_table(m, &atoms);
            }
        }
        Ok(IntSubmonoid { atoms, residues })
    }

    pub fn atoms(&self) -> &[u64] {
        &self.atoms
    }

    pub fn is_member(&self, n: u64) -> bool {
        let m = self.atoms[0];
        self.residues[(n % m) as usize] <= n
    }

    /// All factorizations of `n`, in lexicographic order of exponent vectors.
    ///
    /// `Z(0)` is the zero vector alone; a non-member has no factorizations.
    pub fn factorizations(&self, n: u64, limits: &Limits) -> Result<Vec<FactorizationVector>> {
        let k = self.atoms.len();
        if !self.is_member(n) {
            return Ok(Vec::new());
        }
        let cells = (k as u128 + 1) * (n as u128 + 1);
        if cells > limits.table_cap as u128 {
            return Err(Error::Resource {
                what: "factorization reachability table",
                cap: limits.table_cap,
            });
        }
        let width = n as usize + 1;
        // reach[i * width + v]: v is a combination of atoms[i..].
        let mut reach = vec![false; (k + 1) * width];
        reach[k * width] = true;
        for i in (0..k).rev() {
            let a = self.atoms[i] as usize;
            for v in 0..width {
                reach[i * width + v] =
                    reach[(i + 1) * width + v] || (v >= a && reach[i * width + v - a]);
            }
        }
        let mut out = Vec::new();
        let mut current = vec![0u64; k];
        self.enumerate(0, n, &reach, width, &mut current, &mut out, limits.factorization_cap)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        i: usize,
        rem: u64,
        reach: &[bool],
        width: usize,
        current: &mut Vec<u64>,
        out: &mut Vec<FactorizationVector>,
        cap: usize,
    ) -> Result<()> {
        let k = self.atoms.len();
        if i == k {
            if rem == 0 {
                if out.len() >= cap {
                    return Err(Error::Resource {
                        what: "factorization count",
                        cap: cap as u64,
                    });
                }
                out.push(FactorizationVector(current.clone()));
            }
            return Ok(());
        }
        let a = self.atoms[i];
        for c in 0..=rem / a {
            let r = rem - c * a;
            if reach[(i + 1) * width + r as usize] {
                current[i] = c;
                self.enumerate(i + 1, r, reach, width, current, out, cap)?;
            }
        }
        current[i] = 0;
        Ok(())
    }

    /// `L(n)` by a dynamic program over (value, length), without
    /// materializing `Z(n)`.
    pub fn length_set(&self, n: u64, limits: &Limits) -> Result<LengthSet> {
        if !self.is_member(n) {
            return Ok(LengthSet::empty());
        }
        let table = self.length_table(n, limits)?;
        Ok(table.get(n))
    }

    /// Sets of lengths of every value in `0..=max_value`.
    pub fn length_table(&self, max_value: u64, limits: &Limits) -> Result<LengthTable> {
        let weights = vec![1; self.atoms.len()];
        let table = weighted_length_table(&self.atoms, &weights, max_value, limits.table_cap)?;
        Ok(LengthTable { table })
    }
}

/// Precomputed sets of lengths for all values up to a bound.
pub struct LengthTable {
    table: BitTable,
}

impl LengthTable {
    pub fn max_value(&self) -> u64 {
        self.table.rows() as u64 - 1
    }

    /// # Panics
    /// If `v` exceeds [`LengthTable::max_value`].
    pub fn get(&self, v: u64) -> LengthSet {
        LengthSet::from_bits(self.table.row(v as usize))
    }

    pub(crate) fn row(&self, v: u64) -> &[u64] {
        self.table.row(v as usize)
    }
}

/// Sets of weighted lengths `Σ cᵢ·wᵢ` over `Σ cᵢ·uᵢ = v`, for `v ≤ max_value`.
pub(crate) fn weighted_length_table(
    values: &[u64],
    weights: &[u64],
    max_value: u64,
    table_cap: u64,
) -> Result<BitTable> {
    debug_assert_eq!(values.len(), weights.len());
    let too_big = || Error::Resource {
        what: "length table",
        cap: table_cap,
    };
    let max_len = values
        .iter()
        .zip(weights)
        .map(|(&u, &w)| max_value as u128 * w as u128 / u as u128)
        .max()
        .unwrap_or(0);
    if max_len > table_cap as u128 || max_value as u128 + 1 > table_cap as u128 {
        return Err(too_big());
    }
    let rows = max_value as usize + 1;
    let mut table = BitTable::new(rows, max_len as usize, table_cap).ok_or_else(too_big)?;
    table.set(0, 0);
    for v in 1..rows {
        for (&u, &w) in values.iter().zip(weights) {
            let u = u as usize;
            if u <= v {
                table.shl_or_rows(v, v - u, w as usize);
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(atoms: &[u64]) -> IntSubmonoid {
        IntSubmonoid::minimalize(atoms).unwrap()
    }

    fn fv(v: &[u64]) -> FactorizationVector {
        FactorizationVector::new(v.to_vec())
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(n(&[2, 3, 4]).atoms(), &[2, 3]);
        assert_eq!(n(&[6, 9, 20]).atoms(), &[6, 9, 20]);
        assert_eq!(n(&[5]).atoms(), &[5]);
        assert_eq!(n(&[4, 6, 10, 9]).atoms(), &[4, 6, 9]);
        assert_eq!(n(&[3, 1, 7]).atoms(), &[1]);
    }

    #[test]
    fn minimalize_rejects_bad_input() {
        assert!(matches!(IntSubmonoid::minimalize(&[]), Err(Error::Domain(_))));
        assert!(matches!(IntSubmonoid::minimalize(&[0, 2]), Err(Error::Domain(_))));
    }

    #[test]
    fn membership() {
        let m = n(&[2, 3]);
        assert!(!m.is_member(1));
        assert!(m.is_member(7));
        assert!(m.is_member(0));
        let mc = n(&[6, 9, 20]);
        assert!(!mc.is_member(43));
        assert!(mc.is_member(44));
        let even = n(&[4, 6]);
        assert!(!even.is_member(1001));
        assert!(even.is_member(1002));
    }

    #[test]
    fn factorization_examples() {
        let m = n(&[2, 3]);
        let lim = Limits::default();
        assert_eq!(m.factorizations(6, &lim).unwrap(), vec![fv(&[0, 2]), fv(&[3, 0])]);
        assert_eq!(m.factorizations(0, &lim).unwrap(), vec![fv(&[0, 0])]);
        assert!(m.factorizations(1, &lim).unwrap().is_empty());
    }

    #[test]
    fn factorization_cap() {
        let m = n(&[1]);
        let lim = Limits {
            factorization_cap: 3,
            ..Limits::default()
        };
        let m2 = n(&[2, 3]);
        assert_eq!(m.factorizations(50, &lim).unwrap().len(), 1);
        assert!(matches!(
            m2.factorizations(60, &lim),
            Err(Error::Resource { what: "factorization count", cap: 3 })
        ));
    }

    #[test]
    fn length_set_examples() {
        let lim = Limits::default();
        assert_eq!(n(&[2, 3]).length_set(6, &lim).unwrap(), LengthSet::new([2, 3]));
        assert_eq!(n(&[1]).length_set(37, &lim).unwrap(), LengthSet::new([37]));
        assert!(n(&[2, 3]).length_set(1, &lim).unwrap().is_empty());
        assert_eq!(n(&[2, 3]).length_set(0, &lim).unwrap(), LengthSet::new([0]));
    }

    #[test]
    fn atoms_factor_only_as_themselves() {
        let m = n(&[5, 7, 9, 11]);
        for (i, &a) in m.atoms().iter().enumerate() {
            let z = m.factorizations(a, &Limits::default()).unwrap();
            let mut unit = vec![0; 4];
            unit[i] = 1;
            assert_eq!(z, vec![fv(&unit)]);
        }
    }

    #[test]
    fn length_set_display() {
        assert_eq!(LengthSet::new([3, 2, 3]).to_string(), "{2, 3}");
        assert_eq!(LengthSet::empty().to_string(), "{}");
    }
}
