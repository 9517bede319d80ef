//! Bounded search for a submonoid `N` of `N₀` and `x ∈ N` with `L_N(x) = S`.
//!
//! The search order is fixed: number of atoms ascending, then atom tuples in
//! lexicographic order, then the element ascending. The first hit wins, so
//! results are reproducible and usable as golden data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::{Error, IntSubmonoid, LengthSet, Limits, Result};

/// Limits of the realization search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_atoms: usize,
    pub max_atom_value: u64,
    pub max_element: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_atoms: 4,
            max_atom_value: 40,
            max_element: 400,
        }
    }
}

impl fmt::Display for SearchBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_atoms={}, max_atom_value={}, max_element={}",
            self.max_atoms, self.max_atom_value, self.max_element
        )
    }
}

/// A verified pair `(N, x)` with `L_N(x) = verified_set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationResult {
    pub monoid: IntSubmonoid,
    pub element: u64,
    pub verified_set: LengthSet,
}

impl Serialize for RealizationResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RealizationResult", 3)?;
        st.serialize_field("atoms", self.monoid.atoms())?;
        st.serialize_field("element", &self.element)?;
        st.serialize_field("lengths", &self.verified_set)?;
        st.end()
    }
}

fn validate(target: &LengthSet, bounds: &SearchBounds) -> Result<()> {
    match target.min() {
        None => return Err(Error::domain("target set must be nonempty")),
        Some(m) if m < 2 => {
            return Err(Error::domain(format!(
                "target set {target} must lie in Z≥2"
            )))
        }
        _ => {}
    }
    if bounds.max_atoms == 0 || bounds.max_atom_value == 0 || bounds.max_element == 0 {
        return Err(Error::domain("search bounds must be positive"));
    }
    Ok(())
}

/// Find `(N, x)` with `L_N(x) = target`.
///
/// ```
/// use puiseux::{realization::realize, LengthSet, Limits, SearchBounds};
/// let r = realize(&LengthSet::new([2, 3]), &SearchBounds::default(), &Limits::default())?;
/// assert_eq!((r.monoid.atoms(), r.element), (&[2, 3][..], 6));
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn realize(target: &LengthSet, bounds: &SearchBounds, limits: &Limits) -> Result<RealizationResult> {
    realize_many(std::slice::from_ref(target), bounds, limits)?
        .pop()
        .expect("one result per target")
}

/// [`realize`] for several targets, sharing one pass over the candidate
/// monoids. Entry `i` is exactly what `realize(&targets[i], ..)` returns.
/// The outer error covers invalid input; per-target misses are inner
/// `NotFound` errors.
pub fn realize_many(
    targets: &[LengthSet],
    bounds: &SearchBounds,
    limits: &Limits,
) -> Result<Vec<Result<RealizationResult>>> {
    for t in targets {
        validate(t, bounds)?;
    }
    let mut found: Vec<Option<(Vec<u64>, u64)>> = targets
        .iter()
        .map(|t| (t.len() == 1).then(|| (vec![1], t.min().unwrap())))
        .collect();
    let target_bits: Vec<Bits> = targets
        .iter()
        .map(|t| {
            t.iter().fold(Bits::default(), |mut b, l| {
                b.or_assign(&Bits::singleton(l as usize));
                b
            })
        })
        .collect();

    let mut pending: Vec<usize> = (0..targets.len()).filter(|&i| found[i].is_none()).collect();
    let mut tuple = Vec::new();
    for k in 2..=bounds.max_atoms {
        if pending.is_empty() {
            break;
        }
        // Atom 1 would make every other atom redundant, so tuples start at 2.
        search_tuples(&mut tuple, k, 2, bounds, &mut |atoms| {
            let hits = scan_tuple(atoms, targets, &target_bits, &pending, bounds, limits)?;
            for (i, x) in hits {
                found[i] = Some((atoms.to_vec(), x));
            }
            pending.retain(|&i| found[i].is_none());
            Ok(!pending.is_empty())
        })?;
    }

    let mut out = Vec::with_capacity(targets.len());
    for (target, hit) in targets.iter().zip(found) {
        out.push(match hit {
            None => Err(Error::NotFound {
                target: target.to_string(),
                bounds: *bounds,
            }),
            Some((atoms, element)) => finish(&atoms, element, target, limits),
        });
    }
    Ok(out)
}

/// Enumerate strictly ascending `k`-tuples from `[lo, max_atom_value]` in
/// lexicographic order. `visit` returns `false` to stop early.
fn search_tuples(
    tuple: &mut Vec<u64>,
    k: usize,
    lo: u64,
    bounds: &SearchBounds,
    visit: &mut dyn FnMut(&[u64]) -> Result<bool>,
) -> Result<bool> {
    if tuple.len() == k {
        return visit(tuple);
    }
    let remaining = (k - tuple.len()) as u64;
    let mut a = lo;
    while a + remaining - 1 <= bounds.max_atom_value {
        tuple.push(a);
        let go_on = search_tuples(tuple, k, a + 1, bounds, visit)?;
        tuple.pop();
        if !go_on {
            return Ok(false);
        }
        a += 1;
    }
    Ok(true)
}

/// Targets in `pending` realized by the tuple, with their smallest element.
fn scan_tuple(
    atoms: &[u64],
    targets: &[LengthSet],
    target_bits: &[Bits],
    pending: &[usize],
    bounds: &SearchBounds,
    limits: &Limits,
) -> Result<Vec<(usize, u64)>> {
    let (first, last) = (atoms[0], *atoms.last().unwrap());
    // x needs max S atoms of size ≥ first and min S atoms of size ≤ last.
    let windows: Vec<(usize, u64, u64)> = pending
        .iter()
        .filter_map(|&i| {
            let t = &targets[i];
            let lo = first * t.max().unwrap();
            let hi = (last * t.min().unwrap()).min(bounds.max_element);
            (lo <= hi).then_some((i, lo, hi))
        })
        .collect();
    let Some(top) = windows.iter().map(|w| w.2).max() else {
        return Ok(Vec::new());
    };
    let n = IntSubmonoid::minimalize(atoms)?;
    if n.atoms().len() != atoms.len() {
        return Ok(Vec::new());
    }
    let table = n.length_table(top, limits)?;
    let mut hits = Vec::new();
    for (i, lo, hi) in windows {
        let want = &target_bits[i];
        if let Some(x) = (lo..=hi).find(|&x| same_bits(table.row(x), want)) {
            hits.push((i, x));
        }
    }
    Ok(hits)
}

fn same_bits(row: &[u64], want: &Bits) -> bool {
    let want = want.words();
    let n = row.len().max(want.len());
    (0..n).all(|i| row.get(i).copied().unwrap_or(0) == want.get(i).copied().unwrap_or(0))
}

fn finish(atoms: &[u64], element: u64, target: &LengthSet, limits: &Limits) -> Result<RealizationResult> {
    let monoid = IntSubmonoid::minimalize(atoms)?;
    let verified_set = monoid.length_set(element, limits)?;
    let result = RealizationResult {
        monoid,
        element,
        verified_set,
    };
    if !verify_realization(&result, target, limits) {
        return Err(Error::Internal(format!(
            "realization of {target} failed re-verification"
        )));
    }
    Ok(result)
}

/// Recompute `L_N(x)` from the atoms alone and compare with `target`.
pub fn verify_realization(r: &RealizationResult, target: &LengthSet, limits: &Limits) -> bool {
    IntSubmonoid::minimalize(r.monoid.atoms())
        .and_then(|n| n.length_set(r.element, limits))
        .map(|l| &l == target)
        .unwrap_or(false)
}
