//! Lengths in the elementary monoid `⟨1/p : p prime⟩` and sums of primes.
//!
//! Writing `n = Σ cₚ/p` and comparing `p`-adic valuations forces `p | cₚ`,
//! so every factorization of `n` is `Σ aᵢ·(pᵢ·1/pᵢ)` with `Σ aᵢ = n`, and its
//! length is `Σ aᵢ·pᵢ`. A length `ℓ` built this way only involves primes
//! `≤ ℓ`, so computing with the primes up to `B` gives every length up to
//! `B` exactly: the window `[0, B]` is complete.

use serde::Serialize;

use crate::arith::{nth_prime, primes_up_to};
use crate::bits::Bits;
use crate::solver::Strategy;
use crate::staged::elementary_monoid;
use crate::{Error, LengthSet, Limits, Rational, Result};

/// `{n ≤ B : n = p + q, p, q prime}`.
///
/// ```
/// use puiseux::goldbach::goldbach_set;
/// assert_eq!(goldbach_set(12)?.as_slice(), &[4, 5, 6, 7, 8, 9, 10, 12]);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn goldbach_set(bound: u64) -> Result<LengthSet> {
    if bound < 4 {
        return Err(Error::domain("the bound must be at least 4"));
    }
    Ok(LengthSet::from_owned_bits(&pair_sums(bound)).window(0, bound))
}

/// Bitset of all `p + q ≤ bound`, primes `p, q ≤ bound`.
fn pair_sums(bound: u64) -> Bits {
    let primes = primes_up_to(bound);
    let prime_bits = primes.iter().fold(Bits::default(), |mut b, &p| {
        b.or_assign(&Bits::singleton(p as usize));
        b
    });
    let mut out = Bits::default();
    for &p in &primes {
        if 2 * p > bound {
            break;
        }
        out.or_assign(&prime_bits.shifted(p as usize));
    }
    out
}

/// An ordered tuple of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Composition {
    pub parts: Vec<u64>,
}

impl Composition {
    pub fn sum(&self) -> u64 {
        self.parts.iter().sum()
    }
}

/// The compositions of `n` into `k` parts, lexicographically.
#[derive(Clone, Debug)]
pub struct Compositions {
    n: u64,
    next: Option<Vec<u64>>,
}

/// ```
/// use puiseux::goldbach::compositions;
/// let all: Vec<Vec<u64>> = compositions(4, 2)?.map(|c| c.parts).collect();
/// assert_eq!(all, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn compositions(n: u64, k: u64) -> Result<Compositions> {
    if k == 0 || k > n {
        return Err(Error::domain(format!("need 1 ≤ k ≤ n, got n = {n}, k = {k}")));
    }
    let mut first = vec![1; k as usize];
    first[k as usize - 1] = n - k + 1;
    Ok(Compositions { n, next: Some(first) })
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        // Successor: bump the rightmost position that can still grow (one
        // before the last part > 1), reset everything after it to 1, and let
        // the last part absorb the rest.
        let k = current.len();
        if k > 1 {
            let mut succ = current.clone();
            if let Some(i) = (0..k - 1).rev().find(|&i| succ[i + 1..].iter().sum::<u64>() > (k - 1 - i) as u64) {
                succ[i] += 1;
                for part in &mut succ[i + 1..] {
                    *part = 1;
                }
                let used: u64 = succ[..k - 1].iter().sum();
                succ[k - 1] = self.n - used;
                self.next = Some(succ);
            }
        }
        Some(Composition { parts: current })
    }
}

/// `{Σ aᵢ·pᵢ : (a₁, …, a_k) a composition of n, primes pᵢ ≤ B}`.
///
/// With `distinct_primes` the primes are required to be pairwise distinct
/// (equivalently increasing); otherwise repeats are allowed. The two modes
/// are computed by different recurrences.
///
/// ```
/// use puiseux::goldbach::length_set_formula;
/// let l = length_set_formula(2, 7, true)?;
/// assert_eq!(l.as_slice(), &[4, 5, 6, 7, 8, 9, 10, 12, 14]);
/// assert_eq!(l, length_set_formula(2, 7, false)?);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn length_set_formula(n: u64, bound: u64, distinct_primes: bool) -> Result<LengthSet> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if bound < 2 {
        return Err(Error::domain("the prime bound must be at least 2"));
    }
    let primes = primes_up_to(bound);
    let n = n as usize;
    // reach[j]: lengths of partial sums whose parts add up to j.
    let mut reach = vec![Bits::default(); n + 1];
    reach[0] = Bits::singleton(0);
    if distinct_primes {
        // Each prime is used at most once, with some multiplicity a ≥ 1.
        for &p in &primes {
            let before = reach.clone();
            for j in 1..=n {
                for a in 1..=j {
                    if !before[j - a].is_empty() {
                        let shifted = before[j - a].shifted(a * p as usize);
                        reach[j].or_assign(&shifted);
                    }
                }
            }
        }
    } else {
        // Append one more (part, prime) pair at a time.
        for j in 1..=n {
            for a in 1..=j {
                for &p in &primes {
                    let shifted = reach[j - a].shifted(a * p as usize);
                    reach[j].or_assign(&shifted);
                }
            }
        }
    }
    Ok(LengthSet::from_owned_bits(&reach[n]))
}

/// Formula against enumeration in the truncation `⟨1/2, …, 1/p_t⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub n: u64,
    pub stage: usize,
    pub prime_bound: u64,
    pub enumerated: LengthSet,
    pub formula: LengthSet,
    /// Lengths up to this value are complete in the full monoid too.
    pub certified_up_to: u64,
    pub agree: bool,
}

/// Compare `L(n)` over the atoms `1/2, …, 1/p_t`, computed directly from
/// the atoms, with the formula over primes `≤ p_t`. Both describe lengths
/// that use primes `≤ p_t` only, so they must agree everywhere; the
/// agreement is checked on the whole sets.
pub fn cross_check_formula_vs_enumeration(n: u64, t: usize, limits: &Limits) -> Result<CrossCheck> {
    if n == 0 || t == 0 {
        return Err(Error::domain("n and t must be positive"));
    }
    let p_t = nth_prime(t).expect("t ≥ 1");
    let mut m = elementary_monoid();
    m.extend_to(t)?;
    let atoms = m.cumulative_atoms(t)?;
    let enumerated = crate::solver::length_set(&atoms, &Rational::from(n), Strategy::Direct, limits)?;
    let formula = length_set_formula(n, p_t, true)?;
    let agree = enumerated == formula;
    Ok(CrossCheck {
        n,
        stage: t,
        prime_bound: p_t,
        enumerated,
        formula,
        certified_up_to: p_t,
        agree,
    })
}

/// `L(2)` against the sums of two primes on `[4, B]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldbachReport {
    pub bound: u64,
    #[serde(rename = "goldbach")]
    pub goldbach_set: LengthSet,
    /// The formula set for `n = 2`, restricted to the window.
    #[serde(rename = "formula_L2")]
    pub computed_l2: LengthSet,
    pub agreement_window: (u64, u64),
    /// Values in exactly one of the two sets.
    pub discrepancies: Vec<u64>,
}

pub fn verify_goldbach_theorem(bound: u64) -> Result<GoldbachReport> {
    if bound < 7 {
        return Err(Error::domain("the bound must be at least 7"));
    }
    let goldbach = goldbach_set(bound)?.window(4, bound);
    let l2 = length_set_formula(2, bound, true)?.window(4, bound);
    let discrepancies = (4..=bound)
        .filter(|&v| goldbach.contains(v) != l2.contains(v))
        .collect();
    Ok(GoldbachReport {
        bound,
        goldbach_set: goldbach,
        computed_l2: l2,
        agreement_window: (4, bound),
        discrepancies,
    })
}

/// Every odd `n` in `[7, B]` as a sum of three primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakGoldbachReport {
    pub bound: u64,
    pub checked: u64,
    /// Odd values with no decomposition.
    pub failures: Vec<u64>,
    pub ok: bool,
}

pub fn verify_weak_goldbach(bound: u64) -> Result<WeakGoldbachReport> {
    if bound < 7 {
        return Err(Error::domain("the bound must be at least 7"));
    }
    let primes = primes_up_to(bound);
    let two = pair_sums(bound);
    let has = |bits: &Bits, i: u64| {
        let w = bits.words();
        w.get((i / 64) as usize).is_some_and(|x| x >> (i % 64) & 1 == 1)
    };
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in (7..=bound).step_by(2) {
        checked += 1;
        let found = primes
            .iter()
            .take_while(|&&p| p + 4 <= n)
            .any(|&p| has(&two, n - p));
        if !found {
            failures.push(n);
        }
    }
    Ok(WeakGoldbachReport {
        bound,
        checked,
        ok: failures.is_empty(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub n: u64,
    pub in_formula_set: bool,
}

/// Membership of every integer in `[4, B]` in the computed `L(3)`, set
/// against the claim `L(3) = Z≥7`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct L3Report {
    pub bound: u64,
    pub claimed_min: u64,
    pub membership: Vec<Membership>,
    /// Values where computation and claim disagree.
    pub flagged: Vec<u64>,
    /// Whether `[7, B]` lies inside the computed set.
    pub claimed_range_included: bool,
}

/// `6 = 3·2` comes from the single part `a₁ = 3` with `p₁ = 2`: the element
/// 3 is six copies of `1/2`. So 6 is a length of 3 even though the claim
/// starts at 7; the report flags it instead of taking a side.
pub fn l3_report(bound: u64) -> Result<L3Report> {
    if bound < 7 {
        return Err(Error::domain("the bound must be at least 7"));
    }
    const CLAIMED_MIN: u64 = 7;
    let l3 = length_set_formula(3, bound, true)?;
    let membership: Vec<Membership> = (4..=bound)
        .map(|n| Membership {
            n,
            in_formula_set: l3.contains(n),
        })
        .collect();
    let flagged = membership
        .iter()
        .filter(|m| m.in_formula_set != (m.n >= CLAIMED_MIN))
        .map(|m| m.n)
        .collect();
    let claimed_range_included = (CLAIMED_MIN..=bound).all(|n| l3.contains(n));
    Ok(L3Report {
        bound,
        claimed_min: CLAIMED_MIN,
        membership,
        flagged,
        claimed_range_included,
    })
}
