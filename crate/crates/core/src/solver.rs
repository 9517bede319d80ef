//! Exact sets of lengths over a finite list of positive rational generators.
//!
//! Two independent routes are provided:
//!
//! * [`Strategy::Direct`] scales everything by the rational gcd of the
//!   generators and runs a (value, length) table over the integer image.
//!   Simple and obviously correct, but the table grows with the common
//!   denominator.
//! * [`Strategy::Reduced`] first removes denominator primes that occur in a
//!   single generator. If `p` divides the denominator of `a` and of no other
//!   generator, any representation `x = c·a + rest` has `v_p(rest) ≥ 0`, so
//!   `c` is pinned modulo `p^v` (`v = -v_p(a)`). Writing `c = c₀ + j·p^v`
//!   turns `a` into the generator `p^v·a` carrying weight `p^v`, at the cost
//!   of a fixed offset `c₀·a`. When no such prime is left, generators are
//!   grouped into blocks with pairwise coprime denominators; the fractional
//!   part of each block's share of `x` is then fixed by the Chinese remainder
//!   theorem, and the remaining integer parts are distributed by a knapsack
//!   over blocks.
//!
//! The reduced route handles generator lists whose common denominator is a
//! product of dozens of primes.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::arith::{factor_biguint, mod_inverse};
use crate::bits::Bits;
use crate::numsgp::weighted_length_table;
use crate::{Error, LengthSet, Limits, Rational, Result};

/// Largest direct table (in bits) that [`Strategy::Auto`] will build.
const AUTO_DIRECT_BITS: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Direct when the integer-image table is small, reduced otherwise.
    #[default]
    Auto,
    Direct,
    Reduced,
}

#[derive(Clone, Debug)]
struct Gen {
    value: Rational,
    weight: u64,
    primes: Vec<(u64, u32)>,
}

fn too_wide(what: &'static str) -> Error {
    Error::Resource {
        what,
        cap: u64::MAX,
    }
}

/// `L(x)` in the monoid generated by `gens`.
///
/// The generators need not be minimal: the result is the set of
/// `Σ cᵢ` over all `Σ cᵢ·gᵢ = x`, so callers pass atoms to get lengths.
///
/// ```
/// use puiseux::{solver::{length_set, Strategy}, Limits, Rational};
/// let atoms: Vec<Rational> = ["1/2", "1/3", "1/5", "1/7"].iter().map(|s| s.parse().unwrap()).collect();
/// let l = length_set(&atoms, &Rational::from(2), Strategy::Reduced, &Limits::default())?;
/// assert_eq!(l.as_slice(), &[4, 5, 6, 7, 8, 9, 10, 12, 14]);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn length_set(
    gens: &[Rational],
    x: &Rational,
    strategy: Strategy,
    limits: &Limits,
) -> Result<LengthSet> {
    if gens.iter().any(Rational::is_zero) {
        return Err(Error::domain("generators must be positive"));
    }
    let gens: Vec<Gen> = gens
        .iter()
        .map(|g| {
            Ok(Gen {
                value: g.clone(),
                weight: 1,
                primes: factor_biguint(g.denom())?,
            })
        })
        .collect::<Result<_>>()?;
    let strategy = match strategy {
        Strategy::Auto => auto_choice(&gens, x),
        s => s,
    };
    let bits = match strategy {
        Strategy::Direct => direct(&gens, x, limits)?,
        _ => reduced(gens, x.clone(), limits)?,
    };
    Ok(LengthSet::from_owned_bits(&bits))
}

/// Whether `x` lies in the monoid generated by `gens`.
pub fn is_member(gens: &[Rational], x: &Rational, limits: &Limits) -> Result<bool> {
    Ok(!length_set(gens, x, Strategy::Auto, limits)?.is_empty())
}

fn auto_choice(gens: &[Gen], x: &Rational) -> Strategy {
    let usable: Vec<&Gen> = gens.iter().filter(|g| g.value <= *x).collect();
    let scale = Rational::gcd_of(usable.iter().map(|g| &g.value));
    if scale.is_zero() {
        return Strategy::Direct;
    }
    let Some(target) = (x / &scale).floor().to_u128() else {
        return Strategy::Reduced;
    };
    let max_len = usable
        .iter()
        .map(|g| (&g.value / &scale).floor().to_u128().unwrap_or(u128::MAX))
        .min()
        .map(|u| target / u.max(1) + 1)
        .unwrap_or(1);
    if target.saturating_mul(max_len) <= AUTO_DIRECT_BITS {
        Strategy::Direct
    } else {
        Strategy::Reduced
    }
}

/// Weighted length table over the integer image of `gens`, sampled at
/// `base + k` for `k = 0..=count`.
fn direct_samples(
    gens: &[Gen],
    base: &Rational,
    count: u64,
    limits: &Limits,
) -> Result<Vec<Option<Bits>>> {
    let top = base + Rational::from(count);
    let usable: Vec<&Gen> = gens.iter().filter(|g| g.value <= top).collect();
    let mut out = vec![None; count as usize + 1];
    let scale = Rational::gcd_of(usable.iter().map(|g| &g.value));
    if scale.is_zero() {
        if base.is_zero() {
            out[0] = Some(Bits::singleton(0));
        }
        return Ok(out);
    }
    let values = usable
        .iter()
        .map(|g| (&g.value / &scale).to_u64().ok_or(too_wide("integer image of a generator")))
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<u64> = usable.iter().map(|g| g.weight).collect();
    let max_value = (&top / &scale)
        .floor()
        .to_u64()
        .ok_or(too_wide("integer image of the target"))?;
    let table = weighted_length_table(&values, &weights, max_value, limits.table_cap)?;
    for (k, slot) in out.iter_mut().enumerate() {
        let y = (base + Rational::from(k as u64)) / &scale;
        if let Some(v) = y.to_u64() {
            let bits = Bits::from_words(table.row(v as usize));
            if !bits.is_empty() {
                *slot = Some(bits);
            }
        }
    }
    Ok(out)
}

fn direct(gens: &[Gen], x: &Rational, limits: &Limits) -> Result<Bits> {
    Ok(direct_samples(gens, x, 0, limits)?
        .pop()
        .flatten()
        .unwrap_or_default())
}

fn prime_power(p: u64, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), e as usize)
}

fn reduced(mut gens: Vec<Gen>, x: Rational, limits: &Limits) -> Result<Bits> {
    if x.is_zero() {
        return Ok(Bits::singleton(0));
    }
    gens.retain(|g| g.value <= x);
    if gens.is_empty() {
        return Ok(Bits::default());
    }
    let x_primes: BTreeMap<u64, u32> = factor_biguint(x.denom())?.into_iter().collect();
    let mut holders: BTreeMap<u64, usize> = BTreeMap::new();
    for g in &gens {
        for &(p, _) in &g.primes {
            *holders.entry(p).or_default() += 1;
        }
    }
    if x_primes.keys().any(|p| !holders.contains_key(p)) {
        return Ok(Bits::default());
    }

    let exclusive = gens.iter().enumerate().find_map(|(i, g)| {
        g.primes
            .iter()
            .find(|(p, _)| holders[p] == 1)
            .map(|&(p, v)| (i, p, v))
    });
    if let Some((i, p, v)) = exclusive {
        return reduce_exclusive(gens, x, &x_primes, i, p, v, limits);
    }

    let blocks = coprime_blocks(&gens);
    if blocks.len() == 1 {
        return direct(&gens, &x, limits);
    }
    combine_blocks(&gens, &blocks, &x, &x_primes, limits)
}

#[allow(clippy::too_many_arguments)]
fn reduce_exclusive(
    mut gens: Vec<Gen>,
    x: Rational,
    x_primes: &BTreeMap<u64, u32>,
    i: usize,
    p: u64,
    v: u32,
    limits: &Limits,
) -> Result<Bits> {
    let a = gens[i].value.clone();
    let w = gens[i].weight;
    let e_x = x_primes.get(&p).copied().unwrap_or(0);
    if e_x > v {
        return Ok(Bits::default());
    }
    let modulus = prime_power(p, v);
    // c·a ≡ x (mod p-integral)  ⇔  c ≡ (x·p^v)·m_a·n_a⁻¹ (mod p^v),
    // where a = n_a / (p^v·m_a).
    let m_a = a.denom() / &modulus;
    let m_x = x.denom() / prime_power(p, e_x);
    let x_scaled = x.numer() * prime_power(p, v - e_x) % &modulus;
    let inv_mx = mod_inverse(&m_x, &modulus)
        .ok_or_else(|| Error::Internal("denominator cofactor not invertible".into()))?;
    let inv_na = mod_inverse(a.numer(), &modulus)
        .ok_or_else(|| Error::Internal("numerator not invertible".into()))?;
    let c0 = x_scaled * inv_mx % &modulus * m_a % &modulus * inv_na % &modulus;

    let c0_rat = Rational::from(c0.clone());
    let Some(rest) = x.checked_sub(&(&a * &c0_rat)) else {
        return Ok(Bits::default());
    };
    let offset = c0
        .to_u64()
        .and_then(|c| c.checked_mul(w))
        .ok_or(too_wide("length offset"))?;
    let step = modulus.to_u64().ok_or(too_wide("prime power step"))?;
    let weight = w.checked_mul(step).ok_or(too_wide("generator weight"))?;

    let g = &mut gens[i];
    g.value = &a * Rational::from(modulus);
    g.weight = weight;
    g.primes.retain(|&(q, _)| q != p);

    let bits = reduced(gens, rest, limits)?;
    Ok(bits.shifted(offset as usize))
}

/// Connected components of generators under "denominators share a prime".
/// Generators with denominator 1 form one block of their own.
fn coprime_blocks(gens: &[Gen]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..gens.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut j = i;
        while parent[j] != r {
            let next = parent[j];
            parent[j] = r;
            j = next;
        }
        r
    }
    let mut owner: BTreeMap<u64, usize> = BTreeMap::new();
    let mut integral: Option<usize> = None;
    for (i, g) in gens.iter().enumerate() {
        if g.primes.is_empty() {
            match integral {
                Some(j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => integral = Some(i),
            }
        }
        for &(p, _) in &g.primes {
            match owner.get(&p) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    owner.insert(p, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..gens.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn combine_blocks(
    gens: &[Gen],
    blocks: &[Vec<usize>],
    x: &Rational,
    x_primes: &BTreeMap<u64, u32>,
    limits: &Limits,
) -> Result<Bits> {
    let d = x.denom();
    let n = x.numer();
    let mut bases = Vec::with_capacity(blocks.len());
    for block in blocks {
        let mut d_b = BigUint::one();
        let mut seen = Vec::new();
        for &i in block {
            for &(p, _) in &gens[i].primes {
                if !seen.contains(&p) {
                    seen.push(p);
                    if let Some(&e) = x_primes.get(&p) {
                        d_b *= prime_power(p, e);
                    }
                }
            }
        }
        let base = if d_b.is_one() {
            Rational::zero()
        } else {
            let cofactor = (d / &d_b) % &d_b;
            let inv = mod_inverse(&cofactor, &d_b)
                .ok_or_else(|| Error::Internal("block denominators not coprime".into()))?;
            Rational::new(n * inv % &d_b, d_b)?
        };
        bases.push(base);
    }
    let fractional: Rational = bases.iter().sum();
    let Some(spread) = x.checked_sub(&fractional) else {
        return Ok(Bits::default());
    };
    let spread = spread
        .to_integer()
        .ok_or_else(|| Error::Internal("block fractional parts do not sum to x mod 1".into()))?
        .to_u64()
        .ok_or(too_wide("integer spread across blocks"))?;
    if spread as u128 + 1 > limits.table_cap as u128 {
        return Err(Error::Resource {
            what: "block knapsack",
            cap: limits.table_cap,
        });
    }
    let k_max = spread as usize;

    let mut acc: Vec<Option<Bits>> = vec![None; k_max + 1];
    acc[0] = Some(Bits::singleton(0));
    for (block, base) in blocks.iter().zip(&bases) {
        let block_gens: Vec<Gen> = block.iter().map(|&i| gens[i].clone()).collect();
        let samples = direct_samples(&block_gens, base, spread, limits)?;
        let mut next: Vec<Option<Bits>> = vec![None; k_max + 1];
        for (k1, left) in acc.iter().enumerate() {
            let Some(left) = left else { continue };
            for (k2, right) in samples.iter().enumerate().take(k_max + 1 - k1) {
                let Some(right) = right else { continue };
                let sum = left.sumset(right);
                match &mut next[k1 + k2] {
                    Some(b) => b.or_assign(&sum),
                    slot => *slot = Some(sum),
                }
            }
        }
        acc = next;
    }
    Ok(acc.pop().flatten().unwrap_or_default())
}
