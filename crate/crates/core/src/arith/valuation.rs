use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use super::{is_prime, Rational};
use crate::{Error, Result};

/// A `p`-adic valuation: an integer, or `∞` for the value of zero.
///
/// `Infinity` compares above every finite value and absorbs addition, so the
/// usual identities `v(rs) = v(r) + v(s)` and `v(r + s) ≥ min(v(r), v(s))`
/// hold without special cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtValuation {
    Finite(i64),
    Infinity,
}

impl Ord for ExtValuation {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtValuation::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => Ordering::Less,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Infinity, Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtValuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtValuation {
    type Output = ExtValuation;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtValuation::Finite(a), ExtValuation::Finite(b)) => ExtValuation::Finite(a + b),
            _ => ExtValuation::Infinity,
        }
    }
}

impl fmt::Display for ExtValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValuation::Finite(v) => write!(f, "{v}"),
            ExtValuation::Infinity => write!(f, "∞"),
        }
    }
}

/// Exponent of `p` in a positive integer.
pub(crate) fn multiplicity(p: u64, n: &BigUint) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `v_p(r) = v_p(n(r)) - v_p(d(r))`, with `v_p(0) = ∞`.
///
/// ```
/// use puiseux::{arith::padic_valuation, ExtValuation, Rational};
/// assert_eq!(padic_valuation(2, &Rational::new(3u32, 4u32)?)?, ExtValuation::Finite(-2));
/// assert_eq!(padic_valuation(5, &Rational::zero())?, ExtValuation::Infinity);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn padic_valuation(p: u64, r: &Rational) -> Result<ExtValuation> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if r.is_zero() {
        return Ok(ExtValuation::Infinity);
    }
    let up = multiplicity(p, r.numer()) as i64;
    let down = multiplicity(p, r.denom()) as i64;
    Ok(ExtValuation::Finite(up - down))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let v = |p, n: u64, d: u64| padic_valuation(p, &Rational::new(n, d).unwrap()).unwrap();
        assert_eq!(v(2, 12, 1), ExtValuation::Finite(2));
        assert_eq!(v(2, 3, 4), ExtValuation::Finite(-2));
        assert_eq!(v(5, 0, 1), ExtValuation::Infinity);
        assert_eq!(v(7, 3, 4), ExtValuation::Finite(0));
    }

    #[test]
    fn non_prime_modulus_rejected() {
        assert!(matches!(padic_valuation(4, &Rational::one()), Err(Error::Domain(_))));
        assert!(padic_valuation(1, &Rational::one()).is_err());
    }

    #[test]
    fn infinity_orders_last_and_absorbs() {
        use ExtValuation::*;
        assert!(Finite(i64::MAX) < Infinity);
        assert_eq!(Finite(3) + Infinity, Infinity);
        assert_eq!(Finite(3).min(Infinity), Finite(3));
    }
}
