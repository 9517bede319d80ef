use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith::next_prime_satisfying;
use crate::{Error, PrimeSet, Result};

/// The primes a construction may draw from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum PrimePool {
    #[default]
    All,
    /// Primes `p` with `p ≡ residue (mod modulus)`.
    Residue { residue: u64, modulus: u64 },
    Finite(PrimeSet),
}

impl PrimePool {
    pub fn admits(&self, p: u64) -> bool {
        match self {
            PrimePool::All => true,
            PrimePool::Residue { residue, modulus } => p % modulus == *residue,
            PrimePool::Finite(set) => set.contains(p),
        }
    }

    /// Smallest admitted prime `≥ lower` satisfying `pred`.
    pub(crate) fn smallest(&self, lower: u64, cap: u64, mut pred: impl FnMut(u64) -> bool) -> Result<u64> {
        match self {
            PrimePool::Finite(set) => set
                .iter()
                .filter(|&p| p >= lower)
                .find(|&p| pred(p))
                .ok_or(Error::Resource {
                    what: "finite prime pool",
                    cap: set.len() as u64,
                }),
            _ => next_prime_satisfying(lower, cap, |p| self.admits(p) && pred(p)),
        }
    }
}

impl fmt::Display for PrimePool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimePool::All => write!(f, "all"),
            PrimePool::Residue { residue, modulus } => write!(f, "{residue}mod{modulus}"),
            PrimePool::Finite(set) => {
                let parts: Vec<String> = set.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl Serialize for PrimePool {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts `all`, `RmodM` (e.g. `1mod4`) or a comma-separated prime list.
impl FromStr for PrimePool {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(PrimePool::All);
        }
        let bad = || Error::domain(format!("unrecognized prime pool '{s}'"));
        if let Some((r, m)) = s.split_once("mod") {
            let residue: u64 = r.trim().parse().map_err(|_| bad())?;
            let modulus: u64 = m.trim().parse().map_err(|_| bad())?;
            if modulus == 0 || residue >= modulus {
                return Err(Error::domain(format!(
                    "residue {residue} is not reduced modulo {modulus}"
                )));
            }
            return Ok(PrimePool::Residue { residue, modulus });
        }
        let primes = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Ok(PrimePool::Finite(PrimeSet::new(primes)?))
    }
}
