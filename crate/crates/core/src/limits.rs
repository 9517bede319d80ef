use serde::{Deserialize, Serialize};

/// Caps on the size of the computations the library is willing to attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of factorization vectors returned by one query.
    pub factorization_cap: usize,
    /// Maximum number of primes examined by one prime search.
    pub prime_search_cap: u64,
    /// Maximum number of bits in one dynamic-programming table.
    pub table_cap: u64,
}

impl Limits {
    pub const DEFAULT_FACTORIZATION_CAP: usize = 1_000_000;
    pub const DEFAULT_PRIME_SEARCH_CAP: u64 = 1_000_000;
    pub const DEFAULT_TABLE_CAP: u64 = 1 << 31;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            factorization_cap: Self::DEFAULT_FACTORIZATION_CAP,
            prime_search_cap: Self::DEFAULT_PRIME_SEARCH_CAP,
            table_cap: Self::DEFAULT_TABLE_CAP,
        }
    }
}
