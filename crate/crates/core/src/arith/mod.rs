//! Exact arithmetic underlying every other module.

mod primes;
mod rational;
mod valuation;

pub use primes::{
    factor_biguint, factor_u64, is_prime, next_prime_satisfying, nth_prime, primes_up_to,
};
pub use rational::Rational;
pub use valuation::{padic_valuation, ExtValuation};

pub(crate) use primes::mod_inverse;
