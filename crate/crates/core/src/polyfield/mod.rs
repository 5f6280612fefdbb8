//! Prime-field polynomials, explicit extension fields and primitive prime
//! divisors.

mod field;
mod poly;

pub use field::{least_irreducible, Elem, FiniteField, FIELD_CAP};
pub use poly::{enumerate_irreducibles, enumerate_irreducibles_capped, MonicPoly, IRREDUCIBLE_CAP};

use crate::arith::{factorize, is_prime, pow_mod};
use crate::error::{Error, Result};

/// Largest primitive prime divisor of `p^n - 1`: a prime dividing it but no
/// `p^k - 1` for `1 <= k < n`. `None` for the Zsigmondy exceptions.
pub fn zsigmondy(p: u64, n: u32) -> Result<Option<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::OutOfRange("zsigmondy needs n >= 1".into()));
    }
    let value = (p as u128).checked_pow(n).filter(|v| *v <= u64::MAX as u128);
    let Some(value) = value else {
        return Err(Error::CapExceeded {
            what: "p^n",
            value: u128::MAX,
            cap: u64::MAX as u128,
        });
    };
    let target = value as u64 - 1;
    let n_primes: Vec<u64> = factorize(n as u64).into_keys().collect();
    let primitive = factorize(target)
        .into_keys()
        .filter(|&q| {
            n_primes
                .iter()
                .all(|&l| pow_mod(p % q, n as u64 / l, q) != 1)
        })
        .max();
    Ok(primitive)
}
