use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// Default cap on `r^max_degree` for [`enumerate_irreducibles`].
pub const IRREDUCIBLE_CAP: u64 = 1 << 20;

/// Monic polynomial over the prime field `F_r`, coefficients constant-first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    r: u32,
    coeffs: Vec<u32>,
}

impl MonicPoly {
    /// `coeffs` is constant-first and must end with the leading 1.
    pub fn new(r: u32, coeffs: Vec<u32>) -> Result<Self> {
        if !is_prime(r as u64) {
            return Err(Error::NotPrime(r as u64));
        }
        let coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % r).collect();
        if coeffs.len() < 2 || *coeffs.last().unwrap() != 1 {
            return Err(Error::Malformed(
                "monic polynomial needs degree >= 1 and leading coefficient 1".into(),
            ));
        }
        Ok(MonicPoly { r, coeffs })
    }

    pub(crate) fn from_raw(r: u32, coeffs: Vec<u32>) -> Self {
        debug_assert_eq!(coeffs.last(), Some(&1));
        MonicPoly { r, coeffs }
    }

    /// `t - c`.
    pub fn linear(r: u32, root: u32) -> Self {
        MonicPoly::from_raw(r, vec![(r - root % r) % r, 1])
    }

    /// `t - 1`.
    pub fn t_minus_one(r: u32) -> Self {
        MonicPoly::linear(r, 1)
    }

    /// `t + 1`.
    pub fn t_plus_one(r: u32) -> Self {
        MonicPoly::linear(r, r - 1)
    }

    pub fn characteristic(&self) -> u32 {
        self.r
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> u32 {
        self.coeffs[0]
    }

    /// `t - 1` or `t + 1`.
    pub fn is_t_pm_one(&self) -> bool {
        self.degree() == 1 && (self.coeffs[0] == 1 || self.coeffs[0] == self.r - 1)
    }

    pub fn is_t(&self) -> bool {
        self.degree() == 1 && self.coeffs[0] == 0
    }

    /// Base-`r` code of the non-leading coefficients; orders polynomials of
    /// equal degree.
    pub fn code(&self) -> u64 {
        self.coeffs[..self.degree()]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.r as u64 + c as u64)
    }

    pub fn from_code(r: u32, degree: usize, code: u64) -> Self {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut c = code;
        for _ in 0..degree {
            coeffs.push((c % r as u64) as u32);
            c /= r as u64;
        }
        coeffs.push(1);
        MonicPoly { r, coeffs }
    }

    /// `alpha_0^{-1} t^deg phi(1/t)`: the monic polynomial whose roots are the
    /// inverses of the roots of `self`.
    pub fn reciprocal_conjugate(&self) -> Result<MonicPoly> {
        let a0 = self.constant_term();
        if a0 == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let r = self.r as u64;
        let inv = pow_mod(a0 as u64, r - 2, r);
        let coeffs = self
            .coeffs
            .iter()
            .rev()
            .map(|&c| (c as u64 * inv % r) as u32)
            .collect();
        Ok(MonicPoly {
            r: self.r,
            coeffs,
        })
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.reciprocal_conjugate().map(|c| &c == self).unwrap_or(false)
    }

    pub fn is_irreducible(&self) -> bool {
        let d = self.degree();
        if d == 1 {
            return true;
        }
        for e in 1..=d / 2 {
            let count = (self.r as u64).pow(e as u32);
            for code in 0..count {
                let g = MonicPoly::from_code(self.r, e, code);
                if poly_rem(&self.coeffs, &g.coeffs, self.r).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

impl Ord for MonicPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.r
            .cmp(&other.r)
            .then(self.degree().cmp(&other.degree()))
            .then(self.code().cmp(&other.code()))
    }
}

impl PartialOrd for MonicPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for MonicPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl fmt::Debug for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Remainder of `a` modulo monic `m`, both constant-first over `F_r`.
pub(crate) fn poly_rem(a: &[u32], m: &[u32], r: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut rem: Vec<u32> = a.to_vec();
    while rem.len() > dm {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                rem[idx] = (rem[idx] + r - (lead as u64 * c as u64 % r as u64) as u32) % r;
            }
        }
        rem.pop();
    }
    rem
}

/// Product of two constant-first polynomials over `F_r`.
pub(crate) fn poly_mul(a: &[u32], b: &[u32], r: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % r as u64;
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

/// All monic irreducibles over `F_r` of degree `1..=max_degree`, excluding
/// `t`; ordered by degree, then by coefficient code.
pub fn enumerate_irreducibles(r: u32, max_degree: usize) -> Result<Vec<MonicPoly>> {
    enumerate_irreducibles_capped(r, max_degree, IRREDUCIBLE_CAP)
}

pub fn enumerate_irreducibles_capped(
    r: u32,
    max_degree: usize,
    cap: u64,
) -> Result<Vec<MonicPoly>> {
    if !is_prime(r as u64) {
        return Err(Error::NotPrime(r as u64));
    }
    let size = (r as u128).checked_pow(max_degree as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            what: "r^max_degree",
            value: size,
            cap: cap as u128,
        });
    }
    let mut found: Vec<MonicPoly> = Vec::new();
    for d in 1..=max_degree {
        let count = (r as u64).pow(d as u32);
        for code in 1..count {
            let cand = MonicPoly::from_code(r, d, code);
            if cand.constant_term() == 0 {
                continue;
            }
            // t already excluded via the constant term; trial-divide by
            // smaller irreducibles
            let reducible = found
                .iter()
                .take_while(|g| 2 * g.degree() <= d)
                .any(|g| poly_rem(&cand.coeffs, &g.coeffs, r).iter().all(|&c| c == 0));
            if !reducible {
                found.push(cand);
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(r: u32, c: &[u32]) -> MonicPoly {
        MonicPoly::new(r, c.to_vec()).unwrap()
    }

    #[test]
    fn irreducible_lists() {
        assert_eq!(enumerate_irreducibles(2, 1).unwrap(), vec![poly(2, &[1, 1])]);
        assert_eq!(
            enumerate_irreducibles(2, 2).unwrap(),
            vec![poly(2, &[1, 1]), poly(2, &[1, 1, 1])]
        );
        assert_eq!(
            enumerate_irreducibles(3, 1).unwrap(),
            vec![poly(3, &[1, 1]), poly(3, &[2, 1])]
        );
        assert!(matches!(
            enumerate_irreducibles(2, 21),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(poly(2, &[1, 1]).reciprocal_conjugate().unwrap(), poly(2, &[1, 1]));
        assert_eq!(
            poly(3, &[2, 1, 1]).reciprocal_conjugate().unwrap(),
            poly(3, &[2, 2, 1])
        );
        assert_eq!(
            poly(3, &[0, 1]).reciprocal_conjugate(),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn reciprocal_is_involution_small() {
        for r in [2, 3] {
            for d in 1..=3 {
                for code in 0..(r as u64).pow(d as u32) {
                    let f = MonicPoly::from_code(r, d, code);
                    if f.constant_term() == 0 {
                        continue;
                    }
                    let g = f.reciprocal_conjugate().unwrap();
                    assert_eq!(g.reciprocal_conjugate().unwrap(), f);
                    assert_eq!(g.degree(), f.degree());
                }
            }
        }
    }

    #[test]
    fn display_and_helpers() {
        assert_eq!(poly(3, &[2, 1, 1]).to_string(), "t^2+t+2");
        assert_eq!(MonicPoly::t_plus_one(5), poly(5, &[1, 1]));
        assert_eq!(MonicPoly::t_minus_one(5), poly(5, &[4, 1]));
        assert!(MonicPoly::t_minus_one(2) == MonicPoly::t_plus_one(2));
        assert!(poly(3, &[1, 0, 1]).is_self_reciprocal());
        assert!(MonicPoly::new(4, vec![1, 1]).is_err());
        assert!(MonicPoly::new(3, vec![1, 2]).is_err());
    }
}
