//! Orbit counts of unipotent elements on `F_r^{2a}`, the eigenvalue
//! multiplicity optimization, and the `rdim` constants for elements of
//! symplectic groups acting on extraspecial modules.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn big_pow(r: u64, e: u64) -> BigUint {
    BigUint::from(r).pow(e as u32)
}

/// Least positive `k` with `r^k >= n`.
fn least_exponent(r: u64, n: u64) -> u64 {
    let mut k = 1;
    let mut p = r;
    while p < n {
        p *= r;
        k += 1;
    }
    k
}

/// Number of `<x>`-orbits on `F_r^{2a}` for `x` a single unipotent Jordan
/// block of size `2a`.
pub fn d1(r: u64, a: u64) -> BigUint {
    assert!(a >= 1, "d1 needs a >= 1");
    let k = least_exponent(r, 2 * a);
    let mut total = BigUint::from(r);
    for i in 1..=k {
        let hi = big_pow(r, r.saturating_pow(i as u32).min(2 * a));
        let lo = big_pow(r, r.saturating_pow(i as u32 - 1).min(2 * a));
        total += (hi - lo) / big_pow(r, i);
    }
    total
}

/// Number of `<x>`-orbits on `F_r^{2a}` for `x` with two unipotent Jordan
/// blocks of size `a`.
pub fn d2(r: u64, a: u64) -> BigUint {
    assert!(a >= 1, "d2 needs a >= 1");
    let l = least_exponent(r, a);
    let mut total = big_pow(r, 2);
    for i in 1..=l {
        let hi = big_pow(r, 2 * r.saturating_pow(i as u32).min(a));
        let lo = big_pow(r, 2 * r.saturating_pow(i as u32 - 1).min(a));
        total += (hi - lo) / big_pow(r, i);
    }
    total
}

/// Pairs `(r, a)` in the scanned range with `d1(r, a) > r^{2a} / 4`.
pub fn d1_quarter_exceptions(primes: &[u64], max_a: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for &r in primes {
        for a in 1..=max_a {
            if d1(r, a) * 4u32 > big_pow(r, 2 * a) {
                out.push((r, a));
            }
        }
    }
    out
}

/// Largest `M <= S` with `M^2 + (S - M) <= Q`: the biggest part of a
/// multiset of positive integers summing to `S` whose squares sum to at most
/// `Q`.
pub fn max_multiplicity(s: u64, q: u64) -> Result<u64> {
    if s == 0 || q < s {
        return Err(Error::Precondition(format!(
            "max_multiplicity needs 1 <= S <= Q, got S={s} Q={q}"
        )));
    }
    let mut m = (q as f64).sqrt() as u64 + 1;
    m = m.min(s);
    while m * m + (s - m) > q {
        m -= 1;
    }
    Ok(m)
}

/// Number of cycles of a permutation with the given cycle lengths.
pub fn orbit_bound_from_cycles(lengths: &[u64]) -> Result<u64> {
    if lengths.is_empty() {
        return Err(Error::Precondition("no cycles given".into()));
    }
    Ok(lengths.len() as u64)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenKind {
    /// `x` acts irreducibly on the quotient: `d <= (r^a + 1)/m`.
    Irreducible,
    /// Two blocks: `d <= 1 + (r^a - 1)/m`.
    TwoBlocks,
}

pub fn eigen_dim_bound(kind: EigenKind, r: u64, a: u32, m: u64) -> Result<Ratio<u64>> {
    if m == 0 {
        return Err(Error::Precondition("order m must be positive".into()));
    }
    let ra = r
        .checked_pow(a)
        .ok_or_else(|| Error::OutOfRange(format!("{r}^{a} overflows")))?;
    let bound = match kind {
        EigenKind::Irreducible => Ratio::new(ra + 1, m),
        EigenKind::TwoBlocks => Ratio::one() + Ratio::new(ra - 1, m),
    };
    Ok(bound.min(Ratio::from_integer(ra)))
}

/// The shape of an element of `Sp(2a, r)` for the `rdim` classification.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum RdimCase {
    /// `r = 2`: `i` parts of type `D(4)`.
    TypeI { i: u32 },
    /// `r = 3`: `i` parts `B(2,1)`, `j` parts `C(2)`.
    TypeII { i: u32, j: u32 },
    /// `r in {5, 7}`: `i` parts `B(2,1)`.
    TypeIIIIV { i: u32 },
    Other,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdimProfile {
    pub r: u64,
    pub a: u32,
    #[serde(flatten)]
    pub case: RdimCase,
}

impl RdimProfile {
    pub fn new(r: u64, a: u32, case: RdimCase) -> Self {
        RdimProfile { r, a, case }
    }
}

/// Upper bound for `dim C_V(x) / dim V` by case.
pub fn rdim_case(profile: RdimProfile) -> Result<Ratio<u64>> {
    let RdimProfile { r, a, case } = profile;
    let malformed = || {
        Err(Error::Malformed(format!(
            "case {case:?} is not available for r={r}, a={a}"
        )))
    };
    let generic = Ratio::new(r + 1, 2 * r);
    let in_range = match r {
        2 => a <= 8,
        3 => a <= 4,
        5 => a <= 2,
        7 => a == 1,
        _ => false,
    };
    if a == 0 {
        return malformed();
    }
    match (r, case) {
        (2, RdimCase::TypeI { i }) if (1..=4).contains(&i) && 2 * i <= a && a <= 8 => {
            Ok(Ratio::new((1 << i) + 1, 1 << (i + 1)))
        }
        (3, RdimCase::TypeII { i, j }) if j <= 1 && i + j >= 1 && i + j <= a.min(4) && a <= 4 => {
            Ok(Ratio::new(2, 3))
        }
        (5, RdimCase::TypeIIIIV { i }) if (1..=2).contains(&i) && i <= a && a <= 2 => {
            Ok(Ratio::new(3, 5))
        }
        (7, RdimCase::TypeIIIIV { i }) if i == 1 && a == 1 => Ok(Ratio::new(4, 7)),
        (_, RdimCase::Other) if in_range => Ok(match r {
            2 => Ratio::new(1, 2),
            3 => Ratio::new(5, 9),
            5 => Ratio::new(11, 25),
            _ => Ratio::new(3, 7),
        }),
        (2 | 3 | 5 | 7, RdimCase::Other) => Ok(generic),
        (2 | 3 | 5 | 7, _) => malformed(),
        _ => Ok(generic),
    }
}

/// `max_multiplicity(r^a, d2(r, a)) / r^a` for each `(r, a)` with
/// `a >= 2` and `r^{2a} <= limit`, with the generic `(r+1)/2r` bound.
pub fn multiplicity_ratios(primes: &[u64], limit: u64) -> Vec<(u64, u64, Ratio<u64>, Ratio<u64>)> {
    let mut out = Vec::new();
    for &r in primes {
        let mut a = 2;
        while r.checked_pow(2 * a as u32).is_some_and(|v| v <= limit) {
            let s = r.pow(a as u32);
            let q = d2(r, a).to_u64().expect("fits");
            let m = max_multiplicity(s, q).expect("d2 >= r^a");
            out.push((r, a, Ratio::new(m, s), Ratio::new(r + 1, 2 * r)));
            a += 1;
        }
    }
    out
}

/// Whether every ratio from [`multiplicity_ratios`] respects the bound.
pub fn multiplicity_ratios_hold(primes: &[u64], limit: u64) -> bool {
    multiplicity_ratios(primes, limit)
        .iter()
        .all(|(_, _, ratio, bound)| ratio <= bound)
        && !primes.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_formula_examples() {
        assert_eq!(d1(2, 1), BigUint::from(3u32));
        assert_eq!(d1(2, 2), BigUint::from(6u32));
        assert_eq!(d1(3, 1), BigUint::from(5u32));
        assert_eq!(d2(2, 2), BigUint::from(10u32));
        assert_eq!(d2(3, 2), BigUint::from(33u32));
        assert_eq!(d2(2, 1), BigUint::from(4u32));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(max_multiplicity(4, 10).unwrap(), 3);
        assert_eq!(max_multiplicity(9, 33).unwrap(), 5);
        assert_eq!(max_multiplicity(7, 49).unwrap(), 7);
        assert!(max_multiplicity(5, 4).is_err());
    }

    #[test]
    fn cycle_examples() {
        let mut l = vec![3; 8];
        l.extend([1, 1, 1]);
        assert_eq!(orbit_bound_from_cycles(&l).unwrap(), 11);
        assert_eq!(orbit_bound_from_cycles(&[4, 2, 1, 1]).unwrap(), 4);
        assert_eq!(orbit_bound_from_cycles(&[4, 4, 4, 2, 1, 1]).unwrap(), 6);
    }

    #[test]
    fn eigen_examples() {
        assert_eq!(eigen_dim_bound(EigenKind::Irreducible, 2, 1, 3).unwrap(), Ratio::from_integer(1));
        assert_eq!(eigen_dim_bound(EigenKind::TwoBlocks, 2, 2, 1).unwrap(), Ratio::from_integer(4));
        assert_eq!(eigen_dim_bound(EigenKind::Irreducible, 3, 2, 5).unwrap(), Ratio::from_integer(2));
    }

    #[test]
    fn rdim_examples() {
        let f = |r, a, c| rdim_case(RdimProfile::new(r, a, c)).unwrap();
        assert_eq!(f(2, 6, RdimCase::TypeI { i: 3 }), Ratio::new(9, 16));
        assert_eq!(f(3, 2, RdimCase::Other), Ratio::new(5, 9));
        assert_eq!(f(13, 1, RdimCase::Other), Ratio::new(7, 13));
        assert_eq!(f(13, 3, RdimCase::TypeI { i: 1 }), Ratio::new(7, 13));
        assert_eq!(f(7, 1, RdimCase::TypeIIIIV { i: 1 }), Ratio::new(4, 7));
        assert_eq!(f(5, 2, RdimCase::Other), Ratio::new(11, 25));
        assert!(rdim_case(RdimProfile::new(2, 1, RdimCase::TypeI { i: 1 })).is_err());
        assert!(rdim_case(RdimProfile::new(3, 5, RdimCase::TypeII { i: 1, j: 0 })).is_err());
    }

    #[test]
    fn quarter_exceptions() {
        assert_eq!(
            d1_quarter_exceptions(&[2, 3, 5, 7, 11, 13], 6),
            vec![(2, 1), (2, 2), (3, 1), (5, 1), (7, 1)]
        );
    }

    #[test]
    fn ratios_within_bound() {
        assert!(multiplicity_ratios_hold(&[2, 3, 5, 7], 1 << 20));
    }
}
