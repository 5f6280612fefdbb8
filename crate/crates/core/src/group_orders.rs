//! Orders of the finite classical groups.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::partitions::Sign;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    U,
    Sp,
    #[serde(rename = "O+")]
    OPlusEven,
    #[serde(rename = "O-")]
    OMinusEven,
    #[serde(rename = "O")]
    OOdd,
}

/// A classical group by family, dimension parameter and field size.
///
/// `m` is the matrix dimension for `GL` and `U`, the half-dimension for `Sp`
/// and the even orthogonal groups, and `(dim - 1) / 2` for `OOdd`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupLabel {
    pub family: Family,
    pub m: u32,
    pub q: u64,
}

impl GroupLabel {
    pub fn new(family: Family, m: u32, q: u64) -> Self {
        GroupLabel { family, m, q }
    }

    pub fn sp(a: u32, q: u64) -> Self {
        GroupLabel::new(Family::Sp, a, q)
    }

    /// Dimension of the natural module.
    pub fn dimension(&self) -> u32 {
        match self.family {
            Family::GL | Family::U => self.m,
            Family::Sp | Family::OPlusEven | Family::OMinusEven => 2 * self.m,
            Family::OOdd => 2 * self.m + 1,
        }
    }

    pub fn order(&self) -> BigUint {
        classical_order(self)
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dimension();
        let q = self.q;
        match self.family {
            Family::GL => write!(f, "GL({d},{q})"),
            Family::U => write!(f, "U({d},{q})"),
            Family::Sp => write!(f, "Sp({d},{q})"),
            Family::OPlusEven => write!(f, "O+({d},{q})"),
            Family::OMinusEven => write!(f, "O-({d},{q})"),
            Family::OOdd => write!(f, "O({d},{q})"),
        }
    }
}

fn pow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

fn prod_q2i_minus_one(q: u64, lo: u64, hi: u64) -> BigUint {
    (lo..=hi).fold(BigUint::one(), |acc, i| acc * (pow(q, 2 * i) - 1u32))
}

pub fn classical_order(label: &GroupLabel) -> BigUint {
    let q = label.q;
    let m = label.m as u64;
    match label.family {
        Family::GL => gl_order(m, q),
        Family::U => unitary_order(m, q),
        Family::Sp => sp_order(m, q),
        Family::OPlusEven => orthogonal_even_order(m, q, Sign::Plus),
        Family::OMinusEven => orthogonal_even_order(m, q, Sign::Minus),
        Family::OOdd => orthogonal_odd_order(m, q),
    }
}

/// `|GL(m, q)| = prod_{i=0}^{m-1} (q^m - q^i)`.
pub fn gl_order(m: u64, q: u64) -> BigUint {
    let qm = pow(q, m);
    (0..m).fold(BigUint::one(), |acc, i| acc * (&qm - pow(q, i)))
}

/// `|Sp(2m, q)| = q^{m^2} prod_{i=1}^m (q^{2i} - 1)`.
pub fn sp_order(m: u64, q: u64) -> BigUint {
    pow(q, m * m) * prod_q2i_minus_one(q, 1, m)
}

/// `|U(m, q)| = q^{m(m-1)/2} prod_{i=1}^m (q^i - (-1)^i)`, the unitary group
/// inside `GL(m, q^2)`.
pub fn unitary_order(m: u64, q: u64) -> BigUint {
    let mut acc = BigInt::from(pow(q, m * m.saturating_sub(1) / 2));
    for i in 1..=m {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        acc *= BigInt::from(pow(q, i)) - sign;
    }
    acc.abs().to_biguint().expect("non-negative")
}

/// `|O^eps(2m, q)| = 2 q^{m(m-1)} (q^m - eps) prod_{i=1}^{m-1} (q^{2i} - 1)`,
/// with the trivial group at `m = 0`.
pub fn orthogonal_even_order(m: u64, q: u64, eps: Sign) -> BigUint {
    if m == 0 {
        return BigUint::one();
    }
    let qm = pow(q, m);
    let middle = match eps {
        Sign::Plus => qm - 1u32,
        Sign::Minus => qm + 1u32,
    };
    BigUint::from(2u32) * pow(q, m * (m - 1)) * middle * prod_q2i_minus_one(q, 1, m - 1)
}

/// `|O(2m+1, q)| = 2 q^m prod_{i=0}^{m-1} (q^{2m} - q^{2i})`, odd `q`.
pub fn orthogonal_odd_order(m: u64, q: u64) -> BigUint {
    let q2m = pow(q, 2 * m);
    BigUint::from(2u32) * pow(q, m) * (0..m).fold(BigUint::one(), |acc, i| acc * (&q2m - pow(q, 2 * i)))
}

/// Order of the orthogonal group of a nondegenerate form of dimension `dim`
/// with the given sign; both signs give the same order in odd dimension.
pub fn orthogonal_order_by_dim(dim: u64, q: u64, eps: Sign) -> BigUint {
    if dim % 2 == 0 {
        orthogonal_even_order(dim / 2, q, eps)
    } else {
        orthogonal_odd_order(dim / 2, q)
    }
}

/// `|Sp(dim, q)|` for even `dim`.
pub fn sp_order_by_dim(dim: u64, q: u64) -> BigUint {
    debug_assert!(dim % 2 == 0);
    sp_order(dim / 2, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Zero;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn examples() {
        assert_eq!(GroupLabel::sp(1, 3).order(), big(24));
        assert_eq!(GroupLabel::sp(0, 7).order(), big(1));
        assert_eq!(GroupLabel::new(Family::OPlusEven, 1, 3).order(), big(4));
        assert_eq!(GroupLabel::new(Family::OMinusEven, 1, 3).order(), big(8));
        assert_eq!(GroupLabel::new(Family::OOdd, 0, 3).order(), big(2));
        assert_eq!(GroupLabel::new(Family::OOdd, 1, 3).order(), big(48));
        assert_eq!(GroupLabel::new(Family::GL, 2, 3).order(), big(48));
        assert_eq!(GroupLabel::new(Family::U, 2, 2).order(), big(18));
        assert_eq!(GroupLabel::new(Family::U, 1, 2).order(), big(3));
        assert_eq!(GroupLabel::new(Family::U, 0, 2).order(), big(1));
        assert_eq!(GroupLabel::sp(3, 2).order(), big(1_451_520));
        assert_eq!(GroupLabel::sp(2, 3).order(), big(51_840));
    }

    #[test]
    fn sp_matches_displayed_product() {
        for q in [2u64, 3, 5, 7] {
            for m in 0..=8u64 {
                let mut expected = big(q).pow((m * m) as u32);
                for i in 1..=m {
                    expected *= big(q).pow((2 * i) as u32) - 1u32;
                }
                assert_eq!(sp_order(m, q), expected);
            }
        }
    }

    #[test]
    fn orthogonal_orders_divide_gl() {
        for q in [2u64, 3, 5, 7] {
            for m in 1..=5u64 {
                let gl = gl_order(2 * m, q);
                for eps in [Sign::Plus, Sign::Minus] {
                    let o = orthogonal_even_order(m, q, eps);
                    assert!(gl.is_multiple_of(&o));
                    assert!(!o.is_zero());
                }
                if q % 2 == 1 {
                    assert!(gl_order(2 * m + 1, q).is_multiple_of(&orthogonal_odd_order(m, q)));
                }
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(GroupLabel::sp(2, 5).to_string(), "Sp(4,5)");
        assert_eq!(GroupLabel::new(Family::OOdd, 1, 3).to_string(), "O(3,3)");
    }
}
