use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// Packed bit budget of one matrix.
pub const PACKED_BITS: u32 = 128;

/// An `n x n` matrix over `F_p` in plain row form, used at API boundaries
/// and for generator files.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixOverFp {
    pub p: u32,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

impl MatrixOverFp {
    pub fn new(p: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("matrix must be square".into()));
        }
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let rows = rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        Ok(MatrixOverFp { p, n, rows })
    }
}

/// Shape of packed matrices: `n x n` over `F_p`, row-major, `b` bits per
/// entry. For `p = 2` every row is a bitset of width `n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatCtx {
    p: u32,
    n: usize,
    b: u32,
}

pub type Packed = u128;

impl MatCtx {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::Precondition("matrix dimension must be positive".into()));
        }
        let b = 32 - (p - 1).leading_zeros();
        let bits = (n * n) as u32 * b;
        if bits > PACKED_BITS {
            return Err(Error::CapExceeded {
                what: "packed matrix bits",
                value: bits as u128,
                cap: PACKED_BITS as u128,
            });
        }
        Ok(MatCtx { p, n, b })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p^n`, the number of vectors.
    pub fn vector_count(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }

    #[inline]
    fn shift(&self, i: usize, j: usize) -> u32 {
        (i * self.n + j) as u32 * self.b
    }

    #[inline]
    pub fn entry(&self, x: Packed, i: usize, j: usize) -> u32 {
        ((x >> self.shift(i, j)) & ((1u128 << self.b) - 1)) as u32
    }

    #[inline]
    fn unpack(&self, x: Packed, out: &mut [u32; 128]) {
        let mask = (1u128 << self.b) - 1;
        for (k, slot) in out.iter_mut().take(self.n * self.n).enumerate() {
            *slot = ((x >> (k as u32 * self.b)) & mask) as u32;
        }
    }

    #[inline]
    fn pack(&self, e: &[u32]) -> Packed {
        e.iter()
            .take(self.n * self.n)
            .enumerate()
            .fold(0, |acc, (k, &v)| acc | ((v as u128) << (k as u32 * self.b)))
    }

    pub fn from_rows(&self, rows: &[Vec<u32>]) -> Result<Packed> {
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::Malformed(format!("expected a {0}x{0} matrix", self.n)));
        }
        let flat: Vec<u32> = rows.iter().flatten().map(|&v| v % self.p).collect();
        Ok(self.pack(&flat))
    }

    pub fn from_matrix(&self, m: &MatrixOverFp) -> Result<Packed> {
        if m.p != self.p {
            return Err(Error::Malformed(format!("matrix over F_{} in a group over F_{}", m.p, self.p)));
        }
        self.from_rows(&m.rows)
    }

    pub fn rows(&self, x: Packed) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(x, i, j)).collect())
            .collect()
    }

    pub fn to_matrix(&self, x: Packed) -> MatrixOverFp {
        MatrixOverFp {
            p: self.p,
            n: self.n,
            rows: self.rows(x),
        }
    }

    pub fn identity(&self) -> Packed {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u32) -> Packed {
        (0..self.n).fold(0, |acc, i| acc | (((c % self.p) as u128) << self.shift(i, i)))
    }

    pub fn mul(&self, x: Packed, y: Packed) -> Packed {
        let n = self.n;
        if self.p == 2 {
            let rmask = (1u128 << n) - 1;
            let mut out = 0u128;
            for i in 0..n {
                let mut bits = (x >> (i * n)) & rmask;
                let mut acc = 0u128;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    acc ^= (y >> (j * n)) & rmask;
                    bits &= bits - 1;
                }
                out |= acc << (i * n);
            }
            return out;
        }
        let (mut a, mut b, mut c) = ([0u32; 128], [0u32; 128], [0u32; 128]);
        self.unpack(x, &mut a);
        self.unpack(y, &mut b);
        let p = self.p as u64;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    s += a[i * n + k] as u64 * b[k * n + j] as u64;
                }
                c[i * n + j] = (s % p) as u32;
            }
        }
        self.pack(&c)
    }

    pub fn add(&self, x: Packed, y: Packed) -> Packed {
        let (mut a, mut b) = ([0u32; 128], [0u32; 128]);
        self.unpack(x, &mut a);
        self.unpack(y, &mut b);
        for k in 0..self.n * self.n {
            a[k] = (a[k] + b[k]) % self.p;
        }
        self.pack(&a)
    }

    pub fn scale(&self, x: Packed, c: u32) -> Packed {
        let mut a = [0u32; 128];
        self.unpack(x, &mut a);
        for v in a.iter_mut().take(self.n * self.n) {
            *v = ((*v as u64 * c as u64) % self.p as u64) as u32;
        }
        self.pack(&a)
    }

    /// `x - c I`.
    pub fn minus_scalar(&self, x: Packed, c: u32) -> Packed {
        self.add(x, self.scalar(self.p - c % self.p))
    }

    pub fn pow(&self, x: Packed, mut e: u64) -> Packed {
        let mut base = x;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self, x: Packed) -> Packed {
        let mut a = [0u32; 128];
        self.unpack(x, &mut a);
        let mut t = [0u32; 128];
        for i in 0..self.n {
            for j in 0..self.n {
                t[j * self.n + i] = a[i * self.n + j];
            }
        }
        self.pack(&t)
    }

    pub fn rank(&self, x: Packed) -> usize {
        rank_mod(self.rows(x), self.p)
    }

    pub fn inverse(&self, x: Packed) -> Option<Packed> {
        let n = self.n;
        let p = self.p as u64;
        let mut m: Vec<Vec<u64>> = self
            .rows(x)
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<u64> = row.into_iter().map(u64::from).collect();
                r.extend((0..n).map(|j| (i == j) as u64));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r][col] != 0)?;
            m.swap(col, pivot);
            let inv = pow_mod(m[col][col], p - 2, p);
            for v in m[col].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..n {
                if r != col && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..2 * n {
                        m[r][c] = (m[r][c] + p * p - f * m[col][c]) % p;
                    }
                }
            }
        }
        let rows: Vec<Vec<u32>> = m.into_iter().map(|r| r[n..].iter().map(|&v| v as u32).collect()).collect();
        Some(self.from_rows(&rows).expect("square"))
    }

    pub fn is_invertible(&self, x: Packed) -> bool {
        self.rank(x) == self.n
    }

    /// Coordinates of the vector with index `v`, coordinate 0 least
    /// significant in base `p`.
    pub fn digits(&self, mut v: u64) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = (v % self.p as u64) as u32;
                v /= self.p as u64;
                d
            })
            .collect()
    }

    pub fn undigits(&self, d: &[u32]) -> u64 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p as u64 + x as u64)
    }

    /// `x v` for a column vector given by index.
    pub fn apply(&self, x: Packed, v: u64) -> u64 {
        let d = self.digits(v);
        let p = self.p as u64;
        let out: Vec<u32> = (0..self.n)
            .map(|i| {
                let s: u64 = (0..self.n).map(|j| self.entry(x, i, j) as u64 * d[j] as u64).sum();
                (s % p) as u32
            })
            .collect();
        self.undigits(&out)
    }

    /// Evaluates a polynomial (constant coefficient first) at `x`.
    pub fn eval_poly(&self, coeffs: &[u32], x: Packed) -> Packed {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), self.scalar(c)))
    }
}

/// Rank of a rectangular matrix over `F_p`.
pub fn rank_mod(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let p = p as u64;
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col] as u64, p - 2, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col] as u64 * inv % p;
                for c in col..cols {
                    rows[r][c] = ((rows[r][c] as u64 + p * p - f * rows[rank][c] as u64) % p) as u32;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_inverse_agree() {
        for (p, n) in [(2, 4), (3, 3), (5, 2), (13, 2), (2, 11)] {
            let ctx = MatCtx::new(p, n).unwrap();
            let mut seed = 12345u64;
            let mut found = 0;
            while found < 20 {
                let rows: Vec<Vec<u32>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                                ((seed >> 33) % p as u64) as u32
                            })
                            .collect()
                    })
                    .collect();
                let x = ctx.from_rows(&rows).unwrap();
                if let Some(y) = ctx.inverse(x) {
                    assert_eq!(ctx.mul(x, y), ctx.identity());
                    assert_eq!(ctx.mul(y, x), ctx.identity());
                    found += 1;
                } else {
                    assert!(ctx.rank(x) < n);
                }
            }
        }
    }

    #[test]
    fn packing_limits() {
        assert!(MatCtx::new(2, 11).is_ok());
        assert!(MatCtx::new(2, 12).is_err());
        assert!(MatCtx::new(3, 8).is_ok());
        assert!(MatCtx::new(4, 2).is_err());
    }

    #[test]
    fn apply_matches_rows() {
        let ctx = MatCtx::new(3, 2).unwrap();
        let x = ctx.from_rows(&[vec![1, 2], vec![0, 1]]).unwrap();
        // (1, 1) -> (1 + 2, 1) = (0, 1)
        assert_eq!(ctx.apply(x, ctx.undigits(&[1, 1])), ctx.undigits(&[0, 1]));
    }
}
