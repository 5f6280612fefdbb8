use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

use super::poly::{poly_mul, poly_rem, MonicPoly};

/// Default cap on the field order for [`FiniteField::new`].
pub const FIELD_CAP: u64 = 1 << 20;

/// An element of `F_{p^n}`: base-`p` digits of its polynomial-basis
/// coordinates, constant coordinate least significant.
pub type Elem = u32;

/// `F_{p^n}` in polynomial basis over the lexicographically least monic
/// irreducible of degree `n`, with full exp/log tables for a fixed primitive
/// element.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    n: u32,
    q: u32,
    modulus: MonicPoly,
    generator: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl FiniteField {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::with_cap(p, n, FIELD_CAP)
    }

    pub fn with_cap(p: u64, n: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::OutOfRange("field degree must be >= 1".into()));
        }
        let q = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
        if q > cap as u128 {
            return Err(Error::CapExceeded {
                what: "field order",
                value: q,
                cap: cap as u128,
            });
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = least_irreducible(p, n as usize);
        let mut field = FiniteField {
            p,
            n,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let order = (self.q - 1) as u64;
        let primes: Vec<u64> = factorize(order).into_keys().collect();
        let generator = (1..self.q)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&l| self.pow_slow(g, order / l) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(self.q as usize - 1);
        let mut log = vec![0u32; self.q as usize];
        let mut x: Elem = 1;
        for i in 0..self.q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = self.mul_slow(x, generator);
        }
        debug_assert_eq!(x, 1);
        self.generator = generator;
        self.exp = exp;
        self.log = log;
    }

    fn digits(&self, x: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut x = x;
        for _ in 0..self.n {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u32]) -> Elem {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let prod = poly_mul(&self.digits(a), &self.digits(b), self.p);
        let mut rem = poly_rem(&prod, self.modulus.coeffs(), self.p);
        rem.resize(self.n as usize, 0);
        self.undigits(&rem)
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &MonicPoly {
        &self.modulus
    }

    /// Primitive element of multiplicative order `q - 1`.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = (self.log[a as usize] as u128 * e as u128 % (self.q as u128 - 1)) as usize;
        self.exp[l]
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> Elem {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// The `k` with `generator^k = a`, for nonzero `a`.
    pub fn discrete_log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Coordinates of `a` over `F_p`, constant coordinate first.
    pub fn coordinates(&self, a: Elem) -> Vec<u32> {
        self.digits(a)
    }

    pub fn from_coordinates(&self, coords: &[u32]) -> Elem {
        self.undigits(coords)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
}

/// Lexicographically least (by coefficient code) monic irreducible of
/// degree `n` over `F_p`, `t` included for `n = 1`.
pub fn least_irreducible(p: u32, n: usize) -> MonicPoly {
    let count = (p as u64).pow(n as u32);
    (0..count)
        .map(|code| MonicPoly::from_code(p, n, code))
        .find(|f| n == 1 || (f.constant_term() != 0 && f.is_irreducible()))
        .expect("irreducibles exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = FiniteField::new(2, 1).unwrap();
        assert_eq!(f.generator(), 1);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn f4_generator_and_frobenius() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus().coeffs(), &[1, 1, 1]);
        let g = f.generator();
        assert_eq!(f.mul(g, g), f.add(g, 1));
        let g2 = f.mul(g, g);
        assert_eq!(f.frobenius(g), g2);
        assert_eq!(f.frobenius(g2), g);
    }

    #[test]
    fn discrete_log_round_trip() {
        for (p, n) in [(3, 2), (2, 4), (5, 2)] {
            let f = FiniteField::new(p, n).unwrap();
            let mut x = 1;
            for k in 0..f.order() - 1 {
                assert_eq!(f.discrete_log(x), Some(k));
                x = f.mul(x, f.generator());
            }
            assert_eq!(x, 1);
        }
    }

    #[test]
    fn field_axioms_spot_check() {
        let f = FiniteField::new(3, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inverse(a).unwrap()), 1);
            }
            for b in f.elements().step_by(5) {
                // Frobenius is additive and multiplicative
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
            }
        }
        // order n
        for a in f.elements() {
            let mut x = a;
            for _ in 0..3 {
                x = f.frobenius(x);
            }
            assert_eq!(x, a);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FiniteField::new(2, 21),
            Err(Error::CapExceeded { .. })
        ));
    }
}
