//! `F_{p^k}` as `F_p[x]/(f)` for a fixed monic irreducible `f`.
//!
//! Elements are encoded as integers `Σ c_i p^i` from their coefficient
//! vectors (lowest degree first), which also fixes what "least" means for
//! polynomials and primitive elements.

use crate::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};
use crate::modp::PrimeField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    fp: PrimeField,
    k: u32,
    size: u64,
    /// Monic, lowest degree first, length `k + 1`.
    modulus: Vec<u64>,
}

impl FiniteField {
    /// The field of order `p^k` built on the `rank`-th least monic
    /// irreducible polynomial of degree `k` (rank 0 is the default).
    pub fn new(p: u64, k: u32, rank: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::MalformedInput(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::MalformedInput("field degree must be positive".into()));
        }
        let size = p
            .checked_pow(k)
            .filter(|&q| q < 1 << 40)
            .ok_or_else(|| Error::ResourceExceeded {
                what: format!("finite field of order {p}^{k}"),
                cap: 1 << 40,
            })?;
        let fp = PrimeField::new(p);
        let modulus = (0..size)
            .map(|code| {
                let mut f = decode(p, k, code);
                f.push(1);
                f
            })
            .filter(|f| is_irreducible(&fp, f))
            .nth(rank)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "fewer than {} irreducible polynomials of degree {k} over F_{p}",
                    rank + 1
                ))
            })?;
        Ok(FiniteField {
            fp,
            k,
            size,
            modulus,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.fp.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn digits(&self, a: Fq) -> Vec<u64> {
        decode(self.fp.p, self.k, a.0)
    }

    fn encode(&self, digits: &[u64]) -> Fq {
        Fq(digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.fp.p + d))
    }

    pub fn from_int(&self, n: i64) -> Fq {
        Fq(self.fp.from_i64(n))
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return Fq(self.fp.add(a.0, b.0));
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(&u, &v)| self.fp.add(u, v)).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let s: Vec<u64> = self.digits(a).iter().map(|&u| self.fp.neg(u)).collect();
        self.encode(&s)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    /// Multiplication by an element of the prime field.
    pub fn scale(&self, a: Fq, c: u64) -> Fq {
        let c = c % self.fp.p;
        let s: Vec<u64> = self.digits(a).iter().map(|&u| self.fp.mul(u, c)).collect();
        self.encode(&s)
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return Fq(self.fp.mul(a.0, b.0));
        }
        let prod = self.fp.poly_mul(&self.digits(a), &self.digits(b));
        let mut r = self.fp.poly_rem(&prod, &self.modulus);
        r.resize(self.k as usize, 0);
        self.encode(&r)
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut acc = Fq::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::Arithmetic("inverse of zero in a finite field".into()));
        }
        Ok(self.pow(a, self.size - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fq) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut n = self.size - 1;
        for r in prime_divisors(self.size - 1) {
            while n % r == 0 && self.pow(a, n / r) == Fq::ONE {
                n /= r;
            }
        }
        n
    }

    /// Least element (in encoding order) generating the multiplicative group.
    pub fn primitive_element(&self) -> Fq {
        let n = self.size - 1;
        let primes = prime_divisors(n);
        (1..self.size)
            .map(Fq)
            .find(|&g| primes.iter().all(|&r| self.pow(g, n / r) != Fq::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

fn decode(p: u64, k: u32, mut code: u64) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

/// Rabin's test for a monic `f` of degree `k`.
fn is_irreducible(fp: &PrimeField, f: &[u64]) -> bool {
    let k = (f.len() - 1) as u64;
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^(p^j) mod f
    let frob = |j: u64| {
        (0..j).fold(x.clone(), |h, _| fp.poly_powmod(&h, fp.p, f))
    };
    if fp.poly_sub(&frob(k), &x).iter().any(|&c| c != 0) {
        return false;
    }
    prime_divisors(k).into_iter().all(|r| {
        let h = fp.poly_sub(&frob(k / r), &x);
        fp.poly_gcd(f, &h).len() == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_and_f81() {
        let f4 = FiniteField::new(2, 2, 0).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let g = f4.primitive_element();
        assert_eq!(f4.order(g), 3);
        let f81 = FiniteField::new(3, 4, 0).unwrap();
        assert_eq!(f81.order(f81.primitive_element()), 80);
        for a in 1..81 {
            let a = Fq(a);
            assert_eq!(f81.mul(a, f81.inv(a).unwrap()), Fq::ONE);
        }
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree 4 over F_2 is 3
        assert!(FiniteField::new(2, 4, 2).is_ok());
        assert!(FiniteField::new(2, 4, 3).is_err());
        // degree 2 over F_3: (9 - 3)/2 = 3
        assert!(FiniteField::new(3, 2, 2).is_ok());
        assert!(FiniteField::new(3, 2, 3).is_err());
    }

    #[test]
    fn distributive_on_f27() {
        let f = FiniteField::new(3, 3, 0).unwrap();
        for a in 0..27 {
            for b in 0..27 {
                for c in [0, 1, 5, 13, 26] {
                    let (a, b, c) = (Fq(a), Fq(b), Fq(c));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}
