//! Reduction `Z_(p)[ζ_e] → F_{p^k}` modulo one maximal ideal above `p`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::finite::{FiniteField, Fq};
use super::{Cyclotomic, Repr};
use crate::arith::{divisors, inv_mod, is_prime, multiplicative_order, valuation_u64};
use crate::error::{Error, Result};

/// `e = p^a·m` with `p ∤ m`; `ζ_e^{p^a}` (a primitive `m`-th root) is sent to
/// `ϑ`, so `ζ_e` goes to `ϑ^t` with `t·p^a ≡ 1 (mod m)`.
#[derive(Clone, Debug)]
pub struct ModpReduction {
    e: u32,
    p: u64,
    a: u32,
    m: u64,
    field: FiniteField,
    theta: Fq,
    /// Image of `ζ_e^i` for `i < φ(e)`.
    powers: Vec<Fq>,
    twist: u64,
}

impl ModpReduction {
    /// The default reduction: least irreducible polynomial, least primitive
    /// element `g`, `ϑ = g^((q-1)/m)`.
    pub fn new(e: u32, p: u64) -> Result<Self> {
        Self::with_choice(e, p, 0, 1)
    }

    /// A reduction built on the `rank`-th irreducible polynomial, with `ϑ`
    /// replaced by `ϑ^twist` (`gcd(twist, m) = 1`).
    pub fn with_choice(e: u32, p: u64, rank: usize, twist: u64) -> Result<Self> {
        if e == 0 {
            return Err(Error::MalformedInput("conductor must be positive".into()));
        }
        if !is_prime(p) {
            return Err(Error::MalformedInput(format!("{p} is not prime")));
        }
        let a = valuation_u64(e as u64, p);
        let m = e as u64 / p.pow(a);
        if num_integer::gcd(twist, m) != 1 {
            return Err(Error::MalformedInput(format!(
                "twist {twist} is not a unit modulo {m}"
            )));
        }
        let k = multiplicative_order(p % m, m) as u32;
        let field = FiniteField::new(p, k, rank)?;
        let g = field.primitive_element();
        let base = field.pow(g, (field.size() - 1) / m);
        let theta = field.pow(base, twist % m.max(1));
        let t = if m == 1 {
            0
        } else {
            inv_mod(p.pow(a) % m, m).expect("p is a unit mod m")
        };
        let zeta = field.pow(theta, t);
        let phi = super::field::field(e).phi;
        let mut powers = Vec::with_capacity(phi);
        let mut x = Fq::ONE;
        for _ in 0..phi {
            powers.push(x);
            x = field.mul(x, zeta);
        }
        Ok(ModpReduction {
            e,
            p,
            a,
            m,
            field,
            theta,
            powers,
            twist,
        })
    }

    /// Representatives `c` of `(Z/m)^× / ⟨p⟩`, least first: one twist per
    /// maximal ideal above `p`.
    pub fn ideal_twists(e: u32, p: u64) -> Vec<u64> {
        let m = e as u64 / p.pow(valuation_u64(e as u64, p));
        if m <= 2 {
            return vec![1];
        }
        let mut covered = vec![false; m as usize];
        let mut reps = Vec::new();
        for c in 1..m {
            if covered[c as usize] || num_integer::gcd(c, m) != 1 {
                continue;
            }
            reps.push(c);
            let mut x = c;
            while !covered[x as usize] {
                covered[x as usize] = true;
                x = x * p % m;
            }
        }
        reps
    }

    /// A reduction differing from the default: a second maximal ideal when
    /// there is one, otherwise a second defining polynomial, otherwise the
    /// default again.
    pub fn alternate(e: u32, p: u64) -> Result<Self> {
        if let Some(&c) = Self::ideal_twists(e, p).get(1) {
            return Self::with_choice(e, p, 0, c);
        }
        Self::with_choice(e, p, 1, 1).or_else(|_| Self::new(e, p))
    }

    pub fn conductor(&self) -> u32 {
        self.e
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `(a, m)` with `e = p^a·m`.
    pub fn split(&self) -> (u32, u64) {
        (self.a, self.m)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn theta(&self) -> Fq {
        self.theta
    }

    pub fn twist(&self) -> u64 {
        self.twist
    }
}

/// Whether `ϑ` has exact order `m`.
pub fn embedding_check(r: &ModpReduction) -> bool {
    let f = &r.field;
    f.pow(r.theta, r.m) == Fq::ONE
        && divisors(r.m)
            .into_iter()
            .filter(|&d| d != r.m)
            .all(|d| f.pow(r.theta, d) != Fq::ONE)
}

/// Image of `x` in `F_{p^k}`; `x` must have conductor dividing the
/// reduction's and coefficients with denominators prime to `p`.
pub fn reduce_mod_p(x: &Cyclotomic, r: &ModpReduction) -> Result<Fq> {
    if r.e % x.conductor() != 0 {
        return Err(Error::Precondition(format!(
            "value of conductor {} cannot be reduced through conductor {}",
            x.conductor(),
            r.e
        )));
    }
    let x = x.lift(r.e);
    let p = r.p;
    let f = &r.field;
    let non_integral = || Error::NonIntegral(format!("{x} has a denominator divisible by {p}"));
    let (nums, den): (Vec<u64>, u64) = match &x.repr {
        Repr::Small { nums, den } => (
            nums.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect(),
            (*den as u64) % p,
        ),
        Repr::Big { nums, den } => {
            let red = |v: &BigInt| {
                let pb = BigInt::from(p);
                (((v % &pb) + &pb) % &pb).to_u64().expect("residue fits")
            };
            (nums.iter().map(red).collect(), red(den))
        }
    };
    if den.is_zero() {
        return Err(non_integral());
    }
    let den_inv = inv_mod(den, p).ok_or_else(non_integral)?;
    let mut acc = Fq::ZERO;
    for (c, &z) in nums.iter().zip(&r.powers) {
        if *c != 0 {
            acc = f.add(acc, f.scale(z, c * den_inv % p));
        }
    }
    Ok(acc)
}
