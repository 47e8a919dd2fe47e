//! Exact arithmetic in `Q(ζ_e)` and reduction to finite fields.
//!
//! A [`Cyclotomic`] is stored in the power basis `1, ζ, …, ζ^{φ(e)-1}` as an
//! integer numerator vector over one positive common denominator, reduced to
//! lowest terms. Values whose numbers fit in `i64` use machine integers and
//! promote to `BigInt` when an operation overflows.

mod field;
mod finite;
mod reduction;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{euler_phi, lcm};
use crate::error::{Error, Result};

pub use crate::arith::p_valuation_of_rational;
pub use field::{cyclotomic_polynomial, CycloField};
pub use finite::{FiniteField, Fq};
pub use reduction::{embedding_check, reduce_mod_p, ModpReduction};

#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Small { nums: Box<[i64]>, den: i64 },
    Big { nums: Box<[BigInt]>, den: BigInt },
}

/// Numerators and a denominator before canonicalization.
struct Raw<T> {
    nums: Vec<T>,
    den: T,
}

trait Int:
    Integer + Signed + Clone + CheckedAdd + CheckedSub + CheckedMul + From<i64>
{
}
impl Int for i128 {}
impl Int for BigInt {}

/// Reduces `v` modulo `Φ_e` in place and truncates it to `φ(e)` entries.
fn reduce_poly<T: Int>(f: &CycloField, v: &mut Vec<T>) -> Option<()> {
    for d in (f.phi..v.len()).rev() {
        let c = std::mem::replace(&mut v[d], T::zero());
        if c.is_zero() {
            continue;
        }
        for &(i, a) in &f.lower {
            let t = c.checked_mul(&T::from(a))?;
            let slot = &mut v[d - f.phi + i];
            *slot = slot.checked_sub(&t)?;
        }
    }
    v.resize(f.phi, T::zero());
    Some(())
}

fn normalize<T: Int>(mut raw: Raw<T>) -> Raw<T> {
    if raw.nums.iter().all(Zero::is_zero) {
        raw.den = T::one();
        return raw;
    }
    let mut g = raw.den.clone();
    for x in &raw.nums {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if raw.den.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        raw.nums.iter_mut().for_each(|x| *x = x.div_floor(&g));
        raw.den = raw.den.div_floor(&g);
    }
    raw
}

fn add_raw<T: Int>(a: &Raw<T>, b: &Raw<T>, sign: bool) -> Option<Raw<T>> {
    let g = a.den.gcd(&b.den);
    let fa = b.den.div_floor(&g);
    let fb = a.den.div_floor(&g);
    let den = a.den.checked_mul(&fa)?;
    let nums = a
        .nums
        .iter()
        .zip(&b.nums)
        .map(|(x, y)| {
            let l = x.checked_mul(&fa)?;
            let r = y.checked_mul(&fb)?;
            if sign {
                l.checked_add(&r)
            } else {
                l.checked_sub(&r)
            }
        })
        .collect::<Option<Vec<T>>>()?;
    Some(Raw { nums, den })
}

fn convolve_into<T: Int>(acc: &mut [T], a: &[T], b: &[T], weight: &T) -> Option<()> {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let xw = x.checked_mul(weight)?;
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            acc[i + j] = acc[i + j].checked_add(&xw.checked_mul(y)?)?;
        }
    }
    Some(())
}

fn mul_raw<T: Int>(f: &CycloField, a: &Raw<T>, b: &Raw<T>) -> Option<Raw<T>> {
    let mut out = vec![T::zero(); (2 * f.phi).saturating_sub(1).max(1)];
    convolve_into(&mut out, &a.nums, &b.nums, &T::one())?;
    reduce_poly(f, &mut out)?;
    Some(Raw {
        nums: out,
        den: a.den.checked_mul(&b.den)?,
    })
}

/// Sends `ζ^i` to `ζ_{target}^{i·step mod target}` and reduces modulo
/// `Φ_target`.
fn spread_raw<T: Int>(target: &CycloField, a: &Raw<T>, step: u64) -> Option<Raw<T>> {
    let e = target.e as u64;
    let mut out = vec![T::zero(); e as usize];
    for (i, x) in a.nums.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let j = ((i as u64 * step) % e) as usize;
        out[j] = out[j].checked_add(x)?;
    }
    reduce_poly(target, &mut out)?;
    Some(Raw {
        nums: out,
        den: a.den.clone(),
    })
}

impl Repr {
    fn small(&self) -> Option<Raw<i128>> {
        match self {
            Repr::Small { nums, den } => Some(Raw {
                nums: nums.iter().map(|&x| x as i128).collect(),
                den: *den as i128,
            }),
            Repr::Big { .. } => None,
        }
    }

    fn big(&self) -> Raw<BigInt> {
        match self {
            Repr::Small { nums, den } => Raw {
                nums: nums.iter().map(|&x| BigInt::from(x)).collect(),
                den: BigInt::from(*den),
            },
            Repr::Big { nums, den } => Raw {
                nums: nums.to_vec(),
                den: den.clone(),
            },
        }
    }

    fn from_small(raw: Raw<i128>) -> Repr {
        let raw = normalize(raw);
        let fits = |x: &i128| i64::try_from(*x).is_ok();
        if fits(&raw.den) && raw.nums.iter().all(fits) {
            Repr::Small {
                nums: raw.nums.iter().map(|&x| x as i64).collect(),
                den: raw.den as i64,
            }
        } else {
            Repr::Big {
                nums: raw.nums.into_iter().map(BigInt::from).collect(),
                den: BigInt::from(raw.den),
            }
        }
    }

    fn from_big(raw: Raw<BigInt>) -> Repr {
        let raw = normalize(raw);
        let den = raw.den.to_i64();
        let nums: Option<Vec<i64>> = raw.nums.iter().map(ToPrimitive::to_i64).collect();
        match (den, nums) {
            (Some(den), Some(nums)) => Repr::Small {
                nums: nums.into(),
                den,
            },
            _ => Repr::Big {
                nums: raw.nums.into(),
                den: raw.den,
            },
        }
    }

    /// Runs `small` on machine integers when possible, otherwise `big`.
    fn apply(
        a: &Repr,
        b: &Repr,
        small: impl Fn(&Raw<i128>, &Raw<i128>) -> Option<Raw<i128>>,
        big: impl Fn(&Raw<BigInt>, &Raw<BigInt>) -> Option<Raw<BigInt>>,
    ) -> Repr {
        if let (Some(x), Some(y)) = (a.small(), b.small()) {
            if let Some(r) = small(&x, &y) {
                return Repr::from_small(r);
            }
        }
        Repr::from_big(big(&a.big(), &b.big()).expect("bigint arithmetic cannot overflow"))
    }

    fn apply1(
        a: &Repr,
        small: impl Fn(&Raw<i128>) -> Option<Raw<i128>>,
        big: impl Fn(&Raw<BigInt>) -> Option<Raw<BigInt>>,
    ) -> Repr {
        if let Some(x) = a.small() {
            if let Some(r) = small(&x) {
                return Repr::from_small(r);
            }
        }
        Repr::from_big(big(&a.big()).expect("bigint arithmetic cannot overflow"))
    }

    fn coeff(&self, i: usize) -> BigRational {
        match self {
            Repr::Small { nums, den } => BigRational::new(nums[i].into(), (*den).into()),
            Repr::Big { nums, den } => BigRational::new(nums[i].clone(), den.clone()),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Repr::Small { nums, .. } => nums.iter().all(|&x| x == 0),
            Repr::Big { nums, .. } => nums.iter().all(Zero::is_zero),
        }
    }
}

impl Cyclotomic {
    fn new(field: Arc<CycloField>, repr: Repr) -> Self {
        Cyclotomic { field, repr }
    }

    pub fn zero(e: u32) -> Self {
        Self::from_integer(e, 0)
    }

    pub fn one(e: u32) -> Self {
        Self::from_integer(e, 1)
    }

    pub fn from_integer(e: u32, n: i64) -> Self {
        let f = field::field(e);
        let mut nums = vec![0i64; f.phi];
        nums[0] = n;
        Self::new(
            f,
            Repr::Small {
                nums: nums.into(),
                den: 1,
            },
        )
    }

    pub fn from_rational(e: u32, q: &BigRational) -> Self {
        let f = field::field(e);
        let mut nums = vec![BigInt::zero(); f.phi];
        nums[0] = q.numer().clone();
        let repr = Repr::from_big(Raw {
            nums,
            den: q.denom().clone(),
        });
        Self::new(f, repr)
    }

    /// `ζ_e^k`.
    pub fn zeta(e: u32, k: i64) -> Self {
        let mut sums = vec![0i64; e as usize];
        sums[k.rem_euclid(e as i64) as usize] = 1;
        Self::from_exponent_sums(e, &sums)
    }

    /// `Σ_i c_i ζ_e^i` for `i < e`.
    pub fn from_exponent_sums(e: u32, c: &[i64]) -> Self {
        assert_eq!(c.len(), e as usize, "one coefficient per power of ζ_e");
        let f = field::field(e);
        let mut v: Vec<i128> = c.iter().map(|&x| x as i128).collect();
        let repr = match reduce_poly(&f, &mut v) {
            Some(()) => Repr::from_small(Raw { nums: v, den: 1 }),
            None => {
                let mut v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
                reduce_poly(&f, &mut v).expect("bigint arithmetic cannot overflow");
                Repr::from_big(Raw {
                    nums: v,
                    den: BigInt::one(),
                })
            }
        };
        Self::new(f, repr)
    }

    /// Builds a value from power-basis coefficients (length `φ(e)`).
    pub fn from_coefficients(e: u32, coeffs: &[BigRational]) -> Result<Self> {
        let f = field::field(e);
        if coeffs.len() != f.phi {
            return Err(Error::MalformedInput(format!(
                "conductor {e} needs {} coefficients, got {}",
                f.phi,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let nums = coeffs
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        Ok(Self::new(f, Repr::from_big(Raw { nums, den })))
    }

    pub fn conductor(&self) -> u32 {
        self.field.e
    }

    pub fn degree(&self) -> usize {
        self.field.phi
    }

    pub fn coefficient(&self, i: usize) -> BigRational {
        self.repr.coeff(i)
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        (0..self.field.phi).map(|i| self.repr.coeff(i)).collect()
    }

    pub fn denominator(&self) -> BigInt {
        match &self.repr {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big { den, .. } => den.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { nums, .. } => nums[1..].iter().all(|&x| x == 0),
            Repr::Big { nums, .. } => nums[1..].iter().all(Zero::is_zero),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.repr.coeff(0))
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Lifts both operands to a common conductor.
    fn aligned(&self, other: &Self) -> (Self, Self) {
        let e = lcm(self.conductor() as u64, other.conductor() as u64) as u32;
        (self.lift(e), other.lift(e))
    }

    /// The same number seen in `Q(ζ_target)`; `target` must be a multiple of
    /// the conductor.
    pub fn lift(&self, target: u32) -> Self {
        let e = self.conductor();
        if target == e {
            return self.clone();
        }
        assert!(target % e == 0, "cannot lift from conductor {e} to {target}");
        let f = field::field(target);
        let step = (target / e) as u64;
        let repr = Repr::apply1(
            &self.repr,
            |x| spread_raw(&f, x, step),
            |x| spread_raw(&f, x, step),
        );
        Self::new(f, repr)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_signed(other, true)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_signed(other, false)
    }

    fn add_signed(&self, other: &Self, sign: bool) -> Self {
        if self.conductor() != other.conductor() {
            let (a, b) = self.aligned(other);
            return a.add_signed(&b, sign);
        }
        let repr = Repr::apply(
            &self.repr,
            &other.repr,
            |x, y| add_raw(x, y, sign),
            |x, y| add_raw(x, y, sign),
        );
        Self::new(self.field.clone(), repr)
    }

    pub fn neg(&self) -> Self {
        Self::zero(self.conductor()).sub(self)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.conductor() != other.conductor() {
            let (a, b) = self.aligned(other);
            return a.mul(&b);
        }
        let f = &self.field;
        let repr = Repr::apply(
            &self.repr,
            &other.repr,
            |x, y| mul_raw(f, x, y),
            |x, y| mul_raw(f, x, y),
        );
        Self::new(f.clone(), repr)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.mul(&Self::from_rational(self.conductor(), q))
    }

    pub fn mul_int(&self, n: i64) -> Self {
        self.mul(&Self::from_integer(self.conductor(), n))
    }

    pub fn div_rational(&self, q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(self.scale(&q.recip()))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(self.conductor());
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        acc
    }

    /// The Galois automorphism `ζ ↦ ζ^k`, `gcd(k, e) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let e = self.conductor() as i64;
        debug_assert_eq!(k.gcd(&e), 1, "Galois twist must be a unit mod e");
        let step = k.rem_euclid(e) as u64;
        let f = &self.field;
        let repr = Repr::apply1(
            &self.repr,
            |x| spread_raw(f, x, step),
            |x| spread_raw(f, x, step),
        );
        Self::new(f.clone(), repr)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse: the product of the other Galois conjugates
    /// divided by the (rational) norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(self.conductor(), &q.recip()));
        }
        let e = self.conductor() as i64;
        let others = (2..e)
            .filter(|k| k.gcd(&e) == 1)
            .fold(Self::one(self.conductor()), |acc, k| acc.mul(&self.galois(k)));
        let norm = self
            .mul(&others)
            .to_rational()
            .ok_or_else(|| Error::Internal("field norm is not rational".into()))?;
        others.div_rational(&norm)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Sum over the Galois orbit of `self` (one term per unit mod `e`).
    pub fn galois_trace(&self) -> Self {
        let e = self.conductor() as i64;
        (1..=e.max(1))
            .filter(|k| k.gcd(&e) == 1)
            .fold(Self::zero(self.conductor()), |acc, k| acc.add(&self.galois(k)))
    }

    /// `Σ_k w_k a_k conj(b_k)`, accumulated unreduced and reduced once.
    /// The `b` entries are conjugated by the caller.
    pub fn weighted_dot(weights: &[i64], a: &[Cyclotomic], b_conj: &[Cyclotomic]) -> Cyclotomic {
        assert!(weights.len() == a.len() && a.len() == b_conj.len());
        let e = a.first().map_or(1, |x| x.conductor());
        let f = field::field(e);
        let integral_small = |x: &Cyclotomic| {
            x.conductor() == e && matches!(x.repr, Repr::Small { den: 1, .. })
        };
        if a.iter().chain(b_conj).all(integral_small) {
            let mut acc = vec![0i128; (2 * f.phi).saturating_sub(1).max(1)];
            let ok = (0..a.len()).all(|k| {
                let (Repr::Small { nums: x, .. }, Repr::Small { nums: y, .. }) =
                    (&a[k].repr, &b_conj[k].repr)
                else {
                    unreachable!()
                };
                let x: Vec<i128> = x.iter().map(|&v| v as i128).collect();
                let y: Vec<i128> = y.iter().map(|&v| v as i128).collect();
                convolve_into(&mut acc, &x, &y, &(weights[k] as i128)).is_some()
            });
            if ok && reduce_poly(&f, &mut acc).is_some() {
                return Self::new(f, Repr::from_small(Raw { nums: acc, den: 1 }));
            }
        }
        (0..a.len()).fold(Self::zero(e), |acc, k| {
            acc.add(&a[k].mul(&b_conj[k]).mul_int(weights[k]))
        })
    }

    fn cmp_same_conductor(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Small { nums: a, den: da }, Repr::Small { nums: b, den: db }) => a
                .iter()
                .zip(b.iter())
                .map(|(&x, &y)| (x as i128 * *db as i128).cmp(&(y as i128 * *da as i128)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal),
            _ => (0..self.field.phi)
                .map(|i| self.repr.coeff(i).cmp(&other.repr.coeff(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal),
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            self.repr == other.repr
        } else {
            let (a, b) = self.aligned(other);
            a.repr == b.repr
        }
    }
}

impl Eq for Cyclotomic {}

/// Lexicographic on power-basis coefficients after lifting to a common
/// conductor. A fixed total order, not a field order.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.conductor() == other.conductor() {
            self.cmp_same_conductor(other)
        } else {
            let (a, b) = self.aligned(other);
            a.cmp_same_conductor(&b)
        }
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                _ if c.is_one() => format!("z{}^{i}", self.conductor()),
                _ => format!("{c}*z{}^{i}", self.conductor()),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            conductor: self.conductor(),
            coeffs: self.coefficients().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        if w.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        if w.coeffs.len() as u64 != euler_phi(w.conductor as u64) {
            return Err(D::Error::custom(format!(
                "conductor {} needs {} coefficients",
                w.conductor,
                euler_phi(w.conductor as u64)
            )));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<BigRational>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| D::Error::custom(format!("bad rational: {e}")))?;
        Cyclotomic::from_coefficients(w.conductor, &coeffs).map_err(D::Error::custom)
    }
}
