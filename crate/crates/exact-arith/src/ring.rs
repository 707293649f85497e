use crate::{is_prime_u64, mul_mod, pow_mod, ArithError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// A commutative ring descriptor. Elements are plain values; all arithmetic
/// goes through the descriptor, so one element type can serve several rings
/// (u64 residues mod different moduli, say).
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The field Q with `BigRational` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigRational) -> String {
        crate::format_rational(a)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// The prime field F_q, q < 2^63.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, ArithError> {
        if q >= 1 << 63 || !is_prime_u64(q) {
            return Err(ArithError::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn elem(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    /// Reduces a rational whose denominator is a unit mod q.
    pub fn from_rational(&self, x: &BigRational) -> Option<u64> {
        let d = self.from_int(x.denom());
        self.inv(&d)
            .map(|di| self.mul(&self.from_int(x.numer()), &di))
    }

    /// Tonelli-Shanks. `None` for non-residues.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let q = self.q;
        let a = a % q;
        if a == 0 {
            return Some(0);
        }
        if q == 2 {
            return Some(a);
        }
        if pow_mod(a, (q - 1) / 2, q) != 1 {
            return None;
        }
        let (mut s, mut e) = (q - 1, 0u32);
        while s % 2 == 0 {
            s /= 2;
            e += 1;
        }
        let mut z = 2;
        while pow_mod(z, (q - 1) / 2, q) != q - 1 {
            z += 1;
        }
        let mut x = pow_mod(a, s.div_ceil(2), q);
        let mut b = pow_mod(a, s, q);
        let mut g = pow_mod(z, s, q);
        let mut r = e;
        while b != 1 {
            let mut m = 0;
            let mut t = b;
            while t != 1 {
                t = mul_mod(t, t, q);
                m += 1;
            }
            let gs = pow_mod(g, 1 << (r - m - 1), q);
            x = mul_mod(x, gs, q);
            g = mul_mod(gs, gs, q);
            b = mul_mod(b, g, q);
            r = m;
        }
        Some(x)
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.q)).to_u64().unwrap()
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.q)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn pow(&self, a: &u64, e: u64) -> u64 {
        pow_mod(*a, e, self.q)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| pow_mod(*a, self.q - 2, self.q))
    }
}

/// Z/p^N Z, the truncation of Z_p at precision N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zpn {
    p: u64,
    n: u32,
    modulus: u64,
}

impl Zpn {
    pub fn new(p: u64, n: u32) -> Result<Self, ArithError> {
        if !is_prime_u64(p) {
            return Err(ArithError::NotPrime(p));
        }
        if n == 0 {
            return Err(ArithError::InsufficientPrecision(0));
        }
        let modulus = p
            .checked_pow(n)
            .filter(|m| *m < 1 << 62)
            .ok_or(ArithError::ModulusTooLarge { p, n })?;
        Ok(Zpn { p, n, modulus })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Same prime, precision lowered by `k` digits.
    pub fn lower(&self, k: u32) -> Result<Zpn, ArithError> {
        if k >= self.n {
            return Err(ArithError::InsufficientPrecision(self.n));
        }
        Zpn::new(self.p, self.n - k)
    }

    /// Same prime, one more digit.
    pub fn raise(&self) -> Result<Zpn, ArithError> {
        Zpn::new(self.p, self.n + 1)
    }

    /// Image of an element of this ring in a ring of lower (or equal) precision.
    pub fn reduce_to(&self, a: u64, target: &Zpn) -> u64 {
        debug_assert!(target.p == self.p && target.n <= self.n);
        a % target.modulus
    }

    /// Exact division by p of a residue known to be divisible by p; the
    /// result lives one digit lower.
    pub fn div_p(&self, a: u64) -> Option<u64> {
        a.is_multiple_of(self.p).then(|| a / self.p)
    }

    pub fn from_rational(&self, x: &BigRational) -> Result<u64, ArithError> {
        let p = BigInt::from(self.p);
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        // BigRational is reduced, so p cannot divide both.
        if (&den % &p).is_zero() {
            return Err(ArithError::NegativeValuation);
        }
        let m = BigInt::from(self.modulus);
        num = num.mod_floor(&m);
        den = den.mod_floor(&m);
        let inv = mod_inverse(&den, &m).ok_or(ArithError::NegativeValuation)?;
        Ok((num * inv).mod_floor(&m).to_u64().unwrap())
    }

    pub fn is_unit(&self, a: &u64) -> bool {
        !(*a).is_multiple_of(self.p)
    }

    pub fn inv_unit(&self, a: &u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        mod_inverse(&BigInt::from(*a), &BigInt::from(self.modulus)).map(|v| v.to_u64().unwrap())
    }

    /// Signed representative in (-p^N/2, p^N/2].
    pub fn balanced(&self, a: u64) -> i64 {
        if a > self.modulus / 2 {
            a as i64 - self.modulus as i64
        } else {
            a as i64
        }
    }
}

impl Ring for Zpn {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap()
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.modulus)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn format(&self, a: &u64) -> String {
        format!("{} mod {}^{}", a, self.p, self.n)
    }
    fn pow(&self, a: &u64, e: u64) -> u64 {
        pow_mod(*a, e, self.modulus)
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.abs().is_one() {
        Some((e.x * e.gcd.signum()).mod_floor(m))
    } else {
        None
    }
}
