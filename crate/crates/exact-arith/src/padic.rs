use crate::{binomial, ArithError, Ring, Zpn};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;
use std::str::FromStr;

/// An integer residue mod p^N that remembers p and N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedPadic {
    ring: Zpn,
    residue: u64,
}

impl TruncatedPadic {
    pub fn new(p: u64, n: u32, residue: impl Into<BigInt>) -> Result<Self, ArithError> {
        let ring = Zpn::new(p, n)?;
        Ok(Self::in_ring(ring, ring.from_int(&residue.into())))
    }

    pub fn in_ring(ring: Zpn, residue: u64) -> Self {
        TruncatedPadic {
            ring,
            residue: residue % ring.modulus(),
        }
    }

    pub fn zero(p: u64, n: u32) -> Result<Self, ArithError> {
        Self::new(p, n, 0)
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }

    pub fn precision(&self) -> u32 {
        self.ring.precision()
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn ring(&self) -> Zpn {
        self.ring
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.ring != other.ring {
            return Err(ArithError::PrecisionMismatch(
                format!("{}^{}", self.prime(), self.precision()),
                format!("{}^{}", other.prime(), other.precision()),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(Self::in_ring(
            self.ring,
            self.ring.add(&self.residue, &other.residue),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(Self::in_ring(
            self.ring,
            self.ring.sub(&self.residue, &other.residue),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(Self::in_ring(
            self.ring,
            self.ring.mul(&self.residue, &other.residue),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::in_ring(self.ring, self.ring.neg(&self.residue))
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::in_ring(self.ring, self.ring.pow(&self.residue, e))
    }

    /// Drops precision to `n` digits.
    pub fn truncate(&self, n: u32) -> Result<Self, ArithError> {
        if n > self.precision() || n == 0 {
            return Err(ArithError::InsufficientPrecision(n));
        }
        let ring = Zpn::new(self.prime(), n)?;
        Ok(Self::in_ring(ring, self.residue))
    }
}

impl fmt::Display for TruncatedPadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod {}^{}",
            self.residue,
            self.prime(),
            self.precision()
        )
    }
}

impl FromStr for TruncatedPadic {
    type Err = ArithError;

    /// Parses `"c mod p^N"`.
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let bad = || ArithError::Parse(s.to_string());
        let (c, rest) = s.split_once(" mod ").ok_or_else(bad)?;
        let (p, n) = rest.trim().split_once('^').ok_or_else(bad)?;
        let c = BigInt::from_str(c.trim()).map_err(|_| bad())?;
        let p = p.trim().parse::<u64>().map_err(|_| bad())?;
        let n = n.trim().parse::<u32>().map_err(|_| bad())?;
        Self::new(p, n, c)
    }
}

/// q mod p^N, for q of non-negative p-adic valuation.
pub fn rational_reduce(q: &BigRational, p: u64, n: u32) -> Result<TruncatedPadic, ArithError> {
    let ring = Zpn::new(p, n)?;
    Ok(TruncatedPadic::in_ring(ring, ring.from_rational(q)?))
}

/// The Fermat quotient (a - a^p)/p: an input known mod p^{N+1} gives an
/// output mod p^N.
pub fn fermat_quotient(a: &TruncatedPadic) -> Result<TruncatedPadic, ArithError> {
    let ring = a.ring();
    let out = ring.lower(1)?;
    let p = ring.prime();
    let diff = ring.sub(&a.residue(), &ring.pow(&a.residue(), p));
    let q = ring.div_p(diff).expect("a - a^p is divisible by p");
    Ok(TruncatedPadic::in_ring(out, q))
}

/// C_p(x, y) = (x^p + y^p - (x+y)^p)/p, evaluated through its integral
/// expansion -sum_{k=1}^{p-1} (binom(p,k)/p) x^k y^{p-k}.
pub fn cp_value(x: &TruncatedPadic, y: &TruncatedPadic) -> Result<TruncatedPadic, ArithError> {
    x.check(y)?;
    let ring = x.ring();
    let p = ring.prime();
    let mut acc = ring.zero();
    for k in 1..p {
        let c = ring.from_int(&(binomial(p, k) / BigInt::from(p)));
        let term = ring.mul(
            &c,
            &ring.mul(&ring.pow(&x.residue(), k), &ring.pow(&y.residue(), p - k)),
        );
        acc = ring.sub(&acc, &term);
    }
    Ok(TruncatedPadic::in_ring(ring, acc))
}

/// Number of terms of (1/p) log(1 + p u) needed mod p^N: the first n with
/// n - 1 - floor(log_p n) >= N is the first term that vanishes, and every
/// later term vanishes too.
pub fn log1p_scaled_cutoff(p: u64, n: u32) -> u64 {
    let mut k = 1u64;
    loop {
        let mut v = 0u64;
        let mut m = k;
        while m >= p {
            m /= p;
            v += 1;
        }
        if k - 1 - v >= n as u64 {
            return k;
        }
        k += 1;
    }
}

/// Coefficients c_1, ..., c_{n_max - 1} of (1/p) log(1 + p u) = sum c_k u^k,
/// c_k = (-1)^{k+1} p^{k-1}/k, reduced mod p^N. Index 0 of the result is c_1.
pub fn log1p_scaled_coeffs(ring: &Zpn) -> Vec<u64> {
    let p = ring.prime();
    let cutoff = log1p_scaled_cutoff(p, ring.precision());
    (1..cutoff)
        .map(|k| {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = BigRational::new(
                BigInt::from(sign) * BigInt::from(p).pow(k as u32 - 1),
                BigInt::from(k),
            );
            ring.from_rational(&c).expect("v_p(k) <= k - 1")
        })
        .collect()
}

/// (1/p) log(1 + p u) mod p^N.
pub fn padic_log1p_scaled(u: &TruncatedPadic) -> TruncatedPadic {
    let ring = u.ring();
    let mut acc = ring.zero();
    let mut power = ring.one();
    for c in log1p_scaled_coeffs(&ring) {
        power = ring.mul(&power, &u.residue());
        acc = ring.add(&acc, &ring.mul(&c, &power));
    }
    TruncatedPadic::in_ring(ring, acc)
}
