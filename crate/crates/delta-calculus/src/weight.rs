use crate::DeltaError;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Element a_0 + a_1 φ + ... + a_n φ^n of Z[φ], trailing coefficient nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(mut coeffs: Vec<i64>) -> Weight {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Weight(coeffs)
    }

    pub fn zero() -> Weight {
        Weight(Vec::new())
    }

    pub fn int(a: i64) -> Weight {
        Weight::new(vec![a])
    }

    /// a·φ^k.
    pub fn phi_pow(k: usize, a: i64) -> Weight {
        let mut v = vec![0; k + 1];
        v[k] = a;
        Weight::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn ord(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// w ∈ W_+.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// Partial order: self ≤ other iff other − self ∈ W_+.
    pub fn leq(&self, other: &Weight) -> bool {
        (other - self).is_nonnegative()
    }

    /// Value at φ = p.
    pub fn eval(&self, p: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &a| acc * p + a)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        let n = self.0.len().max(o.0.len());
        Weight::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        self + &(-o)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul for &Weight {
    type Output = Weight;
    fn mul(self, o: &Weight) -> Weight {
        if self.is_zero() || o.is_zero() {
            return Weight::zero();
        }
        let mut v = vec![0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Weight::new(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = DeltaError;
    fn from_str(s: &str) -> Result<Weight, DeltaError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| DeltaError::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Weight::zero());
        }
        let coeffs = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| DeltaError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Weight::new(coeffs))
    }
}
