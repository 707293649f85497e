use crate::QuadError;
use exact_arith::binomial;
use num_bigint::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertVariant {
    /// Invariants of (r+1)-tuples of binary quadratic forms, graded by s.
    Even,
    /// Homogeneous coordinate ring of the Grassmannian of 2-planes in K^{r+1}.
    Grassmannian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<BigInt>,
    /// The series is numerator / (1 − x)^denominator_power.
    pub denominator_power: u32,
}

impl HilbertSeries {
    /// First `k` coefficients of the expansion.
    pub fn coefficients(&self, k: usize) -> Vec<BigInt> {
        let d = self.denominator_power as u64;
        (0..k)
            .map(|n| {
                self.numerator
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i <= n)
                    .map(|(i, h)| {
                        let m = (n - i) as u64;
                        // [x^m] (1 − x)^{-d} = binom(m + d − 1, d − 1); d = 0 gives δ_{m0}.
                        let c = if d == 0 {
                            BigInt::from((m == 0) as u8)
                        } else {
                            binomial(m + d - 1, d - 1)
                        };
                        h * c
                    })
                    .sum()
            })
            .collect()
    }
}

/// Closed forms for g = 2.
pub fn hilbert_closed(r: usize, variant: HilbertVariant) -> Result<HilbertSeries, QuadError> {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    match variant {
        HilbertVariant::Even => {
            let (num, d): (&[i64], u32) = match r {
                0 => (&[1], 1),
                1 => (&[1], 3),
                2 => (&[1], 6),
                3 => (&[1, 1, 1, 1], 9),
                4 => (&[1, 3, 6, 10], 12),
                _ => return Err(QuadError::UnsupportedR(r)),
            };
            Ok(HilbertSeries {
                numerator: ints(num),
                denominator_power: d,
            })
        }
        HilbertVariant::Grassmannian => {
            if r < 2 {
                return Err(QuadError::UnsupportedR(r));
            }
            // Gr(2, n), n = r + 1: h_k = Narayana N(n − 2, k + 1).
            let m = (r - 1) as u64;
            let numerator = (0..m)
                .map(|k| binomial(m, k + 1) * binomial(m, k) / BigInt::from(m))
                .collect();
            Ok(HilbertSeries {
                numerator,
                denominator_power: 2 * r as u32 - 1,
            })
        }
    }
}
