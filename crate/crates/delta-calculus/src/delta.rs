use crate::DeltaError;
use exact_arith::{binomial, Rationals, Ring, Zpn};
use multipoly::{Monomial, MultiPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use std::collections::HashMap;

/// φ on a δ-polynomial ring: v^{(l)} ↦ (v^{(l)})^p + p·v^{(l+1)}, identity on
/// coefficients.
pub fn frobenius_lift<R: Ring>(f: &MultiPoly<R>, p: u64) -> MultiPoly<R> {
    let ring = f.ring().clone();
    let pc = ring.from_int(&BigInt::from(p));
    f.substitute_with(
        |v| {
            let x = MultiPoly::var(ring.clone(), v);
            Some(&x.pow(p as u32) + &MultiPoly::var(ring.clone(), v.shifted(1)).scale(&pc))
        },
        None,
    )
    .expect("every variable has an image")
}

/// Coefficientwise exact division by p, landing one digit lower.
fn div_p_poly(f: &MultiPoly<Zpn>) -> Result<MultiPoly<Zpn>, DeltaError> {
    let ring = f.ring();
    let low = ring.lower(1).map_err(|_| DeltaError::PrecisionExhausted)?;
    f.try_map_coeffs(low, |c| ring.div_p(*c).ok_or(DeltaError::NotDivisible))
}

fn lower_poly(f: &MultiPoly<Zpn>) -> Result<MultiPoly<Zpn>, DeltaError> {
    let ring = f.ring();
    let low = ring.lower(1).map_err(|_| DeltaError::PrecisionExhausted)?;
    Ok(f.map_coeffs(low, |c| ring.reduce_to(*c, &low)))
}

/// δF = (φ(F) − F^p)/p, computed in one step. Input at precision N+1, output at N.
pub fn delta_via_lift(f: &MultiPoly<Zpn>) -> Result<MultiPoly<Zpn>, DeltaError> {
    let p = f.ring().prime();
    if f.ring().precision() < 2 {
        return Err(DeltaError::PrecisionExhausted);
    }
    div_p_poly(&(&frobenius_lift(f, p) - &f.pow(p as u32)))
}

/// The canonical p-derivation with δ v^{(l)} = v^{(l+1)}, built from the
/// sum and product rules and the Fermat quotient on coefficients.
/// Input at precision N+1, output at precision N.
pub fn canonical_delta(f: &MultiPoly<Zpn>) -> Result<MultiPoly<Zpn>, DeltaError> {
    if f.ring().precision() < 2 {
        return Err(DeltaError::PrecisionExhausted);
    }
    let mut ctx = DeltaCtx {
        ring: *f.ring(),
        memo: HashMap::new(),
    };
    let terms: Vec<(Monomial, u64)> = f.terms().map(|(m, c)| (m.clone(), *c)).collect();
    let d = ctx.delta_sum(&terms);
    lower_poly(&d)
}

/// Values below are lifts to Z/p^{N+1} of quantities only meaningful mod p^N;
/// every formula used is stable under changing the lift by p^N.
struct DeltaCtx {
    ring: Zpn,
    memo: HashMap<Monomial, MultiPoly<Zpn>>,
}

impl DeltaCtx {
    fn p(&self) -> u64 {
        self.ring.prime()
    }

    fn poly(&self, terms: &[(Monomial, u64)]) -> MultiPoly<Zpn> {
        MultiPoly::from_terms(self.ring, terms.iter().cloned())
    }

    fn delta_sum(&mut self, terms: &[(Monomial, u64)]) -> MultiPoly<Zpn> {
        match terms.len() {
            0 => MultiPoly::zero(self.ring),
            1 => self.delta_term(&terms[0].0, terms[0].1),
            n => {
                let (l, r) = terms.split_at(n / 2);
                let dl = self.delta_sum(l);
                let dr = self.delta_sum(r);
                let c = cp_poly(&self.poly(l), &self.poly(r), self.p());
                &(&dl + &dr) + &c
            }
        }
    }

    fn delta_const(&self, c: u64) -> u64 {
        let r = &self.ring;
        r.div_p(r.sub(&c, &r.pow(&c, self.p())))
            .expect("c - c^p is divisible by p")
    }

    fn delta_term(&mut self, m: &Monomial, c: u64) -> MultiPoly<Zpn> {
        let p = self.p();
        let r = self.ring;
        let dc = self.delta_const(c);
        if m.degree() == 0 {
            return MultiPoly::constant(r, dc);
        }
        let dm = self.delta_monomial(m);
        let cp = r.pow(&c, p);
        let mp = MultiPoly::monomial(r, m.clone(), r.one()).pow(p as u32);
        // δ(cm) = c^p δm + m^p δc + p δc δm
        let a = dm.scale(&cp);
        let b = mp.scale(&dc);
        let e = dm.scale(&r.mul(&dc, &r.from_i64(p as i64)));
        &(&a + &b) + &e
    }

    fn delta_monomial(&mut self, m: &Monomial) -> MultiPoly<Zpn> {
        if let Some(d) = self.memo.get(m) {
            return d.clone();
        }
        let r = self.ring;
        let p = self.p();
        let fs = m.factors();
        let out = if fs.len() == 1 && fs[0].1 == 1 {
            MultiPoly::var(r, fs[0].0.shifted(1))
        } else {
            // Split off one factor of the first variable.
            let v = fs[0].0;
            let x = Monomial::var(v);
            let rest = Monomial::from_factors(
                fs.iter().map(|&(w, e)| (w, if w == v { e - 1 } else { e })),
            );
            let dx = MultiPoly::var(r, v.shifted(1));
            let dy = self.delta_monomial(&rest);
            let xp = MultiPoly::monomial(r, x, r.one()).pow(p as u32);
            let yp = MultiPoly::monomial(r, rest, r.one()).pow(p as u32);
            let pc = r.from_i64(p as i64);
            &(&(&xp * &dy) + &(&yp * &dx)) + &(&dx * &dy).scale(&pc)
        };
        self.memo.insert(m.clone(), out.clone());
        out
    }
}

/// C_p(x, y) = (x^p + y^p − (x + y)^p)/p as a polynomial with integer coefficients.
pub fn cp_poly<R: Ring>(x: &MultiPoly<R>, y: &MultiPoly<R>, p: u64) -> MultiPoly<R> {
    let ring = x.ring().clone();
    let mut out = MultiPoly::zero(ring.clone());
    let mut xk = vec![MultiPoly::one(ring.clone())];
    let mut yk = vec![MultiPoly::one(ring.clone())];
    for k in 1..p as usize {
        xk.push(&xk[k - 1] * x);
        yk.push(&yk[k - 1] * y);
    }
    for k in 1..p {
        let c: BigInt = -binomial(p, k) / BigInt::from(p);
        out = &out + &(&xk[k as usize] * &yk[(p - k) as usize]).scale(&ring.from_int(&c));
    }
    out
}

/// δ over Q: (φ(F) − F^p)/p exactly.
pub fn canonical_delta_rational(f: &MultiPoly<Rationals>, p: u64) -> MultiPoly<Rationals> {
    let lifted = frobenius_lift(f, p);
    let inv_p = BigRational::new(BigInt::from(1), BigInt::from(p));
    (&lifted - &f.pow(p as u32)).scale(&inv_p)
}

pub fn is_p_integral(f: &MultiPoly<Rationals>, p: u64) -> bool {
    let p = BigInt::from(p);
    f.terms().all(|(_, c)| !c.denom().is_multiple_of(&p))
}

/// {b1, b2}_δ = (b1^p φ(b2) − b2^p φ(b1))/p over Q.
///
/// Fails with `NotDivisible` when the inputs are p-integral but the quotient
/// is not, which happens exactly when the division is not exact over Z_(p).
pub fn delta_bracket(
    b1: &MultiPoly<Rationals>,
    b2: &MultiPoly<Rationals>,
    p: u64,
) -> Result<MultiPoly<Rationals>, DeltaError> {
    let num = &(&b1.pow(p as u32) * &frobenius_lift(b2, p))
        - &(&b2.pow(p as u32) * &frobenius_lift(b1, p));
    let out = num.scale(&BigRational::new(BigInt::from(1), BigInt::from(p)));
    if is_p_integral(b1, p) && is_p_integral(b2, p) && !is_p_integral(&out, p) {
        return Err(DeltaError::NotDivisible);
    }
    Ok(out)
}

/// The bracket over Z/p^{N+1}, landing in Z/p^N.
pub fn delta_bracket_padic(
    b1: &MultiPoly<Zpn>,
    b2: &MultiPoly<Zpn>,
) -> Result<MultiPoly<Zpn>, DeltaError> {
    if b1.ring() != b2.ring() {
        return Err(DeltaError::Poly(multipoly::PolyError::DomainMismatch(
            format!("{:?}", b1.ring()),
            format!("{:?}", b2.ring()),
        )));
    }
    let p = b1.ring().prime();
    let num = &(&b1.pow(p as u32) * &frobenius_lift(b2, p))
        - &(&b2.pow(p as u32) * &frobenius_lift(b1, p));
    div_p_poly(&num)
}

/// Reduce a p-integral rational polynomial into Z/p^N.
pub fn reduce_poly(f: &MultiPoly<Rationals>, ring: Zpn) -> Result<MultiPoly<Zpn>, DeltaError> {
    f.try_map_coeffs(ring, |c| ring.from_rational(c).map_err(DeltaError::Arith))
}

#[cfg(test)]
mod tests {
    use super::*;
    use multipoly::VarId;

    fn zp(p: u64, n: u32) -> Zpn {
        Zpn::new(p, n).unwrap()
    }

    #[test]
    fn delta_of_variable_and_constants() {
        let r = zp(3, 3);
        let y = MultiPoly::var(r, VarId::z(0, 0));
        let d = canonical_delta(&y).unwrap();
        assert_eq!(d, MultiPoly::var(zp(3, 2), VarId::z(0, 1)));
        for c in [0, 1] {
            assert!(canonical_delta(&MultiPoly::from_int(r, c))
                .unwrap()
                .is_zero());
        }
        assert_eq!(
            canonical_delta(&MultiPoly::from_int(zp(3, 1), 1)),
            Err(DeltaError::PrecisionExhausted)
        );
    }

    #[test]
    fn frobenius_on_constants() {
        for p in [2u64, 3, 5, 7] {
            let two = MultiPoly::from_int(Rationals, 2);
            assert_eq!(frobenius_lift(&two, p), two);
        }
    }
}
