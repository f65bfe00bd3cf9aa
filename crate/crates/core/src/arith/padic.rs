//! p-adic scalars in O_K[1/p] with explicit absolute precision.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::cyclotomic::CyclotomicRational;
use super::int::{inv_mod, mul_mod, pow_mod};
use super::ring::{Elem, OkRing};
use crate::error::{Error, Result};

/// `p^shift * digits`, known modulo `p^prec`.
///
/// `shift` is never positive; when it is negative the digits form a unit,
/// so `shift` is then the exact valuation. Digits are stored modulo
/// `p^(prec - shift)`.
#[derive(Clone)]
pub struct PadicScalar {
    ring: Arc<OkRing>,
    shift: i32,
    digits: Elem,
    prec: i32,
}

impl PadicScalar {
    /// Build `p^shift * digits` at absolute precision `prec` and normalize.
    pub fn from_parts(ring: &Arc<OkRing>, shift: i32, digits: Elem, prec: i32) -> Self {
        let cap = ring.cap() as i32;
        if shift >= 0 {
            let prec = prec.min(cap);
            if prec <= shift || prec <= 0 {
                return Self::zero(ring, prec);
            }
            let k = prec as u32;
            let d = ring.reduce_raw(&digits, k);
            let d = ring.mul_p_raw(&d, shift as u32, k);
            return PadicScalar { ring: ring.clone(), shift: 0, digits: d, prec };
        }
        let prec = prec.min(shift + cap);
        let mut s = PadicScalar { ring: ring.clone(), shift, digits, prec };
        s.normalize();
        s
    }

    fn rel(&self) -> u32 {
        (self.prec - self.shift).max(0) as u32
    }

    fn normalize(&mut self) {
        let r = self.ring.clone();
        loop {
            let rel = self.rel();
            self.digits = r.reduce_raw(&self.digits, rel);
            if self.shift >= 0 {
                self.shift = 0;
                return;
            }
            if rel == 0 || r.is_zero_raw(&self.digits, rel) {
                // Zero at this precision; store as p^min(prec,0) * 0.
                self.shift = self.prec.min(0);
                self.digits = r.zero_raw();
                return;
            }
            let v = r.valuation_raw(&self.digits, rel);
            if v == 0 {
                return;
            }
            let step = v.min((-self.shift) as u32);
            self.digits = r.div_p_raw(&self.digits, step);
            self.shift += step as i32;
        }
    }

    pub fn zero(ring: &Arc<OkRing>, prec: i32) -> Self {
        let prec = prec.min(ring.cap() as i32);
        PadicScalar { ring: ring.clone(), shift: prec.min(0), digits: ring.zero_raw(), prec }
    }

    pub fn one(ring: &Arc<OkRing>, prec: i32) -> Self {
        Self::from_i64(ring, 1, prec)
    }

    pub fn from_i64(ring: &Arc<OkRing>, a: i64, prec: i32) -> Self {
        if prec <= 0 {
            return Self::zero(ring, prec);
        }
        let prec = prec.min(ring.cap() as i32);
        let m = ring.ppow(prec as u32);
        let v = (a as i128).rem_euclid(m as i128) as u64;
        Self::from_parts(ring, 0, ring.from_u64(v, prec as u32), prec)
    }

    pub fn from_rational(ring: &Arc<OkRing>, r: &BigRational, prec: i32) -> Self {
        if r.is_zero() {
            return Self::zero(ring, prec);
        }
        let p = BigInt::from(ring.p());
        let (mut num, mut den) = (r.numer().clone(), r.denom().clone());
        let mut v = 0i32;
        while num.is_multiple_of(&p) {
            num /= &p;
            v += 1;
        }
        while den.is_multiple_of(&p) {
            den /= &p;
            v -= 1;
        }
        let cap = ring.cap() as i32;
        let rel = (prec - v).clamp(0, cap) as u32;
        if rel == 0 {
            return Self::zero(ring, prec);
        }
        let m = ring.ppow(rel);
        let mb = BigInt::from(m);
        let n = num.mod_floor(&mb).to_u64().unwrap();
        let d = den.mod_floor(&mb).to_u64().unwrap();
        let u = mul_mod(n, inv_mod(d, m).unwrap(), m);
        Self::from_parts(ring, v, ring.from_u64(u, rel), v + rel as i32)
    }

    /// Image of an exact cyclotomic number under the fixed embedding.
    pub fn from_cyclotomic(ring: &Arc<OkRing>, c: &CyclotomicRational, prec: i32) -> Self {
        let n = c.order();
        let mut acc = Self::zero(ring, prec);
        for (i, coef) in c.coeffs().iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let z = Self::root_of_unity(ring, n, i as i64, prec.max(1) + 8);
            // Denominators may lower precision; request a little extra.
            let q = Self::from_rational(ring, coef, prec + 8);
            acc = acc.add(&q.mul(&z));
        }
        acc.with_prec(prec)
    }

    pub fn root_of_unity(ring: &Arc<OkRing>, n: u64, e: i64, prec: i32) -> Self {
        let prec = prec.min(ring.cap() as i32);
        if prec <= 0 {
            return Self::zero(ring, prec);
        }
        let z = ring.root_of_unity(n, e);
        Self::from_parts(ring, 0, z, prec)
    }

    pub fn ring(&self) -> &Arc<OkRing> {
        &self.ring
    }
    pub fn p(&self) -> u64 {
        self.ring.p()
    }
    pub fn prec(&self) -> i32 {
        self.prec
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring)
                || (self.ring.p() == other.ring.p() && self.ring.m() == other.ring.m()),
            "p-adic ring mismatch"
        );
    }

    /// Exact valuation, or `None` when the value is zero at its precision.
    pub fn valuation(&self) -> Option<i32> {
        let rel = self.rel();
        if rel == 0 || self.ring.is_zero_raw(&self.digits, rel) {
            return None;
        }
        Some(self.shift + self.ring.valuation_raw(&self.digits, rel) as i32)
    }

    /// Valuation with zero reported as its precision (the "v >= M" case).
    pub fn valuation_or_prec(&self) -> i32 {
        self.valuation().unwrap_or(self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Lower the precision to `k` (never raises it).
    pub fn with_prec(&self, k: i32) -> Self {
        if k >= self.prec {
            return self.clone();
        }
        Self::from_parts(&self.ring, self.shift, self.digits.clone(), k)
    }

    /// Raise the nominal precision, treating the value as exact. Only for
    /// values known to be exact (integers, roots of unity).
    pub fn assume_exact(&self, k: i32) -> Self {
        let mut s = self.clone();
        s.prec = k.min(self.shift + self.ring.cap() as i32);
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_ring(o);
        let s = self.shift.min(o.shift);
        let prec = self.prec.min(o.prec).min(s + self.ring.cap() as i32);
        let rel = (prec - s).max(0) as u32;
        if rel == 0 {
            return Self::zero(&self.ring, prec);
        }
        let a = self.ring.mul_p_raw(&self.digits, (self.shift - s) as u32, rel);
        let b = self.ring.mul_p_raw(&o.digits, (o.shift - s) as u32, rel);
        Self::from_parts(&self.ring, s, self.ring.add_raw(&a, &b, rel), prec)
    }

    pub fn neg(&self) -> Self {
        let rel = self.rel();
        let d = self.ring.neg_raw(&self.digits, rel);
        PadicScalar { ring: self.ring.clone(), shift: self.shift, digits: d, prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_ring(o);
        let va = self.valuation_or_prec();
        let vb = o.valuation_or_prec();
        let s = self.shift + o.shift;
        let prec = (self.prec + vb).min(o.prec + va).min(s + self.ring.cap() as i32);
        let rel = (prec - s).max(0) as u32;
        if rel == 0 || self.is_zero() || o.is_zero() {
            return Self::zero(&self.ring, prec);
        }
        let d = self.ring.mul_raw(&self.digits, &o.digits, rel);
        Self::from_parts(&self.ring, s, d, prec)
    }

    pub fn scale_i64(&self, a: i64) -> Self {
        self.mul(&Self::from_i64(&self.ring, a, self.ring.cap() as i32))
    }

    /// Multiply by `p^k` (k may be negative); exact.
    pub fn mul_p_pow(&self, k: i32) -> Self {
        Self::from_parts(&self.ring, self.shift + k, self.digits.clone(), self.prec + k)
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::Domain("inverse of zero".into()))?;
        let rel = self.rel();
        // digits = p^(v - shift) * w with w a unit known mod p^(rel - (v - shift)).
        let inner = (v - self.shift) as u32;
        let w = self.ring.div_p_raw(&self.digits, inner);
        let wrel = rel - inner;
        let wi = self.ring.inv_raw(&w, wrel).expect("unit part is invertible");
        Ok(Self::from_parts(&self.ring, -v, wi, self.prec - 2 * v))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = Self::one(&self.ring, self.ring.cap() as i32);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Equality at the smaller of the two precisions.
    pub fn eq_mod(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    /// Value as an integer in `[0, p^prec)` when it lies in Z_p and is integral.
    pub fn to_u64(&self) -> Option<u64> {
        if self.shift < 0 && !self.is_zero() {
            return None;
        }
        if self.prec <= 0 {
            return Some(0);
        }
        if self.digits[1..].iter().any(|&c| c % self.ring.ppow(self.prec as u32) != 0) {
            return None;
        }
        Some(self.digits[0] % self.ring.ppow(self.prec as u32))
    }

    /// Reduction to the residue field F_{p^f}, for integral values.
    pub fn residue(&self) -> Option<Elem> {
        if self.valuation().map(|v| v < 0).unwrap_or(false) {
            return None;
        }
        if self.prec < 1 {
            return None;
        }
        if self.shift < 0 {
            return Some(self.ring.zero_raw());
        }
        Some(self.ring.reduce_raw(&self.digits, 1))
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Digits as decimal strings, for serialization.
    pub fn digit_strings(&self) -> Vec<String> {
        self.digits.iter().map(|d| d.to_string()).collect()
    }
}

impl PartialEq for PadicScalar {
    fn eq(&self, o: &Self) -> bool {
        self.prec == o.prec && self.eq_mod(o)
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ring.degree() == 1 {
            write!(f, "{}", self.digits[0])?;
        } else {
            write!(f, "{:?}", self.digits)?;
        }
        if self.shift != 0 {
            write!(f, "/{}^{}", self.ring.p(), -self.shift)?;
        }
        write!(f, " + O({}^{})", self.ring.p(), self.prec)
    }
}

/// Teichmuller representative of `a` modulo `p^k`, as an integer.
pub fn teich_u64(a: i64, p: u64, k: u32) -> u64 {
    let m = p.pow(k);
    let mut x = (a as i128).rem_euclid(m as i128) as u64;
    for _ in 0..k {
        x = pow_mod(x, p, m);
    }
    x
}

/// `<a> = a * omega(a)^{-1}` modulo `p^k`.
pub fn one_unit_part(a: i64, p: u64, k: u32) -> u64 {
    let m = p.pow(k);
    let t = teich_u64(a, p, k);
    let ar = (a as i128).rem_euclid(m as i128) as u64;
    mul_mod(ar, inv_mod(t, m).unwrap(), m)
}

/// `s(a)` modulo `p^k`: the exponent with `(1+p)^s = <a>`, found digit by digit.
pub fn s_exponent_u64(a: i64, p: u64, k: u32) -> u64 {
    let target = one_unit_part(a, p, k + 1);
    let modk1 = p.pow(k + 1);
    let u = 1 + p;
    let mut s = 0u64;
    let mut pj = 1u64;
    for j in 0..k {
        let modj = p.pow(j + 2);
        let base = pow_mod(u, s, modj);
        let step = pow_mod(u, pj, modj);
        let mut cur = base;
        let mut digit = 0;
        while cur != target % modj {
            cur = mul_mod(cur, step, modj);
            digit += 1;
            assert!(digit < p, "discrete logarithm failed");
        }
        s += digit * pj;
        pj *= p;
    }
    debug_assert_eq!(pow_mod(u, s, modk1), target);
    s
}

/// Teichmuller lift of `a` as a p-adic scalar at precision `m`.
pub fn teichmuller(ring: &Arc<OkRing>, a: i64, m: u32) -> Result<PadicScalar> {
    let p = ring.p();
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::Domain(format!("{} is divisible by p = {}", a, p)));
    }
    let m = m.min(ring.cap());
    let t = teich_u64(a, p, m);
    Ok(PadicScalar::from_parts(ring, 0, ring.from_u64(t, m), m as i32))
}

/// `s(a)` as a p-adic scalar at precision `m`.
pub fn s_exponent(ring: &Arc<OkRing>, a: i64, m: u32) -> Result<PadicScalar> {
    let p = ring.p();
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::Domain(format!("{} is divisible by p = {}", a, p)));
    }
    let m = m.min(ring.cap() - 1);
    let s = s_exponent_u64(a, p, m);
    Ok(PadicScalar::from_parts(ring, 0, ring.from_u64(s, m), m as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ring5() -> Arc<OkRing> {
        OkRing::get(5, 4)
    }

    #[test]
    fn teichmuller_values() {
        let r = ring5();
        assert_eq!(teichmuller(&r, 1, 3).unwrap().to_u64(), Some(1));
        assert_eq!(teichmuller(&r, 4, 2).unwrap().to_u64(), Some(24));
        assert_eq!(teichmuller(&r, 2, 2).unwrap().to_u64(), Some(7));
        assert!(teichmuller(&r, 10, 2).is_err());
    }

    #[test]
    fn s_exponent_small_cases() {
        let r = ring5();
        assert_eq!(s_exponent(&r, 6, 4).unwrap().to_u64(), Some(1));
        assert_eq!(s_exponent(&r, 1, 4).unwrap().to_u64(), Some(0));
        let s = s_exponent_u64(7, 5, 4);
        assert_eq!(pow_mod(6, s, 5u64.pow(5)), one_unit_part(7, 5, 5));
    }

    #[test]
    fn negative_valuation_round_trip() {
        let r = ring5();
        let q = BigRational::new(BigInt::from(3), BigInt::from(50));
        let x = PadicScalar::from_rational(&r, &q, 6);
        assert_eq!(x.valuation(), Some(-2));
        let y = x.scale_i64(50);
        assert_eq!(y.to_u64(), Some(3));
        let xi = x.inv().unwrap();
        assert_eq!(xi.valuation(), Some(2));
        assert!(xi.mul(&x).eq_mod(&PadicScalar::one(&r, 6)));
    }

    #[test]
    fn precision_never_grows() {
        let r = ring5();
        let a = PadicScalar::from_i64(&r, 7, 3);
        let b = PadicScalar::from_i64(&r, 11, 6);
        assert_eq!(a.add(&b).prec(), 3);
        assert_eq!(a.mul(&b).prec(), 3);
        let c = PadicScalar::from_i64(&r, 5, 6);
        // Dividing by p costs two digits of absolute precision on the inverse.
        assert_eq!(c.inv().unwrap().prec(), 4);
    }

    #[test]
    fn cyclotomic_embedding_is_multiplicative() {
        let r = OkRing::get(5, 12);
        let a = CyclotomicRational::zeta_pow(3, 1).add(&CyclotomicRational::from_int(3, 2));
        let b = CyclotomicRational::zeta_pow(4, 1);
        let lhs = PadicScalar::from_cyclotomic(&r, &a.mul(&b), 10);
        let rhs = PadicScalar::from_cyclotomic(&r, &a, 10).mul(&PadicScalar::from_cyclotomic(&r, &b, 10));
        assert!(lhs.eq_mod(&rhs));
    }
}
