//! Truncated power series in Lambda = O_K[[X]] with per-coefficient precision.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::int::v_p_factorial;
use super::padic::PadicScalar;
use super::ring::OkRing;
use crate::error::{Error, Result};

/// Simple pole carried by a series, stored as numerator plus tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pole {
    None,
    /// The series is `numerator / (X - p)`.
    AtP,
    /// The series is `numerator / (u^{-1}(1+X)^{-1} - u)`, the image of
    /// `AtP` under the involution `X -> u^{-1}(1+X)^{-1} - 1`.
    AtDelta,
}

#[derive(Clone)]
pub struct LambdaSeries {
    ring: Arc<OkRing>,
    coeffs: Vec<PadicScalar>,
    pole: Pole,
}

impl LambdaSeries {
    pub fn from_coeffs(ring: &Arc<OkRing>, coeffs: Vec<PadicScalar>, pole: Pole) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        LambdaSeries { ring: ring.clone(), coeffs, pole }
    }

    pub fn zero(ring: &Arc<OkRing>, prec: i32, d: usize) -> Self {
        Self::from_coeffs(ring, vec![PadicScalar::zero(ring, prec); d], Pole::None)
    }

    pub fn constant(c: &PadicScalar, d: usize) -> Self {
        let ring = c.ring().clone();
        let mut v = vec![PadicScalar::zero(&ring, c.prec().max(ring.cap() as i32)); d];
        v[0] = c.clone();
        Self::from_coeffs(&ring, v, Pole::None)
    }

    pub fn one(ring: &Arc<OkRing>, prec: i32, d: usize) -> Self {
        Self::constant(&PadicScalar::one(ring, prec), d)
    }

    /// The series `X`.
    pub fn x(ring: &Arc<OkRing>, prec: i32, d: usize) -> Self {
        let mut v = vec![PadicScalar::zero(ring, ring.cap() as i32); d];
        if d > 1 {
            v[1] = PadicScalar::one(ring, prec);
        }
        Self::from_coeffs(ring, v, Pole::None)
    }

    /// Polynomial with integer coefficients (constant term first).
    pub fn from_i64s(ring: &Arc<OkRing>, cs: &[i64], prec: i32, d: usize) -> Self {
        let v = (0..d)
            .map(|j| PadicScalar::from_i64(ring, cs.get(j).copied().unwrap_or(0), prec))
            .collect();
        Self::from_coeffs(ring, v, Pole::None)
    }

    pub fn ring(&self) -> &Arc<OkRing> {
        &self.ring
    }
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn pole(&self) -> Pole {
        self.pole
    }
    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.coeffs
    }
    pub fn coeff(&self, j: usize) -> &PadicScalar {
        &self.coeffs[j]
    }

    /// Smallest coefficient precision.
    pub fn min_prec(&self) -> i32 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap()
    }

    pub fn truncate(&self, d: usize) -> Self {
        let d = d.min(self.len());
        Self::from_coeffs(&self.ring, self.coeffs[..d].to_vec(), self.pole)
    }

    pub fn with_prec(&self, k: i32) -> Self {
        let v = self.coeffs.iter().map(|c| c.with_prec(k)).collect();
        Self::from_coeffs(&self.ring, v, self.pole)
    }

    /// Drop the pole tag, keeping the held numerator.
    pub fn numerator(&self) -> Self {
        Self::from_coeffs(&self.ring, self.coeffs.clone(), Pole::None)
    }

    pub fn with_pole(&self, pole: Pole) -> Self {
        Self::from_coeffs(&self.ring, self.coeffs.clone(), pole)
    }

    /// The denominator attached to a pole tag, as a series of length `d`.
    pub fn pole_factor(ring: &Arc<OkRing>, pole: Pole, d: usize) -> Self {
        let cap = ring.cap() as i32;
        let p = ring.p() as i64;
        match pole {
            Pole::None => Self::one(ring, cap, d),
            Pole::AtP => Self::from_i64s(ring, &[-p, 1], cap, d),
            Pole::AtDelta => {
                let u = PadicScalar::from_i64(ring, 1 + p, cap);
                let uinv = u.inv().unwrap();
                // u^{-1} sum (-X)^j - u
                let v = (0..d)
                    .map(|j| {
                        let s = if j % 2 == 0 { uinv.clone() } else { uinv.neg() };
                        if j == 0 { s.sub(&u) } else { s }
                    })
                    .collect();
                Self::from_coeffs(ring, v, Pole::None)
            }
        }
    }

    fn same_ring(&self, o: &Self) {
        assert!(
            self.ring.p() == o.ring.p() && self.ring.m() == o.ring.m(),
            "series ring mismatch"
        );
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_ring(o);
        let d = self.len().min(o.len());
        let (a, b, pole) = match (self.pole, o.pole) {
            (x, y) if x == y => (self.numerator(), o.numerator(), x),
            (Pole::None, y) => {
                let f = Self::pole_factor(&self.ring, y, d);
                (self.numerator().mul(&f)?, o.numerator(), y)
            }
            (x, Pole::None) => {
                let f = Self::pole_factor(&self.ring, x, d);
                (self.numerator(), o.numerator().mul(&f)?, x)
            }
            _ => return Err(Error::Domain("cannot add series with different poles".into())),
        };
        let v = (0..d).map(|j| a.coeffs[j].add(&b.coeffs[j])).collect();
        Ok(Self::from_coeffs(&self.ring, v, pole))
    }

    pub fn neg(&self) -> Self {
        let v = self.coeffs.iter().map(|c| c.neg()).collect();
        Self::from_coeffs(&self.ring, v, self.pole)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_ring(o);
        let pole = match (self.pole, o.pole) {
            (Pole::None, y) => y,
            (x, Pole::None) => x,
            _ => return Err(Error::Domain("product would have a double pole".into())),
        };
        let d = self.len().min(o.len());
        let cap = self.ring.cap() as i32;
        let mut v = Vec::with_capacity(d);
        for n in 0..d {
            let mut acc = PadicScalar::zero(&self.ring, cap);
            for k in 0..=n {
                acc = acc.add(&self.coeffs[k].mul(&o.coeffs[n - k]));
            }
            v.push(acc);
        }
        Ok(Self::from_coeffs(&self.ring, v, pole))
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        let v = self.coeffs.iter().map(|x| x.mul(c)).collect();
        Self::from_coeffs(&self.ring, v, self.pole)
    }

    /// Quick (mu, lambda) read-off from the known coefficients.
    pub fn mu_lambda(&self) -> Option<(u32, u32)> {
        let mut best: Option<(i32, usize)> = None;
        for (j, c) in self.coeffs.iter().enumerate() {
            if let Some(v) = c.valuation() {
                if best.map(|(b, _)| v < b).unwrap_or(true) {
                    best = Some((v, j));
                }
            }
        }
        best.map(|(v, j)| (v.max(0) as u32, j as u32))
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self> {
        if self.pole != Pole::None {
            // 1/(N/P) = P/N
            let f = Self::pole_factor(&self.ring, self.pole, self.len());
            return f.mul(&self.numerator().invert()?);
        }
        let c0 = &self.coeffs[0];
        if !c0.is_unit() {
            let (mu, lambda) = self.mu_lambda().unwrap_or((c0.prec().max(0) as u32, 0));
            return Err(Error::NonUnit { mu, lambda });
        }
        let inv0 = c0.inv()?;
        let d = self.len();
        let mut g: Vec<PadicScalar> = vec![inv0.clone()];
        for n in 1..d {
            let mut acc = PadicScalar::zero(&self.ring, self.ring.cap() as i32);
            for k in 1..=n {
                acc = acc.add(&self.coeffs[k].mul(&g[n - k]));
            }
            g.push(acc.mul(&inv0).neg());
        }
        Ok(Self::from_coeffs(&self.ring, g, Pole::None))
    }

    pub fn divide(&self, o: &Self) -> Result<Self> {
        self.mul(&o.invert()?)
    }

    /// Index of the first coefficient not known to be zero.
    pub fn ord_x(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact division by `X^k`; the first `k` coefficients must vanish.
    pub fn div_x_pow(&self, k: usize) -> Result<Self> {
        if self.coeffs[..k.min(self.len())].iter().any(|c| !c.is_zero()) {
            return Err(Error::Inconsistency(format!("X^{} does not divide the series", k)));
        }
        if k >= self.len() {
            return Err(Error::PrecisionExhausted("nothing left after dividing by X".into()));
        }
        Ok(Self::from_coeffs(&self.ring, self.coeffs[k..].to_vec(), self.pole))
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        let cap = self.ring.cap() as i32;
        let mut v = vec![PadicScalar::zero(&self.ring, cap); k];
        v.extend(self.coeffs.iter().take(self.len().saturating_sub(k)).cloned());
        Self::from_coeffs(&self.ring, v, self.pole)
    }

    /// Evaluate at `x0` with `v(x0) >= 1`; the unknown tail bounds precision.
    pub fn evaluate(&self, x0: &PadicScalar) -> Result<PadicScalar> {
        let cap = self.ring.cap() as i32;
        let vx = x0.valuation();
        let tail = match vx {
            None => x0.prec().max(0).saturating_mul(self.len() as i32).min(cap),
            Some(v) if v >= 1 => (v * self.len() as i32).min(cap),
            Some(_) => {
                return Err(Error::PrecisionExhausted(
                    "evaluation point is not in the maximal ideal".into(),
                ))
            }
        };
        let mut acc = PadicScalar::zero(&self.ring, cap);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x0).add(c);
        }
        let num = acc.with_prec(tail);
        let den = match self.pole {
            Pole::None => return Ok(num),
            Pole::AtP => x0.sub(&PadicScalar::from_i64(&self.ring, self.ring.p() as i64, cap)),
            Pole::AtDelta => {
                let u = PadicScalar::from_i64(&self.ring, 1 + self.ring.p() as i64, cap);
                let one = PadicScalar::one(&self.ring, cap);
                u.mul(&one.add(x0)).inv()?.sub(&u)
            }
        };
        if den.is_zero() {
            return Err(Error::Pole);
        }
        num.div(&den)
    }

    /// `f(u^{-1}(1+X)^{-1} - 1)` truncated to the same length.
    pub fn compose_involution(&self) -> Self {
        let d = self.len();
        let ring = &self.ring;
        let cap = ring.cap() as i32;
        let p = ring.p() as i64;
        let uinv = PadicScalar::from_i64(ring, 1 + p, cap).inv().unwrap();
        // Z = u^{-1}(1+X)^{-1} - 1
        let z: Vec<PadicScalar> = (0..d)
            .map(|j| {
                let s = if j % 2 == 0 { uinv.clone() } else { uinv.neg() };
                if j == 0 { s.sub(&PadicScalar::one(ring, cap)) } else { s }
            })
            .collect();
        let zs = LambdaSeries::from_coeffs(ring, z, Pole::None);
        let mut out = vec![PadicScalar::zero(ring, cap); d];
        let mut zpow = LambdaSeries::one(ring, cap, d);
        for j in 0..d {
            for (i, o) in out.iter_mut().enumerate() {
                *o = o.add(&self.coeffs[j].mul(&zpow.coeffs[i]));
            }
            zpow = zpow.mul(&zs).unwrap();
        }
        // Unknown tail f_j, j >= d, contributes at valuation >= j - i.
        let out = out
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.with_prec((d - i) as i32))
            .collect();
        let pole = match self.pole {
            Pole::None => Pole::None,
            Pole::AtP => Pole::AtDelta,
            Pole::AtDelta => Pole::AtP,
        };
        Self::from_coeffs(ring, out, pole)
    }

    /// Coefficientwise equality at the common precision and length.
    pub fn eq_mod(&self, o: &Self) -> bool {
        self.pole == o.pole
            && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a.eq_mod(b))
    }

    /// Coefficientwise equality after clamping every coefficient to `k`.
    pub fn eq_at(&self, o: &Self, k: i32) -> bool {
        self.with_prec(k).eq_mod(&o.with_prec(k))
    }
}

/// `(1+X)^s = sum_j C(s, j) X^j`, coefficient `j` losing `v_p(j!)` digits.
pub fn binom_series(s: &PadicScalar, d: usize) -> Result<LambdaSeries> {
    let ring = s.ring().clone();
    let p = ring.p();
    let cap = ring.cap() as i32;
    let mut out = Vec::with_capacity(d);
    let mut num = PadicScalar::one(&ring, cap);
    let mut fact_unit = PadicScalar::one(&ring, cap);
    for j in 0..d {
        if j > 0 {
            num = num.mul(&s.sub(&PadicScalar::from_i64(&ring, (j - 1) as i64, cap)));
            let mut jj = j as i64;
            while jj % p as i64 == 0 {
                jj /= p as i64;
            }
            fact_unit = fact_unit.mul(&PadicScalar::from_i64(&ring, jj, cap));
        }
        let vj = v_p_factorial(j as u64, p) as i32;
        if s.prec() - vj <= 0 {
            return Err(Error::PrecisionExhausted(format!(
                "binomial coefficient {} needs more than {} digits",
                j,
                s.prec()
            )));
        }
        let c = num.mul_p_pow(-vj).mul(&fact_unit.inv()?);
        out.push(c);
    }
    Ok(LambdaSeries::from_coeffs(&ring, out, Pole::None))
}

impl fmt::Debug for LambdaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")?;
        if self.pole != Pole::None {
            write!(f, " / {:?}", self.pole)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::padic::{s_exponent, one_unit_part};

    fn ring() -> Arc<OkRing> {
        OkRing::get(5, 4)
    }

    #[test]
    fn geometric_inverse() {
        let r = ring();
        let f = LambdaSeries::from_i64s(&r, &[1, 1], 10, 8);
        let g = f.invert().unwrap();
        let prod = f.mul(&g).unwrap();
        assert!(prod.eq_mod(&LambdaSeries::one(&r, 10, 8)));
        assert_eq!(g.coeff(3).to_u64(), Some(5u64.pow(10) - 1));
    }

    #[test]
    fn non_unit_inverse_reports_invariants() {
        let r = ring();
        let f = LambdaSeries::from_i64s(&r, &[5, 10, 3], 10, 6);
        assert_eq!(f.invert().unwrap_err(), Error::NonUnit { mu: 0, lambda: 2 });
    }

    #[test]
    fn involution_is_involutive() {
        let r = ring();
        let f = LambdaSeries::from_i64s(&r, &[3, 1, 4, 1, 5, 9], 10, 6);
        let g = f.compose_involution().compose_involution();
        // Two compositions lose the tail bound twice; compare where both are valid.
        for i in 0..4 {
            assert!(g.coeff(i).eq_mod(f.coeff(i)), "coefficient {}", i);
        }
        let x = LambdaSeries::x(&r, 10, 6).compose_involution();
        let u = PadicScalar::from_i64(&r, 6, 10);
        let expect0 = u.inv().unwrap().sub(&PadicScalar::one(&r, 10));
        assert!(x.coeff(0).eq_mod(&expect0));
    }

    #[test]
    fn binomial_series_interpolates_powers() {
        let r = ring();
        let s = s_exponent(&r, 2, 8).unwrap();
        let b = binom_series(&s, 12).unwrap();
        let u = PadicScalar::from_i64(&r, 6, 10);
        for k in 2..=4u64 {
            let x0 = u.pow(k - 2).sub(&PadicScalar::one(&r, 10));
            let val = b.evaluate(&x0).unwrap();
            let m = 5u64.pow(8);
            let expect = PadicScalar::from_i64(&r, one_unit_part(2, 5, 8) as i64, 8).pow(k - 2);
            assert!(val.eq_mod(&expect.with_prec(val.prec())), "k = {}", k);
            assert!(val.prec() >= 6, "k = {}: prec {} of {}", k, val.prec(), m);
        }
    }

    #[test]
    fn pole_evaluation() {
        let r = ring();
        let n = LambdaSeries::from_i64s(&r, &[1], 10, 4).with_pole(Pole::AtP);
        let five = PadicScalar::from_i64(&r, 5, 10);
        assert_eq!(n.evaluate(&five).unwrap_err(), Error::Pole);
        let g = n.compose_involution();
        assert_eq!(g.pole(), Pole::AtDelta);
    }
}
