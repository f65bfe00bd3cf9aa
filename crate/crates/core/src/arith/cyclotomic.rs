//! Exact elements of the cyclotomic field Q(zeta_n).
//!
//! An element is a rational polynomial in `zeta_n` of degree below
//! `phi(n)`, reduced modulo the n-th cyclotomic polynomial, so equality is
//! structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use super::int::{divisors, euler_phi, gcd};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicRational {
    n: u64,
    coeffs: Vec<BigRational>,
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Vec<i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    if let Some(c) = cyclo_cache().lock().unwrap().get(&n) {
        return c.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = poly_div_exact(&num, &den);
    }
    let out: Vec<i64> = num.into_iter().map(|c| c as i64).collect();
    cyclo_cache().lock().unwrap().insert(n, out.clone());
    out
}

fn poly_div_exact(num: &[i128], den: &[i64]) -> Vec<i128> {
    let mut rem = num.to_vec();
    while rem.len() > 1 && *rem.last().unwrap() == 0 {
        rem.pop();
    }
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut q = vec![0i128; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj as i128;
            }
        }
    }
    q
}

impl CyclotomicRational {
    pub fn zero(n: u64) -> Self {
        let d = euler_phi(n) as usize;
        CyclotomicRational { n, coeffs: vec![BigRational::zero(); d] }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u64, r: BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(n: u64, v: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(v)))
    }

    /// `zeta_n^e`.
    pub fn zeta_pow(n: u64, e: i64) -> Self {
        let mut acc = vec![BigRational::zero(); n as usize];
        acc[e.rem_euclid(n as i64) as usize] = BigRational::one();
        Self::reduce(n, acc)
    }

    /// Reduce a vector indexed by exponent modulo `n` into canonical form.
    pub fn reduce(n: u64, mut acc: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        while acc.len() > d {
            let top = acc.len() - 1;
            let c = acc.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            // x^top = x^(top-d) * (x^d) and x^d = -sum_{j<d} phi_j x^j.
            let base = top - d;
            for (j, &pj) in phi.iter().enumerate().take(d) {
                if pj != 0 {
                    acc[base + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
        acc.resize(d, BigRational::zero());
        CyclotomicRational { n, coeffs: acc }
    }

    /// Build `sum_e w[e] zeta_n^e` from a full exponent table of length `n`.
    pub fn from_exponent_table(n: u64, table: Vec<BigRational>) -> Self {
        debug_assert_eq!(table.len(), n as usize);
        Self::reduce(n, table)
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express inside Q(zeta_m) for a multiple `m` of the current order.
    pub fn lift_to(&self, m: u64) -> Self {
        assert!(m % self.n == 0, "Q(zeta_{}) is not inside Q(zeta_{})", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut acc = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc[i * step] = c.clone();
            }
        }
        Self::reduce(m, acc)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = a.n / gcd(a.n, b.n) * b.n;
        (a.lift_to(m), b.lift_to(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicRational { n: a.n, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicRational { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CyclotomicRational { n: self.n, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let d = a.coeffs.len();
        let mut acc = vec![BigRational::zero(); (2 * d).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        Self::reduce(a.n, acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.n);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Complex value under zeta_n -> exp(2 pi i / n).
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = rational_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    let n = c.numer().to_f64().unwrap_or(f64::NAN);
    let d = c.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

impl fmt::Debug for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", mag)?,
                1 => write!(f, "{}*z{}", mag, self.n)?,
                _ => write!(f, "{}*z{}^{}", mag, self.n, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_multiply() {
        let z = CyclotomicRational::zeta_pow(5, 1);
        assert_eq!(z.pow(5), CyclotomicRational::one(5));
        let s = (0..5).fold(CyclotomicRational::zero(5), |acc, e| {
            acc.add(&CyclotomicRational::zeta_pow(5, e))
        });
        assert!(s.is_zero());
        let i = CyclotomicRational::zeta_pow(4, 1);
        assert_eq!(i.mul(&i), CyclotomicRational::from_int(4, -1));
    }

    #[test]
    fn lifting_is_compatible() {
        let a = CyclotomicRational::zeta_pow(3, 1);
        let b = CyclotomicRational::zeta_pow(4, 1);
        let ab = a.mul(&b);
        assert_eq!(ab, CyclotomicRational::zeta_pow(12, 7));
    }
}
