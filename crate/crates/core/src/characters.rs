//! Dirichlet characters with exact root-of-unity values.
//!
//! A character mod M is stored by its values on fixed generators of
//! (Z/M)^x: for each prime power q^e || M (q increasing) the least primitive
//! root mod q^e (for q = 2: -1 and 5), lifted by CRT to be 1 on the other
//! components. Values are exponents of `zeta_order`, so equality of
//! characters is equality of data.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::int::{crt, divisors, factorize, gcd, lcm, modn, primitive_root};
use crate::arith::{CyclotomicRational, OkRing, PadicScalar};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    gens: Vec<u64>,
    gen_orders: Vec<u64>,
    images: Vec<u64>,
    /// Exponent of `zeta_order` at each residue, `-1` off the unit group.
    table: Arc<Vec<i64>>,
    conductor: u64,
}

/// Serialized form: `{modulus, conductor, order, generator_images}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub modulus: u64,
    pub conductor: u64,
    pub order: u64,
    /// `(generator, exponent)` meaning `chi(generator) = zeta_order^exponent`.
    pub generator_images: Vec<(u64, u64)>,
}

/// Generators of (Z/M)^x and their orders, in canonical order.
pub fn unit_generators(m: u64) -> Vec<(u64, u64)> {
    let fs = factorize(m);
    let mut out = Vec::new();
    for (i, &(q, e)) in fs.iter().enumerate() {
        let qe = q.pow(e);
        let local: Vec<(u64, u64)> = if q == 2 {
            match e {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(qe - 1, 2), (5, 1 << (e - 2))],
            }
        } else {
            vec![(primitive_root(q, e), (q - 1) * q.pow(e - 1))]
        };
        for (g, ord) in local {
            let mut parts = vec![(g, qe)];
            for (j, &(q2, e2)) in fs.iter().enumerate() {
                if j != i {
                    parts.push((1, q2.pow(e2)));
                }
            }
            let (x, _) = crt(&parts);
            out.push((x, ord));
        }
    }
    out
}

impl DirichletCharacter {
    /// `chi(g_i) = zeta_n^{exps[i]}` on the canonical generators of (Z/M)^x.
    pub fn from_generator_exponents(modulus: u64, n: u64, exps: &[i64]) -> Result<Self> {
        let gens = unit_generators(modulus);
        if gens.len() != exps.len() {
            return Err(Error::Domain(format!(
                "modulus {} has {} generators, got {} images",
                modulus,
                gens.len(),
                exps.len()
            )));
        }
        let n = n.max(1);
        for (&(_, go), &e) in gens.iter().zip(exps) {
            // chi(g)^ord(g) must be 1.
            if (modn(e, n) as u128 * go as u128) % n as u128 != 0 {
                return Err(Error::Domain(format!(
                    "image zeta_{}^{} has order not dividing the generator order {}",
                    n, e, go
                )));
            }
        }
        let order = exps
            .iter()
            .fold(1u64, |acc, &e| lcm(acc, n / gcd(modn(e, n), n)));
        let images: Vec<u64> = exps.iter().map(|&e| modn(e, n) * order / n % order).collect();
        Ok(Self::build(modulus, order, gens, images))
    }

    fn build(modulus: u64, order: u64, gens: Vec<(u64, u64)>, images: Vec<u64>) -> Self {
        let m = modulus as usize;
        let mut table = vec![-1i64; m.max(1)];
        // Walk the full product of cyclic generator groups.
        let mut stack = vec![(1u64 % modulus.max(1), 0u64)];
        for (idx, &(g, go)) in gens.iter().enumerate() {
            let mut next = Vec::with_capacity(stack.len() * go as usize);
            for &(x, e) in &stack {
                let mut xx = x;
                let mut ee = e;
                for _ in 0..go {
                    next.push((xx, ee));
                    xx = (xx as u128 * g as u128 % modulus as u128) as u64;
                    ee = (ee + images[idx]) % order;
                }
            }
            stack = next;
        }
        for (x, e) in stack {
            table[x as usize] = e as i64;
        }
        let gen_orders = gens.iter().map(|g| g.1).collect();
        let gens_only = gens.iter().map(|g| g.0).collect();
        let mut chi = DirichletCharacter {
            modulus,
            order,
            gens: gens_only,
            gen_orders,
            images,
            table: Arc::new(table),
            conductor: modulus,
        };
        chi.conductor = chi.compute_conductor();
        chi
    }

    /// Build from a function on residues giving `(exponent, n)`; the function is
    /// read on the generators only.
    fn from_fn(modulus: u64, n: u64, f: impl Fn(u64) -> i64) -> Self {
        let gens = unit_generators(modulus);
        let exps: Vec<i64> = gens.iter().map(|&(g, _)| f(g)).collect();
        Self::from_generator_exponents(modulus, n, &exps).expect("values define a character")
    }

    pub fn trivial(modulus: u64) -> Self {
        let k = unit_generators(modulus).len();
        Self::from_generator_exponents(modulus, 1, &vec![0; k]).unwrap()
    }

    /// `omega^k` as a character mod p, with omega(g) = zeta_{p-1} for the
    /// least primitive root g mod p.
    pub fn omega_pow(p: u64, k: i64) -> Self {
        Self::from_generator_exponents(p, p - 1, &[k]).unwrap()
    }

    /// Kronecker symbol `(D/.)` as a character mod |D|, for D = 0, 1 mod 4.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(Error::Domain(format!("{} is not a discriminant", d)));
        }
        let m = d.unsigned_abs();
        let chi = Self::from_fn(m, 2, |a| if kronecker(d, a) == 1 { 0 } else { 1 });
        // The Kronecker symbol is a character mod |D|; confirm on all units.
        for a in 1..m {
            if gcd(a, m) == 1 {
                let k = kronecker(d, a);
                let e = chi.table[a as usize];
                if (k == 1) != (e == 0) {
                    return Err(Error::Domain(format!("({}/.) is not periodic mod {}", d, m)));
                }
            }
        }
        Ok(chi)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn conductor(&self) -> u64 {
        self.conductor
    }
    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `(exponent, order)` with `chi(a) = zeta_order^exponent`, or `None` if `chi(a) = 0`.
    pub fn exponent(&self, a: i64) -> Option<(u64, u64)> {
        let e = self.table[modn(a, self.modulus) as usize];
        (e >= 0).then_some((e as u64, self.order))
    }

    pub fn eval(&self, a: i64) -> CyclotomicRational {
        match self.exponent(a) {
            Some((e, n)) => CyclotomicRational::zeta_pow(n, e as i64),
            None => CyclotomicRational::zero(1),
        }
    }

    /// Value through the fixed embedding into O_K.
    pub fn eval_padic(&self, ring: &Arc<OkRing>, a: i64, prec: i32) -> Result<PadicScalar> {
        if self.order % ring.p() == 0 {
            return Err(Error::Domain(format!(
                "character of order {} is ramified at p = {}",
                self.order,
                ring.p()
            )));
        }
        if ring.m() % self.order != 0 {
            return Err(Error::Domain(format!(
                "ring Z_p[zeta_{}] does not contain the values of a character of order {}",
                ring.m(),
                self.order
            )));
        }
        Ok(match self.exponent(a) {
            Some((e, n)) => PadicScalar::root_of_unity(ring, n, e as i64, prec),
            None => PadicScalar::zero(ring, ring.cap() as i32),
        })
    }

    /// Value as a sign, for characters of order at most 2.
    pub fn eval_sign(&self, a: i64) -> i64 {
        match self.exponent(a) {
            None => 0,
            Some((0, _)) => 1,
            Some((e, n)) if 2 * e == n => -1,
            _ => panic!("character value is not real"),
        }
    }

    /// `chi(-1)` as `1` or `-1`.
    pub fn parity(&self) -> i64 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.exponent(-1).map(|(e, _)| e == 0).unwrap_or(false) || self.modulus <= 2
    }

    fn compute_conductor(&self) -> u64 {
        if self.order == 1 {
            return 1;
        }
        for f in divisors(self.modulus) {
            let ok = (0..self.modulus / f).all(|k| {
                let a = 1 + k * f;
                let e = self.table[(a % self.modulus) as usize];
                e <= 0
            });
            if ok {
                return f;
            }
        }
        self.modulus
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        let f = self.conductor;
        if f == self.modulus {
            return self.clone();
        }
        let m = self.modulus;
        let table = self.table.clone();
        Self::from_fn(f, self.order, |g| {
            // Lift g to a unit mod M congruent to g mod f.
            let mut a = g;
            while gcd(a, m) != 1 {
                a += f;
            }
            table[(a % m) as usize]
        })
    }

    /// Character mod lcm(M, n) induced from this one.
    pub fn induce(&self, n: u64) -> Self {
        let m = lcm(self.modulus, n.max(1));
        let own = self.modulus;
        let table = self.table.clone();
        Self::from_fn(m, self.order, |g| table[(g % own) as usize])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = lcm(self.modulus, o.modulus);
        let n = lcm(self.order, o.order);
        let (a, b) = (self.clone(), o.clone());
        Self::from_fn(m, n, |g| {
            let ea = a.exponent(g as i64).unwrap().0 * (n / a.order);
            let eb = b.exponent(g as i64).unwrap().0 * (n / b.order);
            ((ea + eb) % n) as i64
        })
    }

    pub fn inverse(&self) -> Self {
        let exps: Vec<i64> = self.images.iter().map(|&e| -(e as i64)).collect();
        Self::from_generator_exponents(self.modulus, self.order, &exps).unwrap()
    }

    pub fn pow(&self, k: i64) -> Self {
        let exps: Vec<i64> = self.images.iter().map(|&e| e as i64 * k).collect();
        Self::from_generator_exponents(self.modulus, self.order, &exps).unwrap()
    }

    /// The primitive character attached to `phi * omega^{-n}`.
    pub fn twist_n(&self, p: u64, n: i64) -> Self {
        self.mul(&Self::omega_pow(p, -n)).primitive()
    }

    /// Split `chi = chi_p * chi'` with `chi_p` of p-power modulus and `chi'`
    /// of modulus prime to p.
    pub fn split_at(&self, p: u64) -> (Self, Self) {
        let mut mp = 1;
        let mut rest = self.modulus;
        while rest % p == 0 {
            rest /= p;
            mp *= p;
        }
        let n = self.order;
        let table = self.table.clone();
        let modulus = self.modulus;
        let at = |x: u64| table[(x % modulus) as usize];
        let chi_p = Self::from_fn(mp, n, |g| at(crt(&[(g, mp), (1, rest)]).0));
        let chi_r = Self::from_fn(rest, n, |g| at(crt(&[(1, mp), (g, rest)]).0));
        (chi_p, chi_r)
    }

    /// Exact Gauss sum `sum_{a mod f} chi(a) zeta_f^a` of a primitive character.
    pub fn gauss_sum(&self) -> Result<CyclotomicRational> {
        if !self.is_primitive() {
            return Err(Error::Domain("Gauss sum of an imprimitive character".into()));
        }
        let f = self.modulus;
        let l = lcm(f, self.order);
        let mut acc = vec![BigRational::from_integer(BigInt::from(0)); l as usize];
        for a in 0..f {
            if let Some((e, n)) = self.exponent(a as i64) {
                let idx = (a * (l / f) + e * (l / n)) % l;
                acc[idx as usize] += BigRational::one();
            }
        }
        Ok(CyclotomicRational::from_exponent_table(l, acc))
    }

    /// `g(chi1) / g(chi2)` through the fixed embedding, for primitive characters
    /// whose p-components agree (the common p-part Gauss sum cancels).
    pub fn gauss_ratio_padic(
        chi1: &Self,
        chi2: &Self,
        ring: &Arc<OkRing>,
        prec: i32,
    ) -> Result<PadicScalar> {
        let p = ring.p();
        let (a_p, a_r) = chi1.split_at(p);
        let (b_p, b_r) = chi2.split_at(p);
        if a_p.primitive() != b_p.primitive() {
            return Err(Error::Domain("Gauss ratio needs equal p-components".into()));
        }
        // g(chi) = chi_p(f') chi'(f_p) g(chi_p) g(chi') for coprime conductors.
        let fa = a_r.modulus as i64;
        let fb = b_r.modulus as i64;
        let fp = a_p.modulus as i64;
        let ga = PadicScalar::from_cyclotomic(ring, &a_r.gauss_sum()?, prec + 4);
        let gb = PadicScalar::from_cyclotomic(ring, &b_r.gauss_sum()?, prec + 4);
        let num = a_p
            .eval_padic(ring, fa, prec + 4)?
            .mul(&a_r.eval_padic(ring, fp, prec + 4)?)
            .mul(&ga);
        let den = b_p
            .eval_padic(ring, fb, prec + 4)?
            .mul(&b_r.eval_padic(ring, fp, prec + 4)?)
            .mul(&gb);
        Ok(num.div(&den)?.with_prec(prec))
    }

    /// Values agree modulo the maximal ideal at every residue coprime to both moduli.
    pub fn congruent_mod_pi(&self, o: &Self, ring: &Arc<OkRing>) -> Result<bool> {
        let m = lcm(self.modulus, o.modulus);
        for a in 1..m {
            if gcd(a, m) != 1 {
                continue;
            }
            let x = self.eval_padic(ring, a as i64, 1)?;
            let y = o.eval_padic(ring, a as i64, 1)?;
            if x.residue() != y.residue() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The smallest ring holding the values of all the given characters.
    pub fn ring_for(p: u64, chars: &[&Self]) -> Arc<OkRing> {
        let orders: Vec<u64> = chars.iter().map(|c| c.order).collect();
        OkRing::for_orders(p, &orders)
    }

    pub fn record(&self) -> CharacterRecord {
        CharacterRecord {
            modulus: self.modulus,
            conductor: self.conductor,
            order: self.order,
            generator_images: self.gens.iter().copied().zip(self.images.iter().copied()).collect(),
        }
    }

    pub fn from_record(r: &CharacterRecord) -> Result<Self> {
        let gens = unit_generators(r.modulus);
        let mut exps = vec![0i64; gens.len()];
        for &(g, e) in &r.generator_images {
            let idx = gens
                .iter()
                .position(|&(h, _)| h == g % r.modulus.max(1))
                .ok_or_else(|| Error::Domain(format!("{} is not a canonical generator mod {}", g, r.modulus)))?;
            exps[idx] = e as i64;
        }
        Self::from_generator_exponents(r.modulus, r.order, &exps)
    }

    pub fn generator_orders(&self) -> &[u64] {
        &self.gen_orders
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, o: &Self) -> bool {
        self.modulus == o.modulus && self.order == o.order && self.images == o.images
    }
}
impl Eq for DirichletCharacter {}

impl std::hash::Hash for DirichletCharacter {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.modulus.hash(h);
        self.order.hash(h);
        self.images.hash(h);
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi(mod {}, order {}, f = {}", self.modulus, self.order, self.conductor)?;
        for (g, e) in self.gens.iter().zip(&self.images) {
            write!(f, ", {}->z^{}", g, e)?;
        }
        write!(f, ")")
    }
}

/// Kronecker symbol `(a/n)` for `n >= 0`.
pub fn kronecker(a: i64, mut n: u64) -> i64 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut res = 1i64;
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        if matches!(a.rem_euclid(8), 3 | 5) {
            res = -res;
        }
    }
    // Jacobi symbol for odd n.
    let mut a = modn(a, n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            res = -res;
        }
        a %= n;
    }
    if n == 1 {
        res
    } else {
        0
    }
}

/// `xi = (theta^{-1} psi)_0`. This is inverse to Ohta's convention.
pub fn xi(theta: &DirichletCharacter, psi: &DirichletCharacter) -> DirichletCharacter {
    theta.inverse().mul(psi).primitive()
}

/// `(theta psi^{-1})_{p-2}(p) = 1`.
pub fn is_exceptional(theta: &DirichletCharacter, psi: &DirichletCharacter, p: u64) -> bool {
    let tw = theta.mul(&psi.inverse()).twist_n(p, p as i64 - 2);
    tw.exponent(p as i64) == Some((0, tw.order()))
}

/// `(theta_0 psi_0)(-1) = 1`.
pub fn is_even_pair(theta: &DirichletCharacter, psi: &DirichletCharacter) -> bool {
    theta.primitive().mul(&psi.primitive()).is_even()
}
