//! Kubota-Leopoldt series F(X, chi), the twisted series G(X, chi), the
//! element A_{theta,psi}, and the annihilators b_l(X).
//!
//! Normalization: `F(u^s - 1, chi) = L_p(s, chi)` with `u = 1 + p`, so
//! `F(u^{1-k} - 1, chi) = L(1-k, (chi omega^{-k})_(p))`. The twisted series is
//! `G(X, chi) = F(u^{-1}(1+X)^{-1} - 1, chi)`, hence
//! `G(u^{k-2} - 1, chi) = L(1-k, (chi omega^{-k})_(p))` as well.
//!
//! Both are built from the level-n Stickelberger element of the regularized
//! Bernoulli measure `E_{1,c}` on `(Z/f0 p^{n+1})^x`:
//! `F(Y) = -sum_s c_s (1+Y)^{-s} / (1 - chi(c)<c>(1+Y)^{-s(c)})`, where
//! `c_s` collects `chi omega^{-1}(a) E_{1,c}(a)` over the `a` with
//! `s(a) = s (mod p^n)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::arith::int::{coprime_part, gcd, inv_mod, mul_mod};
use crate::arith::padic::{one_unit_part, s_exponent_u64, teich_u64};
use crate::arith::ring::Elem;
use crate::arith::{binom_series, CyclotomicRational, LambdaSeries, OkRing, PadicScalar, Pole};
use crate::characters::{is_even_pair, xi, DirichletCharacter};
use crate::error::{Error, Result};
use crate::lvalues::l_value_p_stripped;

/// Largest `f0 * p^{n+1}` the Stickelberger loop will visit.
pub const MAX_LEVEL_COST: u64 = 400_000_000;

/// Level-n Stickelberger data for a primitive character.
pub struct Stickelberger {
    ring: Arc<OkRing>,
    chi: DirichletCharacter,
    n: u32,
    /// Regularizing integer `c`.
    c: u64,
    /// `c_s` for `0 <= s < p^n`, modulo `p^cap`.
    sums: Vec<Elem>,
}

impl Stickelberger {
    pub fn build(chi: &DirichletCharacter, ring: &Arc<OkRing>, n: u32) -> Result<Self> {
        let p = ring.p();
        let chi = chi.primitive();
        let cap = ring.cap();
        if n + 1 >= cap {
            return Err(Error::PrecisionExhausted(format!(
                "level {} exceeds the word-size cap {} for p = {}",
                n, cap, p
            )));
        }
        let f0 = coprime_part(chi.conductor(), p);
        let pn = p.pow(n);
        let pn1 = pn * p;
        let q = f0
            .checked_mul(pn1)
            .filter(|&q| q <= MAX_LEVEL_COST)
            .ok_or_else(|| {
                Error::PrecisionExhausted(format!(
                    "level {} needs f0 p^(n+1) = {} * {}^{} residues (budget {})",
                    n,
                    f0,
                    p,
                    n + 1,
                    MAX_LEVEL_COST
                ))
            })?;
        let modw = ring.ppow(cap);
        let f = ring.degree();

        let tw = chi.mul(&DirichletCharacter::omega_pow(p, -1));
        let big_l = tw.order();
        let zetas: Vec<Elem> = (0..big_l).map(|e| ring.root_of_unity(big_l, e as i64)).collect();

        let c = if chi.is_trivial() {
            1 + p
        } else {
            (2..)
                .find(|&c| gcd(c, q) == 1 && chi.exponent(c as i64).map(|(e, _)| e != 0).unwrap_or(false))
                .unwrap()
        };
        let cinv = inv_mod(c % q, q).unwrap();

        // a = omega(a) u^s (mod p^{n+1}), lifted by CRT against a0 mod f0.
        // All contributions for one s are gathered as integer counts per
        // exponent of tw and folded into O_K once.
        let teich: Vec<u64> = (1..p).map(|r| teich_u64(r as i64, p, n + 1)).collect();
        let lift = if f0 > 1 { inv_mod(pn1 % f0, f0).unwrap() } else { 0 };
        let big_l = big_l as usize;
        let tw_mod = tw.modulus();
        let c_i = c as i64;
        let mut acc = vec![0u64; (pn as usize) * f];
        let mut counts = vec![0i64; big_l];
        let u = 1 + p;
        let mut us = 1u64;
        for s in 0..pn as usize {
            counts.iter_mut().for_each(|x| *x = 0);
            for &t in &teich {
                // q <= MAX_LEVEL_COST < 2^32, so these products fit in u64
                let ap = t * us % pn1;
                for a0 in 0..f0 {
                    let a = ap + pn1 * ((a0 + f0 - ap % f0) * lift % f0.max(1));
                    let e = match tw.exponent((a % tw_mod) as i64) {
                        Some((e, _)) => e as usize,
                        None => continue,
                    };
                    let b = a * cinv % q;
                    // 2 E_{1,c}(a) = 2(a - c b)/q + (c - 1)
                    counts[e] += 2 * ((a as i64 - c_i * b as i64) / q as i64) + (c_i - 1);
                }
            }
            let slot = &mut acc[s * f..(s + 1) * f];
            for (e, &k) in counts.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let w = k.rem_euclid(modw as i64) as u128;
                for (x, &z) in slot.iter_mut().zip(&zetas[e]) {
                    *x = ((*x as u128 + w * z as u128) % modw as u128) as u64;
                }
            }
            us = us * u % pn1;
        }
        let half = inv_mod(2, modw).unwrap();
        let sums = acc
            .chunks(f)
            .map(|ch| ch.iter().map(|&x| mul_mod(x, half, modw)).collect())
            .collect();
        Ok(Stickelberger { ring: ring.clone(), chi, n, c, sums })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn regularizer(&self) -> u64 {
        self.c
    }

    fn precision(&self, j: usize, constant: i32) -> i32 {
        if j == 0 {
            return constant;
        }
        let p = self.ring.p() as usize;
        let mut lg = 0;
        let mut q = p;
        while q <= j {
            lg += 1;
            q *= p;
        }
        self.n as i32 - lg
    }

    fn to_series(&self, raw: Vec<Elem>, constant_prec: i32) -> LambdaSeries {
        let v = raw
            .into_iter()
            .enumerate()
            .map(|(j, e)| {
                let pr = self.precision(j, constant_prec);
                PadicScalar::from_parts(&self.ring, 0, e, pr)
            })
            .collect();
        LambdaSeries::from_coeffs(&self.ring, v, Pole::None)
    }

    /// `sum_s c_s T^s` for `T = (1+Y)^{-1}` (F side) or `T = u(1+X)` (G side).
    fn horner(&self, d: usize, g_side: bool) -> Vec<Elem> {
        let ring = &self.ring;
        let cap = ring.cap();
        let modw = ring.ppow(cap) as u128;
        let u = (1 + ring.p()) as u128;
        let f = ring.degree();
        let mut acc: Vec<Elem> = vec![vec![0u64; f]; d];
        for cs in self.sums.iter().rev() {
            for i in 0..f {
                if g_side {
                    // b_j = u (a_j + a_{j-1})
                    for j in (0..d).rev() {
                        let prev = if j > 0 { acc[j - 1][i] as u128 } else { 0 };
                        acc[j][i] = ((acc[j][i] as u128 + prev) % modw * u % modw) as u64;
                    }
                } else {
                    // b_j = a_j - b_{j-1}
                    for j in 1..d {
                        acc[j][i] = ((acc[j][i] as u128 + modw - acc[j - 1][i] as u128) % modw) as u64;
                    }
                }
                acc[0][i] = ((acc[0][i] as u128 + cs[i] as u128) % modw) as u64;
            }
        }
        acc
    }

    fn regularizer_scalars(&self) -> (PadicScalar, PadicScalar, PadicScalar) {
        let ring = &self.ring;
        let cap = ring.cap();
        let p = ring.p();
        let w = cap as i32;
        let chi_c = self.chi.eval_padic(ring, self.c as i64, w).unwrap();
        let cb = PadicScalar::from_i64(ring, one_unit_part(self.c as i64, p, cap) as i64, w);
        let sc = PadicScalar::from_i64(ring, s_exponent_u64(self.c as i64, p, cap - 1) as i64, w - 1);
        (chi_c, cb, sc)
    }

    /// F(Y, chi) from this level, coefficient `j` correct mod `p^{n - floor(log_p j)}`.
    pub fn f_series(&self, d: usize) -> Result<LambdaSeries> {
        let ring = &self.ring;
        let w = ring.cap() as i32;
        let s = self.to_series(self.horner(d, false), w);
        if self.chi.is_trivial() {
            // c = u: 1 - u(1+Y)^{-1} = (Y - p)/(1+Y).
            let one_plus = LambdaSeries::from_i64s(ring, &[1, 1], w, d);
            return Ok(s.mul(&one_plus)?.neg().with_pole(Pole::AtP));
        }
        let (chi_c, cb, sc) = self.regularizer_scalars();
        let b = binom_series(&sc.neg(), d)?;
        let den = LambdaSeries::one(ring, w, d).sub(&b.scale(&chi_c.mul(&cb)))?;
        Ok(s.divide(&den)?.neg())
    }

    /// G(X, chi) from this level, coefficient 0 correct mod `p^{n+1}` and
    /// coefficient `j >= 1` mod `p^{n - floor(log_p j)}`.
    pub fn g_series(&self, d: usize) -> Result<LambdaSeries> {
        let ring = &self.ring;
        let w = ring.cap() as i32;
        let s = self.to_series(self.horner(d, true), self.n as i32 + 1);
        let p = ring.p() as i64;
        if self.chi.is_trivial() {
            // 1 - u^2(1+X) = u(1+X) delta(X); numerator -u^{-1}(1+X)^{-1} S.
            let uinv = PadicScalar::from_i64(ring, 1 + p, w).inv()?;
            let inv1x = LambdaSeries::from_i64s(ring, &[1, 1], w, d).invert()?;
            return Ok(s.mul(&inv1x)?.scale(&uinv).neg().with_pole(Pole::AtDelta));
        }
        let (chi_c, cb, sc) = self.regularizer_scalars();
        let b = binom_series(&sc, d)?;
        let den = LambdaSeries::one(ring, w, d).sub(&b.scale(&chi_c.mul(&cb).mul(&cb)))?;
        Ok(s.divide(&den)?.neg())
    }
}

/// `floor(log_p(d - 1))`, the extra level needed for `d` coefficients.
fn level_slack(p: u64, d: usize) -> u32 {
    let mut lg = 0;
    let mut q = p as usize;
    while q < d {
        lg += 1;
        q *= p as usize;
    }
    lg
}

fn zero_series(ring: &Arc<OkRing>, d: usize) -> LambdaSeries {
    LambdaSeries::zero(ring, ring.cap() as i32, d)
}

/// F(X, phi) mod (p^M, X^D).
pub fn kl_series(phi: &DirichletCharacter, ring: &Arc<OkRing>, m: u32, d: usize) -> Result<LambdaSeries> {
    check_tame_first_kind(phi, ring.p())?;
    if !phi.is_even() {
        return Ok(zero_series(ring, d));
    }
    let n = m + level_slack(ring.p(), d);
    Ok(Stickelberger::build(phi, ring, n)?.f_series(d)?.with_prec(m as i32))
}

/// G(X, chi) = F(u^{-1}(1+X)^{-1} - 1, chi) mod (p^M, X^D).
pub fn g_series(chi: &DirichletCharacter, ring: &Arc<OkRing>, m: u32, d: usize) -> Result<LambdaSeries> {
    check_tame_first_kind(chi, ring.p())?;
    if !chi.is_even() {
        return Ok(zero_series(ring, d));
    }
    let n = m + level_slack(ring.p(), d);
    Ok(Stickelberger::build(chi, ring, n)?.g_series(d)?.with_prec(m as i32))
}

/// G(X, chi) built at an explicit level `n`; evaluation at points of `pZ_p`
/// is correct mod `p^{n+1}` once `d >= n + 1`.
pub fn g_series_at_level(chi: &DirichletCharacter, ring: &Arc<OkRing>, n: u32, d: usize) -> Result<LambdaSeries> {
    check_tame_first_kind(chi, ring.p())?;
    if !chi.is_even() {
        return Ok(zero_series(ring, d));
    }
    Stickelberger::build(chi, ring, n)?.g_series(d)
}

fn check_tame_first_kind(phi: &DirichletCharacter, p: u64) -> Result<()> {
    if phi.conductor() % (p * p) == 0 {
        return Err(Error::Domain(format!("p^2 divides the conductor {}", phi.conductor())));
    }
    if phi.order() % p == 0 {
        return Err(Error::Domain("character order divisible by p".into()));
    }
    Ok(())
}

/// `L_p(1-k, chi) = L(1-k, (chi omega^{-k})_(p))` as an exact value.
pub fn lp_value(chi: &DirichletCharacter, k: usize, p: u64) -> CyclotomicRational {
    let tw = chi.mul(&DirichletCharacter::omega_pow(p, -(k as i64)));
    l_value_p_stripped(k, &tw, p)
}

/// Exact Newton interpolation of F(Y, chi) (or `(Y - p) F` for the trivial
/// character) through the nodes `Y_k = u^{1-k} - 1`, `k = 1..=nodes`.
///
/// Coefficient `i` of the result agrees with the Stickelberger series mod
/// `p^{nodes - i}`.
pub fn interpolate_kl(chi: &DirichletCharacter, ring: &Arc<OkRing>, nodes: usize, d: usize) -> Result<LambdaSeries> {
    let p = ring.p();
    let chi = chi.primitive();
    if !chi.is_even() {
        return Ok(zero_series(ring, d));
    }
    let u = BigRational::from_integer(BigInt::from(1 + p));
    let ys: Vec<BigRational> = (1..=nodes)
        .map(|k| num_traits::pow(u.recip(), k - 1) - BigRational::one())
        .collect();
    let pr = BigRational::from_integer(BigInt::from(p));
    let mut vals: Vec<CyclotomicRational> = (1..=nodes)
        .map(|k| {
            let v = lp_value(&chi, k, p);
            if chi.is_trivial() {
                v.scale(&(&ys[k - 1] - &pr))
            } else {
                v
            }
        })
        .collect();
    // Divided differences in place: vals[i] becomes f[y_0..y_i].
    for level in 1..nodes {
        for i in (level..nodes).rev() {
            let den = (&ys[i] - &ys[i - level]).recip();
            vals[i] = vals[i].sub(&vals[i - 1]).scale(&den);
        }
    }
    // Expand sum_k a_k prod_{i<k} (Y - y_i) into monomials.
    let order = vals.iter().map(|v| v.order()).fold(1, crate::arith::int::lcm);
    let mut poly: Vec<CyclotomicRational> = vec![CyclotomicRational::zero(order)];
    for k in (0..nodes).rev() {
        // poly = poly * (Y - y_k) + a_k
        let mut next = vec![CyclotomicRational::zero(order); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.scale(&ys[k]));
        }
        next[0] = next[0].add(&vals[k]);
        poly = next;
    }
    let coeffs = (0..d)
        .map(|i| {
            let pr = (nodes as i32 - i as i32).max(0);
            match poly.get(i) {
                Some(c) => PadicScalar::from_cyclotomic(ring, c, pr),
                None => PadicScalar::zero(ring, pr),
            }
        })
        .collect();
    let pole = if chi.is_trivial() { Pole::AtP } else { Pole::None };
    Ok(LambdaSeries::from_coeffs(ring, coeffs, pole))
}

/// The factorization `A = delta * prod E_l * G(X, xi_2^{-1})`.
#[derive(Clone, Debug)]
pub struct AFactorization {
    /// `None` when `delta = 1`.
    pub delta: Option<LambdaSeries>,
    /// `(l, (1+X)^{s(l)} - xi(l) l^{-2})` for `l | f_theta f_psi`, `l` not dividing `f_xi`.
    pub euler_factors: Vec<(u64, LambdaSeries)>,
    /// `G(X, xi_2^{-1}) = F(u^{-1}(1+X)^{-1} - 1, xi_2^{-1})`.
    pub kl_part: LambdaSeries,
    pub product: LambdaSeries,
    /// `xi_2^{-1}`.
    pub kl_character: DirichletCharacter,
}

/// Summary for serialization.
#[derive(Clone, Debug, Serialize)]
pub struct AFactorizationSummary {
    pub has_delta: bool,
    pub euler_primes: Vec<u64>,
    pub constant_valuation: Option<i32>,
}

impl AFactorization {
    pub fn summary(&self) -> AFactorizationSummary {
        AFactorizationSummary {
            has_delta: self.delta.is_some(),
            euler_primes: self.euler_factors.iter().map(|e| e.0).collect(),
            constant_valuation: self.product.coeff(0).valuation(),
        }
    }
}

/// Conditions on the pair alone: `(M_psi, p) = 1` and `theta_0 psi_0` even.
pub fn check_pair(theta: &DirichletCharacter, psi: &DirichletCharacter, p: u64) -> Result<()> {
    if psi.modulus() % p == 0 {
        return Err(Error::Inadmissible("(M_psi, p) = 1 fails".into()));
    }
    if !is_even_pair(theta, psi) {
        return Err(Error::Inadmissible("(theta_0 psi_0)(-1) = 1 fails".into()));
    }
    Ok(())
}

/// Primes dividing `f_theta f_psi` but not `f_xi`.
pub fn euler_primes(theta: &DirichletCharacter, psi: &DirichletCharacter) -> Vec<u64> {
    let x = xi(theta, psi);
    let mut out: Vec<u64> = crate::arith::int::prime_divisors(theta.conductor() * psi.conductor())
        .into_iter()
        .filter(|&l| x.conductor() % l != 0)
        .collect();
    out.sort_unstable();
    out
}

/// True when `(theta_0, psi_0) = (omega^{-2}, 1)`.
pub fn is_delta_pair(theta: &DirichletCharacter, psi: &DirichletCharacter, p: u64) -> bool {
    psi.primitive().is_trivial() && theta.primitive() == DirichletCharacter::omega_pow(p, -2).primitive()
}

/// `delta(X) = u^{-1}(1+X)^{-1} - u`.
pub fn delta_series(ring: &Arc<OkRing>, d: usize) -> LambdaSeries {
    LambdaSeries::pole_factor(ring, Pole::AtDelta, d)
}

/// `(1+X)^{s(a)}` for an integer `a` prime to `p`.
pub fn one_plus_x_pow_s(ring: &Arc<OkRing>, a: u64, d: usize) -> Result<LambdaSeries> {
    let s = crate::arith::s_exponent(ring, a as i64, ring.cap() - 1)?;
    binom_series(&s, d)
}

/// `(1+X)^{s(l)} - c` for a scalar `c`.
fn shifted_binom(ring: &Arc<OkRing>, l: u64, c: &PadicScalar, d: usize) -> Result<LambdaSeries> {
    one_plus_x_pow_s(ring, l, d)?.sub(&LambdaSeries::constant(c, d))
}

/// Divide by `X - x0` for `x0` in `pZ_p`, assuming `f(x0) = 0`.
fn divide_by_linear(f: &LambdaSeries, x0: &PadicScalar) -> LambdaSeries {
    let d = f.len();
    let ring = f.ring();
    // q_j = sum_{i > j} f_i x0^{i-j-1}; the unknown tail costs d - j - 1 digits.
    let mut q = vec![PadicScalar::zero(ring, ring.cap() as i32); d];
    let mut acc = PadicScalar::zero(ring, ring.cap() as i32);
    for j in (0..d).rev() {
        q[j] = acc.with_prec((d - j - 1) as i32 * x0.valuation_or_prec().max(1));
        acc = acc.mul(x0).add(f.coeff(j));
    }
    LambdaSeries::from_coeffs(ring, q, Pole::None)
}

pub fn a_series(theta: &DirichletCharacter, psi: &DirichletCharacter, ring: &Arc<OkRing>, m: u32, d: usize) -> Result<AFactorization> {
    let p = ring.p();
    check_pair(theta, psi, p)?;
    let x = xi(theta, psi);
    let kl_char = x.twist_n(p, 2).inverse();
    let kl = g_series(&kl_char, ring, m, d)?;
    let w = ring.cap() as i32;
    let mut euler = Vec::new();
    for l in euler_primes(theta, psi) {
        let c = x.eval_padic(ring, l as i64, w)?.mul(&PadicScalar::from_i64(ring, (l * l) as i64, w).inv()?);
        euler.push((l, shifted_binom(ring, l, &c, d)?));
    }
    let delta_pair = is_delta_pair(theta, psi, p);
    let mut product = kl.numerator();
    if kl.pole() == Pole::AtDelta && !delta_pair {
        // The pole is cancelled by an Euler factor vanishing at X = u^{-2} - 1.
        let x0 = PadicScalar::from_i64(ring, 1 + p as i64, w).pow(2).inv()?.sub(&PadicScalar::one(ring, w));
        let idx = euler
            .iter()
            .position(|(_, e)| e.evaluate(&x0).map(|v| v.is_zero()).unwrap_or(false))
            .ok_or_else(|| Error::Inconsistency("G(X, 1) pole is not cancelled".into()))?;
        let e = &euler[idx].1;
        // delta(X) = -u ((1+X) - u^{-2}) / (1+X)
        let qx = divide_by_linear(e, &x0);
        let one_plus = LambdaSeries::from_i64s(ring, &[1, 1], w, d);
        let u = PadicScalar::from_i64(ring, 1 + p as i64, w);
        let cancelled = qx.mul(&one_plus)?.scale(&u.inv()?.neg());
        for (i, (_, e)) in euler.iter().enumerate() {
            product = product.mul(if i == idx { &cancelled } else { e })?;
        }
    } else {
        for (_, e) in &euler {
            product = product.mul(e)?;
        }
        if kl.pole() != Pole::None && !delta_pair {
            return Err(Error::Inconsistency("unexpected pole in A".into()));
        }
    }
    let delta = delta_pair.then(|| delta_series(ring, d));
    if delta_pair && kl.pole() != Pole::AtDelta {
        return Err(Error::Inconsistency("delta pair without a pole at delta".into()));
    }
    Ok(AFactorization { delta, euler_factors: euler, kl_part: kl, product, kl_character: kl_char })
}

/// `b_l(X) = (1+X)^{s(l)} - xi_1^{-1}(l) l` and whether it is a unit.
pub fn b_ell(l: u64, x: &DirichletCharacter, ring: &Arc<OkRing>, d: usize) -> Result<(LambdaSeries, bool)> {
    let p = ring.p();
    if l == p {
        return Err(Error::Domain("b_l needs l != p".into()));
    }
    if !crate::arith::int::is_prime(l) {
        return Err(Error::Domain(format!("{} is not prime", l)));
    }
    let w = ring.cap() as i32;
    let x1inv = x.twist_n(p, 1).inverse();
    let c = x1inv.eval_padic(ring, l as i64, w)?.mul(&PadicScalar::from_i64(ring, l as i64, w));
    let b = shifted_binom(ring, l, &c, d)?;
    let unit = PadicScalar::one(ring, w).sub(&c).valuation() == Some(0);
    Ok((b, unit))
}

/// The twist: `A~ = prod b_l * F(X, xi_2^{-1})` and `A~_0 = A~ / X` when exceptional.
pub struct ATwist {
    pub a_tilde: LambdaSeries,
    pub a_tilde0: LambdaSeries,
    /// Involution image of `A.product`.
    pub involuted: LambdaSeries,
}

pub fn a_twist(
    a: &AFactorization,
    theta: &DirichletCharacter,
    psi: &DirichletCharacter,
    exceptional: bool,
    ring: &Arc<OkRing>,
    m: u32,
) -> Result<ATwist> {
    let p = ring.p();
    if exceptional != crate::characters::is_exceptional(theta, psi, p) {
        return Err(Error::Domain("exceptional flag does not match the pair".into()));
    }
    let d = a.product.len();
    let x = xi(theta, psi);
    let f = kl_series(&a.kl_character, ring, m, d)?;
    let mut at = f.numerator();
    for (l, _) in &a.euler_factors {
        at = at.mul(&b_ell(*l, &x, ring, d)?.0)?;
    }
    if f.pole() == Pole::AtP && a.delta.is_none() {
        // Mirror of the pole cancellation in `a_series`: b_l vanishes at X = p.
        let pp = PadicScalar::from_i64(ring, p as i64, ring.cap() as i32);
        at = divide_by_linear(&at, &pp);
    }
    let a_tilde0 = if exceptional {
        if !at.coeff(0).is_zero() {
            return Err(Error::Inconsistency("exceptional pair but X does not divide A~".into()));
        }
        at.div_x_pow(1)?
    } else {
        at.clone()
    };
    Ok(ATwist { a_tilde: at, a_tilde0, involuted: a.product.compose_involution() })
}
