//! Lambda-adic and classical Eisenstein series as truncated q-expansions,
//! Hecke operators on q-expansions, weight specialization, the imprimitive
//! decomposition and the residual congruence criterion.
//!
//! Hecke normalization: `hecke_tn` computes
//! `a_m(f|T_n) = sum_{d | (m,n)} d * lambda_d * a_{mn/d^2}(f)` where
//! `lambda_d` is the scalar by which `T_{d,d}` acts, normalized as
//! `d^{k-2} <d>` classically and `(theta psi)(d)(1+X)^{s(d)}` on
//! `E_{theta,psi;t}`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::int::{divisors, gcd, mobius, prime_divisors};
use crate::arith::{Coefficient, CyclotomicRational, LambdaSeries, OkRing, PadicScalar, Pole};
use crate::characters::{is_even_pair, DirichletCharacter};
use crate::error::{Error, Result};
use crate::lvalues::dirichlet_l_negative;
use crate::padic_lfun::{delta_series, g_series, is_delta_pair, one_plus_x_pow_s};

/// `sum_{n=0}^{n_max} a_n q^n`.
#[derive(Clone, Debug)]
pub struct QExpansion<C> {
    pub coeffs: Vec<C>,
    pub level: u64,
    pub weight: Option<u32>,
    pub nebentypus: Option<DirichletCharacter>,
}

impl<C: Coefficient> QExpansion<C> {
    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn domain(&self) -> &'static str {
        C::DOMAIN
    }

    pub fn truncate(&self, n_max: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(n_max + 1);
        out
    }

    pub fn map<D>(&self, f: impl Fn(&C) -> Result<D>) -> Result<QExpansion<D>> {
        Ok(QExpansion {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
            level: self.level,
            weight: self.weight,
            nebentypus: self.nebentypus.clone(),
        })
    }

    /// `sum c_i f_i` over a common truncation.
    pub fn linear_combination(terms: &[(C, QExpansion<C>)]) -> Result<Self> {
        let n = terms.iter().map(|t| t.1.coeffs.len()).min().ok_or_else(|| Error::Domain("empty combination".into()))?;
        let first = &terms[0].1;
        let mut coeffs: Vec<C> = first.coeffs[..n].iter().map(|c| c.zero_like()).collect();
        for (c, f) in terms {
            for (acc, a) in coeffs.iter_mut().zip(&f.coeffs) {
                *acc = acc.add(&c.mul(a)?)?;
            }
        }
        Ok(QExpansion { coeffs, level: first.level, weight: first.weight, nebentypus: first.nebentypus.clone() })
    }
}

/// Admissibility of `E_{theta,psi;t}` at level `N`.
pub fn check_admissible(theta: &DirichletCharacter, psi: &DirichletCharacter, t: u64, level: u64, p: u64) -> Result<()> {
    if t == 0 || t % p == 0 {
        return Err(Error::Inadmissible(format!("p does not divide t fails (t = {})", t)));
    }
    let mmt = theta.modulus() as u128 * psi.modulus() as u128 * t as u128;
    if (level as u128 * p as u128) % mmt != 0 {
        return Err(Error::Inadmissible(format!(
            "M_theta M_psi t | Np fails ({} * {} * {} does not divide {} * {})",
            theta.modulus(),
            psi.modulus(),
            t,
            level,
            p
        )));
    }
    if psi.modulus() % p == 0 {
        return Err(Error::Inadmissible("(M_psi, p) = 1 fails".into()));
    }
    if !is_even_pair(theta, psi) {
        return Err(Error::Inadmissible("(theta_0 psi_0)(-1) = 1 fails".into()));
    }
    Ok(())
}

/// The smallest level `N` prime to `p` with `M_theta M_psi t | Np`.
pub fn minimal_level(theta: &DirichletCharacter, psi: &DirichletCharacter, t: u64, p: u64) -> u64 {
    let m = theta.modulus() * psi.modulus() * t;
    if m % p == 0 {
        m / p
    } else {
        m
    }
}

/// Largest square-free factor of `M_chi` prime to `f_chi` and to `exclude`.
pub fn imprimitive_part(chi: &DirichletCharacter, exclude: u64) -> u64 {
    prime_divisors(chi.modulus())
        .into_iter()
        .filter(|&l| chi.conductor() % l != 0 && l != exclude)
        .product()
}

/// `psi(0)`: 1 for the character of modulus 1, 0 otherwise.
pub fn value_at_zero(psi: &DirichletCharacter) -> i64 {
    (psi.modulus() == 1) as i64
}

struct SPowers<'a> {
    ring: &'a Arc<OkRing>,
    d: usize,
    cache: HashMap<u64, LambdaSeries>,
}

impl<'a> SPowers<'a> {
    fn new(ring: &'a Arc<OkRing>, d: usize) -> Self {
        SPowers { ring, d, cache: HashMap::new() }
    }

    fn get(&mut self, a: u64) -> Result<LambdaSeries> {
        if let Some(s) = self.cache.get(&a) {
            return Ok(s.clone());
        }
        let s = one_plus_x_pow_s(self.ring, a, self.d)?;
        self.cache.insert(a, s.clone());
        Ok(s)
    }
}

/// `G(X, chi omega^2)` for a possibly imprimitive `chi`:
/// `(sum_{a | D_chi} a mu(a) chi_0(a) (1+X)^{s(a)}) G(X, (chi omega^2)_0)`.
pub fn g_series_imprimitive(chi: &DirichletCharacter, ring: &Arc<OkRing>, m: u32, d: usize) -> Result<LambdaSeries> {
    let p = ring.p();
    let prim = chi.mul(&DirichletCharacter::omega_pow(p, 2)).primitive();
    let g = g_series(&prim, ring, m, d)?;
    let dchi = imprimitive_part(chi, p);
    if dchi == 1 {
        return Ok(g);
    }
    let chi0 = chi.primitive();
    let w = ring.cap() as i32;
    let mut sp = SPowers::new(ring, d);
    let mut factor = LambdaSeries::zero(ring, w, d);
    for a in divisors(dchi) {
        let c = chi0.eval_padic(ring, a as i64, w)?.scale_i64(a as i64 * mobius(a));
        factor = factor.add(&sp.get(a)?.scale(&c))?;
    }
    factor.mul(&g)
}

/// The Lambda-adic Eisenstein series `E_{theta,psi;t}` up to `q^{n_max}`,
/// coefficients mod `(p^M, X^D)`.
#[allow(clippy::too_many_arguments)]
pub fn lambda_eis(
    theta: &DirichletCharacter,
    psi: &DirichletCharacter,
    t: u64,
    level: u64,
    ring: &Arc<OkRing>,
    n_max: usize,
    m: u32,
    d: usize,
) -> Result<QExpansion<LambdaSeries>> {
    let p = ring.p();
    check_admissible(theta, psi, t, level, p)?;
    let w = ring.cap() as i32;
    let delta = is_delta_pair(theta, psi, p).then(|| delta_series(ring, d));
    let constant = if value_at_zero(psi) == 1 {
        let g = g_series_imprimitive(theta, ring, m, d)?;
        let half = PadicScalar::from_i64(ring, 2, w).inv()?;
        let g = match (&delta, g.pole()) {
            (Some(_), Pole::AtDelta) => g.numerator(),
            (None, Pole::None) => g,
            _ => return Err(Error::Inconsistency("constant term pole not cancelled".into())),
        };
        g.scale(&half)
    } else {
        LambdaSeries::zero(ring, w, d)
    };
    let mut sp = SPowers::new(ring, d);
    let mut coeffs = vec![LambdaSeries::zero(ring, w, d); n_max + 1];
    coeffs[0] = constant;
    let mut n = 1usize;
    while (n as u64) * t <= n_max as u64 {
        let mut acc = LambdaSeries::zero(ring, w, d);
        for dd in divisors(n as u64) {
            if dd % p == 0 {
                continue;
            }
            let c = theta.eval_padic(ring, dd as i64, w)?.mul(&psi.eval_padic(ring, (n as u64 / dd) as i64, w)?);
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&sp.get(dd)?.scale(&c.scale_i64(dd as i64)))?;
        }
        if let Some(dl) = &delta {
            acc = acc.mul(dl)?;
        }
        coeffs[n * t as usize] = acc;
        n += 1;
    }
    Ok(QExpansion {
        coeffs: coeffs.into_iter().map(|c| c.with_prec(m as i32)).collect(),
        level: level * p,
        weight: None,
        nebentypus: Some(theta.mul(psi)),
    })
}

/// Classical Eisenstein series with
/// `a_{tn} = sum_{d | n, p not dividing d} chi1(d) psi(n/d) d^{k-1}` and
/// `a_0 = psi(0) L(1-k, chi1)/2`, with the Euler factor at `p` removed from
/// both when `stabilize_at = Some(p)`.
pub fn classical_eis(
    k: u32,
    chi1: &DirichletCharacter,
    psi: &DirichletCharacter,
    t: u64,
    n_max: usize,
    stabilize_at: Option<u64>,
) -> Result<QExpansion<CyclotomicRational>> {
    if k < 2 {
        return Err(Error::Domain("weight must be at least 2".into()));
    }
    let parity = chi1.mul(psi).parity();
    if parity != (if k % 2 == 0 { 1 } else { -1 }) {
        return Err(Error::Inadmissible("(chi1 psi)(-1) = (-1)^k fails".into()));
    }
    let strip: Vec<u64> = stabilize_at.into_iter().collect();
    let zero = CyclotomicRational::zero(1);
    let mut coeffs = vec![zero.clone(); n_max + 1];
    if value_at_zero(psi) == 1 {
        coeffs[0] = dirichlet_l_negative(k as usize, chi1, &strip).scale(&BigRational::new(1.into(), 2.into()));
    }
    let mut n = 1u64;
    while n * t <= n_max as u64 {
        let mut acc = zero.clone();
        for dd in divisors(n) {
            if strip.iter().any(|&p| dd % p == 0) {
                continue;
            }
            let v = chi1.eval(dd as i64).mul(&psi.eval((n / dd) as i64));
            if !v.is_zero() {
                acc = acc.add(&v.scale(&BigRational::from_integer(num_traits::pow(BigInt::from(dd), k as usize - 1))));
            }
        }
        coeffs[(n * t) as usize] = acc;
        n += 1;
    }
    let mut level = chi1.modulus() * psi.modulus() * t;
    if let Some(p) = stabilize_at {
        if level % p != 0 {
            level *= p;
        }
    }
    Ok(QExpansion { coeffs, level, weight: Some(k), nebentypus: Some(chi1.mul(psi)) })
}

/// The specialization point `u^{k-2} - 1`.
pub fn weight_point(ring: &Arc<OkRing>, k: u32) -> PadicScalar {
    let w = ring.cap() as i32;
    let u = PadicScalar::from_i64(ring, 1 + ring.p() as i64, w);
    u.pow(k as u64 - 2).sub(&PadicScalar::one(ring, w))
}

/// `v_k`: evaluate every coefficient at `X = u^{k-2} - 1`.
pub fn specialize(f: &QExpansion<LambdaSeries>, k: u32) -> Result<QExpansion<PadicScalar>> {
    if k < 2 {
        return Err(Error::Domain("weight must be at least 2".into()));
    }
    let ring = f.coeffs[0].ring().clone();
    let x0 = weight_point(&ring, k);
    let mut out = f.map(|c| c.evaluate(&x0))?;
    out.weight = Some(k);
    Ok(out)
}

/// `delta(u^{k-2} - 1) = u^{1-k} - u`.
pub fn delta_at_weight(ring: &Arc<OkRing>, k: u32) -> Result<PadicScalar> {
    let w = ring.cap() as i32;
    let u = PadicScalar::from_i64(ring, 1 + ring.p() as i64, w);
    Ok(u.pow(k as u64 - 1).inv()?.sub(&u))
}

/// Embed an exact expansion p-adically.
pub fn embed(f: &QExpansion<CyclotomicRational>, ring: &Arc<OkRing>, prec: i32) -> QExpansion<PadicScalar> {
    f.map(|c| Ok(PadicScalar::from_cyclotomic(ring, c, prec))).unwrap()
}

/// `f | T_n`, valid up to `q^{floor(n_max / n)}`.
pub fn hecke_tn<C: Coefficient>(f: &QExpansion<C>, n: u64, tdd: impl Fn(u64) -> C) -> Result<QExpansion<C>> {
    if n == 0 {
        return Err(Error::Domain("T_0 is undefined".into()));
    }
    let n_max = f.n_max() as u64;
    if n > n_max.max(1) {
        return Err(Error::PrecisionExhausted(format!("T_{} needs more than {} coefficients", n, n_max + 1)));
    }
    let out_max = n_max / n;
    let lam: Vec<(u64, C)> = divisors(n).into_iter().map(|d| (d, tdd(d).scale_int(d as i64))).collect();
    let mut coeffs = Vec::with_capacity(out_max as usize + 1);
    for m in 0..=out_max {
        let g = gcd(m, n);
        let mut acc = f.coeffs[0].zero_like();
        for (d, l) in &lam {
            if g % d != 0 || l.is_zero() {
                continue;
            }
            let idx = (m * n / (d * d)) as usize;
            acc = acc.add(&l.mul(&f.coeffs[idx])?)?;
        }
        coeffs.push(acc);
    }
    Ok(QExpansion { coeffs, level: f.level, weight: f.weight, nebentypus: f.nebentypus.clone() })
}

/// `T_{d,d}` on `E_{theta,psi;t}`: `(theta psi)(d)(1+X)^{s(d)}`, zero unless `(d, Np) = 1`.
pub fn lambda_tdd(
    theta: &DirichletCharacter,
    psi: &DirichletCharacter,
    level_np: u64,
    ring: &Arc<OkRing>,
    d: usize,
) -> impl Fn(u64) -> LambdaSeries {
    let chi = theta.mul(psi);
    let ring = ring.clone();
    move |a| {
        let w = ring.cap() as i32;
        if gcd(a, level_np) != 1 {
            return LambdaSeries::zero(&ring, w, d);
        }
        let c = chi.eval_padic(&ring, a as i64, w).unwrap();
        one_plus_x_pow_s(&ring, a, d).unwrap().scale(&c)
    }
}

/// Classical `T_{d,d} = d^{k-2} chi(d)`, zero unless `(d, level) = 1`.
pub fn classical_tdd(k: u32, chi: &DirichletCharacter, level: u64) -> impl Fn(u64) -> CyclotomicRational {
    let chi = chi.clone();
    move |a| {
        if gcd(a, level) != 1 {
            return CyclotomicRational::zero(1);
        }
        chi.eval(a as i64).scale(&BigRational::from_integer(num_traits::pow(BigInt::from(a), k as usize - 2)))
    }
}

/// `T_l` eigenvalue `theta(l) l (1+X)^{s(l)} + psi(l)` for primes `l` not dividing `Np`.
pub fn lambda_tl_eigenvalue(
    theta: &DirichletCharacter,
    psi: &DirichletCharacter,
    l: u64,
    ring: &Arc<OkRing>,
    d: usize,
) -> Result<LambdaSeries> {
    let w = ring.cap() as i32;
    let a = theta.eval_padic(ring, l as i64, w)?.scale_i64(l as i64);
    let b = psi.eval_padic(ring, l as i64, w)?;
    one_plus_x_pow_s(ring, l, d)?.scale(&a).add(&LambdaSeries::constant(&b, d))
}

/// One term `c * E_{theta_0, psi_0; alpha beta t}` of the imprimitive decomposition.
#[derive(Clone, Debug)]
pub struct DecompositionTerm {
    pub coefficient: LambdaSeries,
    pub alpha: u64,
    pub beta: u64,
    pub theta0: DirichletCharacter,
    pub psi0: DirichletCharacter,
    pub t: u64,
}

/// `E_{theta,psi;t} = sum_{a | D_theta, b | D_psi} a mu(a) mu(b) theta_0(a) psi_0(b) (1+X)^{s(a)} E_{theta_0,psi_0;abt}`.
pub fn decompose_imprimitive(
    theta: &DirichletCharacter,
    psi: &DirichletCharacter,
    t: u64,
    ring: &Arc<OkRing>,
    d: usize,
) -> Result<Vec<DecompositionTerm>> {
    let p = ring.p();
    let w = ring.cap() as i32;
    let (theta0, psi0) = (theta.primitive(), psi.primitive());
    let dt = imprimitive_part(theta, p);
    let dp = imprimitive_part(psi, 0);
    let mut sp = SPowers::new(ring, d);
    let mut out = Vec::new();
    for a in divisors(dt) {
        for b in divisors(dp) {
            let c = theta0
                .eval_padic(ring, a as i64, w)?
                .mul(&psi0.eval_padic(ring, b as i64, w)?)
                .scale_i64(a as i64 * mobius(a) * mobius(b));
            out.push(DecompositionTerm {
                coefficient: sp.get(a)?.scale(&c),
                alpha: a,
                beta: b,
                theta0: theta0.clone(),
                psi0: psi0.clone(),
                t: a * b * t,
            });
        }
    }
    Ok(out)
}

/// Residual congruence of `T_l` eigenvalues for all `l` not dividing `Np`,
/// decided from the primitive parts.
pub fn congruence_criterion(
    pair1: (&DirichletCharacter, &DirichletCharacter),
    pair2: (&DirichletCharacter, &DirichletCharacter),
    p: u64,
) -> Result<bool> {
    let om = DirichletCharacter::omega_pow(p, 1);
    let (t1, s1) = (pair1.0.primitive(), pair1.1.primitive());
    let (t2, s2) = (pair2.0.primitive(), pair2.1.primitive());
    let ring = DirichletCharacter::ring_for(p, &[&t1, &s1, &t2, &s2]);
    let cond1 = t1.congruent_mod_pi(&t2, &ring)? && s1.congruent_mod_pi(&s2, &ring)?;
    let cond2 = t1.congruent_mod_pi(&s2.mul(&om.inverse()).primitive(), &ring)?
        && s1.congruent_mod_pi(&t2.mul(&om).primitive(), &ring)?;
    Ok(cond1 || cond2)
}

/// Brute force: compare `theta(l) l + psi(l)` mod `pi` for primes `l < bound`
/// not dividing `Np`. Returns the first prime where they differ.
pub fn congruence_witness(
    pair1: (&DirichletCharacter, &DirichletCharacter),
    pair2: (&DirichletCharacter, &DirichletCharacter),
    p: u64,
    level: u64,
    bound: u64,
) -> Result<Option<u64>> {
    let ring = DirichletCharacter::ring_for(p, &[pair1.0, pair1.1, pair2.0, pair2.1]);
    for l in 2..bound {
        if !crate::arith::int::is_prime(l) || gcd(l, level * p) != 1 {
            continue;
        }
        let ev = |t: &DirichletCharacter, s: &DirichletCharacter| -> Result<PadicScalar> {
            Ok(t.eval_padic(&ring, l as i64, 1)?.scale_i64(l as i64).add(&s.eval_padic(&ring, l as i64, 1)?))
        };
        let a = ev(pair1.0, pair1.1)?.with_prec(1);
        let b = ev(pair2.0, pair2.1)?.with_prec(1);
        if !a.eq_mod(&b) {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// `tau(n)` for `n <= n_max`, from `q prod (1 - q^n)^24`.
pub fn ramanujan_tau(n_max: usize) -> Vec<BigInt> {
    let mut eta = vec![BigInt::zero(); n_max + 1];
    eta[0] = BigInt::one();
    for n in 1..=n_max {
        for j in (n..=n_max).rev() {
            let v = eta[j - n].clone();
            eta[j] -= v;
        }
    }
    let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); n_max + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n_max + 1 - i) {
                c[i + j] += x * y;
            }
        }
        c
    };
    let e2 = mul(&eta, &eta);
    let e4 = mul(&e2, &e2);
    let e8 = mul(&e4, &e4);
    let e16 = mul(&e8, &e8);
    let e24 = mul(&e16, &e8);
    let mut tau = vec![BigInt::zero(); n_max + 1];
    tau[1..].clone_from_slice(&e24[..n_max]);
    tau
}
