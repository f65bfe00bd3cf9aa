//! Constant terms of weight-two Eisenstein series at cusps, residues, and the
//! level-one component of the Lambda-adic residue identity
//! `Res(E_{theta,psi;t}) = A_{theta,psi} e_{theta,psi;t}`.
//!
//! Everything here is pinned at `r = 1` (trivial `epsilon`). Cusp labels live
//! in `A_{Np}`; divisors on the residue side are taken in `C_{Np}`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::int::{divisors, gcd, mobius};
use crate::arith::{LambdaSeries, OkRing, PadicScalar};
use crate::characters::{xi, DirichletCharacter};
use crate::cusps::{enumerate_a0, enumerate_c, fricke_from_ints, width, CuspDivisor, CuspLabel, SLevel};
use crate::eisenstein::{check_admissible, imprimitive_part};
use crate::error::{Error, Result};
use crate::padic_lfun::{a_series, euler_primes, is_delta_pair, lp_value, one_plus_x_pow_s};

/// A ring holding every value and Gauss sum the residue formulas touch.
pub fn residue_ring(theta: &DirichletCharacter, psi: &DirichletCharacter, p: u64) -> Arc<OkRing> {
    let x = xi(theta, psi);
    let mut orders = vec![theta.order(), psi.order(), x.order()];
    for c in [theta.primitive().inverse(), x.clone(), psi.primitive()] {
        let (_, rest) = c.split_at(p);
        let rest = rest.primitive();
        orders.push(crate::arith::int::lcm(rest.modulus(), rest.order()));
    }
    OkRing::for_orders(p, &orders)
}

fn rat(ring: &Arc<OkRing>, n: i64, d: i64, prec: i32) -> PadicScalar {
    PadicScalar::from_rational(ring, &BigRational::new(BigInt::from(n), BigInt::from(d)), prec)
}

/// `delta(0) = u^{-1} - u` for the pair `(omega^{-2}, 1)`, otherwise 1.
fn delta_at_zero(theta: &DirichletCharacter, psi: &DirichletCharacter, ring: &Arc<OkRing>, prec: i32) -> Result<PadicScalar> {
    let p = ring.p();
    if is_delta_pair(theta, psi, p) {
        let u = PadicScalar::from_i64(ring, 1 + p as i64, prec);
        Ok(u.inv()?.sub(&u))
    } else {
        Ok(PadicScalar::one(ring, prec))
    }
}

/// `delta(0) prod_l (1 - xi(l) l^{-2}) L_p(-1, xi_2^{-1})`, from exact L-values.
pub fn l_factor(theta: &DirichletCharacter, psi: &DirichletCharacter, ring: &Arc<OkRing>, prec: i32) -> Result<PadicScalar> {
    let p = ring.p();
    let x = xi(theta, psi);
    let kl_char = x.twist_n(p, 2).inverse();
    let lp = PadicScalar::from_cyclotomic(ring, &lp_value(&kl_char, 2, p), prec);
    let mut v = delta_at_zero(theta, psi, ring, prec)?.mul(&lp);
    for l in euler_primes(theta, psi) {
        let e = PadicScalar::one(ring, prec).sub(&x.eval_padic(ring, l as i64, prec)?.mul(&rat(ring, 1, (l * l) as i64, prec)));
        v = v.mul(&e);
    }
    Ok(v)
}

/// Constant term of the weight-two specialization of `E_{theta,psi}` at the
/// cusp `[a; c]` of level `M` (a multiple of `f_theta f_psi`). Zero unless
/// `f_theta | c`.
pub fn constant_term_e2(theta: &DirichletCharacter, psi: &DirichletCharacter, cusp: &CuspLabel, ring: &Arc<OkRing>, prec: i32) -> Result<PadicScalar> {
    let m = cusp.modulus();
    let (f_theta, f_psi) = (theta.conductor(), psi.conductor());
    if m % (f_theta * f_psi) != 0 {
        return Err(Error::Domain(format!("level {} is not a multiple of f_theta f_psi = {}", m, f_theta * f_psi)));
    }
    if theta.primitive().is_trivial() && psi.primitive().is_trivial() {
        // E_2(1_(p), 1): the constant term is not a character of the cusp.
        return Err(Error::Inadmissible("theta_0 = psi_0 = 1 is outside the constant-term formula".into()));
    }
    let (a, c) = cusp.lift();
    if c as u64 % f_theta != 0 {
        return Ok(PadicScalar::zero(ring, prec));
    }
    let x = xi(theta, psi);
    let (theta0, psi0) = (theta.primitive(), psi.primitive());
    let w = prec + 4;
    let g = DirichletCharacter::gauss_ratio_padic(&x, &theta0.inverse(), ring, w)?;
    let fr = rat(ring, f_theta as i64, x.conductor() as i64, w);
    let v = g
        .mul(&fr)
        .mul(&fr)
        .mul(&psi0.eval_padic(ring, -c / f_theta as i64, w)?)
        .mul(&theta0.inverse().eval_padic(ring, a, w)?)
        .mul(&l_factor(theta, psi, ring, w)?)
        .mul(&rat(ring, 1, 2, w));
    Ok(v.with_prec(prec))
}

/// `W_c * a_0(E_2 | c)`.
pub fn residue_at(theta: &DirichletCharacter, psi: &DirichletCharacter, cusp: &CuspLabel, ring: &Arc<OkRing>, prec: i32) -> Result<PadicScalar> {
    Ok(constant_term_e2(theta, psi, cusp, ring, prec)?.scale_i64(width(cusp) as i64))
}

/// Sum of residues over all cusps of `X_1(M)`; zero by the residue theorem.
pub fn total_residue(theta: &DirichletCharacter, psi: &DirichletCharacter, m: u64, ring: &Arc<OkRing>, prec: i32) -> Result<PadicScalar> {
    let mut acc = PadicScalar::zero(ring, prec);
    for c in enumerate_c(m) {
        acc = acc.add(&residue_at(theta, psi, &c, ring, prec)?);
    }
    Ok(acc)
}

/// Sum over all cusps of `X_1(M)` of the residues of `E_2 | w_{M/t}^{-1}`.
pub fn total_residue_fricke(theta0: &DirichletCharacter, psi0: &DirichletCharacter, t: u64, m: u64, ring: &Arc<OkRing>, prec: i32) -> Result<PadicScalar> {
    let mut acc = PadicScalar::zero(ring, prec);
    for c in enumerate_c(m) {
        acc = acc.add(&residue_under_fricke(theta0, psi0, &c, t, ring, prec + 2)?.2);
    }
    Ok(acc.with_prec(prec))
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueRow {
    pub cusp: String,
    pub image: String,
    pub constant_term: String,
    pub width: u64,
    pub residue: String,
}

/// Residue at a cusp `c` of `X_1(Np)` of `E_2 | w_L^{-1}` with `L = Np/t`.
///
/// `w_L^{-1} gamma_c = gamma' U` with `U` upper triangular of determinant `L`
/// and lower-right entry `L / D`, `D = gcd(L, c)`, so
/// `Res_c = W_c (D^2 / L) a_0(E_2 | w_L(c))`. The image cusp is read at level
/// `L`, where `E_2` lives, which makes the value independent of the lift.
pub fn residue_under_fricke(
    theta0: &DirichletCharacter,
    psi0: &DirichletCharacter,
    cusp: &CuspLabel,
    t: u64,
    ring: &Arc<OkRing>,
    prec: i32,
) -> Result<(CuspLabel, PadicScalar, PadicScalar)> {
    let m = cusp.modulus();
    if m % t != 0 {
        return Err(Error::Domain(format!("t = {} does not divide {}", t, m)));
    }
    let l = m / t;
    let (a, c) = cusp.lift();
    let img = fricke_from_ints(a, c, l, 1)?;
    let dd = gcd(l, c as u64);
    let a0 = constant_term_e2(theta0, psi0, &img, ring, prec)?;
    let factor = rat(ring, (width(cusp) * dd * dd) as i64, l as i64, prec);
    Ok((img, a0.clone(), a0.mul(&factor)))
}

/// Level-one residue divisor of `E_{theta_0,psi_0;t}` for primitive characters:
/// `(psi_0(p)^{-1} / t) sum_{c in C^0} Res_c(E_2 | w_{Np/t}^{-1}) [c]`.
fn residue_divisor_primitive(
    theta0: &DirichletCharacter,
    psi0: &DirichletCharacter,
    t: u64,
    n: u64,
    ring: &Arc<OkRing>,
    prec: i32,
) -> Result<(CuspDivisor<PadicScalar>, Vec<ResidueRow>)> {
    let p = ring.p();
    let m = n * p;
    let w = prec + 4;
    let pre = psi0.eval_padic(ring, p as i64, w)?.inv()?.mul(&rat(ring, 1, t as i64, w));
    let mut div = CuspDivisor::new(m, true);
    let mut rows = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for label in enumerate_a0(n, p, 1)? {
        let rep = label.class_rep();
        if !seen.insert(rep) {
            continue;
        }
        let (img, a0, res) = residue_under_fricke(theta0, psi0, &rep, t, ring, w)?;
        if !a0.is_zero() {
            rows.push(ResidueRow {
                cusp: rep.to_string(),
                image: img.to_string(),
                constant_term: a0.with_prec(prec).to_string(),
                width: width(&rep),
                residue: res.with_prec(prec).to_string(),
            });
        }
        div.add_term(rep, res.mul(&pre).with_prec(prec))?;
    }
    Ok((div.pruned(), rows))
}

/// One term `coefficient * (theta_0, psi_0; alpha beta t)` of the imprimitive expansion.
struct Piece {
    alpha: u64,
    coefficient: PadicScalar,
    t: u64,
}

fn pieces(theta: &DirichletCharacter, psi: &DirichletCharacter, t: u64, ring: &Arc<OkRing>, prec: i32) -> Result<Vec<Piece>> {
    let p = ring.p();
    let (theta0, psi0) = (theta.primitive(), psi.primitive());
    let mut out = Vec::new();
    for a in divisors(imprimitive_part(theta, p)) {
        for b in divisors(imprimitive_part(psi, 0)) {
            let c = theta0
                .eval_padic(ring, a as i64, prec)?
                .mul(&psi0.eval_padic(ring, b as i64, prec)?)
                .scale_i64(a as i64 * mobius(a) * mobius(b));
            out.push(Piece { alpha: a, coefficient: c, t: a * b * t });
        }
    }
    Ok(out)
}

/// Level-one component of `Res(E_{theta,psi;t})` in `O[C^ord_1]`, through the
/// constant-term formula at every cusp of `C^0`.
pub fn residue_divisor_level1(
    theta: &DirichletCharacter,
    psi: &DirichletCharacter,
    t: u64,
    n: u64,
    ring: &Arc<OkRing>,
    prec: i32,
) -> Result<(CuspDivisor<PadicScalar>, Vec<ResidueRow>)> {
    let p = ring.p();
    check_admissible(theta, psi, t, n, p)?;
    let (theta0, psi0) = (theta.primitive(), psi.primitive());
    let mut total = CuspDivisor::new(n * p, true);
    let mut rows = Vec::new();
    for pc in pieces(theta, psi, t, ring, prec + 4)? {
        let (div, r) = residue_divisor_primitive(&theta0, &psi0, pc.t, n, ring, prec)?;
        total = total.add(&div.scale(&pc.coefficient)?)?;
        rows.extend(r);
    }
    let total = total.map(|v| Ok(v.with_prec(prec)))?;
    Ok((total.pruned(), rows))
}

/// The unit `C = (1/2) g((psi chi^{-1})_0) / g(chi_0^{-1}) omega^i(f_chi / f') (f_chi / f')^2`
/// with `theta = chi omega^i` and `f'` the conductor of `(psi chi^{-1})_0`.
pub fn lemma_constant(theta: &DirichletCharacter, psi: &DirichletCharacter, ring: &Arc<OkRing>, prec: i32) -> Result<PadicScalar> {
    let p = ring.p();
    let (om, chi) = theta.primitive().split_at(p);
    let chi0 = chi.primitive();
    let eta = psi.primitive().mul(&chi0.inverse()).primitive();
    let w = prec + 4;
    let g = DirichletCharacter::gauss_ratio_padic(&eta, &chi0.inverse(), ring, w)?;
    let (fc, fe) = (chi0.conductor() as i64, eta.conductor() as i64);
    let om_ratio = om.eval_padic(ring, fc, w)?.div(&om.eval_padic(ring, fe, w)?)?;
    let fr = rat(ring, fc, fe, w);
    Ok(g.mul(&om_ratio).mul(&fr).mul(&fr).mul(&rat(ring, 1, 2, w)).with_prec(prec))
}

/// `(1+X)^{s(a/b)}` for integers prime to `p` (signs are ignored since `s(-1) = 0`).
fn s_power_ratio(ring: &Arc<OkRing>, a: u64, b: u64, d: usize) -> Result<LambdaSeries> {
    one_plus_x_pow_s(ring, a, d)?.mul(&one_plus_x_pow_s(ring, b, d)?.invert()?)
}

/// Coefficient data of one support tuple.
#[derive(Clone, Debug, Serialize)]
pub struct TupleRecord {
    pub alpha: u64,
    pub t: u64,
    pub d_t: u64,
    pub d_q: u64,
    pub x: u64,
    pub y: u64,
    pub cusp: String,
    pub residue_width: u64,
    pub printed_width: u64,
}

/// `e_{theta_0,psi_0;t} = C sum_{S_t} (W_c / t) (1+X)^{s(-f_theta / f_xi d_t x)}
/// psi_0(yQ/d_Q) theta_0^{-1}(d_t x) [c]`, one term per sign class, where `W_c`
/// is [`SLevel::residue_width`]. For `t = 1`, `W_c / t = d_Q P / gcd(y, t)`.
fn e_divisor_primitive(
    theta0: &DirichletCharacter,
    psi0: &DirichletCharacter,
    alpha: u64,
    t: u64,
    n: u64,
    ring: &Arc<OkRing>,
    d: usize,
    out: &mut EDivisor,
) -> Result<CuspDivisor<LambdaSeries>> {
    let p = ring.p();
    let w = ring.cap() as i32;
    let x = xi(theta0, psi0);
    let lv = SLevel::new(theta0.conductor(), psi0.conductor(), t, n, p)?;
    let c = lemma_constant(theta0, psi0, ring, w - 6)?;
    let (fc, fx) = (theta0.conductor() / gcd(theta0.conductor(), p), x.conductor() / gcd(x.conductor(), p));
    let g = gcd(fc, fx);
    let mut div = CuspDivisor::new(n * p, true);
    for s in lv.tuples() {
        let label = lv.cusp(&s, 1)?;
        if label.class_rep() != label {
            continue;
        }
        let weight = lv.residue_width(&s, 1)?;
        let printed = lv.width_closed_form(&s);
        out.printed_width_agrees &= weight == printed;
        let coef = psi0
            .eval_padic(ring, (s.y * lv.big_q / s.d_q) as i64, w)?
            .mul(&theta0.inverse().eval_padic(ring, (s.d_t * s.x) as i64, w)?)
            .mul(&rat(ring, weight as i64, t as i64, w))
            .mul(&c);
        if coef.is_zero() {
            continue;
        }
        let sp = s_power_ratio(ring, fc / g, fx / g * s.d_t * s.x, d)?;
        div.add_term(label, sp.scale(&coef))?;
        out.tuples.push(TupleRecord {
            alpha,
            t,
            d_t: s.d_t,
            d_q: s.d_q,
            x: s.x,
            y: s.y,
            cusp: label.to_string(),
            residue_width: weight,
            printed_width: printed,
        });
    }
    Ok(div)
}

pub struct EDivisor {
    pub divisor: CuspDivisor<LambdaSeries>,
    pub tuples: Vec<TupleRecord>,
    /// Whether every residue weight equals the closed form `t d_Q P / gcd(y, t)`.
    pub printed_width_agrees: bool,
}

/// `e_{theta,psi;t} = sum_{a | D_theta, b | D_psi} a mu(a) mu(b) theta_0(a) psi_0(b) (1+X)^{s(a)} e_{theta_0,psi_0;abt}`.
pub fn e_divisor(theta: &DirichletCharacter, psi: &DirichletCharacter, t: u64, n: u64, ring: &Arc<OkRing>, d: usize) -> Result<EDivisor> {
    let p = ring.p();
    check_admissible(theta, psi, t, n, p)?;
    let (theta0, psi0) = (theta.primitive(), psi.primitive());
    let w = ring.cap() as i32;
    let mut out = EDivisor { divisor: CuspDivisor::new(n * p, true), tuples: Vec::new(), printed_width_agrees: true };
    for pc in pieces(theta, psi, t, ring, w)? {
        let e = e_divisor_primitive(&theta0, &psi0, pc.alpha, pc.t, n, ring, d, &mut out)?;
        let lam = one_plus_x_pow_s(ring, pc.alpha, d)?.scale(&pc.coefficient);
        out.divisor = out.divisor.add(&e.map(|v| v.mul(&lam))?)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisorEntry {
    pub cusp: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub cusp: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueReport {
    pub p: u64,
    pub level: u64,
    pub t: u64,
    pub precision: i32,
    pub series_length: usize,
    pub lhs: Vec<DivisorEntry>,
    pub rhs: Vec<DivisorEntry>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub mismatches: Vec<Mismatch>,
    pub table: Vec<ResidueRow>,
    pub tuples: Vec<TupleRecord>,
    pub printed_width_agrees: bool,
    /// Residue-theorem sums over `X_1(Np)`: first for `E_2`, then for
    /// `E_2 | w_{Np/t}^{-1}` at each `t` used by the primitive pieces.
    pub total_residue: Vec<String>,
    pub total_residue_zero: bool,
    /// Cusps where `e(0)` has a unit coefficient.
    pub unit_coefficients: Vec<String>,
    pub support_ok: bool,
    pub a_at_zero: String,
}

fn entries(div: &CuspDivisor<PadicScalar>) -> Vec<DivisorEntry> {
    div.terms.iter().map(|(k, v)| DivisorEntry { cusp: k.to_string(), value: v.to_string() }).collect()
}

/// Check `Res(E_{theta,psi;t}) = A(0) e(0)` coefficientwise in `O[C^ord_1]`
/// modulo `p^prec`, with `A` and `e` carried mod `X^d`. Precision of `A` is
/// taken from the Stickelberger series.
pub fn verify_res_identity(
    theta: &DirichletCharacter,
    psi: &DirichletCharacter,
    t: u64,
    n: u64,
    p: u64,
    prec: i32,
    d: usize,
) -> Result<ResidueReport> {
    if d == 0 {
        return Err(Error::Domain("series length must be positive".into()));
    }
    let ring = residue_ring(theta, psi, p);
    let (lhs, table) = residue_divisor_level1(theta, psi, t, n, &ring, prec)?;
    // A(0) usually carries the full Stickelberger precision; raise M only on a shortfall.
    let mut m = prec as u32;
    let mut a = a_series(theta, psi, &ring, m, d)?;
    while a.product.coeff(0).prec() < prec {
        let short = (prec - a.product.coeff(0).prec()) as u32;
        if m >= prec as u32 + 4 {
            return Err(Error::PrecisionExhausted(format!("A(0) known only mod p^{}", a.product.coeff(0).prec())));
        }
        m += short;
        a = a_series(theta, psi, &ring, m, d)?;
    }
    let e = e_divisor(theta, psi, t, n, &ring, d)?;
    let zero = PadicScalar::zero(&ring, ring.cap() as i32);
    let e0 = e.divisor.map(|s| s.evaluate(&zero))?;
    let a0 = a.product.coeff(0).clone();
    let rhs = e0.map(|v| Ok(v.mul(&a0).with_prec(prec)))?.pruned();

    let mut mismatches = Vec::new();
    let keys: std::collections::BTreeSet<CuspLabel> = lhs.terms.keys().chain(rhs.terms.keys()).copied().collect();
    let zp = PadicScalar::zero(&ring, prec);
    for k in &keys {
        let l = lhs.terms.get(k).unwrap_or(&zp);
        let r = rhs.terms.get(k).unwrap_or(&zp);
        if !l.sub(r).with_prec(prec).is_zero() {
            mismatches.push(Mismatch { cusp: k.to_string(), lhs: l.to_string(), rhs: r.to_string() });
        }
    }
    let support: std::collections::BTreeSet<CuspLabel> = e0.terms.keys().copied().collect();
    let support_ok = lhs.terms.keys().all(|k| support.contains(k));

    let (theta0, psi0) = (theta.primitive(), psi.primitive());
    let mut totals = vec![total_residue(&theta0, &psi0, n * p, &ring, prec)?];
    let mut ts: Vec<u64> = pieces(theta, psi, t, &ring, prec)?.iter().map(|pc| pc.t).collect();
    ts.sort_unstable();
    ts.dedup();
    for tt in ts {
        totals.push(total_residue_fricke(&theta0, &psi0, tt, n * p, &ring, prec)?);
    }
    let total_zero = totals.iter().all(|v| v.is_zero());
    let totals = totals.iter().map(|v| v.to_string()).collect();
    let unit_coefficients = e0.terms.iter().filter(|(_, v)| v.is_unit()).map(|(k, _)| k.to_string()).collect();
    Ok(ResidueReport {
        p,
        level: n,
        t,
        precision: prec,
        series_length: d,
        lhs: entries(&lhs),
        rhs: entries(&rhs),
        matched: mismatches.is_empty(),
        mismatches,
        table,
        tuples: e.tuples,
        printed_width_agrees: e.printed_width_agrees,
        total_residue: totals,
        total_residue_zero: total_zero,
        unit_coefficients,
        support_ok,
        a_at_zero: a0.with_prec(prec).to_string(),
    })
}
