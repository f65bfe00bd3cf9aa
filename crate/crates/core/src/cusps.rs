//! Cusps of X_1(M) as classes `[x; y]` in `A_M`, with `C_M = A_M / {+-1}`.
//!
//! `[x; y] ~ [x'; y']` iff `y = y' (mod M)` and `x = x' (mod gcd(M, y))`. A
//! label is stored with `0 <= y < M` and `0 <= x < gcd(M, y)`, where
//! `gcd(M, 0) = M`. The sign quotient is applied only through
//! [`CuspLabel::class_rep`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::int::{crt, divisors, euler_phi, gcd, inv_mod, lcm, prime_divisors};
use crate::arith::padic::teich_u64;
use crate::arith::Coefficient;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspLabel {
    // Field order gives the (modulus, y, x) ordering used for class representatives.
    modulus: u64,
    y: u64,
    x: u64,
}

fn gcd_m(m: u64, y: u64) -> u64 {
    if y == 0 {
        m
    } else {
        gcd(m, y)
    }
}

impl CuspLabel {
    pub fn new(x: i64, y: i64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        let yr = y.rem_euclid(m as i64) as u64;
        let g = gcd_m(m, yr);
        let xr = x.rem_euclid(g as i64) as u64;
        if gcd(xr, g) != 1 && g != 1 {
            return Err(Error::NotACusp { x, y, modulus: m });
        }
        Ok(CuspLabel { modulus: m, y: yr, x: xr })
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn neg(&self) -> Self {
        CuspLabel::new(-(self.x as i64), -(self.y as i64), self.modulus).unwrap()
    }

    /// Deterministic representative of the class in `C_M`.
    pub fn class_rep(&self) -> Self {
        (*self).min(self.neg())
    }

    /// Coprime integers `(a, c)` with `0 < c <= M` representing the label.
    pub fn lift(&self) -> (i64, i64) {
        let c = if self.y == 0 { self.modulus } else { self.y };
        let g = gcd_m(self.modulus, self.y);
        let mut a = self.x;
        while gcd(a, c) != 1 {
            a += g;
        }
        (a as i64, c as i64)
    }

    /// `p | y`: the label lies in `D_r`.
    pub fn in_d(&self, p: u64) -> bool {
        self.y % p == 0
    }
}

impl fmt::Display for CuspLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]_{}", self.x, self.y, self.modulus)
    }
}

/// All of `A_M`, ordered.
pub fn enumerate_a(m: u64) -> Vec<CuspLabel> {
    let mut out = Vec::new();
    for y in 0..m {
        let g = gcd_m(m, y);
        for x in 0..g {
            if gcd(x, g) == 1 || g == 1 {
                out.push(CuspLabel { modulus: m, y, x });
            }
        }
    }
    out
}

/// Class representatives of `C_M`, ordered.
pub fn enumerate_c(m: u64) -> Vec<CuspLabel> {
    let mut v: Vec<CuspLabel> = enumerate_a(m).into_iter().map(|l| l.class_rep()).collect();
    v.sort();
    v.dedup();
    v
}

/// `(1/2) sum_{d | M} phi(d) phi(M/d)`, the number of cusps of X_1(M) for `M > 4`.
pub fn cusp_count_formula(m: u64) -> u64 {
    divisors(m).iter().map(|&d| euler_phi(d) * euler_phi(m / d)).sum::<u64>() / 2
}

/// Index of the image of Gamma_1(M) in PSL_2(Z).
pub fn gamma1_index(m: u64) -> u64 {
    match m {
        1 => 1,
        2 => 3,
        _ => {
            let mut num = m * m;
            let mut den = 2u64;
            for l in prime_divisors(m) {
                num = num / l * (l * l - 1);
                den *= l;
            }
            num / den
        }
    }
}

/// Componentwise reduction `A_M -> A_{M1} x A_{M2}`.
pub fn crt_split(label: &CuspLabel, m1: u64, m2: u64) -> Result<(CuspLabel, CuspLabel)> {
    if m1 * m2 != label.modulus || gcd(m1, m2) != 1 {
        return Err(Error::Domain(format!("{} * {} is not a coprime factorization of {}", m1, m2, label.modulus)));
    }
    let (x, y) = (label.x as i64, label.y as i64);
    Ok((CuspLabel::new(x, y, m1)?, CuspLabel::new(x, y, m2)?))
}

pub fn crt_join(a: &CuspLabel, b: &CuspLabel) -> Result<CuspLabel> {
    let (m1, m2) = (a.modulus, b.modulus);
    if gcd(m1, m2) != 1 {
        return Err(Error::Domain("moduli are not coprime".into()));
    }
    let (y, m) = crt(&[(a.y, m1), (b.y, m2)]);
    let (x, _) = crt(&[(a.x, gcd_m(m1, a.y)), (b.x, gcd_m(m2, b.y))]);
    CuspLabel::new(x as i64, y as i64, m)
}

/// `<d>[a; c] = [d' a; d c]`, or `None` when `gcd(d, M) > 1`.
pub fn diamond(d: u64, label: &CuspLabel) -> Option<CuspLabel> {
    let m = label.modulus;
    let dp = inv_mod(d % m, m)?;
    let x = (dp as u128 * label.x as u128 % m as u128) as i64;
    let y = (d as u128 * label.y as u128 % m as u128) as i64;
    Some(CuspLabel::new(x, y, m).unwrap())
}

/// `T_p [a; c] = sum_{i < p} [(a + ic)/g; pc/g]` with `g = gcd(a + ic, pc)`, for `p | M`.
pub fn tp_action(label: &CuspLabel, p: u64) -> Result<Vec<CuspLabel>> {
    let m = label.modulus;
    if m % p != 0 {
        return Err(Error::Domain(format!("p = {} does not divide the level {}", p, m)));
    }
    let (a, c) = label.lift();
    (0..p as i64)
        .map(|i| {
            let num = a + i * c;
            let den = p as i64 * c;
            let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
            CuspLabel::new(num / g, den / g, m)
        })
        .collect()
}

/// Width of the cusp: the least `W > 0` with `c^2 W = a c W = 0 (mod M)`.
pub fn width(label: &CuspLabel) -> u64 {
    let m = label.modulus;
    let (a, c) = label.lift();
    let c2 = (c as u128 * c as u128 % m as u128) as u64;
    let ac = ((a as i128 * c as i128).rem_euclid(m as i128)) as u64;
    lcm(m / gcd_m(m, c2), m / gcd_m(m, ac))
}

/// Brute-force width: search `W` with `gamma (1 W; 0 1) gamma^{-1}` in Gamma_1(M).
pub fn width_by_conjugation(label: &CuspLabel) -> u64 {
    let m = label.modulus as i128;
    let (a, c) = label.lift();
    let (a, c) = (a as i128, c as i128);
    (1..=m as u64)
        .find(|&w| {
            let w = w as i128;
            // gamma T^W gamma^{-1} = (1 - acW, a^2 W; -c^2 W, 1 + acW)
            (c * c * w).rem_euclid(m) == 0 && (1 + a * c * w).rem_euclid(m) == 1 % m && (1 - a * c * w).rem_euclid(m) == 1 % m
        })
        .unwrap()
}

/// `w_L` with `L = M/t` applied to integers `(a, c)`: `[-c/D; aL/D]`, `D = gcd(aL, c)`.
pub fn fricke_from_ints(a: i64, c: i64, m: u64, t: u64) -> Result<CuspLabel> {
    if t == 0 || m % t != 0 {
        return Err(Error::Domain(format!("t = {} does not divide {}", t, m)));
    }
    let l = (m / t) as i128;
    let top = a as i128 * l;
    let dd = gcd(top.unsigned_abs() as u64, c.unsigned_abs()) as i128;
    let dd = if dd == 0 { 1 } else { dd };
    let x = (-(c as i128) / dd) as i64;
    let y = (top / dd).rem_euclid(m as i128) as i64;
    CuspLabel::new(x, y, m)
}

pub fn fricke_cusp(label: &CuspLabel, t: u64) -> Result<CuspLabel> {
    let (a, c) = label.lift();
    fricke_from_ints(a, c, label.modulus, t)
}

/// A finitely supported combination of cusp labels.
#[derive(Clone, Debug)]
pub struct CuspDivisor<C> {
    pub modulus: u64,
    /// Labels are class representatives in `C_M` when set.
    pub sign_quotient: bool,
    pub terms: BTreeMap<CuspLabel, C>,
}

impl<C: Coefficient> CuspDivisor<C> {
    pub fn new(modulus: u64, sign_quotient: bool) -> Self {
        CuspDivisor { modulus, sign_quotient, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, label: CuspLabel, c: C) -> Result<()> {
        if label.modulus != self.modulus {
            return Err(Error::Domain("label modulus does not match the divisor".into()));
        }
        let key = if self.sign_quotient { label.class_rep() } else { label };
        let v = match self.terms.remove(&key) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        self.terms.insert(key, v);
        Ok(())
    }

    pub fn scale(&self, c: &C) -> Result<Self> {
        let mut out = CuspDivisor::new(self.modulus, self.sign_quotient);
        for (k, v) in &self.terms {
            out.terms.insert(*k, v.mul(c)?);
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, v.clone())?;
        }
        Ok(out)
    }

    /// Drop the terms whose coefficient is zero.
    pub fn pruned(&self) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> Result<D>) -> Result<CuspDivisor<D>> {
        let mut out = CuspDivisor::new(self.modulus, self.sign_quotient);
        for (k, v) in &self.terms {
            out.terms.insert(*k, f(v)?);
        }
        Ok(out)
    }

    /// Reduce to `C_M`.
    pub fn to_classes(&self) -> Result<Self> {
        let mut out = CuspDivisor::new(self.modulus, true);
        for (k, v) in &self.terms {
            out.add_term(*k, v.clone())?;
        }
        Ok(out)
    }
}

/// The ordinary projection, realized as the quotient by `O[D_r]`.
pub fn ordinary_projection<C: Coefficient>(div: &CuspDivisor<C>, p: u64) -> CuspDivisor<C> {
    let mut out = div.clone();
    out.terms.retain(|k, _| !k.in_d(p));
    out
}

/// `T_p^E` on `(Z/p^k)[A_M]` for `E = lcm(1..=|A_M|) * k`, followed by
/// dropping the `D_r` labels. Agrees with [`ordinary_projection`] when `T_p`
/// permutes the labels outside `D_r` modulo `D_r`.
pub fn ordinary_projection_oracle(div: &BTreeMap<CuspLabel, i64>, m: u64, p: u64, k: u32) -> Result<BTreeMap<CuspLabel, i64>> {
    let labels = enumerate_a(m);
    let n = labels.len();
    let index: BTreeMap<CuspLabel, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let modq = (p as u128).pow(k);
    // Column j holds T_p applied to label j.
    let mut mat = vec![vec![0u128; n]; n];
    for (j, l) in labels.iter().enumerate() {
        for img in tp_action(l, p)? {
            let i = index[&img];
            mat[i][j] = (mat[i][j] + 1) % modq;
        }
    }
    let mul = |a: &Vec<Vec<u128>>, b: &Vec<Vec<u128>>| -> Vec<Vec<u128>> {
        let mut c = vec![vec![0u128; n]; n];
        for i in 0..n {
            for (l, &ail) in a[i].iter().enumerate() {
                if ail == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i][j] = (c[i][j] + ail * b[l][j]) % modq;
                }
            }
        }
        c
    };
    let mut e = BigUint::from(1u32);
    for i in 1..=n as u64 {
        e = num_integer::Integer::lcm(&e, &BigUint::from(i));
    }
    e *= k.max(1);
    let mut result: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u128).collect()).collect();
    let mut base = mat;
    for bit in 0..e.bits() {
        if e.bit(bit) {
            result = mul(&result, &base);
        }
        base = mul(&base, &base);
    }
    let mut v = vec![0u128; n];
    for (l, &c) in div {
        v[index[l]] = (c.rem_euclid(modq as i64)) as u128;
    }
    let mut out = BTreeMap::new();
    for i in 0..n {
        if labels[i].in_d(p) {
            continue;
        }
        let s = (0..n).map(|j| result[i][j] * v[j] % modq).sum::<u128>() % modq;
        if s != 0 {
            out.insert(labels[i], s as i64);
        }
    }
    Ok(out)
}

/// `A_r^0`: `([a; c]_N, [0; omega(c)]_{p^r})` with `0 < c < Np`, `p` not
/// dividing `c`, and `0 <= a < gcd(N, c)` prime to `gcd(N, c)`.
pub fn enumerate_a0(n: u64, p: u64, r: u32) -> Result<Vec<CuspLabel>> {
    if n % p == 0 {
        return Err(Error::Domain("N must be prime to p".into()));
    }
    let pr = p.pow(r);
    let mut out = Vec::new();
    for c in 1..n * p {
        if c % p == 0 {
            continue;
        }
        let g = gcd(n, c);
        for a in 0..g {
            if gcd(a, g) != 1 && g != 1 {
                continue;
            }
            let left = CuspLabel::new(a as i64, c as i64, n)?;
            let right = CuspLabel::new(0, teich_u64(c as i64, p, r) as i64, pr)?;
            out.push(crt_join(&left, &right)?);
        }
    }
    Ok(out)
}

/// Level data `N = f~_theta P Q t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SLevel {
    pub n: u64,
    pub p: u64,
    pub t: u64,
    pub f_theta: u64,
    pub f_theta_tilde: u64,
    pub f_psi: u64,
    /// `P = prod_{l | f_psi} l^{ord_l(N / f~_theta t)}`.
    pub big_p: u64,
    pub big_q: u64,
}

/// A tuple `(d_t, d_Q, x, y)` of the support set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct STuple {
    pub d_t: u64,
    pub d_q: u64,
    pub x: u64,
    pub y: u64,
}

impl SLevel {
    pub fn new(f_theta: u64, f_psi: u64, t: u64, n: u64, p: u64) -> Result<Self> {
        let ft = f_theta / gcd(f_theta, p);
        if n % p == 0 {
            return Err(Error::Domain("N must be prime to p".into()));
        }
        if n % (ft * t) != 0 {
            return Err(Error::Domain(format!("f~_theta t = {} does not divide N = {}", ft * t, n)));
        }
        let rest = n / (ft * t);
        let mut big_p = 1u64;
        for l in prime_divisors(f_psi) {
            let mut r = rest;
            while r % l == 0 {
                big_p *= l;
                r /= l;
            }
        }
        Ok(SLevel { n, p, t, f_theta, f_theta_tilde: ft, f_psi, big_p, big_q: rest / big_p })
    }

    /// `gcd(N, c) = d_t d_Q P` for the attached cusp.
    pub fn g(&self, s: &STuple) -> u64 {
        s.d_t * s.d_q * self.big_p
    }

    pub fn c(&self, s: &STuple) -> u64 {
        self.g(s) * s.x
    }

    /// The cusp `([y; d_t d_Q P x]_N, [0; omega(d_t d_Q P x)]_{p^r})`.
    pub fn cusp(&self, s: &STuple, r: u32) -> Result<CuspLabel> {
        let c = self.c(s);
        let left = CuspLabel::new(s.y as i64, c as i64, self.n)?;
        let pr = self.p.pow(r);
        let right = CuspLabel::new(0, teich_u64(c as i64, self.p, r) as i64, pr)?;
        crt_join(&left, &right)
    }

    /// Closed-form width `t d_Q P / gcd(y, t)` of the Fricke image.
    pub fn width_closed_form(&self, s: &STuple) -> u64 {
        self.t * s.d_q * self.big_p / gcd(s.y, self.t)
    }

    /// Weight of the tuple's cusp in the residue of `E_2 | w_L^{-1}`, `L = Np^r / t`:
    /// `e_c W_L(w_L c)` with `e_c = W_{Np^r}(c) / W_L(c)` the ramification index
    /// of `X_1(Np^r) -> X_1(L)` at `c`. Equals [`SLevel::width_closed_form`]
    /// when `t = 1`; for `t > 1` the two can differ by the ratio of
    /// ramification indices at `c` and at `w_L(c)`.
    pub fn residue_width(&self, s: &STuple, r: u32) -> Result<u64> {
        let label = self.cusp(s, r)?;
        let l = label.modulus() / self.t;
        let (a, c) = label.lift();
        let down = CuspLabel::new(a, c, l)?;
        let img = fricke_from_ints(a, c, l, 1)?;
        Ok(width(&label) / width(&down) * width(&img))
    }

    /// Closed-form Fricke image `[-d_t x; y f~_theta Q p^r / d_Q]`.
    pub fn fricke_closed_form(&self, s: &STuple, r: u32) -> Result<CuspLabel> {
        let m = self.n * self.p.pow(r);
        let top = -((s.d_t * s.x) as i64);
        let bottom = (s.y as u128 * self.f_theta_tilde as u128 * self.big_q as u128 * self.p.pow(r) as u128 / s.d_q as u128) % m as u128;
        CuspLabel::new(top, bottom as i64, m)
    }

    /// All tuples: `d_t | t`, `d_Q | Q`, `gcd(d_t, f_theta p) = 1`;
    /// `0 < x < Np / g` prime to `Np / g`; `y` a residue mod `g` prime to `g`,
    /// where `g = d_t d_Q P`.
    pub fn tuples(&self) -> Vec<STuple> {
        let n1 = self.n * self.p;
        let mut out = Vec::new();
        for d_t in divisors(self.t) {
            if gcd(d_t, self.f_theta * self.p) != 1 {
                continue;
            }
            for d_q in divisors(self.big_q) {
                let g = d_t * d_q * self.big_p;
                let rest = n1 / g;
                for x in 1..rest.max(2) {
                    if gcd(x, rest) != 1 {
                        continue;
                    }
                    for y in 0..g {
                        if g != 1 && gcd(y, g) != 1 {
                            continue;
                        }
                        out.push(STuple { d_t, d_q, x, y });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(CuspLabel::new(1, 0, 5).unwrap(), CuspLabel::new(6, 0, 5).unwrap());
        assert_eq!(CuspLabel::new(6, 5, 25).unwrap(), CuspLabel::new(1, 5, 25).unwrap());
        assert!(matches!(CuspLabel::new(5, 0, 25), Err(Error::NotACusp { .. })));
        assert_eq!(enumerate_a(5).len(), 8);
        assert_eq!(enumerate_c(5).len(), 4);
        assert_eq!(cusp_count_formula(5), 4);
    }

    #[test]
    fn widths_level_five() {
        let mut w: Vec<u64> = enumerate_c(5).iter().map(width).collect();
        w.sort();
        assert_eq!(w, vec![1, 1, 5, 5]);
        assert_eq!(gamma1_index(5), 12);
        assert_eq!(width(&CuspLabel::new(0, 1, 5).unwrap()), 5);
        assert_eq!(width(&CuspLabel::new(1, 0, 5).unwrap()), 1);
    }

    #[test]
    fn width_matches_conjugation() {
        for m in [5, 12, 25, 35] {
            for l in enumerate_a(m) {
                assert_eq!(width(&l), width_by_conjugation(&l), "{}", l);
            }
        }
    }

    #[test]
    fn crt_round_trip_and_sign_caveat() {
        for l in enumerate_a(35) {
            let (a, b) = crt_split(&l, 5, 7).unwrap();
            assert_eq!(crt_join(&a, &b).unwrap(), l);
        }
        // (a, b) and (a, -b) agree in each factor mod sign but differ in A_35 / {+-1}.
        let found = enumerate_a(35).into_iter().any(|l| {
            let (a, b) = crt_split(&l, 5, 7).unwrap();
            let other = crt_join(&a, &b.neg()).unwrap();
            other.class_rep() != l.class_rep() && b.neg() != b
        });
        assert!(found);
    }

    #[test]
    fn fricke_involution_and_infinity() {
        let inf = CuspLabel::new(1, 0, 35).unwrap();
        assert_eq!(fricke_cusp(&inf, 1).unwrap().class_rep(), CuspLabel::new(0, 1, 35).unwrap().class_rep());
        for l in enumerate_a(35) {
            let back = fricke_cusp(&fricke_cusp(&l, 1).unwrap(), 1).unwrap();
            assert_eq!(back.class_rep(), l.class_rep());
        }
    }

    #[test]
    fn diamond_is_an_action() {
        let m = 21;
        for l in enumerate_a(m) {
            assert_eq!(diamond(1, &l), Some(l));
            for d1 in [2u64, 5, 8] {
                for d2 in [4u64, 10] {
                    let lhs = diamond(d1, &diamond(d2, &l).unwrap()).unwrap();
                    assert_eq!(lhs, diamond(d1 * d2 % m, &l).unwrap());
                }
            }
            assert_eq!(diamond(7, &l), None);
        }
    }

    #[test]
    fn tp_lands_in_d() {
        for l in enumerate_a(35) {
            if l.in_d(5) {
                continue;
            }
            let imgs = tp_action(&l, 5).unwrap();
            assert_eq!(imgs.iter().filter(|i| !i.in_d(5)).count(), 1);
        }
    }

    #[test]
    fn ordinary_projection_oracle_level_25() {
        let m = 25;
        let mut div = BTreeMap::new();
        for (i, l) in enumerate_a(m).into_iter().enumerate() {
            div.insert(l, (i as i64 % 7) + 1);
        }
        let oracle = ordinary_projection_oracle(&div, m, 5, 3).unwrap();
        let want: BTreeMap<CuspLabel, i64> = div.iter().filter(|(l, _)| !l.in_d(5)).map(|(l, c)| (*l, *c)).collect();
        assert_eq!(oracle, want);
    }

    #[test]
    fn a0_count_independent_of_r() {
        let a1 = enumerate_a0(3, 5, 1).unwrap();
        let a2 = enumerate_a0(3, 5, 2).unwrap();
        assert_eq!(a1.len(), a2.len());
        assert!(a1.iter().all(|l| !l.in_d(5)));
    }

    #[test]
    fn s_tuples_trivial_level() {
        let lv = SLevel::new(1, 1, 1, 1, 5).unwrap();
        let ts = lv.tuples();
        assert!(ts.iter().all(|s| s.d_t == 1 && s.d_q == 1));
        assert_eq!(ts.len(), 4);
    }

    #[test]
    fn s_tuple_cusps_and_widths() {
        // f_theta = 5 (omega power), f_psi = 3, t = 2, N = 6, p = 5
        let lv = SLevel::new(5, 3, 2, 6, 5).unwrap();
        assert_eq!((lv.big_p, lv.big_q), (3, 1));
        let a0 = enumerate_a0(6, 5, 1).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for s in lv.tuples() {
            let c = lv.cusp(&s, 1).unwrap();
            assert!(a0.contains(&c));
            assert!(seen.insert(c), "duplicate label {}", c);
            let (a, cc) = c.lift();
            let w = fricke_from_ints(a, cc, 30, lv.t).unwrap();
            assert_eq!(w.class_rep(), lv.fricke_closed_form(&s, 1).unwrap().class_rep(), "{:?}", s);
            assert_eq!(width(&w), lv.width_closed_form(&s), "{:?}", s);
        }
        let lv1 = SLevel::new(5, 3, 1, 6, 5).unwrap();
        for s in lv1.tuples() {
            assert_eq!(lv1.residue_width(&s, 1).unwrap(), lv1.width_closed_form(&s));
        }
    }
}
