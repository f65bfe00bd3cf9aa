//! Finite-precision structure theory over Lambda = O[[X]]: Weierstrass
//! preparation, Newton polygons, distinguished-polynomial gcds, and Fitting
//! and characteristic ideals of small presented modules.
//!
//! Ideals are compared through normal forms `p^mu * P` with `P`
//! distinguished; each normal form carries the p-adic precision to which
//! `P` is determined by the input.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{LambdaSeries, OkRing, PadicScalar, Pole};
use crate::error::{Error, Result};

/// Polynomial over O_K, constant term first.
pub type Poly = Vec<PadicScalar>;

/// `f = p^mu * distinguished * unit`.
#[derive(Clone, Debug)]
pub struct WeierstrassData {
    pub mu: u32,
    pub lambda: u32,
    /// Monic of degree `lambda`, lower coefficients in `pO`.
    pub distinguished: Poly,
    /// Coefficient `j` carries its own precision; see `weierstrass_prepare`.
    pub unit: LambdaSeries,
    /// `(M, D)`: `distinguished` is determined mod `p^M` (relative to
    /// `p^mu`) and `unit` mod `X^D`.
    pub certified_to: (i32, usize),
}

impl WeierstrassData {
    pub fn normal_form(&self) -> NormalForm {
        NormalForm { mu: self.mu, distinguished: self.distinguished.clone(), precision: self.certified_to.0 }
    }

    /// `p^mu * P * U` as a series of length `d`.
    pub fn recombine(&self, d: usize) -> Result<LambdaSeries> {
        let ring = self.unit.ring();
        let p_series = poly_to_series(ring, &self.distinguished, d);
        let u = pad(&self.unit, d);
        let v = p_series.mul(&u)?;
        Ok(LambdaSeries::from_coeffs(
            ring,
            v.coeffs().iter().map(|c| c.mul_p_pow(self.mu as i32)).collect(),
            Pole::None,
        ))
    }

    pub fn summary(&self) -> WeierstrassSummary {
        WeierstrassSummary {
            mu: self.mu,
            lambda: self.lambda,
            distinguished: self.distinguished.iter().map(|c| c.to_string()).collect(),
            unit_constant: self.unit.coeff(0).to_string(),
            certified_to: self.certified_to,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeierstrassSummary {
    pub mu: u32,
    pub lambda: u32,
    pub distinguished: Vec<String>,
    pub unit_constant: String,
    pub certified_to: (i32, usize),
}

/// Generator `p^mu * P` of a principal ideal, `P` known mod `p^precision`.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub mu: u32,
    pub distinguished: Poly,
    pub precision: i32,
}

impl NormalForm {
    pub fn lambda(&self) -> usize {
        self.distinguished.len() - 1
    }

    /// Equal as ideals at the common certified precision.
    pub fn same_ideal(&self, o: &NormalForm) -> bool {
        let k = self.precision.min(o.precision);
        self.mu == o.mu
            && self.lambda() == o.lambda()
            && self.distinguished.iter().zip(&o.distinguished).all(|(a, b)| a.with_prec(k).eq_mod(&b.with_prec(k)))
    }

    /// Whether this ideal contains `o` (that is, this generator divides `o`'s).
    pub fn divides(&self, o: &NormalForm) -> Result<bool> {
        if self.mu > o.mu || self.lambda() > o.lambda() {
            return Ok(false);
        }
        let k = self.precision.min(o.precision);
        let r = poly_rem(&o.distinguished, &self.distinguished)?;
        Ok(r.iter().all(|c| c.with_prec(k).is_zero()))
    }

    pub fn to_series(&self, ring: &Arc<OkRing>, d: usize) -> LambdaSeries {
        let s = poly_to_series(ring, &self.distinguished, d);
        LambdaSeries::from_coeffs(ring, s.coeffs().iter().map(|c| c.mul_p_pow(self.mu as i32)).collect(), Pole::None)
    }

    pub fn summary(&self) -> NormalFormSummary {
        NormalFormSummary {
            mu: self.mu,
            lambda: self.lambda(),
            distinguished: self.distinguished.iter().map(|c| c.to_string()).collect(),
            precision: self.precision,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalFormSummary {
    pub mu: u32,
    pub lambda: usize,
    pub distinguished: Vec<String>,
    pub precision: i32,
}

fn exact(ring: &Arc<OkRing>, a: i64) -> PadicScalar {
    PadicScalar::from_i64(ring, a, ring.cap() as i32)
}

fn pad(f: &LambdaSeries, d: usize) -> LambdaSeries {
    let ring = f.ring();
    let v = (0..d)
        .map(|j| if j < f.len() { f.coeff(j).clone() } else { exact(ring, 0) })
        .collect();
    LambdaSeries::from_coeffs(ring, v, f.pole())
}

pub fn poly_to_series(ring: &Arc<OkRing>, p: &Poly, d: usize) -> LambdaSeries {
    let v = (0..d).map(|j| p.get(j).cloned().unwrap_or_else(|| exact(ring, 0))).collect();
    LambdaSeries::from_coeffs(ring, v, Pole::None)
}

fn check_integral(f: &LambdaSeries) -> Result<()> {
    if f.pole() != Pole::None {
        return Err(Error::Domain("series has a pole; clear it before preparation".into()));
    }
    if f.coeffs().iter().any(|c| c.valuation().map(|v| v < 0).unwrap_or(false)) {
        return Err(Error::Domain("series is not integral".into()));
    }
    Ok(())
}

/// `(mu, lambda)` read off the coefficients, with the precision checks
/// needed for the reading to be certain.
fn read_mu_lambda(f: &LambdaSeries) -> Result<(u32, usize)> {
    check_integral(f)?;
    let mu = f
        .coeffs()
        .iter()
        .filter_map(|c| c.valuation())
        .min()
        .ok_or_else(|| Error::Indeterminate("series vanishes at working precision".into()))?;
    let lambda = f.coeffs().iter().position(|c| c.valuation() == Some(mu)).unwrap();
    if let Some(j) = f.coeffs()[..lambda].iter().position(|c| c.valuation().is_none() && c.prec() <= mu) {
        return Err(Error::PrecisionExhausted(format!(
            "coefficient {} is only known mod p^{}, cannot certify mu = {}",
            j,
            f.coeff(j).prec(),
            mu
        )));
    }
    Ok((mu as u32, lambda))
}

/// Weierstrass preparation of a truncated series of length `D`.
///
/// With `g = f / p^mu` known mod `X^D`, the distinguished part is determined
/// mod `p^{floor(D/lambda)}` (any tail `X^D e` lies in `(P) + p^{floor(D/lambda)}`),
/// and unit coefficient `j < D - lambda` mod `p^{ceil((D - lambda - j)/lambda)}`.
/// The computation completes the tail by zero and runs the division
/// `X^lambda = q g + r` by successive approximation.
pub fn weierstrass_prepare(f: &LambdaSeries) -> Result<WeierstrassData> {
    let (mu, lambda) = read_mu_lambda(f)?;
    let ring = f.ring().clone();
    let d = f.len();
    if lambda >= d {
        return Err(Error::PrecisionExhausted(format!("lambda >= D = {}", d)));
    }
    let g: Vec<PadicScalar> = f.coeffs().iter().map(|c| c.mul_p_pow(-(mu as i32))).collect();
    let gprec = g.iter().map(|c| c.prec()).min().unwrap();
    if lambda == 0 {
        let unit = LambdaSeries::from_coeffs(&ring, g, Pole::None);
        return Ok(WeierstrassData {
            mu,
            lambda: 0,
            distinguished: vec![exact(&ring, 1)],
            unit,
            certified_to: (gprec, d),
        });
    }
    let mp = gprec.min((d / lambda) as i32);
    if mp < 1 {
        return Err(Error::PrecisionExhausted("no p-adic digit of the distinguished part is determined".into()));
    }
    let l = d + lambda * mp as usize + 1;
    let gh = pad(&LambdaSeries::from_coeffs(&ring, g, Pole::None), l);
    let b: Vec<PadicScalar> = gh.coeffs()[..lambda].to_vec();
    let c = LambdaSeries::from_coeffs(&ring, gh.coeffs()[lambda..].to_vec(), Pole::None);
    let cinv = c.invert()?;
    let n = l - lambda;
    let one = LambdaSeries::one(&ring, ring.cap() as i32, n);
    let mut q = cinv.clone();
    let mut settled = false;
    for _ in 0..(2 * mp + 4) {
        // tau(q B): coefficients lambda.. of the product q * B.
        let mut t = vec![exact(&ring, 0); n];
        for (i, ti) in t.iter_mut().enumerate() {
            let k = i + lambda;
            for (j, bj) in b.iter().enumerate() {
                if k >= j && k - j < n {
                    *ti = ti.add(&q.coeff(k - j).mul(bj));
                }
            }
        }
        let t = LambdaSeries::from_coeffs(&ring, t, Pole::None);
        let next = cinv.mul(&one.sub(&t)?)?;
        let done = next.eq_at(&q, mp + 1);
        q = next;
        if done {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(Error::Inconsistency("Weierstrass division did not converge".into()));
    }
    let qg = q.mul(&LambdaSeries::from_coeffs(&ring, gh.coeffs()[..n].to_vec(), Pole::None))?;
    let mut dist: Poly = (0..lambda).map(|j| qg.coeff(j).with_prec(mp)).collect();
    dist.push(exact(&ring, 1));
    if dist[..lambda].iter().any(|c| c.valuation() == Some(0)) {
        return Err(Error::Inconsistency("distinguished part has a unit lower coefficient".into()));
    }
    let du = d - lambda;
    let uinv = q.truncate(du).invert()?;
    let unit = LambdaSeries::from_coeffs(
        &ring,
        uinv.coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| c.with_prec(mp.min((du - j).div_ceil(lambda) as i32)))
            .collect(),
        Pole::None,
    );
    Ok(WeierstrassData { mu, lambda: lambda as u32, distinguished: dist, unit, certified_to: (mp, du) })
}

/// Vertices of the lower convex hull of `(j, v(f_j))` over coefficients of
/// known valuation.
pub fn newton_polygon(f: &LambdaSeries) -> Result<Vec<(usize, i32)>> {
    check_integral(f)?;
    let pts: Vec<(usize, i32)> =
        f.coeffs().iter().enumerate().filter_map(|(j, c)| c.valuation().map(|v| (j, v))).collect();
    if pts.is_empty() {
        return Err(Error::Indeterminate("series vanishes at working precision".into()));
    }
    let mut hull: Vec<(usize, i32)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let cross = (x2 as i64 - x1 as i64) * (pt.1 as i64 - y1 as i64)
                - (y2 as i64 - y1 as i64) * (pt.0 as i64 - x1 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    Ok(hull)
}

/// `(mu, lambda)` from the Newton polygon: the lowest height and the first
/// vertex at that height.
pub fn iwasawa_invariants(f: &LambdaSeries) -> Result<(u32, u32)> {
    let poly = newton_polygon(f)?;
    let mu = poly.iter().map(|v| v.1).min().unwrap();
    let lambda = poly.iter().find(|v| v.1 == mu).unwrap().0;
    Ok((mu as u32, lambda as u32))
}

pub fn normal_form(f: &LambdaSeries) -> Result<NormalForm> {
    Ok(weierstrass_prepare(f)?.normal_form())
}

fn poly_is_zero(a: &Poly) -> bool {
    a.iter().all(|c| c.is_zero())
}

fn poly_trim(mut a: Poly) -> Poly {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
    a
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let ring = a[0].ring().clone();
    let mut out = vec![exact(&ring, 0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `b`.
pub fn poly_rem(a: &Poly, b: &Poly) -> Result<Poly> {
    let db = b.len() - 1;
    if !b[db].is_unit() {
        return Err(Error::Domain("divisor must be monic".into()));
    }
    let lead_inv = b[db].inv()?;
    let mut r = a.clone();
    while r.len() > db && r.len() > 1 {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().mul(&lead_inv);
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = r[k + j].sub(&c.mul(bj));
        }
        r.pop();
    }
    if db == 0 {
        return Ok(vec![exact(b[0].ring(), 0)]);
    }
    Ok(r)
}

fn make_monic(a: &Poly) -> Result<Poly> {
    let c = a.last().unwrap().inv()?;
    Ok(a.iter().map(|x| x.mul(&c)).collect())
}

/// Monic gcd over K of two monic polynomials (Euclid, with coefficients
/// treated as zero once they vanish at their precision).
pub fn dp_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    let (mut x, mut y) = (make_monic(&poly_trim(a.clone()))?, make_monic(&poly_trim(b.clone()))?);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            return Ok(if poly_is_zero(&y) { x } else { vec![exact(y[0].ring(), 1)] });
        }
        let r = poly_trim(poly_rem(&x, &y)?);
        if poly_is_zero(&r) {
            return Ok(y);
        }
        x = y;
        y = make_monic(&r)?;
    }
}

/// Determinant by Gaussian elimination over K, pivoting on least valuation.
pub fn det_scalar(mat: &[Vec<PadicScalar>]) -> Result<PadicScalar> {
    let n = mat.len();
    if n == 0 {
        return Err(Error::Domain("empty matrix".into()));
    }
    let ring = mat[0][0].ring().clone();
    let mut a: Vec<Vec<PadicScalar>> = mat.to_vec();
    let mut det = exact(&ring, 1);
    for col in 0..n {
        let piv = (col..n)
            .filter_map(|r| a[r][col].valuation().map(|v| (v, r)))
            .min()
            .map(|x| x.1);
        let Some(piv) = piv else {
            let prec = (col..n).map(|r| a[r][col].prec()).min().unwrap();
            return Ok(PadicScalar::zero(&ring, prec).mul(&det));
        };
        if piv != col {
            a.swap(piv, col);
            det = det.neg();
        }
        let pinv = a[col][col].inv()?;
        det = det.mul(&a[col][col]);
        for r in col + 1..n {
            let f = a[r][col].mul(&pinv);
            for c in col..n {
                let t = a[col][c].mul(&f);
                a[r][c] = a[r][c].sub(&t);
            }
        }
    }
    Ok(det)
}

/// Resultant of two polynomials via the Sylvester matrix.
pub fn resultant(a: &Poly, b: &Poly) -> Result<PadicScalar> {
    let (a, b) = (poly_trim(a.clone()), poly_trim(b.clone()));
    let (m, n) = (a.len() - 1, b.len() - 1);
    let ring = a[0].ring().clone();
    if m == 0 && n == 0 {
        return Ok(exact(&ring, 1));
    }
    if m == 0 {
        return Ok(a[0].pow(n as u64));
    }
    if n == 0 {
        return Ok(b[0].pow(m as u64));
    }
    let size = m + n;
    let mut mat = vec![vec![exact(&ring, 0); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    det_scalar(&mat)
}

/// A finitely presented Lambda-module: `relations` is an `m x n` matrix
/// whose rows are relations among `n` generators.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    generators: usize,
    relations: Vec<Vec<LambdaSeries>>,
}

impl PresentedModule {
    pub fn new(generators: usize, relations: Vec<Vec<LambdaSeries>>) -> Result<Self> {
        if relations.iter().any(|r| r.len() != generators) {
            return Err(Error::Domain("relation length differs from generator count".into()));
        }
        let mut it = relations.iter().flatten();
        if let Some(first) = it.next() {
            let (p, m) = (first.ring().p(), first.ring().m());
            if it.any(|s| s.ring().p() != p || s.ring().m() != m) {
                return Err(Error::Domain("entries live in different coefficient rings".into()));
            }
        }
        Ok(PresentedModule { generators, relations })
    }

    /// `Lambda/(f_1) + ... + Lambda/(f_n)`.
    pub fn diagonal(fs: &[LambdaSeries]) -> Result<Self> {
        let n = fs.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { fs[i].clone() } else { LambdaSeries::zero(fs[i].ring(), fs[i].ring().cap() as i32, fs[i].len()) })
                    .collect()
            })
            .collect();
        Self::new(n, rows)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Vec<LambdaSeries>] {
        &self.relations
    }

    /// The quotient by one more relation.
    pub fn with_relation(&self, row: Vec<LambdaSeries>) -> Result<Self> {
        let mut rel = self.relations.clone();
        rel.push(row);
        Self::new(self.generators, rel)
    }

    /// The matrix after base change along `X -> x0`.
    pub fn evaluate(&self, x0: &PadicScalar) -> Result<Vec<Vec<PadicScalar>>> {
        self.relations.iter().map(|r| r.iter().map(|s| s.evaluate(x0)).collect()).collect()
    }
}

fn det_series(mat: &[Vec<LambdaSeries>]) -> Result<LambdaSeries> {
    let n = mat.len();
    if n == 1 {
        return Ok(mat[0][0].clone());
    }
    let mut acc: Option<LambdaSeries> = None;
    for c in 0..n {
        let minor: Vec<Vec<LambdaSeries>> = mat[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, s)| s.clone()).collect())
            .collect();
        let mut term = mat[0][c].mul(&det_series(&minor)?)?;
        if c % 2 == 1 {
            term = term.neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.unwrap())
}

fn combinations(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, n, &mut Vec::new(), &mut out);
    out
}

/// Row sets indexing the minors returned by `fitting_ideal`, in order.
pub fn minor_rows(m: &PresentedModule) -> Vec<Vec<usize>> {
    combinations(m.relations.len(), m.generators)
}

/// Generators of `Fitt(M)`: all `n x n` minors. An empty list is the zero
/// ideal (fewer relations than generators).
pub fn fitting_ideal(m: &PresentedModule) -> Result<Vec<LambdaSeries>> {
    if m.generators == 0 {
        return Err(Error::Domain("module with no generators".into()));
    }
    minor_rows(m)
        .iter()
        .map(|rows| {
            let sub: Vec<Vec<LambdaSeries>> = rows.iter().map(|&r| m.relations[r].clone()).collect();
            det_series(&sub)
        })
        .collect()
}

/// Smallest principal ideal containing the given generators, or `None` for
/// the zero ideal. Generators vanishing at working precision are skipped.
pub fn principal_hull(gens: &[LambdaSeries]) -> Result<Option<NormalForm>> {
    let mut acc: Option<NormalForm> = None;
    for g in gens {
        let nf = match normal_form(g) {
            Ok(nf) => nf,
            Err(Error::Indeterminate(_)) => continue,
            Err(e) => return Err(e),
        };
        acc = Some(match acc {
            None => nf,
            Some(a) => NormalForm {
                mu: a.mu.min(nf.mu),
                distinguished: dp_gcd(&a.distinguished, &nf.distinguished)?,
                precision: a.precision.min(nf.precision),
            },
        });
    }
    Ok(acc)
}

/// Characteristic ideal of `Lambda/(f_1) + ... + Lambda/(f_r)`.
pub fn char_ideal_cyclic_sum(fs: &[LambdaSeries]) -> Result<NormalForm> {
    if fs.is_empty() {
        return Err(Error::Domain("empty sum".into()));
    }
    let mut mu = 0;
    let mut dist: Option<Poly> = None;
    let mut precision = i32::MAX;
    for f in fs {
        let nf = normal_form(f).map_err(|e| match e {
            Error::Indeterminate(_) => Error::Domain("zero factor: the module is not torsion".into()),
            e => e,
        })?;
        mu += nf.mu;
        precision = precision.min(nf.precision);
        dist = Some(match dist {
            None => nf.distinguished,
            Some(d) => poly_mul(&d, &nf.distinguished),
        });
    }
    let distinguished = dist.unwrap().into_iter().map(|c| c.with_prec(precision)).collect();
    Ok(NormalForm { mu, distinguished, precision })
}
