//! The unramified coefficient ring O_K = Z_p[zeta_m] with p not dividing m.
//!
//! O_K is realised as `(Z/p^k)[t] / H(t)` where `H` is a monic polynomial
//! whose reduction mod p is irreducible of degree `f = ord_m(p)`. The
//! embedding datum is the element `zeta` (a Teichmuller lift) chosen so that
//! `zeta^(m/(p-1))` is the Teichmuller lift of the least primitive root mod
//! p; with that choice the Teichmuller character is `a -> zeta_{p-1}^{log a}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::int::{gcd, lcm, mult_order, pow_mod, primitive_root, prime_divisors};

/// Raw ring element: coefficient vector in the power basis of `t`.
pub type Elem = Vec<u64>;

#[derive(Debug)]
pub struct OkRing {
    p: u64,
    m: u64,
    f: usize,
    cap: u32,
    ppow: Vec<u64>,
    /// Monic modulus, constant term first, length `f + 1`.
    modpoly: Vec<u64>,
    zeta_pows: Vec<Elem>,
}

fn ring_cache() -> &'static Mutex<HashMap<(u64, u64), Arc<OkRing>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<OkRing>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Largest `k` with `p^k < 2^62`.
pub fn precision_cap(p: u64) -> u32 {
    let mut k = 0;
    let mut v: u128 = 1;
    while v * (p as u128) < (1u128 << 62) {
        v *= p as u128;
        k += 1;
    }
    k
}

impl OkRing {
    /// The ring containing `zeta_m` for `m` a multiple of `p - 1`.
    ///
    /// Rings are cached, so repeated calls share one embedding datum.
    pub fn get(p: u64, m: u64) -> Arc<OkRing> {
        let m = lcm(m.max(1), p - 1);
        assert!(m % p != 0, "ring must be unramified: p divides m");
        let mut cache = ring_cache().lock().unwrap();
        if let Some(r) = cache.get(&(p, m)) {
            return r.clone();
        }
        let r = Arc::new(Self::build(p, m));
        cache.insert((p, m), r.clone());
        r
    }

    /// Ring containing the values of characters of the given orders.
    pub fn for_orders(p: u64, orders: &[u64]) -> Arc<OkRing> {
        let m = orders.iter().fold(p - 1, |acc, &o| lcm(acc, o.max(1)));
        Self::get(p, m)
    }

    fn build(p: u64, m: u64) -> OkRing {
        let f = mult_order(p % m.max(2), m).max(1) as usize;
        let f = if m <= 2 { 1 } else { f };
        let cap = precision_cap(p);
        let ppow: Vec<u64> = (0..=cap).map(|k| p.pow(k)).collect();
        let h = if f == 1 { vec![0, 1] } else { first_irreducible(p, f) };
        let mut ring = OkRing { p, m, f, cap, ppow, modpoly: h.clone(), zeta_pows: Vec::new() };
        // Generator of F_{p^f}^x, then the primitive m-th root compatible with omega.
        let q1 = (p as u128).pow(f as u32) - 1;
        let q1 = q1 as u64;
        let gen = find_generator(&ring, q1);
        let gp = primitive_root(p, 1);
        let step = q1 / m;
        let mut chosen = None;
        for k in 1..m {
            if gcd(k, m) != 1 {
                continue;
            }
            let z = ring.pow_raw(&gen, step * k, 1);
            let w = ring.pow_raw(&z, m / (p - 1), 1);
            if w[0] == gp % p && w[1..].iter().all(|&c| c == 0) {
                chosen = Some(z);
                break;
            }
        }
        let z0 = chosen.expect("no compatible primitive root of unity");
        // Teichmuller lift: iterate x -> x^(p^f) at full precision.
        let mut z = z0;
        for _ in 0..=cap {
            z = ring.pow_raw(&z, q1 + 1, cap);
        }
        let mut pows = Vec::with_capacity(m as usize);
        let mut cur = ring.one_raw();
        for _ in 0..m {
            pows.push(cur.clone());
            cur = ring.mul_raw(&cur, &z, cap);
        }
        ring.zeta_pows = pows;
        ring
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn degree(&self) -> usize {
        self.f
    }
    pub fn cap(&self) -> u32 {
        self.cap
    }
    pub fn ppow(&self, k: u32) -> u64 {
        self.ppow[k as usize]
    }
    pub fn modpoly(&self) -> &[u64] {
        &self.modpoly
    }

    /// `zeta_n^e` at precision `p^cap`; `n` must divide `m`.
    pub fn root_of_unity(&self, n: u64, e: i64) -> Elem {
        assert!(self.m % n == 0, "zeta_{} not in ring with m = {}", n, self.m);
        let idx = (e.rem_euclid(n as i64) as u64) * (self.m / n);
        self.zeta_pows[idx as usize].clone()
    }

    pub fn zero_raw(&self) -> Elem {
        vec![0; self.f]
    }

    pub fn one_raw(&self) -> Elem {
        let mut v = vec![0; self.f];
        v[0] = 1;
        v
    }

    pub fn from_u64(&self, a: u64, k: u32) -> Elem {
        let mut v = vec![0; self.f];
        v[0] = a % self.ppow[k as usize];
        v
    }

    pub fn reduce_raw(&self, a: &Elem, k: u32) -> Elem {
        let m = self.ppow[k as usize];
        a.iter().map(|&c| c % m).collect()
    }

    pub fn add_raw(&self, a: &Elem, b: &Elem, k: u32) -> Elem {
        let m = self.ppow[k as usize];
        a.iter().zip(b).map(|(&x, &y)| ((x % m) + (y % m)) % m).collect()
    }

    pub fn sub_raw(&self, a: &Elem, b: &Elem, k: u32) -> Elem {
        let m = self.ppow[k as usize];
        a.iter().zip(b).map(|(&x, &y)| ((x % m) + m - (y % m)) % m).collect()
    }

    pub fn neg_raw(&self, a: &Elem, k: u32) -> Elem {
        let m = self.ppow[k as usize];
        a.iter().map(|&x| (m - x % m) % m).collect()
    }

    pub fn scale_raw(&self, a: &Elem, s: u64, k: u32) -> Elem {
        let m = self.ppow[k as usize];
        a.iter().map(|&x| ((x as u128 * (s % m) as u128) % m as u128) as u64).collect()
    }

    pub fn mul_raw(&self, a: &Elem, b: &Elem, k: u32) -> Elem {
        let m = self.ppow[k as usize] as u128;
        if self.f == 1 {
            return vec![((a[0] as u128 * b[0] as u128) % m) as u64];
        }
        let f = self.f;
        let mut prod = vec![0u128; 2 * f - 1];
        for i in 0..f {
            if a[i] == 0 {
                continue;
            }
            for j in 0..f {
                prod[i + j] = (prod[i + j] + a[i] as u128 * b[j] as u128) % m;
            }
        }
        // Reduce with t^f = -sum_{j<f} H_j t^j.
        for top in (f..2 * f - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..f {
                let hj = self.modpoly[j] as u128 % m;
                if hj != 0 {
                    let sub = c * hj % m;
                    let idx = top - f + j;
                    prod[idx] = (prod[idx] + m - sub) % m;
                }
            }
        }
        prod.truncate(f);
        prod.into_iter().map(|c| c as u64).collect()
    }

    pub fn pow_raw(&self, a: &Elem, mut e: u64, k: u32) -> Elem {
        let mut r = self.one_raw();
        let mut b = self.reduce_raw(a, k);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_raw(&r, &b, k);
            }
            b = self.mul_raw(&b, &b, k);
            e >>= 1;
        }
        self.reduce_raw(&r, k)
    }

    /// Minimum p-adic valuation of the coefficients, capped at `k`.
    pub fn valuation_raw(&self, a: &Elem, k: u32) -> u32 {
        let mut best = k;
        for &c in a {
            let c = c % self.ppow[k as usize];
            if c != 0 {
                let mut v = 0;
                let mut x = c;
                while x % self.p == 0 {
                    x /= self.p;
                    v += 1;
                }
                best = best.min(v);
            }
        }
        best
    }

    /// Divide every coefficient by `p^e` (caller guarantees divisibility).
    pub fn div_p_raw(&self, a: &Elem, e: u32) -> Elem {
        let d = self.ppow[e as usize];
        a.iter().map(|&c| c / d).collect()
    }

    pub fn mul_p_raw(&self, a: &Elem, e: u32, k: u32) -> Elem {
        self.scale_raw(a, self.ppow[e as usize], k)
    }

    /// Inverse of a unit modulo `p^k`.
    pub fn inv_raw(&self, a: &Elem, k: u32) -> Option<Elem> {
        if self.valuation_raw(a, 1) > 0 {
            return None;
        }
        let q1 = (self.p as u128).pow(self.f as u32) - 1;
        // Inverse mod p via a^(p^f - 2), then Newton lifting.
        let mut y = self.pow_raw(a, (q1 - 1) as u64, 1);
        let mut prec = 1;
        while prec < k {
            prec = (2 * prec).min(k);
            let ay = self.mul_raw(&self.reduce_raw(a, prec), &y, prec);
            let two = self.from_u64(2, prec);
            let corr = self.sub_raw(&two, &ay, prec);
            y = self.mul_raw(&y, &corr, prec);
        }
        Some(self.reduce_raw(&y, k))
    }

    pub fn is_zero_raw(&self, a: &Elem, k: u32) -> bool {
        let m = self.ppow[k as usize];
        a.iter().all(|&c| c % m == 0)
    }
}

fn find_generator(ring: &OkRing, q1: u64) -> Elem {
    let p = ring.p;
    let f = ring.f;
    let factors = prime_divisors(q1);
    // Enumerate elements in base-p order of their coefficient vectors.
    let total = (p as u128).pow(f as u32) as u64;
    for idx in 1..total {
        let mut v = vec![0u64; f];
        let mut x = idx;
        for c in v.iter_mut() {
            *c = x % p;
            x /= p;
        }
        if factors.iter().all(|&l| {
            let w = ring.pow_raw(&v, q1 / l, 1);
            !(w[0] == 1 && w[1..].iter().all(|&c| c == 0))
        }) {
            return v;
        }
    }
    unreachable!("finite field has a generator")
}

/// First monic irreducible polynomial of degree `f` over F_p in lexicographic order.
fn first_irreducible(p: u64, f: usize) -> Vec<u64> {
    let total = (p as u128).pow(f as u32) as u64;
    for idx in 0..total {
        let mut h = vec![0u64; f + 1];
        let mut x = idx;
        for c in h.iter_mut().take(f) {
            *c = x % p;
            x /= p;
        }
        h[f] = 1;
        if h[0] != 0 && is_irreducible_fp(&h, p) {
            return h;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_mulmod_fp(a: &[u64], b: &[u64], h: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem_fp(&prod, h, p)
}

fn poly_rem_fp(a: &[u64], h: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let dh = h.len() - 1;
    let lead_inv = pow_mod(h[dh], p - 2, p);
    while r.len() > dh && !(r.len() == 1 && r[0] == 0) {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        for j in 0..=dh {
            let idx = top - dh + j;
            r[idx] = (r[idx] + p * p - c * h[j] % p) % p;
        }
        r = poly_trim(r);
        if r.len() <= dh {
            break;
        }
    }
    r
}

fn poly_gcd_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem_fp(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn is_irreducible_fp(h: &[u64], p: u64) -> bool {
    let f = h.len() - 1;
    // Ben-Or: gcd(x^(p^i) - x, h) = 1 for i <= f/2.
    let mut xp = vec![0, 1];
    for _ in 1..=f / 2 {
        // xp <- xp^p mod h
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod_fp(&acc, &base, h, p);
            }
            base = poly_mulmod_fp(&base, &base, h, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd_fp(h, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
