//! Generalized Bernoulli numbers and Dirichlet L-values at non-positive integers.
//!
//! `B_{k,chi}` follows the generating function
//! `sum_{a=1}^{f} chi(a) t e^{at} / (e^{ft} - 1)`, so `B_{1,1} = +1/2` for the
//! trivial character mod 1 while the classical `bernoulli(1)` is `-1/2`. With
//! this choice `L(1-k, chi) = -B_{k,chi}/k` holds for every `k >= 1`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::CyclotomicRational;
use crate::characters::{CharacterRecord, DirichletCharacter};

fn bern_cache() -> &'static Mutex<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

fn binom_big(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Classical Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = bern_cache().lock().unwrap();
    while cache.len() <= n {
        let m = cache.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut s = BigRational::zero();
        for (j, b) in cache.iter().enumerate() {
            s += BigRational::from_integer(binom_big(m as u64 + 1, j as u64)) * b;
        }
        let b = -s / BigRational::from_integer(BigInt::from(m as u64 + 1));
        cache.push(b);
    }
    cache[n].clone()
}

/// `B_{k,chi}` computed on the modulus of `chi` (primitive or not).
pub fn bernoulli_generalized(k: usize, chi: &DirichletCharacter) -> CyclotomicRational {
    let f = chi.modulus();
    let n = chi.order();
    // Power sums S_m = sum_{a=1}^{f} chi(a) a^m, kept per exponent class.
    let mut sums: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n as usize]; k + 1];
    for a in 1..=f {
        if let Some((e, _)) = chi.exponent(a as i64) {
            let ab = BigInt::from(a);
            let mut pw = BigInt::one();
            for s in sums.iter_mut() {
                s[e as usize] += &pw;
                pw *= &ab;
            }
        }
    }
    // B_{k,chi} = f^{k-1} sum_a chi(a) B_k(a/f) = sum_j C(k,j) B_j f^{j-1} S_{k-j}
    let fr = BigRational::from_integer(BigInt::from(f));
    let mut acc = vec![BigRational::zero(); n as usize];
    for j in 0..=k {
        let bj = bernoulli(j);
        if bj.is_zero() {
            continue;
        }
        let c = BigRational::from_integer(binom_big(k as u64, j as u64)) * bj * pow_rat(&fr, j as i32 - 1);
        for (e, s) in sums[k - j].iter().enumerate() {
            if !s.is_zero() {
                acc[e] += &c * BigRational::from_integer(s.clone());
            }
        }
    }
    CyclotomicRational::from_exponent_table(n, acc)
}

fn pow_rat(x: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// `L(1-k, chi)` times `prod_{l in strip} (1 - chi(l) l^{k-1})`.
pub fn dirichlet_l_negative(k: usize, chi: &DirichletCharacter, strip: &[u64]) -> CyclotomicRational {
    let b = bernoulli_generalized(k, chi);
    let mut v = b.scale(&BigRational::new(BigInt::from(-1), BigInt::from(k as u64)));
    for &l in strip {
        let lk = BigRational::from_integer(num_traits::pow(BigInt::from(l), k - 1));
        let factor = CyclotomicRational::one(1).sub(&chi.eval(l as i64).scale(&lk));
        v = v.mul(&factor);
    }
    v
}

/// `L(1-k, chi_(p))`: the L-value of the primitive character with the Euler
/// factor at `p` removed.
pub fn l_value_p_stripped(k: usize, chi: &DirichletCharacter, p: u64) -> CyclotomicRational {
    let chi0 = chi.primitive();
    let strip: Vec<u64> = if chi0.conductor() % p == 0 { vec![] } else { vec![p] };
    dirichlet_l_negative(k, &chi0, &strip)
}

#[derive(Clone, Debug, Serialize)]
pub struct LValueRecord {
    pub character: CharacterRecord,
    pub k: usize,
    pub value: String,
    pub euler_stripped: Vec<u64>,
}

pub fn l_value_record(k: usize, chi: &DirichletCharacter, strip: &[u64]) -> LValueRecord {
    LValueRecord {
        character: chi.record(),
        k,
        value: dirichlet_l_negative(k, chi, strip).to_string(),
        euler_stripped: strip.to_vec(),
    }
}
