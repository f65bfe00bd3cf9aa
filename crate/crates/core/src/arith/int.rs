//! Elementary integer number theory on machine words.
//!
//! Everything here works on `u64`/`i64` with `u128` intermediates, which
//! covers every modulus the toolkit uses (levels, conductors, and `p^M`
//! below `2^62`).

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Non-negative residue of `a` modulo `m`.
pub fn modn(a: i64, m: u64) -> u64 {
    let r = (a as i128).rem_euclid(m as i128);
    r as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(q, _)| q).collect()
}

/// All positive divisors, sorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (q, e) in factorize(n) {
        let len = ds.len();
        let mut pw = 1;
        for _ in 0..e {
            pw *= q;
            for i in 0..len {
                ds.push(ds[i] * pw);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn mobius(n: u64) -> i64 {
    let mut s = 1;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        s = -s;
    }
    s
}

pub fn euler_phi(n: u64) -> u64 {
    let mut r = n;
    for (q, _) in factorize(n) {
        r = r / q * (q - 1);
    }
    r
}

/// Exponent of the prime `p` in `n` (`n != 0`).
pub fn v_p(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn v_p_i(n: i64, p: u64) -> u32 {
    v_p(n.unsigned_abs(), p)
}

/// `v_p(n!)` by Legendre's formula.
pub fn v_p_factorial(n: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = p;
    while q <= n {
        v += (n / q) as u32;
        q = match q.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    v
}

/// Largest divisor of `n` coprime to `m`.
pub fn coprime_part(mut n: u64, m: u64) -> u64 {
    loop {
        let g = gcd(n, m);
        if g == 1 {
            return n;
        }
        n /= g;
    }
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    prime_divisors(n).into_iter().product()
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`).
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let lam = carmichael(m);
    let mut ord = lam;
    for (q, _) in factorize(lam) {
        while ord % q == 0 && pow_mod(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}

pub fn carmichael(m: u64) -> u64 {
    let mut l = 1;
    for (q, e) in factorize(m) {
        let c = if q == 2 {
            match e {
                1 => 1,
                2 => 2,
                _ => 1 << (e - 2),
            }
        } else {
            (q - 1) * q.pow(e - 1)
        };
        l = lcm(l, c);
    }
    l
}

/// Smallest positive primitive root modulo an odd prime power `q^e`.
pub fn primitive_root(q: u64, e: u32) -> u64 {
    let m = q.pow(e);
    let phi = (q - 1) * q.pow(e - 1);
    let fs = prime_divisors(phi);
    (2..m)
        .find(|&g| gcd(g, q) == 1 && fs.iter().all(|&f| pow_mod(g, phi / f, m) != 1))
        .unwrap_or(1)
}

/// Solve `x = a_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> (u64, u64) {
    let mut x = 0u64;
    let mut m = 1u64;
    for &(a, mi) in residues {
        let a = a % mi;
        let inv = inv_mod(m % mi, mi).expect("crt moduli must be coprime");
        let diff = (a + mi - x % mi) % mi;
        let k = mul_mod(diff, inv, mi);
        x += m * k;
        m *= mi;
        x %= m;
    }
    (x, m)
}

/// Integer `p`-th power that is guaranteed not to overflow a `u64`.
pub fn checked_pow(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(radical(72), 6);
        assert_eq!(coprime_part(40, 2), 5);
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(primitive_root(5, 1), 2);
        assert_eq!(primitive_root(7, 2), 3);
        assert_eq!(mult_order(2, 5), 4);
        assert_eq!(crt(&[(2, 3), (3, 5)]), (8, 15));
        assert_eq!(v_p_factorial(25, 5), 6);
        assert_eq!(modn(-3, 5), 2);
    }
}
