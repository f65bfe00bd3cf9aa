use std::sync::Arc;

use lambda_adic::padic_lfun::kl_series;
use lambda_adic::{binom_series, s_exponent, teichmuller, DirichletCharacter, LambdaSeries, OkRing, PadicScalar, Pole};
use proptest::prelude::*;

fn ring() -> Arc<OkRing> {
    OkRing::get(5, 4)
}

/// A series with coefficients in Z_5[i] known mod 5^prec.
fn series(ring: &Arc<OkRing>, cs: &[(i64, i64)], prec: i32) -> LambdaSeries {
    let i = PadicScalar::root_of_unity(ring, 4, 1, prec);
    let v = cs
        .iter()
        .map(|&(a, b)| PadicScalar::from_i64(ring, a, prec).add(&i.scale_i64(b)))
        .collect();
    LambdaSeries::from_coeffs(ring, v, Pole::None)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-10_000i64..10_000, -10_000i64..10_000), 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in coeffs(), b in coeffs(), c in coeffs(), prec in 1i32..8) {
        let r = ring();
        let (a, b, c) = (series(&r, &a, prec), series(&r, &b, prec), series(&r, &c, prec));
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(ab_c.eq_mod(&a_bc));
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(left.eq_mod(&right));
        prop_assert!(a.mul(&b).unwrap().eq_mod(&b.mul(&a).unwrap()));
    }

    #[test]
    fn inverse_of_unit_series(a in coeffs(), prec in 1i32..8) {
        let r = ring();
        let mut a = a;
        a[0] = (5 * a[0].0 + 1, 5 * a[0].1);
        let f = series(&r, &a, prec);
        let g = f.invert().unwrap();
        prop_assert!(f.mul(&g).unwrap().eq_mod(&LambdaSeries::one(&r, prec, 6)));
    }

    #[test]
    fn teichmuller_is_a_root_of_unity(a in 1i64..10_000, p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        prop_assume!(a % p as i64 != 0);
        let r = OkRing::get(p, p - 1);
        let t = teichmuller(&r, a, 10).unwrap();
        prop_assert!(t.pow(p - 1).eq_mod(&PadicScalar::one(&r, 10)));
        prop_assert!(t.sub(&PadicScalar::from_i64(&r, a, 10)).valuation().map(|v| v >= 1).unwrap_or(true));
    }

    #[test]
    fn binomial_series_evaluates_to_powers(a in 1i64..500, k in 2u32..8) {
        prop_assume!(a % 5 != 0);
        let r = ring();
        let w = r.cap() as i32;
        let s = s_exponent(&r, a, 12).unwrap();
        let f = binom_series(&s, 14).unwrap();
        let u = PadicScalar::from_i64(&r, 6, w);
        let x0 = u.pow(k as u64 - 2).sub(&PadicScalar::one(&r, w));
        // <a>^{k-2} with <a> = a / omega(a)
        let one_unit = PadicScalar::from_i64(&r, a, w).div(&teichmuller(&r, a, w as u32).unwrap()).unwrap();
        let got = f.evaluate(&x0).unwrap();
        let want = one_unit.pow(k as u64 - 2);
        prop_assert!(got.prec() >= 6, "precision {}", got.prec());
        prop_assert!(got.eq_mod(&want));
    }
}

#[test]
fn raising_precision_refines_results() {
    let r = ring();
    let chi = DirichletCharacter::omega_pow(5, 2);
    for d in [3usize, 5] {
        let lo = kl_series(&chi, &r, 4, d).unwrap();
        let hi = kl_series(&chi, &r, 6, d).unwrap();
        assert!(lo.eq_at(&hi, 4));
        assert_eq!(lo.min_prec(), 4);
    }
}
