use abelchi_core::rational::{frac, to_f64};
use abelchi_core::{ExtLimit, Poly, RatFun};
use num_complex::Complex64;
use proptest::prelude::*;

fn small_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 1..=max_len)
        .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| frac(n, d)).collect()))
}

/// Rational functions regular at 0.
fn ratfun() -> impl Strategy<Value = RatFun> {
    (small_poly(5), small_poly(4), 1i64..=5).prop_map(|(num, den, c0)| {
        let den = &(&den - &Poly::constant(den.coeff(0))) + &Poly::from_ints(&[c0]);
        RatFun::new(num, den)
    })
}

/// Roots of `p` by the Durand-Kerner iteration.
fn durand_kerner(p: &Poly) -> Vec<Complex64> {
    let lead = to_f64(&p.leading());
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| to_f64(c) / lead).collect();
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| {
                    acc * (roots[i] - roots[j])
                });
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    roots
}

proptest! {
    #[test]
    fn series_of_sum_is_sum_of_series(f in ratfun(), g in ratfun()) {
        let sum = (&f + &g).series_coeffs(100).unwrap();
        let (a, b) = (f.series_coeffs(100).unwrap(), g.series_coeffs(100).unwrap());
        for k in 0..100 {
            prop_assert_eq!(&sum[k], &(&a[k] + &b[k]));
        }
    }

    #[test]
    fn limit_vanishes_below_pole_order(f in ratfun(), extra in 0usize..3) {
        let m = f.pole_order_at_one() + 1 + extra;
        prop_assert_eq!(f.limit_one_sided_unchecked(m), ExtLimit::Finite(frac(0, 1)));
    }

    #[test]
    fn pole_order_ignores_units_at_one(k in 0usize..4, f in ratfun(), g in ratfun()) {
        let one = frac(1, 1);
        prop_assume!(g.num().eval(&one) != frac(0, 1) && g.den().eval(&one) != frac(0, 1));
        let f = RatFun::new(f.num().clone(), f.den() * &Poly::one_minus_x().pow(k));
        prop_assert_eq!((&f * &g).pole_order_at_one(), f.pole_order_at_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn radius_certificate_matches_float_roots(cs in prop::collection::vec(-20i64..=20, 2..=9)) {
        let p = Poly::from_ints(&cs);
        prop_assume!(p.degree().unwrap_or(0) >= 1 && !p.coeff(0).eq(&frac(0, 1)));
        let roots = durand_kerner(&p);
        prop_assume!(roots.iter().all(|z| (z.norm() - 1.0).abs() > 1e-3));
        let float_verdict = roots.iter().all(|z| z.norm() >= 1.0);
        let exact = RatFun::new(Poly::one(), p).radius_ge_one();
        prop_assert_eq!(exact.root_free, float_verdict);
    }
}
