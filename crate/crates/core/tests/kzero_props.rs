use abelchi_core::complex::{chi_a, classify_complex, direct_sum_m, ComplexDesc, Ring};
use abelchi_core::gen::{random_chain_map, random_injection, random_structured};
use abelchi_core::kzero::{
    mapping_cylinder, pushout_check, xi, xi_chi_check, BoundedComplex, K0Expr,
};
use abelchi_core::rational::frac;
use abelchi_core::{ExtLimit, GrowthClass};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bounded(rng: &mut ChaCha8Rng) -> BoundedComplex {
    let len = rng.random_range(0..=5);
    BoundedComplex::new(
        random_structured(rng, Ring::Integers, len, None, 4).complex,
        true,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn xi_halves_the_characteristic(seed in any::<u64>()) {
        let c = bounded(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(xi_chi_check(&c).holds);
        let x = ComplexDesc::M(xi(&c));
        prop_assert_eq!(classify_complex(&x).unwrap().class, GrowthClass::AbelCAG);
        prop_assert_eq!(x.as_m().unwrap().period(), Some(2));
    }

    #[test]
    fn xi_commutes_with_sums(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, d) = (bounded(&mut rng), bounded(&mut rng));
        let sum = BoundedComplex::new(direct_sum_m(c.complex(), d.complex()).unwrap(), true).unwrap();
        let value = |b: &BoundedComplex| chi_a(&ComplexDesc::M(xi(b))).finite().cloned().unwrap();
        prop_assert_eq!(value(&sum), value(&c) + value(&d));
        let expr = K0Expr::term(1, ComplexDesc::M(xi(&c))).plus(-1, ComplexDesc::M(xi(&d)));
        prop_assert_eq!(expr.chi_a().unwrap(), value(&c) - value(&d));
    }

    #[test]
    fn cylinder_keeps_target_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=4);
        let period = rng.random_bool(0.5).then(|| rng.random_range(1..=3));
        let c = random_structured(&mut rng, Ring::Rationals, m, period, 3);
        let d = random_structured(&mut rng, Ring::Rationals, m, period, 3);
        let t = mapping_cylinder(&random_chain_map(&mut rng, &c, &d).unwrap()).unwrap();
        prop_assert!(t.homology_ranks().same_values(&d.complex.homology_ranks()));
    }

    #[test]
    fn pushouts_along_injections(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=3);
        let a = random_structured(&mut rng, Ring::Rationals, m, None, 3);
        let c = random_structured(&mut rng, Ring::Rationals, m, None, 3);
        let f = random_injection(&mut rng, &a, 3).unwrap();
        let g = random_chain_map(&mut rng, &a, &c).unwrap();
        let r = pushout_check(&f, &g).unwrap();
        prop_assert!(r.holds, "{:?}", r);
    }
}

#[test]
fn free_module_in_degree_zero_gives_one_half() {
    let r = BoundedComplex::new(
        abelchi_core::MDescComplex::free_in_degree(Ring::Integers, 1, 0),
        true,
    )
    .unwrap();
    assert_eq!(xi_chi_check(&r).chi_a, ExtLimit::Finite(frac(1, 2)));
}
