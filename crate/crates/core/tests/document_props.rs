use abelchi_core::complex::{ComplexDesc, HDescComplex, Ring};
use abelchi_core::document::{parse_document, to_json, Document};
use abelchi_core::gen::{random_chain_map, random_mdesc, random_qpseq, random_structured};
use abelchi_core::kzero::BoundedComplex;
use abelchi_core::rational::{format_rational, int, parse_rational};
use abelchi_core::ses::{make_cone_ses, SesDesc};
use abelchi_core::{Error, QPSeq};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn document(seed: u64, kind: u8) -> Document {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = if rng.random_bool(0.5) {
        Ring::Integers
    } else {
        Ring::Rationals
    };
    match kind % 6 {
        0 => Document::Sequence(random_qpseq(&mut rng, 5, 4, 3)),
        1 => {
            let mut count = |n: usize| {
                (0..n)
                    .map(|_| int(rng.random_range(0..=4)))
                    .collect::<Vec<_>>()
            };
            let (prefix, pattern) = (count(3), count(2));
            let ranks = QPSeq::eventually_periodic(prefix, pattern);
            Document::Complex(ComplexDesc::H(HDescComplex::new(ranks).unwrap()))
        }
        2 => Document::Complex(ComplexDesc::M(
            random_mdesc(&mut rng, ring, 5, 5, 3).complex,
        )),
        3 => {
            let len = rng.random_range(0..=4);
            let c = random_structured(&mut rng, ring, len, None, 4).complex;
            Document::Bounded(BoundedComplex::new(c, rng.random_bool(0.5)).unwrap())
        }
        4 => {
            let m = rng.random_range(0..=3);
            let p = rng.random_bool(0.5).then_some(2);
            let a = random_structured(&mut rng, Ring::Rationals, m, p, 3);
            let b = random_structured(&mut rng, Ring::Rationals, m, p, 3);
            Document::Ses(Box::new(
                make_cone_ses(&random_chain_map(&mut rng, &a, &b).unwrap()).unwrap(),
            ))
        }
        _ => {
            let c = random_mdesc(&mut rng, ring, 4, 3, 2).complex;
            Document::Ses(Box::new(SesDesc::claimed(
                ComplexDesc::M(c.clone()),
                ComplexDesc::M(c),
                HDescComplex::zero().into(),
            )))
        }
    }
}

proptest! {
    #[test]
    fn documents_round_trip(seed in any::<u64>(), kind in any::<u8>()) {
        let d = document(seed, kind);
        let text = to_json(&d);
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(to_json(&back), text);
    }

    #[test]
    fn rationals_round_trip(n in any::<i64>(), d in 1i64..=i64::MAX) {
        let x = abelchi_core::rational::Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn parsing_never_panics(text in ".{0,200}") {
        if let Err(e) = parse_document(&text) {
            let expected = matches!(e, Error::Parse(_) | Error::Document { .. });
            prop_assert!(expected, "unexpected error {:?}", e);
        }
    }
}
