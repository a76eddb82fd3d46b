use lincode::code::{self, Method};
use lincode::linearized::LinearizedPoly;
use lincode::wenger::{self, Eigenvalue};
use lincode::{Fe, FieldContext, FieldParams};
use num_bigint::BigUint;
use proptest::prelude::*;

fn ctx(p: u64, m: u32, d: u32, k: u32) -> FieldContext {
    FieldContext::build(FieldParams::new(p, m, d, k).unwrap()).unwrap()
}

#[test]
fn weight_of_each_codeword_matches_null_space() {
    let f = ctx(3, 2, 1, 2);
    for a0 in f.elements() {
        for a1 in f.elements() {
            let a = [a0, a1];
            if a0.is_zero() && a1.is_zero() {
                continue;
            }
            let r = LinearizedPoly::new(&f, a.to_vec()).unwrap().null_space().r;
            assert_eq!(code::codeword_weight(&f, &a).unwrap(), f.params().weight_for_rank(r));
        }
    }
}

#[test]
fn routes_report_their_method() {
    let f = ctx(2, 4, 2, 2);
    let a = code::weight_distribution_formula(*f.params()).unwrap();
    let b = code::weight_distribution_bruteforce(&f, 1 << 20, 2).unwrap();
    let c = code::weight_distribution_moebius(&f).unwrap();
    assert_eq!((a.method, b.method, c.method), (Method::Formula, Method::BruteForce, Method::Moebius));
    assert!(a.same_counts(&b) && a.same_counts(&c));
}

#[test]
fn spectrum_top_multiplicities() {
    // ±p^m are simple and ±sqrt(p^m) has multiplicity p^m · n_0
    for (p, m, d, k) in [(2, 3, 1, 2), (3, 2, 1, 1), (2, 6, 2, 3)] {
        let params = FieldParams::new(p, m, d, k).unwrap();
        let s = wenger::spectrum_formula(params).unwrap();
        let n0 = code::weight_distribution_formula(params).unwrap().counts[0].clone();
        assert_eq!(s.multiplicity(Eigenvalue::Pos(2 * m)), BigUint::from(1u32));
        assert_eq!(s.multiplicity(Eigenvalue::Neg(m)), n0 * BigUint::from(p.pow(m)));
    }
}

#[test]
fn zero_multiplicity_counts_missing_roots() {
    // each ã without a root of f_a(x) = -a_{-1} contributes ±0
    let f = ctx(2, 3, 1, 2);
    let mut zero = 0u64;
    for a0 in f.elements() {
        for a1 in f.elements() {
            let poly = LinearizedPoly::new(&f, vec![a0, a1]).unwrap();
            let image = poly.image_exhaustive();
            zero += 2 * f.elements().filter(|c| !image.contains(&f.neg(*c))).count() as u64;
        }
    }
    let s = wenger::spectrum_counting(&f, 1 << 20, 1).unwrap();
    assert_eq!(s.multiplicity(Eigenvalue::Zero), BigUint::from(zero));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linearized_maps_are_additive(x in 0u32..64, y in 0u32..64, c0 in 0u32..64, c1 in 0u32..64, c2 in 0u32..64) {
        let f = ctx(2, 6, 2, 3);
        let poly = LinearizedPoly::new(&f, vec![Fe::from_index(c0), Fe::from_index(c1), Fe::from_index(c2)]).unwrap();
        let (x, y) = (Fe::from_index(x), Fe::from_index(y));
        prop_assert_eq!(poly.evaluate(f.add(x, y)), f.add(poly.evaluate(x), poly.evaluate(y)));
    }

    #[test]
    fn formula_total_is_message_count(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), m in 1u32..9, d in 1u32..9) {
        let e = num_integer::gcd(m, d);
        for k in 1..=m / e {
            let params = FieldParams::new(p, m, d, k).unwrap();
            let dist = code::weight_distribution_formula(params).unwrap();
            prop_assert_eq!(dist.total() + 1u32, params.message_count());
        }
    }
}
