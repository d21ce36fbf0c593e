use num_bigint::BigUint;
use num_rational::BigRational;
use pfaff_core::bott::binomial;
use pfaff_core::counting::{
    example_field, oracle_pfaff_count, oracle_vf_count, pfaff_count, pfaff_count_piecewise,
    random_projective_form, vf_count, CountError, PfaffCountQuery, VfCountQuery,
};
use pfaff_core::flags::{check_vf_form_flag, degree_of_pfaff};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

proptest! {
    #[test]
    fn unified_and_piecewise_agree(n in 3usize..=8, d in 1u32..=6, m in -3i64..=25, r_off in 0usize..6) {
        let r = 1 + r_off % (n - 2);
        let qq = PfaffCountQuery::new(n, d, m, r).unwrap();
        prop_assert_eq!(pfaff_count(&qq), pfaff_count_piecewise(&qq));
    }

    #[test]
    fn below_field_degree_nothing_is_invariant(n in 3usize..=8, d in 1u32..=6, r_off in 0usize..6, k in 0i64..6) {
        let r = 1 + r_off % (n - 2);
        let m = i64::from(d) - 1 - k;
        prop_assert_eq!(pfaff_count(&PfaffCountQuery::new(n, d, m, r).unwrap()), BigUint::from(0u32));
    }

    #[test]
    fn equal_degrees_give_contractions_of_top_forms(n in 3usize..=8, d in 1u32..=6, r_off in 0usize..6) {
        let r = 1 + r_off % (n - 2);
        let count = pfaff_count(&PfaffCountQuery::new(n, d, i64::from(d), r).unwrap());
        prop_assert_eq!(count, binomial(n as i64 + 1, r as i64 + 2));
    }
}

#[test]
fn p3_field_count_is_the_cubic() {
    for m in 1..=6u32 {
        for d in i64::from(m) + 1..=2 * i64::from(m) {
            let got = vf_count(&VfCountQuery::new(3, m, d).unwrap()).unwrap();
            let e = d - i64::from(m);
            let expect = ((e + 3) * (e + 2) * e / 2) as u32;
            assert_eq!(got, BigUint::from(expect), "m={m} d={d}");
        }
    }
}

#[test]
fn field_count_exclusions() {
    // n = 5, m = 2: excluded d are 3 and 7; window is 3..6
    assert!(matches!(
        vf_count(&VfCountQuery::new(5, 2, 3).unwrap()),
        Err(CountError::PreconditionViolated(_))
    ));
    assert!(vf_count(&VfCountQuery::new(5, 2, 4).unwrap()).is_ok());
    // n = 6, m = 1: d = 3 excluded but outside the window anyway
    assert!(vf_count(&VfCountQuery::new(6, 2, 6).unwrap()).is_err());
    assert!(vf_count(&VfCountQuery::new(6, 2, 4).unwrap()).is_ok());
}

#[test]
fn oracle_kernels_are_flags_of_higher_degree() {
    let x = example_field(3, 2, &[q(1), q(-1), q(2), q(3)]).unwrap();
    for m in 0..=4 {
        let o = oracle_pfaff_count(&x, m, 1).unwrap();
        let expect = pfaff_count(&PfaffCountQuery::new(3, 2, m, 1).unwrap());
        assert_eq!(BigUint::from(o.count), expect, "m={m}");
        for w in &o.kernel {
            assert!(check_vf_form_flag(&x, w).unwrap());
            assert_eq!(degree_of_pfaff(w).unwrap(), m);
            assert!(m >= 2);
        }
    }
}

#[test]
fn p3_field_oracle_on_a_random_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let w = random_projective_form(3, 1, 2, &mut rng).unwrap();
    for d in 3..=4 {
        let got = oracle_vf_count(&w, d).unwrap().count;
        let expect = vf_count(&VfCountQuery::new(3, 2, i64::from(d)).unwrap()).unwrap();
        assert_eq!(BigUint::from(got), expect, "d={d}");
    }
    assert_eq!(oracle_vf_count(&w, 0).unwrap().count, 0);
    assert_eq!(oracle_vf_count(&w, 2).unwrap().count, 0);
}
