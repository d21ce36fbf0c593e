use num_rational::BigRational;
use pfaff_core::bott::h_omega;
use pfaff_core::polyforms::{
    exterior_derivative, index_tuples, interior, monomials_of_degree, radial_field, twisted_form_basis,
    wedge, Poly, PolyForm, PolyVectorField,
};
use proptest::prelude::*;

const N: usize = 3;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Homogeneous `r`-form on C^4 with coefficient degree `c` and a few terms.
fn form(r: usize, c: u32) -> impl Strategy<Value = PolyForm> {
    let tuples = index_tuples(N + 1, r);
    let monos = monomials_of_degree(N + 1, c);
    prop::collection::vec((0..tuples.len(), 0..monos.len(), -4i64..=4), 0..5).prop_map(move |ts| {
        PolyForm::from_terms(
            N,
            r,
            ts.into_iter()
                .map(|(i, j, a)| (tuples[i].clone(), monos[j].exponents().to_vec(), q(a))),
        )
        .unwrap()
    })
}

fn any_form() -> impl Strategy<Value = PolyForm> {
    (0..=N + 1, 0u32..=2).prop_flat_map(|(r, c)| form(r, c))
}

fn poly(c: u32) -> impl Strategy<Value = Poly> {
    let monos = monomials_of_degree(N + 1, c);
    prop::collection::vec((0..monos.len(), -4i64..=4), 0..5).prop_map(move |ts| {
        let mut p = Poly::zero(N + 1);
        for (j, a) in ts {
            p.add_term(monos[j].clone(), q(a));
        }
        p
    })
}

fn field() -> impl Strategy<Value = PolyVectorField> {
    (0u32..=2).prop_flat_map(|d| {
        prop::collection::vec(poly(d), N + 1).prop_map(|c| PolyVectorField::new(c).unwrap())
    })
}

fn sign(neg: bool, w: PolyForm) -> PolyForm {
    if neg {
        w.scale(&q(-1))
    } else {
        w
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative(a in any_form(), b in any_form()) {
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        prop_assert_eq!(ab, sign(a.degree() * b.degree() % 2 == 1, ba));
    }

    #[test]
    fn wedge_is_associative(a in any_form(), b in any_form(), c in any_form()) {
        let left = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
        let right = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn d_squared_vanishes(a in any_form()) {
        prop_assert!(exterior_derivative(&exterior_derivative(&a)).is_zero());
    }

    #[test]
    fn contraction_squared_vanishes(
        x in field(),
        a in (2..=N + 1, 0u32..=2).prop_flat_map(|(r, c)| form(r, c)),
    ) {
        let once = interior(&x, &a).unwrap();
        prop_assert!(interior(&x, &once).unwrap().is_zero());
    }

    #[test]
    fn contraction_is_a_graded_derivation(
        x in field(),
        a in (1..=N, 0u32..=2).prop_flat_map(|(r, c)| form(r, c)),
        b in (1..=N, 0u32..=2).prop_flat_map(|(r, c)| form(r, c)),
    ) {
        let lhs = interior(&x, &wedge(&a, &b).unwrap()).unwrap();
        let first = wedge(&interior(&x, &a).unwrap(), &b).unwrap();
        let second = sign(a.degree() % 2 == 1, wedge(&a, &interior(&x, &b).unwrap()).unwrap());
        prop_assert_eq!(lhs, first.add(&second).unwrap());
    }

    #[test]
    fn euler_relation(f in (0u32..=4).prop_flat_map(poly)) {
        let deg = f.homogeneous_degree();
        let w = interior(&radial_field(N), &exterior_derivative(&PolyForm::function(N, f.clone()))).unwrap();
        let expect = match deg {
            Some(k) => PolyForm::function(N, f.scale(&q(i64::from(k)))),
            None => PolyForm::zero(N, 0),
        };
        prop_assert_eq!(w, expect);
    }

    #[test]
    fn d_is_an_antiderivation(a in any_form(), b in any_form()) {
        let lhs = exterior_derivative(&wedge(&a, &b).unwrap());
        let first = wedge(&exterior_derivative(&a), &b).unwrap();
        let second = sign(a.degree() % 2 == 1, wedge(&a, &exterior_derivative(&b)).unwrap());
        prop_assert_eq!(lhs, first.add(&second).unwrap());
    }
}

#[test]
fn twisted_basis_dimension_is_the_section_count() {
    for n in 1..=5usize {
        for r in 1..n {
            for m in -2..=6i64 {
                let len = twisted_form_basis(n, r, m).len();
                let h = h_omega(n, 0, r, m + r as i64 + 1).unwrap();
                assert_eq!(num_bigint::BigUint::from(len), h, "n={n} r={r} m={m}");
            }
        }
    }
}
