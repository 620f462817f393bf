use foldy_core::algebra::{GaussianRational, Monomial, OperatorPoly, Tail, UnitGrade};
use proptest::prelude::*;

fn grade() -> impl Strategy<Value = UnitGrade> {
    (-3i32..=1, -2i32..=1, 0u32..=1, 0u32..=1, 0u32..=1).prop_map(|(m, c, hbar, q, mu)| UnitGrade {
        m,
        c,
        hbar,
        q,
        mu,
    })
}

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, -6i64..=6, 1i64..=4).prop_map(|(re, im, d)| {
        &GaussianRational::gaussian(re, im) * &GaussianRational::ratio(1, d)
    })
}

fn term() -> impl Strategy<Value = OperatorPoly> {
    let tails = Tail::all();
    (coeff(), grade(), 0..tails.len(), 0u32..=2)
        .prop_map(move |(c, g, t, k)| OperatorPoly::monomial(c, g, tails[t], k))
}

fn poly() -> impl Strategy<Value = OperatorPoly> {
    prop::collection::vec(term(), 0..4).prop_map(|ts| ts.iter().fold(OperatorPoly::zero(), |acc, t| &acc + t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalize_is_idempotent(a in poly()) {
        let n = a.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert_eq!(n, a);
    }

    #[test]
    fn product_is_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn product_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
    }

    #[test]
    fn dagger_reverses_products(a in poly(), b in poly()) {
        prop_assert_eq!(a.mul(&b).dagger(), b.dagger().mul(&a.dagger()));
        prop_assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn charge_conjugation_is_an_involutive_homomorphism(a in poly(), b in poly()) {
        prop_assert_eq!(a.mul(&b).charge_conjugate(), a.charge_conjugate().mul(&b.charge_conjugate()));
        prop_assert_eq!(a.charge_conjugate().charge_conjugate(), a);
    }

    #[test]
    fn phi_commutator_is_a_derivation(a in poly(), b in poly()) {
        let lhs = a.mul(&b).commutator_phi();
        let rhs = &a.commutator_phi().mul(&b) + &a.mul(&b.commutator_phi());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_stay_field_linear(a in poly(), b in poly()) {
        let p = a.mul(&b);
        prop_assert!(p.field_order() <= 1);
        prop_assert!(p.iter().all(|(_, m, c)| !c.is_zero() && Tail::all().contains(&m.tail)));
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let back: OperatorPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn sigma_pi_squared() {
    let s = OperatorPoly::sigma_pi();
    let mut want = OperatorPoly::basis(Tail::One, 1);
    want.add_term(
        GaussianRational::from_int(-1),
        UnitGrade::EPS,
        Monomial::new(Tail::SigmaField(foldy_core::Field::B), 0),
    );
    assert_eq!(s.mul(&s), want);
}
