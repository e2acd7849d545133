use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use twistwick::Scalar;

/// `Σ c q^e` from a short list of `(c, e)`.
fn laurent(terms: &[(i64, i64)]) -> Scalar {
    terms
        .iter()
        .fold(Scalar::zero(), |acc, &(c, e)| acc.add(&Scalar::from_int(c).mul(&Scalar::q_pow(e))))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    let poly = prop::collection::vec((-4i64..=4, -3i64..=3), 0..4);
    (poly.clone(), poly, 1i64..=5).prop_map(|(n, d, k)| {
        let den = laurent(&d);
        let num = laurent(&n).mul(&Scalar::ratio(1, k));
        if den.is_zero() {
            num
        } else {
            num.div(&den).unwrap()
        }
    })
}

fn point() -> impl Strategy<Value = BigRational> {
    (-7i64..=7, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_is_associative(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn multiplication_distributes(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn multiplication_commutes(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn nonzero_elements_are_invertible(a in scalar()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn subtraction_cancels(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in scalar(), b in scalar(), q0 in point()) {
        if let (Ok(x), Ok(y)) = (a.eval(&q0), b.eval(&q0)) {
            prop_assert_eq!(a.mul(&b).eval(&q0).unwrap(), &x * &y);
            prop_assert_eq!(a.add(&b).eval(&q0).unwrap(), &x + &y);
        }
    }

    #[test]
    fn display_parses_back(a in scalar()) {
        prop_assert_eq!(Scalar::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn canonical_form_is_unique(a in scalar(), b in scalar()) {
        prop_assume!(!b.is_zero());
        // (a b) / b must land on the same representation as a
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
    }
}

#[test]
fn integer_powers_of_q() {
    let q = Scalar::q();
    assert_eq!(q.pow(3).unwrap(), Scalar::q_pow(3));
    assert_eq!(q.pow(-2).unwrap(), Scalar::q_pow(-2));
    assert!(q.pow(0).unwrap().is_one());
}

#[test]
fn evaluation_reports_poles() {
    let zero = BigRational::from_integer(BigInt::from(0));
    let one = BigRational::from_integer(BigInt::from(1));
    assert!(Scalar::q_pow(-1).eval(&zero).is_err());
    let s = Scalar::one().div(&Scalar::q().sub(&Scalar::one())).unwrap();
    assert!(s.eval(&one).is_err());
    assert_eq!(s.eval(&BigRational::from_integer(BigInt::from(3))).unwrap(), BigRational::new(BigInt::from(1), BigInt::from(2)));
}
