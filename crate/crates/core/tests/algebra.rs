use klatlas_core::algebra::{rat, Matrix, Monomial, MultiPoly, Rational, Ring};
use proptest::prelude::*;

const VARS: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, VARS), rational()), 0..5)
        .prop_map(|ts| MultiPoly::from_terms(ts.into_iter().map(|(e, c)| (Monomial::new(e), c))))
}

fn nonconstant_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonconstant", |p| !p.is_constant())
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rational(), n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), VARS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&MultiPoly::one()), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), z in point()) {
        let (ea, eb) = (a.eval(&z), b.eval(&z));
        prop_assert_eq!(a.mul(&b).eval(&z), Ring::mul(&ea, &eb));
        prop_assert_eq!(a.add(&b).eval(&z), Ring::add(&ea, &eb));
    }

    #[test]
    fn parse_round_trips_display(a in poly()) {
        prop_assert_eq!(MultiPoly::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn bareiss_agrees_with_cofactor_expansion(m in matrix(4)) {
        prop_assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        let lhs = a.mul(&b).unwrap().det_bareiss().unwrap();
        let rhs = Ring::mul(&a.det_bareiss().unwrap(), &b.det_bareiss().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_is_two_sided(a in matrix(3)) {
        if let Ok(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
            prop_assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(3));
        } else {
            prop_assert!(a.det_cofactor().unwrap().is_zero());
        }
    }

    #[test]
    fn symbolic_determinant_evaluates_pointwise(v in prop::collection::vec(poly(), 9), z in point()) {
        let m = Matrix::from_fn(3, 3, |i, j| v[3 * i + j].clone());
        let at = m.map(|p| p.eval(&z));
        prop_assert_eq!(m.det_bareiss().unwrap().eval(&z), at.det_cofactor().unwrap());
    }

    #[test]
    fn gcd_contains_planted_factor(p in nonconstant_poly(), q in nonconstant_poly(), r in nonconstant_poly()) {
        let (pr, qr) = (p.mul(&r), q.mul(&r));
        let g = pr.gcd(&qr);
        prop_assert!(g.div_exact_poly(&r).is_some(), "gcd {} misses factor {}", g, r);
        prop_assert!(pr.div_exact_poly(&g).is_some());
        prop_assert!(qr.div_exact_poly(&g).is_some());
    }

    #[test]
    fn squarefree_part_of_a_square(p in nonconstant_poly()) {
        let s = p.squarefree_part();
        prop_assert!(p.mul(&p).squarefree_part().associate(&s));
        prop_assert!(p.div_exact_poly(&s).is_some());
    }
}

#[test]
fn exact_division_rejects_non_divisors() {
    let p = MultiPoly::parse("z1*z2 + 1").unwrap();
    let q = MultiPoly::parse("z1").unwrap();
    assert!(p.div_exact_poly(&q).is_none());
    assert_eq!(p.mul(&q).div_exact_poly(&q).unwrap(), p);
}
