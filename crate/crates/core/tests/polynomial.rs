use proptest::prelude::*;
use socle_lab::polynomial::{poly_arith, ArithOp};
use socle_lab::{FieldSpec, PolyRing, Polynomial, Ring, TermOrder};

fn rings() -> Vec<Ring> {
    let vars = ["x", "y", "z"];
    vec![
        PolyRing::new(FieldSpec::Rationals, &vars, TermOrder::DegRevLex).unwrap(),
        PolyRing::new(FieldSpec::Rationals, &vars, TermOrder::Lex).unwrap(),
        PolyRing::new(FieldSpec::prime(5).unwrap(), &vars, TermOrder::DegRevLex).unwrap(),
        PolyRing::new(FieldSpec::prime(7).unwrap(), &vars, TermOrder::Elimination(1)).unwrap(),
    ]
}

fn poly_text() -> impl Strategy<Value = String> {
    let term = (-4i64..=4, 1i64..=3, 0u32..3, 0u32..3, 0u32..3)
        .prop_map(|(n, d, a, b, c)| format!("({n}/{d})*x^{a}*y^{b}*z^{c}"));
    prop::collection::vec(term, 0..5).prop_map(|ts| if ts.is_empty() { "0".into() } else { ts.join(" + ") })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_text(), b in poly_text(), c in poly_text(), which in 0usize..4) {
        let r = &rings()[which];
        let (a, b, c) = (r.parse(&a).unwrap(), r.parse(&b).unwrap(), r.parse(&c).unwrap());
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&r.one()), a.clone());
        prop_assert_eq!(poly_arith(&a, &b, ArithOp::Sub).unwrap(), a.sub(&b));
    }

    #[test]
    fn display_reparses(a in poly_text(), which in 0usize..4) {
        let r = &rings()[which];
        let p = r.parse(&a).unwrap();
        prop_assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn division_identity(a in poly_text(), b in poly_text(), c in poly_text(), which in 0usize..4) {
        let r = &rings()[which];
        let (a, b, c) = (r.parse(&a).unwrap(), r.parse(&b).unwrap(), r.parse(&c).unwrap());
        let divisors: Vec<Polynomial> = [b, c].into_iter().filter(|d| !d.is_zero()).collect();
        let (q, rem) = a.div_rem(&divisors).unwrap();
        let back = q.iter().zip(&divisors).fold(rem.clone(), |acc, (qi, di)| acc.add(&qi.mul(di)));
        prop_assert_eq!(back, a);
        // no term of the remainder is divisible by a leading monomial
        for (m, _) in rem.terms() {
            for d in &divisors {
                prop_assert!(!d.lead_monomial().unwrap().divides(m));
            }
        }
    }

    #[test]
    fn parser_never_panics(s in "[xyz0-9+*/^() -]{0,24}") {
        let r = &rings()[0];
        let _ = r.parse(&s);
    }
}

#[test]
fn characteristic_p_arithmetic() {
    let r = PolyRing::new(FieldSpec::prime(3).unwrap(), &["x", "y"], TermOrder::Lex).unwrap();
    assert_eq!(r.parse("(x + y)^3").unwrap(), r.parse("x^3 + y^3").unwrap());
    assert_eq!(r.parse("1/2").unwrap(), r.from_i64(2));
    assert!(r.parse("1/3").is_err());
    assert!(FieldSpec::prime(6).is_err());
}

#[test]
fn mismatched_rings_are_rejected() {
    let a = PolyRing::new(FieldSpec::Rationals, &["x"], TermOrder::Lex).unwrap();
    let b = PolyRing::new(FieldSpec::prime(5).unwrap(), &["x"], TermOrder::Lex).unwrap();
    assert!(poly_arith(&a.parse("x").unwrap(), &b.parse("x").unwrap(), ArithOp::Add).is_err());
}
