use proptest::prelude::*;
use socle_lab::groebner::{buchberger, eliminate, is_groebner_basis};
use socle_lab::{FieldSpec, Ideal, PolyRing, Polynomial, Ring, TermOrder};

fn ring(field: FieldSpec, order: TermOrder) -> Ring {
    PolyRing::new(field, &["x", "y", "z"], order).unwrap()
}

fn poly_text() -> impl Strategy<Value = String> {
    let term = (-3i64..=3, 0u32..3, 0u32..3, 0u32..2).prop_map(|(n, a, b, c)| format!("({n})*x^{a}*y^{b}*z^{c}"));
    prop::collection::vec(term, 1..4).prop_map(|ts| ts.join(" + "))
}

fn field_and_order() -> impl Strategy<Value = (FieldSpec, TermOrder)> {
    (0usize..2, 0usize..3).prop_map(|(f, o)| {
        let field = if f == 0 { FieldSpec::Rationals } else { FieldSpec::prime(7).unwrap() };
        let order = [TermOrder::DegRevLex, TermOrder::Lex, TermOrder::Elimination(1)][o];
        (field, order)
    })
}

fn parse_all(r: &Ring, texts: &[String]) -> Vec<Polynomial> {
    texts.iter().map(|t| r.parse(t).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_is_groebner_and_generates(gens in prop::collection::vec(poly_text(), 1..4), fo in field_and_order()) {
        let r = ring(fo.0, fo.1);
        let gens = parse_all(&r, &gens);
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let gb = i.groebner_basis();
        prop_assert!(is_groebner_basis(gb));
        for g in &gens {
            prop_assert!(i.contains(g));
        }
        for b in gb {
            prop_assert!(b.lead_coeff().unwrap().is_one());
        }
        // reduced bases are unique
        let again = buchberger(&gens.iter().rev().cloned().collect::<Vec<_>>(), fo.1).unwrap();
        prop_assert_eq!(again.groebner_basis(), gb);
    }

    #[test]
    fn normal_form_is_canonical(gens in prop::collection::vec(poly_text(), 1..3), f in poly_text(), h in poly_text()) {
        let r = ring(FieldSpec::Rationals, TermOrder::DegRevLex);
        let i = Ideal::new(&r, parse_all(&r, &gens)).unwrap();
        let f = r.parse(&f).unwrap();
        let nf = i.normal_form(&f);
        prop_assert_eq!(i.normal_form(&nf), nf.clone());
        prop_assert!(i.contains(&f.sub(&nf)));
        // adding an ideal element does not change the normal form
        let shifted = f.add(&r.parse(&h).unwrap().mul(&i.generators()[0]));
        prop_assert_eq!(i.normal_form(&shifted), nf);
    }

    #[test]
    fn toolbox_laws(a in prop::collection::vec(poly_text(), 1..3), b in prop::collection::vec(poly_text(), 1..3), f in poly_text()) {
        let r = ring(FieldSpec::prime(7).unwrap(), TermOrder::DegRevLex);
        let ia = Ideal::new(&r, parse_all(&r, &a)).unwrap();
        let ib = Ideal::new(&r, parse_all(&r, &b)).unwrap();
        let cap = ia.intersect(&ib).unwrap();
        let prod = ia.product(&ib).unwrap();
        let sum = ia.sum(&ib).unwrap();
        prop_assert!(ia.contains_ideal(&cap) && ib.contains_ideal(&cap));
        prop_assert!(cap.contains_ideal(&prod));
        prop_assert!(sum.contains_ideal(&ia) && sum.contains_ideal(&ib));
        let f = r.parse(&f).unwrap();
        prop_assume!(!f.is_zero());
        let col = ia.colon(&f).unwrap();
        prop_assert!(col.contains_ideal(&ia));
        for g in col.groebner_basis() {
            prop_assert!(ia.contains(&g.mul(&f)));
        }
    }
}

#[test]
fn elimination_of_twisted_cubic() {
    let r = PolyRing::new(FieldSpec::Rationals, &["t", "x", "y", "z"], TermOrder::Elimination(1)).unwrap();
    let i = Ideal::parse(&r, &["x - t", "y - t^2", "z - t^3"]).unwrap();
    let e = eliminate(&i, 3).unwrap();
    let expected = Ideal::parse(&r, &["y - x^2", "z - x*y", "x*z - y^2"]).unwrap();
    assert!(e.same_ideal(&expected));
    let wrong = PolyRing::new(FieldSpec::Rationals, &["t", "x"], TermOrder::DegRevLex).unwrap();
    assert!(eliminate(&Ideal::parse(&wrong, &["x - t"]).unwrap(), 1).is_err());
}

#[test]
fn colon_edge_cases() {
    let r = ring(FieldSpec::Rationals, TermOrder::DegRevLex);
    let i = Ideal::parse(&r, &["x*y", "z^2"]).unwrap();
    assert!(matches!(i.colon(&r.zero()), Err(socle_lab::Error::DegenerateInput(_))));
    assert!(i.colon(&r.parse("z^2").unwrap()).unwrap().is_unit());
    assert!(i.colon(&r.one()).unwrap().same_ideal(&i));
    assert!(i.colon(&r.parse("x").unwrap()).unwrap().same_ideal(&Ideal::parse(&r, &["y", "z^2"]).unwrap()));
}
