//! Socle/parameter conditions, splitting, retractions and multiplicities.

mod multiplicity;
mod split;
mod verdict;

pub use multiplicity::{frobenius_growth, multiplicity, FrobeniusRow, FrobeniusTable, MultiplicityReport, DEFAULT_NMAX};
pub use split::{build_retraction, reduce_to_principal, splitting_check, LocalFraction, RetractionMap, SplitReport};
pub use verdict::{annihilator, koszul_delta, spc_verdict, Annihilator, KoszulLengths, SpcReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::groebner::Ideal;
    use crate::local::QuotientRing;
    use crate::polynomial::{FieldSpec, PolyRing, TermOrder};
    use num_bigint::BigInt;

    fn quotient(field: FieldSpec, vars: &[&str], rels: &[&str]) -> QuotientRing {
        let r = PolyRing::new(field, vars, TermOrder::DegRevLex).unwrap();
        QuotientRing::new(Ideal::parse(&r, rels).unwrap())
    }

    fn xy() -> QuotientRing {
        quotient(FieldSpec::Rationals, &["x", "y"], &["x*y"])
    }

    fn tower() -> QuotientRing {
        quotient(FieldSpec::Rationals, &["x", "y"], &["y^2 - x^2"]).as_tower(&["x"]).unwrap()
    }

    #[test]
    fn worked_instance() {
        let t = xy();
        let r = t.ring().clone();
        let q = Ideal::parse(&r, &["x + y"]).unwrap();
        let x = r.parse("x").unwrap();
        let rep = spc_verdict(&t, &q, &x, Some(&x), 64).unwrap();
        assert!(rep.cond_socle_membership && rep.cond_annihilator && rep.cond_delta && rep.agreement);
        assert_eq!((rep.lengths.h0, rep.lengths.h1, rep.lengths.delta), (1, 0, 1));
        assert_eq!((rep.lengths.length_t_q, rep.lengths.length_t_ann_q), (2, 1));
        assert!(rep.length_identity_holds());
        assert!(rep.zero_divisor);
        // computed socle lift agrees
        let auto = spc_verdict(&t, &q, &x, None, 64).unwrap();
        assert!(auto.agreement && auto.cond_delta);
    }

    #[test]
    fn zero_and_square_parameters() {
        let t = xy();
        let r = t.ring().clone();
        let q = Ideal::parse(&r, &["x + y"]).unwrap();
        let rep = spc_verdict(&t, &q, &r.zero(), None, 64).unwrap();
        assert!(rep.degenerate && rep.agreement && rep.cond_delta);
        assert_eq!((rep.lengths.h0, rep.lengths.h1, rep.lengths.delta), (2, 0, 2));
        let q2 = Ideal::parse(&r, &["(x + y)^2"]).unwrap();
        let k = koszul_delta(&t, &q2, &r.parse("x").unwrap(), 64).unwrap();
        assert_eq!((k.h0, k.h1, k.delta), (2, 0, 2));
    }

    #[test]
    fn non_gorenstein_requires_lift() {
        let t = quotient(FieldSpec::Rationals, &["x", "y", "w"], &["x*y", "x*w", "y*w"]);
        let r = t.ring().clone();
        let q = Ideal::parse(&r, &["x + y + w"]).unwrap();
        let err = spc_verdict(&t, &q, &r.parse("x").unwrap(), None, 64).unwrap_err();
        assert_eq!(err, Error::GorensteinRequired { socle_dim: 2 });
        let t2 = xy();
        let bad = t2.ring().one();
        let q2 = Ideal::parse(t2.ring(), &["x + y"]).unwrap();
        let x = t2.ring().parse("x").unwrap();
        assert!(matches!(spc_verdict(&t2, &q2, &x, Some(&bad), 64), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn annihilator_examples() {
        let t = xy();
        let r = t.ring().clone();
        let a = annihilator(&t, &r.parse("x").unwrap()).unwrap();
        assert!(a.ideal.same_ideal(&Ideal::parse(&r, &["y"]).unwrap()));
        let t2 = tower();
        let a = annihilator(&t2, &t2.ring().parse("y").unwrap()).unwrap();
        assert!(a.ideal.same_ideal(t2.ideal()));
        let a = annihilator(&t, &r.zero()).unwrap();
        assert!(a.degenerate && a.ideal.is_unit());
    }

    #[test]
    fn splitting_examples() {
        let t = tower();
        let r = t.ring().clone();
        let s = splitting_check(&t, &[r.parse("y - x").unwrap()], 64).unwrap();
        assert!(s.splits);
        assert!(s.annihilator.same_ideal(&Ideal::parse(&r, &["y + x", "y^2 - x^2"]).unwrap()));
        let s = splitting_check(&t, &[r.parse("y").unwrap()], 64).unwrap();
        assert!(!s.splits && s.witness.is_none());
        let s = splitting_check(&t, &[r.zero()], 64).unwrap();
        assert!(s.splits && s.annihilator.is_unit());
        assert!(splitting_check(&xy(), &[], 64).is_err());
    }

    #[test]
    fn retraction_sends_y_to_x() {
        let t = tower();
        let r = t.ring().clone();
        let j = [r.parse("y - x").unwrap()];
        let rho = build_retraction(&t, &j, &r.parse("y + x").unwrap(), 64).unwrap();
        assert_eq!(rho.socle_lift, r.parse("y").unwrap());
        assert!(rho.preserves_one() && rho.kills(&j));
        assert!(rho.apply(&r.parse("y").unwrap()).equals(&rho.apply(&r.parse("x").unwrap())));
        assert_eq!(rho.apply(&r.parse("y").unwrap()).to_string(), "x");
        assert!(matches!(
            build_retraction(&t, &j, &r.parse("x*y").unwrap(), 64),
            Err(Error::InvalidWitness(_))
        ));
        let rho = build_retraction(&t, &[], &r.one(), 64).unwrap();
        assert!(rho.preserves_one());
    }

    #[test]
    fn principal_reduction() {
        let t0 = tower();
        let r0 = t0.ring().clone();
        let j = [r0.parse("y - x").unwrap(), r0.parse("y + x").unwrap()];
        let (t, g) = reduce_to_principal::<&str>(&t0, &j, None).unwrap();
        assert_eq!(g, t.ring().parse("w1*(y - x) + w2*(y + x)").unwrap());
        assert!(!splitting_check(&t0, &j, 64).unwrap().splits);
        assert!(!splitting_check(&t, &[g], 64).unwrap().splits);

        let (t, g) = reduce_to_principal(&t0, &j[..1], Some(&["u"])).unwrap();
        assert_eq!(g, t.ring().parse("u*(y - x)").unwrap());
        assert!(splitting_check(&t, &[g], 64).unwrap().splits);
        assert!(matches!(
            reduce_to_principal(&t0, &j[..1], Some(&["y"])),
            Err(Error::NameCollision(_))
        ));
    }

    #[test]
    fn multiplicity_examples() {
        let t = xy();
        let r = t.ring().clone();
        let m = Ideal::parse(&r, &["x", "y"]).unwrap();
        let rep = multiplicity(&t, &m, None, DEFAULT_NMAX, 64).unwrap();
        assert_eq!(rep.hilbert_samuel_lengths, vec![1, 3, 5, 7, 9, 11]);
        assert_eq!((rep.dimension, rep.e.clone()), (1, BigInt::from(2)));

        let q = Ideal::parse(&r, &["x + y"]).unwrap();
        let rep = multiplicity(&t, &q, Some(&r.parse("x").unwrap()), DEFAULT_NMAX, 64).unwrap();
        assert_eq!(rep.e, BigInt::from(1));
        assert_eq!(rep.chi, Some(1));
        assert_eq!(rep.serre_agrees, Some(true));

        let art = quotient(FieldSpec::Rationals, &["x", "y"], &["x^2", "y^2"]);
        let rep = multiplicity(&art, &Ideal::unit(art.ring()), None, DEFAULT_NMAX, 64).unwrap();
        assert_eq!((rep.dimension, rep.e), (0, BigInt::from(4)));
    }

    #[test]
    fn frobenius_over_f2() {
        let t = quotient(FieldSpec::prime(2).unwrap(), &["x", "y"], &["x*y"]);
        let r = t.ring().clone();
        let q = Ideal::parse(&r, &["x + y"]).unwrap();
        let table = frobenius_growth(&t, &q, &r.parse("x").unwrap(), &[1, 2, 4], 64).unwrap();
        let deltas: Vec<i64> = table.rows.iter().map(|r| r.delta).collect();
        assert_eq!(deltas, vec![1, 2, 4]);
        assert!(table.scaling_holds && table.bound_holds && table.delta_positive);
        assert!(matches!(
            frobenius_growth(&t, &q, &r.parse("x").unwrap(), &[3], 64),
            Err(Error::InvalidQ { q: 3, p: 2 })
        ));
        let tq = xy();
        let qq = Ideal::parse(tq.ring(), &["x + y"]).unwrap();
        assert!(frobenius_growth(&tq, &qq, &tq.ring().parse("x").unwrap(), &[1], 64).is_err());
    }
}
