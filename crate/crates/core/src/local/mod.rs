//! Quotient rings `k[x]/I` read locally at the origin.
//!
//! Local invariants are computed on the Artinian truncations
//! `k[x]/(I + m^N)`: once the dimension stops growing along
//! `N = 1, 2, 4, ...`, the truncation is the local ring itself.

mod length;
mod lifting;
mod tower;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polynomial::{Polynomial, Ring};

pub use length::{
    gorenstein_check, is_local_unit, local_length, locally_contains, socle, standard_monomials, GorensteinCheck,
    LocalLengthResult, LocalQuotient, Socle, DEFAULT_MAX_PRECISION,
};
pub use lifting::{hensel_lift_factors, lift_idempotent};
pub use tower::{build_tower, Tower, TowerSpec};

/// `k[x_1..x_n]/I` with origin ideal `m = (x_1..x_n)` and, optionally, a
/// designated set of base variables (the ring `R` the quotient is finite
/// over). A validated tower structure is attached when present.
#[derive(Clone)]
pub struct QuotientRing {
    ideal: Ideal,
    base: Option<Vec<usize>>,
    tower: Option<Arc<Tower>>,
}

impl QuotientRing {
    pub fn new(ideal: Ideal) -> QuotientRing {
        QuotientRing {
            ideal,
            base: None,
            tower: None,
        }
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    /// The defining ideal `I`.
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The origin ideal `m`.
    pub fn maximal_ideal(&self) -> Ideal {
        Ideal::maximal(self.ring())
    }

    fn resolve<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.ring()
                    .var_index(n.as_ref())
                    .ok_or_else(|| Error::Structural(format!("unknown variable `{}`", n.as_ref())))
            })
            .collect()
    }

    /// Designate base variables without requiring a tower presentation.
    pub fn with_base<S: AsRef<str>>(mut self, names: &[S]) -> Result<QuotientRing> {
        self.base = Some(self.resolve(names)?);
        self.tower = None;
        Ok(self)
    }

    /// Designate base variables and validate that the generators of `I`
    /// present a tower over them.
    pub fn as_tower<S: AsRef<str>>(mut self, names: &[S]) -> Result<QuotientRing> {
        let base = self.resolve(names)?;
        let tower = tower::detect_tower(&self.ideal, &base)?;
        self.base = Some(base);
        self.tower = Some(Arc::new(tower));
        Ok(self)
    }

    /// Designated base variables, if any.
    pub fn base_vars(&self) -> Option<&[usize]> {
        self.base.as_deref()
    }

    pub fn tower(&self) -> Option<&Tower> {
        self.tower.as_deref()
    }

    /// The tower structure, or a structural error.
    pub fn require_tower(&self) -> Result<&Tower> {
        self.tower()
            .ok_or_else(|| Error::Structural("quotient is not presented as a tower over designated base variables".into()))
    }

    /// The ideal `m_R T` generated by the base variables (all variables when
    /// none are designated).
    pub fn base_maximal_ideal(&self) -> Ideal {
        match &self.base {
            Some(b) => Ideal::of_variables(self.ring(), b),
            None => self.maximal_ideal(),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Ok(self.normal_form(&self.ring().parse(text)?))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.ideal.normal_form(f)
    }

    /// Equality in `k[x]/I` (global, not local).
    pub fn equal(&self, a: &Polynomial, b: &Polynomial) -> bool {
        self.ideal.contains(&a.sub(b))
    }

    /// `I + (extra)`.
    pub fn extend(&self, extra: &[Polynomial]) -> Ideal {
        self.ideal.with_generators(extra)
    }

    /// Local length of `T/(extra)`.
    pub fn length_mod(&self, extra: &[Polynomial], max_precision: u32) -> Result<LocalLengthResult> {
        local_length(&self.extend(extra), max_precision)
    }
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing({self})")
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        write!(f, "{}[{}]/{}", ring.field(), ring.var_names().join(","), self.ideal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{FieldSpec, Monomial, PolyRing, TermOrder};

    fn ring(vars: &[&str]) -> Ring {
        PolyRing::new(FieldSpec::Rationals, vars, TermOrder::DegRevLex).unwrap()
    }

    fn strings(ms: &[Monomial], r: &Ring) -> Vec<String> {
        ms.iter().map(|m| r.monomial(m.clone()).to_string()).collect()
    }

    #[test]
    fn standard_monomial_examples() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
        assert_eq!(strings(&standard_monomials(&i).unwrap(), &r), vec!["1", "y", "x"]);
        let m = Ideal::parse(&r, &["x", "y"]).unwrap();
        assert_eq!(strings(&standard_monomials(&m).unwrap(), &r), vec!["1"]);
        let j = Ideal::parse(&r, &["x*y", "x + y"]).unwrap();
        assert_eq!(strings(&standard_monomials(&j).unwrap(), &r), vec!["1", "y"]);
        let free = Ideal::parse(&r, &["x^2"]).unwrap();
        assert_eq!(
            standard_monomials(&free).unwrap_err(),
            Error::DimensionPositive { variable: "y".into() }
        );
    }

    #[test]
    fn local_length_examples() {
        let r1 = ring(&["x"]);
        let i = Ideal::parse(&r1, &["x^2 - x"]).unwrap();
        assert_eq!(local_length(&i, 64).unwrap().value, 1);
        let r = ring(&["x", "y"]);
        assert_eq!(local_length(&Ideal::parse(&r, &["x", "y"]).unwrap(), 64).unwrap().value, 1);
        let j = Ideal::parse(&r, &["x*y", "x + y"]).unwrap();
        assert_eq!(local_length(&j, 64).unwrap().value, 2);
        let unit_here = Ideal::parse(&r, &["x - 1", "y"]).unwrap();
        assert_eq!(local_length(&unit_here, 64).unwrap().value, 0);
    }

    #[test]
    fn positive_dimension_exceeds_precision() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x*y"]).unwrap();
        assert_eq!(local_length(&i, 8).unwrap_err(), Error::PrecisionExceeded { max: 8 });
    }

    #[test]
    fn socle_examples() {
        let r = ring(&["x", "y"]);
        let g = gorenstein_check(&Ideal::parse(&r, &["x^2", "y^2"]).unwrap(), 64).unwrap();
        assert!(g.gorenstein);
        assert_eq!(g.generator.unwrap(), r.parse("x*y").unwrap());
        let s = socle(&Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap(), 64).unwrap();
        assert_eq!(s.dimension, 2);
        assert!(!gorenstein_check(&Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap(), 64).unwrap().gorenstein);
        let r1 = ring(&["x"]);
        let s = socle(&Ideal::parse(&r1, &["x"]).unwrap(), 64).unwrap();
        assert_eq!(s.dimension, 1);
        assert_eq!(s.basis[0], r1.one());
    }

    #[test]
    fn tower_examples() {
        let base = ring(&["x"]);
        let t = build_tower(&TowerSpec::new(&base, &["y"], vec![vec![base.zero(), base.parse("-x").unwrap()]])).unwrap();
        let r = t.ring().clone();
        assert_eq!(t.ideal().generators()[0], r.parse("y^2 - x").unwrap());
        let closed = t.extend(&[r.parse("x").unwrap()]);
        assert_eq!(gorenstein_check(&closed, 64).unwrap().generator.unwrap(), r.parse("y").unwrap());

        let t = build_tower(&TowerSpec::pure_powers(&base, &["y1", "y2"], &[2, 3])).unwrap();
        let r = t.ring().clone();
        let closed = t.extend(&[r.parse("x").unwrap()]);
        assert_eq!(gorenstein_check(&closed, 64).unwrap().generator.unwrap(), r.parse("y1*y2^2").unwrap());

        let t = build_tower(&TowerSpec::pure_powers(&base, &["y"], &[1])).unwrap();
        assert_eq!(t.ideal().generators()[0], t.ring().parse("y").unwrap());

        let bad = TowerSpec::new(&base, &["y"], vec![vec![base.parse("1 + x").unwrap()]]);
        assert!(matches!(build_tower(&bad), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn tower_detection_rejects_non_monic() {
        let r = ring(&["x", "y"]);
        let t = QuotientRing::new(Ideal::parse(&r, &["2*y^2 - x"]).unwrap());
        assert!(matches!(t.as_tower(&["x"]), Err(Error::Structural(_))));
        let t = QuotientRing::new(Ideal::parse(&r, &["y^2 - 1"]).unwrap());
        assert!(matches!(t.as_tower(&["x"]), Err(Error::Structural(_))));
    }

    #[test]
    fn tower_coordinates() {
        let r = ring(&["x", "y"]);
        let t = QuotientRing::new(Ideal::parse(&r, &["y^2 - x^2"]).unwrap()).as_tower(&["x"]).unwrap();
        let tw = t.require_tower().unwrap();
        assert_eq!(tw.basis_exponents(), vec![vec![0], vec![1]]);
        let f = r.parse("(y + x)*y").unwrap();
        let c = tw.coordinates(&f);
        assert_eq!(c[&vec![0]], tw.base_ring().parse("x^2").unwrap());
        assert_eq!(c[&vec![1]], tw.base_ring().parse("x").unwrap());
    }

    #[test]
    fn hensel_examples() {
        let f7 = PolyRing::new(FieldSpec::Prime(7), &["x", "y"], TermOrder::DegRevLex).unwrap();
        let f = f7.parse("y^2 - (1 + x)").unwrap();
        let factors = [f7.parse("y - 1").unwrap(), f7.parse("y + 1").unwrap()];
        let lifted = hensel_lift_factors(&f, 1, &factors, 2).unwrap();
        assert_eq!(lifted[0], f7.parse("y - 1 - 4*x").unwrap());
        assert_eq!(lifted[1], f7.parse("y + 1 + 4*x").unwrap());

        let r = ring(&["x", "y"]);
        let f = r.parse("y^2 - y").unwrap();
        let factors = [r.parse("y").unwrap(), r.parse("y - 1").unwrap()];
        for n in [1, 2, 5, 16] {
            assert_eq!(hensel_lift_factors(&f, 1, &factors, n).unwrap(), factors.to_vec());
        }
        let sq = r.parse("y^2").unwrap();
        let y = r.parse("y").unwrap();
        assert!(matches!(
            hensel_lift_factors(&sq, 1, &[y.clone(), y], 4),
            Err(Error::HenselObstruction(_))
        ));
    }

    #[test]
    fn idempotent_examples() {
        let r = ring(&["x", "y"]);
        let t = QuotientRing::new(Ideal::parse(&r, &["y^2 - y - x"]).unwrap()).with_base(&["x"]).unwrap();
        let e = lift_idempotent(&t, &r.parse("y").unwrap(), 2).unwrap();
        assert_eq!(e, r.parse("y + x - 2*x*y").unwrap());
        assert_eq!(lift_idempotent(&t, &r.one(), 8).unwrap(), r.one());
        let art = QuotientRing::new(Ideal::parse(&r, &["y^2 - y", "x"]).unwrap()).with_base(&["x"]).unwrap();
        assert_eq!(lift_idempotent(&art, &r.parse("y").unwrap(), 4).unwrap(), r.parse("y").unwrap());
    }
}
