use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::local::{gorenstein_check, LocalQuotient, QuotientRing};
use crate::polynomial::{PolyRing, Polynomial};

/// Result of the annihilator splitting test for `R -> T/J`.
#[derive(Debug, Clone)]
pub struct SplitReport {
    /// `Ann_T J`, as an ideal of the ambient ring containing `I`.
    pub annihilator: Ideal,
    pub splits: bool,
    /// A reduced generator of `Ann_T J` outside `m_R T`, in normal form.
    pub witness: Option<Polynomial>,
}

/// `Ann_T J = ∩ (I : g_i)`; the map `R -> T/J` splits iff this is not
/// contained in `m_R T`, checked generator by generator.
pub fn splitting_check(t: &QuotientRing, j: &[Polynomial], max_precision: u32) -> Result<SplitReport> {
    t.require_tower()?;
    let ring = t.ring();
    let mut ann = Ideal::unit(ring);
    for g in j {
        g.check_ring(&ring.zero())?;
        let g = t.normal_form(g);
        if g.is_zero() {
            continue;
        }
        let c = t.ideal().colon(&g)?;
        ann = if ann.is_unit() { c } else { ann.intersect(&c)? };
    }
    let closed = LocalQuotient::new(&t.ideal().sum(&t.base_maximal_ideal())?, max_precision)?;
    let witness = ann
        .groebner_basis()
        .iter()
        .find(|g| !closed.contains(g))
        .map(|g| t.normal_form(g));
    Ok(SplitReport {
        annihilator: ann,
        splits: witness.is_some(),
        witness,
    })
}

/// `num / den` over the base ring with `den` a unit at the origin.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalFraction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl LocalFraction {
    fn new(num: Polynomial, den: Polynomial) -> LocalFraction {
        // clear constant denominators
        if den.is_constant() {
            let inv = den.field().inv(&den.constant_term()).expect("unit denominator");
            let one = den.ring().one();
            return LocalFraction { num: num.scale(&inv), den: one };
        }
        LocalFraction { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Cross-multiplied equality.
    pub fn equals(&self, other: &LocalFraction) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for LocalFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for LocalFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalFraction({self})")
    }
}

/// An R-linear retraction `ρ: T -> R_m` with `ρ(J) = 0`, built from a
/// witness `a ∈ Ann_T J \ m_R T` as `ρ(t) = u₁*(a'·t) / u₁*(a')`, where
/// `u₁*` is the coordinate dual to a socle lift of `T/m_R T` and
/// `a' = s·a` for the first basis monomial `s` making `u₁*(a')` a unit.
#[derive(Debug, Clone)]
pub struct RetractionMap {
    /// Free R-basis of `T`: the socle lift `u₁` followed by the remaining
    /// basis monomials.
    pub basis: Vec<Polynomial>,
    /// `ρ(basis[i])`.
    pub images: Vec<LocalFraction>,
    pub witness: Polynomial,
    pub multiplier: Polynomial,
    pub socle_lift: Polynomial,
    t: QuotientRing,
    pivot: Vec<u32>,
    scaled_witness: Polynomial,
}

impl RetractionMap {
    pub fn apply(&self, x: &Polynomial) -> LocalFraction {
        let tower = self.t.require_tower().expect("retraction over a tower");
        let num = tower.coordinate(&self.scaled_witness.mul(x), &self.pivot);
        let den = tower.coordinate(&self.scaled_witness, &self.pivot);
        LocalFraction::new(num, den)
    }

    /// `ρ(1) = 1`, checked exactly.
    pub fn preserves_one(&self) -> bool {
        self.apply(&self.t.ring().one()).is_one()
    }

    /// `ρ(g) = 0` for every listed element.
    pub fn kills(&self, gens: &[Polynomial]) -> bool {
        gens.iter().all(|g| self.apply(g).is_zero())
    }
}

pub fn build_retraction(t: &QuotientRing, j: &[Polynomial], a: &Polynomial, max_precision: u32) -> Result<RetractionMap> {
    let tower = t.require_tower()?;
    let ring = t.ring();
    a.check_ring(&ring.zero())?;
    let a = t.normal_form(a);
    let closed_ideal = t.ideal().sum(&t.base_maximal_ideal())?;
    let closed = LocalQuotient::new(&closed_ideal, max_precision)?;
    if closed.contains(&a) {
        return Err(Error::InvalidWitness(format!("`{a}` lies in m_R T")));
    }
    for g in j {
        if !t.ideal().contains(&a.mul(g)) {
            return Err(Error::InvalidWitness(format!("`{a}` does not annihilate `{g}`")));
        }
    }
    let check = gorenstein_check(&closed_ideal, max_precision)?;
    let u1 = check.generator.ok_or(Error::GorensteinRequired {
        socle_dim: check.socle_dimension,
    })?;

    let exps = tower.basis_exponents();
    let pivot = exps
        .iter()
        .find(|alpha| !tower.coordinate(&u1, alpha).constant_term().is_zero())
        .cloned()
        .ok_or_else(|| Error::BasisCompletion("socle lift has no unit coordinate".into()))?;

    let mut multiplier = None;
    let candidates = std::iter::once(ring.one()).chain(exps.iter().map(|e| tower.basis_element(ring, e)));
    for s in candidates {
        let scaled = t.normal_form(&s.mul(&a));
        if !tower.coordinate(&scaled, &pivot).constant_term().is_zero() {
            multiplier = Some((s, scaled));
            break;
        }
    }
    let (multiplier, scaled_witness) =
        multiplier.ok_or_else(|| Error::BasisCompletion("no basis multiple of the witness pairs with the socle".into()))?;

    let mut basis = vec![u1.clone()];
    basis.extend(exps.iter().filter(|e| **e != pivot).map(|e| tower.basis_element(ring, e)));
    let mut map = RetractionMap {
        basis,
        images: Vec::new(),
        witness: a,
        multiplier,
        socle_lift: u1,
        t: t.clone(),
        pivot,
        scaled_witness,
    };
    map.images = map.basis.iter().map(|b| map.apply(b)).collect();
    Ok(map)
}

/// Adjoin fresh variables `w_1..w_s` to the base and replace `J = (g_1..g_s)`
/// by the principal ideal `(w_1 g_1 + ... + w_s g_s)`.
pub fn reduce_to_principal<S: AsRef<str>>(
    t0: &QuotientRing,
    j: &[Polynomial],
    fresh: Option<&[S]>,
) -> Result<(QuotientRing, Polynomial)> {
    let ring0 = t0.ring();
    let names: Vec<String> = match fresh {
        Some(f) => {
            if f.len() != j.len() {
                return Err(Error::Structural(format!(
                    "{} fresh variables for {} generators",
                    f.len(),
                    j.len()
                )));
            }
            f.iter().map(|s| s.as_ref().to_string()).collect()
        }
        None => (1..=j.len()).map(|i| format!("w{i}")).collect(),
    };
    for n in &names {
        if ring0.var_index(n).is_some() {
            return Err(Error::NameCollision(n.clone()));
        }
    }
    let mut all = ring0.var_names().to_vec();
    all.extend(names.iter().cloned());
    let ring = PolyRing::new(ring0.field(), &all, ring0.order())?;
    let embed: Vec<usize> = (0..ring0.nvars()).collect();
    let rels: Vec<Polynomial> = t0.ideal().generators().iter().map(|g| g.map_into(&ring, &embed)).collect();
    let ideal = Ideal::new(&ring, rels)?;
    let mut base: Vec<String> = t0
        .base_vars()
        .unwrap_or(&[])
        .iter()
        .map(|&b| ring0.var_names()[b].clone())
        .collect();
    base.extend(names.iter().cloned());
    let t = if t0.tower().is_some() {
        QuotientRing::new(ideal).as_tower(&base)?
    } else {
        QuotientRing::new(ideal).with_base(&base)?
    };
    let mut g = ring.zero();
    for (i, gi) in j.iter().enumerate() {
        gi.check_ring(&ring0.zero())?;
        let w = ring.variable(ring0.nvars() + i);
        g = g.add(&w.mul(&gi.map_into(&ring, &embed)));
    }
    Ok((t, g))
}
