//! Reduced Gröbner bases and the ideal toolbox.

mod buchberger;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::polynomial::{Monomial, PolyRing, Polynomial, Ring, TermOrder};

pub(crate) use buchberger::NormalForm;

/// An ideal given by generators, optionally enlarged by a power of the
/// origin ideal `m = (all variables)`. The reduced Gröbner basis is computed
/// on first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    max_power: Option<u32>,
    basis: OnceLock<Arc<[Polynomial]>>,
}

/// Selector for [`ideal_combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Product,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            g.check_ring(&ring.zero())?;
        }
        Ok(Ideal::raw(ring, gens, None))
    }

    fn raw(ring: &Ring, gens: Vec<Polynomial>, max_power: Option<u32>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens,
            max_power,
            basis: OnceLock::new(),
        }
    }

    fn with_basis(ring: &Ring, basis: Vec<Polynomial>) -> Ideal {
        let ideal = Ideal::raw(ring, basis.clone(), None);
        let _ = ideal.basis.set(basis.into());
        ideal
    }

    /// Parse each generator with [`PolyRing::parse`].
    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::raw(ring, Vec::new(), None)
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::with_basis(ring, vec![ring.one()])
    }

    /// The origin ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::of_variables(ring, &(0..ring.nvars()).collect::<Vec<_>>())
    }

    /// The ideal generated by the listed variables.
    pub fn of_variables(ring: &Ring, vars: &[usize]) -> Ideal {
        Ideal::raw(ring, vars.iter().map(|&v| ring.variable(v)).collect(), None)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.ring.order()
    }

    /// Generators as supplied (without the `m^N` part, if any).
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The exponent `N` when this ideal carries an `m^N` summand.
    pub fn max_power(&self) -> Option<u32> {
        self.max_power
    }

    /// A generating set for the whole ideal, including any `m^N` part.
    pub fn explicit_generators(&self) -> Vec<Polynomial> {
        match self.max_power {
            None => self.gens.clone(),
            Some(_) => self.groebner_basis().to_vec(),
        }
    }

    /// The reduced Gröbner basis, sorted by descending leading monomial.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.basis
            .get_or_init(|| buchberger::reduced_basis(&self.ring, &self.gens, self.max_power).into())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        buchberger::normal_form(f, self.groebner_basis(), self.max_power)
    }

    /// Reusable normal-form engine for many queries against this ideal.
    pub(crate) fn normal_former(&self) -> NormalForm {
        NormalForm::new(self.groebner_basis(), self.max_power)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.explicit_generators().iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner_basis();
        gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.groebner_basis().is_empty()
    }

    /// Equality of ideals (same reduced basis).
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.ring.same_as(&other.ring) && self.groebner_basis() == other.groebner_basis()
    }

    /// `self + m^n`.
    pub fn plus_max_power(&self, n: u32) -> Ideal {
        let n = self.max_power.map_or(n, |m| m.min(n));
        Ideal::raw(&self.ring, self.gens.clone(), Some(n))
    }

    /// `self + (extra)`.
    pub fn with_generators(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::raw(&self.ring, gens, self.max_power)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let max_power = match (self.max_power, other.max_power) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Ok(Ideal::raw(&self.ring, gens, max_power))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let a = self.explicit_generators();
        let b = other.explicit_generators();
        let mut gens = Vec::with_capacity(a.len() * b.len());
        for f in &a {
            for g in &b {
                let p = f.mul(g);
                if !p.is_zero() {
                    gens.push(p);
                }
            }
        }
        Ok(Ideal::raw(&self.ring, gens, None))
    }

    /// `self^n` by repeated products.
    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self).expect("same ring");
            acc = Ideal::with_basis(&self.ring, acc.groebner_basis().to_vec());
        }
        acc
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if other.contains_ideal(self) {
            return Ok(self.clone());
        }
        if self.contains_ideal(other) {
            return Ok(other.clone());
        }
        let ring = &self.ring;
        let aux = aux_name(ring);
        let mut names = vec![aux];
        names.extend(ring.var_names().iter().cloned());
        let big = PolyRing::new(ring.field(), &names, TermOrder::Elimination(1))?;
        let shift: Vec<usize> = (1..=ring.nvars()).collect();
        let t = big.variable(0);
        let one_minus_t = big.one().sub(&t);
        let mut gens = Vec::new();
        for g in self.explicit_generators() {
            gens.push(t.mul(&g.map_into(&big, &shift)));
        }
        for g in other.explicit_generators() {
            gens.push(one_minus_t.mul(&g.map_into(&big, &shift)));
        }
        let elim = eliminate(&Ideal::raw(&big, gens, None), ring.nvars())?;
        let back: Vec<Polynomial> = elim
            .groebner_basis()
            .iter()
            .map(|g| g.drop_leading_vars(1, ring))
            .collect();
        Ok(Ideal::raw(ring, back, None))
    }

    /// `(self : f) = { g : g f in self }`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        f.check_ring(&self.ring.zero())?;
        if f.is_zero() {
            return Err(Error::DegenerateInput("colon by the zero polynomial".into()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        if self.contains(f) {
            return Ok(Ideal::unit(&self.ring));
        }
        if self.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let principal = Ideal::raw(&self.ring, vec![f.clone()], None);
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::new();
        for g in meet.groebner_basis() {
            let q = g
                .exact_div(f)
                .ok_or_else(|| Error::Structural("intersection generator not divisible by f".into()))?;
            gens.push(q);
        }
        Ok(Ideal::raw(&self.ring, gens, None))
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        self.ring.zero().check_ring(&other.ring.zero())
    }

    /// Move the ideal into a ring with the same variables under another order.
    pub fn with_order(&self, order: TermOrder) -> Result<Ideal> {
        if order == self.ring.order() {
            return Ok(self.clone());
        }
        let ring = self.ring.with_order(order)?;
        let gens = self.gens.iter().map(|g| g.with_ring(&ring)).collect();
        Ok(Ideal::raw(&ring, gens, self.max_power))
    }
}

fn aux_name(ring: &Ring) -> String {
    let mut k = 0;
    loop {
        let name = format!("_t{k}");
        if ring.var_index(&name).is_none() {
            return name;
        }
        k += 1;
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.same_ideal(other)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))?;
        if let Some(n) = self.max_power {
            write!(f, " + m^{n}")?;
        }
        Ok(())
    }
}

/// Ideal with its reduced Gröbner basis under `order` already computed.
pub fn buchberger(gens: &[Polynomial], order: TermOrder) -> Result<Ideal> {
    let first = gens
        .first()
        .ok_or_else(|| Error::DegenerateInput("empty generator list carries no ring".into()))?;
    let ideal = Ideal::new(first.ring(), gens.to_vec())?.with_order(order)?;
    ideal.groebner_basis();
    Ok(ideal)
}

pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    f.check_ring(&ideal.ring.zero())?;
    Ok(ideal.contains(f))
}

pub fn ideal_combine(a: &Ideal, b: &Ideal, op: CombineOp) -> Result<Ideal> {
    match op {
        CombineOp::Sum => a.sum(b),
        CombineOp::Product => a.product(b),
    }
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.intersect(b)
}

pub fn colon(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    ideal.colon(f)
}

/// `I ∩ k[last keep_count variables]`, kept in the ambient ring. The ring's
/// order must eliminate the leading block of variables.
pub fn eliminate(ideal: &Ideal, keep_count: usize) -> Result<Ideal> {
    let n = ideal.ring.nvars();
    if keep_count > n {
        return Err(Error::Structural(format!("cannot keep {keep_count} of {n} variables")));
    }
    let drop = n - keep_count;
    if !ideal.order().eliminates(drop) {
        return Err(Error::Structural(format!(
            "order {} does not eliminate the first {drop} variables",
            ideal.order().name()
        )));
    }
    let kept: Vec<Polynomial> = ideal
        .groebner_basis()
        .iter()
        .filter(|g| (0..drop).all(|v| !g.involves(v)))
        .cloned()
        .collect();
    Ok(Ideal::with_basis(&ideal.ring, kept))
}

/// Verify Buchberger's criterion on a basis: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            let s = buchberger::s_poly(f, g);
            if !buchberger::normal_form(&s, basis, None).is_zero() {
                return false;
            }
        }
    }
    true
}
