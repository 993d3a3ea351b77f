use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::Matrix;
use crate::polynomial::{Coeff, Monomial, Polynomial};

/// Default cap on the m-adic precision ladder.
pub const DEFAULT_MAX_PRECISION: u32 = 64;

/// Length of the local component at the origin together with the precision
/// `N` at which `dim k[x]/(I + m^N)` stopped growing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalLengthResult {
    pub value: usize,
    pub stabilized_at: u32,
}

/// Monomials outside the leading-term ideal, ascending in the ring's order.
/// Requires a zero-dimensional ideal.
pub fn standard_monomials(ideal: &Ideal) -> Result<Vec<Monomial>> {
    let ring = ideal.ring();
    let lms = ideal.leading_monomials();
    if lms.iter().any(|m| m.is_one()) {
        return Ok(Vec::new());
    }
    if ideal.max_power().is_none() {
        for v in 0..ring.nvars() {
            if !lms.iter().any(|m| m.pure_power_var() == Some(v)) {
                return Err(Error::DimensionPositive {
                    variable: ring.var_names()[v].clone(),
                });
            }
        }
    }
    Ok(enumerate_standard(ideal, &lms))
}

fn enumerate_standard(ideal: &Ideal, lms: &[Monomial]) -> Vec<Monomial> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let bound = ideal.max_power();
    // monomials of degree >= bound are handled by the degree test
    let walls: Vec<&Monomial> = lms
        .iter()
        .filter(|m| bound.is_none_or(|b| m.degree() < b))
        .collect();
    let standard = |m: &Monomial| bound.is_none_or(|b| m.degree() < b) && !walls.iter().any(|w| w.divides(m));
    let mut out = Vec::new();
    let one = Monomial::one(n);
    if !standard(&one) {
        return out;
    }
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut stack = vec![one.clone()];
    seen.insert(one);
    while let Some(m) = stack.pop() {
        for v in 0..n {
            let next = m.mul(&Monomial::var_power(n, v, 1));
            if !seen.contains(&next) && standard(&next) {
                seen.insert(next.clone());
                stack.push(next);
            }
        }
        out.push(m);
    }
    let order = ring.order();
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

fn ladder(max: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut n = 1u32;
    while n <= max {
        out.push(n);
        n = n.saturating_mul(2);
        if n == u32::MAX {
            break;
        }
    }
    if out.last() != Some(&max) && max >= 1 {
        out.push(max);
    }
    out
}

/// `dim k[x]/(I + m^N)` for `N = 1, 2, 4, ...`, stopping at the first repeat.
/// A rung is confirmed against `N + 1` rather than `2N`; both give the same answer.
pub fn local_length(ideal: &Ideal, max_precision: u32) -> Result<LocalLengthResult> {
    Ok(LocalQuotient::new(ideal, max_precision)?.length_result())
}

/// The local Artinian quotient `k[x]/(I + m^N)` at the stabilized precision.
#[derive(Clone, Debug)]
pub struct LocalQuotient {
    truncated: Ideal,
    length: usize,
    precision: u32,
}

impl LocalQuotient {
    pub fn new(ideal: &Ideal, max_precision: u32) -> Result<LocalQuotient> {
        let steps = ladder(max_precision);
        for (k, &n) in steps.iter().enumerate() {
            let t = ideal.plus_max_power(n);
            let dim = enumerate_standard(&t, &t.leading_monomials()).len();
            if dim == 0 {
                // the ideal is the unit ideal locally
                return Ok(LocalQuotient {
                    truncated: t,
                    length: 0,
                    precision: n,
                });
            }
            if k + 1 == steps.len() {
                break;
            }
            // dim at N + 1 equal to dim at N means m^N dies locally (Nakayama),
            // so the next rung would repeat it; this is far cheaper than 2N
            let next = ideal.plus_max_power(n + 1);
            if enumerate_standard(&next, &next.leading_monomials()).len() == dim {
                return Ok(LocalQuotient {
                    truncated: t,
                    length: dim,
                    precision: n,
                });
            }
        }
        Err(Error::PrecisionExceeded { max: max_precision })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn length_result(&self) -> LocalLengthResult {
        LocalLengthResult {
            value: self.length,
            stabilized_at: self.precision,
        }
    }

    /// `I + m^N` at the stabilized `N`.
    pub fn ideal(&self) -> &Ideal {
        &self.truncated
    }

    /// Local membership: `f` lies in the localized ideal.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.truncated.contains(f)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.truncated.normal_form(f)
    }

    pub fn standard_monomials(&self) -> Vec<Monomial> {
        enumerate_standard(&self.truncated, &self.truncated.leading_monomials())
    }

    /// Annihilator of the maximal ideal, as a reduced echelon basis of
    /// normal forms (each monic, distinct leading monomials).
    pub fn socle(&self) -> Socle {
        let ring = self.truncated.ring().clone();
        let field = ring.field();
        let basis = self.standard_monomials();
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let l = basis.len();
        let nf = self.truncated.normal_former();
        let n = ring.nvars();
        let mut mat = Matrix::zeros(field, n * l, l);
        for (col, b) in basis.iter().enumerate() {
            for v in 0..n {
                let prod = ring.monomial(b.mul(&Monomial::var_power(n, v, 1)));
                for (m, c) in nf.reduce(&prod).terms() {
                    let row = index[m];
                    mat.set(v * l + row, col, c.clone());
                }
            }
        }
        let kernel = mat.kernel();
        // canonical basis: echelon form with columns in descending monomial order
        let mut k = Matrix::from_rows(
            field,
            kernel.iter().map(|v| v.iter().rev().cloned().collect()).collect(),
            l,
        );
        let pivots = k.rref();
        let elements: Vec<Polynomial> = (0..pivots.len())
            .map(|r| {
                let terms: Vec<(Monomial, Coeff)> = k
                    .row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (basis[l - 1 - j].clone(), c.clone()))
                    .collect();
                ring.from_terms(terms).monic()
            })
            .collect();
        Socle {
            dimension: elements.len(),
            basis: elements,
            precision: self.precision,
        }
    }
}

/// Socle of a local Artinian quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Socle {
    /// k-basis of normal forms.
    pub basis: Vec<Polynomial>,
    pub dimension: usize,
    pub precision: u32,
}

/// Gorenstein test for a locally Artinian quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinCheck {
    pub gorenstein: bool,
    pub socle_dimension: usize,
    /// Monic normal form generating the socle, when it is one-dimensional.
    pub generator: Option<Polynomial>,
}

pub fn socle(ideal: &Ideal, max_precision: u32) -> Result<Socle> {
    Ok(LocalQuotient::new(ideal, max_precision)?.socle())
}

pub fn gorenstein_check(ideal: &Ideal, max_precision: u32) -> Result<GorensteinCheck> {
    let s = socle(ideal, max_precision)?;
    let gorenstein = s.dimension == 1;
    Ok(GorensteinCheck {
        gorenstein,
        socle_dimension: s.dimension,
        generator: if gorenstein { s.basis.into_iter().next() } else { None },
    })
}

/// Local membership for an arbitrary ideal: `f` lies in `I` after
/// localizing at the origin iff `(I : f)` has an element that is a unit
/// there, i.e. a generator with nonzero constant term.
pub fn locally_contains(ideal: &Ideal, f: &Polynomial) -> Result<bool> {
    if ideal.contains(f) {
        return Ok(true);
    }
    let c = ideal.colon(f)?;
    Ok(is_local_unit(&c))
}

/// Whether the ideal is the unit ideal after localizing at the origin.
pub fn is_local_unit(ideal: &Ideal) -> bool {
    ideal.explicit_generators().iter().any(|g| !g.constant_term().is_zero())
}
