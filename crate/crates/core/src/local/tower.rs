use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polynomial::{Monomial, PolyRing, Polynomial, Ring, TermOrder};

use super::length::{gorenstein_check, DEFAULT_MAX_PRECISION};
use super::QuotientRing;

/// Input for [`build_tower`]: monic relations
/// `f_i = y_i^{n_i} + a_{i,1} y_i^{n_i-1} + ... + a_{i,n_i}` with every
/// `a_{i,j}` a polynomial in the base variables vanishing at the origin.
#[derive(Debug, Clone)]
pub struct TowerSpec {
    pub base_ring: Ring,
    pub tower_vars: Vec<String>,
    /// `coefficients[i] = [a_{i,1}, ..., a_{i,n_i}]`, so `n_i` is its length.
    pub coefficients: Vec<Vec<Polynomial>>,
}

impl TowerSpec {
    pub fn new<S: AsRef<str>>(base_ring: &Ring, tower_vars: &[S], coefficients: Vec<Vec<Polynomial>>) -> TowerSpec {
        TowerSpec {
            base_ring: base_ring.clone(),
            tower_vars: tower_vars.iter().map(|s| s.as_ref().to_string()).collect(),
            coefficients,
        }
    }

    /// The tower `y_i^{n_i} = 0` with all lower coefficients zero.
    pub fn pure_powers<S: AsRef<str>>(base_ring: &Ring, tower_vars: &[S], degrees: &[u32]) -> TowerSpec {
        let coefficients = degrees
            .iter()
            .map(|&n| vec![base_ring.zero(); n as usize])
            .collect();
        TowerSpec::new(base_ring, tower_vars, coefficients)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.coefficients.iter().map(|c| c.len() as u32).collect()
    }
}

/// Free-module structure of a tower `T = R[y]/(f_1(y_1), ..., f_r(y_r))`
/// over `R = k[x]`.
#[derive(Debug)]
pub struct Tower {
    base: Vec<usize>,
    ys: Vec<usize>,
    degrees: Vec<u32>,
    base_ring: Ring,
    frame: Ring,
    /// ambient variable index -> frame variable index
    to_frame: Vec<usize>,
    frame_ideal: Ideal,
}

impl Tower {
    /// Ambient indices of the base variables.
    pub fn base_vars(&self) -> &[usize] {
        &self.base
    }

    /// Ambient indices of the tower variables, in relation order.
    pub fn tower_vars(&self) -> &[usize] {
        &self.ys
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `R = k[base variables]` with degrevlex.
    pub fn base_ring(&self) -> &Ring {
        &self.base_ring
    }

    /// Exponent vectors `alpha` with `alpha_i < n_i`: the monomial R-basis,
    /// ascending in degrevlex on the tower variables.
    pub fn basis_exponents(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = vec![vec![]];
        for &n in &self.degrees {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..n).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        let order = TermOrder::DegRevLex;
        out.sort_by(|a, b| order.cmp(&Monomial::from_exponents(a), &Monomial::from_exponents(b)));
        out
    }

    /// The basis element `y^alpha` in the ambient ring.
    pub fn basis_element(&self, ambient: &Ring, alpha: &[u32]) -> Polynomial {
        let mut exps = vec![0u32; ambient.nvars()];
        for (i, &y) in self.ys.iter().enumerate() {
            exps[y] = alpha[i];
        }
        ambient.monomial(Monomial::from_exponents(&exps))
    }

    /// Coordinates of `t` in the monomial basis: `t = sum_alpha c_alpha(x) y^alpha`.
    pub fn coordinates(&self, t: &Polynomial) -> HashMap<Vec<u32>, Polynomial> {
        let r = self.ys.len();
        let framed = t.map_into(&self.frame, &self.to_frame);
        let nf = self.frame_ideal.normal_form(&framed);
        let mut grouped: HashMap<Vec<u32>, Vec<_>> = HashMap::new();
        for (m, c) in nf.terms() {
            let exps: Vec<u32> = m.exponents().collect();
            let alpha = exps[..r].to_vec();
            let rest = Monomial::from_exponents(&exps[r..]);
            grouped.entry(alpha).or_default().push((rest, c.clone()));
        }
        grouped
            .into_iter()
            .map(|(k, terms)| (k, self.base_ring.from_terms(terms)))
            .collect()
    }

    /// Coordinate of `t` on `y^alpha`.
    pub fn coordinate(&self, t: &Polynomial, alpha: &[u32]) -> Polynomial {
        self.coordinates(t)
            .remove(alpha)
            .unwrap_or_else(|| self.base_ring.zero())
    }

    /// Embed a polynomial of the base ring into the ambient ring.
    pub fn lift_base(&self, ambient: &Ring, c: &Polynomial) -> Polynomial {
        c.map_into(ambient, &self.base)
    }
}

/// Validate that `ideal` presents a tower over the given base variables:
/// each generator is monic in exactly one non-base variable, these are
/// distinct and exhaust the non-base variables, and the lower coefficients
/// vanish at the origin.
pub(crate) fn detect_tower(ideal: &Ideal, base: &[usize]) -> Result<Tower> {
    let ring = ideal.ring();
    let nonbase: Vec<usize> = (0..ring.nvars()).filter(|v| !base.contains(v)).collect();
    let mut found: Vec<(usize, u32, Polynomial)> = Vec::new();
    for g in ideal.generators() {
        let ys: Vec<usize> = nonbase.iter().copied().filter(|&v| g.involves(v)).collect();
        if ys.len() != 1 {
            return Err(Error::Structural(format!(
                "relation `{g}` must involve exactly one tower variable"
            )));
        }
        let y = ys[0];
        let n = g.degree_in(y);
        let lead = Monomial::var_power(ring.nvars(), y, n);
        for (m, c) in g.terms() {
            if *m == lead {
                if !c.is_one() {
                    return Err(Error::Structural(format!("relation `{g}` is not monic in {}", ring.var_names()[y])));
                }
            } else if m.exponent(y) == n {
                return Err(Error::Structural(format!("relation `{g}` is not monic in {}", ring.var_names()[y])));
            } else if !base.iter().any(|&b| m.exponent(b) > 0) {
                return Err(Error::Structural(format!(
                    "relation `{g}` has a lower coefficient that is a unit at the origin"
                )));
            }
        }
        if found.iter().any(|(v, _, _)| *v == y) {
            return Err(Error::Structural(format!(
                "two relations in tower variable {}",
                ring.var_names()[y]
            )));
        }
        found.push((y, n, g.clone()));
    }
    if found.len() != nonbase.len() {
        return Err(Error::Structural("every non-base variable needs exactly one monic relation".into()));
    }
    found.sort_by_key(|(v, _, _)| *v);
    let ys: Vec<usize> = found.iter().map(|(v, _, _)| *v).collect();
    let degrees: Vec<u32> = found.iter().map(|(_, n, _)| *n).collect();
    let names = ring.var_names();
    let base_names: Vec<&String> = base.iter().map(|&b| &names[b]).collect();
    let base_ring = PolyRing::new(ring.field(), &base_names, TermOrder::DegRevLex)?;
    let mut frame_names: Vec<&String> = ys.iter().map(|&y| &names[y]).collect();
    frame_names.extend(base_names.iter().copied());
    let frame = PolyRing::new(ring.field(), &frame_names, TermOrder::Elimination(ys.len()))?;
    let mut to_frame = vec![0usize; ring.nvars()];
    for (i, &y) in ys.iter().enumerate() {
        to_frame[y] = i;
    }
    for (i, &b) in base.iter().enumerate() {
        to_frame[b] = ys.len() + i;
    }
    let relations: Vec<Polynomial> = found.iter().map(|(_, _, g)| g.map_into(&frame, &to_frame)).collect();
    let frame_ideal = Ideal::new(&frame, relations)?;
    Ok(Tower {
        base: base.to_vec(),
        ys,
        degrees,
        base_ring,
        frame,
        to_frame,
        frame_ideal,
    })
}

/// Assemble `k[x, y]/(f_1(y_1), ..., f_r(y_r))` and check that the quotient
/// by the base variables is Gorenstein with socle `prod y_i^{n_i - 1}`.
pub fn build_tower(spec: &TowerSpec) -> Result<QuotientRing> {
    let base = &spec.base_ring;
    if spec.tower_vars.len() != spec.coefficients.len() {
        return Err(Error::InvalidSpec("one coefficient list per tower variable".into()));
    }
    for (i, coeffs) in spec.coefficients.iter().enumerate() {
        if coeffs.is_empty() {
            return Err(Error::InvalidSpec(format!("relation {} has degree zero", i + 1)));
        }
        for a in coeffs {
            a.check_ring(&base.zero())?;
            if !a.constant_term().is_zero() {
                return Err(Error::InvalidSpec(format!(
                    "coefficient `{a}` of relation {} does not vanish at the origin",
                    i + 1
                )));
            }
        }
    }
    let mut names: Vec<String> = base.var_names().to_vec();
    names.extend(spec.tower_vars.iter().cloned());
    let ring = PolyRing::new(base.field(), &names, TermOrder::DegRevLex)?;
    let d = base.nvars();
    let base_map: Vec<usize> = (0..d).collect();
    let mut relations = Vec::new();
    for (i, coeffs) in spec.coefficients.iter().enumerate() {
        let y = d + i;
        let n = coeffs.len() as u32;
        let mut f = ring.monomial(Monomial::var_power(ring.nvars(), y, n));
        for (j, a) in coeffs.iter().enumerate() {
            let power = ring.monomial(Monomial::var_power(ring.nvars(), y, n - 1 - j as u32));
            f = f.add(&a.map_into(&ring, &base_map).mul(&power));
        }
        relations.push(f);
    }
    let t = QuotientRing::new(Ideal::new(&ring, relations)?).as_tower(base.var_names())?;

    let closed = t.ideal().sum(&Ideal::of_variables(&ring, &base_map))?;
    let check = gorenstein_check(&closed, DEFAULT_MAX_PRECISION)?;
    let expected = {
        let mut exps = vec![0u32; ring.nvars()];
        for (i, coeffs) in spec.coefficients.iter().enumerate() {
            exps[d + i] = coeffs.len() as u32 - 1;
        }
        ring.monomial(Monomial::from_exponents(&exps))
    };
    if check.generator.as_ref() != Some(&expected) {
        return Err(Error::Structural(format!(
            "tower self-check failed: socle of T/(x) is not generated by {expected}"
        )));
    }
    Ok(t)
}
