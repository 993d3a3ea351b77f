use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::expr;
use super::field::{Coeff, FieldSpec};
use super::monomial::{Monomial, TermOrder};

/// Ambient polynomial ring `k[x_1..x_n]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: FieldSpec,
    vars: Vec<String>,
    order: TermOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: FieldSpec, vars: &[S], order: TermOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::Structural(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::NameCollision(v.clone()));
            }
        }
        if let TermOrder::Elimination(b) = order {
            if b > vars.len() {
                return Err(Error::Structural(format!(
                    "elimination block {b} exceeds {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: TermOrder) -> Result<Ring> {
        PolyRing::new(self.field, &self.vars, order)
    }

    pub fn zero(self: &Ring) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Ring) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Ring, c: Coeff) -> Polynomial {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn from_i64(self: &Ring, v: i64) -> Polynomial {
        self.constant(self.field.from_i64(v))
    }

    pub fn term(self: &Ring, c: Coeff, m: Monomial) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn monomial(self: &Ring, m: Monomial) -> Polynomial {
        self.term(self.field.one(), m)
    }

    pub fn variable(self: &Ring, index: usize) -> Polynomial {
        self.monomial(Monomial::var_power(self.nvars(), index, 1))
    }

    pub fn var(self: &Ring, name: &str) -> Result<Polynomial> {
        self.var_index(name)
            .map(|i| self.variable(i))
            .ok_or_else(|| Error::Structural(format!("unknown variable `{name}`")))
    }

    pub fn variables(self: &Ring) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.variable(i)).collect()
    }

    /// Parse a polynomial expression over this ring, e.g. `"x^2*y - 3*x + 1/2"`.
    pub fn parse(self: &Ring, text: &str) -> Result<Polynomial> {
        let e = expr::parse_expr(text)?;
        e.evaluate(self)
    }

    /// Build a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(self: &Ring, terms: Vec<(Monomial, Coeff)>) -> Polynomial {
        Polynomial::normalize(self.clone(), terms)
    }

    pub(crate) fn same_as(&self, other: &PolyRing) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exact multivariate polynomial. Terms are kept sorted in descending order
/// under the ring's monomial order and never carry zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Binary ring operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic: fails with a ring-mismatch error when the operands
/// live in different rings.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    a.check_ring(b)?;
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

impl Polynomial {
    fn normalize(ring: Ring, mut terms: Vec<(Monomial, Coeff)>) -> Polynomial {
        let order = ring.order;
        let field = ring.field;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        Polynomial { ring, terms: out }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{}[{}] vs {}[{}]",
                self.ring.field,
                self.ring.vars.join(","),
                other.ring.field,
                other.ring.vars.join(",")
            )))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Largest exponent of `var` occurring.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    /// Smallest total degree of a term (the order of vanishing at the origin).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        let order = self.ring.order;
        self.terms
            .binary_search_by(|(t, _)| order.cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.ring.field.zero())
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, None)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let minus_one = self.ring.field.neg(&self.ring.field.one());
        self.merge(other, Some(&minus_one))
    }

    fn merge(&self, other: &Polynomial, scale_other: Option<&Coeff>) -> Polynomial {
        debug_assert!(self.ring.same_as(&other.ring), "ring mismatch");
        let field = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |c: &Coeff| match scale_other {
            Some(s) => field.mul(s, c),
            None => c.clone(),
        };
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((other.terms[j].0.clone(), scaled(&other.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&self.terms[i].1, &scaled(&other.terms[j].1));
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), scaled(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// `self - c * m * g`, the elementary reduction step.
    pub(crate) fn sub_scaled_shift(&self, c: &Coeff, m: &Monomial, g: &Polynomial) -> Polynomial {
        let field = self.ring.field;
        let order = self.ring.order;
        let negc = field.neg(c);
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<(Monomial, Coeff)> = None;
        while i < self.terms.len() || j < g.terms.len() {
            if pending.is_none() && j < g.terms.len() {
                let (gm, gc) = &g.terms[j];
                pending = Some((gm.mul(m), field.mul(&negc, gc)));
            }
            match (&pending, self.terms.get(i)) {
                (Some((pm, pc)), Some((sm, sc))) => match order.cmp(sm, pm) {
                    Ordering::Greater => {
                        out.push((sm.clone(), sc.clone()));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = field.add(sc, pc);
                        if !s.is_zero() {
                            out.push((sm.clone(), s));
                        }
                        pending = None;
                        i += 1;
                        j += 1;
                    }
                },
                (Some(_), None) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                }
                (None, Some(t)) => {
                    out.push(t.clone());
                    i += 1;
                }
                (None, None) => break,
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        let field = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), field.mul(c, d))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.ring.same_as(&other.ring), "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let field = self.ring.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.mul(b), field.mul(ca, cb)));
            }
        }
        Polynomial::normalize(self.ring.clone(), terms)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => {
                let inv = self.ring.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Drop every term of total degree `>= n` (reduction modulo `m^n`).
    pub fn truncate_degree(&self, n: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() < n).cloned().collect(),
        }
    }

    /// Drop every term whose degree in the given variables is `>= n`.
    pub fn truncate_in(&self, vars: &[usize], n: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().map(|&v| m.exponent(v)).sum::<u32>() < n)
                .cloned()
                .collect(),
        }
    }

    /// Substitute `value` for every occurrence of each listed variable.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        let ring = &self.ring;
        let mut acc = ring.zero();
        let maxdeg = self.degree_in(var);
        let mut powers = vec![ring.one()];
        for k in 1..=maxdeg {
            let next = powers[(k - 1) as usize].mul(value);
            powers.push(next);
        }
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let mut rest: Vec<u32> = m.exponents().collect();
            rest[var] = 0;
            let t = ring.term(c.clone(), Monomial::from_exponents(&rest));
            acc = acc.add(&t.mul(&powers[e as usize]));
        }
        acc
    }

    /// Re-embed into `target`, sending variable `i` to variable `var_map[i]`.
    pub fn map_into(&self, target: &Ring, var_map: &[usize]) -> Polynomial {
        assert_eq!(var_map.len(), self.ring.nvars());
        assert_eq!(target.field, self.ring.field);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.permuted(var_map, target.nvars()), c.clone()))
            .collect();
        Polynomial::normalize(target.clone(), terms)
    }

    /// Re-embed into a ring carrying the same variables in the same positions.
    pub fn with_ring(&self, target: &Ring) -> Polynomial {
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        self.map_into(target, &map)
    }

    /// Drop the first `count` variables, which must not occur, landing in
    /// `target` (the ring on the remaining variables).
    pub(crate) fn drop_leading_vars(&self, count: usize, target: &Ring) -> Polynomial {
        assert_eq!(self.ring.nvars(), count + target.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert!((0..count).all(|i| m.exponent(i) == 0));
                let rest: Vec<u32> = m.exponents().skip(count).collect();
                (Monomial::from_exponents(&rest), c.clone())
            })
            .collect();
        Polynomial::normalize(target.clone(), terms)
    }

    /// Multivariate division: `self = sum q_i d_i + r` using, at each step,
    /// the first divisor (in list order) whose leading monomial divides the
    /// current leading term.
    pub fn div_rem(&self, divisors: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
        for d in divisors {
            self.check_ring(d)?;
            if d.is_zero() {
                return Err(Error::DegenerateInput("division by the zero polynomial".into()));
            }
        }
        let field = self.ring.field;
        let mut quotients: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); divisors.len()];
        let mut rem: Vec<(Monomial, Coeff)> = Vec::new();
        let mut p = self.clone();
        while let Some((lm, lc)) = p.terms.first().cloned() {
            let hit = divisors.iter().enumerate().find_map(|(k, d)| {
                d.lead_monomial().unwrap().quotient_of(&lm).map(|q| (k, q))
            });
            match hit {
                Some((k, q)) => {
                    let c = field.div(&lc, divisors[k].lead_coeff().unwrap()).unwrap();
                    p = p.sub_scaled_shift(&c, &q, &divisors[k]);
                    quotients[k].push((q, c));
                }
                None => {
                    rem.push(p.terms.remove(0));
                }
            }
        }
        let qs = quotients
            .into_iter()
            .map(|t| Polynomial::normalize(self.ring.clone(), t))
            .collect();
        Ok((
            qs,
            Polynomial {
                ring: self.ring.clone(),
                terms: rem,
            },
        ))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(std::slice::from_ref(d)).ok()?;
        if r.is_zero() {
            q.into_iter().next()
        } else {
            None
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { field.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(m, &self.ring.vars);
            match (abs.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, e) in m.exponents().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
