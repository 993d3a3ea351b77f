use std::cmp::Ordering;

use crate::polynomial::{Coeff, FieldSpec, Monomial, Polynomial, Ring, TermOrder};

type Term = (Monomial, Coeff);

fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, e) in m.exponents().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

/// A reducer: monic polynomial plus a cached leading monomial and divisor mask.
pub(crate) struct Reducer {
    pub poly: Polynomial,
    pub lm: Monomial,
    mask: u64,
}

impl Reducer {
    pub fn new(poly: Polynomial) -> Reducer {
        let lm = poly.lead_monomial().expect("nonzero reducer").clone();
        let mask = divmask(&lm);
        Reducer { poly, lm, mask }
    }

    #[inline]
    fn divides(&self, m: &Monomial, mask: u64) -> bool {
        self.mask & !mask == 0 && self.lm.divides(m)
    }
}

/// `a - c * q * b_tail`, where `b_tail` is a polynomial without its leading term.
fn merge_sub(a: &[Term], c: &Coeff, q: &Monomial, b_tail: &[Term], field: FieldSpec, order: TermOrder) -> Vec<Term> {
    let negc = field.neg(c);
    let mut out = Vec::with_capacity(a.len() + b_tail.len());
    let mut i = 0;
    let mut j = 0;
    let mut pend: Option<Term> = None;
    loop {
        if pend.is_none() && j < b_tail.len() {
            pend = Some((b_tail[j].0.mul(q), field.mul(&negc, &b_tail[j].1)));
        }
        match (pend.as_ref(), a.get(i)) {
            (None, None) => break,
            (None, Some(t)) => {
                out.push(t.clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(pend.take().unwrap());
                j += 1;
            }
            (Some(p), Some(t)) => match order.cmp(&t.0, &p.0) {
                Ordering::Greater => {
                    out.push(t.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pend.take().unwrap());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(&t.1, &p.1);
                    if !s.is_zero() {
                        out.push((t.0.clone(), s));
                    }
                    pend = None;
                    i += 1;
                    j += 1;
                }
            },
        }
    }
    out
}

/// Reduce `p` by monic reducers. Terms of degree `>= truncate` are dropped
/// (they lie in `m^truncate`, which the caller guarantees is in the ideal).
/// With `full == false` only the leading term is reduced.
pub(crate) fn reduce(p: &Polynomial, reducers: &[&Reducer], truncate: Option<u32>, full: bool) -> Polynomial {
    let ring = p.ring().clone();
    let field = ring.field();
    let order = ring.order();
    let mut work: Vec<Term> = p.terms().to_vec();
    let mut k = 0;
    let mut rem: Vec<Term> = Vec::new();
    while k < work.len() {
        let (lm, lc) = &work[k];
        if truncate.is_some_and(|n| lm.degree() >= n) {
            k += 1;
            continue;
        }
        let mask = divmask(lm);
        // the shortest reducer keeps intermediate coefficients small
        match reducers.iter().filter(|r| r.divides(lm, mask)).min_by_key(|r| r.poly.terms().len()) {
            Some(r) => {
                let q = r.lm.quotient_of(lm).expect("divides");
                let c = lc.clone();
                work = merge_sub(&work[k + 1..], &c, &q, &r.poly.terms()[1..], field, order);
                k = 0;
            }
            None => {
                if !full {
                    rem.extend_from_slice(&work[k..]);
                    break;
                }
                rem.push(work[k].clone());
                k += 1;
            }
        }
    }
    if let Some(n) = truncate {
        rem.retain(|(m, _)| m.degree() < n);
    }
    ring.from_terms(rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn pair_cmp(order: TermOrder, a: &Pair, b: &Pair) -> Ordering {
    a.lcm
        .degree()
        .cmp(&b.lcm.degree())
        .then_with(|| order.cmp(&a.lcm, &b.lcm))
        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
}

struct State {
    ring: Ring,
    truncate: Option<u32>,
    polys: Vec<Reducer>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    fn is_trunc_monomial(&self, idx: usize) -> bool {
        match self.truncate {
            Some(n) => self.polys[idx].poly.is_monomial() && self.polys[idx].lm.degree() >= n,
            None => false,
        }
    }

    /// A pair of a truncation monomial with `p` has S-polynomial
    /// `(lcm / lm p) * tail(p)`, which is zero once every term reaches degree `N`.
    fn truncation_kills(&self, a: usize, b: usize) -> bool {
        let Some(n) = self.truncate else {
            return false;
        };
        let p = match (self.is_trunc_monomial(a), self.is_trunc_monomial(b)) {
            (true, false) => b,
            (false, true) => a,
            _ => return false,
        };
        let lcm = self.polys[a].lm.lcm(&self.polys[b].lm);
        let lm_deg = self.polys[p].lm.degree();
        match self.polys[p].poly.terms()[1..].iter().map(|(m, _)| m.degree()).min() {
            Some(e) => lcm.degree() - lm_deg + e >= n,
            None => true,
        }
    }

    fn reducers(&self) -> Vec<&Reducer> {
        self.active
            .iter()
            .filter(|&&i| !self.is_trunc_monomial(i))
            .map(|&i| &self.polys[i])
            .collect()
    }

    /// Gebauer–Möller update on insertion of a new basis element.
    fn insert(&mut self, h: Polynomial) {
        let h_idx = self.polys.len();
        self.polys.push(Reducer::new(h));
        let h_lm = self.polys[h_idx].lm.clone();
        let h_mono = self.polys[h_idx].poly.is_monomial();

        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            // two monomials never give a new element
            .filter(|&&g| !(h_mono && self.polys[g].poly.is_monomial()))
            .filter(|&&g| !self.truncation_kills(g, h_idx))
            .map(|&g| Pair {
                i: g,
                j: h_idx,
                lcm: self.polys[g].lm.lcm(&h_lm),
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = self.polys[p.i].lm.is_coprime(&h_lm);
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|p| !self.polys[p.i].lm.is_coprime(&h_lm))
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !h_lm.divides(&p.lcm) {
                return true;
            }
            let l1 = polys[p.i].lm.lcm(&h_lm);
            let l2 = polys[p.j].lm.lcm(&h_lm);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(fresh);
        let order = self.ring.order();
        // descending, so the smallest pair is popped first
        self.pairs.sort_by(|a, b| pair_cmp(order, b, a));

        self.active.retain(|&g| !h_lm.divides(&polys[g].lm));
        self.active.push(h_idx);
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let qf = f.lm.quotient_of(&p.lcm).unwrap();
        let qg = g.lm.quotient_of(&p.lcm).unwrap();
        // both monic: S = qf*f - qg*g, leading terms cancel
        let field = self.ring.field();
        let a: Vec<Term> = f.poly.terms()[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
        let terms = merge_sub(&a, &field.one(), &qg, &g.poly.terms()[1..], field, self.ring.order());
        self.ring.from_terms(terms)
    }
}

/// Reduced Gröbner basis of `(gens) + m^truncate` (where `m` is the ideal of
/// all variables), sorted by descending leading monomial.
pub(crate) fn reduced_basis(ring: &Ring, gens: &[Polynomial], truncate: Option<u32>) -> Vec<Polynomial> {
    let mut state = State {
        ring: ring.clone(),
        truncate,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    if let Some(n) = truncate {
        if n == 0 {
            return vec![ring.one()];
        }
        for m in Monomial::all_of_degree(ring.nvars(), n) {
            state.insert(ring.monomial(m));
        }
    }
    let mut inputs: Vec<Polynomial> = gens
        .iter()
        .map(|g| match truncate {
            Some(n) => g.truncate_degree(n),
            None => g.clone(),
        })
        .filter(|g| !g.is_zero())
        .collect();
    let order = ring.order();
    inputs.sort_by(|a, b| order.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    for g in inputs {
        let r = {
            let reds = state.reducers();
            reduce(&g, &reds, truncate, true)
        };
        if !r.is_zero() {
            if r.is_constant() {
                return vec![ring.one()];
            }
            state.insert(r.monic());
        }
    }

    while let Some(p) = state.pairs.pop() {
        let s = state.s_polynomial(&p);
        if s.is_zero() {
            continue;
        }
        let r = {
            let reds = state.reducers();
            reduce(&s, &reds, truncate, true)
        };
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![ring.one()];
        }
        state.insert(r.monic());
    }

    // inter-reduce the minimal basis
    let mut basis: Vec<Polynomial> = state.active.iter().map(|&i| state.polys[i].poly.clone()).collect();
    basis.sort_by(|a, b| order.cmp(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()));
    let mut out = Vec::with_capacity(basis.len());
    for (idx, g) in basis.iter().enumerate() {
        if truncate.is_some_and(|n| g.is_monomial() && g.degree().unwrap() >= n) {
            out.push(g.clone());
            continue;
        }
        let others: Vec<Reducer> = basis
            .iter()
            .enumerate()
            .filter(|&(k, h)| k != idx && !truncate.is_some_and(|n| h.is_monomial() && h.degree().unwrap() >= n))
            .map(|(_, h)| Reducer::new(h.clone()))
            .collect();
        let refs: Vec<&Reducer> = others.iter().collect();
        let lead = ring.term(g.lead_coeff().unwrap().clone(), g.lead_monomial().unwrap().clone());
        let tail = g.sub(&lead);
        let tail = reduce(&tail, &refs, truncate, true);
        out.push(lead.add(&tail).monic());
    }
    out
}

/// Normal form of `f` against a reduced basis.
pub(crate) fn normal_form(f: &Polynomial, basis: &[Polynomial], truncate: Option<u32>) -> Polynomial {
    let reducers: Vec<Reducer> = basis
        .iter()
        .filter(|g| !truncate.is_some_and(|n| g.is_monomial() && g.degree().unwrap() >= n))
        .map(|g| Reducer::new(g.clone()))
        .collect();
    let refs: Vec<&Reducer> = reducers.iter().collect();
    reduce(f, &refs, truncate, true)
}

/// Normal-form engine holding prebuilt reducers, for repeated queries.
pub(crate) struct NormalForm {
    reducers: Vec<Reducer>,
    truncate: Option<u32>,
}

impl NormalForm {
    pub fn new(basis: &[Polynomial], truncate: Option<u32>) -> NormalForm {
        let reducers = basis
            .iter()
            .filter(|g| !truncate.is_some_and(|n| g.is_monomial() && g.degree().unwrap() >= n))
            .map(|g| Reducer::new(g.clone()))
            .collect();
        NormalForm { reducers, truncate }
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let refs: Vec<&Reducer> = self.reducers.iter().collect();
        reduce(f, &refs, self.truncate, true)
    }
}

/// S-polynomial of two nonzero polynomials (not assumed monic).
pub(crate) fn s_poly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.field();
    let lf = f.lead_monomial().unwrap();
    let lg = g.lead_monomial().unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_monomial(&lf.quotient_of(&l).unwrap()).scale(&field.inv(f.lead_coeff().unwrap()).unwrap());
    let b = g.mul_monomial(&lg.quotient_of(&l).unwrap()).scale(&field.inv(g.lead_coeff().unwrap()).unwrap());
    a.sub(&b)
}
