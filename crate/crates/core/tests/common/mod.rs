//! Brute-force oracle: linear algebra on the truncations k[x]/(I + m^N),
//! written against raw exponent vectors so it shares nothing with the
//! Gröbner code.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use socle_lab::{Coeff, Polynomial};

type Exps = Vec<u32>;

/// Coefficient arithmetic over Q or Z/p, all values kept as rationals.
#[derive(Clone, Copy)]
struct Arith(Option<u64>);

impl Arith {
    fn norm(&self, v: BigRational) -> BigRational {
        match self.0 {
            None => v,
            Some(p) => {
                let p = BigInt::from(p);
                let num = ((v.numer() % &p) + &p) % &p;
                let den = ((v.denom() % &p) + &p) % &p;
                let inv = den.modpow(&(&p - 2u32), &p);
                BigRational::from_integer((num * inv) % p)
            }
        }
    }

    fn coeff(&self, c: &Coeff) -> BigRational {
        match c {
            Coeff::Rat(r) => r.clone(),
            Coeff::Mod(m) => BigRational::from_integer(BigInt::from(*m)),
        }
    }
}

/// Rank of a list of sparse rows, in reduced echelon form.
struct Echelon {
    arith: Arith,
    rows: Vec<(usize, Vec<BigRational>)>,
    width: usize,
}

impl Echelon {
    fn new(arith: Arith, width: usize) -> Echelon {
        Echelon {
            arith,
            rows: Vec::new(),
            width,
        }
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let c = v[*pivot].clone();
                for j in 0..self.width {
                    if !row[j].is_zero() {
                        v[j] = self.arith.norm(&v[j] - &c * &row[j]);
                    }
                }
            }
        }
        v
    }

    /// Returns true when `v` was independent of the rows so far.
    fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = self.arith.norm(BigRational::one() / &v[pivot]);
        let v: Vec<BigRational> = v.iter().map(|c| self.arith.norm(c * &inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let c = row[pivot].clone();
                for j in 0..self.width {
                    row[j] = self.arith.norm(&row[j] - &c * &v[j]);
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Nullspace basis of the columns-as-vectors matrix `cols` (each column the
/// image of one basis vector).
fn nullspace(arith: Arith, cols: &[Vec<BigRational>], height: usize) -> Vec<Vec<BigRational>> {
    let n = cols.len();
    // row-reduce the augmented [A^T | I] and read off combinations hitting zero
    let mut ech = Echelon::new(arith, height + n);
    let mut kernel = Vec::new();
    for (i, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        v.resize(height + n, BigRational::zero());
        v[height + i] = BigRational::one();
        let r = ech.reduce(v.clone());
        if r[..height].iter().all(|c| c.is_zero()) {
            kernel.push(r[height..].to_vec());
        } else {
            ech.insert(v);
        }
    }
    kernel
}

/// The truncated polynomial space k[x]_{<n} with a monomial index.
pub struct Truncation {
    arith: Arith,
    nvars: usize,
    n: u32,
    monomials: Vec<Exps>,
    index: HashMap<Exps, usize>,
}

fn monomials_below(nvars: usize, n: u32) -> Vec<Exps> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..n.saturating_sub(used) {
                let mut f = e.clone();
                f.push(k);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

impl Truncation {
    /// `field_char` is 0 for Q.
    pub fn new(field_char: u64, nvars: usize, n: u32) -> Truncation {
        let monomials = monomials_below(nvars, n);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Truncation {
            arith: Arith((field_char != 0).then_some(field_char)),
            nvars,
            n,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Coordinates of `m·f` truncated below degree `n`.
    fn shifted(&self, f: &Polynomial, m: &[u32]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim()];
        for (mono, c) in f.terms() {
            let e: Exps = (0..self.nvars).map(|i| mono.exponent(i) + m[i]).collect();
            if let Some(&i) = self.index.get(&e) {
                v[i] = self.arith.norm(&v[i] + self.arith.coeff(c));
            }
        }
        v
    }

    fn ideal_span(&self, gens: &[Polynomial]) -> Echelon {
        let mut ech = Echelon::new(self.arith, self.dim());
        for g in gens {
            for m in &self.monomials {
                ech.insert(self.shifted(g, m));
            }
        }
        ech
    }

    /// dim k[x]/(gens + m^n).
    pub fn quotient_dim(&self, gens: &[Polynomial]) -> usize {
        self.dim() - self.ideal_span(gens).rank()
    }

    /// Image in k[x]_{<n} of `(0 :_A z)` where `A = k[x]/(gens + m^{n+slack})`,
    /// as a list of vectors. Elements killed by `z` only because of the
    /// truncation sit in high degree and vanish after projection, once
    /// `slack` is large enough.
    pub fn stable_annihilator(&self, gens: &[Polynomial], z: &Polynomial, slack: u32) -> Vec<Polynomial> {
        let big = Truncation {
            arith: self.arith,
            ..Truncation::new(0, self.nvars, self.n + slack)
        };
        let rel = big.ideal_span(gens);
        let cols: Vec<Vec<BigRational>> = big.monomials.iter().map(|m| rel.reduce(big.shifted(z, m))).collect();
        let ring = z.ring();
        nullspace(self.arith, &cols, big.dim())
            .into_iter()
            .map(|k| {
                let terms = big
                    .monomials
                    .iter()
                    .zip(k)
                    .filter(|(m, c)| !c.is_zero() && m.iter().sum::<u32>() < self.n)
                    .map(|(m, c)| ring.parse(&format!("({c})*{}", monomial_text(ring.var_names(), m))).unwrap())
                    .fold(ring.zero(), |a, b| a.add(&b));
                terms
            })
            .collect()
    }
}

fn monomial_text(names: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = names.iter().zip(e).map(|(v, k)| format!("{v}^{k}")).collect();
    parts.join("*")
}

/// Local length found by the oracle itself: the first `N` where the
/// truncated dimensions at `N` and `N + 1` agree.
pub fn oracle_local_length(field_char: u64, nvars: usize, gens: &[Polynomial], max_n: u32) -> Option<usize> {
    let mut prev = None;
    for n in 1..=max_n {
        let d = Truncation::new(field_char, nvars, n).quotient_dim(gens);
        if prev == Some(d) {
            return Some(d);
        }
        prev = Some(d);
    }
    None
}

/// `(ℓ(T/Q), ℓ(T/(Ann + Q)), ℓH₀, ℓH₁)` for `T = k[x]/I`, principal
/// `Q = (g)` and `z`, all on truncations at `n` with annihilators taken
/// stably.
pub fn oracle_koszul(
    field_char: u64,
    nvars: usize,
    i: &[Polynomial],
    g: &Polynomial,
    z: &Polynomial,
    n: u32,
) -> (usize, usize, usize, usize) {
    let tr = Truncation::new(field_char, nvars, n);
    let with = |extra: &[&Polynomial]| -> Vec<Polynomial> {
        i.iter().cloned().chain(extra.iter().map(|p| (*p).clone())).collect()
    };
    let t_q = tr.quotient_dim(&with(&[g]));
    let ann = tr.stable_annihilator(i, z, n);
    let mut ann_q = with(&[g]);
    ann_q.extend(ann);
    let t_ann_q = tr.quotient_dim(&ann_q);
    // M = T/zT; H₀ = M/gM, H₁ = (0 :_M g)
    let h0 = tr.quotient_dim(&with(&[z, g]));
    let ann_g = tr.stable_annihilator(&with(&[z]), g, n);
    let mut with_ann = with(&[z]);
    with_ann.extend(ann_g);
    let h1 = tr.quotient_dim(&with(&[z])) - tr.quotient_dim(&with_ann);
    (t_q, t_ann_q, h0, h1)
}
