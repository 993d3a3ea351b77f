use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector, one slot per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        Monomial(
            exps.iter()
                .map(|&e| u16::try_from(e).expect("exponent overflow"))
                .collect(),
        )
    }

    /// The monomial `x_var^exp` in `nvars` variables.
    pub fn var_power(nvars: usize, var: usize, exp: u32) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[var] = u16::try_from(exp).expect("exponent overflow");
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var] as u32
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|&e| e as u32)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the only variable occurring, if the monomial is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn permuted(&self, target_of: &[usize], nvars: usize) -> Monomial {
        let mut v: SmallVec<[u16; 8]> = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.0.iter().enumerate() {
            v[target_of[i]] = e;
        }
        Monomial(v)
    }

    /// All monomials of total degree exactly `deg` in `nvars` variables,
    /// listed in lexicographically descending exponent order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fill_degree(&mut cur, 0, deg, &mut out);
        out
    }
}

fn fill_degree(cur: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if cur.is_empty() {
        if remaining == 0 {
            out.push(Monomial::from_exponents(cur));
        }
        return;
    }
    if idx == cur.len() - 1 {
        cur[idx] = remaining;
        out.push(Monomial::from_exponents(cur));
        cur[idx] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        cur[idx] = e;
        fill_degree(cur, idx + 1, remaining - e, out);
    }
    cur[idx] = 0;
}

/// Monomial order.
///
/// `Elimination(b)` compares the first `b` variables by degrevlex and breaks
/// ties with degrevlex on the remaining ones; it eliminates exactly the
/// first block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    Lex,
    DegRevLex,
    Elimination(usize),
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.0.cmp(&b.0),
            TermOrder::DegRevLex => degrevlex(&a.0, &b.0),
            TermOrder::Elimination(block) => {
                let k = (*block).min(a.0.len());
                degrevlex(&a.0[..k], &b.0[..k]).then_with(|| degrevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }

    /// True when the order eliminates the first `count` variables.
    pub fn eliminates(&self, count: usize) -> bool {
        match self {
            TermOrder::Lex => true,
            TermOrder::DegRevLex => count == 0,
            TermOrder::Elimination(b) => count == 0 || *b == count,
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::DegRevLex => "degrevlex".into(),
            TermOrder::Elimination(b) => format!("elim({b})"),
        }
    }
}

fn degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_classic_ordering() {
        // x > y > z: x^2 > xy > y^2 > xz > yz > z^2
        let o = TermOrder::DegRevLex;
        let seq = [
            mono(&[2, 0, 0]),
            mono(&[1, 1, 0]),
            mono(&[0, 2, 0]),
            mono(&[1, 0, 1]),
            mono(&[0, 1, 1]),
            mono(&[0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater, "{:?} vs {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn elimination_prefers_first_block() {
        let o = TermOrder::Elimination(1);
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[0, 2, 0]), &mono(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 4).len(), 5);
        assert_eq!(Monomial::all_of_degree(1, 7), vec![mono(&[7])]);
    }

    fn order_strategy() -> impl Strategy<Value = TermOrder> {
        prop_oneof![
            Just(TermOrder::Lex),
            Just(TermOrder::DegRevLex),
            (0usize..=3).prop_map(TermOrder::Elimination),
        ]
    }

    fn mono_strategy() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 3).prop_map(|v| Monomial::from_exponents(&v))
    }

    proptest! {
        #[test]
        fn order_axioms(o in order_strategy(), a in mono_strategy(), b in mono_strategy(), w in mono_strategy()) {
            // totality: equal only for identical monomials
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            // multiplicativity
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&w), &b.mul(&w)));
            // 1 is minimal
            let one = Monomial::one(3);
            prop_assert_ne!(o.cmp(&a, &one), Ordering::Less);
        }
    }
}
