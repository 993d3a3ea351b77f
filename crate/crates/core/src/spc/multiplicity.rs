use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::Matrix;
use crate::local::{is_local_unit, local_length, QuotientRing};
use crate::polynomial::{Coeff, FieldSpec, Polynomial};

use super::verdict::{koszul_delta, KoszulLengths};

/// Default number of Hilbert–Samuel sample points.
pub const DEFAULT_NMAX: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityReport {
    /// `ℓ(M/QⁿM)` for `n = 1..=n_max`.
    pub hilbert_samuel_lengths: Vec<usize>,
    /// Coefficients of the fitted polynomial in `n`, constant term first.
    pub fitted_coefficients: Vec<BigRational>,
    /// Degree of the fitted polynomial, i.e. `dim M`.
    pub dimension: usize,
    pub e: BigInt,
    /// `χ(Q; M) = ℓH₀ − ℓH₁`, reported when `Q` has `dim M` generators and
    /// higher Koszul homology vanishes.
    pub chi: Option<i64>,
    pub koszul: Option<KoszulLengths>,
    /// `e == χ`, when `χ` is available.
    pub serre_agrees: Option<bool>,
}

/// Minimal-degree polynomial through the tail of a length sequence.
/// Returns `(degree, leading finite difference)`.
fn fit_tail(values: &[usize]) -> Option<(usize, BigInt)> {
    let n = values.len();
    let tail_len = n.div_ceil(2) + 1;
    if tail_len > n {
        return None;
    }
    let mut diffs: Vec<BigInt> = values[n - tail_len..].iter().map(|&v| BigInt::from(v)).collect();
    for k in 0..tail_len {
        // diffs holds the k-th differences; the fit of degree k holds when
        // they are constant and at least two of them are compared
        if diffs.len() >= 2 && diffs.windows(2).all(|w| w[0] == w[1]) {
            return Some((k, diffs[0].clone()));
        }
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    None
}

fn interpolate(points: &[(i64, usize)], degree: usize) -> Vec<BigRational> {
    let f = FieldSpec::Rationals;
    let pts = &points[points.len() - degree - 1..];
    let rows: Vec<Vec<Coeff>> = pts
        .iter()
        .map(|(x, _)| {
            (0..=degree)
                .map(|j| Coeff::Rat(BigRational::from_integer(BigInt::from(*x).pow(j as u32))))
                .collect()
        })
        .collect();
    let m = Matrix::from_rows(f, rows, degree + 1);
    let b: Vec<Coeff> = pts.iter().map(|(_, y)| f.from_i64(*y as i64)).collect();
    m.solve(&b)
        .expect("Vandermonde system is regular")
        .into_iter()
        .map(|c| c.as_rational().cloned().expect("rational coefficient"))
        .collect()
}

/// Hilbert–Samuel multiplicity `e(Q, M)` of `M = T/(z)` (or `T`), read off
/// the lengths `ℓ(M/QⁿM)` by exact finite differences, with `χ` from the
/// colength formula alongside.
pub fn multiplicity(
    t: &QuotientRing,
    q: &Ideal,
    z: Option<&Polynomial>,
    n_max: u32,
    max_precision: u32,
) -> Result<MultiplicityReport> {
    let module_ideal = match z {
        Some(z) => t.extend(std::slice::from_ref(z)),
        None => t.ideal().clone(),
    };
    let zero = t.ring().zero();
    let zpoly = z.cloned().unwrap_or(zero);

    if is_local_unit(q) {
        let len = local_length(&module_ideal, max_precision)?.value;
        return Ok(MultiplicityReport {
            hilbert_samuel_lengths: vec![0; n_max as usize],
            fitted_coefficients: vec![BigRational::from_integer(BigInt::from(len))],
            dimension: 0,
            e: BigInt::from(len),
            chi: None,
            koszul: None,
            serre_agrees: None,
        });
    }

    let mut lengths = Vec::new();
    let mut power = Ideal::unit(t.ring());
    for _ in 1..=n_max {
        power = power.product(q)?;
        power = Ideal::new(t.ring(), power.groebner_basis().to_vec())?;
        lengths.push(local_length(&module_ideal.sum(&power)?, max_precision)?.value);
    }
    let (dimension, e) = fit_tail(&lengths).ok_or_else(|| {
        Error::InconclusiveFit(format!("lengths {lengths:?} have no polynomial tail; raise n_max"))
    })?;
    let points: Vec<(i64, usize)> = lengths.iter().enumerate().map(|(i, &v)| (i as i64 + 1, v)).collect();
    let fitted_coefficients = interpolate(&points, dimension);
    if dimension > 0 && !e.is_positive() {
        return Err(Error::InconclusiveFit(format!("non-positive leading difference {e}")));
    }

    let k = koszul_delta(t, q, &zpoly, max_precision)?;
    let gens = q.explicit_generators().into_iter().filter(|g| !g.is_zero()).count();
    // δ is the Euler characteristic only for a genuine system of parameters
    // whose higher Koszul homology vanishes
    let chi = (gens == dimension && (gens <= 1 || k.h1 == 0)).then_some(k.delta);
    let serre_agrees = chi.map(|c| BigInt::from(c) == e);
    Ok(MultiplicityReport {
        hilbert_samuel_lengths: lengths,
        fitted_coefficients,
        dimension,
        e,
        chi,
        koszul: Some(k),
        serre_agrees,
    })
}

/// One row of the Frobenius growth table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusRow {
    pub q: u64,
    pub h0: usize,
    pub h1: i64,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusTable {
    pub rows: Vec<FrobeniusRow>,
    /// Number of parameters `d`.
    pub d: usize,
    /// `δ(q) = q^d·δ(1)` on every row.
    pub scaling_holds: bool,
    pub delta_positive: bool,
    /// `max ℓHᵢ(q) / q^(d−i)` over `i ∈ {0, 1}` and all rows.
    pub empirical_c: BigRational,
    /// `ℓHᵢ(q) ≤ c·q^(d−i)` on every row.
    pub bound_holds: bool,
}

fn is_power_of(q: u64, p: u64) -> bool {
    if q == 0 || p < 2 {
        return false;
    }
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

fn rat_pow(q: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Koszul lengths for the Frobenius powers `Q^[q] = (g^q : g ∈ Q)`.
pub fn frobenius_growth(
    t: &QuotientRing,
    q_ideal: &Ideal,
    z: &Polynomial,
    qs: &[u64],
    max_precision: u32,
) -> Result<FrobeniusTable> {
    let p = t.ring().field().characteristic();
    for &q in qs {
        if !is_power_of(q, p as u64) {
            return Err(Error::InvalidQ { q, p });
        }
    }
    let gens: Vec<Polynomial> = q_ideal
        .explicit_generators()
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    let d = gens.len();
    let mut all: Vec<u64> = qs.to_vec();
    if !all.contains(&1) {
        all.insert(0, 1);
    }
    let mut rows = Vec::new();
    for &q in &all {
        let e = u32::try_from(q).map_err(|_| Error::InvalidQ { q, p })?;
        let powered = Ideal::new(t.ring(), gens.iter().map(|g| g.pow(e)).collect())?;
        let k = koszul_delta(t, &powered, z, max_precision)?;
        rows.push(FrobeniusRow {
            q,
            h0: k.h0,
            h1: k.h1,
            delta: k.delta,
        });
    }
    let base = rows.iter().find(|r| r.q == 1).map(|r| r.delta).unwrap_or(0);
    let scaling_holds = rows
        .iter()
        .all(|r| BigInt::from(r.delta) == BigInt::from(base) * BigInt::from(r.q).pow(d as u32));
    let delta_positive = rows.iter().all(|r| r.delta > 0);
    let mut c = BigRational::zero();
    for r in &rows {
        for (i, h) in [(0i64, r.h0 as i64), (1, r.h1)] {
            let v = BigRational::from_integer(BigInt::from(h)) / rat_pow(r.q, d as i64 - i);
            if v > c {
                c = v;
            }
        }
    }
    let bound_holds = rows.iter().all(|r| {
        [(0i64, r.h0 as i64), (1, r.h1)]
            .iter()
            .all(|&(i, h)| BigRational::from_integer(BigInt::from(h)) <= &c * rat_pow(r.q, d as i64 - i))
    });
    let rows = rows.into_iter().filter(|r| qs.contains(&r.q)).collect();
    Ok(FrobeniusTable {
        rows,
        d,
        scaling_holds,
        delta_positive,
        empirical_c: c,
        bound_holds,
    })
}
