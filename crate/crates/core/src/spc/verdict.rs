use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::Matrix;
use crate::local::{locally_contains, LocalQuotient, QuotientRing};
use crate::polynomial::{Monomial, Polynomial};

/// `Ann_T(z)` as the colon ideal `(I : z)` in the ambient ring.
#[derive(Debug, Clone)]
pub struct Annihilator {
    pub ideal: Ideal,
    /// Set when `z ≡ 0` in `T`, in which case the annihilator is `(1)`.
    pub degenerate: bool,
}

pub fn annihilator(t: &QuotientRing, z: &Polynomial) -> Result<Annihilator> {
    z.check_ring(&t.ring().zero())?;
    let z = t.normal_form(z);
    if z.is_zero() {
        return Ok(Annihilator {
            ideal: Ideal::unit(t.ring()),
            degenerate: true,
        });
    }
    Ok(Annihilator {
        ideal: t.ideal().colon(&z)?,
        degenerate: false,
    })
}

/// Lengths of the Koszul homology of the parameters on `T/(z)`, obtained
/// from colengths alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KoszulLengths {
    pub h0: usize,
    pub h1: i64,
    pub delta: i64,
    /// `ℓ(T/Q)`
    pub length_t_q: usize,
    /// `ℓ(T/(Ann + Q))`
    pub length_t_ann_q: usize,
}

/// Outcome of the three socle/parameter conditions on one instance.
#[derive(Debug, Clone)]
pub struct SpcReport {
    /// `u·z` lies in `Q·(z)` locally.
    pub cond_socle_membership: bool,
    /// `Ann_T(z)` is not contained in `Q` locally.
    pub cond_annihilator: bool,
    /// `δ > 0`.
    pub cond_delta: bool,
    pub lengths: KoszulLengths,
    pub agreement: bool,
    /// `ℓH₀` recomputed as the corank of multiplication by `z` on the
    /// Artinian ring `T/Q`; it must equal `lengths.h0`.
    pub h0_by_rank: usize,
    pub zero_divisor: bool,
    pub degenerate: bool,
    pub socle_lift: Polynomial,
    pub annihilator: Ideal,
    /// A generator of `Ann_T(z)` outside `Q` locally, when one exists.
    pub annihilator_witness: Option<Polynomial>,
    /// Stabilized m-adic precision of `T/Q`.
    pub precision: u32,
}

impl SpcReport {
    /// `δ = ℓ(T/Q) − ℓ(T/(Ann+Q)) = ℓH₀ − ℓH₁` with `ℓH₁ ≥ 0`, and the two
    /// computations of `ℓH₀` coincide.
    pub fn length_identity_holds(&self) -> bool {
        let l = &self.lengths;
        l.h1 >= 0
            && l.delta == l.length_t_q as i64 - l.length_t_ann_q as i64
            && l.delta == l.h0 as i64 - l.h1
            && l.h0 == self.h0_by_rank
    }
}

struct Prepared {
    tq: LocalQuotient,
    ann: Annihilator,
    z: Polynomial,
    lengths: KoszulLengths,
}

fn prepare(t: &QuotientRing, q: &Ideal, z: &Polynomial, max_precision: u32) -> Result<Prepared> {
    q.ring().zero().check_ring(&t.ring().zero())?;
    let iq = t.ideal().sum(q)?;
    let tq = LocalQuotient::new(&iq, max_precision)?;
    let ann = annihilator(t, z)?;
    let z = t.normal_form(z);
    let length_t_ann_q = if ann.degenerate {
        0
    } else {
        LocalQuotient::new(&ann.ideal.sum(q)?, max_precision)?.length()
    };
    let h0 = LocalQuotient::new(&iq.with_generators(std::slice::from_ref(&z)), max_precision)?.length();
    let delta = tq.length() as i64 - length_t_ann_q as i64;
    Ok(Prepared {
        lengths: KoszulLengths {
            h0,
            h1: h0 as i64 - delta,
            delta,
            length_t_q: tq.length(),
            length_t_ann_q,
        },
        tq,
        ann,
        z,
    })
}

/// `(ℓH₀, ℓH₁, δ)` for the parameters `Q` on `T/(z)`.
pub fn koszul_delta(t: &QuotientRing, q: &Ideal, z: &Polynomial, max_precision: u32) -> Result<KoszulLengths> {
    Ok(prepare(t, q, z, max_precision)?.lengths)
}

/// Corank of multiplication by `z` on the Artinian quotient.
fn corank_of_multiplication(tq: &LocalQuotient, z: &Polynomial) -> usize {
    let basis = tq.standard_monomials();
    let l = basis.len();
    if l == 0 {
        return 0;
    }
    let ring = tq.ideal().ring().clone();
    let index: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::zeros(ring.field(), l, l);
    for (col, b) in basis.iter().enumerate() {
        let img = tq.normal_form(&z.mul(&ring.monomial(b.clone())));
        for (m, c) in img.terms() {
            mat.set(index[m], col, c.clone());
        }
    }
    l - mat.rank()
}

/// Evaluate the three conditions independently: local membership of
/// `u·z` in `I + Q·(z)`, per-generator non-membership of `Ann_T(z)` in
/// `I + Q`, and the sign of `δ`.
pub fn spc_verdict(
    t: &QuotientRing,
    q: &Ideal,
    z: &Polynomial,
    u: Option<&Polynomial>,
    max_precision: u32,
) -> Result<SpcReport> {
    let p = prepare(t, q, z, max_precision)?;
    let ring = t.ring();

    let socle_lift = match u {
        Some(u) => {
            u.check_ring(&ring.zero())?;
            let in_socle = !p.tq.contains(u) && ring.variables().iter().all(|x| p.tq.contains(&x.mul(u)));
            if !in_socle {
                return Err(Error::InvalidWitness(format!("`{u}` does not lift a socle element of T/Q")));
            }
            u.clone()
        }
        None => {
            let s = p.tq.socle();
            if s.dimension != 1 {
                return Err(Error::GorensteinRequired {
                    socle_dim: s.dimension,
                });
            }
            s.basis[0].clone()
        }
    };

    // (1) u·z in I + Q·(z), locally
    let qz: Vec<Polynomial> = q.explicit_generators().iter().map(|g| g.mul(&p.z)).collect();
    let target = t.ideal().with_generators(&qz);
    let cond_socle_membership = locally_contains(&target, &socle_lift.mul(&p.z))?;

    // (2) some generator of Ann outside I + Q, locally
    let annihilator_witness = p
        .ann
        .ideal
        .groebner_basis()
        .iter()
        .find(|g| !p.tq.contains(g))
        .cloned();
    let cond_annihilator = annihilator_witness.is_some();

    // (3) δ > 0
    let cond_delta = p.lengths.delta > 0;

    let zero_divisor = if p.ann.degenerate {
        true
    } else {
        let mut zd = false;
        for g in p.ann.ideal.groebner_basis() {
            if !locally_contains(t.ideal(), g)? {
                zd = true;
                break;
            }
        }
        zd
    };

    Ok(SpcReport {
        cond_socle_membership,
        cond_annihilator,
        cond_delta,
        agreement: cond_socle_membership == cond_annihilator && cond_annihilator == cond_delta,
        h0_by_rank: corank_of_multiplication(&p.tq, &p.z),
        lengths: p.lengths,
        zero_divisor,
        degenerate: p.ann.degenerate,
        socle_lift,
        annihilator: p.ann.ideal,
        annihilator_witness,
        precision: p.tq.precision(),
    })
}
