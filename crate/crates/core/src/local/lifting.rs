use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polynomial::{Coeff, FieldSpec, Monomial, Polynomial, Ring};

use super::QuotientRing;

/// A polynomial in one distinguished variable `y` whose coefficients are
/// polynomials in the remaining (base) variables, reduced modulo `m^prec`
/// where `m` is generated by the base variables.
#[derive(Clone)]
struct Upoly {
    coeffs: Vec<Polynomial>,
}

struct Frame {
    ring: Ring,
    y: usize,
    base: Vec<usize>,
}

impl Frame {
    fn split(&self, f: &Polynomial) -> Upoly {
        let mut coeffs = vec![self.ring.zero(); f.degree_in(self.y) as usize + 1];
        for (m, c) in f.terms() {
            let e = m.exponent(self.y) as usize;
            let mut exps: Vec<u32> = m.exponents().collect();
            exps[self.y] = 0;
            coeffs[e] = coeffs[e].add(&self.ring.term(c.clone(), Monomial::from_exponents(&exps)));
        }
        self.trim(Upoly { coeffs })
    }

    fn join(&self, u: &Upoly) -> Polynomial {
        let mut acc = self.ring.zero();
        for (e, c) in u.coeffs.iter().enumerate() {
            let ye = self.ring.monomial(Monomial::var_power(self.ring.nvars(), self.y, e as u32));
            acc = acc.add(&c.mul(&ye));
        }
        acc
    }

    fn trim(&self, mut u: Upoly) -> Upoly {
        while u.coeffs.last().is_some_and(|c| c.is_zero()) {
            u.coeffs.pop();
        }
        u
    }

    fn truncate(&self, u: &Upoly, prec: u32) -> Upoly {
        self.trim(Upoly {
            coeffs: u.coeffs.iter().map(|c| c.truncate_in(&self.base, prec)).collect(),
        })
    }

    fn add(&self, a: &Upoly, b: &Upoly) -> Upoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.ring.zero();
        self.trim(Upoly {
            coeffs: (0..n)
                .map(|i| a.coeffs.get(i).unwrap_or(&zero).add(b.coeffs.get(i).unwrap_or(&zero)))
                .collect(),
        })
    }

    fn sub(&self, a: &Upoly, b: &Upoly) -> Upoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.ring.zero();
        self.trim(Upoly {
            coeffs: (0..n)
                .map(|i| a.coeffs.get(i).unwrap_or(&zero).sub(b.coeffs.get(i).unwrap_or(&zero)))
                .collect(),
        })
    }

    fn mul(&self, a: &Upoly, b: &Upoly, prec: u32) -> Upoly {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return Upoly { coeffs: Vec::new() };
        }
        let mut coeffs = vec![self.ring.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let p = x.mul(y).truncate_in(&self.base, prec);
                coeffs[i + j] = coeffs[i + j].add(&p);
            }
        }
        self.trim(Upoly { coeffs })
    }

    /// Division by a divisor that is monic in `y`.
    fn divrem(&self, a: &Upoly, d: &Upoly, prec: u32) -> (Upoly, Upoly) {
        let dn = d.coeffs.len() - 1;
        debug_assert!(d.coeffs[dn].is_one());
        let mut r = self.truncate(a, prec);
        if r.coeffs.len() <= dn {
            return (Upoly { coeffs: Vec::new() }, r);
        }
        let mut q = vec![self.ring.zero(); r.coeffs.len() - dn];
        while r.coeffs.len() > dn {
            let k = r.coeffs.len() - 1 - dn;
            let c = r.coeffs.last().unwrap().clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let p = c.mul(dc).truncate_in(&self.base, prec);
                r.coeffs[k + i] = r.coeffs[k + i].sub(&p);
            }
            q[k] = c;
            r = self.trim(r);
        }
        (self.trim(Upoly { coeffs: q }), r)
    }

    fn constant(&self, c: Coeff) -> Upoly {
        self.trim(Upoly {
            coeffs: vec![self.ring.constant(c)],
        })
    }

    /// Field-valued coefficients of a residue polynomial (base variables set to zero).
    fn residue(&self, u: &Upoly) -> Vec<Coeff> {
        let mut v: Vec<Coeff> = u.coeffs.iter().map(|c| c.constant_term()).collect();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn from_field(&self, v: &[Coeff]) -> Upoly {
        self.trim(Upoly {
            coeffs: v.iter().map(|c| self.ring.constant(c.clone())).collect(),
        })
    }
}

fn kp_trim(mut v: Vec<Coeff>) -> Vec<Coeff> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn kp_sub(f: FieldSpec, a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let n = a.len().max(b.len());
    let z = f.zero();
    kp_trim(
        (0..n)
            .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect(),
    )
}

fn kp_mul(f: FieldSpec, a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    kp_trim(out)
}

fn kp_divrem(f: FieldSpec, a: &[Coeff], d: &[Coeff]) -> (Vec<Coeff>, Vec<Coeff>) {
    let mut r = a.to_vec();
    let dn = d.len() - 1;
    let inv = f.inv(&d[dn]).unwrap();
    let mut q = vec![f.zero(); a.len().saturating_sub(dn).max(1)];
    while r.len() > dn && !r.is_empty() {
        let k = r.len() - 1 - dn;
        let c = f.mul(r.last().unwrap(), &inv);
        for (i, dc) in d.iter().enumerate() {
            r[k + i] = f.sub(&r[k + i], &f.mul(&c, dc));
        }
        q[k] = c;
        r = kp_trim(r);
    }
    (kp_trim(q), r)
}

/// `(s, t)` with `s a + t b = 1` in `k[y]`, or `None` if `gcd(a, b) != 1`.
fn bezout(f: FieldSpec, a: &[Coeff], b: &[Coeff]) -> Option<(Vec<Coeff>, Vec<Coeff>)> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = kp_divrem(f, &r0, &r1);
        let s2 = kp_sub(f, &s0, &kp_mul(f, &q, &s1));
        let t2 = kp_sub(f, &t0, &kp_mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = f.inv(&r0[0]).unwrap();
    let scale = |v: Vec<Coeff>| v.into_iter().map(|c| f.mul(&c, &inv)).collect::<Vec<_>>();
    Some((scale(s0), scale(t0)))
}

fn is_monic(u: &Upoly) -> bool {
    u.coeffs.last().is_some_and(|c| c.is_one())
}

/// Lift `F ≡ g h (mod m)` to `F ≡ G H (mod m^prec)`, doubling the precision
/// at each step and updating the Bezout cofactors alongside.
fn lift_pair(fr: &Frame, f: &Upoly, g: &Upoly, h: &Upoly, prec: u32) -> Result<(Upoly, Upoly)> {
    let field = fr.ring.field();
    let (s0, t0) = bezout(field, &fr.residue(g), &fr.residue(h))
        .ok_or_else(|| Error::HenselObstruction("residue factors are not coprime".into()))?;
    let (mut g, mut h) = (g.clone(), h.clone());
    let (mut s, mut t) = (fr.from_field(&s0), fr.from_field(&t0));
    let mut k = 1u32;
    while k < prec {
        let p = (2 * k).min(prec);
        let e = fr.sub(&fr.truncate(f, p), &fr.mul(&g, &h, p));
        let (q, r) = fr.divrem(&fr.mul(&s, &e, p), &h, p);
        let g_new = fr.truncate(&fr.add(&fr.add(&g, &fr.mul(&t, &e, p)), &fr.mul(&q, &g, p)), p);
        let h_new = fr.truncate(&fr.add(&h, &r), p);
        let one = fr.constant(field.one());
        let b = fr.sub(&fr.add(&fr.mul(&s, &g_new, p), &fr.mul(&t, &h_new, p)), &one);
        let (c, d) = fr.divrem(&fr.mul(&s, &b, p), &h_new, p);
        s = fr.truncate(&fr.sub(&s, &d), p);
        t = fr.truncate(&fr.sub(&fr.sub(&t, &fr.mul(&t, &b, p)), &fr.mul(&c, &g_new, p)), p);
        g = g_new;
        h = h_new;
        k = p;
    }
    if !is_monic(&g) || !is_monic(&h) {
        return Err(Error::HenselObstruction("lifted factors lost monicity".into()));
    }
    Ok((g, h))
}

/// Lift a coprime factorization of `F mod m` to monic factors of `F` modulo
/// `m^precision`, where `F` is monic in the variable `y` and `m` is the
/// ideal of all other variables.
pub fn hensel_lift_factors(
    f: &Polynomial,
    y: usize,
    residue_factors: &[Polynomial],
    precision: u32,
) -> Result<Vec<Polynomial>> {
    let ring = f.ring().clone();
    if y >= ring.nvars() {
        return Err(Error::Structural(format!("variable index {y} out of range")));
    }
    for g in residue_factors {
        f.check_ring(g)?;
    }
    if residue_factors.is_empty() {
        return Err(Error::DegenerateInput("no residue factors given".into()));
    }
    let fr = Frame {
        ring: ring.clone(),
        y,
        base: (0..ring.nvars()).filter(|&v| v != y).collect(),
    };
    let fu = fr.split(f);
    if !is_monic(&fu) {
        return Err(Error::DegenerateInput(format!("`{f}` is not monic in {}", ring.var_names()[y])));
    }
    let mut residues = Vec::new();
    for g in residue_factors {
        let gu = fr.truncate(&fr.split(g), 1);
        if !is_monic(&gu) {
            return Err(Error::DegenerateInput(format!("residue factor `{g}` is not monic")));
        }
        residues.push(gu);
    }
    let prod = residues
        .iter()
        .fold(fr.constant(ring.field().one()), |acc, g| fr.mul(&acc, g, 1));
    if fr.join(&prod) != fr.join(&fr.truncate(&fu, 1)) {
        return Err(Error::DegenerateInput("residue factors do not multiply to F modulo m".into()));
    }
    let prec = precision.max(1);
    let mut out = Vec::new();
    let mut target = fr.truncate(&fu, prec);
    for i in 0..residues.len() {
        if i + 1 == residues.len() {
            out.push(fr.join(&target));
            break;
        }
        let rest = residues[i + 1..]
            .iter()
            .fold(fr.constant(ring.field().one()), |acc, g| fr.mul(&acc, g, 1));
        let (g, h) = lift_pair(&fr, &target, &residues[i], &rest, prec)?;
        out.push(fr.join(&g));
        target = h;
    }
    Ok(out)
}

/// Lift an idempotent of `T/m_R T` to `E` with `E^2 ≡ E (mod I + m_R^N)`
/// by the iteration `E <- 3E^2 - 2E^3`. `m_R` is generated by the
/// designated base variables, or by all variables when none are designated.
pub fn lift_idempotent(t: &QuotientRing, e0: &Polynomial, precision: u32) -> Result<Polynomial> {
    let ring = t.ring().clone();
    e0.check_ring(&ring.zero())?;
    let base: Vec<usize> = match t.base_vars() {
        Some(b) => b.to_vec(),
        None => (0..ring.nvars()).collect(),
    };
    let n = ring.nvars();
    let mr = Ideal::of_variables(&ring, &base);
    let residue_ideal = t.ideal().sum(&mr)?;
    let defect = |e: &Polynomial| e.mul(e).sub(e);
    if !residue_ideal.contains(&defect(e0)) {
        return Err(Error::DegenerateInput(format!("`{e0}` is not idempotent modulo m")));
    }
    let prec = precision.max(1);
    let mut gens = t.ideal().explicit_generators();
    for m in Monomial::all_of_degree(base.len(), prec) {
        let exps: Vec<u32> = m.exponents().collect();
        let mut full = vec![0u32; n];
        for (i, &b) in base.iter().enumerate() {
            full[b] = exps[i];
        }
        gens.push(ring.monomial(Monomial::from_exponents(&full)));
    }
    let target = Ideal::new(&ring, gens)?;
    let three = ring.from_i64(3);
    let two = ring.from_i64(2);
    let mut e = target.normal_form(e0);
    let max_steps = 2 + (32 - prec.leading_zeros());
    for _ in 0..=max_steps {
        // sums of normal forms are normal forms, so the defect test is a zero test
        let e2 = target.normal_form(&e.mul(&e));
        if e2.sub(&e).is_zero() {
            return Ok(e);
        }
        let e3 = target.normal_form(&e2.mul(&e));
        e = three.mul(&e2).sub(&two.mul(&e3));
    }
    Err(Error::LiftingFailure(format!(
        "iteration did not reach precision {prec} after {max_steps} steps"
    )))
}
