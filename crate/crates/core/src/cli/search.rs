//! Seeded random search over hypersurface and tower instances.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::Matrix;
use crate::local::{build_tower, local_length, QuotientRing, TowerSpec};
use crate::polynomial::{Coeff, FieldSpec, Monomial, PolyRing, Polynomial, Ring, TermOrder};
use crate::spc;

use super::report::{ReportDocument, TaskEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchTarget {
    /// Three-way verdicts on hypersurfaces and towers.
    Spc,
    /// Splitting against the annihilator condition on towers, plus retractions.
    Split,
}

impl SearchTarget {
    pub fn name(&self) -> &'static str {
        match self {
            SearchTarget::Spc => "spc",
            SearchTarget::Split => "split",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub count: usize,
    pub field: FieldSpec,
    /// Total number of variables.
    pub vars: usize,
    /// Degree bound for the defining relations.
    pub deg: u32,
    pub target: SearchTarget,
    pub max_precision: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            count: 50,
            field: FieldSpec::Prime(5),
            vars: 2,
            deg: 4,
            target: SearchTarget::Spc,
            // generated lengths are bounded by the degree, so a small cap
            // only rejects degenerate parameter choices faster
            max_precision: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Hypersurface,
    Tower,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Hypersurface => "hypersurface",
            Family::Tower => "tower",
        }
    }
}

/// One generated instance `(T, Q, z)`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub family: Family,
    pub t: QuotientRing,
    pub q: Ideal,
    pub z: Polynomial,
    /// For hypersurfaces, `f = ∏ f_i^{c_i}` with `z = f_j`.
    pub factors: Vec<(Polynomial, u32)>,
}

impl Instance {
    pub fn inputs(&self) -> BTreeMap<String, Json> {
        let ring = self.t.ring();
        let mut m = BTreeMap::new();
        m.insert("family".into(), json!(self.family.name()));
        m.insert("ring".into(), json!(format!("{}[{}]", ring.field(), ring.var_names().join(", "))));
        m.insert("relations".into(), strs(self.t.ideal().generators()));
        m.insert("Q".into(), strs(self.q.generators()));
        m.insert("z".into(), json!(self.z.to_string()));
        if let Some(b) = self.t.base_vars() {
            let names: Vec<&str> = b.iter().map(|&i| ring.var_names()[i].as_str()).collect();
            m.insert("base".into(), json!(names));
        }
        m
    }
}

fn strs(ps: &[Polynomial]) -> Json {
    json!(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

/// Generator for instance `index`; independent of every other index.
pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn random_coeff(rng: &mut ChaCha8Rng, field: FieldSpec) -> Coeff {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-3..=3)),
    }
}

/// Random combination of monomials in `vars` of degree `lo..=hi`.
fn random_form(rng: &mut ChaCha8Rng, ring: &Ring, vars: &[usize], lo: u32, hi: u32) -> Polynomial {
    let mut p = ring.zero();
    for d in lo..=hi {
        for m in Monomial::all_of_degree(vars.len(), d) {
            if rng.gen_bool(0.5) {
                continue;
            }
            let mut full = vec![0u32; ring.nvars()];
            for (i, e) in m.exponents().enumerate() {
                full[vars[i]] = e;
            }
            p = p.add(&ring.term(random_coeff(rng, ring.field()), Monomial::from_exponents(&full)));
        }
    }
    p
}

fn nonzero_linear(rng: &mut ChaCha8Rng, ring: &Ring, vars: &[usize]) -> Polynomial {
    loop {
        let l = random_form(rng, ring, vars, 1, 1);
        if !l.is_zero() {
            return l;
        }
    }
}

/// `count` linearly independent linear forms.
fn independent_linear(rng: &mut ChaCha8Rng, ring: &Ring, count: usize) -> Vec<Polynomial> {
    let all: Vec<usize> = (0..ring.nvars()).collect();
    loop {
        let forms: Vec<Polynomial> = (0..count).map(|_| nonzero_linear(rng, ring, &all)).collect();
        let rows = forms
            .iter()
            .map(|l| (0..ring.nvars()).map(|v| l.coeff_of(&Monomial::var_power(ring.nvars(), v, 1))).collect())
            .collect();
        if Matrix::from_rows(ring.field(), rows, ring.nvars()).rank() == count {
            return forms;
        }
    }
}

fn named(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `T = k[x_1..x_n]/(f_1^{c_1} f_2^{c_2})` with smooth branches `f_i`
/// through the origin, `z = f_j` and `n − 1` random linear parameters.
pub fn hypersurface_instance(rng: &mut ChaCha8Rng, field: FieldSpec, vars: usize, deg: u32) -> Result<Instance> {
    if vars == 0 || deg == 0 {
        return Err(Error::InvalidSpec("need at least one variable and degree one".into()));
    }
    let ring = PolyRing::new(field, &named("x", vars), TermOrder::DegRevLex)?;
    let all: Vec<usize> = (0..vars).collect();
    let shape: Vec<(u32, u32)> = if deg < 2 {
        vec![(1, 1)]
    } else {
        loop {
            let s = [
                (rng.gen_range(1..=deg), rng.gen_range(1..=2)),
                (rng.gen_range(1..=deg), rng.gen_range(1..=2)),
            ];
            if s.iter().map(|(d, c)| d * c).sum::<u32>() <= deg {
                break s.to_vec();
            }
        }
    };
    let factors: Vec<(Polynomial, u32)> = shape
        .iter()
        .map(|&(d, c)| {
            let lin = nonzero_linear(rng, &ring, &all);
            let higher = if d >= 2 { random_form(rng, &ring, &all, 2, d) } else { ring.zero() };
            (lin.add(&higher), c)
        })
        .collect();
    let f = factors.iter().fold(ring.one(), |acc, (g, c)| acc.mul(&g.pow(*c)));
    let z = factors[rng.gen_range(0..factors.len())].0.clone();
    // Redraw Q a few times when the line Q = 0 lies on the hypersurface.
    let mut q = independent_linear(rng, &ring, vars - 1);
    for _ in 0..8 {
        let mut gens = q.clone();
        gens.push(f.clone());
        if local_length(&Ideal::new(&ring, gens)?, deg + 1).is_ok() {
            break;
        }
        q = independent_linear(rng, &ring, vars - 1);
    }
    Ok(Instance {
        family: Family::Hypersurface,
        t: QuotientRing::new(Ideal::new(&ring, vec![f])?),
        q: Ideal::new(&ring, q)?,
        z,
        factors,
    })
}

/// A tower `k[x][y]/(f_i(y_i))` over `1` or `2` base variables. Each
/// relation is either a product of `y_i − c(x)` with `c ∈ m` or a generic
/// monic polynomial with coefficients in `m`; the first always splits.
/// `Q = m_R T` and `z` is one of the linear factors.
pub fn tower_instance(rng: &mut ChaCha8Rng, field: FieldSpec, vars: usize, deg: u32) -> Result<Instance> {
    if vars < 2 {
        return Err(Error::InvalidSpec("a tower needs at least two variables".into()));
    }
    let b = if vars == 2 { 1 } else { rng.gen_range(1..=2.min(vars - 1)) };
    let r = vars - b;
    let base = PolyRing::new(field, &named("x", b), TermOrder::DegRevLex)?;
    let bvars: Vec<usize> = (0..b).collect();
    let max_n = deg.clamp(1, 3);
    let mut coefficients = Vec::new();
    let mut roots: Vec<(usize, Polynomial)> = Vec::new();
    for i in 0..r {
        // the first relation always splits with two or more roots, so the
        // chosen linear factor is a zero divisor
        let n = if i == 0 { rng.gen_range(2.min(max_n)..=max_n) } else { rng.gen_range(1..=max_n) } as usize;
        if i == 0 || rng.gen_bool(0.5) {
            // coefficients of ∏ (Y − c_k), highest power first
            let mut coeffs = vec![base.one()];
            for _ in 0..n {
                let c = random_form(rng, &base, &bvars, 1, 2);
                let mut next = coeffs.clone();
                next.push(base.zero());
                for j in 1..next.len() {
                    next[j] = next[j].sub(&c.mul(&coeffs[j - 1]));
                }
                coeffs = next;
                roots.push((i, c));
            }
            coefficients.push(coeffs[1..].to_vec());
        } else {
            coefficients.push((0..n).map(|_| random_form(rng, &base, &bvars, 1, 2)).collect());
        }
    }
    let t = build_tower(&TowerSpec::new(&base, &named("y", r), coefficients))?;
    let ring = t.ring().clone();
    let tower = t.require_tower()?;
    let (i, c) = &roots[rng.gen_range(0..roots.len())];
    let z = ring.variable(b + i).sub(&tower.lift_base(&ring, c));
    let q = t.base_maximal_ideal();
    Ok(Instance {
        family: Family::Tower,
        t,
        q,
        z,
        factors: Vec::new(),
    })
}

fn is_skip(e: &Error) -> bool {
    matches!(e, Error::PrecisionExceeded { .. } | Error::DimensionPositive { .. })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: usize,
    pub reasons: Vec<String>,
    pub inputs: BTreeMap<String, Json>,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub document: ReportDocument,
    pub counterexamples: Vec<Counterexample>,
    /// Instances dropped because the parameters were not a system of
    /// parameters within the precision cap.
    pub skipped: usize,
}

impl SearchReport {
    pub fn to_json(&self, config: &SearchConfig) -> String {
        let v = json!({
            "config": {
                "seed": config.seed,
                "count": config.count,
                "field": config.field.to_string(),
                "vars": config.vars,
                "deg": config.deg,
                "target": config.target.name(),
                "max_precision": config.max_precision,
            },
            "report": serde_json::to_value(&self.document).expect("report serializes"),
            "counterexamples": serde_json::to_value(&self.counterexamples).expect("serializes"),
            "skipped": self.skipped,
        });
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

enum Outcome {
    Skipped,
    Done(TaskEntry, Vec<String>),
}

fn spc_result(r: &spc::SpcReport) -> Json {
    json!({
        "conditions": {
            "socle_membership": r.cond_socle_membership,
            "annihilator": r.cond_annihilator,
            "delta": r.cond_delta,
        },
        "h0": r.lengths.h0,
        "h1": r.lengths.h1,
        "delta": r.lengths.delta,
        "length_t_q": r.lengths.length_t_q,
        "length_t_ann_q": r.lengths.length_t_ann_q,
        "zero_divisor": r.zero_divisor,
    })
}

/// Generate instance `index` of a search.
pub fn generate(config: &SearchConfig, index: usize) -> Result<Instance> {
    let mut rng = instance_rng(config.seed, index);
    match config.target {
        SearchTarget::Spc if config.vars >= 2 && rng.gen_bool(0.5) => {
            tower_instance(&mut rng, config.field, config.vars, config.deg)
        }
        SearchTarget::Spc => hypersurface_instance(&mut rng, config.field, config.vars, config.deg),
        SearchTarget::Split => tower_instance(&mut rng, config.field, config.vars, config.deg),
    }
}

fn check(config: &SearchConfig, index: usize) -> Outcome {
    let start = Instant::now();
    let inst = match generate(config, index) {
        Ok(i) => i,
        Err(e) => {
            return Outcome::Done(entry(index, config, BTreeMap::new(), Err(e), start), vec!["generation".into()]);
        }
    };
    let maxp = config.max_precision;
    let inputs = inst.inputs();
    let run = || -> Result<(Json, Vec<String>)> {
        let mut reasons = Vec::new();
        let v = spc::spc_verdict(&inst.t, &inst.q, &inst.z, None, maxp)?;
        if !v.agreement {
            reasons.push("agreement".to_string());
        }
        if !v.length_identity_holds() {
            reasons.push("length-identity".to_string());
        }
        let mut result = spc_result(&v);
        match config.target {
            SearchTarget::Spc => {
                if v.zero_divisor && v.lengths.delta <= 0 {
                    reasons.push("delta-nonpositive".to_string());
                }
            }
            SearchTarget::Split => {
                let j = std::slice::from_ref(&inst.z);
                let s = spc::splitting_check(&inst.t, j, maxp)?;
                if s.splits != v.cond_annihilator {
                    reasons.push("bridge".to_string());
                }
                result["splits"] = json!(s.splits);
                if let Some(w) = &s.witness {
                    let rho = spc::build_retraction(&inst.t, j, w, maxp)?;
                    let contract = rho.preserves_one() && rho.kills(j);
                    if !contract {
                        reasons.push("retraction-contract".to_string());
                    }
                    result["retraction_contract"] = json!(contract);
                }
            }
        }
        Ok((result, reasons))
    };
    match run() {
        Err(e) if is_skip(&e) => Outcome::Skipped,
        Err(e) => Outcome::Done(entry(index, config, inputs, Err(e), start), vec!["error".into()]),
        Ok((result, reasons)) => {
            let ok = reasons.is_empty();
            Outcome::Done(entry(index, config, inputs, Ok((result, ok)), start), reasons)
        }
    }
}

fn entry(
    index: usize,
    config: &SearchConfig,
    inputs: BTreeMap<String, Json>,
    outcome: Result<(Json, bool)>,
    start: Instant,
) -> TaskEntry {
    let (status, error, result, agreement) = match outcome {
        Ok((r, ok)) => ("ok", None, Some(r), Some(ok)),
        Err(e) => ("error", Some((&e).into()), None, None),
    };
    TaskEntry {
        index,
        kind: format!("search-{}", config.target.name()),
        line: 0,
        inputs,
        status: status.to_string(),
        error,
        result,
        agreement,
        timing_ms: start.elapsed().as_millis() as u64,
    }
}

/// Run `config.count` seeded instances in parallel. The instance stream
/// depends only on the seed and the configuration.
pub fn random_search(config: &SearchConfig) -> SearchReport {
    let outcomes: Vec<Outcome> = (0..config.count).into_par_iter().map(|i| check(config, i)).collect();
    let mut entries = Vec::new();
    let mut counterexamples = Vec::new();
    let mut skipped = 0;
    for o in outcomes {
        match o {
            Outcome::Skipped => skipped += 1,
            Outcome::Done(e, reasons) => {
                if !reasons.is_empty() {
                    counterexamples.push(Counterexample {
                        index: e.index,
                        reasons,
                        inputs: e.inputs.clone(),
                    });
                }
                entries.push(e);
            }
        }
    }
    SearchReport {
        document: ReportDocument::new(entries),
        counterexamples,
        skipped,
    }
}
