//! Task execution and the versioned report document.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::local::{self, QuotientRing, DEFAULT_MAX_PRECISION};
use crate::polynomial::{Monomial, Polynomial};
use crate::spc;

use super::resolve::{Environment, Job, PreparedTask};
use super::session::SessionFile;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_TASK_ERROR: i32 = 3;
pub const EXIT_AGREEMENT: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunFlags {
    pub max_precision: u32,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for RunFlags {
    fn default() -> Self {
        RunFlags {
            max_precision: DEFAULT_MAX_PRECISION,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskError {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for TaskError {
    fn from(e: &Error) -> Self {
        TaskError {
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskEntry {
    pub index: usize,
    pub kind: String,
    pub line: usize,
    pub inputs: BTreeMap<String, Json>,
    /// `"ok"` or `"error"`.
    pub status: String,
    pub error: Option<TaskError>,
    pub result: Option<Json>,
    /// Consistency verdict of the task's internal cross-checks, when it has any.
    pub agreement: Option<bool>,
    pub timing_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub tasks: usize,
    pub succeeded: usize,
    pub failed: usize,
    pub agreement_violations: usize,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub tasks: Vec<TaskEntry>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(tasks: Vec<TaskEntry>) -> ReportDocument {
        let failed = tasks.iter().filter(|t| t.error.is_some()).count();
        let violations = tasks.iter().filter(|t| t.agreement == Some(false)).count();
        let exit_code = if violations > 0 {
            EXIT_AGREEMENT
        } else if failed > 0 {
            EXIT_TASK_ERROR
        } else {
            EXIT_OK
        };
        ReportDocument {
            schema: SCHEMA_VERSION,
            summary: Summary {
                tasks: tasks.len(),
                succeeded: tasks.len() - failed,
                failed,
                agreement_violations: violations,
                exit_code,
            },
            tasks,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<ReportDocument> {
        serde_json::from_str(text)
    }

    /// Copy with every timing zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> ReportDocument {
        let mut d = self.clone();
        for t in &mut d.tasks {
            t.timing_ms = 0;
        }
        d
    }

    /// Plain-text rendering: one header line per task, then its results.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            let verdict = match t.agreement {
                Some(true) => " agreement=true",
                Some(false) => " agreement=FALSE",
                None => "",
            };
            let _ = writeln!(out, "[{}] task {} (line {}) {}{verdict} {}ms", t.index, t.kind, t.line, t.status, t.timing_ms);
            for (k, v) in &t.inputs {
                let _ = writeln!(out, "    in  {k} = {}", compact(v));
            }
            if let Some(e) = &t.error {
                let _ = writeln!(out, "    error {}: {}", e.kind, e.message);
            }
            if let Some(Json::Object(m)) = &t.result {
                for (k, v) in m {
                    let _ = writeln!(out, "    out {k} = {}", compact(v));
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} tasks, {} ok, {} failed, {} agreement violations, exit {}",
            s.tasks, s.succeeded, s.failed, s.agreement_violations, s.exit_code
        );
        out
    }
}

fn compact(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn strs(ps: &[Polynomial]) -> Json {
    json!(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

/// `f ∈ I + (vars)^n`, using the explicit monomials of degree `n`.
pub(crate) fn in_ideal_plus_power(ideal: &Ideal, vars: &[usize], n: u32, f: &Polynomial) -> Result<bool> {
    let ring = ideal.ring().clone();
    let mut gens = ideal.explicit_generators();
    for m in Monomial::all_of_degree(vars.len(), n) {
        let mut full = vec![0u32; ring.nvars()];
        for (i, e) in m.exponents().enumerate() {
            full[vars[i]] = e;
        }
        gens.push(ring.monomial(Monomial::from_exponents(&full)));
    }
    Ok(Ideal::new(&ring, gens)?.contains(f))
}

fn base_or_all(t: &QuotientRing) -> Vec<usize> {
    t.base_vars()
        .map(|b| b.to_vec())
        .unwrap_or_else(|| (0..t.ring().nvars()).collect())
}

/// Run one job: `(result, agreement)`.
pub fn execute(job: &Job, max_precision: u32) -> Result<(Json, Option<bool>)> {
    Ok(match job {
        Job::Length { ideal } => {
            let r = local::local_length(ideal, max_precision)?;
            (json!({ "length": r.value, "stabilized_at": r.stabilized_at }), None)
        }
        Job::Socle { ideal } => {
            let s = local::socle(ideal, max_precision)?;
            let generator = (s.dimension == 1).then(|| s.basis[0].to_string());
            (
                json!({
                    "dimension": s.dimension,
                    "basis": strs(&s.basis),
                    "gorenstein": s.dimension == 1,
                    "generator": generator,
                    "precision": s.precision,
                }),
                None,
            )
        }
        Job::Spc { t, q, z, u } => {
            let r = spc::spc_verdict(t, q, z, u.as_ref(), max_precision)?;
            let l = r.lengths;
            let ok = r.agreement && r.length_identity_holds();
            (
                json!({
                    "conditions": {
                        "socle_membership": r.cond_socle_membership,
                        "annihilator": r.cond_annihilator,
                        "delta": r.cond_delta,
                    },
                    "lengths": {
                        "h0": l.h0,
                        "h1": l.h1,
                        "delta": l.delta,
                        "length_t_q": l.length_t_q,
                        "length_t_ann_q": l.length_t_ann_q,
                        "length_t_qz": l.h0,
                    },
                    "h0_by_rank": r.h0_by_rank,
                    "agreement": r.agreement,
                    "length_identity": r.length_identity_holds(),
                    "zero_divisor": r.zero_divisor,
                    "degenerate": r.degenerate,
                    "socle_lift": r.socle_lift.to_string(),
                    "annihilator": strs(r.annihilator.generators()),
                    "annihilator_witness": r.annihilator_witness.map(|w| w.to_string()),
                    "precision": r.precision,
                }),
                Some(ok),
            )
        }
        Job::Koszul { t, q, z } => {
            let l = spc::koszul_delta(t, q, z, max_precision)?;
            (
                json!({
                    "h0": l.h0,
                    "h1": l.h1,
                    "delta": l.delta,
                    "length_t_q": l.length_t_q,
                    "length_t_ann_q": l.length_t_ann_q,
                }),
                Some(l.h1 >= 0),
            )
        }
        Job::Split { t, j } => {
            let s = spc::splitting_check(t, j, max_precision)?;
            (
                json!({
                    "splits": s.splits,
                    "witness": s.witness.map(|w| w.to_string()),
                    "annihilator": strs(s.annihilator.generators()),
                }),
                None,
            )
        }
        Job::Retraction { t, j, a } => {
            let rho = spc::build_retraction(t, j, a, max_precision)?;
            let one = rho.preserves_one();
            let kills = rho.kills(j);
            (
                json!({
                    "basis": strs(&rho.basis),
                    "images": rho.images.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "witness": rho.witness.to_string(),
                    "multiplier": rho.multiplier.to_string(),
                    "socle_lift": rho.socle_lift.to_string(),
                    "preserves_one": one,
                    "kills_j": kills,
                }),
                Some(one && kills),
            )
        }
        Job::Reduce { t, j, fresh } => {
            let (t1, g) = spc::reduce_to_principal(t, j, fresh.as_deref())?;
            let before = spc::splitting_check(t, j, max_precision)?.splits;
            let after = spc::splitting_check(&t1, std::slice::from_ref(&g), max_precision)?.splits;
            (
                json!({
                    "g": g.to_string(),
                    "ring": format!("{}[{}]", t1.ring().field(), t1.ring().var_names().join(", ")),
                    "splits_original": before,
                    "splits_principal": after,
                }),
                Some(before == after),
            )
        }
        Job::Mult { t, q, z, nmax } => {
            let r = spc::multiplicity(t, q, z.as_ref(), *nmax, max_precision)?;
            (
                json!({
                    "hilbert_samuel_lengths": r.hilbert_samuel_lengths,
                    "fitted_coefficients": r.fitted_coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "dimension": r.dimension,
                    "e": r.e.to_string(),
                    "chi": r.chi,
                    "serre_agrees": r.serre_agrees,
                }),
                Some(r.serre_agrees != Some(false)),
            )
        }
        Job::Frobenius { t, q, z, qs } => {
            let f = spc::frobenius_growth(t, q, z, qs, max_precision)?;
            let rows: Vec<Json> = f
                .rows
                .iter()
                .map(|r| json!({ "q": r.q, "h0": r.h0, "h1": r.h1, "delta": r.delta }))
                .collect();
            // higher Koszul homology vanishes for at most one parameter
            let ok = f.bound_holds && (f.d > 1 || f.scaling_holds);
            (
                json!({
                    "rows": rows,
                    "d": f.d,
                    "scaling_holds": f.scaling_holds,
                    "delta_positive": f.delta_positive,
                    "empirical_c": f.empirical_c.to_string(),
                    "bound_holds": f.bound_holds,
                }),
                Some(ok),
            )
        }
        Job::Hensel { f, y, factors, precision } => {
            let lifted = local::hensel_lift_factors(f, *y, factors, *precision)?;
            let ring = f.ring();
            let product = lifted.iter().fold(ring.one(), |acc, g| acc.mul(g));
            let base: Vec<usize> = (0..ring.nvars()).filter(|v| v != y).collect();
            let matches = product.sub(f).truncate_in(&base, *precision).is_zero();
            (
                json!({ "factors": strs(&lifted), "precision": precision, "product_matches": matches }),
                Some(matches),
            )
        }
        Job::Idempotent { t, e, precision } => {
            let lifted = local::lift_idempotent(t, e, *precision)?;
            let defect = lifted.mul(&lifted).sub(&lifted);
            let ok = in_ideal_plus_power(t.ideal(), &base_or_all(t), *precision, &defect)?;
            (
                json!({ "idempotent": lifted.to_string(), "precision": precision, "idempotent_mod_precision": ok }),
                Some(ok),
            )
        }
    })
}

fn run_one(index: usize, task: &PreparedTask, max_precision: u32) -> TaskEntry {
    let start = Instant::now();
    let outcome = execute(&task.job, max_precision);
    let timing_ms = start.elapsed().as_millis() as u64;
    let (status, error, result, agreement) = match outcome {
        Ok((r, a)) => ("ok", None, Some(r), a),
        Err(e) => ("error", Some(TaskError::from(&e)), None, None),
    };
    TaskEntry {
        index,
        kind: task.kind.name().to_string(),
        line: task.line,
        inputs: task.inputs.clone(),
        status: status.to_string(),
        error,
        result,
        agreement,
        timing_ms,
    }
}

/// Execute every task of a session. Failures are recorded per task; only
/// resolution errors abort.
pub fn run_tasks(session: &SessionFile, flags: &RunFlags) -> Result<ReportDocument> {
    let env = Environment::build(session)?;
    let work = || -> Vec<TaskEntry> {
        env.tasks
            .par_iter()
            .enumerate()
            .map(|(i, t)| run_one(i, t, flags.max_precision))
            .collect()
    };
    let entries = match flags.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Structural(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    Ok(ReportDocument::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_session;

    const SMOKE: &str = "ring R = F7[x,y] order degrevlex; ideal I = (x*y); quotient T = R/I; task spc { Q = (x+y); z = x; }";

    fn run(text: &str) -> ReportDocument {
        run_tasks(&parse_session(text).unwrap(), &RunFlags::default()).unwrap()
    }

    #[test]
    fn smoke_session_report() {
        let doc = run(SMOKE);
        assert_eq!(doc.exit_code(), EXIT_OK);
        let r = doc.tasks[0].result.as_ref().unwrap();
        assert_eq!(r["lengths"]["delta"], json!(1));
        assert_eq!(r["agreement"], json!(true));
        assert_eq!(doc.tasks[0].agreement, Some(true));
    }

    #[test]
    fn length_task() {
        let doc = run("ring R = Q[x]; ideal I = (x^2-x); task length { of = I; }");
        assert_eq!(doc.tasks[0].result.as_ref().unwrap()["length"], json!(1));
    }

    #[test]
    fn non_gorenstein_is_a_task_error() {
        let doc = run(
            "ring R = Q[x,y,w]; ideal I = (x*y, x*w, y*w); quotient T = R/I;\
             task spc { Q = (x + y + w); z = x; } task koszul { Q = (x + y + w); z = x; }",
        );
        assert_eq!(doc.tasks[0].error.as_ref().unwrap().kind, "gorenstein-required");
        assert_eq!(doc.tasks[1].status, "ok");
        assert_eq!(doc.exit_code(), EXIT_TASK_ERROR);
    }

    #[test]
    fn json_is_sorted_and_round_trips() {
        let doc = run(SMOKE);
        let text = doc.to_json();
        let back = ReportDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        let schema_pos = text.find("\"schema\"").unwrap();
        let summary_pos = text.find("\"summary\"").unwrap();
        let tasks_pos = text.find("\"tasks\"").unwrap();
        assert!(schema_pos < summary_pos && summary_pos < tasks_pos);
    }

    #[test]
    fn jobs_flag_keeps_order() {
        let text = format!("{SMOKE} task koszul {{ Q = ((x+y)^2); z = x; }} task length {{ in = T; }}");
        let s = parse_session(&text).unwrap();
        let a = run_tasks(&s, &RunFlags { jobs: Some(1), max_precision: 8 }).unwrap();
        let b = run_tasks(&s, &RunFlags { jobs: Some(4), max_precision: 8 }).unwrap();
        assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
        assert_eq!(a.tasks.iter().map(|t| t.kind.as_str()).collect::<Vec<_>>(), ["spc", "koszul", "length"]);
        assert_eq!(a.tasks[2].error.as_ref().unwrap().kind, "precision-exceeded");
    }
}
