//! Name resolution: declarations become rings, ideals and quotients, and
//! tasks become [`Job`]s with every polynomial evaluated.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value as Json};

use crate::error::Result;
use crate::groebner::Ideal;
use crate::local::QuotientRing;
use crate::polynomial::expr::Expr;
use crate::polynomial::{PolyRing, Polynomial, Ring};

use super::session::{Decl, Item, SessionFile, Span, Task, TaskKind, Value};

/// A fully resolved task.
#[derive(Debug, Clone)]
pub enum Job {
    Length { ideal: Ideal },
    Socle { ideal: Ideal },
    Spc { t: QuotientRing, q: Ideal, z: Polynomial, u: Option<Polynomial> },
    Koszul { t: QuotientRing, q: Ideal, z: Polynomial },
    Split { t: QuotientRing, j: Vec<Polynomial> },
    Retraction { t: QuotientRing, j: Vec<Polynomial>, a: Polynomial },
    Reduce { t: QuotientRing, j: Vec<Polynomial>, fresh: Option<Vec<String>> },
    Mult { t: QuotientRing, q: Ideal, z: Option<Polynomial>, nmax: u32 },
    Frobenius { t: QuotientRing, q: Ideal, z: Polynomial, qs: Vec<u64> },
    Hensel { f: Polynomial, y: usize, factors: Vec<Polynomial>, precision: u32 },
    Idempotent { t: QuotientRing, e: Polynomial, precision: u32 },
}

/// A job with the information echoed in reports.
#[derive(Debug, Clone)]
pub struct PreparedTask {
    pub kind: TaskKind,
    pub line: usize,
    /// Inputs in canonical form.
    pub inputs: BTreeMap<String, Json>,
    pub job: Job,
}

#[derive(Debug, Clone)]
enum Entry {
    Ring(Ring),
    Ideal { ring: String, ideal: Ideal },
    Quotient { t: QuotientRing },
}

/// Declarations in scope while walking a session.
#[derive(Debug, Default)]
pub struct Environment {
    names: HashMap<String, Entry>,
    last_ring: Option<String>,
    last_quotient: Option<String>,
    pub tasks: Vec<PreparedTask>,
}

const DEFAULT_LIFT_PRECISION: u32 = 8;

fn strs(ps: &[Polynomial]) -> Json {
    json!(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

impl Environment {
    pub fn build(file: &SessionFile) -> Result<Environment> {
        let mut env = Environment::default();
        for item in &file.items {
            match item {
                Item::Decl(d) => env.declare(d)?,
                Item::Task(t) => {
                    let prepared = env.prepare(t)?;
                    env.tasks.push(prepared);
                }
            }
        }
        Ok(env)
    }

    fn declare(&mut self, d: &Decl) -> Result<()> {
        let span = d.span();
        if self.names.contains_key(d.name()) {
            return Err(span.error(format!("duplicate identifier `{}`", d.name())));
        }
        match d {
            Decl::Ring {
                name, field, vars, order, ..
            } => {
                for v in vars {
                    if self.names.contains_key(v) {
                        return Err(span.error(format!("variable `{v}` shadows a declared name")));
                    }
                }
                let ring = PolyRing::new(*field, vars, *order).map_err(|e| span.error(e.to_string()))?;
                self.names.insert(name.clone(), Entry::Ring(ring));
                self.last_ring = Some(name.clone());
            }
            Decl::Ideal { name, gens, ring, .. } => {
                let ring_name = match ring {
                    Some(r) => r.clone(),
                    None => match &self.last_ring {
                        Some(r) => r.clone(),
                        None => {
                            let first = gens.iter().flat_map(|g| g.identifiers()).next();
                            return Err(span.error(match first {
                                Some(v) => format!("undeclared identifier `{v}` (no ring declared)"),
                                None => "no ring declared".to_string(),
                            }));
                        }
                    },
                };
                let r = self.ring(&ring_name, span)?;
                let polys = gens
                    .iter()
                    .map(|g| eval(g, &r, span))
                    .collect::<Result<Vec<_>>>()?;
                let ideal = Ideal::new(&r, polys).map_err(|e| span.error(e.to_string()))?;
                self.names.insert(name.clone(), Entry::Ideal { ring: ring_name, ideal });
            }
            Decl::Quotient {
                name, ring, ideal, base, ..
            } => {
                self.ring(ring, span)?;
                let i = match self.names.get(ideal) {
                    Some(Entry::Ideal { ring: r, ideal: i }) => {
                        if r != ring {
                            return Err(span.error(format!(
                                "field mismatch: ideal `{ideal}` lives in ring `{r}`, not `{ring}`"
                            )));
                        }
                        i.clone()
                    }
                    Some(_) => return Err(span.error(format!("`{ideal}` is not an ideal"))),
                    None => return Err(span.error(format!("undeclared identifier `{ideal}`"))),
                };
                let mut t = QuotientRing::new(i);
                if let Some(b) = base {
                    // a tower when the relations allow it, otherwise just a base
                    t = match t.clone().as_tower(b) {
                        Ok(tw) => tw,
                        Err(_) => t.with_base(b).map_err(|e| span.error(e.to_string()))?,
                    };
                }
                self.names.insert(name.clone(), Entry::Quotient { t });
                self.last_quotient = Some(name.clone());
            }
        }
        Ok(())
    }

    fn ring(&self, name: &str, span: Span) -> Result<Ring> {
        match self.names.get(name) {
            Some(Entry::Ring(r)) => Ok(r.clone()),
            Some(_) => Err(span.error(format!("`{name}` is not a ring"))),
            None => Err(span.error(format!("undeclared identifier `{name}`"))),
        }
    }

    fn quotient_named(&self, name: &str, span: Span) -> Result<(String, QuotientRing)> {
        match self.names.get(name) {
            Some(Entry::Quotient { t, .. }) => Ok((name.to_string(), t.clone())),
            Some(_) => Err(span.error(format!("`{name}` is not a quotient"))),
            None => Err(span.error(format!("undeclared identifier `{name}`"))),
        }
    }

    fn target_quotient(&self, task: &Task) -> Result<(String, QuotientRing)> {
        match task.get("in") {
            Some(a) => self.quotient_named(&var_name(&a.value, a.span)?, a.span),
            None => match &self.last_quotient {
                Some(n) => self.quotient_named(n, task.span),
                None => Err(task.span.error("no quotient declared for this task")),
            },
        }
    }

    fn ideal_value(&self, v: &Value, ring: &Ring, span: Span) -> Result<Ideal> {
        let gens = match v {
            Value::List(items) => items.iter().map(|e| eval(e, ring, span)).collect::<Result<Vec<_>>>()?,
            Value::Expr(Expr::Var(n)) if ring.var_index(n).is_none() => match self.names.get(n) {
                Some(Entry::Ideal { ideal, .. }) => {
                    if !ideal.ring().same_as(ring) {
                        return Err(span.error(format!("field mismatch: ideal `{n}` lives in another ring")));
                    }
                    ideal.generators().to_vec()
                }
                Some(_) => return Err(span.error(format!("`{n}` is not an ideal"))),
                None => return Err(span.error(format!("undeclared identifier `{n}`"))),
            },
            Value::Expr(e) => vec![eval(e, ring, span)?],
        };
        Ideal::new(ring, gens).map_err(|e| span.error(e.to_string()))
    }

    fn prepare(&self, task: &Task) -> Result<PreparedTask> {
        let (required, optional) = task.kind.keys();
        for a in &task.assigns {
            if !required.contains(&a.key.as_str()) && !optional.contains(&a.key.as_str()) {
                return Err(a.span.error(format!("unknown key `{}` for task {}", a.key, task.kind)));
            }
            if task.assigns.iter().filter(|b| b.key == a.key).count() > 1 {
                return Err(a.span.error(format!("key `{}` given twice", a.key)));
            }
        }
        for k in required {
            if task.get(k).is_none() {
                return Err(task.span.error(format!("task {} needs `{k}`", task.kind)));
            }
        }
        let mut inputs = BTreeMap::new();
        let req = |k: &str| task.get(k).expect("required key checked");
        let job = match task.kind {
            TaskKind::Length | TaskKind::Socle => {
                let ideal = match (task.get("of"), task.get("in")) {
                    (Some(_), Some(a)) => return Err(a.span.error("give either `of` or `in`, not both")),
                    (Some(a), None) => {
                        let ring = self.ring_for_of(&a.value, a.span)?;
                        let i = self.ideal_value(&a.value, &ring, a.span)?;
                        inputs.insert("of".into(), strs(i.generators()));
                        i
                    }
                    _ => {
                        let (name, t) = self.target_quotient(task)?;
                        inputs.insert("in".into(), json!(name));
                        t.ideal().clone()
                    }
                };
                if task.kind == TaskKind::Length {
                    Job::Length { ideal }
                } else {
                    Job::Socle { ideal }
                }
            }
            TaskKind::Hensel => {
                let ring = match task.get("in") {
                    Some(a) => {
                        let n = var_name(&a.value, a.span)?;
                        inputs.insert("in".into(), json!(n));
                        match self.names.get(&n) {
                            Some(Entry::Ring(r)) => r.clone(),
                            Some(Entry::Quotient { t, .. }) => t.ring().clone(),
                            _ => return Err(a.span.error(format!("`{n}` is not a ring or quotient"))),
                        }
                    }
                    None => match (&self.last_quotient, &self.last_ring) {
                        (Some(q), _) => self.quotient_named(q, task.span)?.1.ring().clone(),
                        (None, Some(r)) => self.ring(r, task.span)?,
                        _ => return Err(task.span.error("no ring declared for this task")),
                    },
                };
                let f = poly(&req("f").value, &ring, req("f").span)?;
                let ya = req("y");
                let yname = var_name(&ya.value, ya.span)?;
                let y = ring
                    .var_index(&yname)
                    .ok_or_else(|| ya.span.error(format!("`{yname}` is not a variable of the ring")))?;
                let fa = req("factors");
                let factors = match &fa.value {
                    Value::List(items) => items.iter().map(|e| eval(e, &ring, fa.span)).collect::<Result<Vec<_>>>()?,
                    Value::Expr(e) => vec![eval(e, &ring, fa.span)?],
                };
                let precision = self.int_key(task, "N")?.unwrap_or(DEFAULT_LIFT_PRECISION as u64) as u32;
                inputs.insert("f".into(), json!(f.to_string()));
                inputs.insert("y".into(), json!(yname));
                inputs.insert("factors".into(), strs(&factors));
                inputs.insert("N".into(), json!(precision));
                Job::Hensel { f, y, factors, precision }
            }
            _ => {
                let (name, t) = self.target_quotient(task)?;
                inputs.insert("in".into(), json!(name));
                let ring = t.ring().clone();
                let ideal_key = |k: &str| -> Result<Ideal> {
                    let a = req(k);
                    self.ideal_value(&a.value, &ring, a.span)
                };
                let poly_key = |k: &str| -> Result<Option<Polynomial>> {
                    task.get(k).map(|a| poly(&a.value, &ring, a.span)).transpose()
                };
                match task.kind {
                    TaskKind::Spc | TaskKind::Koszul => {
                        let q = ideal_key("Q")?;
                        let z = poly_key("z")?.expect("required");
                        inputs.insert("Q".into(), strs(q.generators()));
                        inputs.insert("z".into(), json!(z.to_string()));
                        if task.kind == TaskKind::Spc {
                            let u = poly_key("u")?;
                            if let Some(u) = &u {
                                inputs.insert("u".into(), json!(u.to_string()));
                            }
                            Job::Spc { t, q, z, u }
                        } else {
                            Job::Koszul { t, q, z }
                        }
                    }
                    TaskKind::Split | TaskKind::Retraction | TaskKind::Reduce => {
                        let j = ideal_key("J")?.generators().to_vec();
                        inputs.insert("J".into(), strs(&j));
                        match task.kind {
                            TaskKind::Split => Job::Split { t, j },
                            TaskKind::Retraction => {
                                let a = poly_key("a")?.expect("required");
                                inputs.insert("a".into(), json!(a.to_string()));
                                Job::Retraction { t, j, a }
                            }
                            _ => {
                                let fresh = match task.get("fresh") {
                                    Some(a) => {
                                        let names = match &a.value {
                                            Value::List(items) => items
                                                .iter()
                                                .map(|e| match e {
                                                    Expr::Var(v) => Ok(v.clone()),
                                                    _ => Err(a.span.error("`fresh` must list identifiers")),
                                                })
                                                .collect::<Result<Vec<_>>>()?,
                                            Value::Expr(Expr::Var(v)) => vec![v.clone()],
                                            _ => return Err(a.span.error("`fresh` must list identifiers")),
                                        };
                                        inputs.insert("fresh".into(), json!(names));
                                        Some(names)
                                    }
                                    None => None,
                                };
                                Job::Reduce { t, j, fresh }
                            }
                        }
                    }
                    TaskKind::Mult => {
                        let q = ideal_key("Q")?;
                        let z = poly_key("z")?;
                        let nmax = self.int_key(task, "nmax")?.unwrap_or(crate::spc::DEFAULT_NMAX as u64) as u32;
                        inputs.insert("Q".into(), strs(q.generators()));
                        if let Some(z) = &z {
                            inputs.insert("z".into(), json!(z.to_string()));
                        }
                        inputs.insert("nmax".into(), json!(nmax));
                        Job::Mult { t, q, z, nmax }
                    }
                    TaskKind::Frobenius => {
                        let q = ideal_key("Q")?;
                        let z = poly_key("z")?.expect("required");
                        let qa = req("q");
                        let qs = int_list(&qa.value, qa.span)?;
                        inputs.insert("Q".into(), strs(q.generators()));
                        inputs.insert("z".into(), json!(z.to_string()));
                        inputs.insert("q".into(), json!(qs));
                        Job::Frobenius { t, q, z, qs }
                    }
                    TaskKind::Idempotent => {
                        let e = poly_key("e")?.expect("required");
                        let precision = self.int_key(task, "N")?.unwrap_or(DEFAULT_LIFT_PRECISION as u64) as u32;
                        inputs.insert("e".into(), json!(e.to_string()));
                        inputs.insert("N".into(), json!(precision));
                        Job::Idempotent { t, e, precision }
                    }
                    _ => unreachable!("handled above"),
                }
            }
        };
        Ok(PreparedTask {
            kind: task.kind,
            line: task.span.line,
            inputs,
            job,
        })
    }

    /// Ring for an `of` value: the ring of a named ideal, else the most
    /// recent ring.
    fn ring_for_of(&self, v: &Value, span: Span) -> Result<Ring> {
        if let Value::Expr(Expr::Var(n)) = v {
            if let Some(Entry::Ideal { ring, .. }) = self.names.get(n) {
                return self.ring(ring, span);
            }
        }
        match &self.last_ring {
            Some(r) => self.ring(r, span),
            None => Err(span.error("no ring declared")),
        }
    }

    fn int_key(&self, task: &Task, key: &str) -> Result<Option<u64>> {
        match task.get(key) {
            None => Ok(None),
            Some(a) => match int_list(&a.value, a.span)?.as_slice() {
                [n] => Ok(Some(*n)),
                _ => Err(a.span.error(format!("`{key}` must be a single integer"))),
            },
        }
    }
}

fn eval(e: &Expr, ring: &Ring, span: Span) -> Result<Polynomial> {
    for v in e.identifiers() {
        if ring.var_index(&v).is_none() {
            return Err(span.error(format!("undeclared identifier `{v}`")));
        }
    }
    e.evaluate(ring).map_err(|err| span.error(err.to_string()))
}

fn poly(v: &Value, ring: &Ring, span: Span) -> Result<Polynomial> {
    match v {
        Value::Expr(e) => eval(e, ring, span),
        Value::List(items) if items.len() == 1 => eval(&items[0], ring, span),
        Value::List(_) => Err(span.error("expected a single polynomial")),
    }
}

fn var_name(v: &Value, span: Span) -> Result<String> {
    match v {
        Value::Expr(Expr::Var(n)) => Ok(n.clone()),
        _ => Err(span.error("expected an identifier")),
    }
}

fn int_list(v: &Value, span: Span) -> Result<Vec<u64>> {
    let one = |e: &Expr| match e {
        Expr::Int(n) => u64::try_from(n.clone()).map_err(|_| span.error(format!("integer {n} out of range"))),
        _ => Err(span.error("expected an integer")),
    };
    match v {
        Value::Expr(e) => Ok(vec![one(e)?]),
        Value::List(items) => items.iter().map(one).collect(),
    }
}
