use std::io::Write;
use std::process::Command;

use proptest::prelude::*;
use socle_lab::cli::{
    parse_session, parse_syntax, random_search, run_tasks, ReportDocument, RunFlags, SearchConfig, SearchTarget,
    EXIT_OK, EXIT_PARSE, EXIT_TASK_ERROR, SCHEMA_VERSION,
};
use socle_lab::FieldSpec;

const TOUR: &str = include_str!("../examples/sessions/tour.session");

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_socle-lab"))
}

fn session_file(text: &str) -> tempfile_path::TempPath {
    tempfile_path::TempPath::with_contents(text)
}

// a tiny self-cleaning temp file, enough for these tests
mod tempfile_path {
    use std::path::PathBuf;
    use std::sync::atomic::{AtomicUsize, Ordering};

    static NEXT: AtomicUsize = AtomicUsize::new(0);

    pub struct TempPath(pub PathBuf);

    impl TempPath {
        pub fn with_contents(text: &str) -> TempPath {
            let n = NEXT.fetch_add(1, Ordering::SeqCst);
            let path = std::env::temp_dir().join(format!("socle-lab-cli-{}-{n}.session", std::process::id()));
            let mut f = std::fs::File::create(&path).unwrap();
            super::Write::write_all(&mut f, text.as_bytes()).unwrap();
            TempPath(path)
        }
    }

    impl Drop for TempPath {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }
}

#[test]
fn tour_runs_clean() {
    let f = session_file(TOUR);
    let out = bin().arg("run").arg(&f.0).arg("--json").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let doc = ReportDocument::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(doc.schema, SCHEMA_VERSION);
    assert_eq!(doc.summary.tasks, 13);
    assert_eq!(doc.summary.failed, 0);
    let spc = &doc.tasks[0].result.as_ref().unwrap()["lengths"];
    assert_eq!((spc["h0"].as_i64(), spc["h1"].as_i64(), spc["delta"].as_i64()), (Some(1), Some(0), Some(1)));
}

#[test]
fn exit_codes() {
    let bad = session_file("ring R = Q[x, y];\ntask spc { Q = (x + y) z = x; }\n");
    assert_eq!(bin().arg("run").arg(&bad.0).output().unwrap().status.code(), Some(EXIT_PARSE));
    let missing = bin().args(["run", "/nonexistent/file.session"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_PARSE));
    // positive-dimensional T/Q: a task error, the rest of the file still runs
    let err = session_file("ring R = Q[x, y];\nideal I = (x*y);\nquotient T = R/I;\ntask spc { Q = (x); z = x; }\ntask length { of = (x, y); }\n");
    let out = bin().arg("run").arg(&err.0).arg("--json").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_TASK_ERROR));
    let doc = ReportDocument::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(doc.tasks[0].status, "error");
    assert_eq!(doc.tasks[1].status, "ok");
}

#[test]
fn precision_cap_from_environment() {
    let f = session_file(TOUR);
    let out = bin()
        .arg("run")
        .arg(&f.0)
        .env("SOCLE_LAB_MAX_PRECISION", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_TASK_ERROR));
    // the flag wins over the environment
    let out = bin()
        .arg("run")
        .arg(&f.0)
        .args(["--max-precision", "64"])
        .env("SOCLE_LAB_MAX_PRECISION", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}

#[test]
fn search_binary_is_deterministic() {
    let run = || {
        bin()
            .args(["search", "--seed", "11", "--count", "12", "--field", "F5", "--vars", "2", "--json"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(EXIT_OK));
    let strip = |o: &std::process::Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        for t in v["report"]["tasks"].as_array_mut().unwrap() {
            t.as_object_mut().unwrap().remove("timing_ms");
        }
        v
    };
    assert_eq!(strip(&a), strip(&b));
    let bad = bin().args(["search", "--field", "F6"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_PARSE));
}

#[test]
fn parallel_run_preserves_order() {
    let s = parse_session(TOUR).unwrap();
    let seq = run_tasks(&s, &RunFlags { max_precision: 64, jobs: None }).unwrap();
    let par = run_tasks(&s, &RunFlags { max_precision: 64, jobs: Some(4) }).unwrap();
    assert_eq!(seq.without_timing(), par.without_timing());
    let json = seq.to_json();
    assert_eq!(ReportDocument::from_json(&json).unwrap(), seq);
}

#[test]
fn library_search_matches_across_thread_counts() {
    let config = SearchConfig {
        seed: 5,
        count: 16,
        field: FieldSpec::Rationals,
        target: SearchTarget::Split,
        ..SearchConfig::default()
    };
    let a = random_search(&config);
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| random_search(&config));
    assert_eq!(a.document.without_timing(), b.document.without_timing());
    assert_eq!(a.skipped, b.skipped);
}

fn poly() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        (1i64..9).prop_map(|n| n.to_string()),
        (1i64..5, 1i64..4).prop_map(|(a, b)| format!("{a}/{b}")),
    ];
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), 1u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

fn session_text() -> impl Strategy<Value = String> {
    let field = prop_oneof![Just("Q"), Just("F5"), Just("F7")];
    let order = prop_oneof![Just(""), Just(" order lex"), Just(" order degrevlex"), Just(" order elim(1)")];
    let task = prop_oneof![
        (poly(), poly()).prop_map(|(q, z)| format!("task spc {{ Q = ({q}); z = {z}; }}")),
        (poly(), poly()).prop_map(|(a, b)| format!("task split {{ J = ({a}, {b}); }}")),
        poly().prop_map(|f| format!("task length {{ of = ({f}); }}")),
        (poly(), 1u32..9).prop_map(|(e, n)| format!("task idempotent {{ e = {e}; N = {n}; }}")),
        poly().prop_map(|q| format!("task frobenius {{ Q = ({q}); z = x; q = (1, 5); }}")),
    ];
    (field, order, poly(), prop::collection::vec(task, 0..4)).prop_map(|(f, o, g, tasks)| {
        format!(
            "ring R = {f}[x, y]{o};\nideal I = ({g});\nquotient T = R/I base (x);\n{}\n",
            tasks.join("\n")
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pretty_print_round_trips(text in session_text()) {
        let parsed = parse_syntax(&text).unwrap();
        let printed = parsed.to_string();
        prop_assert_eq!(parse_syntax(&printed).unwrap(), parsed.clone());
        prop_assert_eq!(parse_syntax(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn random_token_soup_never_panics(
        tokens in prop::collection::vec(
            prop_oneof![
                Just("ring"), Just("ideal"), Just("quotient"), Just("task"), Just("spc"), Just("R"),
                Just("="), Just(";"), Just("("), Just(")"), Just("{"), Just("}"), Just("["), Just("]"),
                Just("Q"), Just("F5"), Just("x"), Just("y"), Just(","), Just("+"), Just("^"), Just("/"),
                Just("2"), Just("order"), Just("lex"), Just("base"), Just("in"), Just("#c\n"), Just("\n"),
            ],
            0..40,
        )
    ) {
        let text = tokens.join(" ");
        if let Ok(s) = parse_session(&text) {
            let _ = run_tasks(&s, &RunFlags { max_precision: 8, jobs: None });
        }
    }

    #[test]
    fn arbitrary_bytes_never_panic(text in "\\PC{0,80}") {
        let _ = parse_session(&text);
    }
}
