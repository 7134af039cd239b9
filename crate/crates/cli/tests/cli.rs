use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn corpus() -> String {
    root()
        .join("corpus/ecosystem")
        .to_string_lossy()
        .into_owned()
}

fn aliases() -> String {
    root()
        .join("corpus/aliases.txt")
        .to_string_lossy()
        .into_owned()
}

fn svc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svc"))
        .args(args)
        .env_remove("SVC_ALIASES")
        .output()
        .expect("svc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Compares against a committed golden file; `SVC_UPDATE_GOLDENS=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var("SVC_UPDATE_GOLDENS").as_deref() == Ok("1") {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| {
        panic!(
            "missing golden {}; rerun with SVC_UPDATE_GOLDENS=1",
            path.display()
        )
    });
    assert!(expected == actual, "output differs from golden {name}");
}

fn schema_validator() -> jsonschema::Validator {
    let text = fs::read_to_string(root().join("schema/svc-report-v1.schema.json")).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_schema_valid(json: &str) {
    let value: serde_json::Value = serde_json::from_str(json).unwrap();
    let v = schema_validator();
    let errors: Vec<String> = v.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema errors: {errors:?}");
}

#[test]
fn validate_valid_corpus_is_silent() {
    let o = svc(&["validate", &corpus()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert!(o.stderr.is_empty());
}

#[test]
fn validate_bad_label_gives_one_diagnostic() {
    let o = svc(&["validate", &fixture("bad_label.svc")]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    let diags: Vec<&str> = err
        .lines()
        .filter(|l| l.contains("UNKNOWN_LABEL"))
        .collect();
    assert_eq!(diags.len(), 1, "{err}");
    assert!(
        diags[0].ends_with("bad_label.svc:4:17: UNKNOWN_LABEL: unknown label `invoice`"),
        "{err}"
    );
}

#[test]
fn validate_reports_validation_diagnostics_with_position() {
    let o = svc(&["validate", &fixture("payment_self_loop.svc")]);
    assert_eq!(code(&o), 1);
    assert!(
        stderr(&o).contains("payment_self_loop.svc:3:3: SELF_LOOP_NON_PROCESS:"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn missing_file_is_io_error() {
    let o = svc(&["validate", "/nonexistent/model.svc"]);
    assert_eq!(code(&o), 2);
    for args in [
        vec!["report", "/nonexistent/model.svc"],
        vec!["export", "/nonexistent/model.svc"],
        vec!["query", "payments", "/nonexistent/model.svc"],
        vec!["robustness", "/nonexistent/model.svc"],
        vec!["fmt", "/nonexistent/model.svc"],
    ] {
        assert_eq!(code(&svc(&args)), 2, "{args:?}");
    }
}

#[test]
fn missing_alias_file_is_io_error() {
    let two = fixture("two_node.svc");
    let o = svc(&["report", &two, "--alias", "/nonexistent/aliases.txt"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bad_alias_file_is_domain_error() {
    let two = fixture("two_node.svc");
    let o = svc(&["report", &two, "--alias", &fixture("bad_alias.txt")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn alias_path_from_environment() {
    let with_flag = svc(&["report", &corpus(), "--alias", &aliases()]);
    let from_env = Command::new(env!("CARGO_BIN_EXE_svc"))
        .args(["report", &corpus()])
        .env("SVC_ALIASES", aliases())
        .output()
        .unwrap();
    assert_eq!(code(&from_env), 0);
    assert_eq!(with_flag.stdout, from_env.stdout);
    let without = svc(&["report", &corpus()]);
    assert_ne!(with_flag.stdout, without.stdout);
}

#[test]
fn kind_conflict_exits_one() {
    let o = svc(&[
        "report",
        &fixture("conflict_individual.svc"),
        &fixture("conflict_institution.svc"),
    ]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(
        err.contains("`owner`")
            && err.contains("Owner as person")
            && err.contains("Owner as company"),
        "{err}"
    );
}

#[test]
fn invalid_model_blocks_every_command() {
    let bad = fixture("bad_label.svc");
    for args in [
        vec!["report", bad.as_str()],
        vec!["export", bad.as_str()],
        vec!["query", "rps", bad.as_str()],
        vec!["robustness", bad.as_str()],
        vec!["fmt", bad.as_str()],
    ] {
        assert_eq!(code(&svc(&args)), 1, "{args:?}");
    }
}

#[test]
fn corpus_report_json_matches_golden_and_schema() {
    let o = svc(&["report", &corpus(), "--alias", &aliases()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let json = stdout(&o);
    assert_schema_valid(&json);
    golden("corpus_report.json", &json);
}

#[test]
fn corpus_report_text_matches_golden() {
    let o = svc(&[
        "report",
        &corpus(),
        "--alias",
        &aliases(),
        "--format",
        "text",
    ]);
    assert_eq!(code(&o), 0);
    golden("corpus_report.txt", &stdout(&o));
}

#[test]
fn report_is_byte_stable() {
    let args = ["report", &corpus(), "--alias", &aliases()];
    let first = svc(&args).stdout;
    for _ in 0..3 {
        assert_eq!(svc(&args).stdout, first);
    }
}

#[test]
fn report_sections_are_populated() {
    let o = svc(&["report", &corpus(), "--alias", &aliases()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["corpus"]["model_count"], 35);
    assert_eq!(v["corpus"]["size_stats"]["max"], 10);
    assert_eq!(v["corpus"]["size_stats"]["min"], 2);
    for key in [
        "avg_degree",
        "density",
        "avg_clustering",
        "assortativity",
        "gamma",
    ] {
        assert!(v["metrics"][key].is_number(), "{key}");
    }
    assert!(!v["queries"]["payments"].as_array().unwrap().is_empty());
    assert!(!v["queries"]["sinks"].as_array().unwrap().is_empty());
    assert!(v["rps"]["ecosystem_rps"].is_number());
    let components = v["ecosystem"]["component_sizes"].as_array().unwrap();
    assert_eq!(v["metrics"]["n_nodes"], components[0]);
}

#[test]
fn every_fixture_report_is_schema_valid() {
    for name in [
        "pay_twice.svc",
        "unpaid_generator.svc",
        "timed_chain.svc",
        "two_node.svc",
        "conflict_individual.svc",
        "conflict_institution.svc",
    ] {
        let o = svc(&["report", &fixture(name)]);
        assert_eq!(code(&o), 0, "{name}: {}", stderr(&o));
        assert_schema_valid(&stdout(&o));
    }
}

#[test]
fn schema_rejects_malformed_reports() {
    let o = svc(&["report", &fixture("two_node.svc")]);
    let good: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let v = schema_validator();
    assert!(v.is_valid(&good));
    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("rps");
    assert!(!v.is_valid(&missing));
    let mut extra = good.clone();
    extra["metrics"]["bonus"] = serde_json::json!(1);
    assert!(!v.is_valid(&extra));
    let mut wrong = good;
    wrong["metrics"]["density"] = serde_json::json!("high");
    assert!(!v.is_valid(&wrong));
}

#[test]
fn two_node_report() {
    let o = svc(&["report", &fixture("two_node.svc")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["metrics"]["n_nodes"], 2);
    assert_eq!(v["metrics"]["n_edges"], 1);
    assert_eq!(v["metrics"]["avg_degree"], 1.0);
    assert_eq!(v["metrics"]["density"], 1.0);
    assert!(v["metrics"]["assortativity"].is_null());
}

#[test]
fn top_limits_centrality_lists() {
    let o = svc(&["report", &corpus(), "--top", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["queries"]["central"]["by_degree"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
    assert_eq!(
        v["queries"]["central"]["by_betweenness"]
            .as_array()
            .unwrap()
            .len(),
        3
    );

    let o = svc(&["report", &fixture("two_node.svc"), "--top", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["queries"]["central"]["by_degree"]
            .as_array()
            .unwrap()
            .len(),
        2
    );

    let o = svc(&["query", "central", &corpus(), "--top", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["by_degree"].as_array().unwrap().len(), 3);
}

#[test]
fn k_min_changes_gamma() {
    let gamma = |k: &str| {
        let o = svc(&["report", &corpus(), "--k-min", k]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["metrics"]["gamma"].as_f64().unwrap()
    };
    assert_ne!(gamma("1"), gamma("2"));
}

#[test]
fn query_payments_pay_twice() {
    let o = svc(&["query", "payments", &fixture("pay_twice.svc"), "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["stakeholder"], "shop");
    assert_eq!(v[0]["count"], 2);
    let text = stdout(&svc(&["query", "payments", &fixture("pay_twice.svc")]));
    assert_eq!(text.lines().nth(1).unwrap().trim(), "2  shop");
}

#[test]
fn query_rps_unpaid_generator() {
    let o = svc(&["query", "rps", &fixture("unpaid_generator.svc"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["per_stakeholder"]["resident"]["rps"], 0.0);
    assert!(v["per_stakeholder"]["collector"]["rps"].is_null());
    let text = stdout(&svc(&["query", "rps", &fixture("unpaid_generator.svc")]));
    assert!(
        text.lines()
            .any(|l| l.trim_start().starts_with("0.0000") && l.ends_with("resident")),
        "{text}"
    );
}

#[test]
fn query_trace_timed_chain() {
    let o = svc(&[
        "query",
        "trace",
        &fixture("timed_chain.svc"),
        "--from",
        "R",
        "--kinds",
        "P",
        "--json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["stakeholder"], "a");
    assert_eq!(rows[0]["path"].as_array().unwrap().len(), 1);
    assert_eq!(rows[1]["stakeholder"], "b");
    let path = rows[1]["path"].as_array().unwrap();
    assert_eq!(path.len(), 2);
    assert_eq!(path[1]["src"], "a");
    assert_eq!(path[1]["label"], "data(P)");
    assert_eq!(path[1]["timestep"], "2");

    let text = stdout(&svc(&[
        "query",
        "trace",
        &fixture("timed_chain.svc"),
        "--from",
        "R",
        "--kinds",
        "P",
    ]));
    assert_eq!(
        text,
        "a: r -[data(P) @1]-> a\nb: r -[data(P) @1]-> a -[data(P) @2]-> b\n"
    );
}

#[test]
fn query_trace_unknown_stakeholder() {
    let o = svc(&[
        "query",
        "trace",
        &fixture("timed_chain.svc"),
        "--from",
        "Nobody",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("unknown stakeholder `nobody`"));
}

#[test]
fn query_sinks_and_exposure() {
    let o = svc(&["query", "sinks", &fixture("timed_chain.svc"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!(["c"]));
    let o = svc(&["query", "exposure", &fixture("timed_chain.svc"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let total: u64 = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 3);
}

#[test]
fn queries_are_deterministic() {
    for q in ["payments", "exposure", "sinks", "rps", "central"] {
        for json in [false, true] {
            let mut args = vec!["query", q];
            let c = corpus();
            args.push(&c);
            if json {
                args.push("--json");
            }
            let a = svc(&args);
            assert_eq!(code(&a), 0, "{q}");
            assert_eq!(a.stdout, svc(&args).stdout, "{q}");
        }
    }
}

#[test]
fn export_dot_shapes_and_penwidth() {
    let o = svc(&["export", &fixture("two_node.svc")]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert_eq!(dot.matches("shape=box").count(), 1);
    assert_eq!(dot.matches("shape=ellipse").count(), 1);

    let o = svc(&["export", &fixture("pay_twice.svc")]);
    let dot = stdout(&o);
    assert!(
        dot.contains("\"ann\" -> \"shop\" [label=\"$\", penwidth=1];"),
        "{dot}"
    );
}

#[test]
fn export_to_file_and_graphml() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eco.dot");
    let o = svc(&["export", &corpus(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let written = fs::read_to_string(&out).unwrap();
    assert_eq!(written, stdout(&svc(&["export", &corpus()])));

    let o = svc(&["export", &corpus(), "--format", "graphml"]);
    let xml = stdout(&o);
    assert!(xml.starts_with("<?xml"));
    let report: serde_json::Value =
        serde_json::from_slice(&svc(&["report", &corpus()]).stdout).unwrap();
    assert_eq!(
        xml.matches("<edge ").count() as u64,
        report["ecosystem"]["edge_count"].as_u64().unwrap()
    );

    let unwritable = dir.path().join("missing/dir/eco.dot");
    assert_eq!(
        code(&svc(&[
            "export",
            &corpus(),
            "--out",
            unwritable.to_str().unwrap()
        ])),
        2
    );
}

#[test]
fn robustness_csv() {
    let o = svc(&["robustness", &fixture("pay_twice.svc")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "fraction_removed,lcc_fraction");
    assert_eq!(lines.len(), 1 + 4);
    assert_eq!(lines[1], "0,1");
    // The shop is the hub; removing it leaves isolated customers.
    assert_eq!(lines[2], format!("{},{}", 1.0 / 3.0, 1.0 / 3.0));
    assert_eq!(lines[3], format!("{},{}", 2.0 / 3.0, 1.0 / 3.0));
    assert_eq!(lines[4], "1,0");
}

#[test]
fn robustness_random_is_seeded() {
    let run = |seed: &str| {
        stdout(&svc(&[
            "robustness",
            &corpus(),
            "--strategy",
            "random",
            "--seed",
            seed,
        ]))
    };
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
}

#[test]
fn fmt_check_and_rewrite() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.svc");
    fs::write(&path, "business \"M\" {\nnode   B : institution\n  node A:individual\nedge A->B : payment,service @1\n}\n").unwrap();
    let p = path.to_str().unwrap();

    let o = svc(&["fmt", "--check", p]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("m.svc"));

    assert_eq!(code(&svc(&["fmt", p])), 0);
    let formatted = fs::read_to_string(&path).unwrap();
    assert_eq!(
        formatted,
        "business \"M\" {\n  node A : individual\n  node B : institution\n  edge A -> B : service @1\n  edge A -> B : payment @1\n}\n"
    );
    assert_eq!(code(&svc(&["fmt", "--check", p])), 0);
    assert_eq!(code(&svc(&["fmt", p])), 0);
    assert_eq!(fs::read_to_string(&path).unwrap(), formatted);
}

#[test]
fn usage_errors() {
    let two = fixture("two_node.svc");
    assert_ne!(code(&svc(&["report", &two, "--top", "0"])), 0);
    assert_ne!(code(&svc(&["report", &two, "--format", "yaml"])), 0);
    assert_ne!(code(&svc(&["frobnicate"])), 0);
}
