use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn bdq(args: &[&str], workers: Option<usize>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bdq"));
    cmd.args(args);
    match workers {
        Some(n) => cmd.env("BDQ_WORKERS", n.to_string()),
        None => cmd.env_remove("BDQ_WORKERS"),
    };
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = bdq(args, None);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

const A2_TRIPLE: &str = r#"{"type":"A2","gamma1":[1],"gamma2":[2],"tau":{"1":2}}"#;
const E6_TRIPLE: &str = r#"{"type":"E6","gamma1":[1,4],"gamma2":[2,5],"tau":{"1":2,"4":5}}"#;
const E6_TWISTABLE: &str = r#"{"type":"E6","gamma1":[1],"gamma2":[5],"tau":{"1":5}}"#;

/// One invocation per subcommand, paired with the schema its JSON output follows.
fn cases() -> Vec<(Vec<String>, &'static str)> {
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        (v(&["triples", "enumerate", "--type", "E6", "--nonempty", "--count"]), "triples"),
        (v(&["triples", "enumerate", "--type", "D4", "--nonempty"]), "triples"),
        (v(&["triples", "enumerate", "--type", "A4", "--orbits"]), "triples"),
        (v(&["centralizer", "--type", "E6", "--lattice", "P", "--all"]), "report-row"),
        (v(&["centralizer", "--type", "E6", "--lattice", "P", "--triple", E6_TRIPLE]), "report-row"),
        (v(&["centralizer", "--type", "A2", "--lattice", &data("a2_lattice.json")]), "report-row"),
        (v(&["report", "exceptional", "--type", "E6"]), "report-row"),
        (v(&["twisted", "check", "--type", "E6", "--triple", E6_TWISTABLE]), "twist-check"),
        (v(&["twisted", "check", "--type", "E6", "--triple", E6_TRIPLE]), "twist-check"),
        (v(&["twisted", "list", "--type", "E6"]), "triples"),
        (v(&["twisted", "list", "--type", "D7"]), "triples"),
        (v(&["rmatrix", "verify", "--n", "3", "--triple", A2_TRIPLE]), "rmatrix-verify"),
        (v(&["rmatrix", "verify", "--n", "3", "--triple", A2_TRIPLE, "--r0", &data("r0_a2.json")]), "rmatrix-verify"),
        (v(&["coset", "reduce", "--n", "2", "--matrix", &data("gl2.json")]), "coset"),
        (v(&["coset", "reduce", "--n", "3", "--matrix", &data("gl3.json")]), "coset"),
        (v(&["coset", "same", "--form1", "1,2,t^-1+t^-2", "--form2", "1,2,0"]), "coset"),
        (v(&["orders", "enumerate", "--algebra", "K3", "--index", "6"]), "orders"),
        (v(&["orders", "enumerate", "--algebra", "KL", "--index", "5"]), "orders"),
        (v(&["orders", "classify", "--algebra", "K2", "--basis", &data("k2_basis.json")]), "orders"),
        (v(&["orders", "classify", "--algebra", "L", "--basis", &data("l_basis.json")]), "orders"),
        (v(&["cubic", "table", "--form", "1,0,-t,0"]), "cubic"),
        (v(&["cubic", "discriminant", "--form", "1,0,0,t"]), "cubic"),
        (v(&["cubic", "classify", "--form", "0,1,-1,0"]), "cubic"),
        (v(&["cubic", "lc", "--form", "t,t,t,t", "--oracle-index", "1"]), "cubic"),
    ]
}

fn validator(name: &str) -> jsonschema::Validator {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas");
    let mut opts = jsonschema::options();
    let mut main = None;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let id = schema["$id"].as_str().unwrap().to_string();
        if path.file_name().unwrap().to_string_lossy() == format!("{name}.schema.json") {
            main = Some(schema.clone());
        }
        opts.with_resource(id, jsonschema::Resource::from_contents(schema).unwrap());
    }
    opts.build(&main.expect("schema exists")).unwrap()
}

#[test]
fn json_outputs_follow_the_schemas() {
    for (args, schema) in cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = ok(&args);
        let v = validator(schema);
        let lines: Vec<&str> = out.lines().collect();
        assert!(!lines.is_empty(), "{args:?}");
        for line in lines {
            let doc: Value = serde_json::from_str(line).unwrap();
            let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{args:?} against {schema}: {errors:?}");
        }
    }
}

#[test]
fn output_is_identical_across_worker_counts() {
    for (args, _) in cases() {
        for format in ["json", "csv", "text"] {
            let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
            a.extend(["--format", format]);
            let one = bdq(&a, Some(1));
            let four = bdq(&a, Some(4));
            let again = bdq(&a, Some(4));
            assert_eq!(one.0, 0, "{a:?}: {}", one.2);
            assert_eq!(one, four, "{a:?}");
            assert_eq!(four, again, "{a:?}");
        }
    }
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["triples", "enumerate", "--type", "E6", "--nonempty", "--count"]).trim(), "406");
    assert_eq!(ok(&["cubic", "discriminant", "--form", "0,1,-1,0", "--format", "text"]).trim(), "1");
    assert_eq!(ok(&["coset", "reduce", "--n", "2", "--matrix", &data("id2.json")]).trim(), r#"{"i":0}"#);
}

#[test]
fn exit_codes() {
    let (code, _, err) = bdq(&["frobnicate"], None);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"), "{err}");
    let (code, _, _) = bdq(&["triples", "enumerate", "--type", "Z3"], None);
    assert_eq!(code, 2);
    let (code, _, _) = bdq(&["cubic", "lc", "--form", "1,2,3"], None);
    assert_eq!(code, 2);
    let (code, _, _) = bdq(&["coset", "reduce", "--n", "2", "--matrix", "/nonexistent/m.json"], None);
    assert_eq!(code, 2);
    let not_admissible = r#"{"type":"A2","gamma1":[1,2],"gamma2":[2,1],"tau":{"1":2,"2":1}}"#;
    let (code, _, _) = bdq(&["twisted", "check", "--type", "A2", "--triple", not_admissible], None);
    assert_eq!(code, 2);
    let (code, _, err) = bdq(&["triples", "enumerate", "--type", "A9", "--count"], None);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = bdq(&["centralizer", "--type", "A9", "--lattice", "Q"], None);
    assert_eq!(code, 3);
    let (code, out, _) = bdq(&["triples", "enumerate", "--type", "A9", "--guard", "9", "--nonempty", "--unordered", "--count"], None);
    assert_eq!(code, 0);
    assert!(out.trim().parse::<usize>().unwrap() > 0);
    let (code, _, _) = bdq(&["report", "exceptional", "--type", "E7", "--guard", "6"], None);
    assert_eq!(code, 3);
    let (code, out, _) = bdq(&["--help"], None);
    assert_eq!(code, 0);
    assert!(out.contains("triples"));
}

#[test]
fn text_and_csv_shapes() {
    let text = ok(&["report", "exceptional", "--type", "E6", "--format", "text"]);
    assert_eq!(text.lines().count(), 407);
    let csv = ok(&["report", "exceptional", "--type", "E6", "--format", "csv"]);
    let disconnected = csv.lines().skip(1).filter(|l| l.ends_with(",3")).count();
    assert_eq!(disconnected, 70);
    assert_eq!(ok(&["cubic", "classify", "--form", "1,0,-t,0", "--format", "text"]).trim(), "LPlusK");
    assert_eq!(ok(&["triples", "enumerate", "--type", "E6", "--nonempty", "--unordered", "--count"]).trim(), "203");
}
