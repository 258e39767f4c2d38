use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polymer-heaps").chain(args.iter().copied());
    let code = polymer_heaps_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out:?} {err:?}"));
    (code, value)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

fn numbers(v: &Value) -> Vec<u64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect()
}

#[test]
fn schroeder_coefficients() {
    let (code, v) = run_json(&["series", "--which", "S", "--order", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["name"], "S");
    assert_eq!(v["order"], 5);
    assert_eq!(
        strings(&v["coefficients"]),
        ["0", "1", "3", "11", "45", "197"]
    );
}

#[test]
fn big_coefficients_are_strings() {
    let (code, v) = run_json(&["series", "--which", "M", "--order", "40"]);
    assert_eq!(code, 0);
    let last = strings(&v["coefficients"]).pop().unwrap();
    assert!(last.len() > 20, "{last}");
}

#[test]
fn series_csv_and_slices() {
    let (code, out, _) = run(&[
        "series", "--which", "Dj", "--j", "1", "--order", "3", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,coefficient\n0,0\n1,0\n2,1\n3,6\n");
    let (code, _, err) = run(&["series", "--which", "S", "--j", "1", "--order", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("--j"));
}

#[test]
fn multi_directed_counts() {
    let (code, v) = run_json(&["enumerate", "--class", "multi", "--max-area", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["classes"][0]["class"], "multi");
    assert_eq!(numbers(&v["classes"][0]["counts"]), [1, 4, 20, 110]);
}

#[test]
fn side_by_side_counts_form_a_chain() {
    let (code, v) = run_json(&["enumerate", "--max-area", "6"]);
    assert_eq!(code, 0);
    let classes = v["classes"].as_array().unwrap();
    let by_name = |name: &str| {
        numbers(
            &classes
                .iter()
                .find(|c| c["class"] == name)
                .unwrap_or_else(|| panic!("missing {name}"))["counts"],
        )
    };
    let chain = ["half", "directed", "multi", "all"].map(by_name);
    for w in chain.windows(2) {
        assert!(w[0].iter().zip(&w[1]).all(|(a, b)| a <= b));
    }
    assert_eq!(by_name("multi"), by_name("connected-heaps"));
    assert_eq!(by_name("directed"), [1, 4, 19, 96, 501, 2668]);
}

#[test]
fn objects_are_listed() {
    let (code, v) = run_json(&[
        "enumerate",
        "--class",
        "directed",
        "--max-area",
        "2",
        "--emit-objects",
    ]);
    assert_eq!(code, 0);
    let objects = &v["classes"][0]["objects"];
    assert_eq!(objects[0], serde_json::json!([[[0, 0]]]));
    assert_eq!(objects[1].as_array().unwrap().len(), 4);
    let (code, v) = run_json(&[
        "enumerate",
        "--class",
        "connected-heaps",
        "--max-area",
        "1",
        "--emit-objects",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        v["classes"][0]["objects"],
        serde_json::json!([[[[0, 1, 0]]]])
    );
    let (code, _, _) = run(&[
        "enumerate",
        "--class",
        "multi",
        "--max-area",
        "2",
        "--emit-objects",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn nordic_suite_passes() {
    let (code, v) = run_json(&["verify", "--suite", "nordic", "--max-area", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert!(v["suites"][0]["checked"].as_u64().unwrap() > 0);
}

#[test]
fn suites_are_reported_by_name() {
    let (code, out, _) = run(&[
        "verify",
        "--suite",
        "oracle",
        "--suite",
        "ak",
        "--suite",
        "lemma-hd",
        "--suite",
        "bijections",
        "--max-area",
        "5",
        "--order",
        "8",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let names: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(names, ["ak", "bijections", "lemma-hd", "oracle"]);
}

#[test]
fn usage_errors() {
    let (code, out, err) = run(&[
        "enumerate",
        "--class",
        "multi",
        "--max-area",
        "4",
        "--bogus",
    ]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("--bogus"));
    assert_eq!(run(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(
        run(&["enumerate", "--class", "nope", "--max-area", "3"]).0,
        2
    );
    assert_eq!(run(&["enumerate", "--max-area", "0"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(
        run(&["asymptotics", "--which", "directed", "--n", "50"]).0,
        2
    );
    assert_eq!(run(&["verify", "--suite", "ak", "--order", "61"]).0, 2);
}

#[test]
fn resource_guards() {
    let (code, _, err) = run(&["enumerate", "--max-area", "15"]);
    assert_eq!(code, 2);
    assert!(err.contains("--force"));
    assert_eq!(run(&["series", "--which", "S", "--order", "5001"]).0, 2);
    assert_eq!(
        run(&["asymptotics", "--which", "multi", "--n", "6000"]).0,
        2
    );
}

#[test]
fn help_succeeds() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("enumerate"));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["enumerate", "--max-area", "5", "--format", "csv"];
    assert_eq!(run(&args), run(&args));
    let args = [
        "verify",
        "--suite",
        "bijections",
        "--suite",
        "nordic",
        "--max-area",
        "5",
    ];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("polymer-heaps-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["series", "--which", "R", "--order", "3", "--output", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(strings(&v["coefficients"]), ["0", "2", "4", "14"]);
}

#[test]
fn constants_report() {
    let (code, v) = run_json(&["asymptotics", "--which", "constants", "--n", "60"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let mu = v["constants"]["mu"].as_f64().unwrap();
    assert!((6.475..6.476).contains(&mu));
    for e in v["entries"].as_array().unwrap() {
        for key in ["constant", "computed", "target", "tolerance", "pass"] {
            assert!(e.get(key).is_some(), "{e}");
        }
    }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polymer-heaps"))
}

#[test]
fn binary_exit_codes() {
    let ok = binary()
        .args(["verify", "--suite", "nordic", "--max-area", "5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = binary().args(["series", "--order"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
    assert!(bad.stdout.is_empty());
}

#[test]
fn thread_cap() {
    let capped = binary()
        .env("POLYMER_HEAPS_THREADS", "1")
        .args([
            "enumerate",
            "--class",
            "all",
            "--max-area",
            "6",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    let free = binary()
        .args([
            "enumerate",
            "--class",
            "all",
            "--max-area",
            "6",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(0));
    assert_eq!(capped.stdout, free.stdout);
    let invalid = binary()
        .env("POLYMER_HEAPS_THREADS", "zero")
        .args(["series", "--which", "S", "--order", "2"])
        .output()
        .unwrap();
    assert_eq!(invalid.status.code(), Some(2));
}
