use std::path::PathBuf;

use freecurves_cli::{exit, run, Output};
use serde_json::Value;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("freecurves").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = cli(&full);
    assert_eq!(out.code, exit::OK, "{args:?}: {}", out.stderr);
    let mut v: Value = serde_json::from_str(&out.stdout).unwrap();
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

/// Compares against `tests/golden/<name>.json`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let got = serde_json::to_string_pretty(&json(args)).unwrap() + "\n";
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", &format!("{name}.json")]
        .iter()
        .collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "report for {name} drifted from {}", path.display());
}

#[test]
fn classify_goldens() {
    for name in [
        "triangle",
        "two_lines",
        "pencil",
        "near_pencil",
        "four_generic",
        "five_lines",
        "conic",
        "conic_tangent",
        "tangent_conic",
    ] {
        golden(&format!("classify_{name}"), &["classify", &corpus(&format!("{name}.curve"))]);
    }
}

#[test]
fn classify_fields() {
    let v = json(&["classify", "[x, y, z]"]);
    assert_eq!(v["classification"]["kind"], "free");
    assert_eq!(v["classification"]["exponents"], serde_json::json!(["1", "1"]));
    assert_eq!(v["chern"]["c2"], "1");
    let v = json(&["classify", "[x, y, z, x+y+z]"]);
    assert_eq!(v["classification"]["kind"], "plus_one_generated");
    assert_eq!(v["classification"]["level"], "2");
    assert_eq!(v["classification"]["defect"], "1");
    assert_eq!(v["chern"]["c2"], "3");
    let v = json(&["classify", "x^2+y^2+z^2"]);
    assert_eq!(v["classification"]["label"], "POG(1,1;1)");
}

#[test]
fn splitting_goldens() {
    golden(
        "splitting_four_generic",
        &["splitting", &corpus("four_generic.curve"), "--line", "x+y", "--generic", "10", "--seed", "7"],
    );
    golden("splitting_triangle", &["splitting", "[x,y,z]", "--generic", "10", "--seed", "7"]);
    golden("splitting_conic", &["splitting", &corpus("conic.curve"), "--generic", "5"]);
    let v = json(&["splitting", "[x,y,z,x+y+z]", "--line", "x+y"]);
    assert_eq!(v["splitting"][0]["a"], "1");
    assert_eq!(v["splitting"][0]["b"], "2");
    assert_eq!(v["splitting"][0]["coker_dim"], "1");
    let v = json(&["splitting", "[x,y,z,x+y+z]", "--generic", "10"]);
    assert_eq!(v["generic"]["even_degree_exception"], true);
}

#[test]
fn verify_triple_goldens() {
    golden("triple_two_lines_z", &["verify-triple", &corpus("two_lines.curve"), "--line", "z"]);
    golden("triple_four_generic_x", &["verify-triple", &corpus("four_generic.curve"), "--line", "x"]);
    golden("triple_four_generic_xy", &["verify-triple", &corpus("four_generic.curve"), "--line", "x+y"]);
    golden("triple_tangent_conic_z", &["verify-triple", &corpus("tangent_conic.curve"), "--line", "z"]);
}

#[test]
fn scan_goldens() {
    golden("scan_triangle_addition", &["scan", &corpus("triangle.curve"), "--mode", "addition"]);
    golden("scan_near_pencil_deletion", &["scan", &corpus("near_pencil.curve"), "--mode", "deletion"]);
    golden("scan_four_generic_addition", &["scan", &corpus("four_generic.curve"), "--mode", "addition"]);
    let v = json(&["scan", "[x,y,z,x+y+z]", "--mode", "addition"]);
    assert_eq!(v["summary"]["certifying"], "0");
    let v = json(&["scan", "[x,y,z,x+y]", "--mode", "deletion"]);
    assert_eq!(v["summary"]["lines"], "4");
    assert_eq!(v["summary"]["certifying"], "4");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["classify", "x*y +"]).code, exit::PARSE);
    assert_eq!(cli(&["classify", "x+y^2"]).code, exit::PARSE);
    assert_eq!(cli(&["classify", "--bogus"]).code, exit::PARSE);
    assert_eq!(cli(&["classify", "x^2*y"]).code, exit::NOT_REDUCED);
    assert_eq!(cli(&["classify", "[x, y, x]"]).code, exit::NOT_REDUCED);
    assert_eq!(cli(&["splitting", "x*y*z*(x+y+z)*(x+2*y+3*z)"]).code, exit::UNSUPPORTED);
    assert_eq!(cli(&["verify-triple", "[x,y]", "--line", "x", "--direction", "addition"]).code, exit::MISMATCH);
    assert_eq!(cli(&["verify-triple", "[x,y]", "--line", "x+y", "--direction", "deletion"]).code, exit::MISMATCH);
    // a wrong eps makes the predicted branch fail, which must surface as a nonzero exit
    let out = cli(&["verify-triple", "[x,y]", "--line", "z", "--eps", "1", "--theorems", "addition"]);
    assert_eq!(out.code, exit::INTERNAL);
    assert!(out.stdout.contains("REFUTED"));
    assert_eq!(cli(&["--help"]).code, exit::OK);
}

#[test]
fn reports_are_deterministic() {
    let args = ["--format", "json", "scan", "[x,y,z]", "--mode", "addition", "--seed", "11"];
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_str(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    assert_eq!(strip(cli(&args)), strip(cli(&args)));
    let text = ["scan", "[x,y,z]", "--mode", "addition", "--seed", "11"];
    assert_eq!(cli(&text).stdout, cli(&text).stdout);
}

#[test]
fn eps_from_curve_file_and_flag() {
    let v = json(&["verify-triple", &corpus("conic_tangent.curve"), "--line", "z"]);
    assert_eq!(v["triple"]["eps_source"], "user_supplied");
    let v = json(&["verify-triple", "[x,y]", "--line", "z", "--eps", "0"]);
    assert_eq!(v["triple"]["eps_source"], "user_supplied");
    let v = json(&["verify-triple", "[x,y]", "--line", "z"]);
    assert_eq!(v["triple"]["eps_source"], "assumed_zero_quasihomogeneous");
}

#[test]
fn generated_arrangements_reload() {
    for seed in 0..4 {
        let out = cli(&["generate", "--lines", "6", "--seed", &seed.to_string()]);
        assert_eq!(out.code, exit::OK);
        let spec = freecurves_cli::curvefile::parse_curve_file(&out.stdout).unwrap();
        assert_eq!(spec.polynomial().degree(), 6);
        assert_eq!(out.stdout, cli(&["generate", "--lines", "6", "--seed", &seed.to_string()]).stdout);
    }
    assert_eq!(cli(&["generate", "--lines", "9"]).code, exit::PARSE);
    let v = json(&["generate", "--lines", "3", "--seed", "1"]);
    assert_eq!(v["lines"].as_array().unwrap().len(), 3);
}
