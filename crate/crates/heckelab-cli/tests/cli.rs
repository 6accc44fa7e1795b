use std::process::{Command, Output};

use heckelab_cli::report::DecompositionReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckelab")).args(args).output().expect("spawn heckelab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn decompose(args: &[&str]) -> DecompositionReport {
    let mut full = vec!["decompose"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn decompose_reports_factor_dimensions() {
    let r = decompose(&["--type", "C2", "--q", "zeta:6", "--char", "t_{q^2,1}"]);
    assert_eq!(r.class_dims, vec![1, 1, 3, 3]);
    assert_eq!(r.factors.iter().map(|f| f.dim * f.multiplicity).sum::<usize>(), 8);

    let r = decompose(&["--type", "A1", "--q", "zeta:4", "--char", "t_{-1}"]);
    assert_eq!(r.class_dims, vec![2]);

    let r = decompose(&["--type", "G2", "--q", "zeta:8", "--char", "t_{1,q^2}"]);
    assert_eq!(r.class_dims, vec![1, 1, 2, 3, 3]);
}

#[test]
fn decompose_json_round_trips() {
    let o = run(&["decompose", "--type", "A2", "--char", "t_{q^2,1}"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let r: DecompositionReport = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&r).unwrap();
    assert_eq!(again.trim_end(), text.trim_end());
    assert_eq!(r.class_dims, vec![3, 3]);
    assert_eq!(r.orbit_size, 3);
    assert_eq!(r.stabilizer_order, 2);
}

#[test]
fn explicit_specialization() {
    let r = decompose(&["--type", "A2", "--weight", "a1=z,a2=1", "--specialize", "z=zeta(7)"]);
    assert_eq!(r.class_dims, vec![6]);
    assert!(r.weight.certified);
    // z = q^2 leaves the family and gains a pole
    let r = decompose(&["--type", "A2", "--weight", "a1=z,a2=1", "--specialize", "z=q^2"]);
    assert!(!r.weight.certified);
    assert_eq!(r.class_dims, vec![3, 3]);
}

#[test]
fn input_errors_exit_with_one() {
    for args in [
        &["decompose", "--type", "C2", "--char", "t_{nope}"][..],
        &["decompose", "--type", "B7", "--char", "t_{1,1}"][..],
        &["decompose", "--type", "A2", "--weight", "a1=z,a2=1", "--specialize", "z=2"][..],
        &["decompose", "--type", "A2", "--weight", "a1=z,a2=1", "--specialize", "u=1"][..],
        &["classify", "--type", "A2", "--q", "zeta:0"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn free_parameters_are_specialized_automatically() {
    let r = decompose(&["--type", "A2", "--weight", "a1=z,a2=1"]);
    assert!(r.weight.certified);
    assert_eq!(r.weight.specialization.len(), 1);
    assert_eq!(r.class_dims, vec![6]);
}

#[test]
fn clap_help_still_succeeds() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("decompose"));
}

#[test]
fn classify_lists_the_inventory() {
    let o = run(&["classify", "--type", "A2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 6);

    let o = run(&["classify", "--type", "C2", "--q", "zeta:4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entry = v["entries"].as_array().unwrap().iter().find(|e| e["name"] == "t_{q^2,1}").unwrap();
    assert_eq!(entry["aliases"], serde_json::json!(["t_{-1,1}"]));
}

#[test]
fn ascii_diagram_places_one_dot_per_dimension() {
    let o = run(&["diagram", "--type", "A2", "--char", "t_{1,z}"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let sectors: Vec<&str> = text
        .lines()
        .skip_while(|l| !l.starts_with("sectors:"))
        .skip(1)
        .take_while(|l| l.starts_with(' '))
        .collect();
    assert_eq!(sectors.len(), 3);
    for s in &sectors {
        assert_eq!(s.matches('@').count(), 2, "{s}");
    }
    assert!(text.contains("z-line"));
    assert_eq!(text.matches("factor-").count(), 1);
}

#[test]
fn svg_diagram_marks_factors_and_lines() {
    let dir = std::env::temp_dir().join(format!("heckelab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.svg");
    let o = run(&["diagram", "--type", "A2", "--char", "t_{q^2,1}", "--format", "svg", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<circle").count(), 6);
    assert!(svg.contains("class=\"p-line\""));
    assert!(svg.contains("dot factor-0") && svg.contains("dot factor-1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn small_tables_match_golden() {
    for kind in ["A1", "A2", "C2"] {
        let computed = run(&["tables", "--type", kind]);
        assert!(computed.status.success(), "{kind}: {}", String::from_utf8_lossy(&computed.stderr));
        let golden = run(&["tables", "--type", kind, "--golden"]);
        assert_eq!(stdout(&computed), stdout(&golden));
    }
}

#[test]
fn tables_json_is_parseable() {
    let o = run(&["tables", "--type", "A1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["root_system"], "A1");
    assert!(v[0]["mismatches"].as_array().unwrap().is_empty());
}
