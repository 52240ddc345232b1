use std::fs;
use std::path::Path;

use cubefactor::cli::{run, AnalysisReport, EXIT_RESOURCE, EXIT_USAGE};
use cubefactor::format::ComplexFile;
use tempfile::TempDir;

fn cli(args: &[&str]) -> i32 {
    let mut argv = vec!["cubefactor"];
    argv.extend_from_slice(args);
    run(argv)
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn report(p: &str) -> AnalysisReport {
    serde_json::from_str(&fs::read_to_string(Path::new(p)).unwrap()).unwrap()
}

#[test]
fn staircase_build_then_analyze() {
    let dir = TempDir::new().unwrap();
    let (st4, out) = (path(&dir, "st4"), path(&dir, "st4.json"));
    assert_eq!(
        cli(&["build", "--kind", "staircase", "--params", "4", "-o", &st4]),
        0
    );
    assert_eq!(cli(&["analyze", &st4, "-o", &out]), 0);
    let r = report(&out);
    assert_eq!(r.spec_echo.as_deref(), Some("staircase:4"));
    assert!(r.multiplicity.unwrap().max >= 4);
    assert!(!r.oracle_checked && r.oracle_agrees.is_none());
}

#[test]
fn grid_analysis_with_oracle() {
    let dir = TempDir::new().unwrap();
    let (g, out) = (path(&dir, "g33"), path(&dir, "r.json"));
    assert_eq!(
        cli(&["build", "--kind", "grid", "--params", "2,2", "-o", &g]),
        0
    );
    assert_eq!(cli(&["analyze", &g, "--with-oracle", "-o", &out]), 0);
    let text = fs::read_to_string(&out).unwrap();
    let r: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.oracle_agrees, Some(true));
    assert_eq!(r.multiplicity.as_ref().unwrap().max, 4);
    assert_eq!(r.complex_stats.vertices, 9);
    assert_eq!(r.to_json().unwrap(), text);
}

#[test]
fn verify_square_passes() {
    let dir = TempDir::new().unwrap();
    let q = path(&dir, "q2");
    assert_eq!(cli(&["build", "--spec", "grid:1,1", "-o", &q]), 0);
    assert_eq!(cli(&["verify", &q, "--suite", "all", "--cases", "50"]), 0);
    assert_eq!(cli(&["verify", &q, "--suite", "orth", "--seed", "9"]), 0);
    assert_eq!(cli(&["oracle", &q]), 0);
}

#[test]
fn product_and_wedge_builds() {
    let dir = TempDir::new().unwrap();
    let (p, w) = (path(&dir, "p"), path(&dir, "w"));
    assert_eq!(
        cli(&["build", "--kind", "product", "--left", "grid:2,0", "--right", "tree:3@1", "-o", &p]),
        0
    );
    let file = ComplexFile::load(Path::new(&p)).unwrap();
    assert_eq!(file.vertices, 9);
    assert_eq!(
        cli(&[
            "build",
            "--kind",
            "wedge",
            "--left",
            "grid:1,1",
            "--left-vertex",
            "3",
            "--right",
            "grid:1,1",
            "-o",
            &w,
        ]),
        0
    );
    assert_eq!(ComplexFile::load(Path::new(&w)).unwrap().vertices, 7);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let (s, out) = (path(&dir, "s"), path(&dir, "r.json"));
    assert_eq!(
        cli(&["build", "--kind", "staircase", "--params", "3", "-o", &s]),
        0
    );
    assert_eq!(cli(&["analyze", &s, "--frobnicate"]), EXIT_USAGE);
    assert_eq!(cli(&["nonsense"]), EXIT_USAGE);
    assert_eq!(
        cli(&["build", "--kind", "grid", "--params", "2", "-o", &s]),
        EXIT_USAGE
    );
    assert_eq!(cli(&["analyze", &path(&dir, "missing")]), EXIT_USAGE);

    assert_eq!(
        cli(&["analyze", &s, "--max-members", "5", "-o", &out]),
        EXIT_RESOURCE
    );
    assert_eq!(report(&out).limits_hit.as_deref(), Some("max_members"));
    assert_eq!(
        cli(&["analyze", &s, "--max-grade", "1", "-o", &out]),
        EXIT_RESOURCE
    );
    assert_eq!(report(&out).limits_hit.as_deref(), Some("max_grade"));
    assert_eq!(cli(&["oracle", &s, "--max-vertices", "4"]), EXIT_RESOURCE);
}

#[test]
fn non_median_input_is_rejected() {
    let dir = TempDir::new().unwrap();
    let (bad, out) = (path(&dir, "hex"), path(&dir, "r.json"));
    let hexagon = r#"{"vertices": 6, "edges": [[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]]}"#;
    fs::write(&bad, hexagon).unwrap();
    assert_eq!(cli(&["analyze", &bad, "-o", &out]), EXIT_USAGE);
    assert!(!Path::new(&out).exists());
}

#[test]
fn skip_validation_marks_report() {
    let dir = TempDir::new().unwrap();
    let (g, out) = (path(&dir, "g"), path(&dir, "r.json"));
    assert_eq!(
        cli(&["build", "--kind", "tree", "--params", "6", "--seed", "2", "-o", &g]),
        0
    );
    assert_eq!(cli(&["analyze", &g, "--skip-validation", "-o", &out]), 0);
    let r = report(&out);
    assert!(!r.validated);
    assert_eq!(r.multiplicity.unwrap().max, 2);
}

#[test]
fn dot_export() {
    let dir = TempDir::new().unwrap();
    let (g, dot) = (path(&dir, "g"), path(&dir, "g.dot"));
    assert_eq!(
        cli(&["build", "--kind", "grid", "--params", "1,1", "-o", &g]),
        0
    );
    assert_eq!(cli(&["export", &g, "--dot", &dot]), 0);
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph complex {"));
    assert_eq!(text.matches(" -- ").count(), 4);
    assert!(text.contains("label=\"H0\"") && text.contains("label=\"H1\""));
}
