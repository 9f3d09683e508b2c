use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn huygens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_huygens"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scene(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenes")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_scene(dir: &Path, json: &str) -> String {
    let path = dir.join("scene.json");
    std::fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

fn sorted_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

#[test]
fn bundled_scenes_verify() {
    for name in ["concentric.json", "ellipse.json", "sphere.json"] {
        let out = huygens(&["verify", "--scene", &scene(name), "--trials", "200"]);
        assert!(out.status.success(), "{name}: {}", stdout(&out));
        assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
    }
}

#[test]
fn focusing_scene_hits_the_caustic() {
    let out = huygens(&["verify", "--scene", &scene("focus.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("CausticExceeded"));
}

#[test]
fn propagate_writes_one_csv_per_front() {
    let dir = tempfile::tempdir().unwrap();
    let out = huygens(&["propagate", "--scene", &scene("concentric.json"), "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let names: Vec<_> = sorted_files(dir.path())
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, ["p0_front0.csv", "p0_front1.csv", "p0_front2.csv"]);

    let last = std::fs::read_to_string(dir.path().join("p0_front2.csv")).unwrap();
    let mut lines = last.lines();
    assert_eq!(lines.next(), Some("front_index,sample_index,x,y,nx,ny"));
    assert_eq!(lines.clone().count(), 64);
    // radius 1 pushed out by 0.5 twice
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[..4], [2.0, 0.0, 2.0, 0.0]);
}

#[test]
fn propagate_is_byte_identical_across_runs() {
    let runs: Vec<Vec<Vec<u8>>> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let out = huygens(&["propagate", "--scene", &scene("ellipse.json"), "--out", dir.path().to_str().unwrap()]);
            assert!(out.status.success());
            sorted_files(dir.path()).iter().map(|f| std::fs::read(f).unwrap()).collect()
        })
        .collect();
    assert_eq!(runs[0].len(), 6);
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn verify_replays_with_a_seed_and_varies_without() {
    let run = |seed: &str| stdout(&huygens(&["verify", "--checks", "axioms", "--seed", seed, "--trials", "300"]));
    let a = run("42");
    assert_eq!(a, run("42"));
    assert_eq!(a.lines().count(), 8);
    assert_ne!(a, run("43"));
}

#[test]
fn inward_circle_past_its_radius_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scene(
        dir.path(),
        r#"{"dimension": 2, "sample_count": 32, "steps": [1.25],
            "primitives": [{"kind": "circle", "center": [1, 1], "radius": 1, "orientation": "inward"}]}"#,
    );
    let out = huygens(&["propagate", "--scene", &path, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL propagate[p0]"));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = huygens(&["render", "--scene", &scene("concentric.json"), "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(dir.path().join("p0.svg")).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("class=\"front propagated\"").count(), 2);
    // wavelets are drawn for the first step only
    assert_eq!(svg.matches("class=\"wavelet\"").count(), 4);
}

#[test]
fn render_refuses_solid_geometry() {
    let dir = tempfile::tempdir().unwrap();
    let out = huygens(&["render", "--scene", &scene("sphere.json"), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension 3"));
}

#[test]
fn bad_scenes_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    for (json, needle) in [
        (r#"{"dimension": 4, "primitives": [], "steps": [1], "sample_count": 8}"#, "dimension"),
        (
            r#"{"dimension": 2, "sample_count": 8, "steps": [0.1, -1],
                "primitives": [{"kind": "circle", "center": [0, 0], "radius": 1}]}"#,
            "steps[1]",
        ),
        (r#"{"dimension": 2,"#, "line"),
    ] {
        let path = write_scene(dir.path(), json);
        let out = huygens(&["verify", "--scene", &path]);
        assert_eq!(out.status.code(), Some(2), "{json}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(needle), "{json}");
    }
    let out = huygens(&["verify", "--scene", "/nonexistent/scene.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scene_free_verify_needs_suite_checks() {
    assert_eq!(huygens(&["verify"]).status.code(), Some(2));
    assert_eq!(huygens(&["verify", "--checks", "envelope"]).status.code(), Some(2));
    let out = huygens(&["verify", "--checks", "reciprocity", "--trials", "100"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
}
