use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn quasitree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasitree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = quasitree(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn generate_reports_counts() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("lat.patch");
    let o = quasitree(&["generate", "lattice", "--radius", "50", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    // 3R(R+1)+1 vertices, 3R(3R+1) edges
    assert!(s.contains("vertices=7651 edges=22650"), "{s}");
    assert!(s.contains("components=1 triangulation=1"), "{s}");
}

#[test]
fn generate_without_required_parameter_is_usage_error() {
    let o = quasitree(&["generate", "cone", "--radius", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lattice_witness_is_audited() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "lat.patch", &["lattice", "--radius", "50"]);
    let o = quasitree(&["witness", "--patch", p.to_str().unwrap(), "--r", "20"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    // 3r^2+3r+1 vertices in the radius-20 ball, against the r(r+1) bound
    assert!(s.contains("WITNESS r=20 bound=420 measured=1261 ok=1"), "{s}");
    assert!(s.contains("# input sha256="), "{s}");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "lat.patch", &["lattice", "--radius", "30"]);
    let args = ["check-bp", "--patch", p.to_str().unwrap(), "--delta", "2,3.5", "--budget", "40", "--seed", "9"];
    let a = quasitree(&args);
    let b = quasitree(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    assert!(s.contains("delta=3.5"), "{s}");
    assert!(s.lines().any(|l| l.starts_with("pair_p,pair_q")), "{s}");
}

#[test]
fn alpha_tree_has_no_bottleneck_violation() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "tree.patch", &["alpha-tree", "--alpha", "1.5", "--radius", "20"]);
    let o = quasitree(&["check-bp", "--patch", p.to_str().unwrap(), "--delta", "1", "--exhaustive"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("violations=0"), "{s}");
    assert!(s.contains("least_clean_delta=1"), "{s}");
}

#[test]
fn grid_chain_coloring_checks_out() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "gc.patch", &["grid-chain", "--nmax", "24"]);
    let o = quasitree(&["coloring", "--patch", p.to_str().unwrap(), "--grid-chain-scale", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("proximity=none ok=1"), "{s}");
}

#[test]
fn grid_chain_coloring_rejects_other_families() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "lat.patch", &["lattice", "--radius", "5"]);
    let o = quasitree(&["coloring", "--patch", p.to_str().unwrap(), "--grid-chain-scale", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn coloring_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "lat.patch", &["lattice", "--radius", "12"]);
    let col = dir.path().join("balls.txt");
    let o = quasitree(&[
        "coloring",
        "--patch",
        p.to_str().unwrap(),
        "--balls",
        "1",
        "--r",
        "5",
        "--write-coloring",
        col.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let first = stdout(&o);
    let o = quasitree(&["coloring", "--patch", p.to_str().unwrap(), "--coloring", col.to_str().unwrap(), "--r", "5"]);
    assert!(o.status.success());
    let second = stdout(&o);
    let verdict = |s: &str| s.lines().find(|l| l.starts_with("COLORING")).unwrap().to_string();
    assert_eq!(verdict(&first), verdict(&second));
}

#[test]
fn escalation_without_violation_reports_precondition() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "tree.patch", &["alpha-tree", "--alpha", "1.5", "--radius", "40"]);
    let o = quasitree(&["escalate", "--patch", p.to_str().unwrap(), "--depth-parity", "--r", "1", "--budget", "60"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PRECONDITION-UNAVAILABLE r=1 scale=10"));
}

#[test]
fn escalation_on_lattice_is_verified() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "lat.patch", &["lattice", "--radius", "60"]);
    let o = quasitree(&["escalate", "--patch", p.to_str().unwrap(), "--stripes", "1", "--r", "2", "--budget", "100"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("outcome large_component"), "{s}");
    assert!(s.contains("verified=1"), "{s}");
}

#[test]
fn uncertified_pair_exits_with_certification_code() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "lat.patch", &["lattice", "--radius", "10"]);
    // vertices near the rim leave no room for the ball
    let o = quasitree(&["witness", "--patch", p.to_str().unwrap(), "--r", "8", "--pair", "300", "320"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn validate_accepts_generated_and_rejects_garbage() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "sq.patch", &["square-lattice", "--radius", "6"]);
    let o = quasitree(&["validate", "--patch", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("findings=0 regenerated=1 ok=1"));

    let bad = dir.path().join("bad.patch");
    std::fs::write(&bad, "not a patch\n").unwrap();
    let o = quasitree(&["validate", "--patch", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let missing = dir.path().join("missing.patch");
    let o = quasitree(&["profile", "--patch", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn profile_slope_on_lattice_is_near_two() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "lat.patch", &["lattice", "--radius", "40"]);
    let o = quasitree(&["profile", "--patch", p.to_str().unwrap(), "--rmin", "8", "--rmax", "40"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let line = s.lines().find(|l| l.starts_with("# slope")).unwrap();
    let v: f64 = line.rsplit('=').next().unwrap().parse().unwrap();
    assert!((1.8..=2.1).contains(&v), "{line}");
}

#[test]
fn ksc_witness_on_square_lattice() {
    let dir = TempDir::new().unwrap();
    let p = generate(dir.path(), "sq.patch", &["square-lattice", "--radius", "40"]);
    let o = quasitree(&["ksc-witness", "--patch", p.to_str().unwrap(), "--r", "12", "--k", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    // layers at 5 and 10: bound 5*2*3
    assert!(s.contains("WITNESS r=12 bound=30"), "{s}");
    assert!(s.contains("ok=1"), "{s}");
}
