use assert_cmd::Command;

fn symquiv() -> Command {
    Command::cargo_bin("symquiv").unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = symquiv().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn orthogonal_decomposition_of_six_gon() {
    let out = stdout(&["decomp", "orthogonal", "--type", "A11:0,6", "--labels", "4,3,0,2,0,3", "--p", "2"]);
    assert_eq!(out.trim(), "h^{⊕2} ⊕ 2((e₂+δe₂)+e₁) ⊕ ((e₂+δe₂)+2e₁) ⊕ (e₄)^{⊕2}");
}

#[test]
fn odd_symplectic_ring_is_trivial() {
    let out = stdout(&["gens", "list", "--type", "A11:0,2", "--dim", "3,3,3", "--flavor", "symplectic"]);
    assert!(out.contains("trivial ring: constants"));
}

#[test]
fn pf_verification_passes() {
    let out = stdout(&["verify", "pf", "--size", "8", "--trials", "20"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("pass")).count(), 20);
}

#[test]
fn json_envelope_and_determinism() {
    let args = ["gens", "eval", "--type", "A11:0,2", "--dim", "2,2,2", "--seed", "7", "--format", "json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], "symquiv/1");
    assert_eq!(v["command"], "gens eval");
    let other = stdout(&["gens", "eval", "--type", "A11:0,2", "--dim", "2,2,2", "--seed", "8", "--format", "json"]);
    assert_ne!(a, other);
}

#[test]
fn exit_codes() {
    symquiv().args(["dim", "euler", "--type", "A11:0,2", "--dim", "1,0", "--other", "1,1,1"]).assert().code(1);
    symquiv().args(["decomp", "symplectic", "--type", "A11:0,2", "--dim", "3,3,3"]).assert().code(2);
    symquiv().args(["quiver", "classify", "--type", "nonsense"]).assert().code(1);
}

#[test]
fn quiver_file_round_trip_through_the_binary() {
    let built = stdout(&["quiver", "build", "--type", "A11:2,2"]);
    let dir = std::env::temp_dir().join(format!("symquiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.json");
    std::fs::write(&path, &built).unwrap();
    let p = path.to_str().unwrap();
    assert!(stdout(&["quiver", "validate", "--quiver", p]).contains("type"));
    let classified = stdout(&["quiver", "classify", "--quiver", p]);
    assert!(classified.contains("canonical orientation: true"));
    let h = stdout(&["dim", "coxeter", "--quiver", p, "--dim", "1,1,1,1,1"]);
    assert_eq!(h.trim(), "(1,1,1,1,1)");
}

#[test]
fn oracle_and_invariance_pass_on_small_case() {
    let out = stdout(&["verify", "oracle", "--type", "A11:0,2", "--dim", "2,2,2", "--flavor", "orthogonal", "--degree", "3"]);
    assert!(out.starts_with("pass"));
    let out = stdout(&["verify", "invariance", "--type", "A11:0,2", "--dim", "2,2,2", "--trials", "3"]);
    assert!(out.lines().all(|l| l.starts_with("pass")));
}
